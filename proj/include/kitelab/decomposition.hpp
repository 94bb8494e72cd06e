#pragma once

namespace kitelab {

/// Refinement of a1 + a2 = b1 + b2:
///
///   a1 | c11 c12
///   a2 | c21 c22
///   ---+--------
///      | b1  b2
///
/// with a1 = c11+c12, a2 = c21+c22, b1 = c11+c21, b2 = c12+c22.
template <class T>
struct DecompositionTable
{
  T c11;
  T c12;
  T c21;
  T c22;

  bool operator==(DecompositionTable const &) const = default;

  /// The same table read column-wise; certifies b1 + b2 = a1 + a2.
  DecompositionTable transposed() const { return {c11, c21, c12, c22}; }
};

} // namespace kitelab
