#pragma once

#include <cstddef>
#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace kitelab {

/// Carrier members are canonical indices 0..n-1; labels are cosmetic.
using Elem = std::uint32_t;

inline constexpr Elem kUndefined = std::numeric_limits<Elem>::max();

/// n x n partial addition table; entry (a, b) holds a+b or kUndefined.
class PartialTable
{
public:
  PartialTable() = default;
  explicit PartialTable(std::size_t n);

  std::size_t size() const { return n_; }

  std::optional<Elem> at(Elem a, Elem b) const
  {
    Elem v = entries_[a * n_ + b];
    if (v == kUndefined)
      return std::nullopt;
    return v;
  }

  bool defined(Elem a, Elem b) const
  { return entries_[a * n_ + b] != kUndefined; }

  Elem raw(Elem a, Elem b) const { return entries_[a * n_ + b]; }

  void set(Elem a, Elem b, Elem value) { entries_[a * n_ + b] = value; }
  void clear(Elem a, Elem b) { entries_[a * n_ + b] = kUndefined; }

  std::size_t defined_count() const;

  bool operator==(PartialTable const &) const = default;

private:
  std::size_t n_ = 0;
  std::vector<Elem> entries_;
};

enum class Axiom
{
  GP1, GP2, GP3, GP4, GP5,
  PeaI, PeaII, PeaIII, PeaIV
};

std::string_view to_string(Axiom axiom);

struct Violation
{
  Axiom axiom;
  std::vector<Elem> witness;
};

struct AxiomReport
{
  std::vector<Violation> violations;

  bool passed() const { return violations.empty(); }
  std::size_t count(Axiom axiom) const;
};

/// Exhaustive GP1-GP5 check. Throws StructuralError for malformed input
/// (entry or zero out of range); axiom failures go into the report.
AxiomReport verify_gpea_axioms(PartialTable const &table, Elem zero);

/// A validated generalized pseudo effect algebra. Immutable; order and
/// difference tables are derived once at construction.
class Gpea
{
public:
  /// Throws AxiomError when the table fails GP1-GP5.
  static Gpea make(PartialTable table, Elem zero,
                   std::vector<std::string> labels = {});

  std::size_t size() const { return table_.size(); }
  Elem zero() const { return zero_; }
  bool is_trivial() const { return size() == 1; }

  PartialTable const &table() const { return table_; }

  std::optional<Elem> add(Elem a, Elem b) const { return table_.at(a, b); }
  bool defined(Elem a, Elem b) const { return table_.defined(a, b); }

  bool leq(Elem a, Elem b) const { return leq_[a * size() + b] != 0; }

  /// The unique d with d + a = b. Throws NotComparableError unless a <= b.
  Elem left_diff(Elem b, Elem a) const;
  /// The unique c with a + c = b. Throws NotComparableError unless a <= b.
  Elem right_diff(Elem a, Elem b) const;

  /// Elements below a, ascending.
  std::vector<Elem> const &downset(Elem a) const { return downsets_[a]; }

  std::vector<std::string> const &labels() const { return labels_; }
  std::string label(Elem a) const;

private:
  Gpea(PartialTable table, Elem zero, std::vector<std::string> labels);

  PartialTable table_;
  Elem zero_ = 0;
  std::vector<std::string> labels_;
  std::vector<char> leq_;
  std::vector<Elem> left_diff_;  // [b * n + a] -> d, d + a = b
  std::vector<Elem> right_diff_; // [a * n + b] -> c, a + c = b
  std::vector<std::vector<Elem>> downsets_;
};

/// PEA axioms (i)-(iv) with the given top, over an already valid GPEA.
AxiomReport verify_pea_axioms(Gpea const &gpea, Elem top);

class Pea
{
public:
  /// Throws AxiomError when (i)-(iv) fail for this top.
  static Pea make(Gpea base, Elem top);

  Gpea const &gpea() const { return base_; }
  std::size_t size() const { return base_.size(); }
  Elem zero() const { return base_.zero(); }
  Elem top() const { return top_; }

  std::optional<Elem> add(Elem a, Elem b) const { return base_.add(a, b); }
  bool leq(Elem a, Elem b) const { return base_.leq(a, b); }

  /// a^- : the unique element with a^- + a = 1.
  Elem minus(Elem a) const { return minus_[a]; }
  /// a^~ : the unique element with a + a^~ = 1.
  Elem tilde(Elem a) const { return tilde_[a]; }

private:
  Pea(Gpea base, Elem top);

  Gpea base_;
  Elem top_;
  std::vector<Elem> minus_;
  std::vector<Elem> tilde_;
};

struct OrderRelation
{
  std::size_t n = 0;
  std::vector<char> matrix;

  bool operator()(Elem a, Elem b) const { return matrix[a * n + b] != 0; }
};

/// The induced order. Computes the right-witness (a + c = b) and
/// left-witness (d + a = b) relations independently and throws
/// StructuralError if they disagree.
OrderRelation derive_order(Gpea const &gpea);

/// (a^-, a^~)
std::pair<Elem, Elem> negations(Pea const &pea, Elem a);

bool is_weakly_commutative(Gpea const &gpea);
bool is_commutative(Gpea const &gpea);
bool is_total(Gpea const &gpea);
bool is_directed(Gpea const &gpea);

/// x + y and y + x agree (definedness and value) for all x <= a, y <= b.
bool com(Gpea const &gpea, Elem a, Elem b);

/// 0 in A and: if two of x, y, x+y lie in A, so does the third.
bool is_sub_gpea(Gpea const &gpea, std::vector<Elem> const &subset);

/// Bijection h with h(a+b) = h(a)+h(b) in both directions (definedness
/// included), or nullopt. Backtracking with degree-sequence pruning.
std::optional<std::vector<Elem>> find_isomorphism(Gpea const &e, Gpea const &f);
/// As above, additionally mapping top to top.
std::optional<std::vector<Elem>> find_isomorphism(Pea const &e, Pea const &f);

} // namespace kitelab
