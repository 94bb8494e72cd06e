#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "kitelab/lazy.hpp"

namespace kitelab {

/// (m, x) in Z x Z^n with the twisted product
/// (m1, x) * (m2, y) = (m1 + m2, x_k + y_{k+m1 mod n}).
struct GnElement
{
  std::int64_t m = 0;
  std::vector<std::int64_t> x;

  bool operator==(GnElement const &) const = default;
};

GnElement gn_identity(std::size_t n);
/// u_n = (1, 0, ..., 0)
GnElement gn_unit(std::size_t n);
/// Throws UsageError on a length mismatch.
GnElement gn_mul(GnElement const &a, GnElement const &b, std::size_t n);
/// (-m, -a_{k-m})
GnElement gn_inv(GnElement const &a, std::size_t n);
/// Lexicographic: m first, then componentwise.
bool gn_leq(GnElement const &a, GnElement const &b, std::size_t n);
/// 0 <= a <= u
bool in_interval(GnElement const &a, GnElement const &u, std::size_t n);

std::string to_string(GnElement const &a);

/// (m, x) with x a finite-support map Z -> Z (zeros never stored) and
/// (m1, x) * (m2, y) = (m1 + m2, x_i + y_{i+m1}).
struct WreathElement
{
  std::int64_t m = 0;
  std::map<std::int64_t, std::int64_t> x;

  bool operator==(WreathElement const &) const = default;
};

WreathElement wreath_identity();
WreathElement wreath_unit();
WreathElement wreath_mul(WreathElement const &a, WreathElement const &b);
WreathElement wreath_inv(WreathElement const &a);
bool wreath_leq(WreathElement const &a, WreathElement const &b);
bool wreath_in_interval(WreathElement const &a, WreathElement const &u);

std::string to_string(WreathElement const &a);

/// Candidate maps for the upper sort: U(a) -> u * (0, a o pi)^-1 or
/// U(a) -> (0, a o pi)^-1 * u. Lower elements always go to (0, f).
enum class UpperConvention
{
  UnitTimesInverse,
  InverseTimesUnit
};

struct IsoCandidate
{
  /// Finite case: pi as an image list. Wreath case: pi(i) = i + shift.
  std::vector<std::uint32_t> pi;
  std::int64_t shift = 0;
  UpperConvention convention = UpperConvention::UnitTimesInverse;
};

std::string to_string(IsoCandidate const &c, bool wreath);

struct IsoOptions
{
  std::size_t samples = 10000;
  std::int64_t bound = 50;
  std::uint64_t seed = 1;
  /// Edge of the coordinate box for the bijectivity check.
  std::int64_t box = 2;
  /// Pilot pairs used to select a candidate.
  std::size_t pilot = 200;
  /// Skip the search and test this candidate (negative controls).
  std::optional<IsoCandidate> forced;
};

struct IsoReport
{
  bool passed = false;
  std::optional<IsoCandidate> candidate;
  std::size_t candidates_tried = 0;
  std::size_t pairs_checked = 0;
  std::size_t definedness_checked = 0;
  std::size_t box_elements = 0;
  bool bijective_on_box = false;
  std::string failure;
  std::uint64_t seed = 0;
};

/// Lazy N kite with lambda = id and rho(i) = i-1 mod n against Gamma(G_n, u_n).
IsoReport example_iso_spotcheck(std::size_t n, IsoOptions const &options = {});

/// Lazy N kite over Z with lambda = id and rho(i) = i-1 against
/// Gamma(W(Z), u). The box check uses indices [-1, 1].
IsoReport wreath_iso_spotcheck(IsoOptions const &options = {});

} // namespace kitelab
