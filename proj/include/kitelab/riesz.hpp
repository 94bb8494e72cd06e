#pragma once

#include <cstddef>
#include <optional>
#include <string_view>
#include <vector>

#include "kitelab/core.hpp"
#include "kitelab/decomposition.hpp"
#include "kitelab/lazy.hpp"

namespace kitelab {

enum class RieszProperty
{
  RIP,
  RDP0,
  RDP,
  RDP1,
  RDP2
};

std::string_view to_string(RieszProperty property);
/// "rip", "rdp0", "rdp", "rdp1", "rdp2"; throws UsageError otherwise.
RieszProperty riesz_property_from_string(std::string_view text);

struct RieszReport
{
  RieszProperty property = RieszProperty::RDP;
  bool holds = true;
  /// RIP: (a1, a2, b1, b2); RDP0: (a, b, c); RDP-class: (a1, a2, b1, b2).
  std::vector<Elem> counterexample;
  /// A sample solution: RIP (a1, a2, b1, b2, c); RDP0 (a, b, c, b1, c1).
  std::vector<Elem> witness;
  /// RDP-class only: a sample refinement and its quadruple.
  std::optional<DecompositionTable<Elem>> table;
  std::vector<Elem> table_quadruple;
  /// Number of premises examined.
  std::size_t instances = 0;
};

inline constexpr std::size_t kDefaultRdpCarrier = 40;

/// Each checker throws SizeError when the carrier exceeds `cap`.
RieszReport check_rip(Gpea const &e, std::size_t cap = kDefaultRdpCarrier);
RieszReport check_rdp0(Gpea const &e, std::size_t cap = kDefaultRdpCarrier);
RieszReport check_rdp(Gpea const &e, std::size_t cap = kDefaultRdpCarrier);
RieszReport check_rdp1(Gpea const &e, std::size_t cap = kDefaultRdpCarrier);
RieszReport check_rdp2(Gpea const &e, std::size_t cap = kDefaultRdpCarrier);
RieszReport check_riesz(Gpea const &e, RieszProperty property,
                        std::size_t cap = kDefaultRdpCarrier);

/// Some refinement of a1 + a2 = b1 + b2 meeting the extra clause of
/// `property` (RDP, RDP1 or RDP2). Every table is found: c11 fixes the rest.
std::optional<DecompositionTable<Elem>>
find_decomposition(Gpea const &e, Elem a1, Elem a2, Elem b1, Elem b2,
                   RieszProperty property = RieszProperty::RDP);

bool table_certifies(Gpea const &e, DecompositionTable<Elem> const &t, Elem a1,
                     Elem a2, Elem b1, Elem b2);

bool table_certifies(LazyKite const &kite,
                     DecompositionTable<LazyElement> const &t,
                     LazyElement const &a1, LazyElement const &a2,
                     LazyElement const &b1, LazyElement const &b2);

/// Which sort pattern a1 + a2 = b1 + b2 falls into.
enum class KiteCase
{
  LowerLower,  // all four lower
  UpperLower,  // U + L = U + L
  LowerUpper,  // L + U = L + U
  Mixed        // U + L = L + U or L + U = U + L
};

KiteCase classify(LazyElement const &a1, LazyElement const &a2,
                  LazyElement const &b1, LazyElement const &b2);

/// Refinement in a lazy kite by case analysis over the sorts: coordinatewise
/// base refinement for all-lower quadruples, an upper-bound shift for the
/// U+L and L+U patterns, and a closed-form table for the mixed pattern.
/// Throws UsageError when the sums are undefined or differ (this covers
/// U + U) and PreconditionError when the base lacks an upper bound or a
/// refinement.
DecompositionTable<LazyElement>
kite_rdp_decompose(LazyKite const &kite, LazyElement const &a1,
                   LazyElement const &a2, LazyElement const &b1,
                   LazyElement const &b2);

} // namespace kitelab
