#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "kitelab/core.hpp"
#include "kitelab/kite.hpp"

namespace kitelab {

inline constexpr std::size_t kDefaultIdealCarrier = 64;

/// Downward closed, sum closed subset; members ascending.
struct Ideal
{
  std::vector<Elem> members;

  bool contains(Elem x) const;
  std::size_t size() const { return members.size(); }

  auto operator<=>(Ideal const &) const = default;
};

bool is_ideal(Gpea const &e, std::vector<Elem> const &subset);

/// Smallest ideal containing the generators (and 0).
Ideal ideal_closure(Gpea const &e, std::vector<Elem> const &generators);

/// All ideals, smallest first (then lexicographic). Grown from {0} by
/// adjoining one element at a time and closing. Throws SizeError above cap.
std::vector<Ideal> enumerate_ideals(Gpea const &e, bool normal_only = false,
                                    std::size_t cap = kDefaultIdealCarrier);

/// x + I = I + x for every x. Throws UsageError if I is not an ideal.
bool is_normal(Gpea const &e, Ideal const &ideal);

/// Proper, and no ideal sits strictly between it and E.
bool is_maximal_ideal(Gpea const &e, Ideal const &ideal);

/// Intersection of all normal ideals other than {0}, when that is itself a
/// normal ideal other than {0}. nullopt for the trivial algebra.
std::optional<Ideal>
least_nontrivial_normal_ideal(Gpea const &e,
                              std::size_t cap = kDefaultIdealCarrier);

/// Trivial, or has a least non-trivial normal ideal.
bool is_subdirectly_irreducible(Gpea const &e,
                                std::size_t cap = kDefaultIdealCarrier);

struct CongruenceReport
{
  bool is_congruence = false;
  /// element -> block id; blocks numbered by their least element
  std::vector<Elem> block;
  std::string failure;
  std::vector<Elem> witness;
};

/// a ~ b iff a / e = b / f for some e <= a, f <= b in I. Transitivity and
/// compatibility are always checked, never assumed.
CongruenceReport congruence_from_normal_ideal(Gpea const &e,
                                              Ideal const &ideal);

struct Quotient
{
  Gpea algebra;
  std::vector<Elem> block_of;
  std::vector<Elem> representatives; // least index per block
};

/// E / I. Throws PreconditionError when ~_I is not a congruence and
/// AxiomError when the induced table is not a GPEA.
Quotient quotient(Gpea const &e, Ideal const &ideal);

struct KiteIdealReport
{
  Ideal ideal;
  bool is_ideal = false;
  bool is_normal = false;
  /// Only decided when H is all of E.
  std::optional<bool> is_maximal;
};

/// H^I: the lower tuples with every coordinate in H. Throws UsageError
/// unless H is a normal ideal of the base.
KiteIdealReport kite_lower_ideal(ExplicitKite const &kite, Ideal const &h);

/// { x_j : x in J }, ascending. Throws UsageError if J has upper elements.
std::vector<Elem> coordinate_projection(ExplicitKite const &kite,
                                        Ideal const &j, std::size_t index);

std::string to_string(Ideal const &ideal, Gpea const &e);

} // namespace kitelab
