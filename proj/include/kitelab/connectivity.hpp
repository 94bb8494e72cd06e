#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "kitelab/core.hpp"
#include "kitelab/ideals.hpp"
#include "kitelab/kite.hpp"

namespace kitelab {

/// Orbits of sigma = rho o lambda^-1, each listed ascending and ordered by
/// least member.
struct ComponentPartition
{
  Permutation sigma;
  std::vector<std::vector<std::uint32_t>> components;
  std::vector<std::size_t> component_of;
};

/// Throws UsageError when the permutations act on different index sets.
ComponentPartition connected_components(Permutation const &lambda,
                                        Permutation const &rho);

/// The two-sided reachability relation computed directly: some m >= 0 with
/// (rho o lambda^-1)^m (i) = j or (lambda o rho^-1)^m (i) = j.
bool reachable(Permutation const &lambda, Permutation const &rho,
               std::uint32_t i, std::uint32_t j);

struct Canonical
{
  /// New position of each upper index (alpha) and lower index (beta).
  Permutation upper;
  Permutation lower;
  Permutation lambda; // identity
  Permutation rho;    // i -> i-1 mod n
};

/// Relabeling with alpha(sigma^k(min)) = -k mod n and beta = alpha o lambda,
/// under which lambda becomes the identity and rho the standard cycle.
/// Throws UsageError when there is more than one component.
Canonical canonicalize(Permutation const &lambda, Permutation const &rho);

/// Index map from `kite` onto the same kite relabeled by `canonical`.
std::vector<Elem> relabeling_map(ExplicitKite const &kite,
                                 ExplicitKite const &relabeled,
                                 Canonical const &canonical);

/// Whether h preserves and reflects + (definedness and values).
bool is_isomorphism(Gpea const &e, Gpea const &f, std::vector<Elem> const &h);

struct IrreducibilityCheck
{
  bool predicted = false;
  bool observed = false;
  bool base_irreducible = false;
  bool single_component = false;
  std::optional<Ideal> base_least;
  std::optional<Ideal> kite_least;
};

struct IrreducibilityCaps
{
  std::size_t rdp = 40;
  std::size_t ideals = 64;
};

/// Compares "E has a least non-trivial normal ideal and there is a single
/// component" with "the kite has a least non-trivial normal ideal".
/// Throws PreconditionError unless E is nontrivial, directed and
/// lambda,rho-weakly commutative and the kite satisfies RDP1.
IrreducibilityCheck irreducibility_check(ExplicitKite const &kite,
                                         IrreducibilityCaps caps = {});

struct SubdirectDecomposition
{
  std::vector<ExplicitKite> factors;
  /// Per factor: original lower (J') and upper (I') positions, ascending.
  std::vector<std::vector<std::uint32_t>> lower_positions;
  std::vector<std::vector<std::uint32_t>> upper_positions;
  /// embedding[x][k]: index of the restriction of x in factor k.
  std::vector<std::vector<Elem>> embedding;

  bool injective = false;
  bool preserves = false;
  bool reflects = false;
  std::vector<bool> surjective;

  /// Index of each kite element in the product of the factors as built by
  /// standard::product, folded left.
  std::vector<Elem> product_indices() const;
  /// That product.
  Pea product() const;
};

/// Splits a kite into the two-index-set kites of its components and checks
/// the coordinate-restriction map.
SubdirectDecomposition subdirect_decompose(ExplicitKite const &kite);

} // namespace kitelab
