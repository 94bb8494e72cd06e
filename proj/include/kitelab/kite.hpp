#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "kitelab/core.hpp"

namespace kitelab {

/// Bijection of {0..n-1}; position j of the image holds the image of j.
class Permutation
{
public:
  Permutation() = default;
  /// Throws StructuralError unless image is a bijection of {0..n-1}.
  explicit Permutation(std::vector<std::uint32_t> image);

  static Permutation identity(std::size_t n);
  /// i -> i-1 (mod n)
  static Permutation cycle(std::size_t n);

  std::size_t size() const { return image_.size(); }
  std::uint32_t operator()(std::uint32_t j) const { return image_[j]; }
  std::uint32_t inverse(std::uint32_t i) const { return inverse_[i]; }

  std::vector<std::uint32_t> const &image() const { return image_; }

  Permutation inverted() const;
  /// (*this) o inner
  Permutation after(Permutation const &inner) const;

  bool is_identity() const;

  bool operator==(Permutation const &other) const
  { return image_ == other.image_; }

private:
  std::vector<std::uint32_t> image_;
  std::vector<std::uint32_t> inverse_;
};

/// Accepts "id", "cycle" (i -> i-1 mod n), "swap" (transposes 0 and 1),
/// "shift:k" (i -> i+k mod n) or an explicit image list "2,0,1" / "2 0 1".
Permutation permutation_from_spec(std::string_view spec, std::size_t n);

std::string to_string(Permutation const &perm);

enum class Sort : std::uint8_t
{
  Lower,
  Upper
};

/// Element of E^I (Lower) or of the barred copy (Upper).
struct KiteElement
{
  Sort sort = Sort::Lower;
  std::vector<Elem> coords;

  auto operator<=>(KiteElement const &) const = default;
};

std::string to_string(KiteElement const &x, Gpea const &base);

/// Definedness exchange condition for the pair (lambda, rho). For
/// lambda == rho this is weak commutativity, otherwise totality.
bool is_lr_weakly_commutative(Gpea const &base, Permutation const &lambda,
                              Permutation const &rho);

/// Kite over a finite base, materialized as a finite PEA. The lower block
/// occupies indices 0..|E|^|I|-1 in lexicographic tuple order (coordinate 0
/// most significant), the upper block follows in the same order.
///
/// Lower coordinates are indexed by J and upper coordinates by I; lambda and
/// rho map local J positions to local I positions. For the ordinary kite
/// J = I = {0..n-1}; two-index-set kites record the original index labels.
class ExplicitKite
{
public:
  static constexpr std::size_t kDefaultBudget = 20000;

  static ExplicitKite build(Gpea base, Permutation lambda, Permutation rho,
                            std::size_t budget = kDefaultBudget);

  /// K_{J,I}: lower_labels[j] / upper_labels[i] name the original indices.
  static ExplicitKite build(Gpea base, Permutation lambda, Permutation rho,
                            std::vector<std::size_t> lower_labels,
                            std::vector<std::size_t> upper_labels,
                            std::size_t budget = kDefaultBudget);

  Pea const &algebra() const { return algebra_; }
  Gpea const &base() const { return base_; }
  Permutation const &lambda() const { return lambda_; }
  Permutation const &rho() const { return rho_; }
  std::size_t arity() const { return lambda_.size(); }
  std::size_t block_size() const { return block_; }
  std::size_t size() const { return 2 * block_; }

  std::vector<std::size_t> const &lower_labels() const { return lower_labels_; }
  std::vector<std::size_t> const &upper_labels() const { return upper_labels_; }

  KiteElement const &element(Elem index) const { return elements_[index]; }
  /// Throws UsageError if x is not an element of this kite.
  Elem index_of(KiteElement const &x) const;

  KiteElement zero() const;
  KiteElement one() const;

  /// Rules (I)-(IV), evaluated on coordinates.
  std::optional<KiteElement> add(KiteElement const &x,
                                 KiteElement const &y) const;
  /// (x^-, x^~) from the closed-form negation formulas.
  std::pair<KiteElement, KiteElement> neg(KiteElement const &x) const;
  /// Closed-form order.
  bool leq(KiteElement const &x, KiteElement const &y) const;

private:
  ExplicitKite(Gpea base, Permutation lambda, Permutation rho,
               std::vector<std::size_t> lower_labels,
               std::vector<std::size_t> upper_labels, std::size_t budget);

  void check_member(KiteElement const &x) const;
  static Pea materialize(ExplicitKite const &self);

  Gpea base_;
  Permutation lambda_;
  Permutation rho_;
  std::vector<std::size_t> lower_labels_;
  std::vector<std::size_t> upper_labels_;
  std::size_t block_ = 0;
  std::vector<KiteElement> elements_;
  Pea algebra_;
};

ExplicitKite build_kite_explicit(Gpea const &base, Permutation const &lambda,
                                 Permutation const &rho,
                                 std::size_t budget = ExplicitKite::kDefaultBudget);

std::optional<KiteElement> kite_add(ExplicitKite const &kite,
                                    KiteElement const &x, KiteElement const &y);
std::pair<KiteElement, KiteElement> kite_neg(ExplicitKite const &kite,
                                             KiteElement const &x);
bool kite_leq(ExplicitKite const &kite, KiteElement const &x,
              KiteElement const &y);

/// E with one index and identity permutations.
ExplicitKite unitization(Gpea const &base,
                         std::size_t budget = ExplicitKite::kDefaultBudget);

/// a^- = a^~ for every a; otherwise the first witness.
std::optional<Elem> asymmetry_witness(Pea const &pea);
bool is_symmetric(Pea const &pea);

/// Elements x with nx defined for every n >= 1.
std::vector<Elem> infinitesimals(Pea const &pea);

struct PerfectPartition
{
  std::vector<Elem> infinitesimal; // E_0
  std::vector<Elem> coinfinitesimal; // E_1
};

/// Tests E_0 = infinitesimals, E_1 = complement against the three
/// perfectness conditions.
std::optional<PerfectPartition> check_perfect(Pea const &pea);

} // namespace kitelab
