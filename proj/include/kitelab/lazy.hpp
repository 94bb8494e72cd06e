#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "kitelab/core.hpp"
#include "kitelab/decomposition.hpp"
#include "kitelab/kite.hpp"

namespace kitelab {

using Value = std::int64_t;

/// A GPEA given by computable operations instead of a table. Values are
/// opaque integers; only the operations below give them meaning.
class LazyBase
{
public:
  virtual ~LazyBase() = default;

  virtual std::string name() const = 0;
  virtual Value zero() const = 0;
  virtual bool contains(Value a) const = 0;

  virtual std::optional<Value> add(Value a, Value b) const = 0;
  virtual bool leq(Value a, Value b) const = 0;
  /// d with d + a = b
  virtual std::optional<Value> left_diff(Value b, Value a) const = 0;
  /// c with a + c = b
  virtual std::optional<Value> right_diff(Value a, Value b) const = 0;

  virtual bool is_total() const = 0;
  virtual bool is_weakly_commutative() const = 0;
  virtual bool is_infinitesimal(Value a) const = 0;

  /// Some common upper bound (least one when available).
  virtual std::optional<Value> upper_bound(Value a, Value b) const = 0;
  /// A Riesz refinement of a1 + a2 = b1 + b2, if one exists.
  virtual std::optional<DecompositionTable<Value>>
  decompose(Value a1, Value a2, Value b1, Value b2) const = 0;

  /// Random element, loosely bounded by `bound` where that makes sense.
  virtual Value sample(std::mt19937_64 &rng, Value bound) const = 0;
  /// Random element below a.
  virtual Value sample_below(std::mt19937_64 &rng, Value a) const = 0;
};

/// The positive cone of the integers: total, cancellative, 0 least.
/// Additions that would overflow int64 throw SizeError.
class NatChain final : public LazyBase
{
public:
  std::string name() const override { return "N"; }
  Value zero() const override { return 0; }
  bool contains(Value a) const override { return a >= 0; }
  std::optional<Value> add(Value a, Value b) const override;
  bool leq(Value a, Value b) const override { return a <= b; }
  std::optional<Value> left_diff(Value b, Value a) const override;
  std::optional<Value> right_diff(Value a, Value b) const override;
  bool is_total() const override { return true; }
  bool is_weakly_commutative() const override { return true; }
  bool is_infinitesimal(Value) const override { return true; }
  std::optional<Value> upper_bound(Value a, Value b) const override;
  std::optional<DecompositionTable<Value>>
  decompose(Value a1, Value a2, Value b1, Value b2) const override;
  Value sample(std::mt19937_64 &rng, Value bound) const override;
  Value sample_below(std::mt19937_64 &rng, Value a) const override;
};

/// A finite GPEA seen through the lazy interface; values are element indices.
class FiniteBase final : public LazyBase
{
public:
  explicit FiniteBase(Gpea gpea);

  Gpea const &gpea() const { return gpea_; }

  std::string name() const override { return "finite"; }
  Value zero() const override { return gpea_.zero(); }
  bool contains(Value a) const override;
  std::optional<Value> add(Value a, Value b) const override;
  bool leq(Value a, Value b) const override;
  std::optional<Value> left_diff(Value b, Value a) const override;
  std::optional<Value> right_diff(Value a, Value b) const override;
  bool is_total() const override { return total_; }
  bool is_weakly_commutative() const override { return weakly_commutative_; }
  bool is_infinitesimal(Value a) const override;
  std::optional<Value> upper_bound(Value a, Value b) const override;
  std::optional<DecompositionTable<Value>>
  decompose(Value a1, Value a2, Value b1, Value b2) const override;
  Value sample(std::mt19937_64 &rng, Value bound) const override;
  Value sample_below(std::mt19937_64 &rng, Value a) const override;

private:
  Gpea gpea_;
  bool total_;
  bool weakly_commutative_;
};

/// Bijection of the integers used as an index rule: either i -> i + k, or
/// a permutation moving finitely many points.
class IndexMap
{
public:
  static IndexMap identity() { return shift(0); }
  static IndexMap shift(std::int64_t k);
  /// Acts as the permutation on {0..n-1} and as the identity elsewhere.
  static IndexMap finite(Permutation const &perm);
  /// Disjoint cycles (c0 c1 ... ck): c0 -> c1 -> ... -> ck -> c0.
  /// Throws StructuralError when an index repeats.
  static IndexMap cycles(std::vector<std::vector<std::int64_t>> const &cycles);

  std::int64_t operator()(std::int64_t i) const;
  std::int64_t inverse(std::int64_t i) const;

  /// Whether {0..n-1} is mapped onto itself.
  bool preserves_range(std::size_t n) const;

  bool operator==(IndexMap const &other) const;

  std::string describe() const;

private:
  std::int64_t shift_ = 0;
  std::map<std::int64_t, std::int64_t> moved_;
  std::map<std::int64_t, std::int64_t> moved_inverse_;
};

/// Finite-support element of a lazy kite; entries equal to the base zero
/// are never stored.
struct LazyElement
{
  Sort sort = Sort::Lower;
  std::map<std::int64_t, Value> coords;

  bool operator==(LazyElement const &) const = default;
};

/// Kite over a lazy base with either a finite index set {0..n-1} or the
/// integers. Operations evaluate pointwise on supports; nothing global is
/// ever claimed exhaustively.
class LazyKite
{
public:
  /// index_size = nullopt selects the integers. Throws PreconditionError
  /// when the base is not lambda,rho-weakly commutative and UsageError when
  /// a finite index rule leaves {0..n-1}.
  LazyKite(std::shared_ptr<LazyBase const> base,
           std::optional<std::size_t> index_size, IndexMap lambda,
           IndexMap rho);

  LazyBase const &base() const { return *base_; }
  std::shared_ptr<LazyBase const> base_ptr() const { return base_; }
  std::optional<std::size_t> index_size() const { return index_size_; }
  IndexMap const &lambda() const { return lambda_; }
  IndexMap const &rho() const { return rho_; }

  LazyElement zero() const { return LazyElement{Sort::Lower, {}}; }
  LazyElement one() const { return LazyElement{Sort::Upper, {}}; }

  LazyElement make(Sort sort, std::vector<Value> const &coords) const;
  LazyElement make(Sort sort, std::map<std::int64_t, Value> const &coords) const;

  /// Coordinate at an index (the base zero off the support).
  Value at(LazyElement const &x, std::int64_t index) const;

  /// Throws UsageError if x does not belong to this kite.
  void check_member(LazyElement const &x) const;

  std::optional<LazyElement> add(LazyElement const &x,
                                 LazyElement const &y) const;
  std::pair<LazyElement, LazyElement> neg(LazyElement const &x) const;
  bool leq(LazyElement const &x, LazyElement const &y) const;

  /// Lower elements are infinitesimal exactly when all their coordinates
  /// are; upper elements never are (upper + upper is undefined).
  bool is_infinitesimal(LazyElement const &x) const;

  /// Random element with coordinates up to `bound`; on the integers the
  /// support is drawn from [-window, window].
  LazyElement sample(std::mt19937_64 &rng, Sort sort, Value bound,
                     std::int64_t window = 4) const;
  /// Random lower element f with upper + f defined (rule II).
  LazyElement sample_right_addend(std::mt19937_64 &rng,
                                  LazyElement const &upper) const;
  /// Random lower element f with f + upper defined (rule III).
  LazyElement sample_left_addend(std::mt19937_64 &rng,
                                 LazyElement const &upper) const;

  std::string to_string(LazyElement const &x) const;

private:
  std::vector<std::int64_t> indices(LazyElement const &x) const;
  void put(LazyElement &x, std::int64_t index, Value v) const;

  std::shared_ptr<LazyBase const> base_;
  std::optional<std::size_t> index_size_;
  IndexMap lambda_;
  IndexMap rho_;
};

/// Lazy view of an explicit kite element when the lazy kite runs over
/// FiniteBase(kite.base()) with the same permutations.
LazyElement to_lazy(LazyKite const &lazy, KiteElement const &x);

struct SampledVerdict
{
  bool holds = true;
  std::size_t samples = 0;
  std::optional<LazyElement> witness;
};

/// Sampled a^- = a^~ test.
SampledVerdict sampled_symmetry(LazyKite const &kite, std::size_t samples,
                                std::uint64_t seed, Value bound = 50);

struct SampledPerfectReport
{
  bool perfect = true;
  std::size_t samples = 0;
  std::string failure;
};

/// Sampled check of the perfectness conditions with E_0 = lower sort and
/// E_1 = upper sort.
SampledPerfectReport sampled_perfect(LazyKite const &kite, std::size_t samples,
                                     std::uint64_t seed, Value bound = 50);

} // namespace kitelab
