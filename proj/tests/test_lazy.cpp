#include <doctest.h>

#include <memory>
#include <random>

#include "kitelab/errors.hpp"
#include "kitelab/lazy.hpp"
#include "kitelab/standard.hpp"

using namespace kitelab;

namespace {

LazyKite nat_kite(std::size_t n, Permutation const &lambda,
                  Permutation const &rho)
{
  return LazyKite(std::make_shared<NatChain>(), n, IndexMap::finite(lambda),
                  IndexMap::finite(rho));
}

} // namespace

TEST_CASE("index maps")
{
  auto s = IndexMap::shift(-1);
  CHECK(s(5) == 4);
  CHECK(s.inverse(4) == 5);
  auto c = IndexMap::cycles({{0, 3, 7}});
  CHECK(c(0) == 3);
  CHECK(c(7) == 0);
  CHECK(c(2) == 2);
  CHECK(c.inverse(3) == 0);
  CHECK_THROWS_AS(IndexMap::cycles({{0, 1}, {1, 2}}), StructuralError);
  CHECK(IndexMap::finite(Permutation::cycle(3)).preserves_range(3));
  CHECK_FALSE(IndexMap::shift(1).preserves_range(3));
}

TEST_CASE("the natural numbers are lambda,rho-weakly commutative")
{
  CHECK_NOTHROW(nat_kite(3, Permutation::identity(3), Permutation::cycle(3)));
  CHECK_NOTHROW(LazyKite(std::make_shared<NatChain>(), std::nullopt,
                         IndexMap::identity(), IndexMap::shift(-1)));
  auto c3 = std::make_shared<FiniteBase>(standard::chain(3));
  CHECK_THROWS_AS(LazyKite(c3, 2, IndexMap::identity(),
                           IndexMap::finite(Permutation::cycle(2))),
                  PreconditionError);
}

TEST_CASE("upper plus upper is undefined")
{
  auto k = nat_kite(2, Permutation::identity(2), Permutation::cycle(2));
  CHECK_FALSE(k.add(k.make(Sort::Upper, std::vector<Value>{1, 0}),
                    k.make(Sort::Upper, std::vector<Value>{0, 0})));
}

TEST_CASE("rule (II) on the natural numbers")
{
  auto k = nat_kite(2, Permutation::identity(2), Permutation::cycle(2));
  auto sum = k.add(k.make(Sort::Upper, std::vector<Value>{2, 3}),
                   k.make(Sort::Lower, std::vector<Value>{1, 1}));
  REQUIRE(sum);
  CHECK(*sum == k.make(Sort::Upper, std::vector<Value>{1, 2}));
}

TEST_CASE("negations on the natural numbers")
{
  auto k = nat_kite(2, Permutation::identity(2), Permutation::cycle(2));
  auto x = k.make(Sort::Lower, std::vector<Value>{1, 2});
  auto [minus, tilde] = k.neg(x);
  CHECK(minus == k.make(Sort::Upper, std::vector<Value>{2, 1}));
  CHECK(k.add(minus, x) == k.one());
  CHECK(k.add(x, tilde) == k.one());
  CHECK(k.neg(k.zero()).first == k.one());
  CHECK(k.neg(k.zero()).second == k.one());
}

TEST_CASE("lower below upper whenever + is total")
{
  auto k = nat_kite(2, Permutation::identity(2), Permutation::identity(2));
  std::mt19937_64 rng(3);
  for (int i = 0; i < 200; ++i) {
    auto f = k.sample(rng, Sort::Lower, 30);
    auto a = k.sample(rng, Sort::Upper, 30);
    CHECK(k.leq(f, a));
    CHECK(k.leq(k.zero(), a));
    CHECK(k.leq(a, k.one()));
  }
}

TEST_CASE("sampled addends are compatible")
{
  auto k = nat_kite(3, Permutation::identity(3), Permutation::cycle(3));
  std::mt19937_64 rng(9);
  for (int i = 0; i < 200; ++i) {
    auto a = k.sample(rng, Sort::Upper, 40);
    CHECK(k.add(a, k.sample_right_addend(rng, a)));
    CHECK(k.add(k.sample_left_addend(rng, a), a));
  }
}

TEST_CASE("sampled symmetry")
{
  auto id = Permutation::identity(2);
  CHECK(sampled_symmetry(nat_kite(2, id, id), 500, 1).holds);
  auto broken = sampled_symmetry(nat_kite(2, id, Permutation::cycle(2)), 500, 1);
  CHECK_FALSE(broken.holds);
  REQUIRE(broken.witness);

  auto k = nat_kite(2, id, Permutation::cycle(2));
  auto x = k.make(Sort::Lower, std::vector<Value>{1, 0});
  auto [minus, tilde] = k.neg(x);
  CHECK(minus == k.make(Sort::Upper, std::vector<Value>{0, 1}));
  CHECK(tilde == k.make(Sort::Upper, std::vector<Value>{1, 0}));
}

TEST_CASE("sampled perfectness")
{
  auto id = Permutation::identity(1);
  CHECK(sampled_perfect(nat_kite(1, id, id), 1000, 5).perfect);
  auto id3 = Permutation::identity(3);
  CHECK(sampled_perfect(nat_kite(3, id3, id3), 1000, 5).perfect);
}

TEST_CASE("lazy view of a finite base agrees with the explicit kite")
{
  auto id = Permutation::identity(2);
  auto explicit_kite = build_kite_explicit(standard::chain(3), id, id);
  LazyKite lazy(std::make_shared<FiniteBase>(standard::chain(3)), 2,
                IndexMap::finite(id), IndexMap::finite(id));
  auto const &p = explicit_kite.algebra();
  for (Elem a = 0; a < p.size(); ++a)
    for (Elem b = 0; b < p.size(); ++b) {
      auto x = to_lazy(lazy, explicit_kite.element(a));
      auto y = to_lazy(lazy, explicit_kite.element(b));
      auto s = p.add(a, b);
      auto t = lazy.add(x, y);
      REQUIRE(s.has_value() == t.has_value());
      if (s)
        CHECK(to_lazy(lazy, explicit_kite.element(*s)) == *t);
      CHECK(lazy.leq(x, y) == p.leq(a, b));
    }
}

TEST_CASE("overflow is a size error")
{
  NatChain n;
  CHECK_THROWS_AS(n.add(std::numeric_limits<Value>::max(), 1), SizeError);
}
