#include <doctest.h>

#include <optional>

#include "kitelab/errors.hpp"
#include "kitelab/kite.hpp"
#include "kitelab/standard.hpp"
#include "support.hpp"

using namespace kitelab;

namespace {

KiteElement lower(std::vector<Elem> c) { return {Sort::Lower, std::move(c)}; }
KiteElement upper(std::vector<Elem> c) { return {Sort::Upper, std::move(c)}; }

/// Rules (I)-(IV) written out against the base table, with differences found
/// by search rather than through the library.
std::optional<KiteElement> rule_sum(Gpea const &e, Permutation const &lambda,
                                    Permutation const &rho,
                                    KiteElement const &x, KiteElement const &y)
{
  std::size_t n = lambda.size();
  auto solve_right = [&](Elem f, Elem a) -> std::optional<Elem> {
    for (Elem c = 0; c < e.size(); ++c)
      if (e.table().at(f, c) == a)
        return c;
    return std::nullopt;
  };
  auto solve_left = [&](Elem f, Elem a) -> std::optional<Elem> {
    for (Elem d = 0; d < e.size(); ++d)
      if (e.table().at(d, f) == a)
        return d;
    return std::nullopt;
  };
  if (x.sort == Sort::Upper && y.sort == Sort::Upper)
    return std::nullopt;
  KiteElement out{x.sort == Sort::Upper || y.sort == Sort::Upper
                    ? Sort::Upper
                    : Sort::Lower,
                  std::vector<Elem>(n)};
  for (std::uint32_t i = 0; i < n; ++i) {
    std::optional<Elem> v;
    if (x.sort == Sort::Lower && y.sort == Sort::Lower)
      v = e.table().at(x.coords[i], y.coords[i]);
    else if (x.sort == Sort::Upper)
      v = solve_right(y.coords[rho.inverse(i)], x.coords[i]);
    else
      v = solve_left(x.coords[lambda.inverse(i)], y.coords[i]);
    if (!v)
      return std::nullopt;
    out.coords[i] = *v;
  }
  return out;
}

void check_against_rules(ExplicitKite const &kite)
{
  auto const &p = kite.algebra();
  for (Elem a = 0; a < p.size(); ++a)
    for (Elem b = 0; b < p.size(); ++b) {
      auto expected = rule_sum(kite.base(), kite.lambda(), kite.rho(),
                               kite.element(a), kite.element(b));
      auto got = p.add(a, b);
      REQUIRE(expected.has_value() == got.has_value());
      if (got)
        CHECK(kite.element(*got) == *expected);
    }
}

} // namespace

TEST_CASE("permutations")
{
  CHECK(permutation_from_spec("cycle", 3).image() ==
        std::vector<std::uint32_t>{2, 0, 1});
  CHECK(permutation_from_spec("id", 2).is_identity());
  CHECK(permutation_from_spec("swap", 3).image() ==
        std::vector<std::uint32_t>{1, 0, 2});
  CHECK(permutation_from_spec("2 0 1", 3) == permutation_from_spec("2,0,1", 3));
  CHECK(permutation_from_spec("shift:1", 3).image() ==
        std::vector<std::uint32_t>{1, 2, 0});
  CHECK_THROWS_AS(Permutation({0, 0}), StructuralError);
  auto c = Permutation::cycle(4);
  CHECK(c.after(c.inverted()).is_identity());
}

TEST_CASE("lambda,rho weak commutativity")
{
  auto c3 = standard::chain(3);
  CHECK(is_lr_weakly_commutative(c3, Permutation::identity(2),
                                 Permutation::identity(2)));
  CHECK_FALSE(is_lr_weakly_commutative(c3, Permutation::identity(2),
                                       permutation_from_spec("swap", 2)));
  CHECK_THROWS_AS(build_kite_explicit(c3, Permutation::identity(2),
                                      permutation_from_spec("swap", 2)),
                  PreconditionError);
}

TEST_CASE("materialized tables follow rules (I)-(IV)")
{
  auto id2 = Permutation::identity(2);
  check_against_rules(unitization(standard::chain(3)));
  check_against_rules(unitization(standard::mo2().gpea()));
  check_against_rules(build_kite_explicit(standard::chain(3), id2, id2));
  check_against_rules(build_kite_explicit(
    standard::trivial(), Permutation::identity(3), Permutation::cycle(3)));
  auto swap = permutation_from_spec("swap", 2);
  check_against_rules(build_kite_explicit(standard::chain(2), swap, swap));
}

TEST_CASE("unitization of C2 is the four-element Boolean algebra")
{
  auto kite = unitization(standard::chain(2));
  REQUIRE(kite.size() == 4);
  CHECK(kite.element(1) == lower({1}));
  CHECK(kite.element(2) == upper({0}));
  auto const &p = kite.algebra();
  CHECK(p.top() == kite.index_of(kite.one()));
  CHECK(kite.add(lower({1}), upper({1})) == kite.one());
  CHECK_FALSE(kite.add(lower({1}), lower({1})));
  CHECK_FALSE(kite.add(upper({0}), upper({0})));
  CHECK(find_isomorphism(p, standard::boolean_square()));
  CHECK(kite.neg(lower({1})).second == upper({1}));
}

TEST_CASE("kite of the trivial algebra is the two-element Boolean algebra")
{
  auto t = standard::trivial();
  for (auto const &[l, r] :
       {std::pair{Permutation::identity(1), Permutation::identity(1)},
        std::pair{Permutation::identity(2), permutation_from_spec("swap", 2)}}) {
    auto kite = build_kite_explicit(t, l, r);
    REQUIRE(kite.size() == 2);
    CHECK(find_isomorphism(kite.algebra(), standard::chain_pea(2)));
  }
}

TEST_CASE("C2 with two indices gives an eight-element PEA")
{
  auto id = Permutation::identity(2);
  auto kite = build_kite_explicit(standard::chain(2), id, id);
  CHECK(kite.size() == 8);
  CHECK(verify_pea_axioms(kite.algebra().gpea(), kite.algebra().top()).passed());
}

TEST_CASE("closed-form negations and order match exhaustive search")
{
  auto id2 = Permutation::identity(2);
  auto swap = permutation_from_spec("swap", 2);
  std::vector<ExplicitKite> kites{
    unitization(standard::chain(4)), unitization(standard::mo2().gpea()),
    build_kite_explicit(standard::chain(3), id2, id2),
    build_kite_explicit(standard::chain(2), swap, swap),
    build_kite_explicit(standard::trivial(), Permutation::identity(3),
                        Permutation::cycle(3))};
  for (auto const &kite : kites) {
    auto const &p = kite.algebra();
    CHECK(kite.neg(kite.zero()).first == kite.one());
    CHECK(kite.neg(kite.zero()).second == kite.one());
    for (Elem a = 0; a < p.size(); ++a) {
      auto [minus, tilde] = kite.neg(kite.element(a));
      CHECK(kite.index_of(minus) == oracle::minus(p, a));
      CHECK(kite.index_of(tilde) == oracle::tilde(p, a));
      for (Elem b = 0; b < p.size(); ++b)
        CHECK(kite.leq(kite.element(a), kite.element(b)) ==
              oracle::leq(p.gpea(), a, b));
    }
  }
}

TEST_CASE("order in small unitizations")
{
  auto c5 = unitization(standard::chain(5));
  CHECK_FALSE(c5.leq(lower({3}), upper({3})));
  auto c3 = unitization(standard::chain(3));
  CHECK_FALSE(c3.leq(lower({2}), upper({2})));
  CHECK_FALSE(c3.leq(upper({2}), lower({2})));
  CHECK(c3.leq(lower({1}), upper({1})));
  CHECK(c3.size() == 6);
  for (Elem a = 0; a < c3.size(); ++a) {
    CHECK(c3.leq(c3.zero(), c3.element(a)));
    CHECK(c3.leq(c3.element(a), c3.one()));
  }
}

TEST_CASE("symmetry")
{
  auto id2 = Permutation::identity(2);
  CHECK(is_symmetric(build_kite_explicit(standard::chain(3), id2, id2).algebra()));
  CHECK(is_symmetric(standard::chain_pea(2)));
  CHECK_FALSE(asymmetry_witness(standard::mo2()));
}

TEST_CASE("finite PEAs have only the trivial infinitesimal")
{
  for (auto const &p : {standard::chain_pea(4), standard::mo2(),
                        unitization(standard::chain(3)).algebra()})
    CHECK(infinitesimals(p) == std::vector<Elem>{p.zero()});
}

TEST_CASE("the four-element Boolean algebra is not perfect")
{
  CHECK_FALSE(check_perfect(standard::boolean_square()));
  CHECK(check_perfect(standard::chain_pea(2)));
}

TEST_CASE("membership and budget")
{
  auto kite = unitization(standard::chain(2));
  CHECK_THROWS_AS(kite.index_of(lower({2})), UsageError);
  CHECK_THROWS_AS(kite.index_of(lower({0, 0})), UsageError);
  auto id = Permutation::identity(3);
  CHECK_THROWS_AS(build_kite_explicit(standard::chain(5), id, id, 100),
                  SizeError);
}

TEST_CASE("two-index kites keep their labels")
{
  auto id = Permutation::identity(1);
  auto kite =
    ExplicitKite::build(standard::chain(2), id, id, {1}, {1});
  CHECK(kite.lower_labels() == std::vector<std::size_t>{1});
  CHECK(kite.size() == 4);
}
