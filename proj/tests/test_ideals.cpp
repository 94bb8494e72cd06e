#include <doctest.h>

#include "kitelab/errors.hpp"
#include "kitelab/ideals.hpp"
#include "kitelab/standard.hpp"
#include "support.hpp"

using namespace kitelab;

namespace {

std::vector<std::vector<Elem>> members(std::vector<Ideal> const &ideals)
{
  std::vector<std::vector<Elem>> out;
  for (auto const &i : ideals)
    out.push_back(i.members);
  std::sort(out.begin(), out.end());
  return out;
}

} // namespace

TEST_CASE("ideals of small algebras")
{
  auto c3 = standard::chain(3);
  CHECK(members(enumerate_ideals(c3)) ==
        std::vector<std::vector<Elem>>{{0}, {0, 1, 2}});
  CHECK_FALSE(is_ideal(c3, {0, 1}));

  auto sq = standard::boolean_square().gpea();
  CHECK(members(enumerate_ideals(sq)) ==
        std::vector<std::vector<Elem>>{{0}, {0, 1}, {0, 1, 2, 3}, {0, 2}});
}

TEST_CASE("enumeration agrees with the power-set oracle")
{
  for (auto const &e :
       {standard::mo2().gpea(), standard::chain(5),
        standard::boolean_square().gpea(), oracle::load_gpea("bowtie.gpea"),
        oracle::load_gpea("nonnormal.gpea"), standard::unit_sums_only(4),
        unitization(standard::chain(3)).algebra().gpea()}) {
    auto all = enumerate_ideals(e);
    CHECK(members(all) == oracle::ideals(e));
    for (auto const &i : all)
      CHECK(is_normal(e, i) == oracle::is_normal(e, i.members));
    std::vector<std::vector<Elem>> normal_expected;
    for (auto const &m : oracle::ideals(e))
      if (oracle::is_normal(e, m))
        normal_expected.push_back(m);
    CHECK(members(enumerate_ideals(e, true)) == normal_expected);
  }
}

TEST_CASE("MO2 ideals include the atoms and their joins")
{
  auto all = members(enumerate_ideals(standard::mo2().gpea()));
  for (std::vector<Elem> m : {std::vector<Elem>{0}, {0, 1}, {0, 3}, {0, 1, 3}})
    CHECK(std::find(all.begin(), all.end(), m) != all.end());
}

TEST_CASE("normality")
{
  auto sq = standard::boolean_square().gpea();
  CHECK(is_normal(sq, Ideal{{0}}));
  CHECK(is_normal(sq, Ideal{{0, 1}}));
  auto nn = oracle::load_gpea("nonnormal.gpea");
  CHECK_FALSE(is_normal(nn, Ideal{{0, 1}}));
  CHECK(is_normal(nn, Ideal{{0}}));
  CHECK_THROWS_AS(is_normal(standard::chain(3), Ideal{{0, 1}}), UsageError);
}

TEST_CASE("least non-trivial normal ideal")
{
  auto c3 = standard::chain(3);
  auto least = least_nontrivial_normal_ideal(c3);
  REQUIRE(least);
  CHECK(least->members == std::vector<Elem>{0, 1, 2});
  CHECK(is_subdirectly_irreducible(c3));

  auto sq = standard::boolean_square().gpea();
  CHECK_FALSE(least_nontrivial_normal_ideal(sq));
  CHECK_FALSE(is_subdirectly_irreducible(sq));

  CHECK_FALSE(least_nontrivial_normal_ideal(standard::trivial()));
  CHECK(is_subdirectly_irreducible(standard::trivial()));
}

TEST_CASE("maximal ideals")
{
  auto sq = standard::boolean_square().gpea();
  CHECK(is_maximal_ideal(sq, Ideal{{0, 1}}));
  CHECK_FALSE(is_maximal_ideal(sq, Ideal{{0}}));
  CHECK_FALSE(is_maximal_ideal(sq, Ideal{{0, 1, 2, 3}}));
}

TEST_CASE("quotients")
{
  auto c2c2 = standard::product(standard::chain(2), standard::chain(2));
  auto q = quotient(c2c2, Ideal{{0, 2}});
  CHECK(q.algebra.size() == 2);
  CHECK(find_isomorphism(q.algebra, standard::chain(2)));

  auto sq = standard::boolean_square().gpea();
  auto q2 = quotient(sq, Ideal{{0, 1}});
  CHECK(find_isomorphism(q2.algebra, standard::chain(2)));

  auto mo2 = standard::mo2().gpea();
  auto q3 = quotient(mo2, Ideal{{0}});
  CHECK(q3.algebra.size() == mo2.size());
  CHECK(find_isomorphism(q3.algebra, mo2));
}

TEST_CASE("congruence from a normal ideal is checked")
{
  auto sq = standard::boolean_square().gpea();
  auto c = congruence_from_normal_ideal(sq, Ideal{{0, 1}});
  CHECK(c.is_congruence);
  CHECK(c.block[0] == c.block[1]);
  CHECK(c.block[2] == c.block[3]);
  CHECK(c.block[0] != c.block[2]);
}

TEST_CASE("lower ideals of kites")
{
  auto id = Permutation::identity(2);
  auto kite = build_kite_explicit(standard::chain(2), id, id);
  auto report = kite_lower_ideal(kite, Ideal{{0, 1}});
  CHECK(report.ideal.size() == 4);
  CHECK(report.is_ideal);
  CHECK(report.is_normal);
  REQUIRE(report.is_maximal);
  CHECK(*report.is_maximal);
  CHECK(oracle::is_normal(kite.algebra().gpea(), report.ideal.members));

  auto zero = kite_lower_ideal(kite, Ideal{{0}});
  CHECK(zero.ideal.members == std::vector<Elem>{0});

  auto unit = unitization(standard::chain(2));
  auto h = kite_lower_ideal(unit, Ideal{{0, 1}});
  CHECK(h.ideal.members == std::vector<Elem>{0, 1});
  CHECK(h.is_normal);

  CHECK_THROWS_AS(kite_lower_ideal(unit, Ideal{{0, 5}}), UsageError);
}

TEST_CASE("coordinate projections")
{
  auto id = Permutation::identity(2);
  auto kite = build_kite_explicit(standard::chain(3), id, id);
  auto h = kite_lower_ideal(kite, Ideal{{0, 1, 2}});
  CHECK(coordinate_projection(kite, h.ideal, 0) == std::vector<Elem>{0, 1, 2});
  CHECK_THROWS_AS(
    coordinate_projection(
      kite, Ideal{{0, kite.index_of(kite.one())}}, 0),
    UsageError);
}
