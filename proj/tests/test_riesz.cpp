#include <doctest.h>

#include <memory>
#include <random>

#include "kitelab/errors.hpp"
#include "kitelab/riesz.hpp"
#include "kitelab/standard.hpp"
#include "support.hpp"

using namespace kitelab;

namespace {

std::vector<Gpea> samples()
{
  return {standard::chain(4),
          standard::mo2().gpea(),
          standard::boolean_square().gpea(),
          standard::unit_sums_only(3),
          oracle::load_gpea("bowtie.gpea"),
          oracle::load_gpea("nonnormal.gpea"),
          unitization(standard::chain(2)).algebra().gpea(),
          unitization(standard::unit_sums_only(2)).algebra().gpea()};
}

} // namespace

TEST_CASE("RIP")
{
  CHECK(check_rip(standard::chain(4)).holds);
  CHECK(check_rip(standard::mo2().gpea()).holds);
  auto bowtie = check_rip(oracle::load_gpea("bowtie.gpea"));
  CHECK_FALSE(bowtie.holds);
  CHECK(bowtie.counterexample.size() == 4);
}

TEST_CASE("RDP0")
{
  auto c4 = check_rdp0(standard::chain(4));
  CHECK(c4.holds);
  CHECK(check_rdp0(standard::boolean_square().gpea()).holds);
  CHECK(check_rdp0(standard::trivial()).holds);
}

TEST_CASE("MO2 fails RDP at (a, a', b, b')")
{
  auto r = check_rdp(standard::mo2().gpea());
  CHECK_FALSE(r.holds);
  CHECK(r.counterexample == std::vector<Elem>{1, 2, 3, 4});
  CHECK_FALSE(find_decomposition(standard::mo2().gpea(), 1, 2, 3, 4));
}

TEST_CASE("chains and 2^2 refine")
{
  auto c4 = standard::chain(4);
  CHECK(check_rdp(c4).holds);
  CHECK(check_rdp1(c4).holds);
  CHECK(check_rdp2(c4).holds);
  CHECK(check_rdp2(standard::boolean_square().gpea()).holds);
}

TEST_CASE("checkers agree with the brute-force oracle")
{
  for (auto const &e : samples()) {
    CAPTURE(e.size());
    CHECK(check_rip(e).holds == oracle::rip(e));
    CHECK(check_rdp(e).holds == oracle::rdp(e, oracle::Level::RDP));
    CHECK(check_rdp1(e).holds == oracle::rdp(e, oracle::Level::RDP1));
    CHECK(check_rdp2(e).holds == oracle::rdp(e, oracle::Level::RDP2));
  }
}

TEST_CASE("sample tables certify their quadruples")
{
  for (auto const &e : samples()) {
    auto r = check_rdp(e);
    if (!r.table)
      continue;
    auto const &q = r.table_quadruple;
    CHECK(table_certifies(e, *r.table, q[0], q[1], q[2], q[3]));
    CHECK(table_certifies(e, r.table->transposed(), q[2], q[3], q[0], q[1]));
  }
}

TEST_CASE("the carrier cap is enforced")
{
  CHECK_THROWS_AS(check_rdp(standard::chain(10), 5), SizeError);
  CHECK(riesz_property_from_string("rdp1") == RieszProperty::RDP1);
  CHECK_THROWS_AS(riesz_property_from_string("rdp9"), UsageError);
}

TEST_CASE("lazy decomposition, all four sort patterns")
{
  auto n = std::make_shared<NatChain>();
  LazyKite k(n, 1, IndexMap::identity(), IndexMap::identity());
  auto L = [&](Value v) { return k.make(Sort::Lower, std::vector<Value>{v}); };
  auto U = [&](Value v) { return k.make(Sort::Upper, std::vector<Value>{v}); };

  // (i)
  auto t1 = kite_rdp_decompose(k, L(1), L(2), L(2), L(1));
  CHECK(classify(L(1), L(2), L(2), L(1)) == KiteCase::LowerLower);
  CHECK(table_certifies(k, t1, L(1), L(2), L(2), L(1)));

  // trivial quadruple
  auto tt = kite_rdp_decompose(k, L(3), L(4), L(3), L(4));
  CHECK(tt.c11 == L(3));
  CHECK(tt.c12 == k.zero());
  CHECK(tt.c21 == k.zero());
  CHECK(tt.c22 == L(4));

  // (ii) U(7) + L(2) = U(6) + L(1)
  CHECK(classify(U(7), L(2), U(6), L(1)) == KiteCase::UpperLower);
  auto t2 = kite_rdp_decompose(k, U(7), L(2), U(6), L(1));
  CHECK(table_certifies(k, t2, U(7), L(2), U(6), L(1)));

  // (iii) L(2) + U(7) = L(1) + U(6)
  CHECK(classify(L(2), U(7), L(1), U(6)) == KiteCase::LowerUpper);
  auto t3 = kite_rdp_decompose(k, L(2), U(7), L(1), U(6));
  CHECK(table_certifies(k, t3, L(2), U(7), L(1), U(6)));

  // (iv) U(5) + L(3) = L(1) + U(3)
  REQUIRE(k.add(U(5), L(3)) == k.add(L(1), U(3)));
  CHECK(classify(U(5), L(3), L(1), U(3)) == KiteCase::Mixed);
  auto t4 = kite_rdp_decompose(k, U(5), L(3), L(1), U(3));
  CHECK(table_certifies(k, t4, U(5), L(3), L(1), U(3)));

  CHECK_THROWS_AS(kite_rdp_decompose(k, U(1), U(1), U(1), U(1)), UsageError);
  CHECK_THROWS_AS(kite_rdp_decompose(k, L(1), L(1), L(3), L(0)), UsageError);
}

TEST_CASE("lazy decomposition over a finite base")
{
  auto base = std::make_shared<FiniteBase>(standard::chain(4));
  LazyKite k(base, 2, IndexMap::identity(), IndexMap::identity());
  auto explicit_kite = build_kite_explicit(standard::chain(4),
                                           Permutation::identity(2),
                                           Permutation::identity(2));
  auto const &p = explicit_kite.algebra();
  std::size_t checked = 0;
  for (Elem a1 = 0; a1 < p.size(); ++a1)
    for (Elem a2 = 0; a2 < p.size(); ++a2) {
      auto s = p.add(a1, a2);
      if (!s)
        continue;
      for (Elem b1 = 0; b1 < p.size(); ++b1)
        for (Elem b2 = 0; b2 < p.size(); ++b2) {
          if (p.add(b1, b2) != s)
            continue;
          auto x1 = to_lazy(k, explicit_kite.element(a1));
          auto x2 = to_lazy(k, explicit_kite.element(a2));
          auto y1 = to_lazy(k, explicit_kite.element(b1));
          auto y2 = to_lazy(k, explicit_kite.element(b2));
          // The mixed pattern needs a + g defined, which a finite chain
          // does not always provide.
          try {
            auto t = kite_rdp_decompose(k, x1, x2, y1, y2);
            CHECK(table_certifies(k, t, x1, x2, y1, y2));
            ++checked;
          } catch (PreconditionError const &) {
            CHECK(classify(x1, x2, y1, y2) == KiteCase::Mixed);
          }
        }
    }
  CHECK(checked > 100);
}
