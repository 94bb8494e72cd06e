// Acceptance run: one PASS/FAIL line per criterion. Exit status is nonzero
// when any criterion fails.

#include <algorithm>
#include <array>
#include <chrono>
#include <cstdio>
#include <map>
#include <memory>
#include <numeric>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "kitelab/connectivity.hpp"
#include "kitelab/errors.hpp"
#include "kitelab/fuzz.hpp"
#include "kitelab/ideals.hpp"
#include "kitelab/kite.hpp"
#include "kitelab/pogroups.hpp"
#include "kitelab/report.hpp"
#include "kitelab/riesz.hpp"
#include "kitelab/standard.hpp"
#include "kitelab/states.hpp"
#include "support.hpp"

using namespace kitelab;

namespace {

// Pinned thresholds.
constexpr std::size_t kMinCorpus = 200;
constexpr double kCorpusSeconds = 60.0;
constexpr std::size_t kQuadruplesPerCase = 10000;
constexpr double kDecomposeSeconds = 30.0;
constexpr std::size_t kGroupTriples = 1000;
constexpr std::size_t kIsoSamples = 10000;
constexpr std::int64_t kIsoBound = 50;
constexpr std::size_t kPerfectSamples = 1000;
constexpr std::size_t kStateSamples = 1000;
constexpr std::size_t kExhaustiveCap = 128;
constexpr std::uint64_t kCorpusSeed = 2024;
constexpr std::size_t kRandomBases = 48;

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start)
{
  return std::chrono::duration<double>(Clock::now() - start).count();
}

struct Outcome
{
  bool pass = true;
  std::string detail;
};

int failures = 0;

void report(int id, Outcome const &o)
{
  std::printf("%s criterion %d: %s\n", o.pass ? "PASS" : "FAIL", id,
              o.detail.c_str());
  std::fflush(stdout);
  if (!o.pass)
    ++failures;
}

template <class... Args>
std::string format(char const *fmt, Args... args)
{
  char buf[512];
  std::snprintf(buf, sizeof buf, fmt, args...);
  return buf;
}

struct Base
{
  std::string name;
  Gpea gpea;
};

struct CorpusKite
{
  std::string name;
  Gpea base;
  ExplicitKite kite;
  bool equal_perms;
};

std::vector<Permutation> all_permutations(std::size_t n)
{
  std::vector<std::uint32_t> image(n);
  std::iota(image.begin(), image.end(), 0u);
  std::vector<Permutation> out;
  do
    out.emplace_back(image);
  while (std::next_permutation(image.begin(), image.end()));
  return out;
}

std::vector<Base> corpus_bases()
{
  std::vector<Base> out;
  for (std::size_t k = 2; k <= 6; ++k)
    out.push_back({"C" + std::to_string(k), standard::chain(k)});
  out.push_back(
    {"C2xC2", standard::product(standard::chain(2), standard::chain(2))});
  out.push_back({"MO2", standard::mo2().gpea()});
  out.push_back({"bowtie", oracle::load_gpea("bowtie.gpea")});
  FuzzConfig config;
  config.seed = kCorpusSeed;
  config.commutative = true;
  config.count = kRandomBases;
  auto random = fuzz_corpus(config);
  for (std::size_t i = 0; i < random.size(); ++i)
    out.push_back({"random" + std::to_string(i), random[i]});
  return out;
}

std::string perm_name(Permutation const &l, Permutation const &r)
{
  return "[" + to_string(l) + "|" + to_string(r) + "]";
}

/// Builds the corpus and returns the number of axiom violations.
std::size_t build_corpus(std::vector<CorpusKite> &out)
{
  std::size_t violations = 0;
  auto add = [&](std::string const &name, Gpea const &base,
                 Permutation const &l, Permutation const &r) {
    auto kite = build_kite_explicit(base, l, r, 20000);
    auto const &p = kite.algebra();
    violations += verify_gpea_axioms(p.gpea().table(), p.zero()).violations.size();
    violations += verify_pea_axioms(p.gpea(), p.top()).violations.size();
    out.push_back({name + perm_name(l, r), base, std::move(kite), l == r});
  };
  for (auto const &b : corpus_bases()) {
    std::vector<std::size_t> arities{1};
    if (b.gpea.size() <= 6)
      arities.push_back(2);
    if (b.gpea.size() <= 3)
      arities.push_back(3);
    for (auto n : arities)
      for (auto const &p : all_permutations(n))
        add(b.name, b.gpea, p, p);
  }
  auto trivial = standard::trivial();
  for (std::size_t n = 2; n <= 3; ++n)
    for (auto const &l : all_permutations(n))
      for (auto const &r : all_permutations(n))
        if (!(l == r))
          add("trivial", trivial, l, r);
  return violations;
}

// 1 -------------------------------------------------------------------------

Outcome well_formed(std::vector<CorpusKite> &corpus)
{
  auto start = Clock::now();
  auto violations = build_corpus(corpus);
  double elapsed = seconds_since(start);
  Outcome o;
  o.pass = corpus.size() >= kMinCorpus && violations == 0 &&
           elapsed < kCorpusSeconds;
  o.detail = format("%zu kites, %zu axiom violations, %.2f s (limit %.0f s)",
                    corpus.size(), violations, elapsed, kCorpusSeconds);
  return o;
}

// 2 -------------------------------------------------------------------------

Outcome negations_match(std::vector<CorpusKite> const &corpus)
{
  std::size_t checked = 0, mismatches = 0;
  for (auto const &c : corpus) {
    auto const &p = c.kite.algebra();
    for (Elem a = 0; a < p.size(); ++a) {
      auto [minus, tilde] = c.kite.neg(c.kite.element(a));
      if (c.kite.index_of(minus) != oracle::minus(p, a) ||
          c.kite.index_of(tilde) != oracle::tilde(p, a))
        ++mismatches;
      ++checked;
    }
  }
  return {mismatches == 0,
          format("%zu elements, %zu mismatches", checked, mismatches)};
}

// 3 -------------------------------------------------------------------------

Outcome symmetry(std::vector<CorpusKite> const &corpus)
{
  std::size_t equal = 0, asymmetric = 0;
  for (auto const &c : corpus)
    if (c.equal_perms) {
      ++equal;
      if (!is_symmetric(c.kite.algebra()))
        ++asymmetric;
    }
  LazyKite swap(std::make_shared<NatChain>(), 2,
                IndexMap::finite(Permutation::identity(2)),
                IndexMap::finite(permutation_from_spec("swap", 2)));
  auto x = swap.make(Sort::Lower, std::vector<Value>{1, 0});
  auto [minus, tilde] = swap.neg(x);
  bool witness = !(minus == tilde);
  auto sampled = sampled_symmetry(swap, 1000, 1);
  bool pass = asymmetric == 0 && witness && !sampled.holds &&
              sampled.witness.has_value();
  return {pass, format("%zu lambda=rho kites, %zu asymmetric; swap kite: "
                       "%s^- = %s, %s^~ = %s",
                       equal, asymmetric, swap.to_string(x).c_str(),
                       swap.to_string(minus).c_str(), swap.to_string(x).c_str(),
                       swap.to_string(tilde).c_str())};
}

// 4 -------------------------------------------------------------------------

Outcome rdp_transfer(std::vector<CorpusKite> const &corpus)
{
  std::size_t violations = 0, checks = 0, kite_holds = 0;
  std::string first;
  for (auto const &c : corpus) {
    if (!is_lr_weakly_commutative(c.base, c.kite.lambda(), c.kite.rho()))
      continue;
    for (auto p : {RieszProperty::RDP0, RieszProperty::RDP, RieszProperty::RDP1,
                   RieszProperty::RDP2}) {
      bool k = check_riesz(c.kite.algebra().gpea(), p, kExhaustiveCap).holds;
      ++checks;
      if (!k)
        continue;
      ++kite_holds;
      if (!check_riesz(c.base, p, kExhaustiveCap).holds) {
        ++violations;
        if (first.empty())
          first = c.name + " " + std::string(to_string(p));
      }
    }
  }
  return {violations == 0,
          format("%zu checks, kite holds in %zu, %zu transfer violations%s%s",
                 checks, kite_holds, violations, first.empty() ? "" : ": ",
                 first.c_str())};
}

// 5 -------------------------------------------------------------------------

struct QuadGen
{
  LazyKite const &kite;
  std::mt19937_64 rng;
  Value bound = 50;

  LazyElement lower() { return kite.sample(rng, Sort::Lower, bound); }
  LazyElement upper() { return kite.sample(rng, Sort::Upper, bound); }

  /// b1 + b2 = s from a chosen left part.
  std::optional<std::pair<LazyElement, LazyElement>>
  split_left(LazyElement const &s, LazyElement const &b1)
  {
    auto inner = kite.add(kite.neg(s).first, b1);
    if (!inner)
      return std::nullopt;
    return std::pair{b1, kite.neg(*inner).second};
  }

  /// b1 + b2 = s from a chosen right part.
  std::optional<std::pair<LazyElement, LazyElement>>
  split_right(LazyElement const &s, LazyElement const &b2)
  {
    auto inner = kite.add(b2, kite.neg(s).second);
    if (!inner)
      return std::nullopt;
    return std::pair{kite.neg(*inner).first, b2};
  }

  /// Lower element below a lower s, coordinate by coordinate.
  LazyElement lower_below(LazyElement const &s)
  {
    std::map<std::int64_t, Value> coords;
    for (auto const &[i, v] : s.coords)
      coords[i] = kite.base().sample_below(rng, v);
    return kite.make(Sort::Lower, coords);
  }

  std::array<LazyElement, 4> draw(KiteCase wanted)
  {
    for (;;) {
      LazyElement a1, a2;
      std::optional<std::pair<LazyElement, LazyElement>> b;
      switch (wanted) {
      case KiteCase::LowerLower:
        a1 = lower();
        a2 = lower();
        break;
      case KiteCase::UpperLower:
      case KiteCase::Mixed:
        if (wanted == KiteCase::Mixed && rng() % 2) {
          a2 = upper();
          a1 = kite.sample_left_addend(rng, a2);
        } else {
          a1 = upper();
          a2 = kite.sample_right_addend(rng, a1);
        }
        break;
      case KiteCase::LowerUpper:
        a2 = upper();
        a1 = kite.sample_left_addend(rng, a2);
        break;
      }
      auto s = kite.add(a1, a2);
      if (!s)
        continue;
      bool upper_first = a1.sort == Sort::Upper;
      switch (wanted) {
      case KiteCase::LowerLower:
        b = split_left(*s, lower_below(*s));
        break;
      case KiteCase::UpperLower:
        b = split_right(*s, lower());
        break;
      case KiteCase::LowerUpper:
        b = split_left(*s, lower());
        break;
      case KiteCase::Mixed:
        b = upper_first ? split_left(*s, lower()) : split_right(*s, lower());
        break;
      }
      if (!b || kite.add(b->first, b->second) != s)
        continue;
      if (classify(a1, a2, b->first, b->second) != wanted)
        continue;
      return {a1, a2, b->first, b->second};
    }
  }
};

Outcome constructive_decomposition()
{
  auto start = Clock::now();
  std::size_t total = 0, failed = 0;
  std::string first;
  for (std::size_t n = 1; n <= 3; ++n) {
    LazyKite kite(std::make_shared<NatChain>(), n,
                  IndexMap::finite(Permutation::identity(n)),
                  IndexMap::finite(Permutation::cycle(n)));
    QuadGen gen{kite, std::mt19937_64(100 + n)};
    for (auto wanted : {KiteCase::LowerLower, KiteCase::UpperLower,
                        KiteCase::LowerUpper, KiteCase::Mixed})
      for (std::size_t i = 0; i < kQuadruplesPerCase; ++i) {
        auto [a1, a2, b1, b2] = gen.draw(wanted);
        ++total;
        bool ok = false;
        try {
          auto t = kite_rdp_decompose(kite, a1, a2, b1, b2);
          ok = table_certifies(kite, t, a1, a2, b1, b2);
        } catch (Error const &) {
          ok = false;
        }
        if (!ok && ++failed == 1)
          first = "n=" + std::to_string(n) + " " + kite.to_string(a1) + " + " +
                  kite.to_string(a2) + " = " + kite.to_string(b1) + " + " +
                  kite.to_string(b2);
      }
  }
  double elapsed = seconds_since(start);
  return {failed == 0 && elapsed < kDecomposeSeconds &&
            total == 3 * 4 * kQuadruplesPerCase,
          format("%zu quadruples (%zu per case), %zu tables rejected, %.2f s "
                 "(limit %.0f s)%s%s",
                 total, kQuadruplesPerCase, failed, elapsed, kDecomposeSeconds,
                 first.empty() ? "" : "; first: ", first.c_str())};
}

// 6 -------------------------------------------------------------------------

Outcome ideal_theory(std::vector<CorpusKite> const &corpus)
{
  std::size_t lifted = 0, bad_lift = 0, maximal_checked = 0, not_maximal = 0;
  std::size_t projections = 0, bad_proj_rdp1 = 0, bad_proj_other = 0;
  std::size_t kites_with_projection = 0;
  for (auto const &c : corpus) {
    auto const &kg = c.kite.algebra().gpea();
    for (auto const &h : enumerate_ideals(c.base, true, kExhaustiveCap)) {
      auto r = kite_lower_ideal(c.kite, h);
      ++lifted;
      if (!r.is_ideal || !r.is_normal || !oracle::is_normal(kg, r.ideal.members))
        ++bad_lift;
      if (h.size() == c.base.size()) {
        ++maximal_checked;
        if (!r.is_maximal || !*r.is_maximal)
          ++not_maximal;
      }
    }
    // Ideals inside E^I: the lower block, in the index order of the
    // iterated product, so its ideals are candidate kite ideals as they are.
    ++kites_with_projection;
    bool rdp1 = check_rdp1(kg, kExhaustiveCap).holds;
    Gpea block = c.base;
    for (std::size_t i = 1; i < c.kite.arity(); ++i)
      block = standard::product(block, c.base);
    for (auto const &j : enumerate_ideals(block, false, kExhaustiveCap)) {
      if (!is_ideal(kg, j.members) || !is_normal(kg, j))
        continue;
      for (std::size_t i = 0; i < c.kite.arity(); ++i) {
        auto proj = coordinate_projection(c.kite, j, i);
        ++projections;
        if (!is_ideal(c.base, proj) || !oracle::is_normal(c.base, proj))
          ++(rdp1 ? bad_proj_rdp1 : bad_proj_other);
      }
    }
  }
  bool pass = bad_lift == 0 && not_maximal == 0 && bad_proj_rdp1 == 0 &&
              maximal_checked > 0;
  return {pass,
          format("%zu lifted ideals (%zu not normal), %zu maximality checks "
                 "(%zu failed), %zu projections over %zu kites (%zu bad on "
                 "RDP1 kites, %zu elsewhere)",
                 lifted, bad_lift, maximal_checked, not_maximal, projections,
                 kites_with_projection, bad_proj_rdp1, bad_proj_other)};
}

// 7 -------------------------------------------------------------------------

Outcome irreducibility(std::vector<CorpusKite> const &corpus)
{
  std::size_t eligible = 0, mismatches = 0;
  std::string names;
  for (auto const &c : corpus) {
    if (c.base.is_trivial() || !is_directed(c.base))
      continue;
    auto const &kg = c.kite.algebra().gpea();
    if (kg.size() > kExhaustiveCap || !check_rdp1(kg, kExhaustiveCap).holds)
      continue;
    auto r = irreducibility_check(c.kite, {kExhaustiveCap, kExhaustiveCap});
    ++eligible;
    if (r.predicted != r.observed) {
      ++mismatches;
      names += (names.empty() ? "" : ", ") + c.name +
               (r.predicted ? " (predicted true)" : " (predicted false)");
    }
  }

  auto id = Permutation::identity(2);
  auto two = build_kite_explicit(standard::chain(2), id, id);
  auto const &g = two.algebra().gpea();
  bool no_least = !least_nontrivial_normal_ideal(g, kExhaustiveCap);
  auto left = ideal_closure(g, {two.index_of({Sort::Lower, {1, 0}})});
  auto right = ideal_closure(g, {two.index_of({Sort::Lower, {0, 1}})});
  std::vector<Elem> meet;
  std::set_intersection(left.members.begin(), left.members.end(),
                        right.members.begin(), right.members.end(),
                        std::back_inserter(meet));
  bool components_ok = is_normal(g, left) && is_normal(g, right) &&
                       meet == std::vector<Elem>{0};

  bool pass = mismatches == 0 && no_least && components_ok;
  return {pass,
          format("%zu eligible kites, %zu predicted != observed; C2 |I|=2: "
                 "least ideal %s, component ideals meet in {0}: %s",
                 eligible, mismatches, no_least ? "absent" : "present",
                 components_ok ? "yes" : "no") +
            (names.empty() ? "" : "; mismatches: " + names)};
}

// 8 -------------------------------------------------------------------------

Outcome subdirect()
{
  auto id = Permutation::identity(2);
  auto kite = build_kite_explicit(standard::chain(2), id, id);
  auto d = subdirect_decompose(kite);
  auto sq = standard::boolean_square();
  bool factors = d.factors.size() == 2;
  for (auto const &f : d.factors)
    factors = factors && find_isomorphism(f.algebra(), sq).has_value();

  auto prod = d.product();
  auto idx = d.product_indices();
  auto const &p = kite.algebra();
  std::size_t pairs = 0, bad = 0;
  for (Elem a = 0; a < p.size(); ++a)
    for (Elem b = 0; b < p.size(); ++b) {
      ++pairs;
      auto s = p.add(a, b);
      auto t = prod.add(idx[a], idx[b]);
      if (s.has_value() != t.has_value() || (s && idx[*s] != *t))
        ++bad;
    }
  std::vector<Elem> sorted = idx;
  std::sort(sorted.begin(), sorted.end());
  bool injective = std::adjacent_find(sorted.begin(), sorted.end()) == sorted.end();
  bool surjective = std::all_of(d.surjective.begin(), d.surjective.end(),
                                [](bool b) { return b; }) &&
                    d.surjective.size() == 2;
  bool pass = factors && prod.size() == 16 && d.injective && injective &&
              d.preserves && d.reflects && surjective && bad == 0 && pairs == 64;
  return {pass, format("factors 2^2 x 2^2: %s, injective: %s, surjective: %s, "
                       "%zu pairs, %zu disagreements",
                       factors ? "yes" : "no", injective ? "yes" : "no",
                       surjective ? "yes" : "no", pairs, bad)};
}

// 9 -------------------------------------------------------------------------

Outcome example_arithmetic()
{
  bool worked =
    gn_mul({1, {1, 0, 0}}, {0, {5, 7, 9}}, 3) == GnElement{1, {8, 9, 5}};
  std::mt19937_64 rng(9);
  auto draw = [&] { return static_cast<std::int64_t>(rng() % 201) - 100; };
  std::size_t law_failures = 0, triples = 0;
  for (std::size_t n : {2u, 3u, 5u})
    for (std::size_t i = 0; i < kGroupTriples; ++i) {
      GnElement g[3];
      for (auto &e : g) {
        e.m = draw();
        for (std::size_t k = 0; k < n; ++k)
          e.x.push_back(draw());
      }
      ++triples;
      auto id = gn_identity(n);
      if (!(gn_mul(gn_mul(g[0], g[1], n), g[2], n) ==
            gn_mul(g[0], gn_mul(g[1], g[2], n), n)) ||
          !(gn_mul(g[0], gn_inv(g[0], n), n) == id) ||
          !(gn_mul(id, g[0], n) == g[0]) || !(gn_mul(g[0], id, n) == g[0]))
        ++law_failures;
    }
  IsoOptions options;
  options.samples = kIsoSamples;
  options.bound = kIsoBound;
  std::string iso;
  bool iso_ok = true;
  for (std::size_t n : {1u, 3u}) {
    auto r = example_iso_spotcheck(n, options);
    iso_ok = iso_ok && r.passed && r.pairs_checked >= kIsoSamples;
    iso += format("; n=%zu %s (%zu pairs%s%s)", n, r.passed ? "pass" : "FAIL",
                  r.pairs_checked, r.candidate ? ", " : "",
                  r.candidate ? to_string(*r.candidate, false).c_str() : "");
    if (!r.passed)
      iso += " " + r.failure;
  }
  return {worked && law_failures == 0 && iso_ok,
          format("worked product %s, %zu triples with %zu law failures",
                 worked ? "exact" : "WRONG", triples, law_failures) +
            iso};
}

// 10 ------------------------------------------------------------------------

Outcome perfectness()
{
  bool lazy = true;
  for (std::size_t n = 1; n <= 3; ++n)
    for (auto const &p : all_permutations(n)) {
      LazyKite kite(std::make_shared<NatChain>(), n, IndexMap::finite(p),
                    IndexMap::finite(p));
      lazy = lazy && sampled_perfect(kite, kPerfectSamples, 11).perfect;
    }
  bool square_not = !check_perfect(standard::boolean_square()).has_value();
  LazyKite kite(std::make_shared<NatChain>(), 2, IndexMap::identity(),
                IndexMap::identity());
  auto state = sampled_designated_state(kite, kStateSamples, 12);
  return {lazy && square_not && state.holds && state.samples == kStateSamples,
          format("lazy N kites perfect: %s; 2^2 perfect: %s; designated "
                 "state on %zu sums: %s",
                 lazy ? "yes" : "no", square_not ? "no" : "yes", state.samples,
                 state.holds ? "holds" : state.failure.c_str())};
}

// 11 ------------------------------------------------------------------------

Outcome states(std::vector<CorpusKite> const &corpus)
{
  auto sq = standard::boolean_square();
  auto found = find_states(sq);
  StateValues first{Rational(0), Rational(0), Rational(1), Rational(1)};
  StateValues second{Rational(0), Rational(1), Rational(0), Rational(1)};
  bool two = found.size() == 2 && found[0] == first && found[1] == second;

  std::size_t kernels = 0, abnormal = 0, pea_count = 0;
  auto check_all = [&](Pea const &p) {
    ++pea_count;
    for (auto const &s : find_states(p)) {
      ++kernels;
      if (!is_state(p, s).is_state() || !oracle::is_normal(p.gpea(), kernel(p, s)))
        ++abnormal;
    }
  };
  check_all(sq);
  check_all(standard::mo2());
  for (std::size_t k = 2; k <= 6; ++k)
    check_all(standard::chain_pea(k));
  for (auto const &f : {"bool2.pea", "c4.pea", "mo2.pea"})
    check_all(oracle::load_pea(f));
  for (auto const &c : corpus)
    if (c.kite.size() <= kDefaultStateCarrier)
      check_all(c.kite.algebra());
  return {two && abnormal == 0,
          format("2^2 has %zu extreme states (exact match: %s); %zu kernels "
                 "over %zu PEAs, %zu not normal",
                 found.size(), two ? "yes" : "no", kernels, pea_count, abnormal)};
}

// 12 ------------------------------------------------------------------------

Outcome determinism()
{
  AuditOptions options;
  options.seed = 42;
  auto first = render_text(audit_directory(KITELAB_FIXTURES, options));
  auto second = render_text(audit_directory(KITELAB_FIXTURES, options));
  return {first == second && !first.empty(),
          format("two in-process reports, %zu bytes each, identical: %s",
                 first.size(), first == second ? "yes" : "no")};
}

} // namespace

int main()
{
  try {
    std::vector<CorpusKite> corpus;
    report(1, well_formed(corpus));
    report(2, negations_match(corpus));
    report(3, symmetry(corpus));
    report(4, rdp_transfer(corpus));
    report(5, constructive_decomposition());
    report(6, ideal_theory(corpus));
    report(7, irreducibility(corpus));
    report(8, subdirect());
    report(9, example_arithmetic());
    report(10, perfectness());
    report(11, states(corpus));
    report(12, determinism());
  } catch (std::exception const &err) {
    std::printf("FAIL acceptance aborted: %s\n", err.what());
    return 2;
  }
  std::printf("%d criteria failed\n", failures);
  return failures == 0 ? 0 : 1;
}
