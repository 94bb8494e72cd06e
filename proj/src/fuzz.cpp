#include "kitelab/fuzz.hpp"

#include <algorithm>
#include <cctype>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "kitelab/errors.hpp"
#include "kitelab/ideals.hpp"
#include "kitelab/io.hpp"
#include "kitelab/kite.hpp"
#include "kitelab/random.hpp"
#include "kitelab/riesz.hpp"
#include "kitelab/states.hpp"

namespace kitelab {

std::size_t repair_table(PartialTable &t, Elem zero, bool commutative)
{
  std::size_t const n = t.size();
  std::size_t deletions = 0;
  bool changed = true;

  auto erase = [&](Elem a, Elem b) {
    if (a == zero || b == zero || !t.defined(a, b))
      return false;
    t.clear(a, b);
    if (commutative && t.defined(b, a))
      t.clear(b, a);
    ++deletions;
    changed = true;
    return true;
  };

  std::vector<Elem> seen(n);
  std::vector<char> left_witness(n * n), right_witness(n * n);
  while (changed) {
    changed = false;

    for (Elem a = 0; a < n; ++a)
      for (Elem b = 0; b < n; ++b)
        if (t.raw(a, b) == zero)
          erase(a, b);

    // cancellation, rows then columns
    for (Elem a = 0; a < n; ++a) {
      std::fill(seen.begin(), seen.end(), kUndefined);
      for (Elem b = 0; b < n; ++b) {
        Elem v = t.raw(a, b);
        if (v == kUndefined)
          continue;
        if (seen[v] == kUndefined)
          seen[v] = b;
        else if (!erase(a, b))
          erase(a, seen[v]);
      }
      std::fill(seen.begin(), seen.end(), kUndefined);
      for (Elem b = 0; b < n; ++b) {
        Elem v = t.raw(b, a);
        if (v == kUndefined)
          continue;
        if (seen[v] == kUndefined)
          seen[v] = b;
        else if (!erase(b, a))
          erase(seen[v], a);
      }
    }

    for (Elem a = 0; a < n; ++a)
      for (Elem b = 0; b < n; ++b)
        for (Elem c = 0; c < n; ++c) {
          Elem ab = t.raw(a, b), bc = t.raw(b, c);
          Elem lhs = ab == kUndefined ? kUndefined : t.raw(ab, c);
          Elem rhs = bc == kUndefined ? kUndefined : t.raw(a, bc);
          if (lhs == rhs)
            continue;
          if (lhs != kUndefined) {
            if (!erase(ab, c))
              erase(a, b);
          } else if (!erase(a, bc)) {
            erase(b, c);
          }
        }

    std::fill(left_witness.begin(), left_witness.end(), 0);
    std::fill(right_witness.begin(), right_witness.end(), 0);
    for (Elem x = 0; x < n; ++x)
      for (Elem y = 0; y < n; ++y)
        if (Elem s = t.raw(x, y); s != kUndefined) {
          left_witness[s * n + y] = 1;
          right_witness[x * n + s] = 1;
        }
    for (Elem a = 0; a < n; ++a)
      for (Elem b = 0; b < n; ++b)
        if (Elem s = t.raw(a, b); s != kUndefined &&
            (!left_witness[s * n + a] || !right_witness[b * n + s]))
          erase(a, b);
  }
  return deletions;
}

namespace {

bool chance(std::mt19937_64 &rng, double p)
{
  return static_cast<double>(rng() >> 11) * 0x1.0p-53 < p;
}

std::optional<Gpea> validated(PartialTable table)
{
  if (!verify_gpea_axioms(table, 0).passed())
    return std::nullopt;
  return Gpea::make(std::move(table), 0);
}

std::optional<Gpea> random_gpea_counted(std::mt19937_64 &rng,
                                        std::size_t size, double density,
                                        bool commutative,
                                        std::size_t &deletions)
{
  if (size == 0)
    throw UsageError("carrier size must be positive");
  std::vector<std::int64_t> weight(size, 0);
  for (std::size_t x = 1; x < size; ++x)
    weight[x] = draw(rng, 1, std::max<std::int64_t>(1, size - 1));

  PartialTable t(size);
  for (Elem a = 0; a < size; ++a) {
    t.set(a, 0, a);
    t.set(0, a, a);
  }
  for (Elem a = 1; a < size; ++a)
    for (Elem b = commutative ? a : 1; b < size; ++b) {
      if (!chance(rng, density))
        continue;
      std::vector<Elem> targets;
      for (Elem c = 1; c < size; ++c)
        if (weight[c] == weight[a] + weight[b])
          targets.push_back(c);
      if (targets.empty())
        continue;
      Elem c = targets[draw(rng, 0, targets.size() - 1)];
      t.set(a, b, c);
      if (commutative)
        t.set(b, a, c);
    }
  deletions += repair_table(t, 0, commutative);
  return validated(std::move(t));
}

std::vector<ExplicitKite> kites_for(Gpea const &e)
{
  std::vector<ExplicitKite> out;
  out.push_back(unitization(e));
  if (e.size() <= 3) {
    auto id = Permutation::identity(2);
    out.push_back(build_kite_explicit(e, id, id));
    if (is_total(e))
      out.push_back(build_kite_explicit(e, id, permutation_from_spec("swap", 2)));
  }
  return out;
}

std::string describe_kite(ExplicitKite const &k)
{
  return "kite(|I|=" + std::to_string(k.arity()) + ", lambda=" +
         to_string(k.lambda()) + ", rho=" + to_string(k.rho()) + ")";
}

std::string elems(std::vector<Elem> const &xs)
{
  std::string out = "(";
  for (std::size_t i = 0; i < xs.size(); ++i)
    out += (i ? "," : "") + std::to_string(xs[i]);
  return out + ")";
}

PropertyOutcome kite_axioms(Gpea const &e)
{
  try {
    for (auto const &k : kites_for(e)) {
      auto report = verify_pea_axioms(k.algebra().gpea(), k.algebra().top());
      if (!report.passed())
        return PropertyOutcome::failed(describe_kite(k) + " fails " +
                                       std::string(to_string(
                                         report.violations[0].axiom)));
    }
  } catch (AxiomError const &err) {
    return PropertyOutcome::failed(err.what());
  }
  return PropertyOutcome::held();
}

PropertyOutcome kite_negations(Gpea const &e)
{
  for (auto const &k : kites_for(e)) {
    auto const &p = k.algebra();
    for (Elem x = 0; x < p.size(); ++x) {
      auto [minus, tilde] = k.neg(k.element(x));
      if (k.index_of(minus) != p.minus(x) || k.index_of(tilde) != p.tilde(x))
        return PropertyOutcome::failed(describe_kite(k) + " element " +
                                       std::to_string(x));
    }
  }
  return PropertyOutcome::held();
}

PropertyOutcome kite_order(Gpea const &e)
{
  for (auto const &k : kites_for(e)) {
    auto const &p = k.algebra();
    for (Elem x = 0; x < p.size(); ++x)
      for (Elem y = 0; y < p.size(); ++y)
        if (k.leq(k.element(x), k.element(y)) != p.leq(x, y))
          return PropertyOutcome::failed(describe_kite(k) + " pair " +
                                         elems({x, y}));
  }
  return PropertyOutcome::held();
}

PropertyOutcome kite_symmetric(Gpea const &e)
{
  for (auto const &k : kites_for(e))
    if (k.lambda() == k.rho())
      if (auto w = asymmetry_witness(k.algebra()))
        return PropertyOutcome::failed(describe_kite(k) + " element " +
                                       std::to_string(*w));
  return PropertyOutcome::held();
}

PropertyOutcome kite_asymmetric(Gpea const &e)
{
  if (e.is_trivial())
    return PropertyOutcome::skipped("trivial base");
  bool any = false;
  for (auto const &k : kites_for(e))
    if (!(k.lambda() == k.rho())) {
      any = true;
      if (is_symmetric(k.algebra()))
        return PropertyOutcome::failed(describe_kite(k) + " is symmetric");
    }
  return any ? PropertyOutcome::held()
             : PropertyOutcome::skipped("no kite with lambda != rho");
}

/// kite satisfies p => base satisfies p
PropertyOutcome riesz_transfer(Gpea const &e, RieszProperty p)
{
  bool base = check_riesz(e, p).holds;
  for (auto const &k : kites_for(e))
    if (check_riesz(k.algebra().gpea(), p).holds && !base)
      return PropertyOutcome::failed(describe_kite(k) + " has " +
                                     std::string(to_string(p)) +
                                     ", base does not");
  return PropertyOutcome::held();
}

/// base satisfies p => unitization satisfies p
PropertyOutcome riesz_lift(Gpea const &e, RieszProperty p)
{
  if (!check_riesz(e, p).holds)
    return PropertyOutcome::skipped("base fails " + std::string(to_string(p)));
  auto k = unitization(e);
  if (!check_riesz(k.algebra().gpea(), p).holds)
    return PropertyOutcome::failed("unitization fails " +
                                   std::string(to_string(p)));
  return PropertyOutcome::held();
}

PropertyOutcome lower_ideals(Gpea const &e)
{
  auto normal = enumerate_ideals(e, true);
  for (auto const &k : kites_for(e)) {
    for (auto const &h : normal) {
      auto r = kite_lower_ideal(k, h);
      if (!r.is_ideal || !r.is_normal)
        return PropertyOutcome::failed(describe_kite(k) + " H=" +
                                       to_string(h, e));
      if (r.is_maximal && !*r.is_maximal)
        return PropertyOutcome::failed(describe_kite(k) +
                                       " lower block not maximal");
    }
  }
  return PropertyOutcome::held();
}

PropertyOutcome kernels_normal(Gpea const &e)
{
  auto k = unitization(e);
  auto const &p = k.algebra();
  auto states = find_states(p);
  if (states.empty())
    return PropertyOutcome::skipped("no state");
  for (auto const &s : states) {
    auto members = kernel(p, s);
    if (!is_ideal(p.gpea(), members) || !is_normal(p.gpea(), Ideal{members}))
      return PropertyOutcome::failed("kernel " + elems(members));
  }
  return PropertyOutcome::held();
}

PropertyOutcome all_ideals_normal(Gpea const &e)
{
  for (auto const &i : enumerate_ideals(e))
    if (!is_normal(e, i))
      return PropertyOutcome::failed("ideal " + to_string(i, e));
  return PropertyOutcome::held();
}

PropertyOutcome normal_ideal_congruence(Gpea const &e)
{
  for (auto const &i : enumerate_ideals(e, true))
    if (!congruence_from_normal_ideal(e, i).is_congruence)
      return PropertyOutcome::failed("ideal " + to_string(i, e));
  return PropertyOutcome::held();
}

PropertyOutcome order_witnesses(Gpea const &e)
{
  try {
    derive_order(e);
  } catch (StructuralError const &err) {
    return PropertyOutcome::failed(err.what());
  }
  return PropertyOutcome::held();
}

std::string lowercase(RieszProperty p)
{
  std::string out(to_string(p));
  for (auto &ch : out)
    ch = static_cast<char>(std::tolower(static_cast<unsigned char>(ch)));
  return out;
}

std::vector<Property> make_registry()
{
  std::vector<Property> out = {
    {"order-witnesses-agree", true, order_witnesses},
    {"kite-is-pea", true, kite_axioms},
    {"kite-negation-closed-form", true, kite_negations},
    {"kite-order-closed-form", true, kite_order},
    {"kite-symmetric-when-lambda-equals-rho", true, kite_symmetric},
    {"kite-asymmetric-when-lambda-differs", false, kite_asymmetric},
  };
  for (auto p : {RieszProperty::RDP0, RieszProperty::RDP, RieszProperty::RDP1,
                 RieszProperty::RDP2})
    out.push_back({"riesz-transfer-" + lowercase(p), true,
                   [p](Gpea const &e) { return riesz_transfer(e, p); }});
  out.push_back({"riesz-transfer-rip", false, [](Gpea const &e) {
                   return riesz_transfer(e, RieszProperty::RIP);
                 }});
  for (auto p : {RieszProperty::RIP, RieszProperty::RDP0, RieszProperty::RDP,
                 RieszProperty::RDP1, RieszProperty::RDP2})
    out.push_back({"riesz-lift-nontotal-" + lowercase(p), false,
                   [p](Gpea const &e) { return riesz_lift(e, p); }});
  out.push_back({"lower-ideals-normal", true, lower_ideals});
  out.push_back({"state-kernels-normal", true, kernels_normal});
  out.push_back({"all-ideals-normal", false, all_ideals_normal});
  out.push_back({"normal-ideal-congruence", false, normal_ideal_congruence});
  return out;
}

PropertyOutcome run_guarded(Property const &p, Gpea const &e)
{
  try {
    return p.check(e);
  } catch (SizeError const &err) {
    return PropertyOutcome::skipped(err.what());
  } catch (PreconditionError const &err) {
    return PropertyOutcome::skipped(err.what());
  } catch (Error const &err) {
    return PropertyOutcome::failed(std::string("error: ") + err.what());
  }
}

bool still_fails(Property const &p, Gpea const &e)
{
  return run_guarded(p, e).status == PropertyOutcome::Status::Failed;
}

std::optional<Gpea> without_element(Gpea const &e, Elem x, bool commutative)
{
  std::size_t const n = e.size();
  std::vector<Elem> index(n, kUndefined);
  Elem next = 0;
  for (Elem a = 0; a < n; ++a)
    if (a != x)
      index[a] = next++;
  PartialTable t(n - 1);
  for (Elem a = 0; a < n; ++a)
    for (Elem b = 0; b < n; ++b) {
      Elem c = e.table().raw(a, b);
      if (a == x || b == x || c == x || c == kUndefined)
        continue;
      t.set(index[a], index[b], index[c]);
    }
  Elem zero = index[e.zero()];
  repair_table(t, zero, commutative);
  if (!verify_gpea_axioms(t, zero).passed())
    return std::nullopt;
  return Gpea::make(std::move(t), zero);
}

std::optional<Gpea> without_entry(Gpea const &e, Elem a, Elem b,
                                  bool commutative)
{
  PartialTable t = e.table();
  t.clear(a, b);
  if (commutative)
    t.clear(b, a);
  repair_table(t, e.zero(), commutative);
  if (!verify_gpea_axioms(t, e.zero()).passed())
    return std::nullopt;
  return Gpea::make(std::move(t), e.zero());
}

std::string slug(std::string const &name, std::uint64_t seed, std::size_t k)
{
  return name + "-seed" + std::to_string(seed) + "-" + std::to_string(k) +
         ".gpea";
}

} // namespace

std::optional<Gpea> random_gpea(std::mt19937_64 &rng, std::size_t size,
                                double density, bool commutative)
{
  std::size_t deletions = 0;
  return random_gpea_counted(rng, size, density, commutative, deletions);
}

std::vector<Property> const &property_registry()
{
  static std::vector<Property> const registry = make_registry();
  return registry;
}

Gpea shrink(Gpea const &failing, Property const &property)
{
  bool const commutative = is_commutative(failing);
  Gpea current = failing;
  bool progress = true;
  while (progress) {
    progress = false;
    for (Elem x = 0; x < current.size() && !progress; ++x) {
      if (x == current.zero())
        continue;
      auto smaller = without_element(current, x, commutative);
      if (smaller && still_fails(property, *smaller)) {
        current = *smaller;
        progress = true;
      }
    }
    for (Elem a = 0; a < current.size() && !progress; ++a)
      for (Elem b = 0; b < current.size() && !progress; ++b) {
        if (a == current.zero() || b == current.zero() ||
            !current.defined(a, b))
          continue;
        auto smaller = without_entry(current, a, b, commutative);
        if (smaller && still_fails(property, *smaller)) {
          current = *smaller;
          progress = true;
        }
      }
  }
  return current;
}

std::size_t FuzzResult::asserted_failures() const
{
  std::size_t out = 0;
  for (auto const &t : tallies)
    if (t.asserted)
      out += t.failed;
  return out;
}

std::vector<Gpea> fuzz_corpus(FuzzConfig const &config, std::size_t *attempts,
                              std::size_t *discarded, std::size_t *deletions)
{
  if (config.min_size == 0 || config.min_size > config.max_size)
    throw UsageError("invalid size range");
  if (config.density < 0 || config.density > 1)
    throw UsageError("density must lie in [0, 1]");
  std::mt19937_64 rng(config.seed);
  std::vector<Gpea> corpus;
  std::size_t tries = 0, dropped = 0, deleted = 0;
  std::size_t const limit = 100 * std::max<std::size_t>(config.count, 1);
  while (corpus.size() < config.count && tries < limit) {
    ++tries;
    auto size = static_cast<std::size_t>(
      draw(rng, config.min_size, config.max_size));
    auto e = random_gpea_counted(rng, size, config.density, config.commutative,
                                 deleted);
    if (e)
      corpus.push_back(std::move(*e));
    else
      ++dropped;
  }
  if (attempts)
    *attempts = tries;
  if (discarded)
    *discarded = dropped;
  if (deletions)
    *deletions = deleted;
  return corpus;
}

FuzzResult fuzz(FuzzConfig const &config)
{
  FuzzResult result;
  result.config = config;
  result.corpus = fuzz_corpus(config, &result.attempts, &result.discarded,
                              &result.deletions);

  auto const &registry = property_registry();
  for (auto const &p : registry)
    result.tallies.push_back({p.name, p.asserted, 0, 0, 0, {}});

  for (std::size_t i = 0; i < result.corpus.size(); ++i) {
    auto const &e = result.corpus[i];
    for (std::size_t k = 0; k < registry.size(); ++k) {
      auto outcome = run_guarded(registry[k], e);
      auto &tally = result.tallies[k];
      switch (outcome.status) {
      case PropertyOutcome::Status::Held:
        ++tally.held;
        break;
      case PropertyOutcome::Status::Skipped:
        ++tally.skipped;
        break;
      case PropertyOutcome::Status::Failed:
        if (tally.failed++ == 0) {
          tally.first_failure =
            "instance " + std::to_string(i) + ": " + outcome.detail;
          if (registry[k].asserted || config.archive_logged) {
            Gpea small = config.shrink ? shrink(e, registry[k]) : e;
            result.archived.push_back({registry[k].name,
                                       slug(registry[k].name, config.seed, i),
                                       emit_algebra(small)});
          }
        }
        break;
      }
    }
  }
  return result;
}

std::vector<std::string> write_archive(FuzzResult const &result,
                                       std::string const &directory)
{
  std::filesystem::create_directories(directory);
  std::vector<std::string> paths;
  for (auto const &a : result.archived) {
    auto path = std::filesystem::path(directory) / a.file_name;
    std::ofstream out(path);
    if (!out)
      throw UsageError("cannot write " + path.string());
    out << "# counterexample to " << a.property << '\n' << a.text;
    paths.push_back(path.string());
  }
  return paths;
}

} // namespace kitelab
