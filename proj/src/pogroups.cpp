#include "kitelab/pogroups.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <sstream>
#include <tuple>

#include "kitelab/errors.hpp"
#include "kitelab/random.hpp"

namespace kitelab {

namespace {

std::int64_t mod(std::int64_t a, std::size_t n)
{
  auto r = a % static_cast<std::int64_t>(n);
  return r < 0 ? r + static_cast<std::int64_t>(n) : r;
}

void check_length(GnElement const &a, std::size_t n)
{
  if (a.x.size() != n)
    throw UsageError("element has " + std::to_string(a.x.size()) +
                     " coordinates, expected " + std::to_string(n));
}

} // namespace

// ------------------------------------------------------------------- G_n

GnElement gn_identity(std::size_t n)
{
  return GnElement{0, std::vector<std::int64_t>(n, 0)};
}

GnElement gn_unit(std::size_t n)
{
  return GnElement{1, std::vector<std::int64_t>(n, 0)};
}

GnElement gn_mul(GnElement const &a, GnElement const &b, std::size_t n)
{
  check_length(a, n);
  check_length(b, n);
  GnElement out{a.m + b.m, std::vector<std::int64_t>(n)};
  for (std::size_t k = 0; k < n; ++k)
    out.x[k] = a.x[k] + b.x[mod(static_cast<std::int64_t>(k) + a.m, n)];
  return out;
}

GnElement gn_inv(GnElement const &a, std::size_t n)
{
  check_length(a, n);
  GnElement out{-a.m, std::vector<std::int64_t>(n)};
  for (std::size_t k = 0; k < n; ++k)
    out.x[k] = -a.x[mod(static_cast<std::int64_t>(k) - a.m, n)];
  return out;
}

bool gn_leq(GnElement const &a, GnElement const &b, std::size_t n)
{
  check_length(a, n);
  check_length(b, n);
  if (a.m != b.m)
    return a.m < b.m;
  for (std::size_t k = 0; k < n; ++k)
    if (a.x[k] > b.x[k])
      return false;
  return true;
}

bool in_interval(GnElement const &a, GnElement const &u, std::size_t n)
{
  return gn_leq(gn_identity(n), a, n) && gn_leq(a, u, n);
}

std::string to_string(GnElement const &a)
{
  std::ostringstream out;
  out << '(' << a.m << ",(";
  for (std::size_t k = 0; k < a.x.size(); ++k)
    out << (k ? "," : "") << a.x[k];
  out << "))";
  return out.str();
}

// ------------------------------------------------------------------ W(Z)

WreathElement wreath_identity() { return {}; }

WreathElement wreath_unit() { return WreathElement{1, {}}; }

WreathElement wreath_mul(WreathElement const &a, WreathElement const &b)
{
  WreathElement out{a.m + b.m, a.x};
  for (auto const &[j, v] : b.x) {
    // y_j lands on i = j - m1
    auto i = j - a.m;
    auto s = out.x[i] + v;
    if (s == 0)
      out.x.erase(i);
    else
      out.x[i] = s;
  }
  return out;
}

WreathElement wreath_inv(WreathElement const &a)
{
  WreathElement out{-a.m, {}};
  for (auto const &[j, v] : a.x)
    out.x[j + a.m] = -v;
  return out;
}

bool wreath_leq(WreathElement const &a, WreathElement const &b)
{
  if (a.m != b.m)
    return a.m < b.m;
  std::set<std::int64_t> where;
  for (auto const &kv : a.x)
    where.insert(kv.first);
  for (auto const &kv : b.x)
    where.insert(kv.first);
  auto at = [](WreathElement const &e, std::int64_t i) {
    auto it = e.x.find(i);
    return it == e.x.end() ? std::int64_t{0} : it->second;
  };
  return std::all_of(where.begin(), where.end(),
                     [&](std::int64_t i) { return at(a, i) <= at(b, i); });
}

bool wreath_in_interval(WreathElement const &a, WreathElement const &u)
{
  return wreath_leq(wreath_identity(), a) && wreath_leq(a, u);
}

std::string to_string(WreathElement const &a)
{
  std::ostringstream out;
  out << '(' << a.m << ",{";
  bool first = true;
  for (auto const &[i, v] : a.x) {
    out << (first ? "" : ",") << i << ':' << v;
    first = false;
  }
  out << "})";
  return out.str();
}

std::string to_string(IsoCandidate const &c, bool wreath)
{
  std::ostringstream out;
  out << (c.convention == UpperConvention::UnitTimesInverse
            ? "U(a) -> u * (0, a o pi)^-1"
            : "U(a) -> (0, a o pi)^-1 * u");
  if (wreath) {
    out << ", pi(i) = i" << (c.shift < 0 ? " - " : " + ")
        << (c.shift < 0 ? -c.shift : c.shift);
  } else {
    out << ", pi = [";
    for (std::size_t k = 0; k < c.pi.size(); ++k)
      out << (k ? " " : "") << c.pi[k];
    out << ']';
  }
  return out.str();
}

// ------------------------------------------------------------- spotcheck

namespace {

struct GnModel
{
  std::size_t n;
  using G = GnElement;

  G unit() const { return gn_unit(n); }
  G mul(G const &a, G const &b) const { return gn_mul(a, b, n); }
  G inv(G const &a) const { return gn_inv(a, n); }
  bool in_gamma(G const &a) const { return in_interval(a, unit(), n); }
  std::string show(G const &a) const { return to_string(a); }

  G lower(LazyKite const &k, LazyElement const &x) const
  {
    G out = gn_identity(n);
    for (std::size_t i = 0; i < n; ++i)
      out.x[i] = k.at(x, static_cast<std::int64_t>(i));
    return out;
  }

  // (0, a o pi)
  G pulled(LazyKite const &k, LazyElement const &x, IsoCandidate const &c) const
  {
    G out = gn_identity(n);
    for (std::size_t i = 0; i < n; ++i)
      out.x[i] = k.at(x, c.pi[i]);
    return out;
  }

  std::vector<IsoCandidate> candidates() const
  {
    std::vector<IsoCandidate> out;
    for (auto conv :
         {UpperConvention::UnitTimesInverse, UpperConvention::InverseTimesUnit}) {
      std::vector<std::uint32_t> pi(n);
      std::iota(pi.begin(), pi.end(), 0u);
      do
        out.push_back(IsoCandidate{pi, 0, conv});
      while (std::next_permutation(pi.begin(), pi.end()));
    }
    return out;
  }

  std::vector<std::int64_t> box_indices() const
  {
    std::vector<std::int64_t> out(n);
    std::iota(out.begin(), out.end(), std::int64_t{0});
    return out;
  }

  G vector_element(std::int64_t m, std::vector<std::int64_t> const &idx,
                   std::vector<std::int64_t> const &v) const
  {
    G out{m, std::vector<std::int64_t>(n, 0)};
    for (std::size_t k = 0; k < idx.size(); ++k)
      out.x[idx[k]] = v[k];
    return out;
  }

  static bool less(G const &a, G const &b)
  {
    return std::tie(a.m, a.x) < std::tie(b.m, b.x);
  }
};

struct WreathModel
{
  using G = WreathElement;

  G unit() const { return wreath_unit(); }
  G mul(G const &a, G const &b) const { return wreath_mul(a, b); }
  G inv(G const &a) const { return wreath_inv(a); }
  bool in_gamma(G const &a) const { return wreath_in_interval(a, unit()); }
  std::string show(G const &a) const { return to_string(a); }

  G lower(LazyKite const &, LazyElement const &x) const
  {
    return G{0, {x.coords.begin(), x.coords.end()}};
  }

  // (0, a o pi) with pi(i) = i + shift
  G pulled(LazyKite const &, LazyElement const &x, IsoCandidate const &c) const
  {
    G out;
    for (auto const &[i, v] : x.coords)
      out.x[i - c.shift] = v;
    return out;
  }

  std::vector<IsoCandidate> candidates() const
  {
    std::vector<IsoCandidate> out;
    for (auto conv :
         {UpperConvention::UnitTimesInverse, UpperConvention::InverseTimesUnit})
      for (std::int64_t s : {0, -1, 1, -2, 2})
        out.push_back(IsoCandidate{{}, s, conv});
    return out;
  }

  std::vector<std::int64_t> box_indices() const { return {-1, 0, 1}; }

  G vector_element(std::int64_t m, std::vector<std::int64_t> const &idx,
                   std::vector<std::int64_t> const &v) const
  {
    G out{m, {}};
    for (std::size_t k = 0; k < idx.size(); ++k)
      if (v[k] != 0)
        out.x[idx[k]] = v[k];
    return out;
  }

  static bool less(G const &a, G const &b)
  {
    return std::tie(a.m, a.x) < std::tie(b.m, b.x);
  }
};

template <class Model>
class Spotcheck
{
public:
  using G = typename Model::G;

  Spotcheck(Model model, LazyKite kite, IsoOptions options)
    : model_(std::move(model)), kite_(std::move(kite)),
      options_(std::move(options))
  {}

  IsoReport run()
  {
    IsoReport report;
    report.seed = options_.seed;

    std::vector<IsoCandidate> pool;
    if (options_.forced)
      pool.push_back(*options_.forced);
    else
      pool = model_.candidates();

    for (auto const &c : pool) {
      ++report.candidates_tried;
      std::mt19937_64 rng(options_.seed);
      std::size_t checked = 0, defined = 0;
      std::string failure =
        sweep(c, rng, options_.pilot, checked, defined);
      if (failure.empty()) {
        report.candidate = c;
        break;
      }
      if (options_.forced)
        report.failure = "forced candidate fails: " + failure;
    }
    if (!report.candidate) {
      if (report.failure.empty())
        report.failure = "no candidate among " +
                         std::to_string(report.candidates_tried) +
                         " yields a homomorphism on the pilot sample";
      return report;
    }

    std::mt19937_64 rng(options_.seed + 1);
    report.failure = sweep(*report.candidate, rng, options_.samples,
                           report.pairs_checked, report.definedness_checked);
    if (!report.failure.empty())
      return report;

    report.bijective_on_box = box_check(*report.candidate, report);
    report.passed = report.bijective_on_box;
    return report;
  }

private:
  G phi(LazyElement const &x, IsoCandidate const &c) const
  {
    if (x.sort == Sort::Lower)
      return model_.lower(kite_, x);
    G b = model_.inv(model_.pulled(kite_, x, c));
    return c.convention == UpperConvention::UnitTimesInverse
             ? model_.mul(model_.unit(), b)
             : model_.mul(b, model_.unit());
  }

  std::string check_pair(LazyElement const &x, LazyElement const &y,
                         IsoCandidate const &c) const
  {
    G px = phi(x, c), py = phi(y, c);
    if (!model_.in_gamma(px))
      return "phi(" + kite_.to_string(x) + ") = " + model_.show(px) +
             " leaves the interval";
    auto s = kite_.add(x, y);
    G p = model_.mul(px, py);
    bool inside = model_.in_gamma(p);
    if (s.has_value() != inside)
      return "definedness differs for " + kite_.to_string(x) + " + " +
             kite_.to_string(y) + ": kite " + (s ? "defined" : "undefined") +
             ", product " + model_.show(p);
    if (s && !(phi(*s, c) == p))
      return "phi(" + kite_.to_string(x) + " + " + kite_.to_string(y) +
             ") = " + model_.show(phi(*s, c)) + " but the product is " +
             model_.show(p);
    return {};
  }

  std::pair<LazyElement, LazyElement> defined_pair(std::mt19937_64 &rng) const
  {
    auto const b = options_.bound;
    switch (draw(rng, 0, 2)) {
    case 0:
      return {kite_.sample(rng, Sort::Lower, b),
              kite_.sample(rng, Sort::Lower, b)};
    case 1: {
      auto u = kite_.sample(rng, Sort::Upper, b);
      return {u, kite_.sample_right_addend(rng, u)};
    }
    default: {
      auto u = kite_.sample(rng, Sort::Upper, b);
      return {kite_.sample_left_addend(rng, u), u};
    }
    }
  }

  std::pair<LazyElement, LazyElement> any_pair(std::mt19937_64 &rng) const
  {
    auto const b = options_.bound;
    auto sx = coin(rng) ? Sort::Upper : Sort::Lower;
    auto sy = coin(rng) ? Sort::Upper : Sort::Lower;
    return {kite_.sample(rng, sx, b), kite_.sample(rng, sy, b)};
  }

  std::string sweep(IsoCandidate const &c, std::mt19937_64 &rng,
                    std::size_t count, std::size_t &checked,
                    std::size_t &defined) const
  {
    for (std::size_t s = 0; s < count; ++s) {
      auto [x, y] = defined_pair(rng);
      if (!kite_.add(x, y))
        return "sampler produced an undefined pair " + kite_.to_string(x) +
               " + " + kite_.to_string(y);
      if (auto f = check_pair(x, y, c); !f.empty())
        return f;
      ++checked;
      auto [p, q] = any_pair(rng);
      if (auto f = check_pair(p, q, c); !f.empty())
        return f;
      ++defined;
    }
    return {};
  }

  /// Every coordinate vector with entries in [0, box] on the box indices.
  std::vector<std::vector<std::int64_t>> vectors() const
  {
    auto idx = model_.box_indices();
    std::vector<std::vector<std::int64_t>> out;
    std::vector<std::int64_t> v(idx.size(), 0);
    while (true) {
      out.push_back(v);
      std::size_t p = 0;
      while (p < v.size() && ++v[p] > options_.box)
        v[p++] = 0;
      if (p == v.size())
        break;
    }
    return out;
  }

  bool box_check(IsoCandidate const &c, IsoReport &report) const
  {
    auto idx = model_.box_indices();
    auto less = [](G const &a, G const &b) { return Model::less(a, b); };
    std::set<G, decltype(less)> images(less), target(less);
    std::size_t count = 0;
    for (auto const &v : vectors()) {
      std::map<std::int64_t, Value> coords;
      std::vector<std::int64_t> neg(v.size());
      for (std::size_t k = 0; k < v.size(); ++k) {
        coords[idx[k]] = v[k];
        neg[k] = -v[k];
      }
      for (Sort sort : {Sort::Lower, Sort::Upper}) {
        images.insert(phi(kite_.make(sort, coords), c));
        ++count;
      }
      target.insert(model_.vector_element(0, idx, v));
      target.insert(model_.vector_element(1, idx, neg));
    }
    report.box_elements = count;
    if (images.size() != count) {
      report.failure = "phi is not injective on the coordinate box";
      return false;
    }
    if (!std::equal(images.begin(), images.end(), target.begin(), target.end(),
                    [](G const &a, G const &b) { return a == b; })) {
      report.failure = "phi does not map the coordinate box onto the "
                       "matching part of the interval";
      return false;
    }
    return true;
  }

  Model model_;
  LazyKite kite_;
  IsoOptions options_;
};

} // namespace

IsoReport example_iso_spotcheck(std::size_t n, IsoOptions const &options)
{
  if (n == 0)
    throw UsageError("n must be positive");
  LazyKite kite(std::make_shared<NatChain>(), n,
                IndexMap::identity(), IndexMap::finite(Permutation::cycle(n)));
  return Spotcheck<GnModel>(GnModel{n}, std::move(kite), options).run();
}

IsoReport wreath_iso_spotcheck(IsoOptions const &options)
{
  LazyKite kite(std::make_shared<NatChain>(), std::nullopt,
                IndexMap::identity(), IndexMap::shift(-1));
  return Spotcheck<WreathModel>(WreathModel{}, std::move(kite), options).run();
}

} // namespace kitelab
