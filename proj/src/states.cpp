#include "kitelab/states.hpp"

#include <algorithm>
#include <optional>
#include <set>

#include "kitelab/errors.hpp"
#include "kitelab/random.hpp"

namespace kitelab {

StateCheck is_state(Pea const &pea, StateValues const &s)
{
  StateCheck out;
  if (s.size() != pea.size()) {
    out.violation = StateViolation::Size;
    return out;
  }
  for (Elem x = 0; x < pea.size(); ++x)
    if (s[x] < 0 || s[x] > 1) {
      out.violation = StateViolation::Domain;
      out.witness = {x};
      return out;
    }
  if (s[pea.top()] != 1) {
    out.violation = StateViolation::Normalization;
    out.witness = {pea.top()};
    return out;
  }
  for (Elem a = 0; a < pea.size(); ++a)
    for (Elem b = 0; b < pea.size(); ++b)
      if (auto c = pea.add(a, b); c && s[*c] != s[a] + s[b]) {
        out.violation = StateViolation::Additivity;
        out.witness = {a, b, *c};
        return out;
      }
  return out;
}

namespace {

using Row = std::vector<Rational>;

/// Reduced row echelon form in place; returns the pivot column of each
/// remaining row. The last column is the right-hand side.
std::vector<std::size_t> rref(std::vector<Row> &rows, std::size_t vars)
{
  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  for (std::size_t c = 0; c < vars && r < rows.size(); ++c) {
    std::size_t p = r;
    while (p < rows.size() && rows[p][c] == 0)
      ++p;
    if (p == rows.size())
      continue;
    std::swap(rows[p], rows[r]);
    Rational lead = rows[r][c];
    for (auto &v : rows[r])
      v /= lead;
    for (std::size_t k = 0; k < rows.size(); ++k) {
      if (k == r || rows[k][c] == 0)
        continue;
      Rational f = rows[k][c];
      for (std::size_t j = c; j <= vars; ++j)
        rows[k][j] -= f * rows[r][j];
    }
    pivots.push_back(c);
    ++r;
  }
  rows.resize(r);
  return pivots;
}

/// Solves the square system A t = b exactly; nullopt when singular.
std::optional<std::vector<Rational>> solve(std::vector<Row> system,
                                           std::size_t d)
{
  auto pivots = rref(system, d);
  if (pivots.size() != d)
    return std::nullopt;
  std::vector<Rational> t(d);
  for (std::size_t k = 0; k < d; ++k)
    t[pivots[k]] = system[k][d];
  return t;
}

std::size_t binomial_capped(std::size_t n, std::size_t k, std::size_t cap)
{
  std::size_t out = 1;
  for (std::size_t i = 1; i <= k; ++i) {
    out = out * (n - k + i) / i;
    if (out > cap)
      return cap + 1;
  }
  return out;
}

} // namespace

std::vector<StateValues> find_states(Pea const &pea, std::size_t cap)
{
  std::size_t const n = pea.size();
  if (n > cap)
    throw SizeError("carrier of size " + std::to_string(n) +
                    " exceeds the state cap " + std::to_string(cap));

  // Equalities: s(a) + s(b) - s(a+b) = 0 and s(1) = 1.
  std::vector<Row> rows;
  for (Elem a = 0; a < n; ++a)
    for (Elem b = 0; b < n; ++b)
      if (auto c = pea.add(a, b)) {
        Row row(n + 1);
        row[a] += 1;
        row[b] += 1;
        row[*c] -= 1;
        rows.push_back(std::move(row));
      }
  Row unit(n + 1);
  unit[pea.top()] = 1;
  unit[n] = 1;
  rows.push_back(unit);

  auto pivots = rref(rows, n);
  for (auto const &row : rows)
    if (std::all_of(row.begin(), row.begin() + n,
                    [](Rational const &v) { return v == 0; }) &&
        row[n] != 0)
      return {};

  // s = p + M t over the free variables t.
  std::vector<char> is_pivot(n, 0);
  for (auto c : pivots)
    is_pivot[c] = 1;
  std::vector<std::size_t> free;
  for (std::size_t x = 0; x < n; ++x)
    if (!is_pivot[x])
      free.push_back(x);
  std::size_t const d = free.size();

  std::vector<Rational> p(n);
  std::vector<Row> m(n, Row(d));
  for (std::size_t k = 0; k < d; ++k)
    m[free[k]][k] = 1;
  for (std::size_t r = 0; r < pivots.size(); ++r) {
    p[pivots[r]] = rows[r][n];
    for (std::size_t k = 0; k < d; ++k)
      m[pivots[r]][k] = -rows[r][free[k]];
  }

  auto value_at = [&](std::vector<Rational> const &t) {
    StateValues s(n);
    for (std::size_t x = 0; x < n; ++x) {
      s[x] = p[x];
      for (std::size_t k = 0; k < d; ++k)
        s[x] += m[x][k] * t[k];
    }
    return s;
  };
  auto feasible = [](StateValues const &s) {
    return std::all_of(s.begin(), s.end(), [](Rational const &v) {
      return v >= 0 && v <= 1;
    });
  };

  std::set<StateValues> vertices;
  if (d == 0) {
    auto s = value_at({});
    if (feasible(s))
      vertices.insert(s);
    return {vertices.begin(), vertices.end()};
  }

  // Tight constraints M_x t = -p_x or M_x t = 1 - p_x, deduplicated.
  std::set<Row> tight;
  for (std::size_t x = 0; x < n; ++x) {
    if (std::all_of(m[x].begin(), m[x].end(),
                    [](Rational const &v) { return v == 0; }))
      continue;
    for (Rational bound : {Rational(0), Rational(1)}) {
      Row row = m[x];
      row.push_back(bound - p[x]);
      tight.insert(std::move(row));
    }
  }
  std::vector<Row> pool(tight.begin(), tight.end());
  constexpr std::size_t kMaxBases = 2000000;
  if (binomial_capped(pool.size(), d, kMaxBases) > kMaxBases)
    throw SizeError("state space of dimension " + std::to_string(d) +
                    " has too many candidate bases");

  std::vector<std::size_t> pick(d);
  for (std::size_t k = 0; k < d; ++k)
    pick[k] = k;
  while (true) {
    std::vector<Row> system;
    for (auto k : pick)
      system.push_back(pool[k]);
    if (auto t = solve(system, d)) {
      auto s = value_at(*t);
      if (feasible(s))
        vertices.insert(std::move(s));
    }
    // next combination
    std::size_t k = d;
    while (k > 0 && pick[k - 1] == pool.size() - d + k - 1)
      --k;
    if (k == 0)
      break;
    ++pick[k - 1];
    for (std::size_t j = k; j < d; ++j)
      pick[j] = pick[j - 1] + 1;
  }
  return {vertices.begin(), vertices.end()};
}

std::vector<Elem> kernel(Pea const &pea, StateValues const &s)
{
  if (!is_state(pea, s).is_state())
    throw UsageError("kernel requested for a map that is not a state");
  std::vector<Elem> out;
  for (Elem x = 0; x < pea.size(); ++x)
    if (s[x] == 0)
      out.push_back(x);
  return out;
}

std::string to_string(Rational const &q)
{
  return q.str();
}

SampledStateCheck sampled_designated_state(LazyKite const &kite,
                                           std::size_t samples,
                                           std::uint64_t seed, Value bound)
{
  std::mt19937_64 rng(seed);
  auto s = [](LazyElement const &x) { return x.sort == Sort::Upper ? 1 : 0; };
  SampledStateCheck out;
  if (s(kite.one()) != 1) {
    out.holds = false;
    out.failure = "s(1) != 1";
    return out;
  }
  for (std::size_t k = 0; k < samples; ++k) {
    LazyElement x, y;
    switch (k % 3) {
    case 0:
      x = kite.sample(rng, Sort::Lower, bound);
      y = kite.sample(rng, Sort::Lower, bound);
      break;
    case 1:
      x = kite.sample(rng, Sort::Upper, bound);
      y = kite.sample_right_addend(rng, x);
      break;
    default:
      y = kite.sample(rng, Sort::Upper, bound);
      x = kite.sample_left_addend(rng, y);
      break;
    }
    auto sum = kite.add(x, y);
    if (!sum)
      continue;
    ++out.samples;
    if (s(*sum) != s(x) + s(y)) {
      out.holds = false;
      out.failure = "s(" + kite.to_string(x) + " + " + kite.to_string(y) +
                    ") != s(x) + s(y)";
      return out;
    }
  }
  return out;
}

} // namespace kitelab
