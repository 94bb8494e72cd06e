#include "kitelab/lazy.hpp"

#include <algorithm>
#include <set>
#include <sstream>

#include "kitelab/errors.hpp"
#include "kitelab/random.hpp"
#include "kitelab/riesz.hpp"

namespace kitelab {

// ---------------------------------------------------------------- NatChain

std::optional<Value> NatChain::add(Value a, Value b) const
{
  Value out = 0;
  if (__builtin_add_overflow(a, b, &out))
    throw SizeError("natural number addition overflows");
  return out;
}

std::optional<Value> NatChain::left_diff(Value b, Value a) const
{
  if (a > b)
    return std::nullopt;
  return b - a;
}

std::optional<Value> NatChain::right_diff(Value a, Value b) const
{
  if (a > b)
    return std::nullopt;
  return b - a;
}

std::optional<Value> NatChain::upper_bound(Value a, Value b) const
{
  return std::max(a, b);
}

std::optional<DecompositionTable<Value>>
NatChain::decompose(Value a1, Value a2, Value b1, Value b2) const
{
  if (a1 + a2 != b1 + b2)
    return std::nullopt;
  Value c11 = std::min(a1, b1);
  Value c12 = a1 - c11;
  Value c21 = b1 - c11;
  Value c22 = a2 - c21;
  return DecompositionTable<Value>{c11, c12, c21, c22};
}

Value NatChain::sample(std::mt19937_64 &rng, Value bound) const
{
  return draw(rng, 0, bound);
}

Value NatChain::sample_below(std::mt19937_64 &rng, Value a) const
{
  return draw(rng, 0, a);
}

// -------------------------------------------------------------- FiniteBase

FiniteBase::FiniteBase(Gpea gpea)
  : gpea_(std::move(gpea)),
    total_(kitelab::is_total(gpea_)),
    weakly_commutative_(kitelab::is_weakly_commutative(gpea_))
{}

bool FiniteBase::contains(Value a) const
{
  return a >= 0 && static_cast<std::size_t>(a) < gpea_.size();
}

std::optional<Value> FiniteBase::add(Value a, Value b) const
{
  auto s = gpea_.add(static_cast<Elem>(a), static_cast<Elem>(b));
  if (!s)
    return std::nullopt;
  return *s;
}

bool FiniteBase::leq(Value a, Value b) const
{
  return gpea_.leq(static_cast<Elem>(a), static_cast<Elem>(b));
}

std::optional<Value> FiniteBase::left_diff(Value b, Value a) const
{
  if (!leq(a, b))
    return std::nullopt;
  return gpea_.left_diff(static_cast<Elem>(b), static_cast<Elem>(a));
}

std::optional<Value> FiniteBase::right_diff(Value a, Value b) const
{
  if (!leq(a, b))
    return std::nullopt;
  return gpea_.right_diff(static_cast<Elem>(a), static_cast<Elem>(b));
}

bool FiniteBase::is_infinitesimal(Value a) const
{
  std::vector<char> seen(gpea_.size(), 0);
  Elem x = static_cast<Elem>(a);
  Elem multiple = x;
  while (!seen[multiple]) {
    seen[multiple] = 1;
    auto next = gpea_.add(multiple, x);
    if (!next)
      return false;
    multiple = *next;
  }
  return true;
}

std::optional<Value> FiniteBase::upper_bound(Value a, Value b) const
{
  std::vector<Elem> bounds;
  for (Elem c = 0; c < gpea_.size(); ++c)
    if (leq(a, c) && leq(b, c))
      bounds.push_back(c);
  if (bounds.empty())
    return std::nullopt;
  for (Elem c : bounds)
    if (std::all_of(bounds.begin(), bounds.end(),
                    [&](Elem d) { return gpea_.leq(c, d); }))
      return c;
  return bounds.front();
}

std::optional<DecompositionTable<Value>>
FiniteBase::decompose(Value a1, Value a2, Value b1, Value b2) const
{
  auto t = find_decomposition(gpea_, static_cast<Elem>(a1),
                              static_cast<Elem>(a2), static_cast<Elem>(b1),
                              static_cast<Elem>(b2));
  if (!t)
    return std::nullopt;
  return DecompositionTable<Value>{t->c11, t->c12, t->c21, t->c22};
}

Value FiniteBase::sample(std::mt19937_64 &rng, Value) const
{
  return draw(rng, 0, static_cast<Value>(gpea_.size()) - 1);
}

Value FiniteBase::sample_below(std::mt19937_64 &rng, Value a) const
{
  auto const &down = gpea_.downset(static_cast<Elem>(a));
  return down[static_cast<std::size_t>(
    draw(rng, 0, static_cast<Value>(down.size()) - 1))];
}

// ---------------------------------------------------------------- IndexMap

IndexMap IndexMap::shift(std::int64_t k)
{
  IndexMap out;
  out.shift_ = k;
  return out;
}

IndexMap IndexMap::finite(Permutation const &perm)
{
  IndexMap out;
  for (std::uint32_t j = 0; j < perm.size(); ++j)
    if (perm(j) != j) {
      out.moved_[j] = perm(j);
      out.moved_inverse_[perm(j)] = j;
    }
  return out;
}

IndexMap IndexMap::cycles(std::vector<std::vector<std::int64_t>> const &cycles)
{
  IndexMap out;
  std::set<std::int64_t> used;
  for (auto const &c : cycles) {
    for (auto i : c)
      if (!used.insert(i).second)
        throw StructuralError("index " + std::to_string(i) +
                              " appears twice in cycle list");
    if (c.size() < 2)
      continue;
    for (std::size_t k = 0; k < c.size(); ++k) {
      auto from = c[k];
      auto to = c[(k + 1) % c.size()];
      out.moved_[from] = to;
      out.moved_inverse_[to] = from;
    }
  }
  return out;
}

std::int64_t IndexMap::operator()(std::int64_t i) const
{
  auto it = moved_.find(i);
  return it != moved_.end() ? it->second : i + shift_;
}

std::int64_t IndexMap::inverse(std::int64_t i) const
{
  auto it = moved_inverse_.find(i);
  return it != moved_inverse_.end() ? it->second : i - shift_;
}

bool IndexMap::preserves_range(std::size_t n) const
{
  if (shift_ != 0)
    return false;
  auto inside = [n](std::int64_t i) {
    return i >= 0 && static_cast<std::size_t>(i) < n;
  };
  return std::all_of(moved_.begin(), moved_.end(), [&](auto const &kv) {
    return inside(kv.first) && inside(kv.second);
  });
}

bool IndexMap::operator==(IndexMap const &other) const
{
  return shift_ == other.shift_ && moved_ == other.moved_;
}

std::string IndexMap::describe() const
{
  if (moved_.empty())
    return shift_ == 0 ? "id" : "shift:" + std::to_string(shift_);
  std::ostringstream out;
  std::set<std::int64_t> done;
  for (auto const &[start, _] : moved_) {
    if (done.count(start))
      continue;
    out << '(';
    auto i = start;
    do {
      if (i != start)
        out << ' ';
      out << i;
      done.insert(i);
      i = (*this)(i);
    } while (i != start);
    out << ')';
  }
  return out.str();
}

// ---------------------------------------------------------------- LazyKite

LazyKite::LazyKite(std::shared_ptr<LazyBase const> base,
                   std::optional<std::size_t> index_size, IndexMap lambda,
                   IndexMap rho)
  : base_(std::move(base)), index_size_(index_size),
    lambda_(std::move(lambda)), rho_(std::move(rho))
{
  if (!base_)
    throw UsageError("lazy kite needs a base");
  if (index_size_ && (!lambda_.preserves_range(*index_size_) ||
                      !rho_.preserves_range(*index_size_)))
    throw UsageError("index rule does not permute {0.." +
                     std::to_string(*index_size_ - 1) + "}");
  if (lambda_ == rho_ ? !base_->is_weakly_commutative() : !base_->is_total())
    throw PreconditionError(
      lambda_ == rho_
        ? "base is not weakly commutative"
        : "lambda differs from rho, so the base must have total addition");
}

void LazyKite::put(LazyElement &x, std::int64_t index, Value v) const
{
  if (v == base_->zero())
    x.coords.erase(index);
  else
    x.coords[index] = v;
}

LazyElement LazyKite::make(Sort sort, std::vector<Value> const &coords) const
{
  if (index_size_ && coords.size() != *index_size_)
    throw UsageError("expected " + std::to_string(*index_size_) +
                     " coordinates, got " + std::to_string(coords.size()));
  LazyElement x{sort, {}};
  for (std::size_t i = 0; i < coords.size(); ++i)
    put(x, static_cast<std::int64_t>(i), coords[i]);
  check_member(x);
  return x;
}

LazyElement LazyKite::make(Sort sort,
                           std::map<std::int64_t, Value> const &coords) const
{
  LazyElement x{sort, {}};
  for (auto const &[i, v] : coords)
    put(x, i, v);
  check_member(x);
  return x;
}

Value LazyKite::at(LazyElement const &x, std::int64_t index) const
{
  auto it = x.coords.find(index);
  return it == x.coords.end() ? base_->zero() : it->second;
}

void LazyKite::check_member(LazyElement const &x) const
{
  for (auto const &[i, v] : x.coords) {
    if (index_size_ && (i < 0 || static_cast<std::size_t>(i) >= *index_size_))
      throw UsageError("coordinate index " + std::to_string(i) +
                       " outside the index set");
    if (!base_->contains(v) || v == base_->zero())
      throw UsageError("coordinate value " + std::to_string(v) +
                       " is not a stored base element");
  }
}

std::vector<std::int64_t> LazyKite::indices(LazyElement const &x) const
{
  std::vector<std::int64_t> out;
  out.reserve(x.coords.size());
  for (auto const &kv : x.coords)
    out.push_back(kv.first);
  return out;
}

std::optional<LazyElement> LazyKite::add(LazyElement const &x,
                                         LazyElement const &y) const
{
  check_member(x);
  check_member(y);
  LazyElement out;
  std::set<std::int64_t> where;

  if (x.sort == Sort::Upper && y.sort == Sort::Upper)
    return std::nullopt;

  if (x.sort == Sort::Lower && y.sort == Sort::Lower) {
    out.sort = Sort::Lower;
    for (auto i : indices(x))
      where.insert(i);
    for (auto i : indices(y))
      where.insert(i);
    for (auto j : where) {
      auto s = base_->add(at(x, j), at(y, j));
      if (!s)
        return std::nullopt;
      put(out, j, *s);
    }
    return out;
  }

  out.sort = Sort::Upper;
  if (x.sort == Sort::Upper) {
    // ā + f: coordinate i is f_{rho^-1(i)} \ a_i
    for (auto i : indices(x))
      where.insert(i);
    for (auto j : indices(y))
      where.insert(rho_(j));
    for (auto i : where) {
      auto d = base_->right_diff(at(y, rho_.inverse(i)), at(x, i));
      if (!d)
        return std::nullopt;
      put(out, i, *d);
    }
    return out;
  }

  // f + ā: coordinate i is a_i / f_{lambda^-1(i)}
  for (auto i : indices(y))
    where.insert(i);
  for (auto j : indices(x))
    where.insert(lambda_(j));
  for (auto i : where) {
    auto d = base_->left_diff(at(y, i), at(x, lambda_.inverse(i)));
    if (!d)
      return std::nullopt;
    put(out, i, *d);
  }
  return out;
}

std::pair<LazyElement, LazyElement> LazyKite::neg(LazyElement const &x) const
{
  check_member(x);
  LazyElement minus, tilde;
  if (x.sort == Sort::Upper) {
    minus.sort = tilde.sort = Sort::Lower;
    for (auto const &[i, v] : x.coords) {
      put(minus, lambda_.inverse(i), v);
      put(tilde, rho_.inverse(i), v);
    }
  } else {
    minus.sort = tilde.sort = Sort::Upper;
    for (auto const &[j, v] : x.coords) {
      put(minus, rho_(j), v);
      put(tilde, lambda_(j), v);
    }
  }
  return {minus, tilde};
}

bool LazyKite::leq(LazyElement const &x, LazyElement const &y) const
{
  check_member(x);
  check_member(y);
  std::set<std::int64_t> where;
  for (auto i : indices(x))
    where.insert(i);
  for (auto i : indices(y))
    where.insert(i);

  if (x.sort == Sort::Lower && y.sort == Sort::Lower)
    return std::all_of(where.begin(), where.end(), [&](std::int64_t j) {
      return base_->leq(at(x, j), at(y, j));
    });
  if (x.sort == Sort::Upper && y.sort == Sort::Upper)
    return std::all_of(where.begin(), where.end(), [&](std::int64_t i) {
      return base_->leq(at(y, i), at(x, i));
    });
  if (x.sort == Sort::Upper)
    return false;

  where.clear();
  for (auto i : indices(y))
    where.insert(i);
  for (auto j : indices(x))
    where.insert(lambda_(j));
  return std::all_of(where.begin(), where.end(), [&](std::int64_t i) {
    return base_->add(at(y, i), at(x, lambda_.inverse(i))).has_value();
  });
}

bool LazyKite::is_infinitesimal(LazyElement const &x) const
{
  check_member(x);
  if (x.sort == Sort::Upper)
    return false;
  return std::all_of(x.coords.begin(), x.coords.end(), [&](auto const &kv) {
    return base_->is_infinitesimal(kv.second);
  });
}

LazyElement LazyKite::sample(std::mt19937_64 &rng, Sort sort, Value bound,
                             std::int64_t window) const
{
  LazyElement x{sort, {}};
  std::int64_t lo = index_size_ ? 0 : -window;
  std::int64_t hi = index_size_ ? static_cast<std::int64_t>(*index_size_) - 1
                                : window;
  for (auto i = lo; i <= hi; ++i)
    put(x, i, base_->sample(rng, bound));
  return x;
}

LazyElement LazyKite::sample_right_addend(std::mt19937_64 &rng,
                                          LazyElement const &upper) const
{
  // need f_j <= a_{rho(j)}
  LazyElement f{Sort::Lower, {}};
  for (auto const &[i, v] : upper.coords)
    put(f, rho_.inverse(i), base_->sample_below(rng, v));
  return f;
}

LazyElement LazyKite::sample_left_addend(std::mt19937_64 &rng,
                                         LazyElement const &upper) const
{
  // need f_j <= a_{lambda(j)}
  LazyElement f{Sort::Lower, {}};
  for (auto const &[i, v] : upper.coords)
    put(f, lambda_.inverse(i), base_->sample_below(rng, v));
  return f;
}

std::string LazyKite::to_string(LazyElement const &x) const
{
  std::ostringstream out;
  out << (x.sort == Sort::Lower ? 'L' : 'U');
  if (index_size_) {
    out << '(';
    for (std::size_t i = 0; i < *index_size_; ++i)
      out << (i ? "," : "") << at(x, static_cast<std::int64_t>(i));
    out << ')';
    return out.str();
  }
  out << '{';
  bool first = true;
  for (auto const &[i, v] : x.coords) {
    out << (first ? "" : ",") << i << ':' << v;
    first = false;
  }
  out << '}';
  return out.str();
}

LazyElement to_lazy(LazyKite const &lazy, KiteElement const &x)
{
  std::vector<Value> coords(x.coords.begin(), x.coords.end());
  return lazy.make(x.sort, coords);
}

// ---------------------------------------------------------------- sampling

SampledVerdict sampled_symmetry(LazyKite const &kite, std::size_t samples,
                                std::uint64_t seed, Value bound)
{
  std::mt19937_64 rng(seed);
  SampledVerdict out;
  for (std::size_t s = 0; s < samples; ++s) {
    auto x = kite.sample(rng, coin(rng) ? Sort::Upper : Sort::Lower, bound);
    ++out.samples;
    auto [minus, tilde] = kite.neg(x);
    if (minus != tilde) {
      out.holds = false;
      out.witness = x;
      return out;
    }
  }
  return out;
}

SampledPerfectReport sampled_perfect(LazyKite const &kite, std::size_t samples,
                                     std::uint64_t seed, Value bound)
{
  std::mt19937_64 rng(seed);
  SampledPerfectReport out;
  auto fail = [&](std::string what, LazyElement const &x) {
    out.perfect = false;
    out.failure = std::move(what) + " at " + kite.to_string(x);
    return out;
  };

  for (std::size_t s = 0; s < samples; ++s) {
    ++out.samples;
    auto x = kite.sample(rng, Sort::Lower, bound);
    auto y = kite.sample(rng, Sort::Lower, bound);
    auto u = kite.sample(rng, Sort::Upper, bound);
    auto v = kite.sample(rng, Sort::Upper, bound);

    // E_0 = infinitesimals, E_1 = the rest
    if (!kite.is_infinitesimal(x))
      return fail("lower element is not infinitesimal", x);
    if (kite.is_infinitesimal(u))
      return fail("upper element is infinitesimal", u);

    // (a) negations swap the sorts, and each sort is hit
    auto [xm, xt] = kite.neg(x);
    auto [um, ut] = kite.neg(u);
    if (xm.sort != Sort::Upper || xt.sort != Sort::Upper)
      return fail("negation of a lower element is lower", x);
    if (um.sort != Sort::Lower || ut.sort != Sort::Lower)
      return fail("negation of an upper element is upper", u);
    if (kite.neg(ut).first != u || kite.neg(um).second != u)
      return fail("negations are not mutually inverse", u);

    // (b) lower + lower lower, upper + lower and lower + upper upper,
    // upper + upper undefined
    if (auto s0 = kite.add(x, y); s0 && s0->sort != Sort::Lower)
      return fail("lower sum left the lower sort", x);
    auto r = kite.sample_right_addend(rng, u);
    auto ur = kite.add(u, r);
    if (!ur || ur->sort != Sort::Upper)
      return fail("upper + lower is not upper", u);
    auto l = kite.sample_left_addend(rng, u);
    auto lu = kite.add(l, u);
    if (!lu || lu->sort != Sort::Upper)
      return fail("lower + upper is not upper", u);
    if (kite.add(u, v))
      return fail("upper + upper is defined", u);

    // (c) E_0 + E_0 defined
    if (!kite.add(x, y))
      return fail("lower + lower undefined", x);
  }
  return out;
}

} // namespace kitelab
