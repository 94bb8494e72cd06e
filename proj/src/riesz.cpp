#include "kitelab/riesz.hpp"

#include <boost/dynamic_bitset.hpp>

#include <set>

#include "kitelab/errors.hpp"

namespace kitelab {

std::string_view to_string(RieszProperty property)
{
  switch (property) {
  case RieszProperty::RIP: return "RIP";
  case RieszProperty::RDP0: return "RDP0";
  case RieszProperty::RDP: return "RDP";
  case RieszProperty::RDP1: return "RDP1";
  case RieszProperty::RDP2: return "RDP2";
  }
  return "?";
}

RieszProperty riesz_property_from_string(std::string_view text)
{
  if (text == "rip") return RieszProperty::RIP;
  if (text == "rdp0") return RieszProperty::RDP0;
  if (text == "rdp") return RieszProperty::RDP;
  if (text == "rdp1") return RieszProperty::RDP1;
  if (text == "rdp2") return RieszProperty::RDP2;
  throw UsageError("unknown Riesz property '" + std::string(text) + "'");
}

namespace {

void check_cap(Gpea const &e, std::size_t cap)
{
  if (e.size() > cap)
    throw SizeError("carrier of size " + std::to_string(e.size()) +
                    " exceeds the Riesz cap " + std::to_string(cap));
}

using Bits = boost::dynamic_bitset<>;

/// 0 is the only common lower bound of x and y.
bool disjoint(Gpea const &e, Elem x, Elem y)
{
  for (Elem z : e.downset(x))
    if (z != e.zero() && e.leq(z, y))
      return false;
  return true;
}

bool extra_clause(Gpea const &e, DecompositionTable<Elem> const &t,
                  RieszProperty property)
{
  switch (property) {
  case RieszProperty::RDP1: return com(e, t.c12, t.c21);
  case RieszProperty::RDP2: return disjoint(e, t.c12, t.c21);
  default: return true;
  }
}

RieszReport check_rdp_class(Gpea const &e, RieszProperty property,
                            std::size_t cap)
{
  check_cap(e, cap);
  std::size_t const n = e.size();
  std::vector<std::vector<std::pair<Elem, Elem>>> by_sum(n);
  for (Elem a = 0; a < n; ++a)
    for (Elem b = 0; b < n; ++b)
      if (auto s = e.add(a, b))
        by_sum[*s].emplace_back(a, b);

  RieszReport out;
  out.property = property;
  bool sample_is_nontrivial = false;
  for (auto const &pairs : by_sum)
    for (auto const &[a1, a2] : pairs)
      for (auto const &[b1, b2] : pairs) {
        ++out.instances;
        auto t = find_decomposition(e, a1, a2, b1, b2, property);
        if (!t) {
          out.holds = false;
          out.counterexample = {a1, a2, b1, b2};
          out.table.reset();
          out.table_quadruple.clear();
          return out;
        }
        if (!sample_is_nontrivial) {
          out.table = *t;
          out.table_quadruple = {a1, a2, b1, b2};
          sample_is_nontrivial = a1 != b1;
        }
      }
  return out;
}

} // namespace

std::optional<DecompositionTable<Elem>>
find_decomposition(Gpea const &e, Elem a1, Elem a2, Elem b1, Elem b2,
                   RieszProperty property)
{
  auto s = e.add(a1, a2);
  auto t = e.add(b1, b2);
  if (!s || !t || *s != *t)
    return std::nullopt;
  for (Elem c11 : e.downset(a1)) {
    if (!e.leq(c11, b1))
      continue;
    Elem c12 = e.right_diff(c11, a1);
    Elem c21 = e.right_diff(c11, b1);
    if (!e.leq(c21, a2))
      continue;
    Elem c22 = e.right_diff(c21, a2);
    auto top = e.add(c12, c22);
    if (!top || *top != b2)
      continue;
    DecompositionTable<Elem> table{c11, c12, c21, c22};
    if (extra_clause(e, table, property))
      return table;
  }
  return std::nullopt;
}

bool table_certifies(Gpea const &e, DecompositionTable<Elem> const &t, Elem a1,
                     Elem a2, Elem b1, Elem b2)
{
  return e.add(t.c11, t.c12) == std::optional<Elem>(a1) &&
         e.add(t.c21, t.c22) == std::optional<Elem>(a2) &&
         e.add(t.c11, t.c21) == std::optional<Elem>(b1) &&
         e.add(t.c12, t.c22) == std::optional<Elem>(b2);
}

RieszReport check_rip(Gpea const &e, std::size_t cap)
{
  check_cap(e, cap);
  std::size_t const n = e.size();
  std::vector<Bits> up(n, Bits(n)), down(n, Bits(n));
  for (Elem a = 0; a < n; ++a)
    for (Elem b = 0; b < n; ++b)
      if (e.leq(a, b)) {
        up[a].set(b);
        down[b].set(a);
      }

  RieszReport out;
  out.property = RieszProperty::RIP;
  for (Elem a1 = 0; a1 < n; ++a1)
    for (Elem a2 = 0; a2 < n; ++a2) {
      Bits above = up[a1] & up[a2];
      for (auto b1 = above.find_first(); b1 != Bits::npos;
           b1 = above.find_next(b1))
        for (auto b2 = above.find_first(); b2 != Bits::npos;
             b2 = above.find_next(b2)) {
          ++out.instances;
          Bits between = above & down[b1] & down[b2];
          auto c = between.find_first();
          if (c == Bits::npos) {
            out.holds = false;
            out.counterexample = {a1, a2, static_cast<Elem>(b1),
                                  static_cast<Elem>(b2)};
            out.witness.clear();
            return out;
          }
          if (out.witness.empty() || (a1 != a2 && b1 != b2 &&
                                      out.witness[0] == out.witness[1]))
            out.witness = {a1, a2, static_cast<Elem>(b1),
                           static_cast<Elem>(b2), static_cast<Elem>(c)};
        }
    }
  return out;
}

RieszReport check_rdp0(Gpea const &e, std::size_t cap)
{
  check_cap(e, cap);
  std::size_t const n = e.size();
  RieszReport out;
  out.property = RieszProperty::RDP0;
  for (Elem b = 0; b < n; ++b)
    for (Elem c = 0; c < n; ++c) {
      auto s = e.add(b, c);
      if (!s)
        continue;
      for (Elem a : e.downset(*s)) {
        ++out.instances;
        bool found = false;
        for (Elem b1 : e.downset(b)) {
          if (!e.leq(b1, a))
            continue;
          Elem c1 = e.right_diff(b1, a);
          if (e.leq(c1, c)) {
            found = true;
            if (out.witness.empty() || (b1 != e.zero() && c1 != e.zero()))
              out.witness = {a, b, c, b1, c1};
            break;
          }
        }
        if (!found) {
          out.holds = false;
          out.counterexample = {a, b, c};
          out.witness.clear();
          return out;
        }
      }
    }
  return out;
}

RieszReport check_rdp(Gpea const &e, std::size_t cap)
{
  return check_rdp_class(e, RieszProperty::RDP, cap);
}

RieszReport check_rdp1(Gpea const &e, std::size_t cap)
{
  return check_rdp_class(e, RieszProperty::RDP1, cap);
}

RieszReport check_rdp2(Gpea const &e, std::size_t cap)
{
  return check_rdp_class(e, RieszProperty::RDP2, cap);
}

RieszReport check_riesz(Gpea const &e, RieszProperty property, std::size_t cap)
{
  switch (property) {
  case RieszProperty::RIP: return check_rip(e, cap);
  case RieszProperty::RDP0: return check_rdp0(e, cap);
  default: return check_rdp_class(e, property, cap);
  }
}

// ------------------------------------------------------------ lazy kites

bool table_certifies(LazyKite const &kite,
                     DecompositionTable<LazyElement> const &t,
                     LazyElement const &a1, LazyElement const &a2,
                     LazyElement const &b1, LazyElement const &b2)
{
  auto is = [](std::optional<LazyElement> const &x, LazyElement const &y) {
    return x && *x == y;
  };
  return is(kite.add(t.c11, t.c12), a1) && is(kite.add(t.c21, t.c22), a2) &&
         is(kite.add(t.c11, t.c21), b1) && is(kite.add(t.c12, t.c22), b2);
}

KiteCase classify(LazyElement const &a1, LazyElement const &a2,
                  LazyElement const &b1, LazyElement const &b2)
{
  auto up = [](LazyElement const &x) { return x.sort == Sort::Upper; };
  if (!up(a1) && !up(a2) && !up(b1) && !up(b2))
    return KiteCase::LowerLower;
  if (up(a1) && up(b1))
    return KiteCase::UpperLower;
  if (up(a2) && up(b2))
    return KiteCase::LowerUpper;
  return KiteCase::Mixed;
}

namespace {

using Table = DecompositionTable<LazyElement>;

std::set<std::int64_t> support(std::initializer_list<LazyElement const *> xs,
                               IndexMap const *shift = nullptr,
                               std::initializer_list<LazyElement const *> ys = {})
{
  std::set<std::int64_t> out;
  for (auto const *x : xs)
    for (auto const &kv : x->coords)
      out.insert(kv.first);
  for (auto const *y : ys)
    for (auto const &kv : y->coords)
      out.insert((*shift)(kv.first));
  return out;
}

Value need(std::optional<Value> v, char const *what)
{
  if (!v)
    throw PreconditionError(what);
  return *v;
}

DecompositionTable<Value> refine(LazyBase const &base, Value a1, Value a2,
                                 Value b1, Value b2)
{
  auto t = base.decompose(a1, a2, b1, b2);
  if (!t)
    throw PreconditionError("base has no refinement of " + std::to_string(a1) +
                            "+" + std::to_string(a2) + " = " +
                            std::to_string(b1) + "+" + std::to_string(b2));
  return *t;
}

Table lower_lower(LazyKite const &k, LazyElement const &a1,
                  LazyElement const &a2, LazyElement const &b1,
                  LazyElement const &b2)
{
  std::map<std::int64_t, Value> c11, c12, c21, c22;
  for (auto j : support({&a1, &a2, &b1, &b2})) {
    auto t = refine(k.base(), k.at(a1, j), k.at(a2, j), k.at(b1, j),
                    k.at(b2, j));
    c11[j] = t.c11;
    c12[j] = t.c12;
    c21[j] = t.c21;
    c22[j] = t.c22;
  }
  return {k.make(Sort::Lower, c11), k.make(Sort::Lower, c12),
          k.make(Sort::Lower, c21), k.make(Sort::Lower, c22)};
}

// U(a) + L(f) = U(b) + L(g)
Table upper_lower(LazyKite const &k, LazyElement const &ua,
                  LazyElement const &lf, LazyElement const &ub,
                  LazyElement const &lg)
{
  auto const &base = k.base();
  auto const &rho = k.rho();
  std::map<std::int64_t, Value> c11, c12, c21, c22;
  for (auto i : support({&ua, &ub}, &rho, {&lf, &lg})) {
    Value a = k.at(ua, i), b = k.at(ub, i);
    Value f = k.at(lf, rho.inverse(i)), g = k.at(lg, rho.inverse(i));
    Value d = need(base.upper_bound(a, b), "base has no common upper bound");
    Value da = need(base.left_diff(d, a), "upper bound is not above");
    Value db = need(base.left_diff(d, b), "upper bound is not above");
    auto t = refine(base, da, f, db, g);
    c11[i] = need(base.add(t.c12, a), "c12 + a undefined");
    c12[rho.inverse(i)] = t.c12;
    c21[rho.inverse(i)] = t.c21;
    c22[rho.inverse(i)] = t.c22;
  }
  return {k.make(Sort::Upper, c11), k.make(Sort::Lower, c12),
          k.make(Sort::Lower, c21), k.make(Sort::Lower, c22)};
}

// L(f) + U(a) = L(g) + U(b)
Table lower_upper(LazyKite const &k, LazyElement const &lf,
                  LazyElement const &ua, LazyElement const &lg,
                  LazyElement const &ub)
{
  auto const &base = k.base();
  auto const &lambda = k.lambda();
  std::map<std::int64_t, Value> c11, c12, c21, c22;
  for (auto i : support({&ua, &ub}, &lambda, {&lf, &lg})) {
    Value a = k.at(ua, i), b = k.at(ub, i);
    Value f = k.at(lf, lambda.inverse(i)), g = k.at(lg, lambda.inverse(i));
    Value d = need(base.upper_bound(a, b), "base has no common upper bound");
    Value ra = need(base.right_diff(a, d), "upper bound is not above");
    Value rb = need(base.right_diff(b, d), "upper bound is not above");
    auto t = refine(base, f, ra, g, rb);
    c11[lambda.inverse(i)] = t.c11;
    c12[lambda.inverse(i)] = t.c12;
    c21[lambda.inverse(i)] = t.c21;
    c22[i] = need(base.add(a, t.c21), "a + c21 undefined");
  }
  return {k.make(Sort::Lower, c11), k.make(Sort::Lower, c12),
          k.make(Sort::Lower, c21), k.make(Sort::Upper, c22)};
}

// U(a) + L(f) = L(g) + U(b)
Table mixed(LazyKite const &k, LazyElement const &ua, LazyElement const &lf,
            LazyElement const &lg, LazyElement const &)
{
  auto const &lambda = k.lambda();
  std::map<std::int64_t, Value> top;
  for (auto i : support({&ua}, &lambda, {&lg})) {
    auto s = k.base().add(k.at(ua, i), k.at(lg, lambda.inverse(i)));
    if (!s)
      throw PreconditionError("a_i + g_{lambda^-1(i)} is undefined at index " +
                              std::to_string(i));
    top[i] = *s;
  }
  return {lg, k.make(Sort::Upper, top), k.zero(), lf};
}

} // namespace

DecompositionTable<LazyElement>
kite_rdp_decompose(LazyKite const &kite, LazyElement const &a1,
                   LazyElement const &a2, LazyElement const &b1,
                   LazyElement const &b2)
{
  auto s = kite.add(a1, a2);
  auto t = kite.add(b1, b2);
  if (!s || !t)
    throw UsageError("decomposition needs both sums defined");
  if (*s != *t)
    throw UsageError("the two sums differ");

  switch (classify(a1, a2, b1, b2)) {
  case KiteCase::LowerLower: return lower_lower(kite, a1, a2, b1, b2);
  case KiteCase::UpperLower: return upper_lower(kite, a1, a2, b1, b2);
  case KiteCase::LowerUpper: return lower_upper(kite, a1, a2, b1, b2);
  case KiteCase::Mixed:
    if (a1.sort == Sort::Upper)
      return mixed(kite, a1, a2, b1, b2);
    return mixed(kite, b1, b2, a1, a2).transposed();
  }
  throw UsageError("unreachable sort pattern");
}

} // namespace kitelab
