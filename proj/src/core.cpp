#include "kitelab/core.hpp"

#include <algorithm>
#include <numeric>
#include <tuple>

#include "kitelab/errors.hpp"

namespace kitelab {

PartialTable::PartialTable(std::size_t n)
  : n_(n), entries_(n * n, kUndefined)
{}

std::size_t PartialTable::defined_count() const
{
  return static_cast<std::size_t>(
    std::count_if(entries_.begin(), entries_.end(),
                  [](Elem v) { return v != kUndefined; }));
}

std::string_view to_string(Axiom axiom)
{
  switch (axiom) {
  case Axiom::GP1: return "GP1";
  case Axiom::GP2: return "GP2";
  case Axiom::GP3: return "GP3";
  case Axiom::GP4: return "GP4";
  case Axiom::GP5: return "GP5";
  case Axiom::PeaI: return "PEA(i)";
  case Axiom::PeaII: return "PEA(ii)";
  case Axiom::PeaIII: return "PEA(iii)";
  case Axiom::PeaIV: return "PEA(iv)";
  }
  return "?";
}

std::size_t AxiomReport::count(Axiom axiom) const
{
  return static_cast<std::size_t>(
    std::count_if(violations.begin(), violations.end(),
                  [axiom](Violation const &v) { return v.axiom == axiom; }));
}

namespace {

void check_structure(PartialTable const &table, Elem zero)
{
  std::size_t n = table.size();
  if (n == 0)
    throw StructuralError("empty carrier");
  if (zero >= n)
    throw StructuralError("zero index " + std::to_string(zero) +
                          " out of range");
  for (Elem a = 0; a < n; ++a) {
    for (Elem b = 0; b < n; ++b) {
      Elem v = table.raw(a, b);
      if (v != kUndefined && v >= n)
        throw StructuralError("entry (" + std::to_string(a) + ", " +
                              std::to_string(b) + ") = " + std::to_string(v) +
                              " out of range");
    }
  }
}

} // namespace

AxiomReport verify_gpea_axioms(PartialTable const &t, Elem zero)
{
  check_structure(t, zero);

  std::size_t const n = t.size();
  AxiomReport report;
  auto flag = [&](Axiom ax, std::vector<Elem> w) {
    report.violations.push_back({ax, std::move(w)});
  };

  for (Elem a = 0; a < n; ++a)
    if (t.raw(a, zero) != a || t.raw(zero, a) != a)
      flag(Axiom::GP5, {a});

  for (Elem a = 0; a < n; ++a)
    for (Elem b = 0; b < n; ++b)
      if (t.raw(a, b) == zero && !(a == zero && b == zero))
        flag(Axiom::GP4, {a, b});

  // GP3, both cancellation laws
  std::vector<Elem> seen(n);
  for (Elem a = 0; a < n; ++a) {
    std::fill(seen.begin(), seen.end(), kUndefined);
    for (Elem b = 0; b < n; ++b) {
      Elem v = t.raw(a, b);
      if (v == kUndefined)
        continue;
      if (seen[v] != kUndefined)
        flag(Axiom::GP3, {a, seen[v], b});
      else
        seen[v] = b;
    }
    std::fill(seen.begin(), seen.end(), kUndefined);
    for (Elem b = 0; b < n; ++b) {
      Elem v = t.raw(b, a);
      if (v == kUndefined)
        continue;
      if (seen[v] != kUndefined)
        flag(Axiom::GP3, {seen[v], b, a});
      else
        seen[v] = b;
    }
  }

  // GP2: a+b = s needs some d with d+a = s and some e with b+e = s
  std::vector<char> left_witness(n * n, 0);  // [s*n + y]: exists x, x+y = s
  std::vector<char> right_witness(n * n, 0); // [x*n + s]: exists y, x+y = s
  for (Elem x = 0; x < n; ++x)
    for (Elem y = 0; y < n; ++y) {
      Elem s = t.raw(x, y);
      if (s == kUndefined)
        continue;
      left_witness[s * n + y] = 1;
      right_witness[x * n + s] = 1;
    }
  for (Elem a = 0; a < n; ++a)
    for (Elem b = 0; b < n; ++b) {
      Elem s = t.raw(a, b);
      if (s == kUndefined)
        continue;
      if (!left_witness[s * n + a] || !right_witness[b * n + s])
        flag(Axiom::GP2, {a, b});
    }

  // GP1
  std::vector<std::vector<Elem>> successors(n);
  for (Elem b = 0; b < n; ++b)
    for (Elem c = 0; c < n; ++c)
      if (t.defined(b, c))
        successors[b].push_back(c);

  for (Elem a = 0; a < n; ++a) {
    for (Elem b = 0; b < n; ++b) {
      Elem ab = t.raw(a, b);
      if (ab != kUndefined) {
        for (Elem c : successors[ab]) {
          Elem lhs = t.raw(ab, c);
          Elem bc = t.raw(b, c);
          Elem rhs = bc == kUndefined ? kUndefined : t.raw(a, bc);
          if (lhs != rhs)
            flag(Axiom::GP1, {a, b, c});
        }
        for (Elem c : successors[b]) {
          if (t.defined(ab, c))
            continue;
          if (t.defined(a, t.raw(b, c)))
            flag(Axiom::GP1, {a, b, c});
        }
      } else {
        for (Elem c : successors[b])
          if (t.defined(a, t.raw(b, c)))
            flag(Axiom::GP1, {a, b, c});
      }
    }
  }

  return report;
}

namespace {

std::string describe(AxiomReport const &report)
{
  std::string out;
  std::size_t shown = 0;
  for (auto const &v : report.violations) {
    if (shown++ == 5) {
      out += " ...";
      break;
    }
    out += " ";
    out += to_string(v.axiom);
    out += "(";
    for (std::size_t i = 0; i < v.witness.size(); ++i) {
      if (i)
        out += ",";
      out += std::to_string(v.witness[i]);
    }
    out += ")";
  }
  return out;
}

} // namespace

Gpea Gpea::make(PartialTable table, Elem zero, std::vector<std::string> labels)
{
  auto report = verify_gpea_axioms(table, zero);
  if (!report.passed())
    throw AxiomError("not a GPEA:" + describe(report));
  if (!labels.empty() && labels.size() != table.size())
    throw StructuralError("label count does not match carrier size");
  return Gpea(std::move(table), zero, std::move(labels));
}

Gpea::Gpea(PartialTable table, Elem zero, std::vector<std::string> labels)
  : table_(std::move(table)), zero_(zero), labels_(std::move(labels))
{
  std::size_t const n = table_.size();
  leq_.assign(n * n, 0);
  left_diff_.assign(n * n, kUndefined);
  right_diff_.assign(n * n, kUndefined);

  for (Elem x = 0; x < n; ++x) {
    for (Elem y = 0; y < n; ++y) {
      Elem z = table_.raw(x, y);
      if (z == kUndefined)
        continue;
      Elem &r = right_diff_[x * n + z];
      if (r != kUndefined && r != y)
        throw StructuralError("right difference not unique");
      r = y;
      Elem &l = left_diff_[z * n + y];
      if (l != kUndefined && l != x)
        throw StructuralError("left difference not unique");
      l = x;
      leq_[x * n + z] = 1;
    }
  }

  downsets_.resize(n);
  for (Elem b = 0; b < n; ++b)
    for (Elem a = 0; a < n; ++a)
      if (leq_[a * n + b])
        downsets_[b].push_back(a);
}

Elem Gpea::left_diff(Elem b, Elem a) const
{
  Elem d = left_diff_[b * size() + a];
  if (d == kUndefined)
    throw NotComparableError(label(a) + " is not below " + label(b));
  return d;
}

Elem Gpea::right_diff(Elem a, Elem b) const
{
  Elem c = right_diff_[a * size() + b];
  if (c == kUndefined)
    throw NotComparableError(label(a) + " is not below " + label(b));
  return c;
}

std::string Gpea::label(Elem a) const
{
  if (a < labels_.size())
    return labels_[a];
  return std::to_string(a);
}

AxiomReport verify_pea_axioms(Gpea const &gpea, Elem top)
{
  std::size_t const n = gpea.size();
  if (top >= n)
    throw StructuralError("top index " + std::to_string(top) +
                          " out of range");

  AxiomReport report;
  // (i) and (iii) are GP1 and GP2, which a valid Gpea already satisfies.
  for (Elem a = 0; a < n; ++a) {
    std::size_t right = 0, left = 0;
    for (Elem x = 0; x < n; ++x) {
      if (gpea.table().raw(a, x) == top)
        ++right;
      if (gpea.table().raw(x, a) == top)
        ++left;
    }
    if (right != 1 || left != 1)
      report.violations.push_back({Axiom::PeaII, {a}});
  }
  for (Elem a = 0; a < n; ++a) {
    if (a == gpea.zero())
      continue;
    if (gpea.defined(top, a) || gpea.defined(a, top))
      report.violations.push_back({Axiom::PeaIV, {a}});
  }
  return report;
}

Pea Pea::make(Gpea base, Elem top)
{
  auto report = verify_pea_axioms(base, top);
  if (!report.passed())
    throw AxiomError("not a PEA:" + describe(report));
  return Pea(std::move(base), top);
}

Pea::Pea(Gpea base, Elem top)
  : base_(std::move(base)), top_(top)
{
  std::size_t const n = base_.size();
  minus_.resize(n);
  tilde_.resize(n);
  for (Elem a = 0; a < n; ++a) {
    minus_[a] = base_.left_diff(top_, a);
    tilde_[a] = base_.right_diff(a, top_);
  }
}

OrderRelation derive_order(Gpea const &gpea)
{
  std::size_t const n = gpea.size();
  auto const &t = gpea.table();

  std::vector<char> right(n * n, 0), left(n * n, 0);
  for (Elem x = 0; x < n; ++x)
    for (Elem y = 0; y < n; ++y) {
      Elem z = t.raw(x, y);
      if (z == kUndefined)
        continue;
      right[x * n + z] = 1; // x + y = z: x <= z
      left[y * n + z] = 1;  // x + y = z: y <= z
    }
  if (right != left)
    throw StructuralError("left and right order witnesses disagree");

  return OrderRelation{n, std::move(right)};
}

std::pair<Elem, Elem> negations(Pea const &pea, Elem a)
{
  if (a >= pea.size())
    throw UsageError("element out of range");
  return {pea.minus(a), pea.tilde(a)};
}

bool is_weakly_commutative(Gpea const &gpea)
{
  auto const &t = gpea.table();
  for (Elem a = 0; a < gpea.size(); ++a)
    for (Elem b = a + 1; b < gpea.size(); ++b)
      if (t.defined(a, b) != t.defined(b, a))
        return false;
  return true;
}

bool is_commutative(Gpea const &gpea)
{
  auto const &t = gpea.table();
  for (Elem a = 0; a < gpea.size(); ++a)
    for (Elem b = a + 1; b < gpea.size(); ++b)
      if (t.raw(a, b) != t.raw(b, a))
        return false;
  return true;
}

bool is_total(Gpea const &gpea)
{
  return gpea.table().defined_count() == gpea.size() * gpea.size();
}

bool is_directed(Gpea const &gpea)
{
  std::size_t const n = gpea.size();
  for (Elem a = 0; a < n; ++a)
    for (Elem b = a + 1; b < n; ++b) {
      bool bounded = false;
      for (Elem c = 0; c < n && !bounded; ++c)
        bounded = gpea.leq(a, c) && gpea.leq(b, c);
      if (!bounded)
        return false;
    }
  return true;
}

bool com(Gpea const &gpea, Elem a, Elem b)
{
  auto const &t = gpea.table();
  for (Elem x : gpea.downset(a))
    for (Elem y : gpea.downset(b))
      if (t.raw(x, y) != t.raw(y, x))
        return false;
  return true;
}

bool is_sub_gpea(Gpea const &gpea, std::vector<Elem> const &subset)
{
  std::size_t const n = gpea.size();
  std::vector<char> in(n, 0);
  for (Elem a : subset) {
    if (a >= n)
      throw UsageError("subset element out of range");
    in[a] = 1;
  }
  if (!in[gpea.zero()])
    return false;
  for (Elem x = 0; x < n; ++x)
    for (Elem y = 0; y < n; ++y) {
      Elem z = gpea.table().raw(x, y);
      if (z == kUndefined)
        continue;
      int hits = in[x] + in[y] + in[z];
      if (hits == 2)
        return false;
    }
  return true;
}

namespace {

using Signature = std::tuple<int, int, int, int, std::size_t, int>;

std::vector<Signature> signatures(Gpea const &g, std::optional<Elem> top)
{
  std::size_t const n = g.size();
  std::vector<Signature> sig(n);
  for (Elem a = 0; a < n; ++a) {
    int rows = 0, cols = 0, ups = 0, self = g.defined(a, a) ? 1 : 0;
    for (Elem b = 0; b < n; ++b) {
      rows += g.defined(a, b);
      cols += g.defined(b, a);
      ups += g.leq(a, b);
    }
    int marker = (a == g.zero() ? 1 : 0) + (top && a == *top ? 2 : 0);
    sig[a] = {marker, rows, cols, ups, g.downset(a).size(), self};
  }
  return sig;
}

class IsoSearch
{
public:
  IsoSearch(Gpea const &e, Gpea const &f, std::optional<Elem> top_e,
            std::optional<Elem> top_f)
    : e_(e), f_(f), n_(e.size()),
      fwd_(n_, kUndefined), bwd_(n_, kUndefined)
  {
    auto se = signatures(e, top_e);
    auto sf = signatures(f, top_f);
    candidates_.resize(n_);
    for (Elem a = 0; a < n_; ++a)
      for (Elem x = 0; x < n_; ++x)
        if (se[a] == sf[x])
          candidates_[a].push_back(x);
    order_.resize(n_);
    std::iota(order_.begin(), order_.end(), Elem{0});
    std::stable_sort(order_.begin(), order_.end(), [this](Elem a, Elem b) {
      return candidates_[a].size() < candidates_[b].size();
    });
    auto sorted_e = se, sorted_f = sf;
    std::sort(sorted_e.begin(), sorted_e.end());
    std::sort(sorted_f.begin(), sorted_f.end());
    feasible_ = sorted_e == sorted_f;
  }

  std::optional<std::vector<Elem>> run()
  {
    if (!feasible_)
      return std::nullopt;
    if (!extend(0))
      return std::nullopt;
    return fwd_;
  }

private:
  bool consistent(Elem a, Elem x) const
  {
    auto const &te = e_.table();
    auto const &tf = f_.table();
    auto pair_ok = [&](Elem p, Elem q, Elem hp, Elem hq) {
      Elem r = te.raw(p, q);
      Elem hr = tf.raw(hp, hq);
      if ((r == kUndefined) != (hr == kUndefined))
        return false;
      if (r == kUndefined)
        return true;
      if (fwd_[r] != kUndefined && fwd_[r] != hr)
        return false;
      if (bwd_[hr] != kUndefined && bwd_[hr] != r)
        return false;
      return true;
    };
    for (Elem b = 0; b < n_; ++b) {
      Elem hb = fwd_[b];
      if (hb == kUndefined)
        continue;
      if (!pair_ok(a, b, x, hb) || !pair_ok(b, a, hb, x))
        return false;
    }
    return true;
  }

  bool extend(std::size_t depth)
  {
    if (depth == n_)
      return verify();
    Elem a = order_[depth];
    for (Elem x : candidates_[a]) {
      if (bwd_[x] != kUndefined)
        continue;
      fwd_[a] = x;
      bwd_[x] = a;
      if (consistent(a, x) && extend(depth + 1))
        return true;
      fwd_[a] = kUndefined;
      bwd_[x] = kUndefined;
    }
    return false;
  }

  bool verify() const
  {
    for (Elem a = 0; a < n_; ++a)
      for (Elem b = 0; b < n_; ++b) {
        Elem r = e_.table().raw(a, b);
        Elem hr = f_.table().raw(fwd_[a], fwd_[b]);
        if (r == kUndefined ? hr != kUndefined : hr != fwd_[r])
          return false;
      }
    return true;
  }

  Gpea const &e_;
  Gpea const &f_;
  std::size_t n_;
  std::vector<Elem> fwd_;
  std::vector<Elem> bwd_;
  std::vector<std::vector<Elem>> candidates_;
  std::vector<Elem> order_;
  bool feasible_ = false;
};

} // namespace

std::optional<std::vector<Elem>> find_isomorphism(Gpea const &e, Gpea const &f)
{
  if (e.size() != f.size())
    return std::nullopt;
  return IsoSearch(e, f, std::nullopt, std::nullopt).run();
}

std::optional<std::vector<Elem>> find_isomorphism(Pea const &e, Pea const &f)
{
  if (e.size() != f.size())
    return std::nullopt;
  return IsoSearch(e.gpea(), f.gpea(), e.top(), f.top()).run();
}

} // namespace kitelab
