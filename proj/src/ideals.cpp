#include "kitelab/ideals.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <set>

#include "kitelab/errors.hpp"

namespace kitelab {

bool Ideal::contains(Elem x) const
{
  return std::binary_search(members.begin(), members.end(), x);
}

namespace {

std::vector<char> mask_of(std::size_t n, std::vector<Elem> const &subset)
{
  std::vector<char> in(n, 0);
  for (Elem x : subset) {
    if (x >= n)
      throw UsageError("element " + std::to_string(x) + " outside the carrier");
    in[x] = 1;
  }
  return in;
}

Ideal from_mask(std::vector<char> const &in)
{
  Ideal out;
  for (Elem x = 0; x < in.size(); ++x)
    if (in[x])
      out.members.push_back(x);
  return out;
}

void close(Gpea const &e, std::vector<char> &in)
{
  std::size_t const n = e.size();
  std::vector<Elem> todo;
  for (Elem x = 0; x < n; ++x)
    if (in[x])
      todo.push_back(x);
  auto admit = [&](Elem y) {
    if (!in[y]) {
      in[y] = 1;
      todo.push_back(y);
    }
  };
  while (!todo.empty()) {
    Elem x = todo.back();
    todo.pop_back();
    for (Elem y : e.downset(x))
      admit(y);
    for (Elem y = 0; y < n; ++y) {
      if (!in[y])
        continue;
      if (auto s = e.add(x, y))
        admit(*s);
      if (auto s = e.add(y, x))
        admit(*s);
    }
  }
}

} // namespace

bool is_ideal(Gpea const &e, std::vector<Elem> const &subset)
{
  if (subset.empty())
    return false;
  auto in = mask_of(e.size(), subset);
  for (Elem x : subset) {
    for (Elem y : e.downset(x))
      if (!in[y])
        return false;
    for (Elem y : subset)
      if (auto s = e.add(x, y); s && !in[*s])
        return false;
  }
  return true;
}

Ideal ideal_closure(Gpea const &e, std::vector<Elem> const &generators)
{
  auto in = mask_of(e.size(), generators);
  in[e.zero()] = 1;
  close(e, in);
  return from_mask(in);
}

std::vector<Ideal> enumerate_ideals(Gpea const &e, bool normal_only,
                                    std::size_t cap)
{
  if (e.size() > cap)
    throw SizeError("carrier of size " + std::to_string(e.size()) +
                    " exceeds the ideal cap " + std::to_string(cap));
  std::set<Ideal> seen;
  std::deque<Ideal> queue;
  Ideal bottom = ideal_closure(e, {});
  seen.insert(bottom);
  queue.push_back(bottom);
  while (!queue.empty()) {
    Ideal current = queue.front();
    queue.pop_front();
    auto in = mask_of(e.size(), current.members);
    for (Elem x = 0; x < e.size(); ++x) {
      if (in[x])
        continue;
      auto grown = in;
      grown[x] = 1;
      close(e, grown);
      Ideal next = from_mask(grown);
      if (seen.insert(next).second)
        queue.push_back(std::move(next));
    }
  }

  std::vector<Ideal> out;
  for (auto const &ideal : seen)
    if (!normal_only || is_normal(e, ideal))
      out.push_back(ideal);
  std::stable_sort(out.begin(), out.end(), [](Ideal const &a, Ideal const &b) {
    return a.size() < b.size();
  });
  return out;
}

bool is_normal(Gpea const &e, Ideal const &ideal)
{
  if (!is_ideal(e, ideal.members))
    throw UsageError("subset is not an ideal");
  for (Elem x = 0; x < e.size(); ++x) {
    std::set<Elem> left, right;
    for (Elem y : ideal.members) {
      if (auto s = e.add(x, y))
        left.insert(*s);
      if (auto s = e.add(y, x))
        right.insert(*s);
    }
    if (left != right)
      return false;
  }
  return true;
}

bool is_maximal_ideal(Gpea const &e, Ideal const &ideal)
{
  if (!is_ideal(e, ideal.members))
    throw UsageError("subset is not an ideal");
  if (ideal.size() == e.size())
    return false;
  auto in = mask_of(e.size(), ideal.members);
  for (Elem x = 0; x < e.size(); ++x) {
    if (in[x])
      continue;
    auto grown = in;
    grown[x] = 1;
    close(e, grown);
    if (std::count(grown.begin(), grown.end(), 1) !=
        static_cast<std::ptrdiff_t>(e.size()))
      return false;
  }
  return true;
}

std::optional<Ideal> least_nontrivial_normal_ideal(Gpea const &e,
                                                   std::size_t cap)
{
  if (e.is_trivial())
    return std::nullopt;
  std::vector<char> meet(e.size(), 1);
  for (auto const &ideal : enumerate_ideals(e, true, cap)) {
    if (ideal.size() == 1)
      continue;
    auto in = mask_of(e.size(), ideal.members);
    for (std::size_t x = 0; x < meet.size(); ++x)
      meet[x] = meet[x] && in[x];
  }
  Ideal result = from_mask(meet);
  if (result.size() == 1 || !is_ideal(e, result.members) ||
      !is_normal(e, result))
    return std::nullopt;
  return result;
}

bool is_subdirectly_irreducible(Gpea const &e, std::size_t cap)
{
  return e.is_trivial() || least_nontrivial_normal_ideal(e, cap).has_value();
}

CongruenceReport congruence_from_normal_ideal(Gpea const &e, Ideal const &ideal)
{
  if (!is_ideal(e, ideal.members))
    throw UsageError("subset is not an ideal");
  std::size_t const n = e.size();

  // residues[a] = { a / f : f in I, f <= a }
  std::vector<std::set<Elem>> residues(n);
  for (Elem a = 0; a < n; ++a)
    for (Elem f : ideal.members)
      if (e.leq(f, a))
        residues[a].insert(e.left_diff(a, f));
  auto related = [&](Elem a, Elem b) {
    auto const &x = residues[a];
    auto const &y = residues[b];
    return std::any_of(x.begin(), x.end(),
                       [&](Elem r) { return y.count(r) != 0; });
  };

  CongruenceReport out;
  out.block.assign(n, kUndefined);
  for (Elem a = 0; a < n; ++a) {
    if (out.block[a] != kUndefined)
      continue;
    for (Elem b = a; b < n; ++b)
      if (related(a, b))
        out.block[b] = a;
  }
  for (Elem a = 0; a < n; ++a)
    for (Elem b = 0; b < n; ++b)
      if (related(a, b) != (out.block[a] == out.block[b])) {
        out.failure = "relation is not transitive";
        out.witness = {a, b};
        return out;
      }

  std::map<std::pair<Elem, Elem>, std::pair<Elem, std::pair<Elem, Elem>>> image;
  for (Elem a = 0; a < n; ++a)
    for (Elem b = 0; b < n; ++b) {
      auto s = e.add(a, b);
      if (!s)
        continue;
      auto key = std::make_pair(out.block[a], out.block[b]);
      auto [it, fresh] = image.emplace(key, std::make_pair(out.block[*s],
                                                           std::make_pair(a, b)));
      if (!fresh && it->second.first != out.block[*s]) {
        out.failure = "relation is not compatible with +";
        out.witness = {it->second.second.first, it->second.second.second, a, b};
        return out;
      }
    }
  out.is_congruence = true;
  return out;
}

Quotient quotient(Gpea const &e, Ideal const &ideal)
{
  auto congruence = congruence_from_normal_ideal(e, ideal);
  if (!congruence.is_congruence)
    throw PreconditionError("no quotient: " + congruence.failure);

  std::size_t const n = e.size();
  std::vector<Elem> reps;
  std::vector<Elem> index_of_block(n, kUndefined);
  for (Elem a = 0; a < n; ++a)
    if (congruence.block[a] == a) {
      index_of_block[a] = static_cast<Elem>(reps.size());
      reps.push_back(a);
    }

  std::vector<Elem> block_of(n);
  for (Elem a = 0; a < n; ++a)
    block_of[a] = index_of_block[congruence.block[a]];

  PartialTable table(reps.size());
  for (Elem a = 0; a < n; ++a)
    for (Elem b = 0; b < n; ++b)
      if (auto s = e.add(a, b))
        table.set(block_of[a], block_of[b], block_of[*s]);

  std::vector<std::string> labels;
  for (Elem r : reps)
    labels.push_back("[" + e.label(r) + "]");
  return Quotient{Gpea::make(std::move(table), block_of[e.zero()],
                             std::move(labels)),
                  std::move(block_of), std::move(reps)};
}

KiteIdealReport kite_lower_ideal(ExplicitKite const &kite, Ideal const &h)
{
  Gpea const &base = kite.base();
  if (!is_ideal(base, h.members) || !is_normal(base, h))
    throw UsageError("H is not a normal ideal of the base");

  KiteIdealReport out;
  for (Elem x = 0; x < kite.block_size(); ++x) {
    auto const &coords = kite.element(x).coords;
    if (std::all_of(coords.begin(), coords.end(),
                    [&](Elem c) { return h.contains(c); }))
      out.ideal.members.push_back(x);
  }
  Gpea const &k = kite.algebra().gpea();
  out.is_ideal = is_ideal(k, out.ideal.members);
  out.is_normal = out.is_ideal && is_normal(k, out.ideal);
  if (h.size() == base.size())
    out.is_maximal = out.is_ideal && is_maximal_ideal(k, out.ideal);
  return out;
}

std::vector<Elem> coordinate_projection(ExplicitKite const &kite,
                                        Ideal const &j, std::size_t index)
{
  std::set<Elem> out;
  for (Elem x : j.members) {
    auto const &el = kite.element(x);
    if (el.sort != Sort::Lower)
      throw UsageError("projection needs lower elements only");
    if (index >= el.coords.size())
      throw UsageError("coordinate index out of range");
    out.insert(el.coords[index]);
  }
  return {out.begin(), out.end()};
}

std::string to_string(Ideal const &ideal, Gpea const &e)
{
  std::string out = "{";
  for (std::size_t k = 0; k < ideal.members.size(); ++k)
    out += (k ? ", " : "") + e.label(ideal.members[k]);
  return out + "}";
}

} // namespace kitelab
