#include "kitelab/connectivity.hpp"

#include <algorithm>

#include "kitelab/errors.hpp"
#include "kitelab/riesz.hpp"
#include "kitelab/standard.hpp"

namespace kitelab {

ComponentPartition connected_components(Permutation const &lambda,
                                        Permutation const &rho)
{
  if (lambda.size() != rho.size())
    throw UsageError("lambda and rho act on index sets of different size");
  ComponentPartition out;
  out.sigma = rho.after(lambda.inverted());
  std::size_t const n = lambda.size();
  out.component_of.assign(n, n);
  for (std::uint32_t start = 0; start < n; ++start) {
    if (out.component_of[start] != n)
      continue;
    std::vector<std::uint32_t> orbit;
    std::uint32_t i = start;
    do {
      out.component_of[i] = out.components.size();
      orbit.push_back(i);
      i = out.sigma(i);
    } while (i != start);
    std::sort(orbit.begin(), orbit.end());
    out.components.push_back(std::move(orbit));
  }
  return out;
}

bool reachable(Permutation const &lambda, Permutation const &rho,
               std::uint32_t i, std::uint32_t j)
{
  auto forward = rho.after(lambda.inverted());
  auto backward = lambda.after(rho.inverted());
  std::uint32_t x = i, y = i;
  for (std::size_t m = 0; m <= lambda.size(); ++m) {
    if (x == j || y == j)
      return true;
    x = forward(x);
    y = backward(y);
  }
  return false;
}

Canonical canonicalize(Permutation const &lambda, Permutation const &rho)
{
  auto parts = connected_components(lambda, rho);
  if (parts.components.size() != 1)
    throw UsageError("lambda, rho have " +
                     std::to_string(parts.components.size()) +
                     " components; a single one is needed");
  std::size_t const n = lambda.size();
  std::vector<std::uint32_t> alpha(n);
  std::uint32_t i = 0; // the least index
  for (std::size_t k = 0; k < n; ++k) {
    alpha[i] = static_cast<std::uint32_t>((n - k) % n);
    i = parts.sigma(i);
  }
  Canonical out;
  out.upper = Permutation(alpha);
  out.lower = out.upper.after(lambda);
  out.lambda = out.upper.after(lambda).after(out.lower.inverted());
  out.rho = out.upper.after(rho).after(out.lower.inverted());
  return out;
}

std::vector<Elem> relabeling_map(ExplicitKite const &kite,
                                 ExplicitKite const &relabeled,
                                 Canonical const &canonical)
{
  std::vector<Elem> h(kite.size());
  for (Elem x = 0; x < kite.size(); ++x) {
    auto const &el = kite.element(x);
    auto const &move = el.sort == Sort::Lower ? canonical.lower : canonical.upper;
    KiteElement image{el.sort, std::vector<Elem>(el.coords.size())};
    for (std::uint32_t p = 0; p < el.coords.size(); ++p)
      image.coords[move(p)] = el.coords[p];
    h[x] = relabeled.index_of(image);
  }
  return h;
}

bool is_isomorphism(Gpea const &e, Gpea const &f, std::vector<Elem> const &h)
{
  if (e.size() != f.size() || h.size() != e.size())
    return false;
  std::vector<char> hit(f.size(), 0);
  for (Elem y : h) {
    if (y >= f.size() || hit[y])
      return false;
    hit[y] = 1;
  }
  for (Elem a = 0; a < e.size(); ++a)
    for (Elem b = 0; b < e.size(); ++b) {
      auto s = e.add(a, b);
      auto t = f.add(h[a], h[b]);
      if (s.has_value() != t.has_value() || (s && h[*s] != *t))
        return false;
    }
  return true;
}

IrreducibilityCheck irreducibility_check(ExplicitKite const &kite,
                                         IrreducibilityCaps caps)
{
  Gpea const &base = kite.base();
  if (base.is_trivial())
    throw PreconditionError("the base is trivial");
  if (!is_directed(base))
    throw PreconditionError("the base is not directed");
  if (!is_lr_weakly_commutative(base, kite.lambda(), kite.rho()))
    throw PreconditionError("the base is not lambda,rho-weakly commutative");
  auto rdp1 = check_rdp1(kite.algebra().gpea(), caps.rdp);
  if (!rdp1.holds)
    throw PreconditionError("the kite fails RDP1");

  IrreducibilityCheck out;
  out.base_least = least_nontrivial_normal_ideal(base, caps.ideals);
  out.kite_least =
    least_nontrivial_normal_ideal(kite.algebra().gpea(), caps.ideals);
  out.base_irreducible = out.base_least.has_value();
  out.single_component =
    connected_components(kite.lambda(), kite.rho()).components.size() == 1;
  out.predicted = out.base_irreducible && out.single_component;
  out.observed = out.kite_least.has_value();
  return out;
}

SubdirectDecomposition subdirect_decompose(ExplicitKite const &kite)
{
  auto parts = connected_components(kite.lambda(), kite.rho());
  auto const &lambda = kite.lambda();
  auto const &rho = kite.rho();

  SubdirectDecomposition out;
  for (auto const &component : parts.components) {
    std::vector<std::uint32_t> lower_l, lower_r;
    for (auto i : component) {
      lower_l.push_back(lambda.inverse(i));
      lower_r.push_back(rho.inverse(i));
    }
    std::sort(lower_l.begin(), lower_l.end());
    std::sort(lower_r.begin(), lower_r.end());
    if (lower_l != lower_r)
      throw StructuralError("lambda^-1(C) differs from rho^-1(C)");

    auto local = [&](std::vector<std::uint32_t> const &set, std::uint32_t i) {
      return static_cast<std::uint32_t>(
        std::lower_bound(set.begin(), set.end(), i) - set.begin());
    };
    std::vector<std::uint32_t> lam, rh;
    std::vector<std::size_t> lower_labels, upper_labels;
    for (auto j : lower_l) {
      lam.push_back(local(component, lambda(j)));
      rh.push_back(local(component, rho(j)));
      lower_labels.push_back(kite.lower_labels()[j]);
    }
    for (auto i : component)
      upper_labels.push_back(kite.upper_labels()[i]);

    out.factors.push_back(ExplicitKite::build(
      kite.base(), Permutation(lam), Permutation(rh), lower_labels,
      upper_labels, std::max<std::size_t>(kite.size(), 2)));
    out.lower_positions.push_back(lower_l);
    out.upper_positions.push_back(component);
  }

  std::size_t const n = kite.size();
  std::size_t const k = out.factors.size();
  out.embedding.assign(n, std::vector<Elem>(k));
  for (Elem x = 0; x < n; ++x) {
    auto const &el = kite.element(x);
    for (std::size_t f = 0; f < k; ++f) {
      auto const &positions =
        el.sort == Sort::Lower ? out.lower_positions[f] : out.upper_positions[f];
      KiteElement part{el.sort, {}};
      for (auto p : positions)
        part.coords.push_back(el.coords[p]);
      out.embedding[x][f] = out.factors[f].index_of(part);
    }
  }

  auto sorted = out.embedding;
  std::sort(sorted.begin(), sorted.end());
  out.injective = std::adjacent_find(sorted.begin(), sorted.end()) == sorted.end();

  out.surjective.assign(k, false);
  for (std::size_t f = 0; f < k; ++f) {
    std::vector<char> hit(out.factors[f].size(), 0);
    for (Elem x = 0; x < n; ++x)
      hit[out.embedding[x][f]] = 1;
    out.surjective[f] = std::all_of(hit.begin(), hit.end(),
                                    [](char c) { return c != 0; });
  }

  Gpea const &whole = kite.algebra().gpea();
  out.preserves = out.reflects = true;
  for (Elem x = 0; x < n; ++x)
    for (Elem y = 0; y < n; ++y) {
      auto s = whole.add(x, y);
      bool all_defined = true;
      bool values_match = true;
      for (std::size_t f = 0; f < k; ++f) {
        auto t = out.factors[f].algebra().add(out.embedding[x][f],
                                              out.embedding[y][f]);
        if (!t)
          all_defined = false;
        else if (s && out.embedding[*s][f] != *t)
          values_match = false;
      }
      if (s && (!all_defined || !values_match))
        out.preserves = false;
      if (!s && all_defined)
        out.reflects = false;
    }
  return out;
}

std::vector<Elem> SubdirectDecomposition::product_indices() const
{
  std::vector<Elem> out(embedding.size(), 0);
  for (std::size_t x = 0; x < embedding.size(); ++x) {
    std::size_t index = 0;
    for (std::size_t f = 0; f < factors.size(); ++f)
      index = index * factors[f].size() + embedding[x][f];
    out[x] = static_cast<Elem>(index);
  }
  return out;
}

Pea SubdirectDecomposition::product() const
{
  if (factors.empty())
    throw UsageError("no factors");
  Pea out = factors.front().algebra();
  for (std::size_t f = 1; f < factors.size(); ++f)
    out = standard::product(out, factors[f].algebra());
  return out;
}

} // namespace kitelab
