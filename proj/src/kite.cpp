#include "kitelab/kite.hpp"

#include <algorithm>
#include <charconv>
#include <numeric>
#include <set>

#include "kitelab/errors.hpp"

namespace kitelab {

Permutation::Permutation(std::vector<std::uint32_t> image)
  : image_(std::move(image)), inverse_(image_.size(), 0)
{
  std::vector<char> hit(image_.size(), 0);
  for (std::uint32_t j = 0; j < image_.size(); ++j) {
    auto i = image_[j];
    if (i >= image_.size() || hit[i])
      throw StructuralError("permutation image is not a bijection");
    hit[i] = 1;
    inverse_[i] = j;
  }
}

Permutation Permutation::identity(std::size_t n)
{
  std::vector<std::uint32_t> image(n);
  std::iota(image.begin(), image.end(), 0u);
  return Permutation(std::move(image));
}

Permutation Permutation::cycle(std::size_t n)
{
  std::vector<std::uint32_t> image(n);
  for (std::uint32_t i = 0; i < n; ++i)
    image[i] = static_cast<std::uint32_t>((i + n - 1) % n);
  return Permutation(std::move(image));
}

Permutation Permutation::inverted() const
{
  return Permutation(inverse_);
}

Permutation Permutation::after(Permutation const &inner) const
{
  if (inner.size() != size())
    throw UsageError("permutation sizes differ");
  std::vector<std::uint32_t> image(size());
  for (std::uint32_t j = 0; j < size(); ++j)
    image[j] = image_[inner(j)];
  return Permutation(std::move(image));
}

bool Permutation::is_identity() const
{
  for (std::uint32_t j = 0; j < size(); ++j)
    if (image_[j] != j)
      return false;
  return true;
}

Permutation permutation_from_spec(std::string_view spec, std::size_t n)
{
  if (spec == "id" || spec == "identity")
    return Permutation::identity(n);
  if (spec == "cycle")
    return Permutation::cycle(n);
  if (spec == "swap") {
    if (n < 2)
      throw UsageError("swap needs at least two indices");
    auto image = Permutation::identity(n).image();
    std::swap(image[0], image[1]);
    return Permutation(std::move(image));
  }
  if (spec.starts_with("shift:")) {
    auto text = spec.substr(6);
    long long k = 0;
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), k);
    if (ec != std::errc() || ptr != text.data() + text.size() || n == 0)
      throw UsageError("bad shift permutation '" + std::string(spec) + "'");
    std::vector<std::uint32_t> image(n);
    auto sn = static_cast<long long>(n);
    for (std::size_t i = 0; i < n; ++i)
      image[i] = static_cast<std::uint32_t>(
        ((static_cast<long long>(i) + k) % sn + sn) % sn);
    return Permutation(std::move(image));
  }

  std::vector<std::uint32_t> image;
  std::size_t pos = 0;
  while (pos < spec.size()) {
    while (pos < spec.size() && (spec[pos] == ',' || spec[pos] == ' '))
      ++pos;
    if (pos == spec.size())
      break;
    std::uint32_t v = 0;
    auto [ptr, ec] = std::from_chars(spec.data() + pos,
                                     spec.data() + spec.size(), v);
    if (ec != std::errc())
      throw UsageError("bad permutation '" + std::string(spec) + "'");
    image.push_back(v);
    pos = static_cast<std::size_t>(ptr - spec.data());
  }
  if (image.size() != n)
    throw UsageError("permutation '" + std::string(spec) + "' has " +
                     std::to_string(image.size()) + " entries, expected " +
                     std::to_string(n));
  try {
    return Permutation(std::move(image));
  } catch (StructuralError const &) {
    throw UsageError("'" + std::string(spec) + "' is not a permutation");
  }
}

std::string to_string(Permutation const &perm)
{
  std::string out;
  for (std::size_t j = 0; j < perm.size(); ++j) {
    if (j)
      out += ' ';
    out += std::to_string(perm(static_cast<std::uint32_t>(j)));
  }
  return out;
}

std::string to_string(KiteElement const &x, Gpea const &base)
{
  std::string out = x.sort == Sort::Lower ? "L(" : "U(";
  for (std::size_t j = 0; j < x.coords.size(); ++j) {
    if (j)
      out += ',';
    out += base.label(x.coords[j]);
  }
  out += ')';
  return out;
}

bool is_lr_weakly_commutative(Gpea const &base, Permutation const &lambda,
                              Permutation const &rho)
{
  if (lambda.size() != rho.size())
    throw UsageError("lambda and rho act on index sets of different size");
  if (lambda == rho)
    return is_weakly_commutative(base);
  return is_total(base);
}

namespace {

std::size_t checked_block(std::size_t base_size, std::size_t arity,
                          std::size_t budget)
{
  std::size_t block = 1;
  for (std::size_t k = 0; k < arity; ++k) {
    if (block > budget / base_size)
      throw SizeError("kite carrier exceeds budget of " +
                      std::to_string(budget));
    block *= base_size;
  }
  if (block > budget / 2)
    throw SizeError("kite carrier " + std::to_string(2 * block) +
                    " exceeds budget of " + std::to_string(budget));
  return block;
}

std::vector<std::size_t> iota_labels(std::size_t n)
{
  std::vector<std::size_t> out(n);
  std::iota(out.begin(), out.end(), std::size_t{0});
  return out;
}

} // namespace

ExplicitKite ExplicitKite::build(Gpea base, Permutation lambda, Permutation rho,
                                 std::size_t budget)
{
  auto n = lambda.size();
  return build(std::move(base), std::move(lambda), std::move(rho),
               iota_labels(n), iota_labels(n), budget);
}

ExplicitKite ExplicitKite::build(Gpea base, Permutation lambda, Permutation rho,
                                 std::vector<std::size_t> lower_labels,
                                 std::vector<std::size_t> upper_labels,
                                 std::size_t budget)
{
  if (lambda.size() != rho.size())
    throw UsageError("lambda and rho act on index sets of different size");
  if (lower_labels.size() != lambda.size() ||
      upper_labels.size() != lambda.size())
    throw UsageError("index labels do not match permutation size");
  if (!is_lr_weakly_commutative(base, lambda, rho)) {
    if (lambda == rho)
      throw PreconditionError(
        "base is not weakly commutative, so the kite with lambda = rho is "
        "not defined");
    throw PreconditionError(
      "lambda != rho requires a total addition on the base; a finite "
      "nontrivial GPEA never has one, use the lazy representation");
  }
  checked_block(base.size(), lambda.size(), budget);
  return ExplicitKite(std::move(base), std::move(lambda), std::move(rho),
                      std::move(lower_labels), std::move(upper_labels), budget);
}

namespace {

std::vector<KiteElement> enumerate_elements(std::size_t base_size,
                                            std::size_t arity,
                                            std::size_t block)
{
  std::vector<KiteElement> out;
  out.reserve(2 * block);
  for (Sort sort : {Sort::Lower, Sort::Upper}) {
    std::vector<Elem> coords(arity, 0);
    for (std::size_t k = 0; k < block; ++k) {
      out.push_back(KiteElement{sort, coords});
      for (std::size_t pos = arity; pos-- > 0;) {
        if (++coords[pos] < base_size)
          break;
        coords[pos] = 0;
      }
    }
  }
  return out;
}

} // namespace

ExplicitKite::ExplicitKite(Gpea base, Permutation lambda, Permutation rho,
                           std::vector<std::size_t> lower_labels,
                           std::vector<std::size_t> upper_labels,
                           std::size_t budget)
  : base_(std::move(base)),
    lambda_(std::move(lambda)),
    rho_(std::move(rho)),
    lower_labels_(std::move(lower_labels)),
    upper_labels_(std::move(upper_labels)),
    block_(checked_block(base_.size(), lambda_.size(), budget)),
    elements_(enumerate_elements(base_.size(), lambda_.size(), block_)),
    algebra_(materialize(*this))
{}

Pea ExplicitKite::materialize(ExplicitKite const &self)
{
  std::size_t const n = self.size();
  PartialTable table(n);
  for (Elem x = 0; x < n; ++x)
    for (Elem y = 0; y < n; ++y) {
      auto z = self.add(self.elements_[x], self.elements_[y]);
      if (z)
        table.set(x, y, self.index_of(*z));
    }

  std::vector<std::string> labels;
  labels.reserve(n);
  for (auto const &e : self.elements_)
    labels.push_back(to_string(e, self.base_));

  return Pea::make(Gpea::make(std::move(table), self.index_of(self.zero()),
                              std::move(labels)),
                   self.index_of(self.one()));
}

void ExplicitKite::check_member(KiteElement const &x) const
{
  if (x.coords.size() != arity())
    throw UsageError("element has " + std::to_string(x.coords.size()) +
                     " coordinates, kite has " + std::to_string(arity()));
  for (Elem c : x.coords)
    if (c >= base_.size())
      throw UsageError("coordinate " + std::to_string(c) +
                       " is not an element of the base");
}

Elem ExplicitKite::index_of(KiteElement const &x) const
{
  check_member(x);
  std::size_t index = 0;
  for (Elem c : x.coords)
    index = index * base_.size() + c;
  if (x.sort == Sort::Upper)
    index += block_;
  return static_cast<Elem>(index);
}

KiteElement ExplicitKite::zero() const
{
  return KiteElement{Sort::Lower, std::vector<Elem>(arity(), base_.zero())};
}

KiteElement ExplicitKite::one() const
{
  return KiteElement{Sort::Upper, std::vector<Elem>(arity(), base_.zero())};
}

std::optional<KiteElement> ExplicitKite::add(KiteElement const &x,
                                             KiteElement const &y) const
{
  check_member(x);
  check_member(y);
  auto const n = static_cast<std::uint32_t>(arity());
  KiteElement out;

  if (x.sort == Sort::Upper && y.sort == Sort::Upper)
    return std::nullopt; // (I)

  if (x.sort == Sort::Upper) { // (II)
    out.sort = Sort::Upper;
    out.coords.resize(n);
    for (std::uint32_t i = 0; i < n; ++i) {
      Elem f = y.coords[rho_.inverse(i)];
      Elem a = x.coords[i];
      if (!base_.leq(f, a))
        return std::nullopt;
      out.coords[i] = base_.right_diff(f, a);
    }
    return out;
  }

  if (y.sort == Sort::Upper) { // (III)
    out.sort = Sort::Upper;
    out.coords.resize(n);
    for (std::uint32_t i = 0; i < n; ++i) {
      Elem f = x.coords[lambda_.inverse(i)];
      Elem a = y.coords[i];
      if (!base_.leq(f, a))
        return std::nullopt;
      out.coords[i] = base_.left_diff(a, f);
    }
    return out;
  }

  out.sort = Sort::Lower; // (IV)
  out.coords.resize(n);
  for (std::uint32_t j = 0; j < n; ++j) {
    auto s = base_.add(x.coords[j], y.coords[j]);
    if (!s)
      return std::nullopt;
    out.coords[j] = *s;
  }
  return out;
}

std::pair<KiteElement, KiteElement> ExplicitKite::neg(KiteElement const &x) const
{
  check_member(x);
  auto const n = static_cast<std::uint32_t>(arity());
  KiteElement minus, tilde;
  minus.coords.resize(n);
  tilde.coords.resize(n);
  if (x.sort == Sort::Upper) {
    minus.sort = tilde.sort = Sort::Lower;
    for (std::uint32_t j = 0; j < n; ++j) {
      minus.coords[j] = x.coords[lambda_(j)];
      tilde.coords[j] = x.coords[rho_(j)];
    }
  } else {
    minus.sort = tilde.sort = Sort::Upper;
    for (std::uint32_t i = 0; i < n; ++i) {
      minus.coords[i] = x.coords[rho_.inverse(i)];
      tilde.coords[i] = x.coords[lambda_.inverse(i)];
    }
  }
  return {std::move(minus), std::move(tilde)};
}

bool ExplicitKite::leq(KiteElement const &x, KiteElement const &y) const
{
  check_member(x);
  check_member(y);
  auto const n = static_cast<std::uint32_t>(arity());
  if (x.sort == Sort::Upper && y.sort == Sort::Lower)
    return false;
  for (std::uint32_t k = 0; k < n; ++k) {
    bool ok = true;
    if (x.sort == Sort::Lower && y.sort == Sort::Lower)
      ok = base_.leq(x.coords[k], y.coords[k]);
    else if (x.sort == Sort::Upper)
      ok = base_.leq(y.coords[k], x.coords[k]);
    else
      ok = base_.defined(y.coords[k], x.coords[lambda_.inverse(k)]);
    if (!ok)
      return false;
  }
  return true;
}

ExplicitKite build_kite_explicit(Gpea const &base, Permutation const &lambda,
                                 Permutation const &rho, std::size_t budget)
{
  return ExplicitKite::build(base, lambda, rho, budget);
}

std::optional<KiteElement> kite_add(ExplicitKite const &kite,
                                    KiteElement const &x, KiteElement const &y)
{
  return kite.add(x, y);
}

std::pair<KiteElement, KiteElement> kite_neg(ExplicitKite const &kite,
                                             KiteElement const &x)
{
  return kite.neg(x);
}

bool kite_leq(ExplicitKite const &kite, KiteElement const &x,
              KiteElement const &y)
{
  return kite.leq(x, y);
}

ExplicitKite unitization(Gpea const &base, std::size_t budget)
{
  return ExplicitKite::build(base, Permutation::identity(1),
                             Permutation::identity(1), budget);
}

std::optional<Elem> asymmetry_witness(Pea const &pea)
{
  for (Elem a = 0; a < pea.size(); ++a)
    if (pea.minus(a) != pea.tilde(a))
      return a;
  return std::nullopt;
}

bool is_symmetric(Pea const &pea)
{
  return !asymmetry_witness(pea).has_value();
}

std::vector<Elem> infinitesimals(Pea const &pea)
{
  std::vector<Elem> out;
  std::vector<char> seen(pea.size());
  for (Elem x = 0; x < pea.size(); ++x) {
    std::fill(seen.begin(), seen.end(), 0);
    Elem multiple = x;
    bool infinite = false;
    while (true) {
      if (seen[multiple]) {
        // the sequence of multiples is periodic from here on
        infinite = true;
        break;
      }
      seen[multiple] = 1;
      auto next = pea.add(multiple, x);
      if (!next)
        break;
      multiple = *next;
    }
    if (infinite)
      out.push_back(x);
  }
  return out;
}

std::optional<PerfectPartition> check_perfect(Pea const &pea)
{
  std::size_t const n = pea.size();
  auto e0 = infinitesimals(pea);
  std::vector<int> part(n, 1);
  for (Elem x : e0)
    part[x] = 0;

  // (a) E_i^- = E_i^~ = E_{1-i}
  std::set<Elem> minus_image[2], tilde_image[2], members[2];
  for (Elem x = 0; x < n; ++x) {
    members[part[x]].insert(x);
    minus_image[part[x]].insert(pea.minus(x));
    tilde_image[part[x]].insert(pea.tilde(x));
  }
  for (int i = 0; i < 2; ++i)
    if (minus_image[i] != members[1 - i] || tilde_image[i] != members[1 - i])
      return std::nullopt;

  // (b) sorts add, and (c) E_0 + E_0 is defined
  for (Elem x = 0; x < n; ++x)
    for (Elem y = 0; y < n; ++y) {
      auto s = pea.add(x, y);
      int sum = part[x] + part[y];
      if (!s) {
        if (sum == 0)
          return std::nullopt;
        continue;
      }
      if (sum > 1 || part[*s] != sum)
        return std::nullopt;
    }

  PerfectPartition out;
  for (Elem x = 0; x < n; ++x)
    (part[x] == 0 ? out.infinitesimal : out.coinfinitesimal).push_back(x);
  return out;
}

} // namespace kitelab
