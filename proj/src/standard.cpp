#include "kitelab/standard.hpp"

#include <string>
#include <vector>

#include "kitelab/errors.hpp"

namespace kitelab::standard {

Gpea trivial()
{
  PartialTable t(1);
  t.set(0, 0, 0);
  return Gpea::make(std::move(t), 0);
}

Gpea chain(std::size_t k)
{
  if (k == 0)
    throw UsageError("chain needs at least one element");
  PartialTable t(k);
  for (Elem a = 0; a < k; ++a)
    for (Elem b = 0; a + b < k; ++b)
      t.set(a, b, a + b);
  return Gpea::make(std::move(t), 0);
}

Pea chain_pea(std::size_t k)
{
  return Pea::make(chain(k), static_cast<Elem>(k - 1));
}

namespace {

PartialTable product_table(Gpea const &e, Gpea const &f)
{
  std::size_t const m = f.size();
  PartialTable t(e.size() * m);
  for (Elem x1 = 0; x1 < e.size(); ++x1)
    for (Elem y1 = 0; y1 < m; ++y1)
      for (Elem x2 = 0; x2 < e.size(); ++x2)
        for (Elem y2 = 0; y2 < m; ++y2) {
          auto x = e.add(x1, x2);
          auto y = f.add(y1, y2);
          if (x && y)
            t.set(static_cast<Elem>(x1 * m + y1),
                  static_cast<Elem>(x2 * m + y2),
                  static_cast<Elem>(*x * m + *y));
        }
  return t;
}

} // namespace

Gpea product(Gpea const &e, Gpea const &f)
{
  return Gpea::make(product_table(e, f),
                    static_cast<Elem>(e.zero() * f.size() + f.zero()));
}

Pea product(Pea const &e, Pea const &f)
{
  return Pea::make(product(e.gpea(), f.gpea()),
                   static_cast<Elem>(e.top() * f.size() + f.top()));
}

Pea boolean_square()
{
  return product(chain_pea(2), chain_pea(2));
}

Pea mo2()
{
  // 0, a, a', b, b', 1
  PartialTable t(6);
  for (Elem x = 0; x < 6; ++x) {
    t.set(0, x, x);
    t.set(x, 0, x);
  }
  t.set(1, 2, 5);
  t.set(2, 1, 5);
  t.set(3, 4, 5);
  t.set(4, 3, 5);
  std::vector<std::string> labels{"0", "a", "a'", "b", "b'", "1"};
  return Pea::make(Gpea::make(std::move(t), 0, std::move(labels)), 5);
}

Gpea unit_sums_only(std::size_t n)
{
  if (n == 0)
    throw UsageError("carrier must be nonempty");
  PartialTable t(n);
  for (Elem x = 0; x < n; ++x) {
    t.set(0, x, x);
    t.set(x, 0, x);
  }
  return Gpea::make(std::move(t), 0);
}

} // namespace kitelab::standard
