#pragma once

// Brute-force oracles written directly against the addition table. They share
// no code with the library beyond PartialTable access, so a test comparing the
// two compares independent computations.

#include <algorithm>
#include <optional>
#include <string>
#include <vector>

#include "kitelab/core.hpp"
#include "kitelab/io.hpp"

namespace oracle {

using kitelab::Elem;
using kitelab::Gpea;
using kitelab::Pea;

inline std::string fixture(std::string const &name)
{
  return std::string(KITELAB_FIXTURES) + "/" + name;
}

inline std::optional<Elem> sum(Gpea const &e, Elem a, Elem b)
{
  return e.table().at(a, b);
}

/// a <= b iff a + c = b for some c.
inline bool leq(Gpea const &e, Elem a, Elem b)
{
  for (Elem c = 0; c < e.size(); ++c)
    if (sum(e, a, c) == b)
      return true;
  return false;
}

/// Unique x with x + a = top, by search.
inline Elem minus(Pea const &p, Elem a)
{
  for (Elem x = 0; x < p.size(); ++x)
    if (sum(p.gpea(), x, a) == p.top())
      return x;
  return kitelab::kUndefined;
}

inline Elem tilde(Pea const &p, Elem a)
{
  for (Elem x = 0; x < p.size(); ++x)
    if (sum(p.gpea(), a, x) == p.top())
      return x;
  return kitelab::kUndefined;
}

/// com over partial sums: both orders agree on definedness and value.
inline bool com(Gpea const &e, Elem a, Elem b)
{
  for (Elem x = 0; x < e.size(); ++x)
    for (Elem y = 0; y < e.size(); ++y)
      if (leq(e, x, a) && leq(e, y, b) && sum(e, x, y) != sum(e, y, x))
        return false;
  return true;
}

enum class Level
{
  RDP,
  RDP1,
  RDP2
};

/// Full search over all 4-tuples of candidates for every matching quadruple.
inline bool rdp(Gpea const &e, Level level)
{
  std::size_t const n = e.size();
  auto disjoint = [&](Elem x, Elem y) {
    for (Elem z = 0; z < n; ++z)
      if (z != e.zero() && leq(e, z, x) && leq(e, z, y))
        return false;
    return true;
  };
  for (Elem a1 = 0; a1 < n; ++a1)
    for (Elem a2 = 0; a2 < n; ++a2)
      for (Elem b1 = 0; b1 < n; ++b1)
        for (Elem b2 = 0; b2 < n; ++b2) {
          auto s = sum(e, a1, a2);
          if (!s || sum(e, b1, b2) != s)
            continue;
          bool found = false;
          for (Elem c11 = 0; c11 < n && !found; ++c11)
            for (Elem c12 = 0; c12 < n && !found; ++c12)
              for (Elem c21 = 0; c21 < n && !found; ++c21)
                for (Elem c22 = 0; c22 < n && !found; ++c22) {
                  if (sum(e, c11, c12) != a1 || sum(e, c21, c22) != a2 ||
                      sum(e, c11, c21) != b1 || sum(e, c12, c22) != b2)
                    continue;
                  if (level == Level::RDP1 && !oracle::com(e, c12, c21))
                    continue;
                  if (level == Level::RDP2 && !disjoint(c12, c21))
                    continue;
                  found = true;
                }
          if (!found)
            return false;
        }
  return true;
}

inline bool rip(Gpea const &e)
{
  std::size_t const n = e.size();
  for (Elem a1 = 0; a1 < n; ++a1)
    for (Elem a2 = 0; a2 < n; ++a2)
      for (Elem b1 = 0; b1 < n; ++b1)
        for (Elem b2 = 0; b2 < n; ++b2) {
          if (!(leq(e, a1, b1) && leq(e, a1, b2) && leq(e, a2, b1) &&
                leq(e, a2, b2)))
            continue;
          bool found = false;
          for (Elem c = 0; c < n && !found; ++c)
            found = leq(e, a1, c) && leq(e, a2, c) && leq(e, c, b1) &&
                    leq(e, c, b2);
          if (!found)
            return false;
        }
  return true;
}

inline bool is_ideal(Gpea const &e, std::vector<char> const &in)
{
  std::size_t const n = e.size();
  if (!in[e.zero()])
    return false;
  for (Elem x = 0; x < n; ++x)
    for (Elem y = 0; y < n; ++y) {
      if (in[y] && leq(e, x, y) && !in[x])
        return false;
      auto s = sum(e, x, y);
      if (in[x] && in[y] && s && !in[*s])
        return false;
    }
  return true;
}

/// Every subset, filtered. Only for small carriers.
inline std::vector<std::vector<Elem>> ideals(Gpea const &e)
{
  std::size_t const n = e.size();
  std::vector<std::vector<Elem>> out;
  for (unsigned long mask = 0; mask < (1ul << n); ++mask) {
    std::vector<char> in(n);
    for (Elem x = 0; x < n; ++x)
      in[x] = (mask >> x) & 1u;
    if (!is_ideal(e, in))
      continue;
    std::vector<Elem> members;
    for (Elem x = 0; x < n; ++x)
      if (in[x])
        members.push_back(x);
    out.push_back(members);
  }
  std::sort(out.begin(), out.end());
  return out;
}

inline bool is_normal(Gpea const &e, std::vector<Elem> const &members)
{
  for (Elem x = 0; x < e.size(); ++x) {
    std::vector<Elem> left, right;
    for (auto y : members) {
      if (auto s = sum(e, x, y))
        left.push_back(*s);
      if (auto s = sum(e, y, x))
        right.push_back(*s);
    }
    std::sort(left.begin(), left.end());
    std::sort(right.begin(), right.end());
    left.erase(std::unique(left.begin(), left.end()), left.end());
    right.erase(std::unique(right.begin(), right.end()), right.end());
    if (left != right)
      return false;
  }
  return true;
}

inline Gpea load_gpea(std::string const &name)
{
  return kitelab::validate(kitelab::read_algebra_file(fixture(name))).gpea;
}

inline Pea load_pea(std::string const &name)
{
  return *kitelab::validate(kitelab::read_algebra_file(fixture(name))).pea;
}

} // namespace oracle
