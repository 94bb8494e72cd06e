#pragma once

#include <cstddef>

#include "kitelab/core.hpp"

namespace kitelab::standard {

/// {0}
Gpea trivial();

/// C_k = {0, ..., k-1}; a+b defined iff a+b <= k-1.
Gpea chain(std::size_t k);
/// C_k with top k-1.
Pea chain_pea(std::size_t k);

/// Componentwise product; (x, y) has index x * |F| + y.
Gpea product(Gpea const &e, Gpea const &f);
Pea product(Pea const &e, Pea const &f);

/// The Boolean algebra 2^2 = C_2 x C_2 with top.
Pea boolean_square();

/// MO2 = {0, a, a', b, b', 1} with only a+a' = b+b' = 1 and unit sums.
Pea mo2();

/// {0, x_1, ..., x_{n-1}} where only sums with 0 are defined.
Gpea unit_sums_only(std::size_t n);

} // namespace kitelab::standard
