#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include <boost/multiprecision/gmp.hpp>

#include "kitelab/core.hpp"
#include "kitelab/lazy.hpp"

namespace kitelab {

using Rational = boost::multiprecision::mpq_rational;

/// s(x) for every carrier index x.
using StateValues = std::vector<Rational>;

enum class StateViolation
{
  None,
  Size,          // wrong number of values
  Domain,        // a value outside [0, 1]
  Normalization, // s(1) != 1
  Additivity     // s(a + b) != s(a) + s(b)
};

struct StateCheck
{
  StateViolation violation = StateViolation::None;
  /// Domain: {x}; Normalization: {top}; Additivity: {a, b, a + b}.
  std::vector<Elem> witness;

  bool is_state() const { return violation == StateViolation::None; }
};

StateCheck is_state(Pea const &pea, StateValues const &s);

inline constexpr std::size_t kDefaultStateCarrier = 24;

/// Extreme points of the state space, ascending lexicographically. Empty
/// when the PEA has no state. Throws SizeError above cap.
std::vector<StateValues> find_states(Pea const &pea,
                                     std::size_t cap = kDefaultStateCarrier);

/// { a : s(a) = 0 }. Throws UsageError unless s is a state.
std::vector<Elem> kernel(Pea const &pea, StateValues const &s);

std::string to_string(Rational const &q);

struct SampledStateCheck
{
  bool holds = true;
  std::size_t samples = 0;
  std::string failure;
};

/// The map 0 on the lower sort and 1 on the upper sort, checked on sampled
/// defined sums of every sort pattern.
SampledStateCheck sampled_designated_state(LazyKite const &kite,
                                           std::size_t samples,
                                           std::uint64_t seed,
                                           Value bound = 50);

} // namespace kitelab
