#pragma once

#include <cstddef>
#include <string_view>

namespace kitelab {

/// Carrier caps for the exhaustive procedures.
struct Budget
{
  std::size_t kite_carrier = 20000;
  std::size_t rdp_carrier = 40;
  std::size_t ideal_carrier = 64;
  std::size_t state_carrier = 24;

  /// Parses KITELAB_BUDGET-style overrides: either a single number applied
  /// to every cap, or a comma list such as "rdp=200,kite=5000".
  /// Throws UsageError on malformed text.
  static Budget parse(std::string_view text);
  static Budget parse(std::string_view text, Budget base);

  /// Defaults, overridden by the KITELAB_BUDGET environment variable.
  static Budget from_env();
};

} // namespace kitelab
