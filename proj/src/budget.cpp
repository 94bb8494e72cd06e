#include "kitelab/budget.hpp"

#include <charconv>
#include <cstdlib>
#include <string>

#include "kitelab/errors.hpp"

namespace kitelab {

namespace {

std::size_t to_size(std::string_view text)
{
  std::size_t value = 0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || ptr != text.data() + text.size() || value == 0)
    throw UsageError("bad budget value '" + std::string(text) + "'");
  return value;
}

} // namespace

Budget Budget::parse(std::string_view text, Budget base)
{
  if (text.find('=') == std::string_view::npos) {
    std::size_t v = to_size(text);
    return Budget{v, v, v, v};
  }

  Budget out = base;
  while (!text.empty()) {
    auto comma = text.find(',');
    auto item = text.substr(0, comma);
    text = comma == std::string_view::npos ? std::string_view{}
                                           : text.substr(comma + 1);
    auto eq = item.find('=');
    if (eq == std::string_view::npos)
      throw UsageError("bad budget entry '" + std::string(item) + "'");
    auto key = item.substr(0, eq);
    auto value = to_size(item.substr(eq + 1));
    if (key == "kite")
      out.kite_carrier = value;
    else if (key == "rdp")
      out.rdp_carrier = value;
    else if (key == "ideals")
      out.ideal_carrier = value;
    else if (key == "states")
      out.state_carrier = value;
    else
      throw UsageError("unknown budget key '" + std::string(key) + "'");
  }
  return out;
}

Budget Budget::parse(std::string_view text)
{
  return parse(text, Budget{});
}

Budget Budget::from_env()
{
  char const *env = std::getenv("KITELAB_BUDGET");
  if (!env || !*env)
    return Budget{};
  return parse(env);
}

} // namespace kitelab
