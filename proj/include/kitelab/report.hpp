#pragma once

#include <cstdint>
#include <filesystem>
#include <string>

#include <json.hpp>

#include "kitelab/budget.hpp"
#include "kitelab/fuzz.hpp"

namespace kitelab {

struct AuditOptions
{
  Budget budget;
  std::uint64_t seed = 42;
  /// Instances in the fuzz section; 0 skips it.
  std::size_t fuzz_count = 50;
};

/// Everything the library can say about one algebra file. Files that fail
/// to parse or validate produce an entry with an "error" field.
nlohmann::ordered_json audit_file(std::filesystem::path const &path,
                                  Budget const &budget);

/// Audits every *.gpea and *.pea file of `directory` in name order, then
/// runs a seeded fuzz pass. Output depends only on the files and options.
nlohmann::ordered_json audit_directory(std::filesystem::path const &directory,
                                       AuditOptions const &options);

nlohmann::ordered_json fuzz_summary(FuzzResult const &result);

/// Indented key: value rendering of an audit.
std::string render_text(nlohmann::ordered_json const &report);

} // namespace kitelab
