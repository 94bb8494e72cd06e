#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "kitelab/core.hpp"

namespace kitelab {

struct FuzzConfig
{
  std::size_t min_size = 3;
  std::size_t max_size = 6;
  /// Probability that a candidate pair receives a sum before repair.
  double density = 0.5;
  std::uint64_t seed = 42;
  bool commutative = false;
  std::size_t count = 200;
  bool shrink = true;
  /// Also shrink and archive the first failure of each logged property.
  bool archive_logged = false;
};

/// Deletes non-unit table entries until GP1-GP4 hold, scanning repeatedly
/// until nothing changes. Entries with a zero operand are never touched, so
/// GP5 survives if it held on input. In commutative mode entries are
/// removed in mirrored pairs. Returns the number of deletions.
std::size_t repair_table(PartialTable &table, Elem zero, bool commutative);

/// One random instance: elements get positive weights, sums are only placed
/// where the weight of the result is the sum of the weights, then the table
/// is repaired. nullopt when the repaired table still fails validation.
std::optional<Gpea> random_gpea(std::mt19937_64 &rng, std::size_t size,
                                double density, bool commutative);

struct PropertyOutcome
{
  enum class Status
  {
    Held,
    Failed,
    Skipped
  };

  Status status = Status::Held;
  std::string detail;

  static PropertyOutcome held() { return {}; }
  static PropertyOutcome failed(std::string detail)
  { return {Status::Failed, std::move(detail)}; }
  static PropertyOutcome skipped(std::string detail)
  { return {Status::Skipped, std::move(detail)}; }
};

/// Asserted properties must never fail; logged ones are tallied only.
struct Property
{
  std::string name;
  bool asserted = true;
  std::function<PropertyOutcome(Gpea const &)> check;
};

std::vector<Property> const &property_registry();

/// Greedy reduction: drop elements, then single non-unit entries (mirrored
/// pairs when the input is commutative), keeping each step whose repaired
/// result still fails `property`.
Gpea shrink(Gpea const &failing, Property const &property);

struct PropertyTally
{
  std::string name;
  bool asserted = true;
  std::size_t held = 0;
  std::size_t failed = 0;
  std::size_t skipped = 0;
  std::string first_failure;
};

struct ArchivedCounterexample
{
  std::string property;
  std::string file_name;
  std::string text; // emitted algebra file
};

struct FuzzResult
{
  FuzzConfig config;
  std::vector<Gpea> corpus;
  std::size_t attempts = 0;
  std::size_t discarded = 0;
  std::size_t deletions = 0;
  std::vector<PropertyTally> tallies;
  std::vector<ArchivedCounterexample> archived;

  std::size_t asserted_failures() const;
};

/// Generates config.count instances and runs every registered property on
/// each. Counterexamples to asserted properties are shrunk and archived
/// (in memory; see write_archive).
FuzzResult fuzz(FuzzConfig const &config);

/// Corpus only, skipping the property run.
std::vector<Gpea> fuzz_corpus(FuzzConfig const &config,
                              std::size_t *attempts = nullptr,
                              std::size_t *discarded = nullptr,
                              std::size_t *deletions = nullptr);

/// Writes each archived counterexample into `directory`; returns the paths.
std::vector<std::string> write_archive(FuzzResult const &result,
                                       std::string const &directory);

} // namespace kitelab
