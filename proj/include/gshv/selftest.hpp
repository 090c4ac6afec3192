#pragma once

#include <cstdint>
#include <deque>
#include <string>

#include <json.hpp>

namespace gshv {

struct PropertyResult {
  std::string name;
  int pass = 0;
  int fail = 0;
  std::string first_failure;
};

struct SelftestSummary {
  std::uint64_t seed = 0;
  int cases = 0;
  // deque: the driver keeps references to entries while appending more
  std::deque<PropertyResult> properties;

  bool all_ok() const;
  /// A failing ladder property means the classification equivalences broke:
  /// the CLI maps it to exit code 2.
  bool equivalence_violation() const;
};

/// Runs every module's invariant suite on seeded random instances.
/// Case seeds are master_seed + 1000003 * property_index + case_index,
/// fed through splitmix64 by the generator.
SelftestSummary run_selftest(std::uint64_t seed, int cases);

nlohmann::json selftest_json(const SelftestSummary& summary);

}  // namespace gshv
