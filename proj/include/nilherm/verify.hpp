#pragma once

// Seeded verification suites over the catalog. Every suite is deterministic
// for a fixed seed and thread count.

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

#include "nilherm/ghclass.hpp"

namespace nilherm {

struct Assertion {
  std::string claim;
  std::string ref;
  std::size_t n_samples = 0;
  bool pass = false;
  std::vector<std::string> witnesses;
  /// Range of the probed quantity; only meaningful when `measured`.
  bool measured = false;
  double min_norm = 0.0;
  double max_norm = 0.0;
  /// Samples still indeterminate after all resampling attempts.
  std::size_t indeterminate = 0;
};

struct Report {
  std::string suite;
  std::uint64_t seed = 0;
  std::vector<Assertion> assertions;
  std::vector<std::string> info;

  bool pass() const;
  nlohmann::json to_json() const;
  std::string summary() const;
};

struct VerifyOptions {
  std::uint64_t seed = 0;
  Thresholds thresholds;
  /// Worker threads; 0 picks std::thread::hardware_concurrency().
  unsigned threads = 0;
};

Report verify_theorem1(const VerifyOptions& options = {});
Report verify_theorem2(const VerifyOptions& options = {});
Report verify_theorem3(const VerifyOptions& options = {});
Report verify_prop4(const VerifyOptions& options = {});
Report verify_oracles(const VerifyOptions& options = {});

/// Dispatch by name: theorem1, theorem2, theorem3, prop4, oracles.
/// Throws InvalidInput for unknown names.
Report run_suite(std::string_view name, const VerifyOptions& options = {});

}  // namespace nilherm
