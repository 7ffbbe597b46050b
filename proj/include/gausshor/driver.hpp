#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace gausshor {

/// One simulated run of a factoring procedure.
struct TrialRecord {
  std::uint64_t index = 0;
  std::int64_t b_outcome = 0;
  std::optional<std::int64_t> a_outcome;
  std::optional<std::int64_t> factor;
  std::string note;
};

struct DriverResult {
  bool success = false;
  std::int64_t n = 0;
  std::int64_t factor = 0;  // 0 when no factor was found
  std::uint64_t trials = 0;
  std::uint64_t seed = 0;
  std::vector<TrialRecord> records;
};

}  // namespace gausshor
