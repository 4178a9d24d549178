#pragma once

#include <map>
#include <span>
#include <string>
#include <vector>

#include "benchsel/instance_key.hpp"

namespace benchsel {

/// One (instance, algorithm, run) observation: best target precision reached
/// under the fixed budget, lower is better.
struct RunObservation {
  InstanceKey key;
  std::string algorithm;
  int run_index = 0;
  double value = 0.0;

  bool operator==(const RunObservation&) const = default;
};

/// Raw run distributions consumed by the ranking stage. Construction sorts
/// records by (key, algorithm, run) and enforces that every (key, algorithm)
/// pair carries run indices exactly {0..R-1}. Immutable after construction.
class PerformanceTable {
 public:
  PerformanceTable() = default;
  explicit PerformanceTable(std::vector<RunObservation> records);

  const std::vector<RunObservation>& records() const { return records_; }
  std::size_t size() const { return records_.size(); }

  /// Distinct algorithm names, sorted.
  std::vector<std::string> algorithms() const;
  /// Distinct instance keys, sorted.
  std::vector<InstanceKey> instances() const;

  /// Run values for one (instance, algorithm) pair, ordered by run index.
  /// Throws IntegrityError naming the hole when the pair is absent.
  std::span<const double> runs(const InstanceKey& key,
                               const std::string& algorithm) const;
  bool has(const InstanceKey& key, const std::string& algorithm) const;

  bool operator==(const PerformanceTable&) const = default;

 private:
  std::vector<RunObservation> records_;
  // (first record offset, run count) per (key, algorithm), plus the values
  // repacked contiguously in run order for cheap span access.
  std::map<std::pair<InstanceKey, std::string>, std::pair<std::size_t, std::size_t>>
      index_;
  std::vector<double> packed_values_;
};

/// Loads performance CSV: suite,problem_id,instance_id,dimension,algorithm,
/// run,value. Leading '#' lines are comments. Header-only file -> empty table.
PerformanceTable load_performance_table(const std::string& path);

/// Inverse of load_performance_table; 17-significant-digit values.
void save_performance_table(const PerformanceTable& table,
                            const std::string& path,
                            const std::vector<std::string>& comments = {});

}  // namespace benchsel
