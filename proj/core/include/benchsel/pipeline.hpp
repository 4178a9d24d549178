#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace benchsel {

/// Exit codes shared by every subcommand.
enum ExitCode : int {
  kExitOk = 0,
  kExitConfigError = 2,
  kExitDataError = 3,
  kExitStrictWarning = 4,
};

/// Resolved configuration for the whole pipeline. Exactly one data source
/// must be active: input files (features/performance) xor the built-in
/// harness.
struct PipelineConfig {
  // Data source.
  std::string features_path;
  std::string performance_path;
  bool use_harness = false;

  // Harness parameters (desk-scale defaults; budget 0 means 2000 * dimension).
  int dimension = 5;
  long budget = 0;
  int runs = 30;
  double eps = 1e-8;
  std::size_t samples_per_dim = 150;
  int feature_repetitions = 5;

  // Selection.
  std::string heuristic = "all";  // cluster | ds | mis | all
  std::vector<double> thresholds = {0.90, 0.95, 0.97};
  std::size_t k_min = 2;
  std::size_t k_max = 15;
  std::size_t sub_split = 10;  // 0 disables re-clustering the largest cluster
  double pool_fraction = 0.125;
  int cluster_repetitions = 15;
  int graph_repetitions = 30;
  std::size_t min_suite = 10;  // Friedman minimum, warns below

  // Statistics and output.
  double alpha = 0.05;
  std::uint64_t seed = 1;
  std::string out_dir = "out";
  bool strict = false;
  bool rescale = false;
  bool write_traces = false;  // per-run best-so-far trace CSVs (harness only)
  std::vector<std::string> extract_drop = {"ic.eps.s"};
  std::vector<std::string> load_drop;

  long resolved_budget() const { return budget > 0 ? budget : 2000L * dimension; }

  /// Throws DomainError on an invalid configuration (XOR of sources,
  /// thresholds outside (-1, 1], non-positive repetitions, ...).
  void validate() const;

  /// Deterministic "key=value" rendering embedded in every output artifact.
  std::vector<std::string> audit_lines() const;
};

/// Subcommands. Each validates the configuration, writes its artifacts under
/// out_dir, logs progress to `log`, and returns an exit code; re-running with
/// the same configuration overwrites with identical bytes.
int cmd_extract(const PipelineConfig& config, std::ostream& log);
int cmd_build_graph(const PipelineConfig& config, std::ostream& log);
int cmd_select(const PipelineConfig& config, std::ostream& log);
int cmd_compare(const PipelineConfig& config, std::ostream& log);
int cmd_pipeline(const PipelineConfig& config, std::ostream& log);

}  // namespace benchsel
