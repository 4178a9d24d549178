// benchsel command line: extract landscape features, build similarity graphs,
// select representative benchmark suites (clustering / dominating set /
// maximal independent set), and compare optimizers on them with DSC ranking,
// Friedman and Nemenyi tests.

#include <CLI11.hpp>
#include <cstdlib>
#include <iostream>
#include <string>

#include "benchsel/error.hpp"
#include "benchsel/pipeline.hpp"

namespace {

using benchsel::PipelineConfig;

int dispatch(const std::string& command, const PipelineConfig& config) {
  try {
    if (command == "extract") return benchsel::cmd_extract(config, std::cout);
    if (command == "build-graph")
      return benchsel::cmd_build_graph(config, std::cout);
    if (command == "select") return benchsel::cmd_select(config, std::cout);
    if (command == "compare") return benchsel::cmd_compare(config, std::cout);
    return benchsel::cmd_pipeline(config, std::cout);
  } catch (const benchsel::FormatError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return benchsel::kExitDataError;
  } catch (const benchsel::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return benchsel::kExitDataError;
  } catch (const benchsel::IntegrityError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return benchsel::kExitDataError;
  } catch (const benchsel::AlignmentError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return benchsel::kExitDataError;
  } catch (const benchsel::FeatureError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return benchsel::kExitDataError;
  } catch (const benchsel::Error& e) {  // domain/constraint: configuration
    std::cerr << "error: " << e.what() << "\n";
    return benchsel::kExitConfigError;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Representative benchmark suite selection and robust "
               "statistical comparison"};
  app.set_config("--config", "", "Declarative configuration file; flags win");

  PipelineConfig config;
  std::string clusters_range;
  int repetitions = 0;

  app.add_option("--features", config.features_path,
                 "Feature table CSV (suite,problem_id,instance_id,dimension,"
                 "<features...>)");
  app.add_option("--performance", config.performance_path,
                 "Performance table CSV (…,algorithm,run,value)");
  app.add_flag("--harness", config.use_harness,
               "Use the built-in synthetic problems and toy optimizers");
  app.add_option("--heuristic", config.heuristic,
                 "Selection heuristic: cluster, ds, mis, or all")
      ->check(CLI::IsMember({"cluster", "ds", "mis", "all"}));
  app.add_option("--threshold", config.thresholds,
                 "Similarity threshold(s); repeatable (default 0.90 0.95 "
                 "0.97)");
  app.add_option("--clusters-range", clusters_range,
                 "Cluster count sweep as MIN:MAX (default 2:15)");
  app.add_option("--sub-split", config.sub_split,
                 "Subclusters for the largest cluster; 0 disables");
  app.add_option("--pool-fraction", config.pool_fraction,
                 "Fraction of each cluster kept as representatives");
  app.add_option("--repetitions", repetitions,
                 "Selection repetitions (sets both cluster and graph "
                 "repetitions)");
  app.add_option("--alpha", config.alpha, "Significance level");
  app.add_option("--seed", config.seed, "Master seed");
  app.add_option("--out", config.out_dir, "Output directory");
  app.add_flag("--strict", config.strict,
               "Escalate statistical precondition warnings to exit code 4");
  app.add_flag("--rescale", config.rescale,
               "Min-max rescale feature columns before cosine similarity");
  app.add_flag("--traces", config.write_traces,
               "Write per-run best-so-far trace CSVs (harness source)");
  app.add_option("--drop", config.extract_drop,
                 "Feature columns to drop; repeatable (default ic.eps.s)");
  app.add_option("--min-suite", config.min_suite,
                 "Minimum suite size before a Friedman warning");

  app.add_option("--dimension", config.dimension, "Harness problem dimension");
  app.add_option("--budget", config.budget,
                 "Evaluation budget per run (0 = 2000 * dimension)");
  app.add_option("--runs", config.runs, "Independent runs per optimizer");
  app.add_option("--eps", config.eps, "Target precision for early stopping");
  app.add_option("--samples", config.samples_per_dim,
                 "Design points per dimension for feature extraction");
  app.add_option("--feature-reps", config.feature_repetitions,
                 "Feature extraction repetitions (median-aggregated)");

  app.require_subcommand(0, 1);
  app.add_subcommand("extract", "Compute landscape features for the harness "
                                "problems")->fallthrough();
  app.add_subcommand("build-graph", "Build similarity graphs and degree/"
                                    "component reports")->fallthrough();
  app.add_subcommand("select", "Select benchmark suites (cluster/ds/mis)")
      ->fallthrough();
  app.add_subcommand("compare", "DSC + Friedman + Nemenyi comparison and "
                                "robustness report")->fallthrough();
  app.add_subcommand("pipeline", "extract -> build-graph -> select -> compare")
      ->fallthrough();

  CLI11_PARSE(app, argc, argv);

  if (!clusters_range.empty()) {
    const auto colon = clusters_range.find(':');
    if (colon == std::string::npos) {
      std::cerr << "error: --clusters-range expects MIN:MAX\n";
      return benchsel::kExitConfigError;
    }
    config.k_min = std::strtoul(clusters_range.c_str(), nullptr, 10);
    config.k_max =
        std::strtoul(clusters_range.c_str() + colon + 1, nullptr, 10);
  }
  if (repetitions > 0) {
    config.cluster_repetitions = repetitions;
    config.graph_repetitions = repetitions;
  }
  // An explicit --drop list applies to feature-file loads as well (the
  // default ic.eps.s drop only affects the built-in extractor, whose output
  // always carries that column).
  if (app.count("--drop") > 0) config.load_drop = config.extract_drop;

  const auto subcommands = app.get_subcommands();
  const std::string command =
      subcommands.empty() ? "pipeline" : subcommands.front()->get_name();
  return dispatch(command, config);
}
