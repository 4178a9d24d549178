#include "benchsel/pipeline.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <nlohmann/json.hpp>
#include <ostream>
#include <set>
#include <sstream>

#include "benchsel/clustering.hpp"
#include "benchsel/dsc.hpp"
#include "benchsel/ela.hpp"
#include "benchsel/error.hpp"
#include "benchsel/feature_table.hpp"
#include "benchsel/graph_select.hpp"
#include "benchsel/harness.hpp"
#include "benchsel/performance_table.hpp"
#include "benchsel/similarity.hpp"

namespace benchsel {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

std::string threshold_tag(double t) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%g", t);
  return buf;
}

std::string format_p(double p) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.2f", p);
  return buf;
}

json key_json(const InstanceKey& key) {
  return json{{"suite", key.suite},
              {"problem_id", key.problem_id},
              {"instance_id", key.instance_id},
              {"dimension", key.dimension},
              {"label", key.to_string()}};
}

InstanceKey key_from_json(const json& j) {
  return InstanceKey{j.at("suite").get<std::string>(),
                     j.at("problem_id").get<int>(),
                     j.at("instance_id").get<int>(),
                     j.at("dimension").get<int>()};
}

json config_json(const PipelineConfig& config) {
  json j;
  for (const auto& line : config.audit_lines()) {
    const auto eq = line.find('=');
    j[line.substr(0, eq)] = line.substr(eq + 1);
  }
  return j;
}

void write_text(const fs::path& path, const std::string& content) {
  fs::create_directories(path.parent_path());
  std::ofstream out(path);
  if (!out) throw FormatError("cannot write file: " + path.string());
  out << content;
}

void write_json(const fs::path& path, const json& j) {
  write_text(path, j.dump(2) + "\n");
}

json load_json(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw FormatError("cannot open file: " + path.string());
  json j;
  in >> j;
  return j;
}

// --- data source resolution -------------------------------------------------

FeatureTable obtain_features(const PipelineConfig& config, std::ostream& log) {
  if (!config.features_path.empty())
    return load_feature_table(config.features_path, config.load_drop);
  const fs::path produced = fs::path(config.out_dir) / "features.csv";
  if (!fs::exists(produced))
    throw DomainError("no feature table: pass --features or run extract first");
  log << "loading features from " << produced.string() << "\n";
  return load_feature_table(produced.string(), config.load_drop);
}

PerformanceTable obtain_performance(const PipelineConfig& config,
                                    std::ostream& log) {
  if (!config.performance_path.empty())
    return load_performance_table(config.performance_path);
  const fs::path produced = fs::path(config.out_dir) / "performance.csv";
  if (!config.use_harness) {
    if (fs::exists(produced)) {
      log << "loading performance from " << produced.string() << "\n";
      return load_performance_table(produced.string());
    }
    throw DomainError(
        "no performance table: pass --performance or use the harness");
  }
  // Harness runs are regenerated (deterministically) rather than read back,
  // so a stale performance.csv from a different configuration is never used.
  log << "running harness experiment (budget " << config.resolved_budget()
      << ", " << config.runs << " runs)\n";
  const auto problems = harness::builtin_problems(config.dimension);
  harness::ExperimentConfig experiment;
  experiment.budget = config.resolved_budget();
  experiment.runs = config.runs;
  experiment.eps = config.eps;
  experiment.record_traces = config.write_traces;
  auto result = harness::run_experiment(problems, harness::builtin_optimizers(),
                                        experiment, config.seed);
  fs::create_directories(config.out_dir);
  save_performance_table(result.table, produced.string(),
                         config.audit_lines());
  if (config.write_traces) {
    const fs::path traces_dir = fs::path(config.out_dir) / "traces";
    fs::create_directories(traces_dir);
    for (std::size_t r = 0; r < result.records.size(); ++r) {
      const auto& record = result.records[r];
      std::ostringstream trace;
      for (const auto& line : config.audit_lines()) trace << "# " << line << "\n";
      trace << "evaluation,best_value\n";
      for (std::size_t e = 0; e < result.traces[r].size(); ++e)
        trace << e + 1 << "," << format_double(result.traces[r][e]) << "\n";
      write_text(traces_dir / (record.problem.to_string() + "_" +
                               record.algorithm + "_run" +
                               std::to_string(r % static_cast<std::size_t>(
                                                      config.runs)) +
                               ".csv"),
                 trace.str());
    }
    log << "wrote " << result.records.size() << " trace files\n";
  }
  return result.table;
}

// --- selection directory layout ---------------------------------------------

fs::path selections_dir(const PipelineConfig& config) {
  return fs::path(config.out_dir) / "selections";
}

struct SelectionGroup {
  std::string heuristic;      // "cluster", "ds", "mis"
  double threshold = 0.0;     // graph heuristics only
  std::vector<std::vector<InstanceKey>> suites;
};

std::vector<SelectionGroup> load_selection_groups(const PipelineConfig& config) {
  std::vector<SelectionGroup> groups;
  const fs::path base = selections_dir(config);
  if (!fs::exists(base))
    throw FormatError("no selections under " + base.string() +
                      ": run select first");

  const fs::path cluster_file = base / "cluster" / "suites.json";
  if (fs::exists(cluster_file)) {
    const json j = load_json(cluster_file);
    SelectionGroup group;
    group.heuristic = "cluster";
    for (const auto& suite : j.at("suite_keys")) {
      std::vector<InstanceKey> keys;
      for (const auto& k : suite) keys.push_back(key_from_json(k));
      group.suites.push_back(std::move(keys));
    }
    groups.push_back(std::move(group));
  }

  for (const std::string heuristic : {"ds", "mis"}) {
    const fs::path hdir = base / heuristic;
    if (!fs::exists(hdir)) continue;
    std::vector<fs::path> threshold_dirs;
    for (const auto& entry : fs::directory_iterator(hdir))
      if (entry.is_directory()) threshold_dirs.push_back(entry.path());
    std::sort(threshold_dirs.begin(), threshold_dirs.end());
    for (const auto& tdir : threshold_dirs) {
      std::vector<fs::path> run_files;
      for (const auto& entry : fs::directory_iterator(tdir))
        if (entry.path().filename().string().starts_with("run_"))
          run_files.push_back(entry.path());
      std::sort(run_files.begin(), run_files.end());
      if (run_files.empty()) continue;
      SelectionGroup group;
      group.heuristic = heuristic;
      for (const auto& file : run_files) {
        const json j = load_json(file);
        group.threshold = j.at("threshold").get<double>();
        std::vector<InstanceKey> keys;
        for (const auto& k : j.at("instance_keys"))
          keys.push_back(key_from_json(k));
        group.suites.push_back(std::move(keys));
      }
      groups.push_back(std::move(group));
    }
  }
  if (groups.empty())
    throw FormatError("no selection files under " + base.string());
  return groups;
}

// --- report building ----------------------------------------------------------

json comparison_json(const dsc::SuiteComparison& comparison) {
  json pairs = json::array();
  for (const auto& outcome : comparison.pairwise)
    pairs.push_back(json{{"algorithm_a", outcome.algorithm_a},
                         {"algorithm_b", outcome.algorithm_b},
                         {"p_value", outcome.p_value},
                         {"bit", outcome.bit()}});
  return json{{"friedman",
               json{{"chi_square", comparison.friedman.chi_square},
                    {"degrees_of_freedom", comparison.friedman.degrees_of_freedom},
                    {"p_value", comparison.friedman.p_value},
                    {"applicable", comparison.friedman.applicable},
                    {"small_n_warning", comparison.friedman.small_n_warning}}},
              {"omnibus_rejected", comparison.omnibus_rejected},
              {"pairs", pairs}};
}

std::string pair_label(const std::string& a, const std::string& b) {
  return a + " vs " + b;
}

void markdown_comparison_table(
    std::ostringstream& md,
    const std::vector<std::pair<std::string, dsc::SuiteComparison>>& columns) {
  if (columns.empty()) return;
  const auto& pairs = columns.front().second.pairwise;
  md << "| pair |";
  for (const auto& [name, comparison] : columns) md << " " << name << " |";
  md << "\n|---|";
  for (std::size_t c = 0; c < columns.size(); ++c) md << "---|";
  md << "\n";
  for (std::size_t p = 0; p < pairs.size(); ++p) {
    md << "| " << pair_label(pairs[p].algorithm_a, pairs[p].algorithm_b)
       << " |";
    for (const auto& [name, comparison] : columns) {
      const auto& outcome = comparison.pairwise[p];
      md << " " << format_p(outcome.p_value) << "/" << outcome.bit() << " |";
    }
    md << "\n";
  }
  md << "\n";
}

}  // namespace

// --- config -------------------------------------------------------------------

void PipelineConfig::validate() const {
  const bool have_files = !features_path.empty() || !performance_path.empty();
  if (use_harness && have_files)
    throw DomainError("exactly one data source: harness or input files");
  for (const double t : thresholds)
    if (!(t > -1.0) || t > 1.0)
      throw DomainError("threshold must lie in (-1, 1], got " +
                        std::to_string(t));
  if (thresholds.empty()) throw DomainError("at least one threshold required");
  if (cluster_repetitions < 1 || graph_repetitions < 1 ||
      feature_repetitions < 1 || runs < 1)
    throw DomainError("repetitions must be >= 1");
  if (!(alpha > 0.0) || alpha >= 1.0)
    throw DomainError("alpha must lie in (0, 1)");
  if (heuristic != "cluster" && heuristic != "ds" && heuristic != "mis" &&
      heuristic != "all")
    throw DomainError("heuristic must be cluster, ds, mis, or all");
  if (dimension < 1) throw DomainError("dimension must be >= 1");
  if (!(pool_fraction > 0.0) || pool_fraction > 1.0)
    throw DomainError("pool fraction must lie in (0, 1]");
  if (k_min < 2 || k_max < k_min)
    throw DomainError("cluster range must satisfy 2 <= k_min <= k_max");
  if (out_dir.empty()) throw DomainError("output directory required");
}

std::vector<std::string> PipelineConfig::audit_lines() const {
  std::vector<std::string> lines;
  auto add = [&lines](const std::string& key, const std::string& value) {
    lines.push_back(key + "=" + value);
  };
  add("alpha", format_double(alpha));
  add("budget", std::to_string(resolved_budget()));
  add("cluster_repetitions", std::to_string(cluster_repetitions));
  add("dimension", std::to_string(dimension));
  add("eps", format_double(eps));
  std::string drops;
  for (const auto& d : extract_drop) drops += (drops.empty() ? "" : ";") + d;
  add("extract_drop", drops);
  add("feature_repetitions", std::to_string(feature_repetitions));
  add("features_path", features_path);
  add("graph_repetitions", std::to_string(graph_repetitions));
  add("heuristic", heuristic);
  add("k_max", std::to_string(k_max));
  add("k_min", std::to_string(k_min));
  std::string load_drops;
  for (const auto& d : load_drop) load_drops += (load_drops.empty() ? "" : ";") + d;
  add("load_drop", load_drops);
  add("min_suite", std::to_string(min_suite));
  add("performance_path", performance_path);
  add("pool_fraction", format_double(pool_fraction));
  add("rescale", rescale ? "true" : "false");
  add("runs", std::to_string(runs));
  add("samples_per_dim", std::to_string(samples_per_dim));
  add("seed", std::to_string(seed));
  add("strict", strict ? "true" : "false");
  add("sub_split", std::to_string(sub_split));
  std::string ts;
  for (const double t : thresholds) ts += (ts.empty() ? "" : ";") + threshold_tag(t);
  add("thresholds", ts);
  add("use_harness", use_harness ? "true" : "false");
  add("write_traces", write_traces ? "true" : "false");
  return lines;
}

// --- extract --------------------------------------------------------------------

int cmd_extract(const PipelineConfig& config, std::ostream& log) {
  config.validate();
  if (!config.use_harness)
    throw DomainError("extract needs the harness data source (--harness)");

  const auto problems = harness::builtin_problems(config.dimension);
  ela::ExtractionConfig extraction;
  extraction.samples_per_dim = config.samples_per_dim;
  extraction.repetitions = config.feature_repetitions;
  extraction.drop_columns = config.extract_drop;

  log << "extracting features for " << problems.size() << " problems ("
      << extraction.repetitions << " repetitions, "
      << extraction.samples_per_dim * static_cast<std::size_t>(config.dimension)
      << " samples each)\n";
  const auto result = ela::extract_features(harness::instance_sources(problems),
                                            extraction, config.seed);

  fs::create_directories(config.out_dir);
  const fs::path out = fs::path(config.out_dir) / "features.csv";
  save_feature_table(result.table, out.string(), config.audit_lines());
  log << "wrote " << out.string() << " (" << result.table.rows() << " rows, "
      << result.table.cols() << " features)\n";

  for (const auto& failure : result.failures)
    log << "feature failure: " << failure << "\n";
  return result.failures.empty() ? kExitOk : kExitDataError;
}

// --- build-graph ------------------------------------------------------------------

int cmd_build_graph(const PipelineConfig& config, std::ostream& log) {
  config.validate();
  const FeatureTable features = obtain_features(config, log);
  const GraphOptions options{config.rescale};
  const fs::path dir = fs::path(config.out_dir) / "graphs";
  fs::create_directories(dir);

  for (const double threshold : config.thresholds) {
    const SimilarityGraph graph = build_graph(features, threshold, options);
    const std::string tag = threshold_tag(threshold);
    save_graph(graph, features, (dir / ("graph_" + tag + ".edges")).string(),
               (dir / ("graph_" + tag + ".json")).string(), options,
               config.audit_lines());

    const DegreeStatistics degrees = degree_statistics(graph);
    std::ostringstream deg;
    for (const auto& line : config.audit_lines()) deg << "# " << line << "\n";
    deg << "label,degree\n";
    for (std::size_t i = 0; i < graph.node_count(); ++i)
      deg << graph.nodes()[i].to_string() << "," << degrees.degrees[i] << "\n";
    write_text(dir / ("degrees_" + tag + ".csv"), deg.str());

    std::ostringstream ecdf;
    for (const auto& line : config.audit_lines()) ecdf << "# " << line << "\n";
    ecdf << "degree,cumulative_fraction\n";
    for (const auto& [degree, fraction] : degrees.ecdf)
      ecdf << degree << "," << format_double(fraction) << "\n";
    write_text(dir / ("degree_ecdf_" + tag + ".csv"), ecdf.str());

    const auto components = connected_components(graph);
    json cj;
    cj["threshold"] = threshold;
    cj["edge_count"] = graph.edge_count();
    cj["component_count"] = components.size();
    json sizes = json::array();
    json members = json::array();
    for (const auto& component : components) {
      sizes.push_back(component.size());
      json labels = json::array();
      for (const std::size_t i : component)
        labels.push_back(graph.nodes()[i].to_string());
      members.push_back(std::move(labels));
    }
    cj["sizes"] = std::move(sizes);
    cj["components"] = std::move(members);
    cj["config"] = config_json(config);
    write_json(dir / ("components_" + tag + ".json"), cj);

    log << "threshold " << tag << ": " << graph.edge_count() << " edges, "
        << components.size() << " components\n";
  }
  return kExitOk;
}

// --- select ----------------------------------------------------------------------

int cmd_select(const PipelineConfig& config, std::ostream& log) {
  config.validate();
  const FeatureTable features = obtain_features(config, log);
  const fs::path base = selections_dir(config);
  bool small_suite_warning = false;

  const bool do_cluster = config.heuristic == "cluster" || config.heuristic == "all";
  const bool do_ds = config.heuristic == "ds" || config.heuristic == "all";
  const bool do_mis = config.heuristic == "mis" || config.heuristic == "all";

  // Each heuristic owns its directory; wiping it first keeps re-runs with
  // fewer repetitions from leaving stale run files behind for compare.
  if (do_cluster) fs::remove_all(base / "cluster");
  if (do_ds) fs::remove_all(base / "ds");
  if (do_mis) fs::remove_all(base / "mis");

  if (do_cluster) {
    const std::size_t k = choose_k(features, config.k_min,
                                   std::min(config.k_max, features.rows()),
                                   config.min_suite);
    ClusterModel model = agglomerative_cluster(features, k);
    log << "clustering: k = " << k << " (silhouette-selected)\n";
    if (config.sub_split > 1) {
      const auto sizes = model.cluster_sizes();
      const std::size_t largest =
          *std::max_element(sizes.begin(), sizes.end());
      if (largest >= config.sub_split) {
        model = split_largest(features, model, config.sub_split);
        log << "split largest cluster into " << config.sub_split
            << " subclusters: " << model.k() << " total\n";
      }
    }

    fs::create_directories(base / "cluster");
    save_cluster_assignments(model,
                             (base / "cluster" / "assignments.csv").string(),
                             config.audit_lines());

    const auto representatives = centroid_representatives(features, model);
    const auto pools = representative_pools(features, model, config.pool_fraction);
    const auto suites =
        sample_suites(pools, config.cluster_repetitions,
                      derive_seed(config.seed, 0xC1));

    json j;
    j["heuristic"] = "cluster";
    j["k"] = model.k();
    j["pool_fraction"] = config.pool_fraction;
    j["repetitions"] = config.cluster_repetitions;
    j["seed"] = config.seed;
    json rep_labels = json::array();
    json rep_keys = json::array();
    for (const auto& key : representatives) {
      rep_labels.push_back(key.to_string());
      rep_keys.push_back(key_json(key));
    }
    j["centroid_representatives"] = std::move(rep_labels);
    j["centroid_representative_keys"] = std::move(rep_keys);
    json suites_labels = json::array();
    json suites_keys = json::array();
    for (const auto& suite : suites) {
      json labels = json::array();
      json keys = json::array();
      for (const auto& key : suite) {
        labels.push_back(key.to_string());
        keys.push_back(key_json(key));
      }
      suites_labels.push_back(std::move(labels));
      suites_keys.push_back(std::move(keys));
    }
    j["suites"] = std::move(suites_labels);
    j["suite_keys"] = std::move(suites_keys);
    j["config"] = config_json(config);
    write_json(base / "cluster" / "suites.json", j);

    if (model.k() < config.min_suite) {
      log << "warning: cluster suites have " << model.k()
          << " instances, below Friedman minimum " << config.min_suite << "\n";
      small_suite_warning = true;
    }
    log << "wrote " << suites.size() << " cluster suites of " << model.k()
        << " instances\n";
  }

  const GraphOptions options{config.rescale};
  for (const auto& [enabled, heuristic] :
       {std::pair{do_ds, Heuristic::kDominatingSet},
        std::pair{do_mis, Heuristic::kMaximalIndependentSet}}) {
    if (!enabled) continue;
    const std::string hname = heuristic_name(heuristic);
    for (std::size_t t = 0; t < config.thresholds.size(); ++t) {
      const double threshold = config.thresholds[t];
      const SimilarityGraph graph = build_graph(features, threshold, options);

      std::vector<std::uint64_t> seeds;
      seeds.reserve(static_cast<std::size_t>(config.graph_repetitions));
      for (int r = 0; r < config.graph_repetitions; ++r)
        seeds.push_back(derive_seed(config.seed,
                                    heuristic == Heuristic::kDominatingSet ? 0xD5 : 0x315,
                                    t, static_cast<std::uint64_t>(r)));
      const BatchResult batch = run_batch(graph, heuristic, seeds);

      const fs::path dir = base / hname / ("t_" + threshold_tag(threshold));
      fs::create_directories(dir);
      for (std::size_t r = 0; r < batch.runs.size(); ++r) {
        const SelectionRun& run = batch.runs[r];
        json j;
        j["heuristic"] = hname;
        j["threshold"] = threshold;
        j["seed"] = run.seed;
        json labels = json::array();
        json keys = json::array();
        for (const auto& key : run.selected_keys) {
          labels.push_back(key.to_string());
          keys.push_back(key_json(key));
        }
        j["instances"] = std::move(labels);
        j["instance_keys"] = std::move(keys);
        j["config"] = config_json(config);
        char name[32];
        std::snprintf(name, sizeof(name), "run_%02zu.json", r);
        write_json(dir / name, j);
        if (run.selected_keys.size() < config.min_suite)
          small_suite_warning = true;
      }

      json summary;
      summary["heuristic"] = hname;
      summary["threshold"] = threshold;
      summary["repetitions"] = batch.runs.size();
      summary["size_min"] = batch.min_size;
      summary["size_max"] = batch.max_size;
      summary["size_mean"] = batch.mean_size;
      json seed_list = json::array();
      for (const auto seed : seeds) seed_list.push_back(seed);
      summary["seeds"] = std::move(seed_list);
      summary["config"] = config_json(config);
      write_json(dir / "summary.json", summary);

      log << hname << " @ " << threshold_tag(threshold) << ": sizes ["
          << batch.min_size << ", " << batch.max_size << "], mean "
          << batch.mean_size << "\n";
      if (batch.min_size < config.min_suite)
        log << "warning: some " << hname << " suites at threshold "
            << threshold_tag(threshold) << " fall below Friedman minimum "
            << config.min_suite << "\n";
    }
  }

  if (small_suite_warning && config.strict) return kExitStrictWarning;
  return kExitOk;
}

// --- compare ---------------------------------------------------------------------

int cmd_compare(const PipelineConfig& config, std::ostream& log) {
  config.validate();
  const PerformanceTable perf = obtain_performance(config, log);
  const auto groups = load_selection_groups(config);
  const auto algorithms = perf.algorithms();
  if (algorithms.size() < 2)
    throw IntegrityError("compare needs at least 2 algorithms");

  json report;
  report["alpha"] = config.alpha;
  report["config"] = config_json(config);
  std::ostringstream md;
  md << "# Benchmark subset comparison report\n\n";
  md << "Cells are `p/bit`: bit 1 = no statistical significance at alpha = "
     << threshold_tag(config.alpha) << ", bit 0 = significant.\n\n";
  md << "## Configuration\n\n```\n";
  for (const auto& line : config.audit_lines()) md << line << "\n";
  md << "```\n\n";

  bool friedman_warning = false;

  // Per-benchmark comparisons (one per suite family) plus the full union.
  const auto all_instances = perf.instances();
  std::map<std::string, std::vector<InstanceKey>> by_benchmark;
  for (const auto& key : all_instances) by_benchmark[key.suite].push_back(key);

  std::vector<std::pair<std::string, dsc::SuiteComparison>> baseline_columns;
  json benchmarks_json;
  if (by_benchmark.size() > 1) {
    for (const auto& [suite, keys] : by_benchmark) {
      if (keys.size() < 2) continue;
      auto comparison = dsc::compare_on_suite(perf, keys, config.alpha);
      friedman_warning |= comparison.friedman.small_n_warning;
      benchmarks_json[suite] = comparison_json(comparison);
      baseline_columns.emplace_back(suite, std::move(comparison));
    }
  }
  auto all_comparison = dsc::compare_on_suite(perf, all_instances, config.alpha);
  friedman_warning |= all_comparison.friedman.small_n_warning;
  report["all_instances"] = comparison_json(all_comparison);
  baseline_columns.emplace_back("All", std::move(all_comparison));
  if (!benchmarks_json.is_null()) report["per_benchmark"] = benchmarks_json;

  md << "## Established benchmarks\n\n";
  markdown_comparison_table(md, baseline_columns);

  // Selected-suite groups with robustness counting.
  json groups_json = json::array();
  struct PairAgreement {
    int ones = 0;
    int total = 0;
  };
  std::map<std::string, PairAgreement> agreement;  // across all group suites

  for (const auto& group : groups) {
    const std::string title =
        group.heuristic == "cluster"
            ? std::string("cluster")
            : group.heuristic + " @ " + threshold_tag(group.threshold);
    log << "comparing on " << group.suites.size() << " " << title
        << " suite(s)\n";

    json gj;
    gj["heuristic"] = group.heuristic;
    if (group.heuristic != "cluster") gj["threshold"] = group.threshold;
    gj["repetitions"] = group.suites.size();

    json suite_results = json::array();
    std::vector<dsc::SuiteComparison> comparisons;
    comparisons.reserve(group.suites.size());
    for (const auto& suite : group.suites) {
      auto comparison = dsc::compare_on_suite(perf, suite, config.alpha);
      friedman_warning |= comparison.friedman.small_n_warning;
      suite_results.push_back(comparison_json(comparison));
      comparisons.push_back(std::move(comparison));
    }
    gj["suites"] = std::move(suite_results);

    md << "## " << title << "\n\n";
    if (group.suites.size() == 1) {
      markdown_comparison_table(md, {{title, comparisons.front()}});
    } else {
      const auto robustness =
          dsc::robustness_count(perf, group.suites, config.alpha);
      json rj = json::array();
      md << "No-significance counts over " << robustness.repetitions
         << " suites:\n\n| pair | count |\n|---|---|\n";
      for (const auto& pair : robustness.pairs) {
        json pj;
        pj["algorithm_a"] = pair.algorithm_a;
        pj["algorithm_b"] = pair.algorithm_b;
        pj["no_significance_count"] = pair.no_significance_count;
        pj["p_values"] = pair.suite_p_values;
        rj.push_back(std::move(pj));
        md << "| " << pair_label(pair.algorithm_a, pair.algorithm_b) << " | "
           << pair.no_significance_count << "/" << robustness.repetitions
           << " |\n";
        auto& acc = agreement[pair_label(pair.algorithm_a, pair.algorithm_b)];
        acc.ones += pair.no_significance_count;
        acc.total += robustness.repetitions;
      }
      md << "\n";
      gj["robustness"] = std::move(rj);
    }
    groups_json.push_back(std::move(gj));
  }
  report["groups"] = std::move(groups_json);

  // Consistency: do the established benchmarks disagree on a pair while the
  // selected suites give a stable outcome?
  json consistency = json::array();
  bool any_flag = false;
  if (baseline_columns.size() > 2) {  // at least two benchmarks + "All"
    const auto& reference = baseline_columns.front().second.pairwise;
    for (std::size_t p = 0; p < reference.size(); ++p) {
      std::set<int> bits;
      json bench_bits;
      for (const auto& [name, comparison] : baseline_columns) {
        if (name == "All") continue;
        bench_bits[name] = comparison.pairwise[p].bit();
        bits.insert(comparison.pairwise[p].bit());
      }
      const std::string label =
          pair_label(reference[p].algorithm_a, reference[p].algorithm_b);
      json cj;
      cj["pair"] = label;
      cj["benchmark_bits"] = std::move(bench_bits);
      const bool conflict = bits.size() > 1;
      cj["benchmarks_conflict"] = conflict;
      double rate = -1.0;
      if (const auto it = agreement.find(label); it != agreement.end() &&
                                                 it->second.total > 0) {
        rate = static_cast<double>(it->second.ones) /
               static_cast<double>(it->second.total);
        cj["selected_no_significance_rate"] = rate;
      }
      const bool stable = rate >= 0.0 && (rate >= 0.9 || rate <= 0.1);
      const bool flagged = conflict && stable;
      cj["discrepancy_flagged"] = flagged;
      any_flag |= flagged;
      consistency.push_back(std::move(cj));
    }
    report["consistency"] = consistency;
    if (any_flag) {
      md << "## Discrepancies\n\n";
      md << "Pairs where the established benchmarks disagree with each other "
            "while the selected suites give a stable outcome:\n\n";
      for (const auto& cj : consistency)
        if (cj.at("discrepancy_flagged").get<bool>())
          md << "- " << cj.at("pair").get<std::string>()
             << " (benchmarks conflict; selected-suite no-significance rate "
             << format_p(cj.at("selected_no_significance_rate").get<double>())
             << ")\n";
      md << "\n";
    }
  }

  write_json(fs::path(config.out_dir) / "report.json", report);
  write_text(fs::path(config.out_dir) / "report.md", md.str());
  log << "wrote report.json and report.md\n";

  if (friedman_warning && config.strict) return kExitStrictWarning;
  return kExitOk;
}

// --- pipeline ---------------------------------------------------------------------

int cmd_pipeline(const PipelineConfig& config, std::ostream& log) {
  config.validate();
  if (config.use_harness) {
    if (const int code = cmd_extract(config, log); code != kExitOk) return code;
  } else if (config.features_path.empty()) {
    throw DomainError("pipeline needs --features or the harness source");
  }
  if (const int code = cmd_build_graph(config, log); code != kExitOk)
    return code;
  const int select_code = cmd_select(config, log);
  if (select_code != kExitOk && select_code != kExitStrictWarning)
    return select_code;
  const int compare_code = cmd_compare(config, log);
  if (compare_code != kExitOk) return compare_code;
  return select_code;
}

}  // namespace benchsel
