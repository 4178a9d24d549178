#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "benchsel/design.hpp"
#include "benchsel/ela.hpp"
#include "benchsel/instance_key.hpp"
#include "benchsel/performance_table.hpp"
#include "benchsel/rng.hpp"

namespace benchsel::harness {

/// A synthetic objective with a known global minimum value, for desk-scale
/// experiments without any external dataset. Evaluators are total functions;
/// the minimum sits at optimum_point with value known_optimum_value.
struct ProblemSpec {
  std::string name;
  InstanceKey key;
  Bounds bounds;
  std::function<double(std::span<const double>)> evaluate;
  double known_optimum_value = 0.0;
  std::vector<double> optimum_point;
};

/// >= 12 distinct problems on [-5, 5]^d: sphere, ellipsoid, Rastrigin,
/// Rosenbrock, Ackley, Griewank, different powers, Schwefel 2.21, bent
/// cigar, sharp ridge, plus seeded rotated variants. Shifts, offsets and
/// rotations are deterministic per problem id.
std::vector<ProblemSpec> builtin_problems(int dimension);

/// Row-major d x d random orthogonal matrix: QR of a seeded Gaussian matrix
/// with the sign convention fixed for determinism.
std::vector<double> random_rotation(int dimension, std::uint64_t seed);

/// Rotated variant evaluating base at opt + R (x - opt); an empty rotation
/// means identity (the variant then equals the base function).
ProblemSpec rotated_variant(const ProblemSpec& base, const std::string& name,
                            int problem_id,
                            const std::vector<double>& rotation);

/// Shifted variant moving the optimum to new_optimum_point.
ProblemSpec shifted_variant(const ProblemSpec& base, const std::string& name,
                            int problem_id,
                            std::span<const double> new_optimum_point);

/// Budget-counting objective wrapper handed to optimizers. Out-of-bounds
/// proposals are clamped to the box (and counted); the run is done when the
/// budget is exhausted or best precision reached eps.
class BudgetedEvaluator {
 public:
  BudgetedEvaluator(const ProblemSpec& problem, long budget, double eps,
                    std::vector<double>* trace);

  /// Clamps, evaluates, updates the best-so-far. No-op returning the best
  /// value once done() (well-behaved optimizers check done() first).
  double operator()(std::span<const double> x);

  bool done() const;
  double best_value() const { return best_value_; }
  double best_precision() const;
  long evaluations_used() const { return evaluations_; }
  long clamped_proposals() const { return clamped_; }
  const ProblemSpec& problem() const { return problem_; }

 private:
  const ProblemSpec& problem_;
  long budget_;
  double eps_;
  std::vector<double>* trace_;
  long evaluations_ = 0;
  long clamped_ = 0;
  double best_value_;
  std::vector<double> scratch_;
};

/// An optimizer loops `while (!eval.done())`, proposing points through the
/// evaluator. budget_factor < 1 handicaps the optimizer by shrinking its
/// evaluation budget.
struct Optimizer {
  std::string name;
  double budget_factor = 1.0;
  std::function<void(BudgetedEvaluator&, Rng&)> run;
};

/// random_search, (1+1)-ES with 1/5th success rule, and a simple DE
/// (rand/1/bin, NP=20, F=0.5, CR=0.9).
std::vector<Optimizer> builtin_optimizers();
Optimizer make_random_search(const std::string& name = "random_search");
Optimizer make_one_plus_one_es(const std::string& name = "es_1p1");
Optimizer make_differential_evolution(const std::string& name = "de_simple");

/// Same algorithm under a budget penalty factor (e.g. 0.1 = 10x fewer
/// evaluations); used for deliberately crippled baselines.
Optimizer make_crippled(const Optimizer& base, const std::string& name,
                        double budget_factor);

struct RunRecord {
  InstanceKey problem;
  std::string algorithm;
  std::uint64_t seed = 0;
  double best_precision = 0.0;  // best found value - known optimum, >= 0
  long evaluations_used = 0;
  long clamped_proposals = 0;
};

struct ExperimentConfig {
  long budget = 100000;
  int runs = 30;
  double eps = 1e-8;
  bool record_traces = false;  // per-run best-so-far traces (debug/tests)
};

struct ExperimentResult {
  PerformanceTable table;          // value = best_precision per run
  std::vector<RunRecord> records;  // (problem, optimizer, run) order
  std::vector<std::vector<double>> traces;  // aligned with records when on
};

/// One RunRecord per (problem, optimizer, run); per-run seeds derive from
/// (master_seed, problem index, optimizer index, run index). Runs execute in
/// parallel and merge in deterministic order.
ExperimentResult run_experiment(const std::vector<ProblemSpec>& problems,
                                const std::vector<Optimizer>& optimizers,
                                const ExperimentConfig& config,
                                std::uint64_t master_seed);

/// The instance sources feeding feature extraction for these problems.
std::vector<ela::InstanceSource> instance_sources(
    const std::vector<ProblemSpec>& problems);

}  // namespace benchsel::harness
