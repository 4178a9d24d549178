#include "benchsel/harness.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <limits>

#include "benchsel/error.hpp"
#include "benchsel/parallel.hpp"

namespace benchsel::harness {

namespace {

constexpr double kPi = 3.141592653589793238462643383279502884;
constexpr double kLo = -5.0;
constexpr double kHi = 5.0;
constexpr std::uint64_t kShiftSalt = 0x5348494654ULL;    // shift streams
constexpr std::uint64_t kRotationSalt = 0x524f54415445ULL;

// Base functions: minimum 0 at z = 0.
double base_sphere(std::span<const double> z) {
  double s = 0.0;
  for (const double v : z) s += v * v;
  return s;
}

double base_ellipsoid(std::span<const double> z) {
  const double d = static_cast<double>(z.size());
  double s = 0.0;
  for (std::size_t i = 0; i < z.size(); ++i) {
    const double expo = z.size() > 1
                            ? 6.0 * static_cast<double>(i) / (d - 1.0)
                            : 0.0;
    s += std::pow(10.0, expo) * z[i] * z[i];
  }
  return s;
}

double base_rastrigin(std::span<const double> z) {
  double s = 10.0 * static_cast<double>(z.size());
  for (const double v : z) s += v * v - 10.0 * std::cos(2.0 * kPi * v);
  return s;
}

// Rosenbrock with the optimum translated to the origin.
double base_rosenbrock(std::span<const double> z) {
  double s = 0.0;
  for (std::size_t i = 0; i + 1 < z.size(); ++i) {
    const double a = z[i] + 1.0;
    const double b = z[i + 1] + 1.0;
    s += 100.0 * (b - a * a) * (b - a * a) + (a - 1.0) * (a - 1.0);
  }
  return s;
}

double base_ackley(std::span<const double> z) {
  const double d = static_cast<double>(z.size());
  double sq = 0.0, cs = 0.0;
  for (const double v : z) {
    sq += v * v;
    cs += std::cos(2.0 * kPi * v);
  }
  return 20.0 + std::exp(1.0) - 20.0 * std::exp(-0.2 * std::sqrt(sq / d)) -
         std::exp(cs / d);
}

double base_griewank(std::span<const double> z) {
  double sum = 0.0, prod = 1.0;
  for (std::size_t i = 0; i < z.size(); ++i) {
    sum += z[i] * z[i] / 4000.0;
    prod *= std::cos(z[i] / std::sqrt(static_cast<double>(i + 1)));
  }
  return sum - prod + 1.0;
}

double base_different_powers(std::span<const double> z) {
  const double d = static_cast<double>(z.size());
  double s = 0.0;
  for (std::size_t i = 0; i < z.size(); ++i) {
    const double expo =
        z.size() > 1 ? 2.0 + 4.0 * static_cast<double>(i) / (d - 1.0) : 2.0;
    s += std::pow(std::fabs(z[i]), expo);
  }
  return s;
}

double base_schwefel221(std::span<const double> z) {
  double s = 0.0;
  for (const double v : z) s = std::max(s, std::fabs(v));
  return s;
}

double base_bent_cigar(std::span<const double> z) {
  double s = z[0] * z[0];
  for (std::size_t i = 1; i < z.size(); ++i) s += 1e6 * z[i] * z[i];
  return s;
}

double base_sharp_ridge(std::span<const double> z) {
  double tail = 0.0;
  for (std::size_t i = 1; i < z.size(); ++i) tail += z[i] * z[i];
  return z[0] * z[0] + 100.0 * std::sqrt(tail);
}

using BaseFn = double (*)(std::span<const double>);

ProblemSpec make_problem(const std::string& name, int problem_id,
                         int dimension, BaseFn base) {
  ProblemSpec spec;
  spec.name = name;
  spec.key = InstanceKey{"TOY", problem_id, 1, dimension};
  spec.bounds.assign(static_cast<std::size_t>(dimension), {kLo, kHi});

  // Deterministic shift in [-4, 4]^d and integer offset in [0, 100).
  Rng rng(derive_seed(kShiftSalt, static_cast<std::uint64_t>(problem_id)));
  std::vector<double> shift(static_cast<std::size_t>(dimension));
  for (double& s : shift) s = rng.uniform(-4.0, 4.0);
  const double offset = std::floor(100.0 * rng.uniform());

  spec.optimum_point = shift;
  spec.known_optimum_value = offset;
  spec.evaluate = [base, shift, offset](std::span<const double> x) {
    std::vector<double> z(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) z[i] = x[i] - shift[i];
    return base(z) + offset;
  };
  return spec;
}

}  // namespace

std::vector<double> random_rotation(int dimension, std::uint64_t seed) {
  const auto d = static_cast<Eigen::Index>(dimension);
  Rng rng(seed);
  Eigen::MatrixXd gauss(d, d);
  for (Eigen::Index i = 0; i < d; ++i)
    for (Eigen::Index j = 0; j < d; ++j) gauss(i, j) = rng.normal();

  const Eigen::HouseholderQR<Eigen::MatrixXd> qr(gauss);
  Eigen::MatrixXd q = qr.householderQ();
  const Eigen::MatrixXd r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (Eigen::Index j = 0; j < d; ++j)
    if (r(j, j) < 0.0) q.col(j) = -q.col(j);

  std::vector<double> rotation(static_cast<std::size_t>(d * d));
  for (Eigen::Index i = 0; i < d; ++i)
    for (Eigen::Index j = 0; j < d; ++j)
      rotation[static_cast<std::size_t>(i * d + j)] = q(i, j);
  return rotation;
}

ProblemSpec rotated_variant(const ProblemSpec& base, const std::string& name,
                            int problem_id,
                            const std::vector<double>& rotation) {
  const std::size_t d = base.bounds.size();
  if (!rotation.empty() && rotation.size() != d * d)
    throw DomainError("rotated_variant: rotation must be d x d");

  ProblemSpec spec = base;
  spec.name = name;
  spec.key.problem_id = problem_id;
  if (rotation.empty()) return spec;

  const auto inner = base.evaluate;
  const auto center = base.optimum_point;
  spec.evaluate = [inner, center, rotation, d](std::span<const double> x) {
    std::vector<double> rotated(d);
    for (std::size_t i = 0; i < d; ++i) {
      double acc = center[i];
      for (std::size_t j = 0; j < d; ++j)
        acc += rotation[i * d + j] * (x[j] - center[j]);
      rotated[i] = acc;
    }
    return inner(rotated);
  };
  return spec;
}

ProblemSpec shifted_variant(const ProblemSpec& base, const std::string& name,
                            int problem_id,
                            std::span<const double> new_optimum_point) {
  const std::size_t d = base.bounds.size();
  if (new_optimum_point.size() != d)
    throw DomainError("shifted_variant: shift must have d entries");

  ProblemSpec spec = base;
  spec.name = name;
  spec.key.problem_id = problem_id;
  spec.optimum_point.assign(new_optimum_point.begin(), new_optimum_point.end());

  const auto inner = base.evaluate;
  const auto old_opt = base.optimum_point;
  std::vector<double> new_opt(new_optimum_point.begin(),
                              new_optimum_point.end());
  spec.evaluate = [inner, old_opt, new_opt, d](std::span<const double> x) {
    std::vector<double> moved(d);
    for (std::size_t i = 0; i < d; ++i)
      moved[i] = x[i] - new_opt[i] + old_opt[i];
    return inner(moved);
  };
  return spec;
}

std::vector<ProblemSpec> builtin_problems(int dimension) {
  if (dimension < 1) throw DomainError("builtin_problems: dimension >= 1");

  std::vector<ProblemSpec> problems;
  problems.push_back(make_problem("sphere", 1, dimension, base_sphere));
  problems.push_back(make_problem("ellipsoid", 2, dimension, base_ellipsoid));
  problems.push_back(make_problem("rastrigin", 3, dimension, base_rastrigin));
  problems.push_back(make_problem("rosenbrock", 4, dimension, base_rosenbrock));
  problems.push_back(make_problem("ackley", 5, dimension, base_ackley));
  problems.push_back(make_problem("griewank", 6, dimension, base_griewank));
  problems.push_back(
      make_problem("different_powers", 7, dimension, base_different_powers));
  problems.push_back(
      make_problem("schwefel221", 8, dimension, base_schwefel221));
  problems.push_back(make_problem("bent_cigar", 9, dimension, base_bent_cigar));
  problems.push_back(
      make_problem("sharp_ridge", 10, dimension, base_sharp_ridge));

  const struct {
    int source;
    const char* name;
  } rotations[] = {{2, "ellipsoid_rot"},
                   {3, "rastrigin_rot"},
                   {9, "bent_cigar_rot"},
                   {10, "sharp_ridge_rot"}};
  int next_id = 11;
  for (const auto& [source, name] : rotations) {
    const auto rotation = random_rotation(
        dimension, derive_seed(kRotationSalt,
                               static_cast<std::uint64_t>(next_id)));
    problems.push_back(rotated_variant(
        problems[static_cast<std::size_t>(source - 1)], name, next_id,
        rotation));
    ++next_id;
  }
  return problems;
}

BudgetedEvaluator::BudgetedEvaluator(const ProblemSpec& problem, long budget,
                                     double eps, std::vector<double>* trace)
    : problem_(problem),
      budget_(budget),
      eps_(eps),
      trace_(trace),
      best_value_(std::numeric_limits<double>::infinity()),
      scratch_(problem.bounds.size()) {
  if (budget < 1) throw DomainError("BudgetedEvaluator: budget must be >= 1");
}

double BudgetedEvaluator::operator()(std::span<const double> x) {
  if (done()) return best_value_;

  bool clamped = false;
  for (std::size_t i = 0; i < scratch_.size(); ++i) {
    const auto& [lo, hi] = problem_.bounds[i];
    scratch_[i] = std::clamp(x[i], lo, hi);
    clamped |= scratch_[i] != x[i];
  }
  if (clamped) ++clamped_;

  const double value = problem_.evaluate(scratch_);
  ++evaluations_;
  best_value_ = std::min(best_value_, value);
  if (trace_) trace_->push_back(best_value_);
  return value;
}

bool BudgetedEvaluator::done() const {
  return evaluations_ >= budget_ || best_precision() <= eps_;
}

double BudgetedEvaluator::best_precision() const {
  if (evaluations_ == 0) return std::numeric_limits<double>::infinity();
  return std::max(best_value_ - problem_.known_optimum_value, 0.0);
}

Optimizer make_random_search(const std::string& name) {
  Optimizer opt;
  opt.name = name;
  opt.run = [](BudgetedEvaluator& eval, Rng& rng) {
    const auto& bounds = eval.problem().bounds;
    std::vector<double> x(bounds.size());
    while (!eval.done()) {
      for (std::size_t i = 0; i < x.size(); ++i)
        x[i] = rng.uniform(bounds[i].first, bounds[i].second);
      eval(x);
    }
  };
  return opt;
}

Optimizer make_one_plus_one_es(const std::string& name) {
  Optimizer opt;
  opt.name = name;
  opt.run = [](BudgetedEvaluator& eval, Rng& rng) {
    const auto& bounds = eval.problem().bounds;
    const std::size_t d = bounds.size();

    std::vector<double> x(d), candidate(d);
    for (std::size_t i = 0; i < d; ++i)
      x[i] = rng.uniform(bounds[i].first, bounds[i].second);
    double fx = eval(x);

    double sigma = 0.25;
    while (!eval.done()) {
      for (std::size_t i = 0; i < d; ++i) {
        const double range = bounds[i].second - bounds[i].first;
        candidate[i] = x[i] + sigma * range * rng.normal();
      }
      const double fc = eval(candidate);
      if (fc <= fx) {
        x = candidate;
        fx = fc;
        sigma *= std::exp(0.25);  // 1/5th success rule
      } else {
        sigma *= std::exp(-0.0625);
      }
      sigma = std::clamp(sigma, 1e-12, 1.0);
    }
  };
  return opt;
}

Optimizer make_differential_evolution(const std::string& name) {
  Optimizer opt;
  opt.name = name;
  opt.run = [](BudgetedEvaluator& eval, Rng& rng) {
    constexpr std::size_t kPop = 20;
    constexpr double kF = 0.5;
    constexpr double kCr = 0.9;
    const auto& bounds = eval.problem().bounds;
    const std::size_t d = bounds.size();

    std::vector<std::vector<double>> pop(kPop, std::vector<double>(d));
    std::vector<double> fitness(kPop);
    for (std::size_t p = 0; p < kPop && !eval.done(); ++p) {
      for (std::size_t i = 0; i < d; ++i)
        pop[p][i] = rng.uniform(bounds[i].first, bounds[i].second);
      fitness[p] = eval(pop[p]);
    }

    std::vector<double> trial(d);
    while (!eval.done()) {
      for (std::size_t p = 0; p < kPop && !eval.done(); ++p) {
        std::size_t a, b, c;
        do a = static_cast<std::size_t>(rng.below(kPop)); while (a == p);
        do b = static_cast<std::size_t>(rng.below(kPop));
        while (b == p || b == a);
        do c = static_cast<std::size_t>(rng.below(kPop));
        while (c == p || c == a || c == b);

        const std::size_t forced = static_cast<std::size_t>(rng.below(d));
        for (std::size_t i = 0; i < d; ++i) {
          if (i == forced || rng.uniform() < kCr)
            trial[i] = pop[a][i] + kF * (pop[b][i] - pop[c][i]);
          else
            trial[i] = pop[p][i];
        }
        const double ft = eval(trial);
        if (ft <= fitness[p]) {
          pop[p] = trial;
          fitness[p] = ft;
        }
      }
    }
  };
  return opt;
}

std::vector<Optimizer> builtin_optimizers() {
  return {make_random_search(), make_one_plus_one_es(),
          make_differential_evolution()};
}

Optimizer make_crippled(const Optimizer& base, const std::string& name,
                        double budget_factor) {
  if (!(budget_factor > 0.0) || budget_factor > 1.0)
    throw DomainError("make_crippled: budget_factor must be in (0, 1]");
  Optimizer opt = base;
  opt.name = name;
  opt.budget_factor = base.budget_factor * budget_factor;
  return opt;
}

ExperimentResult run_experiment(const std::vector<ProblemSpec>& problems,
                                const std::vector<Optimizer>& optimizers,
                                const ExperimentConfig& config,
                                std::uint64_t master_seed) {
  if (config.budget < 1)
    throw DomainError("run_experiment: budget must be >= 1");
  if (config.runs < 1) throw DomainError("run_experiment: runs must be >= 1");

  const std::size_t total =
      problems.size() * optimizers.size() * static_cast<std::size_t>(config.runs);
  ExperimentResult result;
  result.records.resize(total);
  if (config.record_traces) result.traces.resize(total);

  const std::size_t runs = static_cast<std::size_t>(config.runs);
  parallel_for(total, [&](std::size_t flat) {
    const std::size_t p = flat / (optimizers.size() * runs);
    const std::size_t o = (flat / runs) % optimizers.size();
    const std::size_t r = flat % runs;
    const ProblemSpec& problem = problems[p];
    const Optimizer& optimizer = optimizers[o];

    const std::uint64_t seed = derive_seed(master_seed, p, o, r);
    Rng rng(seed);
    const long budget = std::max<long>(
        1, static_cast<long>(std::floor(static_cast<double>(config.budget) *
                                        optimizer.budget_factor)));
    BudgetedEvaluator eval(problem, budget, config.eps,
                           config.record_traces ? &result.traces[flat]
                                                : nullptr);
    optimizer.run(eval, rng);

    RunRecord& record = result.records[flat];
    record.problem = problem.key;
    record.algorithm = optimizer.name;
    record.seed = seed;
    record.best_precision = eval.best_precision();
    record.evaluations_used = eval.evaluations_used();
    record.clamped_proposals = eval.clamped_proposals();
  });

  std::vector<RunObservation> observations;
  observations.reserve(total);
  for (std::size_t flat = 0; flat < total; ++flat) {
    const RunRecord& record = result.records[flat];
    observations.push_back(RunObservation{record.problem, record.algorithm,
                                          static_cast<int>(flat % runs),
                                          record.best_precision});
  }
  result.table = PerformanceTable(std::move(observations));
  return result;
}

std::vector<ela::InstanceSource> instance_sources(
    const std::vector<ProblemSpec>& problems) {
  std::vector<ela::InstanceSource> sources;
  sources.reserve(problems.size());
  for (const auto& problem : problems)
    sources.push_back(
        ela::InstanceSource{problem.key, problem.bounds, problem.evaluate});
  return sources;
}

}  // namespace benchsel::harness
