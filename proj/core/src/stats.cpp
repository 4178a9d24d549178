#include "benchsel/stats.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <vector>

#include "benchsel/error.hpp"

namespace benchsel::stats {

namespace {

constexpr double kPi = 3.141592653589793238462643383279502884;
constexpr double kSqrt2 = 1.4142135623730951;
constexpr double kInvSqrt2Pi = 0.3989422804014327;

// Regularized lower incomplete gamma P(a, x) by series expansion (x < a+1).
double gamma_p_series(double a, double x) {
  double ap = a;
  double sum = 1.0 / a;
  double del = sum;
  for (int n = 0; n < 500; ++n) {
    ap += 1.0;
    del *= x / ap;
    sum += del;
    if (std::fabs(del) < std::fabs(sum) * 1e-16) break;
  }
  return sum * std::exp(-x + a * std::log(x) - std::lgamma(a));
}

// Regularized upper incomplete gamma Q(a, x) by modified Lentz continued
// fraction (x >= a+1).
double gamma_q_cf(double a, double x) {
  const double tiny = 1e-300;
  double b = x + 1.0 - a;
  double c = 1.0 / tiny;
  double d = 1.0 / b;
  double h = d;
  for (int i = 1; i <= 500; ++i) {
    const double an = -i * (i - a);
    b += 2.0;
    d = an * d + b;
    if (std::fabs(d) < tiny) d = tiny;
    c = b + an / c;
    if (std::fabs(c) < tiny) c = tiny;
    d = 1.0 / d;
    const double del = d * c;
    h *= del;
    if (std::fabs(del - 1.0) < 1e-16) break;
  }
  return std::exp(-x + a * std::log(x) - std::lgamma(a)) * h;
}

// Adaptive Simpson with error-controlled bisection.
double adaptive_simpson_rec(const std::function<double(double)>& f, double a,
                            double b, double fa, double fm, double fb,
                            double whole, double tol, int depth) {
  const double m = 0.5 * (a + b);
  const double lm = 0.5 * (a + m);
  const double rm = 0.5 * (m + b);
  const double flm = f(lm);
  const double frm = f(rm);
  const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
  const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
  const double delta = left + right - whole;
  if (depth <= 0 || std::fabs(delta) <= 15.0 * tol)
    return left + right + delta / 15.0;
  return adaptive_simpson_rec(f, a, m, fa, flm, fm, left, 0.5 * tol,
                              depth - 1) +
         adaptive_simpson_rec(f, m, b, fm, frm, fb, right, 0.5 * tol,
                              depth - 1);
}

double adaptive_simpson(const std::function<double(double)>& f, double a,
                        double b, double tol) {
  const double m = 0.5 * (a + b);
  const double fa = f(a), fm = f(m), fb = f(b);
  const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
  return adaptive_simpson_rec(f, a, b, fa, fm, fb, whole, tol, 48);
}

}  // namespace

double normal_pdf(double x) { return kInvSqrt2Pi * std::exp(-0.5 * x * x); }

double normal_cdf(double x) { return 0.5 * std::erfc(-x / kSqrt2); }

double chi_square_sf(double x, double dof) {
  if (!(dof > 0)) throw DomainError("chi_square_sf: dof must be positive");
  if (x <= 0) return 1.0;
  const double a = 0.5 * dof;
  const double xx = 0.5 * x;
  const double q = (xx < a + 1.0) ? 1.0 - gamma_p_series(a, xx)
                                  : gamma_q_cf(a, xx);
  return std::clamp(q, 0.0, 1.0);
}

double kolmogorov_sf(double lambda) {
  if (lambda <= 0) return 1.0;
  const double l2 = lambda * lambda;
  if (lambda < 1.18) {
    // Jacobi theta transform; converges in a few terms for small lambda.
    const double factor = std::sqrt(2.0 * kPi) / lambda;
    double cdf = 0.0;
    for (int i = 1; i <= 20; ++i) {
      const double j = 2.0 * i - 1.0;
      const double term = std::exp(-j * j * kPi * kPi / (8.0 * l2));
      cdf += term;
      if (term < 1e-18) break;
    }
    return std::clamp(1.0 - factor * cdf, 0.0, 1.0);
  }
  double sf = 0.0;
  double sign = 1.0;
  for (int i = 1; i <= 200; ++i) {
    const double term = std::exp(-2.0 * i * i * l2);
    sf += sign * term;
    sign = -sign;
    if (term < 1e-18) break;
  }
  return std::clamp(2.0 * sf, 0.0, 1.0);
}

double studentized_range_cdf(double q, int k) {
  if (k < 2) throw DomainError("studentized_range_cdf: k must be >= 2");
  if (q <= 0) return 0.0;
  const auto integrand = [q, k](double z) {
    const double inner = normal_cdf(z) - normal_cdf(z - q);
    if (inner <= 0.0) return 0.0;
    return normal_pdf(z) * std::pow(inner, k - 1);
  };
  const double integral = adaptive_simpson(integrand, -8.0, 8.0 + q, 1e-10);
  return std::clamp(static_cast<double>(k) * integral, 0.0, 1.0);
}

double studentized_range_sf(double q, int k) {
  return std::clamp(1.0 - studentized_range_cdf(q, k), 0.0, 1.0);
}

KsResult ks_two_sample(std::span<const double> a, std::span<const double> b) {
  if (a.size() < 2 || b.size() < 2)
    throw DomainError("ks_two_sample: each sample needs >= 2 values");

  std::vector<double> sa(a.begin(), a.end());
  std::vector<double> sb(b.begin(), b.end());
  std::sort(sa.begin(), sa.end());
  std::sort(sb.begin(), sb.end());

  const double na = static_cast<double>(sa.size());
  const double nb = static_cast<double>(sb.size());
  std::size_t i = 0, j = 0;
  double d = 0.0;
  while (i < sa.size() && j < sb.size()) {
    const double x = std::min(sa[i], sb[j]);
    while (i < sa.size() && sa[i] <= x) ++i;
    while (j < sb.size() && sb[j] <= x) ++j;
    d = std::max(d, std::fabs(static_cast<double>(i) / na -
                              static_cast<double>(j) / nb));
  }

  const double ne = na * nb / (na + nb);
  const double lambda = (std::sqrt(ne) + 0.12 + 0.11 / std::sqrt(ne)) * d;
  return KsResult{d, kolmogorov_sf(lambda)};
}

double mean(std::span<const double> xs) {
  if (xs.empty()) return 0.0;
  double sum = 0.0;
  for (double x : xs) sum += x;
  return sum / static_cast<double>(xs.size());
}

double sample_sd(std::span<const double> xs) {
  if (xs.size() < 2) return 0.0;
  const double m = mean(xs);
  double ss = 0.0;
  for (double x : xs) ss += (x - m) * (x - m);
  return std::sqrt(ss / static_cast<double>(xs.size() - 1));
}

double pearson(std::span<const double> xs, std::span<const double> ys) {
  if (xs.size() != ys.size())
    throw DomainError("pearson: length mismatch");
  if (xs.size() < 2) return 0.0;
  const double mx = mean(xs);
  const double my = mean(ys);
  double sxy = 0.0, sxx = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const double dx = xs[i] - mx;
    const double dy = ys[i] - my;
    sxy += dx * dy;
    sxx += dx * dx;
    syy += dy * dy;
  }
  if (sxx <= 0.0 || syy <= 0.0) return 0.0;
  return sxy / std::sqrt(sxx * syy);
}

double median(std::span<const double> xs) {
  if (xs.empty()) throw DomainError("median of empty span");
  std::vector<double> copy(xs.begin(), xs.end());
  std::sort(copy.begin(), copy.end());
  const std::size_t n = copy.size();
  return (n % 2 == 1) ? copy[n / 2]
                      : 0.5 * (copy[n / 2 - 1] + copy[n / 2]);
}

}  // namespace benchsel::stats
