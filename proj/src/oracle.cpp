#include "dws/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace dws::oracle {

namespace {

void enumerate(const std::vector<double>& weights, int s,
               std::vector<int>& picked, std::vector<bool>& used,
               double prob, double remaining, SelectionDist& out) {
  if (static_cast<int>(picked.size()) == s) {
    std::vector<int> key = picked;
    std::sort(key.begin(), key.end());
    out[key] += prob;
    return;
  }
  for (int i = 0; i < static_cast<int>(weights.size()); ++i) {
    if (used[i]) continue;
    used[i] = true;
    picked.push_back(i);
    enumerate(weights, s, picked, used, prob * weights[i] / remaining,
              remaining - weights[i], out);
    picked.pop_back();
    used[i] = false;
  }
}

double kahan_total(const SelectionDist& dist) {
  double sum = 0.0, comp = 0.0;
  for (const auto& [ids, p] : dist) {
    double y = p - comp;
    double t = sum + y;
    comp = (t - sum) - y;
    sum = t;
  }
  return sum;
}

}  // namespace

SelectionDist exact_swor_distribution(const std::vector<double>& weights,
                                      int s) {
  int n = static_cast<int>(weights.size());
  if (n == 0 || n > 8) {
    throw std::domain_error("exact_swor_distribution: need 1..8 items");
  }
  if (s < 1 || s > n) {
    throw std::domain_error("exact_swor_distribution: s out of range");
  }
  double total = 0.0;
  for (double w : weights) {
    if (!(w > 0)) throw std::domain_error("weights must be positive");
    total += w;
  }
  SelectionDist out;
  std::vector<int> picked;
  std::vector<bool> used(n, false);
  enumerate(weights, s, picked, used, 1.0, total, out);
  double mass = kahan_total(out);
  if (std::fabs(mass - 1.0) > 1e-12) {
    throw std::logic_error("enumeration mass " + std::to_string(mass));
  }
  return out;
}

std::vector<int> centralized_key_sampler(const std::vector<double>& weights,
                                         int s, BitSource& src) {
  int n = static_cast<int>(weights.size());
  if (s < 1 || s > n) {
    throw std::domain_error("centralized_key_sampler: s out of range");
  }
  std::vector<std::pair<double, int>> keys(n);
  for (int i = 0; i < n; ++i) {
    keys[i] = {gen_key(weights[i], src).value, i};
  }
  std::sort(keys.begin(), keys.end(), [](const auto& a, const auto& b) {
    if (a.first != b.first) return a.first > b.first;
    return a.second > b.second;
  });
  std::vector<int> out(s);
  for (int i = 0; i < s; ++i) out[i] = keys[i].second;
  return out;
}

TailCheck exp_sum_tail_check(int s, double eps, int trials, BitSource& src) {
  if (s < 1 || trials < 1 || !(eps > 0)) {
    throw std::domain_error("exp_sum_tail_check: bad arguments");
  }
  std::uint64_t outside = 0;
  for (int t = 0; t < trials; ++t) {
    double sum = 0.0;
    for (int i = 0; i < s; ++i) {
      sum += -std::log(uniform_from_prefix(src.next_word()));
    }
    if (std::fabs(sum - s) > eps * s) ++outside;
  }
  double rate = static_cast<double>(outside) / trials;
  double bound = 2.0 * std::exp(-eps * eps * s / 5.0);
  return TailCheck{rate, bound, rate <= bound};
}

double regularized_gamma_p(double a, double x) {
  if (!(a > 0) || x < 0) throw std::domain_error("gamma_p: bad arguments");
  if (x == 0) return 0.0;
  double lg = std::lgamma(a);
  if (x < a + 1.0) {
    // series expansion
    double ap = a;
    double sum = 1.0 / a;
    double del = sum;
    for (int i = 0; i < 500; ++i) {
      ap += 1.0;
      del *= x / ap;
      sum += del;
      if (std::fabs(del) < std::fabs(sum) * 1e-16) break;
    }
    return sum * std::exp(-x + a * std::log(x) - lg);
  }
  // continued fraction (modified Lentz)
  const double fpmin = 1e-300;
  double b = x + 1.0 - a;
  double c = 1.0 / fpmin;
  double d = 1.0 / b;
  double h = d;
  for (int i = 1; i <= 500; ++i) {
    double an = -static_cast<double>(i) * (i - a);
    b += 2.0;
    d = an * d + b;
    if (std::fabs(d) < fpmin) d = fpmin;
    c = b + an / c;
    if (std::fabs(c) < fpmin) c = fpmin;
    d = 1.0 / d;
    double del = d * c;
    h *= del;
    if (std::fabs(del - 1.0) < 1e-16) break;
  }
  return 1.0 - std::exp(-x + a * std::log(x) - lg) * h;
}

double chi_square_quantile(int df, double p) {
  if (df < 1 || !(p > 0) || !(p < 1)) {
    throw std::domain_error("chi_square_quantile: bad arguments");
  }
  double a = df / 2.0;
  double lo = 0.0;
  double hi = df + 10.0 * std::sqrt(2.0 * df) + 50.0;
  while (regularized_gamma_p(a, hi / 2.0) < p) hi *= 2.0;
  for (int i = 0; i < 200; ++i) {
    double mid = 0.5 * (lo + hi);
    if (regularized_gamma_p(a, mid / 2.0) < p) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

ChiSquareResult chi_square_gof(const std::vector<std::uint64_t>& observed,
                               const std::vector<double>& expected_probs,
                               double alpha) {
  if (observed.size() != expected_probs.size() || observed.empty()) {
    throw std::domain_error("chi_square_gof: misaligned inputs");
  }
  std::uint64_t n = std::accumulate(observed.begin(), observed.end(),
                                    std::uint64_t{0});
  if (n == 0) throw std::domain_error("chi_square_gof: no observations");
  double stat = 0.0;
  for (std::size_t i = 0; i < observed.size(); ++i) {
    double expct = expected_probs[i] * static_cast<double>(n);
    if (expct < 5.0) {
      throw std::domain_error(
          "chi_square_gof: expected count below 5 in cell " +
          std::to_string(i) + "; pool cells first");
    }
    double diff = static_cast<double>(observed[i]) - expct;
    stat += diff * diff / expct;
  }
  int dof = static_cast<int>(observed.size()) - 1;
  if (dof == 0) return ChiSquareResult{stat, 0, 0.0, true};
  double crit = chi_square_quantile(dof, 1.0 - alpha);
  return ChiSquareResult{stat, dof, crit, stat < crit};
}

ChiSquareResult chi_square_homogeneity(const std::vector<std::uint64_t>& a,
                                       const std::vector<std::uint64_t>& b,
                                       double alpha) {
  if (a.size() != b.size() || a.empty()) {
    throw std::domain_error("chi_square_homogeneity: misaligned inputs");
  }
  double na = static_cast<double>(
      std::accumulate(a.begin(), a.end(), std::uint64_t{0}));
  double nb = static_cast<double>(
      std::accumulate(b.begin(), b.end(), std::uint64_t{0}));
  if (na == 0 || nb == 0) {
    throw std::domain_error("chi_square_homogeneity: empty sample");
  }
  double total = na + nb;
  double stat = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    double col = static_cast<double>(a[i]) + static_cast<double>(b[i]);
    double ea = col * na / total;
    double eb = col * nb / total;
    if (ea < 5.0 || eb < 5.0) {
      throw std::domain_error(
          "chi_square_homogeneity: expected count below 5 in cell " +
          std::to_string(i) + "; pool cells first");
    }
    double da = static_cast<double>(a[i]) - ea;
    double db = static_cast<double>(b[i]) - eb;
    stat += da * da / ea + db * db / eb;
  }
  int dof = static_cast<int>(a.size()) - 1;
  if (dof == 0) return ChiSquareResult{stat, 0, 0.0, true};
  double crit = chi_square_quantile(dof, 1.0 - alpha);
  return ChiSquareResult{stat, dof, crit, stat < crit};
}

double ks_statistic_exp1(std::vector<double> samples) {
  if (samples.empty()) throw std::domain_error("ks: no samples");
  std::sort(samples.begin(), samples.end());
  double n = static_cast<double>(samples.size());
  double d = 0.0;
  for (std::size_t i = 0; i < samples.size(); ++i) {
    double cdf = -std::expm1(-samples[i]);
    double hi = (static_cast<double>(i) + 1.0) / n - cdf;
    double lo = cdf - static_cast<double>(i) / n;
    d = std::max({d, hi, lo});
  }
  return d;
}

double ks_threshold(std::size_t n, double alpha) {
  // asymptotic Kolmogorov tail: P[D > c/sqrt(n)] ~ 2exp(-2c^2)
  double c = std::sqrt(-std::log(alpha / 2.0) / 2.0);
  return c / std::sqrt(static_cast<double>(n));
}

}  // namespace dws::oracle
