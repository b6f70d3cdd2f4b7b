#include "placenet/powerlaw.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <vector>

#include "placenet/error.hpp"

namespace placenet {

namespace {

// B_{2j} / (2j)! for j = 1..7
constexpr std::array<double, 7> kBernoulliOverFactorial = {
    1.0 / 12.0,         -1.0 / 720.0,          1.0 / 30240.0,           -1.0 / 1209600.0,
    1.0 / 47900160.0,   -691.0 / 1307674368000.0, 1.0 / 74724249600.0};

constexpr int kDirectTerms = 16;

/// Maximise a concave function on [lo, hi]: grid at `step`, refined by golden-section.
template <typename F>
double maximise_concave(F&& f, double lo, double hi) {
  auto grid = [&](double a, double b, double step) {
    double best_x = a;
    double best_f = -std::numeric_limits<double>::infinity();
    const auto count = static_cast<int>(std::ceil((b - a) / step));
    for (int k = 0; k <= count; ++k) {
      const double x = std::min(b, a + step * k);
      const double v = f(x);
      if (v > best_f) {
        best_f = v;
        best_x = x;
      }
    }
    return best_x;
  };
  double x = grid(lo, hi, 1e-2);
  x = grid(std::max(lo, x - 1e-2), std::min(hi, x + 1e-2), 1e-4);

  double a = std::max(lo, x - 1e-4);
  double b = std::min(hi, x + 1e-4);
  const double invphi = (std::sqrt(5.0) - 1.0) / 2.0;
  double c = b - invphi * (b - a);
  double d = a + invphi * (b - a);
  double fc = f(c), fd = f(d);
  while (b - a > 1e-9) {
    if (fc > fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - invphi * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + invphi * (b - a);
      fd = f(d);
    }
  }
  return 0.5 * (a + b);
}

struct Tail {
  std::vector<std::int64_t> values;  // sorted
  double sum_log = 0.0;
};

Tail make_tail(const std::vector<std::int64_t>& sorted, std::int64_t x_min) {
  Tail t;
  t.values.assign(std::lower_bound(sorted.begin(), sorted.end(), x_min), sorted.end());
  for (const auto x : t.values) t.sum_log += std::log(static_cast<double>(x));
  return t;
}

double mle_exponent(const Tail& tail, std::int64_t x_min) {
  const auto n = tail.values.size();
  const auto ll = [&](double beta) { return discrete_power_law_log_likelihood(beta, n, tail.sum_log, x_min); };
  return maximise_concave(ll, 1.0 + 1e-6, kMaxExponent);
}

double ks_distance(const Tail& tail, double beta, std::int64_t x_min) {
  const double z0 = hurwitz_zeta(beta, static_cast<double>(x_min));
  const auto n = static_cast<double>(tail.values.size());
  double d = 0.0;
  std::size_t i = 0;
  while (i < tail.values.size()) {
    const auto x = tail.values[i];
    while (i < tail.values.size() && tail.values[i] == x) ++i;
    const double empirical = static_cast<double>(i) / n;
    const double model = 1.0 - hurwitz_zeta(beta, static_cast<double>(x + 1)) / z0;
    d = std::max(d, std::abs(empirical - model));
  }
  return d;
}

}  // namespace

double hurwitz_zeta(double s, double q) {
  if (!(s > 1.0) || !(q > 0.0)) throw DomainError("hurwitz_zeta needs s > 1 and q > 0");
  double sum = 0.0;
  for (int k = 0; k < kDirectTerms; ++k) sum += std::pow(q + k, -s);
  const double a = q + kDirectTerms;
  sum += std::pow(a, 1.0 - s) / (s - 1.0) + 0.5 * std::pow(a, -s);
  // Euler-Maclaurin corrections: B_{2j}/(2j)! * s(s+1)...(s+2j-2) * a^{-s-2j+1}
  double rising = s;
  double power = std::pow(a, -s - 1.0);
  const double inv_a2 = 1.0 / (a * a);
  for (std::size_t j = 0; j < kBernoulliOverFactorial.size(); ++j) {
    sum += kBernoulliOverFactorial[j] * rising * power;
    const double m = static_cast<double>(2 * j + 1);
    rising *= (s + m) * (s + m + 1.0);
    power *= inv_a2;
  }
  return sum;
}

double discrete_power_law_log_likelihood(double beta, std::size_t n, double sum_log_x, std::int64_t x_min) {
  return -static_cast<double>(n) * std::log(hurwitz_zeta(beta, static_cast<double>(x_min))) - beta * sum_log_x;
}

PowerLawFit fit_power_law(std::span<const std::int64_t> samples, std::optional<std::int64_t> x_min) {
  std::vector<std::int64_t> sorted(samples.begin(), samples.end());
  std::sort(sorted.begin(), sorted.end());
  if (!sorted.empty() && sorted.front() < 1) throw DomainError("power-law samples must be positive integers");

  auto fit_at = [&](std::int64_t xm, const Tail& tail) {
    PowerLawFit fit;
    fit.x_min = xm;
    fit.n_tail = tail.values.size();
    fit.exponent = mle_exponent(tail, xm);
    fit.ks_statistic = ks_distance(tail, fit.exponent, xm);
    return fit;
  };

  if (x_min) {
    if (*x_min < 1) throw DomainError("x_min must be at least 1");
    const auto tail = make_tail(sorted, *x_min);
    if (tail.values.size() < kMinTailSamples) {
      throw DomainError("power-law fit needs at least 10 samples >= x_min, got " +
                        std::to_string(tail.values.size()));
    }
    if (tail.values.front() == tail.values.back()) throw DomainError("power-law fit: degenerate tail");
    return fit_at(*x_min, tail);
  }

  std::vector<std::int64_t> candidates = sorted;
  candidates.erase(std::unique(candidates.begin(), candidates.end()), candidates.end());
  std::optional<PowerLawFit> best;
  for (const auto xm : candidates) {
    const auto tail = make_tail(sorted, xm);
    if (tail.values.size() < kMinTailSamples) break;
    if (tail.values.front() == tail.values.back()) break;
    const auto fit = fit_at(xm, tail);
    if (!best || fit.ks_statistic < best->ks_statistic) best = fit;
  }
  if (!best) throw DomainError("power-law fit: too few or degenerate tail samples");
  return *best;
}

}  // namespace placenet
