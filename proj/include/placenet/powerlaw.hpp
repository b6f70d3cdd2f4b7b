#pragma once

#include <cstdint>
#include <optional>
#include <span>

namespace placenet {

/// Hurwitz zeta sum_{k>=0} (k + q)^-s for s > 1, q > 0 (Euler-Maclaurin).
double hurwitz_zeta(double s, double q);

/// Log-likelihood of a discrete power law p(x) = x^-beta / zeta(beta, x_min).
double discrete_power_law_log_likelihood(double beta, std::size_t n, double sum_log_x, std::int64_t x_min);

struct PowerLawFit {
  double exponent = 0.0;
  std::int64_t x_min = 1;
  std::size_t n_tail = 0;
  double ks_statistic = 0.0;
};

inline constexpr std::size_t kMinTailSamples = 10;
inline constexpr double kMaxExponent = 6.0;

/// Discrete power-law MLE. With x_min given, fits the tail x >= x_min; otherwise
/// picks x_min among observed values by minimising the KS distance. Throws
/// DomainError for fewer than kMinTailSamples tail samples or a degenerate tail.
PowerLawFit fit_power_law(std::span<const std::int64_t> samples, std::optional<std::int64_t> x_min = std::nullopt);

}  // namespace placenet
