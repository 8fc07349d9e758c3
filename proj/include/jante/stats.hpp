#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace jante::stats {

struct LinearFit {
  double slope = 0.0;
  double intercept = 0.0;
  double r_squared = 0.0;
  std::size_t points = 0;
};

/// Ordinary least squares y = intercept + slope * x. Needs >= 2 distinct x.
LinearFit least_squares(std::span<const double> x, std::span<const double> y);

struct WeightedFit {
  double slope = 0.0;
  double intercept = 0.0;
  double se_slope = 0.0;
  double se_intercept = 0.0;
};

/// Least squares with known per-point variances; standard errors come from
/// (X^T W X)^-1 with W = diag(1 / variance).
WeightedFit weighted_least_squares(std::span<const double> x, std::span<const double> y,
                                   std::span<const double> variance);

/// One-sided Wilson score lower bound for a binomial proportion.
double wilson_lower(std::size_t successes, std::size_t trials, double z);

/// z for a one-sided 99% bound.
inline constexpr double kZ99 = 2.3263478740408408;

/// Linear-interpolated quantile (type 7) of unsorted data; q in [0,1].
double quantile(std::vector<double> values, double q);

double mean(std::span<const double> values);

}  // namespace jante::stats
