#pragma once

#include <span>
#include <vector>

namespace svadf {

/**
 * @brief Empirical quantile by linear interpolation between order statistics.
 *
 * With the sample sorted as x(0) <= ... <= x(N-1), the q-quantile is
 * x(k) + (h - k) (x(k+1) - x(k)) where h = (N - 1) q and k = floor(h).
 * This is Hyndman-Fan type 7, the default in R and NumPy.
 */
double empirical_quantile(std::span<const double> data, double q);

/// Several quantiles with a single sort.
std::vector<double> empirical_quantiles(std::span<const double> data, std::span<const double> qs);

/// Type-7 quantile of data that is already sorted ascending.
double sorted_quantile(std::span<const double> sorted, double q);

}  // namespace svadf
