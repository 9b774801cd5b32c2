#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "svadf/series.hpp"

namespace svadf {

inline constexpr std::size_t kDefaultVolWindow = 40;

/**
 * Sample standard deviation of log-returns over the previous `window`
 * returns. Entry t uses returns r_{t-window+1..t}, where r_t = log(p_t/p_{t-1});
 * entries with t < window are empty.
 */
std::vector<std::optional<double>> rolling_volatility(const PriceSeries& series,
                                                      std::size_t window = kDefaultVolWindow);

}  // namespace svadf
