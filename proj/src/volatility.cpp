#include "svadf/volatility.hpp"

#include <cmath>
#include <string>

#include "svadf/error.hpp"

namespace svadf {

std::vector<std::optional<double>> rolling_volatility(const PriceSeries& series, std::size_t window) {
    if (window < 2) throw Error(ErrorKind::InvalidSpec, "volatility window must be >= 2");
    if (series.size() <= window) {
        throw Error(ErrorKind::WindowSize, "series of " + std::to_string(series.size()) +
                                               " values is too short for a window of " + std::to_string(window));
    }
    const PriceSeries logged = series.log();
    const auto logs = logged.values();
    std::vector<double> returns(logs.size(), 0.0);
    for (std::size_t t = 1; t < logs.size(); ++t) returns[t] = logs[t] - logs[t - 1];

    std::vector<std::optional<double>> out(logs.size());
    for (std::size_t t = window; t < logs.size(); ++t) {
        double mean = 0.0;
        for (std::size_t k = t + 1 - window; k <= t; ++k) mean += returns[k];
        mean /= static_cast<double>(window);
        double ss = 0.0;
        for (std::size_t k = t + 1 - window; k <= t; ++k) ss += (returns[k] - mean) * (returns[k] - mean);
        out[t] = std::sqrt(ss / static_cast<double>(window - 1));
    }
    return out;
}

}  // namespace svadf
