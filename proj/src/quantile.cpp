#include "svadf/quantile.hpp"

#include <algorithm>
#include <cmath>

#include "svadf/error.hpp"

namespace svadf {

double sorted_quantile(std::span<const double> sorted, double q) {
    if (sorted.empty()) throw Error(ErrorKind::Domain, "quantile of an empty sample");
    if (!(q >= 0.0 && q <= 1.0)) throw Error(ErrorKind::Domain, "quantile level must lie in [0, 1]");
    const double h = static_cast<double>(sorted.size() - 1) * q;
    const auto k = static_cast<std::size_t>(std::floor(h));
    if (k + 1 >= sorted.size()) return sorted.back();
    return sorted[k] + (h - static_cast<double>(k)) * (sorted[k + 1] - sorted[k]);
}

double empirical_quantile(std::span<const double> data, double q) {
    std::vector<double> sorted(data.begin(), data.end());
    std::sort(sorted.begin(), sorted.end());
    return sorted_quantile(sorted, q);
}

std::vector<double> empirical_quantiles(std::span<const double> data, std::span<const double> qs) {
    std::vector<double> sorted(data.begin(), data.end());
    std::sort(sorted.begin(), sorted.end());
    std::vector<double> out;
    out.reserve(qs.size());
    for (double q : qs) out.push_back(sorted_quantile(sorted, q));
    return out;
}

}  // namespace svadf
