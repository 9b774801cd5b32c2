#include "svadf/estimator.hpp"

#include <cmath>

#include "svadf/error.hpp"

namespace svadf::estimator {

RecursiveLeastSquares::RecursiveLeastSquares(std::size_t num_params)
    : p_(num_params), r_(num_params * num_params, 0.0), qty_(num_params, 0.0), scratch_(num_params) {
    if (num_params == 0) throw Error(ErrorKind::InvalidSpec, "regression needs at least one parameter");
}

void RecursiveLeastSquares::add(std::span<const double> row, double y) {
    if (row.size() != p_) throw Error(ErrorKind::InvalidSpec, "row length does not match the design");
    std::copy(row.begin(), row.end(), scratch_.begin());
    double* a = scratch_.data();
    for (std::size_t k = 0; k < p_; ++k) {
        if (a[k] == 0.0) continue;
        double& rkk = r_[k * p_ + k];
        const double h = std::hypot(rkk, a[k]);
        const double c = rkk / h;
        const double s = a[k] / h;
        rkk = h;
        for (std::size_t j = k + 1; j < p_; ++j) {
            const double rkj = r_[k * p_ + j];
            r_[k * p_ + j] = c * rkj + s * a[j];
            a[j] = c * a[j] - s * rkj;
        }
        const double q = qty_[k];
        qty_[k] = c * q + s * y;
        y = c * y - s * q;
    }
    ssr_ += static_cast<long double>(y) * y;
    ++count_;
}

double RecursiveLeastSquares::column_norm_sq(std::size_t j) const {
    double s = 0.0;
    for (std::size_t k = 0; k <= j; ++k) s += r(k, j) * r(k, j);
    return s;
}

bool RecursiveLeastSquares::well_conditioned(double rel_tol) const {
    for (std::size_t k = 0; k < p_; ++k) {
        const double d = std::abs(r(k, k));
        if (!(d > rel_tol * std::sqrt(column_norm_sq(k)))) return false;
    }
    return true;
}

std::vector<double> RecursiveLeastSquares::coefficients() const {
    std::vector<double> beta(p_);
    for (std::size_t i = p_; i-- > 0;) {
        double acc = qty_[i];
        for (std::size_t j = i + 1; j < p_; ++j) acc -= r(i, j) * beta[j];
        beta[i] = acc / r(i, i);
    }
    return beta;
}

double RecursiveLeastSquares::inverse_gram_diag(std::size_t j) const {
    // Row j of R^{-1}; entries left of the diagonal are zero.
    std::vector<double> inv_row(p_, 0.0);
    inv_row[j] = 1.0 / r(j, j);
    for (std::size_t k = j + 1; k < p_; ++k) {
        double acc = 0.0;
        for (std::size_t i = j; i < k; ++i) acc += inv_row[i] * r(i, k);
        inv_row[k] = -acc / r(k, k);
    }
    double s = 0.0;
    for (double v : inv_row) s += v * v;
    return s;
}

}  // namespace svadf::estimator
