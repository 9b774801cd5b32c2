#pragma once

namespace svadf {

/// Standard normal quantile (Wichura AS241, relative accuracy about 1e-16).
/// Throws ErrorKind::Domain unless 0 < p < 1.
double normal_quantile(double p);

/// Standard Cauchy quantile tan(pi (p - 1/2)). Throws ErrorKind::Domain unless 0 < p < 1.
double cauchy_quantile(double p);

double normal_cdf(double x);

}  // namespace svadf
