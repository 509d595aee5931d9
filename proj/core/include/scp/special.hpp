#pragma once

namespace scp::special {

/// Modified Bessel function of the second kind K_nu(x) for real nu >= 0, x > 0.
///
/// Temme's series is used for x < 2 and Steed's continued fraction (CF2) for
/// x >= 2, both on the reduced order |mu| <= 1/2, followed by forward
/// recurrence up to nu. Relative accuracy is a few ulp over the range used by
/// the Matern family.
double bessel_k(double nu, double x);

/// exp(x) * K_nu(x); finite where K_nu itself would underflow.
double bessel_k_scaled(double nu, double x);

double normal_cdf(double z);

/// Inverse of the standard normal CDF, p in (0, 1).
double normal_quantile(double p);

}  // namespace scp::special
