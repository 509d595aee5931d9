#include "scp/special.hpp"

#include <array>
#include <cmath>
#include <limits>
#include <numbers>

#include <boost/math/distributions/normal.hpp>

#include "scp/errors.hpp"

namespace scp::special {
namespace {

constexpr double kEps = 1e-16;
constexpr int kMaxIterations = 10000;

// Taylor coefficients of 1/Gamma(1+z) about z = 0.
constexpr std::array<double, 30> kRecipGammaTaylor = {
    1.0,
    0.57721566490153286061,
    -0.65587807152025388108,
    -0.042002635034095235529,
    0.1665386113822914895,
    -0.042197734555544336748,
    -0.0096219715278769735621,
    0.0072189432466630995424,
    -0.0011651675918590651121,
    -0.00021524167411495097282,
    0.00012805028238811618615,
    -0.000020134854780788238656,
    -1.2504934821426706573e-6,
    1.1330272319816958824e-6,
    -2.0563384169776071035e-7,
    6.1160951044814158179e-9,
    5.0020076444692229301e-9,
    -1.1812745704870201446e-9,
    1.0434267116911005105e-10,
    7.782263439905071254e-12,
    -3.6968056186422057082e-12,
    5.100370287454475979e-13,
    -2.0583260535665067832e-14,
    -5.3481225394230179824e-15,
    1.2267786282382607902e-15,
    -1.1812593016974587695e-16,
    1.1866922547516003326e-18,
    1.4123806553180317816e-18,
    -2.2987456844353702066e-19,
    1.7144063219273374334e-20,
};

struct TemmeGammas {
  double gam1;   // (1/Gamma(1-mu) - 1/Gamma(1+mu)) / (2 mu)
  double gam2;   // (1/Gamma(1-mu) + 1/Gamma(1+mu)) / 2
  double gampl;  // 1/Gamma(1+mu)
  double gammi;  // 1/Gamma(1-mu)
};

// Odd and even parts of the Taylor series give gam1 and gam2 without the
// cancellation that the direct differences suffer near mu = 0.
TemmeGammas temme_gammas(double mu) {
  const double mu2 = mu * mu;
  double odd = 0.0;
  double even = 0.0;
  double pw = 1.0;
  for (std::size_t k = 0; k + 1 < kRecipGammaTaylor.size(); k += 2) {
    even += kRecipGammaTaylor[k] * pw;
    odd += kRecipGammaTaylor[k + 1] * pw;
    pw *= mu2;
  }
  TemmeGammas g{};
  g.gam1 = -odd;
  g.gam2 = even;
  g.gampl = even + mu * odd;
  g.gammi = even - mu * odd;
  return g;
}

struct KPair {
  double k_mu;   // K_mu(x), possibly scaled by exp(x)
  double k_mu1;  // K_{mu+1}(x), same scaling
};

// Temme's series, x < 2. Returns unscaled values.
KPair temme_series(double mu, double x) {
  const double x2 = 0.5 * x;
  const double pimu = std::numbers::pi * mu;
  const double fact = std::abs(pimu) < kEps ? 1.0 : pimu / std::sin(pimu);
  double d = -std::log(x2);
  double e = mu * d;
  const double fact2 = std::abs(e) < kEps ? 1.0 : std::sinh(e) / e;
  const TemmeGammas g = temme_gammas(mu);
  double ff = fact * (g.gam1 * std::cosh(e) + g.gam2 * fact2 * d);
  double sum = ff;
  e = std::exp(e);
  double p = 0.5 * e / g.gampl;
  double q = 0.5 / (e * g.gammi);
  double c = 1.0;
  d = x2 * x2;
  double sum1 = p;
  const double mu2 = mu * mu;
  int i = 1;
  for (; i < kMaxIterations; ++i) {
    ff = (i * ff + p + q) / (i * static_cast<double>(i) - mu2);
    c *= d / i;
    p /= i - mu;
    q /= i + mu;
    const double del = c * ff;
    sum += del;
    const double del1 = c * (p - i * ff);
    sum1 += del1;
    if (std::abs(del) < std::abs(sum) * kEps) {
      break;
    }
  }
  if (i == kMaxIterations) {
    throw NumericalFault("bessel_k: Temme series failed to converge");
  }
  return {sum, sum1 * 2.0 / x};
}

// Steed's CF2 (Temme's normalisation), x >= 2. Returns exp(x)-scaled values.
KPair steed_cf2_scaled(double mu, double x) {
  const double mu2 = mu * mu;
  double b = 2.0 * (1.0 + x);
  double d = 1.0 / b;
  double h = d;
  double delh = d;
  double q1 = 0.0;
  double q2 = 1.0;
  const double a1 = 0.25 - mu2;
  double q = a1;
  double c = a1;
  double a = -a1;
  double s = 1.0 + q * delh;
  int i = 1;
  for (; i < kMaxIterations; ++i) {
    a -= 2 * i;
    c = -a * c / (i + 1.0);
    const double qnew = (q1 - b * q2) / a;
    q1 = q2;
    q2 = qnew;
    q += c * qnew;
    b += 2.0;
    d = 1.0 / (b + a * d);
    delh = (b * d - 1.0) * delh;
    h += delh;
    const double dels = q * delh;
    s += dels;
    if (std::abs(dels / s) < kEps) {
      break;
    }
  }
  if (i == kMaxIterations) {
    throw NumericalFault("bessel_k: continued fraction failed to converge");
  }
  h *= a1;
  const double k_mu = std::sqrt(std::numbers::pi / (2.0 * x)) / s;
  const double k_mu1 = k_mu * (mu + x + 0.5 - h) / x;
  return {k_mu, k_mu1};
}

double bessel_k_impl(double nu, double x, bool scaled) {
  if (!std::isfinite(nu) || !std::isfinite(x) || nu < 0.0 || x <= 0.0) {
    throw InvalidArgument("bessel_k: requires finite nu >= 0 and x > 0");
  }
  const int nl = static_cast<int>(nu + 0.5);
  const double mu = nu - nl;
  KPair k{};
  if (x < 2.0) {
    k = temme_series(mu, x);
    if (scaled) {
      const double ex = std::exp(x);
      k.k_mu *= ex;
      k.k_mu1 *= ex;
    }
  } else {
    k = steed_cf2_scaled(mu, x);
    if (!scaled) {
      const double ex = std::exp(-x);
      k.k_mu *= ex;
      k.k_mu1 *= ex;
    }
  }
  const double two_over_x = 2.0 / x;
  double rkmu = k.k_mu;
  double rk1 = k.k_mu1;
  for (int i = 1; i <= nl; ++i) {
    const double next = (mu + i) * two_over_x * rk1 + rkmu;
    rkmu = rk1;
    rk1 = next;
  }
  return rkmu;
}

}  // namespace

double bessel_k(double nu, double x) { return bessel_k_impl(nu, x, false); }

double bessel_k_scaled(double nu, double x) { return bessel_k_impl(nu, x, true); }

double normal_cdf(double z) { return 0.5 * std::erfc(-z / std::numbers::sqrt2); }

double normal_quantile(double p) {
  if (!(p > 0.0 && p < 1.0)) {
    throw InvalidArgument("normal_quantile: p must lie in (0, 1)");
  }
  static const boost::math::normal_distribution<double> standard{};
  return boost::math::quantile(standard, p);
}

}  // namespace scp::special
