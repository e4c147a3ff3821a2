#include "eigenrand/specfun.hpp"

#include <cmath>
#include <stdexcept>

#include "eigenrand/measure.hpp"

namespace eigenrand::specfun {

namespace {

constexpr double kPi = 3.141592653589793238462643;
constexpr double kQuarterRootPiInv = 0.7511255444649424828587030;  // pi^{-1/4}

// One step of base-2 rescaling once iterates leave [2^-500, 2^500].
void rescale(double& a, double& b, int& e2) {
  double m = std::fabs(a) > std::fabs(b) ? std::fabs(a) : std::fabs(b);
  if (m > 0x1p500) {
    a *= 0x1p-512;
    b *= 0x1p-512;
    e2 += 512;
  } else if (m > 0 && m < 0x1p-500) {
    a *= 0x1p512;
    b *= 0x1p512;
    e2 -= 512;
  }
}

}  // namespace

double hermite_h(int n, double x) {
  if (n < 0) throw std::domain_error("hermite_h: n < 0");
  // h_{k+1} = x sqrt(2/(k+1)) h_k - sqrt(k/(k+1)) h_{k-1}; the Gaussian
  // weight lives in the seed, so iterates stay O(1) in the classical region.
  int e2 = 0;
  double w = -0.5 * x * x;            // seed exponent, tracked in base 2
  e2 = static_cast<int>(std::floor(w / 0.6931471805599453));
  double hk = kQuarterRootPiInv * std::exp(w - e2 * 0.6931471805599453);
  if (n == 0) return std::ldexp(hk, e2);
  double hk1 = x * std::sqrt(2.0) * hk;
  for (int k = 1; k < n; ++k) {
    double next = x * std::sqrt(2.0 / (k + 1)) * hk1 -
                  std::sqrt(static_cast<double>(k) / (k + 1)) * hk;
    hk = hk1;
    hk1 = next;
    rescale(hk, hk1, e2);
  }
  return std::ldexp(hk1, e2);
}

Eigen::ArrayXd hermite_h_all(int n, double x) {
  if (n < 0) throw std::domain_error("hermite_h_all: n < 0");
  Eigen::ArrayXd out(n + 1);
  int e2 = 0;
  double w = -0.5 * x * x;
  e2 = static_cast<int>(std::floor(w / 0.6931471805599453));
  double hk = kQuarterRootPiInv * std::exp(w - e2 * 0.6931471805599453);
  out[0] = std::ldexp(hk, e2);
  if (n == 0) return out;
  double hk1 = x * std::sqrt(2.0) * hk;
  out[1] = std::ldexp(hk1, e2);
  for (int k = 1; k < n; ++k) {
    double next = x * std::sqrt(2.0 / (k + 1)) * hk1 -
                  std::sqrt(static_cast<double>(k) / (k + 1)) * hk;
    hk = hk1;
    hk1 = next;
    rescale(hk, hk1, e2);
    out[k + 1] = std::ldexp(hk1, e2);
  }
  return out;
}

double hermite_zero(int k) {
  if (k < 0) throw std::domain_error("hermite_zero: k < 0");
  double lg = 0.5 * std::lgamma(2.0 * k + 1.0) - std::lgamma(k + 1.0) -
              k * 0.6931471805599453 - 0.25 * std::log(kPi);
  double v = std::exp(lg);
  return (k % 2 == 0) ? v : -v;
}

double jacobi_p(int n, double alpha, double x) {
  if (alpha <= -1.0) throw std::domain_error("jacobi_p: alpha <= -1");
  if (n < 0) throw std::domain_error("jacobi_p: n < 0");
  if (n == 0) return 1.0;
  double pm1 = 1.0;
  double p = (alpha + 1.0) * x;
  for (int k = 2; k <= n; ++k) {
    // equal-index Jacobi recurrence (middle alpha^2-beta^2 term vanishes)
    double s = 2.0 * k + 2.0 * alpha;
    double c0 = 2.0 * k * (k + 2.0 * alpha) * (s - 2.0);
    double c1 = (s - 1.0) * s * (s - 2.0);
    double c2 = 2.0 * (k + alpha - 1.0) * (k + alpha - 1.0) * s;
    double next = (c1 * x * p - c2 * pm1) / c0;
    pm1 = p;
    p = next;
  }
  return p;
}

Eigen::ArrayXd jacobi_p_all(int n, double alpha, double x) {
  Eigen::ArrayXd out(n + 1);
  out[0] = 1.0;
  if (n == 0) return out;
  out[1] = (alpha + 1.0) * x;
  for (int k = 2; k <= n; ++k) {
    double s = 2.0 * k + 2.0 * alpha;
    double c0 = 2.0 * k * (k + 2.0 * alpha) * (s - 2.0);
    double c1 = (s - 1.0) * s * (s - 2.0);
    double c2 = 2.0 * (k + alpha - 1.0) * (k + alpha - 1.0) * s;
    out[k] = (c1 * x * out[k - 1] - c2 * out[k - 2]) / c0;
  }
  return out;
}

double phi_fn(double u) {
  if (!(u >= 0.0 && u <= 1.0)) throw std::domain_error("phi_fn: u outside [0,1]");
  return 0.5 * std::asin(u) + 0.5 * u * std::sqrt(1.0 - u * u);
}

double muckenhoupt_main(int n, double x) {
  double s = 2.0 * n + 1.0;
  double xmax = std::sqrt(s) - std::pow(s, -1.0 / 6.0);
  if (!(x >= 0.0 && x <= xmax))
    throw std::domain_error("muckenhoupt_main: x outside validity range");
  double amp = std::sqrt(2.0 / kPi) / std::pow(s - x * x, 0.25);
  double phase = s * phi_fn(x / std::sqrt(s)) - 0.5 * n * kPi;
  return amp * std::cos(phase);
}

double lbeta(double a, double b) {
  return std::lgamma(a) + std::lgamma(b) - std::lgamma(a + b);
}

double binom(double n, double k) {
  return std::exp(std::lgamma(n + 1.0) - std::lgamma(k + 1.0) -
                  std::lgamma(n - k + 1.0));
}

double y_norm_const(int d, int n) {
  if (d < 2) throw std::domain_error("y_norm_const: d < 2");
  double mu = measure::sphere_area(d - 2);
  double log_c2 = -(std::log(mu) + std::log(kPi) + lbeta(n + 1.0, 0.5 * (d - 1.0)));
  return std::exp(0.5 * log_c2);
}

double zonal_z(int d, int n, double theta) {
  if (d < 2 || n < 1) throw std::domain_error("zonal_z: d < 2 or n < 1");
  return std::sqrt(static_cast<double>(n)) *
         jacobi_p(n, 0.5 * (d - 2.0), std::cos(theta));
}

double zonal_z_l2(int d, int n) {
  // ||P_n^{(a,a)}||^2 under (1-x^2)^a dx on [-1,1]:
  //   2^{2a+1} Gamma(n+a+1)^2 / ((2n+2a+1) n! Gamma(n+2a+1))
  double a = 0.5 * (d - 2.0);
  double lg = (2.0 * a + 1.0) * 0.6931471805599453 +
              2.0 * std::lgamma(n + a + 1.0) - std::log(2.0 * n + 2.0 * a + 1.0) -
              std::lgamma(n + 1.0) - std::lgamma(n + 2.0 * a + 1.0);
  double w2 = std::exp(lg);
  return std::sqrt(n * w2 * measure::sphere_area(d - 1));
}

double jacobi_band_constant(double alpha, int n_max) {
  if (n_max < 1) throw std::domain_error("jacobi_band_constant: n_max < 1");
  auto valid = [&](double c) {
    const int grid = 48;
    for (int n = 1; n <= n_max; ++n) {
      double p1 = jacobi_p(n, alpha, 1.0);
      for (int g = 1; g <= grid; ++g) {
        double theta = c / n * g / grid;
        if (jacobi_p(n, alpha, std::cos(theta)) < 0.5 * p1) return false;
      }
    }
    return true;
  };
  double lo = 0.0, hi = kPi / 2.0;
  if (!valid(1e-3)) throw std::runtime_error("jacobi_band_constant: no c >= 1e-3 validates");
  if (valid(hi)) return hi;
  lo = 1e-3;
  for (int it = 0; it < 40; ++it) {
    double mid = 0.5 * (lo + hi);
    (valid(mid) ? lo : hi) = mid;
  }
  return lo;
}

}  // namespace eigenrand::specfun
