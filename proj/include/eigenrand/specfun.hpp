#pragma once

#include <Eigen/Dense>

namespace eigenrand::specfun {

// L^2(R)-normalized Hermite function h_n(x). Weighted three-term recurrence
// seeded by h_0 = pi^{-1/4} exp(-x^2/2); internal base-2 rescaling keeps the
// iterates finite for n <= 2000, |x| <= 2 sqrt(2n+1). Values below the
// double range come back as 0.
double hermite_h(int n, double x);

// h_0(x) .. h_n(x) in one sweep (same recurrence and scaling).
Eigen::ArrayXd hermite_h_all(int n, double x);

// h_{2k}(0) = (-1)^k sqrt((2k)!)/(k! 2^k pi^{1/4}), evaluated in log space.
double hermite_zero(int k);

// Jacobi polynomial with equal indices, P_n^{(alpha,alpha)}(x), |x| <= 1.
double jacobi_p(int n, double alpha, double x);
Eigen::ArrayXd jacobi_p_all(int n, double alpha, double x);

// Phi(u) = arcsin(u)/2 + u sqrt(1-u^2)/2, increasing from 0 to pi/4.
// Throws std::domain_error outside [0,1].
double phi_fn(double u);

// Muckenhoupt main term
//   sqrt(2/pi) (2n+1-x^2)^{-1/4} cos[(2n+1) Phi(x/sqrt(2n+1)) - n pi/2],
// valid for 0 <= x <= sqrt(2n+1) - (2n+1)^{-1/6} (throws outside).
double muckenhoupt_main(int n, double x);

// Normalization c_{d,n} of the highest-weight harmonic Y_n = c (x1+ix2)^n,
// c^{-2} = mu_{d-2}(S^{d-2}) pi B(n+1, (d-1)/2), with mu_0(S^0) = 2.
double y_norm_const(int d, int n);

// Zonal eigenfunction Z_n at colatitude theta: sqrt(n) P_n^{(a,a)}(cos theta)
// with a = (d-2)/2.
double zonal_z(int d, int n, double theta);

// ||Z_n||_{L^2(S^d)} in closed form (Jacobi weighted-L^2 norm).
double zonal_z_l2(int d, int n);

// Largest c <= pi/2 such that P_n^{(a,a)}(cos T) >= P_n^{(a,a)}(1)/2 for all
// T <= c/n and n <= n_max (bisection on a T-grid). Throws std::runtime_error
// if nothing >= 1e-3 validates.
double jacobi_band_constant(double alpha, int n_max);

// log Beta and log binomial helpers
double lbeta(double a, double b);
double binom(double n, double k);

}  // namespace eigenrand::specfun
