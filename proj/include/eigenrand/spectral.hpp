#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <vector>

#include "eigenrand/measure.hpp"

namespace eigenrand::spectral {

// dim E_{d,n} = (n+1)...(n+d-1)/(d-1)!, exact; throws std::overflow_error
// past the int64 range.
std::int64_t dim_e(int d, int n);

// Oscillator spectral function e_d(n, x) at radius r = |x| (rotation
// invariance makes the radial value the whole story). Evaluated through the
// on-axis reduction e_d(n, r) = sum_k e_{d-1}(k, 0) h_{n-k}(r)^2 with the
// e_{d-1}(., 0) tables memoized process-wide behind a shared mutex.
double osc_spectral(int d, int n, double r);

// Same value through the sibling reduction (spectral values at r, Hermite
// factors at 0); used to cross-check the two recursions against each other.
double osc_spectral_alt(int d, int n, double r);

// e_d(n, r) on a radius grid in one sweep.
Eigen::ArrayXd osc_spectral_row(int d, int n, const Eigen::ArrayXd& radii);

// e_d(n, r) for every level n = 0..N at one radius (single convolution).
Eigen::ArrayXd osc_spectral_levels(int d, int N, double r);

enum class FamilyTag { HermiteOscillator, SphereHighest, SphereZonal, TorusFourier };

struct Family {
  FamilyTag tag = FamilyTag::TorusFourier;
  int d = 2;  // ambient dimension; ignored for the torus
};

const char* family_name(FamilyTag tag);

std::int64_t level_dim(const Family& fam, int n);

// Spectral function e(n, .) of the level-n subspace at the family's reduced
// coordinate (radius r, band coordinate rho, colatitude theta, or anything
// for the torus).
double spectral_value(const Family& fam, int n, double coord);

// integral of e(n,.)/d_n over the whole space (should be 1)
measure::QuadResult density_integral(const Family& fam, int n);

// || sqrt(e(n,.)) ||_{L^p}; p = infinity handled as a sup over the natural
// grid. Quadrature flags propagate.
measure::QuadResult sqrt_spectral_lp(const Family& fam, int n, double p);

// ||Z_n||_{L^p(S^d)} by oscillation-resolving zonal quadrature.
measure::QuadResult zonal_lp_profile(int d, int n, double p);

// Cap constant c(alpha) for the pole concentration of Z_n (cached per
// dimension; calibrated with n_max = 400).
double band_constant(int d);

// Indicator-profile surrogates: ~Y_n amplitude at band coordinate rho and
// ~Z_n at colatitude theta.
double tilde_y(int d, int n, double rho);
double tilde_z(int d, int n, double theta);

struct ConcentrationReport {
  double min_ratio = 0.0;   // min of e_d(n,r)/n^{d/2-1} on the annulus
  double max_ratio = 0.0;   // max of the same
  double tail_max = 0.0;    // max of e_d(n,r) e^{gamma r^2}/n^{d/2-1}, r >= sqrt(2n+1)
};

// Annulus C0/sqrt(2n+1) <= r <= alpha sqrt(2n+1) plus the exterior tail;
// alpha must stay below sin(1/4), n >= min_level.
ConcentrationReport osc_concentration_report(int d, int n, double alpha,
                                             double c0 = 3.0, int min_level = 20);

struct SpectralTableRow {
  int d;
  int n;
  double r;
  double e;
  double e_normalized;  // e / n^{d/2-1}
};

std::vector<SpectralTableRow> spectral_table(int d, const std::vector<int>& levels,
                                             double r_max_factor = 1.5,
                                             int points = 200);

}  // namespace eigenrand::spectral
