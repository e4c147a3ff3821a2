#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <functional>
#include <memory>

namespace eigenrand::measure {

// Surface measure of the unit d-sphere; mu_0(S^0) = 2 by convention.
double sphere_area(int d);

enum class Domain { ZonalSphere, BandSphere, RadialRd, BoxRd, Torus };

// Nodes live in 1 or 2 coordinates; weights carry the full surface /
// volume element so that sum(w_i f(x_i)) approximates the integral.
struct QuadratureRule {
  Domain domain;
  int dim_ambient = 0;   // d of S^d or R^d
  int resolution = 0;    // declared resolution parameter
  Eigen::ArrayXd nodes;  // first coordinate (theta, rho, r, x1, grid point)
  Eigen::ArrayXd nodes2; // second coordinate where applicable (band, box)
  Eigen::ArrayXd weights;
  Eigen::ArrayXd axis;   // 1-D axis nodes of a tensor box rule
  Eigen::ArrayXd axis_w;
};

struct SampledFunction {
  std::shared_ptr<const QuadratureRule> rule;
  Eigen::ArrayXd values;  // |u| at the nodes
};

struct QuadResult {
  double value = 0.0;
  bool converged = true;
  std::int64_t nodes = 0;
};

// Gauss-Legendre on [-1,1] (Golub-Welsch), cached per n.
void gauss_legendre(int n, Eigen::ArrayXd& x, Eigen::ArrayXd& w);

// Gauss-Jacobi for weight (1-x)^a (1+x)^b on [-1,1].
void gauss_jacobi(int n, double a, double b, Eigen::ArrayXd& x, Eigen::ArrayXd& w);

// Rules. `panels` composite panels of 16-point Gauss-Legendre for the zonal
// rule; the band rule pairs a Gauss-Jacobi radial factor with a periodic
// trapezoid in theta.
std::shared_ptr<const QuadratureRule> zonal_rule(int d, int panels);
std::shared_ptr<const QuadratureRule> band_rule(int d, int n_rho, int n_theta);
std::shared_ptr<const QuadratureRule> radial_rule(int d, double r_max, int panels);
std::shared_ptr<const QuadratureRule> box_rule_2d(double half_width, int nodes_per_unit);
std::shared_ptr<const QuadratureRule> torus_rule(int points);

// Integral of a zonal profile f(theta) over S^d; `min_oscillations` sizes
// the initial panel count (>= 20 nodes per expected zero). Refinement
// doubles panels until successive values agree to 1e-6 relative, node cap
// 2^20.
QuadResult integrate_zonal(int d, const std::function<double(double)>& f,
                           int min_oscillations = 0);

// Integral of g(rho, theta) over S^d through the k = 2 reduction; d >= 2.
QuadResult integrate_band(int d, const std::function<double(double, double)>& g,
                          int min_oscillations = 0);

// sphere_area(d-1) * int_0^inf f(r) r^{d-1} dr, truncated where the
// integrand is negligible; `r_scale` hints where the mass lives. Sets
// converged = false if f has not decayed at the truncation radius.
QuadResult integrate_radial(int d, const std::function<double(double)>& f,
                            double r_scale = 1.0, int min_oscillations = 0);

double lp_norm(const SampledFunction& u, double p);
double lp_norm(const QuadratureRule& rule, const Eigen::ArrayXd& abs_values, double p);

// Lorentz L^{p,infty} quasinorm sup_T T^{1/p} f*(T) from the decreasing
// rearrangement of (value, weight) pairs.
double weak_lp_quasinorm(const SampledFunction& u, double p);
double weak_lp_quasinorm(const QuadratureRule& rule, const Eigen::ArrayXd& abs_values,
                         double p);

// Monte Carlo integral of a zonal profile over S^d with normalized-Gaussian
// sphere sampling; cross-check only.
void mc_sphere_zonal(int d, const std::function<double(double)>& f,
                     std::int64_t samples, std::uint64_t seed, double& mean,
                     double& stderr_out);

}  // namespace eigenrand::measure
