#include "eigenrand/measure.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <numeric>
#include <stdexcept>
#include <vector>

#include "eigenrand/mc.hpp"

namespace eigenrand::measure {

namespace {
constexpr double kPi = 3.141592653589793238462643;
constexpr std::int64_t kNodeCap = 1 << 20;
constexpr double kRelTol = 1e-6;
}  // namespace

double sphere_area(int d) {
  if (d < 0) throw std::domain_error("sphere_area: d < 0");
  if (d == 0) return 2.0;
  return 2.0 * std::pow(kPi, 0.5 * (d + 1)) / std::tgamma(0.5 * (d + 1));
}

// Golub-Welsch from the symmetric-tridiagonal Jacobi matrix of the weight.
static void golub_welsch(const Eigen::VectorXd& diag, const Eigen::VectorXd& sub,
                         double mu0, Eigen::ArrayXd& x, Eigen::ArrayXd& w) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es;
  es.computeFromTridiagonal(diag, sub, Eigen::ComputeEigenvectors);
  x = es.eigenvalues().array();
  w = mu0 * es.eigenvectors().row(0).array().square();
}

void gauss_legendre(int n, Eigen::ArrayXd& x, Eigen::ArrayXd& w) {
  static std::map<int, std::pair<Eigen::ArrayXd, Eigen::ArrayXd>> cache;
  static std::mutex mtx;
  {
    std::lock_guard<std::mutex> lk(mtx);
    auto it = cache.find(n);
    if (it != cache.end()) {
      x = it->second.first;
      w = it->second.second;
      return;
    }
  }
  Eigen::VectorXd diag = Eigen::VectorXd::Zero(n);
  Eigen::VectorXd sub(n - 1 > 0 ? n - 1 : 0);
  for (int k = 1; k < n; ++k)
    sub[k - 1] = k / std::sqrt(4.0 * k * k - 1.0);
  golub_welsch(diag, sub, 2.0, x, w);
  std::lock_guard<std::mutex> lk(mtx);
  cache.emplace(n, std::make_pair(x, w));
}

void gauss_jacobi(int n, double a, double b, Eigen::ArrayXd& x, Eigen::ArrayXd& w) {
  if (a <= -1.0 || b <= -1.0) throw std::domain_error("gauss_jacobi: index <= -1");
  Eigen::VectorXd diag(n), sub(n - 1 > 0 ? n - 1 : 0);
  double ab = a + b;
  for (int k = 0; k < n; ++k) {
    double den = (2.0 * k + ab) * (2.0 * k + ab + 2.0);
    diag[k] = den == 0.0 ? (b - a) / (ab + 2.0) : (b * b - a * a) / den;
  }
  for (int k = 1; k < n; ++k) {
    double num = 4.0 * k * (k + a) * (k + b) * (k + ab);
    double den = (2.0 * k + ab) * (2.0 * k + ab) * (2.0 * k + ab + 1.0) *
                 (2.0 * k + ab - 1.0);
    sub[k - 1] = std::sqrt(num / den);
  }
  double mu0 = std::exp((ab + 1.0) * 0.6931471805599453 + std::lgamma(a + 1.0) +
                        std::lgamma(b + 1.0) - std::lgamma(ab + 2.0));
  golub_welsch(diag, sub, mu0, x, w);
}

std::shared_ptr<const QuadratureRule> zonal_rule(int d, int panels) {
  auto rule = std::make_shared<QuadratureRule>();
  rule->domain = Domain::ZonalSphere;
  rule->dim_ambient = d;
  rule->resolution = panels;
  const int g = 16;
  Eigen::ArrayXd gx, gw;
  gauss_legendre(g, gx, gw);
  rule->nodes.resize(static_cast<Eigen::Index>(panels) * g);
  rule->weights.resize(static_cast<Eigen::Index>(panels) * g);
  double pref = sphere_area(d - 1);
  double h = kPi / panels;
  for (int pnl = 0; pnl < panels; ++pnl) {
    double mid = (pnl + 0.5) * h;
    for (int i = 0; i < g; ++i) {
      Eigen::Index idx = static_cast<Eigen::Index>(pnl) * g + i;
      double theta = mid + 0.5 * h * gx[i];
      rule->nodes[idx] = theta;
      rule->weights[idx] =
          pref * 0.5 * h * gw[i] * std::pow(std::sin(theta), d - 1);
    }
  }
  return rule;
}

std::shared_ptr<const QuadratureRule> band_rule(int d, int n_rho, int n_theta) {
  if (d < 2) throw std::domain_error("band_rule: d < 2");
  auto rule = std::make_shared<QuadratureRule>();
  rule->domain = Domain::BandSphere;
  rule->dim_ambient = d;
  rule->resolution = n_rho;
  // int_{S^d} g = mu_{d-2}(S^{d-2}) int int g(rho,theta)(1-rho^2)^{(d-3)/2} rho drho dtheta
  // radial part in t = 2 rho^2 - 1: rho drho = dt/4, (1-rho^2) = (1-t)/2
  Eigen::ArrayXd t, tw;
  gauss_jacobi(n_rho, 0.5 * (d - 3.0), 0.0, t, tw);
  double pref = sphere_area(d - 2) * std::pow(0.5, 0.5 * (d - 3.0)) * 0.25;
  double dtheta = 2.0 * kPi / n_theta;
  Eigen::Index total = static_cast<Eigen::Index>(n_rho) * n_theta;
  rule->nodes.resize(total);
  rule->nodes2.resize(total);
  rule->weights.resize(total);
  for (int i = 0; i < n_rho; ++i) {
    double rho = std::sqrt(0.5 * (t[i] + 1.0));
    for (int j = 0; j < n_theta; ++j) {
      Eigen::Index idx = static_cast<Eigen::Index>(i) * n_theta + j;
      rule->nodes[idx] = rho;
      rule->nodes2[idx] = j * dtheta;
      rule->weights[idx] = pref * tw[i] * dtheta;
    }
  }
  return rule;
}

std::shared_ptr<const QuadratureRule> radial_rule(int d, double r_max, int panels) {
  auto rule = std::make_shared<QuadratureRule>();
  rule->domain = Domain::RadialRd;
  rule->dim_ambient = d;
  rule->resolution = panels;
  const int g = 16;
  Eigen::ArrayXd gx, gw;
  gauss_legendre(g, gx, gw);
  rule->nodes.resize(static_cast<Eigen::Index>(panels) * g);
  rule->weights.resize(static_cast<Eigen::Index>(panels) * g);
  double pref = sphere_area(d - 1);
  double h = r_max / panels;
  for (int pnl = 0; pnl < panels; ++pnl) {
    double mid = (pnl + 0.5) * h;
    for (int i = 0; i < g; ++i) {
      Eigen::Index idx = static_cast<Eigen::Index>(pnl) * g + i;
      double r = mid + 0.5 * h * gx[i];
      rule->nodes[idx] = r;
      rule->weights[idx] = pref * 0.5 * h * gw[i] * std::pow(r, d - 1);
    }
  }
  return rule;
}

std::shared_ptr<const QuadratureRule> box_rule_2d(double half_width, int nodes_per_unit) {
  auto rule = std::make_shared<QuadratureRule>();
  rule->domain = Domain::BoxRd;
  rule->dim_ambient = 2;
  rule->resolution = nodes_per_unit;
  int panels = std::max(1, static_cast<int>(std::ceil(2.0 * half_width)));
  const int g = std::max(2, nodes_per_unit);
  Eigen::ArrayXd gx, gw;
  gauss_legendre(g, gx, gw);
  Eigen::Index m = static_cast<Eigen::Index>(panels) * g;
  rule->axis.resize(m);
  rule->axis_w.resize(m);
  double h = 2.0 * half_width / panels;
  for (int pnl = 0; pnl < panels; ++pnl) {
    double mid = -half_width + (pnl + 0.5) * h;
    for (int i = 0; i < g; ++i) {
      rule->axis[static_cast<Eigen::Index>(pnl) * g + i] = mid + 0.5 * h * gx[i];
      rule->axis_w[static_cast<Eigen::Index>(pnl) * g + i] = 0.5 * h * gw[i];
    }
  }
  rule->nodes.resize(m * m);
  rule->nodes2.resize(m * m);
  rule->weights.resize(m * m);
  for (Eigen::Index i = 0; i < m; ++i)
    for (Eigen::Index j = 0; j < m; ++j) {
      rule->nodes[i * m + j] = rule->axis[i];
      rule->nodes2[i * m + j] = rule->axis[j];
      rule->weights[i * m + j] = rule->axis_w[i] * rule->axis_w[j];
    }
  return rule;
}

std::shared_ptr<const QuadratureRule> torus_rule(int points) {
  // Torus carries the normalized Haar measure, so e^{inx} is orthonormal
  // and the spectral function is identically 1.
  auto rule = std::make_shared<QuadratureRule>();
  rule->domain = Domain::Torus;
  rule->dim_ambient = 1;
  rule->resolution = points;
  rule->nodes = Eigen::ArrayXd::LinSpaced(points, 0.0, 2.0 * kPi * (points - 1) / points);
  rule->weights = Eigen::ArrayXd::Constant(points, 1.0 / points);
  return rule;
}

namespace {

template <class Eval>
QuadResult refine_to_tolerance(int start_panels, Eval&& eval) {
  QuadResult res;
  int panels = start_panels;
  double prev = eval(panels);
  for (;;) {
    panels *= 2;
    if (static_cast<std::int64_t>(panels) * 16 > kNodeCap) {
      res.value = prev;
      res.converged = false;
      res.nodes = static_cast<std::int64_t>(panels / 2) * 16;
      return res;
    }
    double cur = eval(panels);
    double scale = std::max({std::fabs(cur), std::fabs(prev), 1e-300});
    if (std::fabs(cur - prev) <= kRelTol * scale) {
      res.value = cur;
      res.converged = true;
      res.nodes = static_cast<std::int64_t>(panels) * 16;
      return res;
    }
    prev = cur;
  }
}

}  // namespace

QuadResult integrate_zonal(int d, const std::function<double(double)>& f,
                           int min_oscillations) {
  int start = std::max(2, (min_oscillations * 20) / 16 + 1);
  return refine_to_tolerance(start, [&](int panels) {
    auto rule = zonal_rule(d, panels);
    double s = 0.0;
    for (Eigen::Index i = 0; i < rule->nodes.size(); ++i)
      s += rule->weights[i] * f(rule->nodes[i]);
    return s;
  });
}

QuadResult integrate_band(int d, const std::function<double(double, double)>& g,
                          int min_oscillations) {
  int start_rho = std::max(8, min_oscillations * 20 + 1);
  QuadResult res;
  int n_rho = start_rho;
  int n_theta = 16;
  auto value = [&](int nr, int nt) {
    auto rule = band_rule(d, nr, nt);
    double s = 0.0;
    for (Eigen::Index i = 0; i < rule->nodes.size(); ++i)
      s += rule->weights[i] * g(rule->nodes[i], rule->nodes2[i]);
    return s;
  };
  double prev = value(n_rho, n_theta);
  for (;;) {
    n_rho *= 2;
    n_theta *= 2;
    if (static_cast<std::int64_t>(n_rho) * n_theta > kNodeCap) {
      res.value = prev;
      res.converged = false;
      res.nodes = static_cast<std::int64_t>(n_rho / 2) * (n_theta / 2);
      return res;
    }
    double cur = value(n_rho, n_theta);
    double scale = std::max({std::fabs(cur), std::fabs(prev), 1e-300});
    if (std::fabs(cur - prev) <= kRelTol * scale) {
      res.value = cur;
      res.converged = true;
      res.nodes = static_cast<std::int64_t>(n_rho) * n_theta;
      return res;
    }
    prev = cur;
  }
}

QuadResult integrate_radial(int d, const std::function<double(double)>& f,
                            double r_scale, int min_oscillations) {
  // Truncate where a Gaussian envelope at scale r_scale is < 1e-10 of peak.
  double r_max = std::max(8.0, r_scale + 8.0);
  bool decayed = false;
  for (int tries = 0; tries < 8; ++tries) {
    double probe = std::fabs(f(r_max)) * std::pow(r_max, d - 1);
    double inner = std::fabs(f(0.5 * r_scale)) * std::pow(0.5 * r_scale + 1e-12, d - 1);
    if (probe <= 1e-12 * (inner + 1e-300) + 1e-290) {
      decayed = true;
      break;
    }
    r_max *= 1.5;
  }
  int start = std::max(4, (min_oscillations * 20) / 16 + 1);
  QuadResult res = refine_to_tolerance(start, [&](int panels) {
    auto rule = radial_rule(d, r_max, panels);
    double s = 0.0;
    for (Eigen::Index i = 0; i < rule->nodes.size(); ++i)
      s += rule->weights[i] * f(rule->nodes[i]);
    return s;
  });
  if (!decayed) res.converged = false;
  return res;
}

double lp_norm(const QuadratureRule& rule, const Eigen::ArrayXd& abs_values, double p) {
  if (p < 1.0) throw std::domain_error("lp_norm: p < 1");
  return std::pow((rule.weights * abs_values.pow(p)).sum(), 1.0 / p);
}

double lp_norm(const SampledFunction& u, double p) {
  return lp_norm(*u.rule, u.values, p);
}

double weak_lp_quasinorm(const QuadratureRule& rule, const Eigen::ArrayXd& abs_values,
                         double p) {
  if (p <= 1.0) throw std::domain_error("weak_lp_quasinorm: p <= 1");
  Eigen::Index n = abs_values.size();
  std::vector<Eigen::Index> idx(static_cast<std::size_t>(n));
  std::iota(idx.begin(), idx.end(), 0);
  std::sort(idx.begin(), idx.end(), [&](Eigen::Index a, Eigen::Index b) {
    return abs_values[a] > abs_values[b];
  });
  double cum = 0.0, best = 0.0;
  for (Eigen::Index k = 0; k < n; ++k) {
    cum += rule.weights[idx[static_cast<std::size_t>(k)]];
    best = std::max(best, std::pow(cum, 1.0 / p) * abs_values[idx[static_cast<std::size_t>(k)]]);
  }
  return best;
}

double weak_lp_quasinorm(const SampledFunction& u, double p) {
  return weak_lp_quasinorm(*u.rule, u.values, p);
}

void mc_sphere_zonal(int d, const std::function<double(double)>& f,
                     std::int64_t samples, std::uint64_t seed, double& mean,
                     double& stderr_out) {
  double area = sphere_area(d);
  auto est = mc::run(samples, seed, mc::hardware_threads(),
                     [&](std::int64_t, mc::Rng& rng) {
                       double x1 = rng.gaussian();
                       double n2 = x1 * x1;
                       for (int k = 1; k <= d; ++k) {
                         double g = rng.gaussian();
                         n2 += g * g;
                       }
                       double theta = std::acos(x1 / std::sqrt(n2));
                       return f(theta) * area;
                     });
  mean = est.mean;
  stderr_out = est.stderr_;
}

}  // namespace eigenrand::measure
