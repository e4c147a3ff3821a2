#include "eigenrand/spectral.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <shared_mutex>
#include <stdexcept>

#include "eigenrand/constants.hpp"
#include "eigenrand/specfun.hpp"

namespace eigenrand::spectral {

namespace {

constexpr double kPi = 3.141592653589793238462643;

// e_d(k, 0) for k = 0..n, memoized per dimension. Levels only ever grow.
class ZeroTableCache {
 public:
  // returns a copy of the first n+1 entries
  Eigen::ArrayXd get(int d, int n) {
    {
      std::shared_lock lk(mtx_);
      auto it = tables_.find(d);
      if (it != tables_.end() && static_cast<int>(it->second.size()) > n)
        return Eigen::Map<const Eigen::ArrayXd>(it->second.data(), n + 1);
    }
    std::unique_lock lk(mtx_);
    auto& tab = tables_[d];
    if (static_cast<int>(tab.size()) <= n) extend(d, n, tab);
    return Eigen::Map<const Eigen::ArrayXd>(tab.data(), n + 1);
  }

 private:
  void extend(int d, int n, std::vector<double>& tab) {
    int grow = std::max(n + 1, static_cast<int>(tab.size()) * 2);
    std::vector<double> h0sq(grow);
    for (int k = 0; k < grow; ++k) {
      double h = (k % 2 == 0) ? specfun::hermite_zero(k / 2) : 0.0;
      h0sq[k] = h * h;
    }
    if (d == 1) {
      tab = std::move(h0sq);
      return;
    }
    auto& lower = tables_[d - 1];
    if (static_cast<int>(lower.size()) < grow) extend(d - 1, grow - 1, lower);
    std::vector<double> out(grow, 0.0);
    for (int k = 0; k < grow; ++k) {
      double s = 0.0;
      for (int j = 0; j <= k; ++j) s += lower[j] * h0sq[k - j];
      out[k] = s;
    }
    tab = std::move(out);
  }

  std::shared_mutex mtx_;
  std::map<int, std::vector<double>> tables_;
};

ZeroTableCache& zero_cache() {
  static ZeroTableCache cache;
  return cache;
}

}  // namespace

std::int64_t dim_e(int d, int n) {
  if (d < 1 || n < 0) throw std::domain_error("dim_e: d < 1 or n < 0");
  // num after step k is binom(n+k, k), so the division is always exact and
  // intermediates stay as small as possible
  std::int64_t num = 1;
  for (int k = 1; k <= d - 1; ++k) {
    if (__builtin_mul_overflow(num, static_cast<std::int64_t>(n + k), &num))
      throw std::overflow_error("dim_e: int64 overflow");
    num /= k;
  }
  return num;
}

double osc_spectral(int d, int n, double r) {
  if (d < 1 || n < 0 || r < 0.0)
    throw std::domain_error("osc_spectral: bad arguments");
  if (d == 1) {
    double h = specfun::hermite_h(n, r);
    return h * h;
  }
  Eigen::ArrayXd lower0 = zero_cache().get(d - 1, n);
  Eigen::ArrayXd h = specfun::hermite_h_all(n, r);
  double s = 0.0;
  for (int j = 0; j <= n; ++j) s += h[j] * h[j] * lower0[n - j];
  return s;
}

double osc_spectral_alt(int d, int n, double r) {
  // (spectral at r, Hermite at 0): build e_m(k, r) tables upward in m
  if (d < 1 || n < 0) throw std::domain_error("osc_spectral_alt: bad arguments");
  Eigen::ArrayXd h = specfun::hermite_h_all(n, r);
  Eigen::ArrayXd cur = h.square();  // e_1(k, r)
  std::vector<double> h0sq(n + 1);
  for (int k = 0; k <= n; ++k) {
    double z = (k % 2 == 0) ? specfun::hermite_zero(k / 2) : 0.0;
    h0sq[k] = z * z;
  }
  for (int m = 2; m <= d; ++m) {
    Eigen::ArrayXd next(n + 1);
    for (int k = 0; k <= n; ++k) {
      double s = 0.0;
      for (int j = 0; j <= k; ++j) s += cur[j] * h0sq[k - j];
      next[k] = s;
    }
    cur.swap(next);
  }
  return cur[n];
}

Eigen::ArrayXd osc_spectral_row(int d, int n, const Eigen::ArrayXd& radii) {
  Eigen::ArrayXd out(radii.size());
  if (d == 1) {
    for (Eigen::Index i = 0; i < radii.size(); ++i) {
      double h = specfun::hermite_h(n, radii[i]);
      out[i] = h * h;
    }
    return out;
  }
  Eigen::ArrayXd lower0 = zero_cache().get(d - 1, n);
  for (Eigen::Index i = 0; i < radii.size(); ++i) {
    Eigen::ArrayXd h = specfun::hermite_h_all(n, radii[i]);
    double s = 0.0;
    for (int j = 0; j <= n; ++j) s += h[j] * h[j] * lower0[n - j];
    out[i] = s;
  }
  return out;
}

Eigen::ArrayXd osc_spectral_levels(int d, int N, double r) {
  Eigen::ArrayXd h = specfun::hermite_h_all(N, r).square();
  if (d == 1) return h;
  Eigen::ArrayXd lower0 = zero_cache().get(d - 1, N);
  Eigen::ArrayXd out(N + 1);
  for (int n = 0; n <= N; ++n) {
    double s = 0.0;
    for (int j = 0; j <= n; ++j) s += h[j] * lower0[n - j];
    out[n] = s;
  }
  return out;
}

const char* family_name(FamilyTag tag) {
  switch (tag) {
    case FamilyTag::HermiteOscillator: return "hermite";
    case FamilyTag::SphereHighest: return "highest";
    case FamilyTag::SphereZonal: return "zonal";
    case FamilyTag::TorusFourier: return "torus";
  }
  return "?";
}

std::int64_t level_dim(const Family& fam, int n) {
  switch (fam.tag) {
    case FamilyTag::HermiteOscillator: return dim_e(fam.d, n);
    case FamilyTag::SphereHighest:
    case FamilyTag::SphereZonal:
    case FamilyTag::TorusFourier: return 1;
  }
  return 1;
}

double spectral_value(const Family& fam, int n, double coord) {
  switch (fam.tag) {
    case FamilyTag::HermiteOscillator:
      return osc_spectral(fam.d, n, coord);
    case FamilyTag::SphereHighest: {
      double v = specfun::y_norm_const(fam.d, n) * std::pow(coord, n);
      return v * v;
    }
    case FamilyTag::SphereZonal: {
      double v = specfun::zonal_z(fam.d, n, coord) / specfun::zonal_z_l2(fam.d, n);
      return v * v;
    }
    case FamilyTag::TorusFourier:
      return 1.0;
  }
  return 0.0;
}

measure::QuadResult density_integral(const Family& fam, int n) {
  double dn = static_cast<double>(level_dim(fam, n));
  switch (fam.tag) {
    case FamilyTag::HermiteOscillator:
      return measure::integrate_radial(
          fam.d, [&](double r) { return osc_spectral(fam.d, n, r) / dn; },
          std::sqrt(2.0 * n + 1.0), n + 1);
    case FamilyTag::SphereHighest:
      return measure::integrate_band(
          fam.d, [&](double rho, double) { return spectral_value(fam, n, rho); },
          static_cast<int>(std::sqrt(static_cast<double>(n))) + 2);
    case FamilyTag::SphereZonal:
      return measure::integrate_zonal(
          fam.d, [&](double t) { return spectral_value(fam, n, t); }, n);
    case FamilyTag::TorusFourier: {
      measure::QuadResult r;
      r.value = 1.0;
      r.nodes = 1;
      return r;
    }
  }
  return {};
}

measure::QuadResult sqrt_spectral_lp(const Family& fam, int n, double p) {
  bool sup = std::isinf(p);
  measure::QuadResult res;
  switch (fam.tag) {
    case FamilyTag::HermiteOscillator: {
      double edge = std::sqrt(2.0 * n + 1.0);
      if (sup) {
        auto rule = measure::radial_rule(fam.d, 1.5 * edge + 8.0, 40 * (n + 1) / 16 + 2);
        double m = 0.0;
        for (Eigen::Index i = 0; i < rule->nodes.size(); ++i)
          m = std::max(m, osc_spectral(fam.d, n, rule->nodes[i]));
        res.value = std::sqrt(m);
        res.nodes = rule->nodes.size();
        return res;
      }
      res = measure::integrate_radial(
          fam.d,
          [&](double r) { return std::pow(osc_spectral(fam.d, n, r), 0.5 * p); },
          edge, n + 1);
      res.value = std::pow(res.value, 1.0 / p);
      return res;
    }
    case FamilyTag::SphereHighest: {
      double c = specfun::y_norm_const(fam.d, n);
      if (sup) {
        res.value = c;  // max of c rho^n at rho = 1
        res.nodes = 1;
        return res;
      }
      res = measure::integrate_band(
          fam.d,
          [&](double rho, double) { return std::pow(c * std::pow(rho, n), p); },
          static_cast<int>(std::sqrt(static_cast<double>(n))) + 2);
      res.value = std::pow(res.value, 1.0 / p);
      return res;
    }
    case FamilyTag::SphereZonal: {
      double l2 = specfun::zonal_z_l2(fam.d, n);
      if (sup) {
        res.value = std::fabs(specfun::zonal_z(fam.d, n, 0.0)) / l2;
        res.nodes = 1;
        return res;
      }
      res = zonal_lp_profile(fam.d, n, p);
      res.value /= l2;
      return res;
    }
    case FamilyTag::TorusFourier:
      res.value = 1.0;
      res.nodes = 1;
      return res;
  }
  return res;
}

measure::QuadResult zonal_lp_profile(int d, int n, double p) {
  auto res = measure::integrate_zonal(
      d, [&](double t) { return std::pow(std::fabs(specfun::zonal_z(d, n, t)), p); },
      n + 1);
  res.value = std::pow(res.value, 1.0 / p);
  return res;
}

double band_constant(int d) {
  static std::mutex mtx;
  static std::map<int, double> cache;
  std::lock_guard<std::mutex> lk(mtx);
  auto it = cache.find(d);
  if (it != cache.end()) return it->second;
  double c = specfun::jacobi_band_constant(0.5 * (d - 2.0), 400);
  cache[d] = c;
  return c;
}

double tilde_y(int d, int n, double rho) {
  double delta = std::acos(std::min(1.0, std::max(-1.0, rho)));
  return delta <= 1.0 / std::sqrt(static_cast<double>(n))
             ? std::pow(n, 0.25 * (d - 1.0))
             : 0.0;
}

double tilde_z(int d, int n, double theta) {
  double c = band_constant(d);
  return theta <= c / n ? specfun::zonal_z(d, n, theta) : 0.0;
}

ConcentrationReport osc_concentration_report(int d, int n, double alpha, double c0,
                                             int min_level) {
  if (n < min_level)
    throw std::domain_error("osc_concentration_report: n below min_level");
  if (!(alpha > 0.0 && alpha < std::sin(0.25)))
    throw std::domain_error("osc_concentration_report: alpha outside (0, sin(1/4))");
  double edge = std::sqrt(2.0 * n + 1.0);
  double norm = std::pow(static_cast<double>(n), 0.5 * d - 1.0);
  ConcentrationReport rep;
  const int grid = 256;
  double r_lo = c0 / edge, r_hi = alpha * edge;
  rep.min_ratio = 1e300;
  for (int i = 0; i <= grid; ++i) {
    double r = r_lo + (r_hi - r_lo) * i / grid;
    double v = osc_spectral(d, n, r) / norm;
    rep.min_ratio = std::min(rep.min_ratio, v);
    rep.max_ratio = std::max(rep.max_ratio, v);
  }
  for (int i = 0; i <= grid; ++i) {
    double r = edge * (1.0 + 1.5 * i / grid);
    double v = osc_spectral(d, n, r) *
               std::exp(constants::kOscTailGamma * r * r) / norm;
    rep.tail_max = std::max(rep.tail_max, v);
  }
  return rep;
}

std::vector<SpectralTableRow> spectral_table(int d, const std::vector<int>& levels,
                                             double r_max_factor, int points) {
  std::vector<SpectralTableRow> rows;
  for (int n : levels) {
    double edge = std::sqrt(2.0 * n + 1.0);
    double norm = std::pow(static_cast<double>(n), 0.5 * d - 1.0);
    for (int i = 0; i <= points; ++i) {
      double r = r_max_factor * edge * i / points;
      double e = osc_spectral(d, n, r);
      rows.push_back({d, n, r, e, e / norm});
    }
  }
  return rows;
}

}  // namespace eigenrand::spectral
