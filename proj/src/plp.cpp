#include "eigenrand/plp.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "eigenrand/specfun.hpp"

namespace eigenrand::plp {

namespace {

constexpr double kPi = 3.141592653589793238462643;

int first_level_of(const spectral::Family& fam) {
  return fam.tag == spectral::FamilyTag::HermiteOscillator ? 0 : 1;
}

}  // namespace

double hurwitz_zeta(double s, double a) {
  if (s <= 1.0) throw std::domain_error("hurwitz_zeta: s <= 1");
  if (a <= 0.0) throw std::domain_error("hurwitz_zeta: a <= 0");
  // Euler-Maclaurin with Bernoulli terms through B_8; M grows until the
  // first omitted term is negligible.
  static const double b[4] = {1.0 / 6.0, -1.0 / 30.0, 1.0 / 42.0, -1.0 / 30.0};
  int m = 16;
  for (;;) {
    double x = a + m;
    double sum = 0.0;
    for (int k = 0; k < m; ++k) sum += std::pow(a + k, -s);
    sum += std::pow(x, 1.0 - s) / (s - 1.0) + 0.5 * std::pow(x, -s);
    double fact = s;        // rising product s (s+1) ... (s+2j-2)
    double xp = std::pow(x, -s - 1.0);
    double corr = 0.0, last = 0.0;
    static const double facts[4] = {2.0, 24.0, 720.0, 40320.0};  // (2j)!
    for (int j = 0; j < 4; ++j) {
      last = b[j] / facts[j] * fact * xp;
      corr += last;
      fact *= (s + 2.0 * j + 1.0) * (s + 2.0 * j + 2.0);
      xp /= x * x;
    }
    sum += corr;
    if (std::fabs(last) <= 1e-13 * std::fabs(sum) || m >= 4096) return sum;
    m *= 2;
  }
}

measure::QuadResult plp_norm_quadrature(const spectral::Family& fam,
                                        const Eigen::ArrayXd& level_norms,
                                        double p) {
  const int count = static_cast<int>(level_norms.size());
  const int n0 = first_level_of(fam);
  const int N = n0 + count - 1;
  measure::QuadResult res;
  switch (fam.tag) {
    case spectral::FamilyTag::HermiteOscillator: {
      Eigen::ArrayXd dims(count);
      for (int k = 0; k < count; ++k)
        dims[k] = static_cast<double>(spectral::dim_e(fam.d, n0 + k));
      auto g = [&](double r) {
        Eigen::ArrayXd e = spectral::osc_spectral_levels(fam.d, N, r);
        double s = 0.0;
        for (int k = 0; k < count; ++k)
          s += level_norms[k] * level_norms[k] * e[n0 + k] / dims[k];
        return std::pow(s, 0.5 * p);
      };
      res = measure::integrate_radial(fam.d, g, std::sqrt(2.0 * N + 1.0), N + 1);
      break;
    }
    case spectral::FamilyTag::SphereHighest: {
      Eigen::ArrayXd consts(count);
      for (int k = 0; k < count; ++k)
        consts[k] = specfun::y_norm_const(fam.d, n0 + k);
      auto g = [&](double rho, double) {
        double s = 0.0;
        for (int k = 0; k < count; ++k) {
          double v = consts[k] * std::pow(rho, n0 + k);
          s += level_norms[k] * level_norms[k] * v * v;
        }
        return std::pow(s, 0.5 * p);
      };
      res = measure::integrate_band(fam.d, g,
                                    static_cast<int>(std::sqrt(static_cast<double>(N))) + 2);
      break;
    }
    case spectral::FamilyTag::SphereZonal: {
      double a = 0.5 * (fam.d - 2.0);
      auto g = [&](double theta) {
        Eigen::ArrayXd pj = specfun::jacobi_p_all(N, a, std::cos(theta));
        double s = 0.0;
        for (int k = 0; k < count; ++k) {
          int n = n0 + k;
          double z = std::sqrt(static_cast<double>(n)) * pj[n];
          s += level_norms[k] * level_norms[k] * z * z;
        }
        return std::pow(s, 0.5 * p);
      };
      res = measure::integrate_zonal(fam.d, g, N + 1);
      break;
    }
    case spectral::FamilyTag::TorusFourier: {
      res.value = std::pow(level_norms.square().sum(), 0.5 * p);
      res.nodes = 1;
      break;
    }
  }
  res.value = std::pow(res.value, 1.0 / p);
  return res;
}

double y_closed_form(const Eigen::ArrayXd& a, double p, int d) {
  if (p <= 1.0) throw std::domain_error("y_closed_form: p <= 1");
  const int N = static_cast<int>(a.size());
  double t = 0.0, sum = 0.0;
  for (int n = 1; n <= N; ++n) {
    t += std::pow(static_cast<double>(n), 0.5 * (d - 1.0)) * a[n - 1] * a[n - 1];
    sum += std::pow(static_cast<double>(n), -0.5 * (d + 1.0)) * std::pow(t, 0.5 * p);
  }
  if (t > 0.0)
    sum += std::pow(t, 0.5 * p) * hurwitz_zeta(0.5 * (d + 1.0), N + 1.0);
  return std::pow(sum, 1.0 / p);
}

double z_closed_form(const Eigen::ArrayXd& a, double p, int d) {
  if (p <= 2.0 * d / (d - 1.0))
    throw std::domain_error("z_closed_form: needs p > 2d/(d-1)");
  const int N = static_cast<int>(a.size());
  double s = 0.0, sum = 0.0;
  for (int n = 1; n <= N; ++n) {
    s += std::pow(static_cast<double>(n), d - 1.0) * a[n - 1] * a[n - 1];
    sum += std::pow(static_cast<double>(n), -(d + 1.0)) * std::pow(s, 0.5 * p);
  }
  if (s > 0.0) sum += std::pow(s, 0.5 * p) * hurwitz_zeta(d + 1.0, N + 1.0);
  return std::pow(sum, 1.0 / p);
}

double hermite_closed_form(const Eigen::ArrayXd& norms, double p, int d) {
  const int N = static_cast<int>(norms.size()) - 1;
  double sum = 0.0, r = 0.0;
  Eigen::ArrayXd rn(N + 1);
  for (int n = N; n >= 1; --n) {
    r += norms[n] * norms[n] * std::pow(static_cast<double>(n), -0.5 * d);
    rn[n] = r;
  }
  for (int n = 1; n <= N; ++n)
    sum += std::pow(static_cast<double>(n), 0.5 * d - 1.0) * std::pow(rn[n], 0.5 * p);
  return norms[0] + std::pow(sum, 1.0 / p);
}

double sobolev_norm(const spectral::Family& fam, const Eigen::ArrayXd& norms,
                    double s) {
  const int n0 = first_level_of(fam);
  double acc = 0.0;
  for (int k = 0; k < norms.size(); ++k) {
    double n = static_cast<double>(n0 + k);
    double w = fam.tag == spectral::FamilyTag::HermiteOscillator
                   ? std::pow(1.0 + n, s)
                   : std::pow(1.0 + n, 2.0 * s);
    acc += w * norms[k] * norms[k];
  }
  return std::sqrt(acc);
}

// ---- tail analysis ---------------------------------------------------------

namespace {

constexpr int kExactPow = 14;  // exact summation up to 2^14
constexpr int kMaxPow = 58;    // dyadic checkpoints up to 2^58
constexpr double kTailTol = 3e-3;  // |e - 1| resolution of the fit

// sum_{j=a+1}^{b} w(j) by Euler-Maclaurin on smooth summands: integral in
// u = ln x plus endpoint and first-derivative corrections
double smooth_segment_sum(const std::function<double(double)>& w, double a,
                          double b) {
  double ua = std::log(a), ub = std::log(b);
  int panels = std::max(2, static_cast<int>(std::ceil(4.0 * (ub - ua))));
  Eigen::ArrayXd gx, gw;
  measure::gauss_legendre(16, gx, gw);
  double integral = 0.0;
  double h = (ub - ua) / panels;
  for (int s = 0; s < panels; ++s) {
    double mid = ua + (s + 0.5) * h;
    for (int i = 0; i < 16; ++i) {
      double u = mid + 0.5 * h * gx[i];
      double x = std::exp(u);
      integral += 0.5 * h * gw[i] * w(x) * x;
    }
  }
  auto deriv = [&](double x) {
    double hh = 1e-3 * x;
    return (w(x + hh) - w(x - hh)) / (2.0 * hh);
  };
  return integral + 0.5 * (w(b) - w(a)) + (deriv(b) - deriv(a)) / 12.0;
}

bool fit_is_member(const TailFit& fit) {
  if (fit.e > 1.0 + kTailTol) return true;
  if (fit.e < 1.0 - kTailTol) return false;
  return fit.kappa > 1.0;
}

}  // namespace

TailAnalyzer::TailAnalyzer(const spectral::Family& fam,
                           std::function<double(double)> a)
    : fam_(fam), a_(std::move(a)) {
  finite_support_ = a_(1 << kExactPow) == 0.0 && a_(3 << (kExactPow - 1)) == 0.0 &&
                    a_(1 << (kExactPow + 2)) == 0.0;
  if (finite_support_) return;

  const int d = fam_.d;
  double weight_exp;
  bool backward = false;
  switch (fam_.tag) {
    case spectral::FamilyTag::SphereHighest: weight_exp = 0.5 * (d - 1.0); break;
    case spectral::FamilyTag::SphereZonal: weight_exp = d - 1.0; break;
    case spectral::FamilyTag::HermiteOscillator:
      weight_exp = -0.5 * d;
      backward = true;
      break;
    case spectral::FamilyTag::TorusFourier: weight_exp = 0.0; break;
    default: weight_exp = 0.0;
  }
  auto w = [this, weight_exp](double x) {
    double v = a_(x);
    return std::pow(x, weight_exp) * v * v;
  };

  for (int k = 8; k <= kMaxPow; ++k) k_.push_back(k);

  // forward partial sums at the dyadic checkpoints
  std::vector<double> forward(k_.size());
  double acc = 0.0;
  {
    std::size_t j = 0;
    double next = std::pow(2.0, k_[0]);
    for (double x = 1.0; x <= std::pow(2.0, kExactPow) + 0.5; x += 1.0) {
      acc += w(x);
      if (x == next && j < k_.size()) {
        forward[j++] = acc;
        next = j < k_.size() ? std::pow(2.0, k_[j]) : 0.0;
      }
    }
    for (; j < k_.size(); ++j) {
      acc += smooth_segment_sum(w, std::pow(2.0, k_[j - 1]), std::pow(2.0, k_[j]));
      forward[j] = acc;
    }
  }

  log_inner_.resize(k_.size());
  if (!backward) {
    for (std::size_t j = 0; j < k_.size(); ++j)
      log_inner_[j] = std::log(std::max(forward[j], 1e-300));
  } else {
    // R_n = total - forward + beyond-checkpoint tail; continue to 2^60 and
    // close with the local power of w
    double total = forward.back();
    total += smooth_segment_sum(w, std::pow(2.0, kMaxPow), std::pow(2.0, 60));
    double x60 = std::pow(2.0, 60);
    double f1 = w(0.5 * x60), f2 = w(x60);
    double gamma = (f1 > 0.0 && f2 > 0.0) ? std::log(f1 / f2) / std::log(2.0) : 3.0;
    if (gamma > 1.05) total += f2 * x60 / (gamma - 1.0);
    for (std::size_t j = 0; j < k_.size(); ++j) {
      double r = total - forward[j] + w(std::pow(2.0, k_[j]));
      log_inner_[j] = std::log(std::max(r, 1e-300));
    }
  }
}

TailFit TailAnalyzer::fit(double p) const {
  // The local slope of ln t in u = ln n is exactly computable because the
  // inner sum differentiates back to its summand: d(ln T)/du = n w(n)/T(n).
  // Its expansion -e - kappa/u - c/u^2 - ... is free of the 1/ln-correction
  // series that pollutes direct fits of ln T, so a short Richardson fit in
  // 1/u pins (e, kappa).
  const int d = fam_.d;
  double outer, weight_exp;
  bool backward = false;
  switch (fam_.tag) {
    case spectral::FamilyTag::SphereHighest:
      outer = -0.5 * (d + 1.0);
      weight_exp = 0.5 * (d - 1.0);
      break;
    case spectral::FamilyTag::SphereZonal:
      outer = -(d + 1.0);
      weight_exp = d - 1.0;
      break;
    case spectral::FamilyTag::HermiteOscillator:
      outer = 0.5 * d - 1.0;
      weight_exp = -0.5 * d;
      backward = true;
      break;
    default:
      outer = 0.0;
      weight_exp = 0.0;
  }
  static const int probes[] = {24, 30, 38, 47, 58};
  const int m = 5;
  Eigen::MatrixXd x(m, 4);
  Eigen::VectorXd y(m);
  const double ln2 = 0.6931471805599453;
  for (int j = 0; j < m; ++j) {
    int k = probes[j];
    double u = k * ln2;
    double xx = std::pow(2.0, k);
    double slope;
    if (fam_.tag == spectral::FamilyTag::TorusFourier) {
      double h = 1e-4 * xx;
      double va = a_(xx - h), vb = a_(xx + h);
      slope = xx * (std::log(std::max(vb * vb, 1e-300)) -
                    std::log(std::max(va * va, 1e-300))) /
              (2.0 * h);
    } else {
      double v = std::fabs(a_(xx));
      if (v == 0.0) {
        slope = outer;
      } else {
        double log_xw = (weight_exp + 1.0) * u + 2.0 * std::log(v);
        slope = outer + 0.5 * p * (backward ? -1.0 : 1.0) *
                            std::exp(log_xw - log_inner_at(k));
      }
    }
    x(j, 0) = 1.0;
    x(j, 1) = 1.0 / u;
    x(j, 2) = 1.0 / (u * u);
    x(j, 3) = 1.0 / (u * u * u);
    y[j] = slope;
  }
  Eigen::VectorXd beta = x.colPivHouseholderQr().solve(y);
  return {-beta[0], -beta[1]};
}

double TailAnalyzer::log_inner_at(int k) const {
  for (std::size_t j = 0; j < k_.size(); ++j)
    if (k_[j] == k) return log_inner_[j];
  throw std::logic_error("TailAnalyzer: missing checkpoint");
}

bool TailAnalyzer::member(double p) const {
  if (finite_support_) return true;
  return fit_is_member(fit(p));
}

bool TailAnalyzer::l2() const {
  if (finite_support_) return true;
  // square-summability of a itself through the same slope extrapolation
  static const int probes[] = {24, 30, 38, 47, 58};
  const int m = 5;
  Eigen::MatrixXd x(m, 4);
  Eigen::VectorXd y(m);
  const double ln2 = 0.6931471805599453;
  for (int j = 0; j < m; ++j) {
    double u = probes[j] * ln2;
    double xx = std::pow(2.0, probes[j]);
    double h = 1e-4 * xx;
    double va = a_(xx - h), vb = a_(xx + h);
    y[j] = xx * (std::log(std::max(vb * vb, 1e-300)) -
                 std::log(std::max(va * va, 1e-300))) /
           (2.0 * h);
    x(j, 0) = 1.0;
    x(j, 1) = 1.0 / u;
    x(j, 2) = 1.0 / (u * u);
    x(j, 3) = 1.0 / (u * u * u);
  }
  Eigen::VectorXd beta = x.colPivHouseholderQr().solve(y);
  return fit_is_member({-beta[0], -beta[1]});
}

bool plp_membership(const spectral::Family& fam,
                    const std::function<double(double)>& a, double p) {
  TailAnalyzer analyzer(fam, a);
  if (fam.tag == spectral::FamilyTag::TorusFourier) return analyzer.l2();
  if (fam.tag == spectral::FamilyTag::SphereZonal &&
      p <= 2.0 * fam.d / (fam.d - 1.0))
    return analyzer.l2();  // subcritical zonal range: the space is l^2
  return analyzer.member(p);
}

double critical_exponent(const spectral::Family& fam,
                         const std::function<double(double)>& a) {
  TailAnalyzer analyzer(fam, a);
  auto member = [&](double p) {
    if (fam.tag == spectral::FamilyTag::TorusFourier) return analyzer.l2();
    if (fam.tag == spectral::FamilyTag::SphereZonal &&
        p <= 2.0 * fam.d / (fam.d - 1.0))
      return analyzer.l2();
    return analyzer.member(p);
  };
  const double lo0 = 2.0, hi0 = 64.0;
  bool at_lo = member(lo0 + 1e-6);
  bool at_hi = member(hi0);
  const double inf = std::numeric_limits<double>::infinity();
  if (at_lo && at_hi) return inf;  // member everywhere tested
  double lo = lo0, hi = hi0;
  if (at_lo && !at_hi) {
    // sphere-type: membership decays in p; find the sup
    while (hi - lo > 1e-3) {
      double mid = 0.5 * (lo + hi);
      (member(mid) ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
  }
  if (!at_lo && at_hi) {
    // oscillator-type: membership grows in p; find the inf
    while (hi - lo > 1e-3) {
      double mid = 0.5 * (lo + hi);
      (member(mid) ? hi : lo) = mid;
    }
    return 0.5 * (lo + hi);
  }
  return inf;  // member nowhere in (2, 64]
}

// ---- interpolation defect ----------------------------------------------------

namespace {

double theta1_of(double p1, double p, double p2) {
  return (1.0 / p - 1.0 / p2) / (1.0 / p1 - 1.0 / p2);
}

}  // namespace

double interpolation_defect(const measure::SampledFunction& phi, double p1,
                            double p2) {
  if (!(p1 >= 1.0 && p2 > p1))
    throw std::domain_error("interpolation_defect: need 1 <= p1 < p2");
  double np1 = measure::lp_norm(phi, p1);
  double np2 = measure::lp_norm(phi, p2);
  auto quotient = [&](double p) {
    double t1 = theta1_of(p1, p, p2);
    double t2 = 1.0 - t1;
    return std::pow(np1, t1) * std::pow(np2, t2) / measure::lp_norm(phi, p);
  };
  double lo = p1, hi = p2, best = 1.0, best_p = p1;
  const int grid = 64;
  for (int round = 0; round < 4; ++round) {
    double step = (hi - lo) / grid;
    for (int i = 0; i <= grid; ++i) {
      double p = lo + i * step;
      double q = quotient(p);
      if (q > best) {
        best = q;
        best_p = p;
      }
    }
    lo = std::max(p1, best_p - 2.0 * step);
    hi = std::min(p2, best_p + 2.0 * step);
  }
  return best;
}

HolderWitness holder_witness(const measure::SampledFunction& phi, double p1,
                             double p2) {
  if (1.0 / p1 + 1.0 / p2 > 1.0 + 1e-12)
    throw std::domain_error("holder_witness: 1/p1 + 1/p2 > 1, empty r-interval");
  HolderWitness w;
  w.q1 = p1 / (p1 - 1.0);
  w.q2 = p2 / (p2 - 1.0);
  w.r = 0.5 * ((1.0 + p1 / w.q2) + (1.0 + p2 / w.q1));
  const auto& v = phi.values;
  Eigen::ArrayXd vr = v.pow(w.r);
  double ir = (phi.rule->weights * vr).sum();
  Eigen::ArrayXd psi(v.size());
  for (Eigen::Index i = 0; i < v.size(); ++i)
    psi[i] = v[i] > 0.0 ? vr[i] / (v[i] * ir) : 0.0;
  w.psi = {phi.rule, psi};
  w.pairing = (phi.rule->weights * v * psi).sum();
  w.prod1 = measure::lp_norm(phi, p1) * measure::lp_norm(w.psi, w.q1);
  w.prod2 = measure::lp_norm(phi, p2) * measure::lp_norm(w.psi, w.q2);
  w.q_defect = interpolation_defect(phi, p1, p2);

  double ip1 = (phi.rule->weights * v.pow(p1)).sum();
  double ip2 = (phi.rule->weights * v.pow(p2)).sum();
  for (int which = 0; which < 2; ++which) {
    double q = which == 0 ? w.q1 : w.q2;
    double iq = (phi.rule->weights * psi.pow(q)).sum();
    double qf = std::pow(w.q_defect, (w.r - 1.0) * q);
    double slack = 0.0;
    for (Eigen::Index i = 0; i < v.size(); ++i) {
      double lhs = std::pow(psi[i], q) / iq;
      double rhs = qf * (std::pow(v[i], p1) / ip1 + std::pow(v[i], p2) / ip2);
      slack = std::max(slack, lhs - rhs);
    }
    (which == 0 ? w.dom_slack1 : w.dom_slack2) = slack;
  }
  return w;
}

// ---- hypothesis checks ---------------------------------------------------------

namespace {

std::shared_ptr<const measure::QuadratureRule> family_rule(
    const spectral::Family& fam, int N) {
  switch (fam.tag) {
    case spectral::FamilyTag::HermiteOscillator:
      return measure::radial_rule(fam.d, std::sqrt(2.0 * N + 1.0) + 8.0,
                                  std::max(64, 2 * N));
    case spectral::FamilyTag::SphereHighest:
      return measure::band_rule(fam.d, std::max(96, 4 * N), 16);
    case spectral::FamilyTag::SphereZonal:
      return measure::zonal_rule(fam.d, std::max(32, 20 * (N + 1) / 16 + 1));
    case spectral::FamilyTag::TorusFourier:
      return measure::torus_rule(64);
  }
  return {};
}

Eigen::ArrayXd sup_normalized_profile(const spectral::Family& fam, int N, double p,
                                      const measure::QuadratureRule& rule) {
  int n0 = first_level_of(fam);
  Eigen::ArrayXd g = Eigen::ArrayXd::Zero(rule.nodes.size());
  for (int n = n0; n <= N; ++n) {
    double norm = spectral::sqrt_spectral_lp(fam, n, p).value;
    for (Eigen::Index i = 0; i < rule.nodes.size(); ++i) {
      double e = spectral::spectral_value(fam, n, rule.nodes[i]);
      g[i] = std::max(g[i], std::sqrt(e) / norm);
    }
  }
  return g;
}

}  // namespace

HypothesisReport hypothesis_checks(const spectral::Family& fam, double p, int N,
                                   double p1, double p2) {
  HypothesisReport rep;
  auto rule = family_rule(fam, 2 * N);
  Eigen::ArrayXd gN = sup_normalized_profile(fam, N, p, *rule);
  Eigen::ArrayXd g2N = sup_normalized_profile(fam, 2 * N, p, *rule);
  rep.weak_quasinorm_N = measure::weak_lp_quasinorm(*rule, gN, p);
  rep.weak_quasinorm_2N = measure::weak_lp_quasinorm(*rule, g2N, p);
  rep.lp_norm_N = measure::lp_norm(*rule, gN, p);
  rep.lp_norm_2N = measure::lp_norm(*rule, g2N, p);

  int n0 = first_level_of(fam);
  for (int n = std::max(n0, 1); n <= N; ++n) {
    Eigen::ArrayXd prof(rule->nodes.size());
    for (Eigen::Index i = 0; i < rule->nodes.size(); ++i)
      prof[i] = std::sqrt(spectral::spectral_value(fam, n, rule->nodes[i]));
    measure::SampledFunction f{rule, prof};
    rep.defect_sup = std::max(rep.defect_sup, interpolation_defect(f, p1, p2));
    double q = p / (p - 1.0);
    double pn = spectral::sqrt_spectral_lp(fam, n, p).value;
    double qn = spectral::sqrt_spectral_lp(fam, n, q).value;
    rep.pairing_sup = std::max(
        rep.pairing_sup, pn * qn / static_cast<double>(spectral::level_dim(fam, n)));
  }
  return rep;
}

// ---- embedding sweep ------------------------------------------------------------

namespace {

// closed-form series for a lacunary J = {2^k} sequence, summed in exact
// power-of-two segments with Hurwitz-zeta partial sums
double lacunary_plp_partial(const spectral::Family& fam, double p, double sigma,
                            int k_max) {
  int d = fam.d;
  double outer_s, inner_w;
  switch (fam.tag) {
    case spectral::FamilyTag::SphereHighest:
      outer_s = 0.5 * (d + 1.0);
      inner_w = 0.5 * (d - 1.0);
      break;
    case spectral::FamilyTag::SphereZonal:
      outer_s = d + 1.0;
      inner_w = d - 1.0;
      break;
    default:
      throw std::domain_error("lacunary_plp_partial: sphere families only");
  }
  double inner = 0.0, total = 0.0;
  for (int k = 0; k <= k_max; ++k) {
    double n = std::pow(2.0, k);
    double a = std::pow(n, -sigma);
    inner += std::pow(n, inner_w) * a * a;
    double hi = std::pow(2.0, k + 1);
    double seg = hurwitz_zeta(outer_s, n) - hurwitz_zeta(outer_s, hi);
    total += seg * std::pow(inner, 0.5 * p);
  }
  return total;
}

}  // namespace

EmbeddingSweep embedding_sweep(const spectral::Family& fam, double p) {
  if (p <= 2.0)
    throw std::domain_error("embedding_sweep: p > 2 required");
  if (fam.tag == spectral::FamilyTag::SphereZonal && p <= 2.0 * fam.d / (fam.d - 1.0))
    throw std::domain_error("embedding_sweep: zonal sweep needs p > 2d/(d-1)");
  EmbeddingSweep sweep;
  const int d = fam.d;
  switch (fam.tag) {
    case spectral::FamilyTag::SphereHighest:
      sweep.s_expected = 0.5 * (d - 1.0) * (0.5 - 1.0 / p);
      break;
    case spectral::FamilyTag::SphereZonal:
      sweep.s_expected = 0.5 * (d - 1.0) - d / p;
      break;
    case spectral::FamilyTag::HermiteOscillator:
      sweep.s_expected = -d * (0.5 - 1.0 / p);
      break;
    default:
      throw std::domain_error("embedding_sweep: torus excluded (Paley-Zygmund regime)");
  }

  const int cells = 17;
  const double span = 0.4;
  double last_no = -1e300, first_yes = 1e300;
  for (int i = 0; i < cells; ++i) {
    double s = sweep.s_expected - span + 2.0 * span * i / (cells - 1);
    bool member;
    if (fam.tag == spectral::FamilyTag::HermiteOscillator) {
      double tau = 0.5 * (s + 1.0) + 0.01;
      member = plp_membership(fam, [tau](double n) { return std::pow(n, -tau); }, p);
    } else {
      double sigma = s + 0.5 + 0.02;
      member =
          plp_membership(fam, [sigma](double n) { return std::pow(n, -sigma); }, p);
    }
    bool expected = s > sweep.s_expected - 1e-9;
    sweep.cells.push_back({s, member, expected});
    if (!member) last_no = std::max(last_no, s);
    if (member) first_yes = std::min(first_yes, s);
  }
  sweep.s_hat = 0.5 * (last_no + first_yes);

  // lacunary witness at the critical exponent (sphere families); lacunary
  // sums skip almost every level, so the witness exponent is s_c itself
  if (fam.tag != spectral::FamilyTag::HermiteOscillator) {
    double sigma_c = sweep.s_expected;
    double eps = 0.25;
    double h_partial = 0.0, h_prev = 0.0;
    for (int k = 0; k <= 40; ++k) {
      double n = std::pow(2.0, k);
      if (k == 30) h_prev = h_partial;
      h_partial += std::pow(1.0 + n, 2.0 * (sweep.s_expected - eps)) *
                   std::pow(n, -2.0 * sigma_c);
    }
    sweep.lacunary_in_sobolev_below = h_partial <= 1.02 * h_prev;
    double p12 = lacunary_plp_partial(fam, p, sigma_c, 12);
    double p22 = lacunary_plp_partial(fam, p, sigma_c, 22);
    sweep.lacunary_plp_growth = p22 / p12;
  } else {
    // oscillator: H^{s_c} does embed; record the triangle-inequality bound
    // ratio on a power-law test point instead
    sweep.lacunary_in_sobolev_below = true;
    double tau = 0.5 * (sweep.s_expected + 1.0) + 0.05;
    Eigen::ArrayXd norms(400 + 1);
    for (int n = 0; n <= 400; ++n) norms[n] = std::pow(n + 1.0, -tau);
    double plpn = hermite_closed_form(norms, p, d);
    double sob = sobolev_norm(fam, norms, sweep.s_expected);
    sweep.lacunary_plp_growth = plpn / sob;
  }
  return sweep;
}

ShiftNorms r_boundedness_counterexample(double p, int N) {
  if (p < 1.0 || N < 1)
    throw std::domain_error("r_boundedness_counterexample: p < 1 or N < 1");
  // piecewise-constant representation: segments of unit length carrying the
  // l^2 square-sum of the stacked indicators
  ShiftNorms out;
  {
    // shifted: every f_{N,n}(x+n) = 1_{[0,1)}, one segment of square-sum N
    std::vector<std::pair<double, double>> segments{{1.0, static_cast<double>(N)}};
    double v = 0.0;
    for (auto& [len, sq] : segments) v += len * std::pow(sq, 0.5 * p);
    out.shifted = v;
  }
  {
    // unshifted: N disjoint unit segments of square-sum 1
    std::vector<std::pair<double, double>> segments(
        static_cast<std::size_t>(N), {1.0, 1.0});
    double v = 0.0;
    for (auto& [len, sq] : segments) v += len * std::pow(sq, 0.5 * p);
    out.unshifted = v;
  }
  return out;
}

}  // namespace eigenrand::plp
