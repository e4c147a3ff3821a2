#include "eigenrand/verify.hpp"

#include <cmath>
#include <complex>
#include <cstdio>
#include <set>

#include "eigenrand/constants.hpp"
#include "eigenrand/fit.hpp"
#include "eigenrand/measure.hpp"
#include "eigenrand/mc.hpp"
#include "eigenrand/plp.hpp"
#include "eigenrand/randmat.hpp"
#include "eigenrand/series.hpp"
#include "eigenrand/specfun.hpp"
#include "eigenrand/spectral.hpp"

namespace eigenrand::verify {

namespace {

namespace C = eigenrand::constants;
constexpr double kPi = 3.141592653589793238462643;

std::string num(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

struct Ctx {
  Config cfg;
  std::set<std::string> covered;
  void cover(std::initializer_list<const char*> ops) {
    for (const char* op : ops) covered.insert(op);
  }
};

void note(CheckResult& r, const std::string& key, double v) {
  r.details.push_back(key + "=" + num(v));
}

void gate(CheckResult& r, const std::string& key, bool ok) {
  if (!ok) r.pass = false;
  r.details.push_back(key + (ok ? "=pass" : "=FAIL"));
}

spectral::Family osc(int d) { return {spectral::FamilyTag::HermiteOscillator, d}; }
spectral::Family highest(int d) { return {spectral::FamilyTag::SphereHighest, d}; }
spectral::Family zonal(int d) { return {spectral::FamilyTag::SphereZonal, d}; }

randmat::Ensemble kHaarO{randmat::EnsembleKind::HaarOrthogonal,
                         randmat::EntryLaw::Rademacher, 4.0};
randmat::Ensemble kHaarU{randmat::EnsembleKind::HaarUnitary,
                         randmat::EntryLaw::Rademacher, 4.0};
randmat::Ensemble kGauss{randmat::EnsembleKind::IIDEntries,
                         randmat::EntryLaw::StdGaussian, 4.0};
randmat::Ensemble kRademacher{randmat::EnsembleKind::IIDEntries,
                              randmat::EntryLaw::Rademacher, 4.0};
randmat::Ensemble kHaarRad{randmat::EnsembleKind::HaarTimesIID,
                           randmat::EntryLaw::Rademacher, 4.0};
randmat::Ensemble kHeavy4{randmat::EnsembleKind::IIDEntries,
                          randmat::EntryLaw::HeavyTail, 4.0};

Eigen::ArrayXd instance_norms(int count, double sigma, std::uint64_t salt) {
  Eigen::ArrayXd out(count);
  mc::Rng rng(9090, salt);
  for (int k = 0; k < count; ++k)
    out[k] = std::pow(k + 1.0, -sigma) * (0.5 + rng.uniform());
  return out;
}

series::RandomSeriesSpec filled_spec(const spectral::Family& fam, int N,
                                     const randmat::Ensemble& e, double sigma,
                                     std::uint64_t salt) {
  auto spec = series::make_series_spec(fam, N, e);
  mc::Rng rng(7777, salt);
  int n0 = series::first_level(fam);
  for (std::size_t k = 0; k < spec.coeffs.size(); ++k) {
    double n = static_cast<double>(n0 + static_cast<int>(k));
    for (Eigen::Index j = 0; j < spec.coeffs[k].size(); ++j)
      spec.coeffs[k][j] =
          std::complex<double>(rng.gaussian(), rng.gaussian());
    spec.coeffs[k] *= std::pow(n + 1.0, -sigma) *
                      std::sqrt(static_cast<double>(spec.coeffs[k].size())) /
                      spec.coeffs[k].norm();
  }
  return spec;
}

// ---- criterion 1: special functions ---------------------------------------

CheckResult criterion1(Ctx& ctx) {
  CheckResult r{"1 special-functions", true, {}};
  ctx.cover({"hermite_h", "hermite_zero", "phi_fn", "muckenhoupt_main", "jacobi_p"});
  double worst = 0.0;
  for (int n = 0; n <= 1000; n += 2) {
    double a = specfun::hermite_h(n, 0.0);
    double b = specfun::hermite_zero(n / 2);
    worst = std::max(worst, std::fabs(a - b) / std::fabs(b));
  }
  note(r, "hermite_zero_rel_err", worst);
  gate(r, "hermite_zero_agreement", worst <= 1e-10);

  // Gram matrix of h_0..h_50 on [-L, L], L = sqrt(101) + 6
  {
    const int nmax = 50;
    double half = std::sqrt(2.0 * nmax + 1.0) + 6.0;
    auto box = measure::box_rule_2d(half, 16);
    Eigen::MatrixXd h(nmax + 1, box->axis.size());
    for (Eigen::Index j = 0; j < box->axis.size(); ++j)
      h.col(j) = specfun::hermite_h_all(nmax, box->axis[j]).matrix();
    Eigen::MatrixXd gram = h * box->axis_w.matrix().asDiagonal() * h.transpose();
    double err = (gram - Eigen::MatrixXd::Identity(nmax + 1, nmax + 1))
                     .cwiseAbs()
                     .maxCoeff();
    note(r, "gram_max_err", err);
    gate(r, "gram_identity", err <= 1e-8);
  }

  // Muckenhoupt remainder with the frozen constant, n <= 300 sweep
  {
    double worst_ratio = 0.0;
    for (int n = 1; n <= 300; n += (n < 16 ? 1 : 13)) {
      double s = 2.0 * n + 1.0;
      double xmax = std::sqrt(s) - std::pow(s, -1.0 / 6.0);
      for (int i = 0; i <= 120; ++i) {
        double x = xmax * (i / 120.0);
        double err = std::fabs(specfun::hermite_h(n, x) -
                               specfun::muckenhoupt_main(n, x));
        double bound = C::kMuckenhouptC * std::sqrt(s) / std::pow(s - x * x, 1.75);
        worst_ratio = std::max(worst_ratio, err / bound);
      }
    }
    note(r, "muckenhoupt_worst_ratio", worst_ratio);
    gate(r, "muckenhoupt_bound", worst_ratio <= 1.0);
  }
  return r;
}

// ---- criterion 2: spectral normalization and recursion ----------------------

CheckResult criterion2(Ctx& ctx) {
  CheckResult r{"2 spectral-normalization", true, {}};
  ctx.cover({"dim_e", "osc_spectral", "sphere_area", "integrate_zonal",
             "integrate_band", "integrate_radial"});
  double worst = 0.0;
  for (int d : {2, 3}) {
    for (int n = 1; n <= 100; n += (n < 10 ? 1 : 7)) {
      for (auto fam : {osc(d), highest(d), zonal(d)}) {
        auto res = spectral::density_integral(fam, n);
        worst = std::max(worst, std::fabs(res.value - 1.0));
        if (!res.converged) gate(r, "quadrature_convergence", false);
      }
    }
  }
  note(r, "density_worst_err", worst);
  gate(r, "density_normalization", worst <= 1e-6);

  double worst_rec = 0.0;
  for (int d : {2, 3, 4}) {
    for (int n : {1, 5, 20, 50, 100}) {
      double edge = std::sqrt(2.0 * n + 1.0);
      for (int i = 0; i <= 20; ++i) {
        double rr = 1.3 * edge * i / 20.0;
        double a = spectral::osc_spectral(d, n, rr);
        double b = spectral::osc_spectral_alt(d, n, rr);
        double scale = std::max({std::fabs(a), std::fabs(b), 1e-280});
        if (scale > 1e-280)
          worst_rec = std::max(worst_rec, std::fabs(a - b) / scale);
      }
    }
  }
  note(r, "recursion_worst_rel", worst_rec);
  gate(r, "recursion_117_118", worst_rec <= 1e-8);
  return r;
}

// ---- criterion 3: concentration -------------------------------------------

CheckResult criterion3(Ctx& ctx) {
  CheckResult r{"3 concentration", true, {}};
  ctx.cover({"osc_concentration_report"});
  double min_ratio = 1e300, max_ratio = 0.0, tail = 0.0;
  for (int d : {2, 3}) {
    for (int n : {50, 71, 100, 141, 200, 283, 400}) {
      auto rep = spectral::osc_concentration_report(d, n, 0.2, C::kAnnulusC0,
                                                    C::kOscMinLevel);
      min_ratio = std::min(min_ratio, rep.min_ratio);
      max_ratio = std::max(max_ratio, rep.max_ratio);
      tail = std::max(tail, rep.tail_max);
    }
  }
  note(r, "annulus_min", min_ratio);
  note(r, "annulus_max", max_ratio);
  note(r, "tail_max", tail);
  gate(r, "annulus_band",
       min_ratio >= C::kAnnulusRatioLo && max_ratio <= C::kAnnulusRatioHi);
  gate(r, "gaussian_tail", tail <= C::kOscTailBound);
  return r;
}

// ---- criterion 4: norm exponents -------------------------------------------

CheckResult criterion4(Ctx& ctx) {
  CheckResult r{"4 norm-exponents", true, {}};
  ctx.cover({"sqrt_spectral_lp", "zonal_lp_profile", "y_norm_const", "zonal_z"});
  Eigen::ArrayXd ns(8);
  ns << 20, 33, 55, 90, 130, 200, 300, 400;
  Eigen::ArrayXd xs = 2.0 * ns + 1.0;  // oscillator spectral abscissa

  for (int d : {2, 3}) {
    for (double p : {1.0, 4.0, 8.0}) {
      Eigen::ArrayXd vals(ns.size());
      for (Eigen::Index i = 0; i < ns.size(); ++i)
        vals[i] = spectral::sqrt_spectral_lp(osc(d), static_cast<int>(ns[i]), p).value;
      double slope = fit::loglog_slope(xs, vals);
      double want = 0.5 * (0.5 * d - 1.0 + d / p);
      note(r, "osc_d" + std::to_string(d) + "_p" + num(p).substr(0, 3), slope - want);
      gate(r, "osc_slope_d" + std::to_string(d) + "_p" + num(p).substr(0, 3),
           std::fabs(slope - want) <= 0.05);
    }
    for (double p : {4.0, 6.0}) {
      Eigen::ArrayXd vals(ns.size());
      for (Eigen::Index i = 0; i < ns.size(); ++i)
        vals[i] = spectral::sqrt_spectral_lp(highest(d), static_cast<int>(ns[i]), p).value;
      double slope = fit::loglog_slope(ns, vals);
      double want = 0.5 * (d - 1.0) * (0.5 - 1.0 / p);
      gate(r, "y_slope_d" + std::to_string(d) + "_p" + num(p).substr(0, 3),
           std::fabs(slope - want) <= 0.05);
    }
    double pc = 2.0 * d / (d - 1.0);
    {
      // subcritical: bounded norms read as slope ~ 0
      Eigen::ArrayXd vals(ns.size());
      for (Eigen::Index i = 0; i < ns.size(); ++i)
        vals[i] =
            spectral::zonal_lp_profile(d, static_cast<int>(ns[i]), 0.5 * (2.0 + pc)).value;
      double slope = fit::loglog_slope(ns, vals);
      gate(r, "z_subcritical_d" + std::to_string(d), std::fabs(slope) <= 0.05);
    }
    {
      Eigen::ArrayXd vals(ns.size());
      double lo = 1e300, hi = 0.0;
      for (Eigen::Index i = 0; i < ns.size(); ++i) {
        vals[i] = spectral::zonal_lp_profile(d, static_cast<int>(ns[i]), pc).value /
                  std::sqrt(std::log(ns[i] + 1.0));
        lo = std::min(lo, vals[i]);
        hi = std::max(hi, vals[i]);
      }
      note(r, "z_critical_d" + std::to_string(d) + "_lo", lo);
      note(r, "z_critical_d" + std::to_string(d) + "_hi", hi);
      gate(r, "z_sqrtlog_d" + std::to_string(d),
           lo >= C::kZLogLawLo && hi <= C::kZLogLawHi);
    }
    for (double dp : {2.0, 4.0}) {
      double p = pc + dp;
      Eigen::ArrayXd vals(ns.size());
      for (Eigen::Index i = 0; i < ns.size(); ++i)
        vals[i] = spectral::zonal_lp_profile(d, static_cast<int>(ns[i]), p).value;
      double slope = fit::loglog_slope(ns, vals);
      double want = 0.5 * (d - 1.0) - d / p;
      gate(r, "z_supercritical_d" + std::to_string(d) + "_p" + num(p).substr(0, 3),
           std::fabs(slope - want) <= 0.05);
    }
  }
  return r;
}

// ---- criterion 5: Haar trace identities -------------------------------------

CheckResult criterion5(Ctx& ctx) {
  CheckResult r{"5 haar-identities", true, {}};
  ctx.cover({"sample"});
  for (int d : {2, 5, 20}) {
    Eigen::MatrixXcd a(d, d);
    mc::Rng fill(ctx.cfg.seed + 1, static_cast<std::uint64_t>(d));
    for (int j = 0; j < d; ++j)
      for (int i = 0; i < d; ++i)
        a(i, j) = std::complex<double>(fill.gaussian(), fill.gaussian());
    auto ests = mc::run_multi(
        100000, 3, ctx.cfg.seed + 2 + static_cast<std::uint64_t>(d),
        ctx.cfg.threads, [&](std::int64_t, mc::Rng& rng, double* row) {
          Eigen::MatrixXd p = randmat::sample_orthogonal(d, rng);
          std::complex<double> t = (p * a).trace();
          row[0] = t.real();
          row[1] = t.imag();
          row[2] = std::norm(t);
        });
    bool mean_ok = std::fabs(ests[0].mean) <= 3.0 * ests[0].stderr_ &&
                   std::fabs(ests[1].mean) <= 3.0 * ests[1].stderr_;
    double want = (a.conjugate().transpose() * a).trace().real() / d;
    bool second_ok = std::fabs(ests[2].mean - want) <= 3.0 * ests[2].stderr_;
    note(r, "d" + std::to_string(d) + "_mean_sigmas",
         std::fabs(ests[0].mean) / std::max(ests[0].stderr_, 1e-300));
    note(r, "d" + std::to_string(d) + "_second_sigmas",
         std::fabs(ests[2].mean - want) / std::max(ests[2].stderr_, 1e-300));
    gate(r, "d" + std::to_string(d), mean_ok && second_ok);
  }
  return r;
}

// ---- criterion 6: HS identity -----------------------------------------------

CheckResult criterion6(Ctx& ctx) {
  CheckResult r{"6 hs-identity", true, {}};
  for (int inst = 0; inst < 5; ++inst) {
    mc::Rng fill(ctx.cfg.seed + 10, static_cast<std::uint64_t>(inst));
    std::vector<Eigen::MatrixXcd> a;
    double hs2 = 0.0;
    for (int d : {1, 2, 3, 5, 8}) {
      Eigen::MatrixXcd m(d, d);
      for (int j = 0; j < d; ++j)
        for (int i = 0; i < d; ++i)
          m(i, j) = std::complex<double>(fill.gaussian(), fill.gaussian());
      a.push_back(m);
      hs2 += m.squaredNorm();
    }
    auto est = series::mc_hs_identity(a, 40000,
                                      ctx.cfg.seed + 11 + static_cast<std::uint64_t>(inst),
                                      ctx.cfg.threads);
    double sig = std::fabs(est.mean - hs2) / std::max(est.stderr_, 1e-300);
    note(r, "instance" + std::to_string(inst) + "_sigmas", sig);
    gate(r, "instance" + std::to_string(inst), sig <= 3.0);
  }
  return r;
}

// ---- criterion 7: random-matrix moments ---------------------------------------

CheckResult criterion7(Ctx& ctx) {
  CheckResult r{"7 randmat-moments", true, {}};
  ctx.cover({"mc_opnorm_moment", "mc_sigma_expected_abs", "op_norm", "matrix_abs",
             "smallest_singular", "heavytail_sample"});
  // (a) Rademacher first-moment spread across d
  {
    double lo = 1e300, hi = 0.0;
    for (int d : {20, 50, 100, 200}) {
      auto est = randmat::mc_opnorm_moment(kRademacher, d, 1.0, 300,
                                           ctx.cfg.seed + 20, ctx.cfg.threads);
      lo = std::min(lo, est.mean);
      hi = std::max(hi, est.mean);
    }
    note(r, "rademacher_spread", (hi - lo) / hi);
    gate(r, "opnorm_bounded_in_d", (hi - lo) / hi <= C::kOpnormSpread);
  }
  // (b) Kahane-Khintchine moment ratios at d = 50
  {
    auto ests = mc::run_multi(
        400, 4, ctx.cfg.seed + 21, ctx.cfg.threads,
        [&](std::int64_t, mc::Rng& rng, double* row) {
          double v = randmat::op_norm(randmat::sample(kRademacher, 50, rng));
          row[0] = v;
          row[1] = v * v;
          row[2] = std::pow(v, 4.0);
          row[3] = std::pow(v, 8.0);
        });
    bool ok = true;
    double q[3] = {2.0, 4.0, 8.0};
    double m[3] = {ests[1].mean, ests[2].mean, ests[3].mean};
    for (int k = 0; k < 3; ++k) {
      double ratio = std::pow(m[k], 1.0 / q[k]) / ests[0].mean;
      ok = ok && ratio >= 1.0 - 0.02 && ratio <= C::kKkmpK * std::sqrt(q[k]);
      note(r, "moment_ratio_q" + num(q[k]).substr(0, 1), ratio);
    }
    gate(r, "kahane_khintchine", ok);
  }
  // (c) smallest singular value of E|M| bounded below via fourth moments
  {
    bool ok = true;
    for (int d : {20, 100}) {
      auto est = randmat::mc_sigma_expected_abs(kRademacher, d, 256,
                                                ctx.cfg.seed + 22, ctx.cfg.threads);
      note(r, "sigma_d" + std::to_string(d), est.mean);
      ok = ok && est.mean >= 1.0 / C::kSigmaLowerC;  // E[X^2] = E[X^4] = 1
    }
    gate(r, "sigma_lower_bound", ok);
  }
  // (d) heavy-tail p = 4 growth witness (divergent fourth moment)
  {
    auto m20 = randmat::mc_opnorm_moment(kHeavy4, 20, 1.0, 600,
                                         ctx.cfg.seed + 23, ctx.cfg.threads);
    auto m200 = randmat::mc_opnorm_moment(kHeavy4, 200, 1.0, 600,
                                          ctx.cfg.seed + 24, ctx.cfg.threads);
    double growth = m200.mean / m20.mean;
    note(r, "heavytail_mean_d20", m20.mean);
    note(r, "heavytail_mean_d200", m200.mean);
    note(r, "heavytail_growth", growth);
    gate(r, "heavytail_growth_2x", growth >= C::kHeavyTailGrowth);
  }
  return r;
}

// ---- criterion 8: universality -------------------------------------------------

CheckResult criterion8(Ctx& ctx) {
  CheckResult r{"8 universality", true, {}};
  ctx.cover({"sample_series", "mc_lp_moment", "universality_ratio",
             "plp_norm_quadrature"});
  std::vector<randmat::Ensemble> ensembles{kHaarO, kHaarU, kGauss, kHaarRad};
  std::vector<spectral::Family> fams{osc(2), highest(2), zonal(2)};
  double worst_band = 0.0, worst_stab = 0.0;
  std::uint64_t salt = 0;
  for (const auto& fam : fams) {
    for (double p : {2.0, 4.0, 6.0}) {
      double prev_ratio = -1.0;
      for (int N : {5, 10, 20}) {
        auto spec = filled_spec(fam, N, kHaarO, 0.6, 31 + salt);
        auto rows = series::universality_ratio(spec, p, ensembles, 160,
                                               ctx.cfg.seed + 30 + salt,
                                               ctx.cfg.threads);
        double lo = 1e300, hi = 0.0, haar = 0.0;
        for (const auto& row : rows) {
          lo = std::min(lo, row.ratio);
          hi = std::max(hi, row.ratio);
          if (row.ensemble == "haar-o") haar = row.ratio;
        }
        worst_band = std::max(worst_band, hi / lo);
        if (prev_ratio > 0.0)
          worst_stab = std::max(worst_stab, std::fabs(haar / prev_ratio - 1.0));
        prev_ratio = haar;
        ++salt;
      }
    }
  }
  note(r, "max_over_min", worst_band);
  note(r, "n_stability", worst_stab);
  gate(r, "ensemble_band", worst_band <= C::kUniversalityBand);
  gate(r, "n_doubling_stability", worst_stab <= C::kNStabilityBand);
  return r;
}

// ---- criterion 9: closed-form equivalences ---------------------------------------

CheckResult criterion9(Ctx& ctx) {
  CheckResult r{"9 closed-forms", true, {}};
  ctx.cover({"y_closed_form", "z_closed_form", "hermite_closed_form"});
  double ylo = 1e300, yhi = 0.0;
  for (int inst = 0; inst < 20; ++inst) {
    double p = inst % 2 == 0 ? 4.0 : 6.0;
    Eigen::ArrayXd a = instance_norms(24, 0.25 + 0.03 * inst, 100 + inst);
    double ratio = plp::y_closed_form(a, p, 2) /
                   plp::plp_norm_quadrature(highest(2), a, p).value;
    ylo = std::min(ylo, ratio);
    yhi = std::max(yhi, ratio);
  }
  note(r, "y_ratio_lo", ylo);
  note(r, "y_ratio_hi", yhi);
  gate(r, "y_band", ylo >= C::kYRatioLo && yhi <= C::kYRatioHi);

  double zlo = 1e300, zhi = 0.0;
  for (int inst = 0; inst < 20; ++inst) {
    double p = inst % 2 == 0 ? 5.0 : 8.0;
    Eigen::ArrayXd a = instance_norms(40, 0.45 + 0.02 * inst, 200 + inst);
    double ratio = plp::z_closed_form(a, p, 2) /
                   plp::plp_norm_quadrature(zonal(2), a, p).value;
    zlo = std::min(zlo, ratio);
    zhi = std::max(zhi, ratio);
  }
  note(r, "z_ratio_lo", zlo);
  note(r, "z_ratio_hi", zhi);
  gate(r, "z_band", zlo >= C::kZRatioLo && zhi <= C::kZRatioHi);

  double hlo = 1e300, hhi = 0.0;
  for (int inst = 0; inst < 20; ++inst) {
    int d = inst % 2 == 0 ? 2 : 3;
    double p = inst % 3 == 0 ? 2.0 : (inst % 3 == 1 ? 4.0 : 6.0);
    Eigen::ArrayXd v = instance_norms(30, 0.4 + 0.03 * inst, 300 + inst);
    double ratio = plp::hermite_closed_form(v, p, d) /
                   plp::plp_norm_quadrature(osc(d), v, p).value;
    hlo = std::min(hlo, ratio);
    hhi = std::max(hhi, ratio);
  }
  note(r, "hermite_ratio_lo", hlo);
  note(r, "hermite_ratio_hi", hhi);
  gate(r, "hermite_band", hlo >= C::kHermiteRatioLo && hhi <= C::kHermiteRatioHi);

  // the section-5 log family flips membership exactly at beta = 1
  const double p0 = 5.0;
  for (double beta : {0.5, 1.5}) {
    auto a = [=](double n) {
      if (n < 2.0) return 0.0;
      return std::pow(n, -2.0 * (0.5 - 1.0 / p0)) *
             std::pow(std::log(n), -beta / p0);
    };
    bool member = plp::plp_membership(zonal(2), a, p0);
    gate(r, "log_family_beta" + num(beta).substr(0, 3), member == (beta > 1.0));
  }
  return r;
}

// ---- criterion 10: interpolation defect and witness -------------------------------

CheckResult criterion10(Ctx& ctx) {
  CheckResult r{"10 interpolation-defect", true, {}};
  ctx.cover({"interpolation_defect", "holder_witness", "lp_norm",
             "weak_lp_quasinorm"});
  auto rule = std::make_shared<measure::QuadratureRule>();
  const int m = 512;
  rule->domain = measure::Domain::Torus;
  rule->dim_ambient = 1;
  rule->resolution = m;
  rule->nodes = Eigen::ArrayXd::LinSpaced(m, 0.5 / m, 1.0 - 0.5 / m);
  rule->weights = Eigen::ArrayXd::Constant(m, 1.0 / m);

  Eigen::ArrayXd ind = (rule->nodes < 0.25).cast<double>();
  double q_ind = plp::interpolation_defect({rule, 1.7 * ind}, 1.5, 5.0);
  note(r, "indicator_defect", q_ind);
  gate(r, "indicator", std::fabs(q_ind - 1.0) <= 1e-6);

  {
    auto rr = measure::radial_rule(1, 14.0, 160);
    measure::SampledFunction g{rr, (-rr->nodes.square()).exp()};
    double q = plp::interpolation_defect(g, 2.0, 4.0);
    double oracle = 1.0;
    for (int i = 0; i <= 8192; ++i) {
      double p = 2.0 + 2.0 * i / 8192.0;
      double t1 = (1.0 / p - 0.25) / 0.25;
      double np = std::pow(kPi / p, 0.5 / p);
      oracle = std::max(oracle, std::pow(std::pow(kPi / 2.0, 0.25), t1) *
                                    std::pow(std::pow(kPi / 4.0, 0.125), 1.0 - t1) /
                                    np);
    }
    note(r, "gaussian_defect", q);
    note(r, "gaussian_oracle", oracle);
    gate(r, "gaussian", std::fabs(q - oracle) <= 1e-4);
  }

  mc::Rng rng(ctx.cfg.seed + 40, 0);
  bool ok = true;
  double worst = 0.0;
  for (int t = 0; t < 10; ++t) {
    Eigen::ArrayXd v(m);
    for (Eigen::Index i = 0; i < m; ++i) {
      double x = rule->nodes[i];
      double c = rng.uniform();
      v[i] = 0.02 + rng.uniform() + 2.0 * std::exp(-40.0 * (x - c) * (x - c));
    }
    double p1 = 1.6 + 0.4 * rng.uniform();
    double p2 = 3.0 + 3.0 * rng.uniform();
    auto w = plp::holder_witness({rule, v}, p1, p2);
    double qr = std::pow(w.q_defect, w.r);
    worst = std::max({worst, std::fabs(w.pairing - 1.0), w.prod1 - qr,
                      w.prod2 - qr, w.dom_slack1, w.dom_slack2});
    ok = ok && std::fabs(w.pairing - 1.0) <= 1e-6 && w.prod1 <= qr + 1e-6 &&
         w.prod2 <= qr + 1e-6 && w.dom_slack1 <= 1e-6 && w.dom_slack2 <= 1e-6;
  }
  note(r, "witness_worst_slack", worst);
  gate(r, "witness_inequalities", ok);
  return r;
}

// ---- criterion 11: exact counterexample ---------------------------------------------

CheckResult criterion11(Ctx& ctx) {
  CheckResult r{"11 shift-counterexample", true, {}};
  ctx.cover({"r_boundedness_counterexample"});
  bool ok = true;
  double worst = 0.0;
  for (double p : {3.0, 4.0, 6.0}) {
    for (int n = 1; n <= 64; ++n) {
      auto v = plp::r_boundedness_counterexample(p, n);
      double e1 = std::fabs(v.shifted - std::pow(n, 0.5 * p)) /
                  std::pow(n, 0.5 * p);
      double e2 = std::fabs(v.unshifted - n) / n;
      worst = std::max({worst, e1, e2});
      ok = ok && e1 <= 1e-12 && e2 <= 1e-12;
    }
  }
  note(r, "worst_rel_err", worst);
  gate(r, "exact_values", ok);
  return r;
}

// ---- criterion 12: torus Salem-Zygmund ------------------------------------------------

CheckResult criterion12(Ctx& ctx) {
  CheckResult r{"12 salem-zygmund", true, {}};
  ctx.cover({"torus_salem_zygmund"});
  for (int k = 5; k <= 12; ++k) {
    int n = 1 << k;
    auto res = series::torus_salem_zygmund(n, 200, 16LL * n,
                                           ctx.cfg.seed + 50 + static_cast<std::uint64_t>(k),
                                           ctx.cfg.threads);
    note(r, "ratio_N" + std::to_string(n), res.est.mean);
    gate(r, "band_N" + std::to_string(n),
         res.est.mean >= C::kSalemZygmundLo && res.est.mean <= C::kSalemZygmundHi);
    gate(r, "parseval_N" + std::to_string(n),
         res.min_sup >= std::sqrt(static_cast<double>(n)) * (1.0 - 1e-12));
  }
  return r;
}

// ---- criterion 13: critical exponents ----------------------------------------------------

CheckResult criterion13(Ctx& ctx) {
  CheckResult r{"13 critical-exponent", true, {}};
  ctx.cover({"critical_exponent"});
  const double p0 = 5.0;
  for (double beta : {0.5, 1.5}) {
    auto a = [=](double n) {
      if (n < 2.0) return 0.0;
      return std::pow(n, -2.0 * (0.5 - 1.0 / p0)) *
             std::pow(std::log(n), -beta / p0);
    };
    double pc = plp::critical_exponent(zonal(2), a);
    note(r, "z_pc_beta" + num(beta).substr(0, 3), pc);
    gate(r, "z_recovery_beta" + num(beta).substr(0, 3), std::fabs(pc - p0) <= 1e-2);
  }
  auto ay = [](double n) {
    if (n < 2.0) return 0.0;
    return 1.0 / (std::sqrt(n) * std::log(n));
  };
  bool rejected = true;
  for (double p : {2.05, 2.5, 3.0, 4.0, 8.0, 16.0, 32.0, 64.0})
    rejected = rejected && !plp::plp_membership(highest(2), ay, p);
  gate(r, "y_rejected_above_2", rejected);
  double pc = plp::critical_exponent(highest(2), ay);
  note(r, "y_pc", pc);
  gate(r, "y_pc_at_2", pc <= 2.05);
  return r;
}

// ---- criterion 14: determinism --------------------------------------------------------------

CheckResult criterion14(Ctx& ctx) {
  CheckResult r{"14 determinism", true, {}};
  auto bundle = [&](int threads) {
    std::string out;
    auto est = randmat::mc_opnorm_moment(kGauss, 24, 2.0, 500, ctx.cfg.seed, threads);
    out += num(est.mean) + "," + num(est.stderr_) + ";";
    auto spec = filled_spec(zonal(2), 16, kGauss, 0.5, 1);
    auto lp = series::mc_lp_moment(spec, 4.0, 4.0, 200, ctx.cfg.seed, threads);
    out += num(lp.mean) + "," + num(lp.stderr_) + ";";
    auto sz = series::torus_salem_zygmund(128, 100, 2048, ctx.cfg.seed, threads);
    out += num(sz.est.mean) + ";";
    auto sg = randmat::mc_sigma_expected_abs(kRademacher, 16, 200, ctx.cfg.seed, threads);
    out += num(sg.mean);
    return out;
  };
  std::string run1 = bundle(1);
  std::string run8 = bundle(8);
  r.details.push_back("threads1=" + run1);
  r.details.push_back("threads8=" + run8);
  gate(r, "bit_identical", run1 == run8);
  return r;
}

// ---- op coverage extras ---------------------------------------------------------------------

CheckResult coverage_extras(Ctx& ctx) {
  CheckResult r{"15 op-coverage-extras", true, {}};
  ctx.cover({"jacobi_band_constant", "tilde_profiles", "kkmp_ratio",
             "contraction_check", "heavytail_divergence_demo", "sobolev_norm",
             "hypothesis_checks", "embedding_sweep"});

  double c = spectral::band_constant(2);
  note(r, "band_constant_d2", c);
  gate(r, "band_constant", c >= 1e-3);
  gate(r, "tilde_z_support", spectral::tilde_z(2, 10, 2.0 * c / 10.0) == 0.0 &&
                                 spectral::tilde_y(2, 16, 1.0) > 0.0);

  auto spec = filled_spec(osc(2), 8, kHaarO, 0.5, 2);
  double kk = series::kkmp_ratio(spec, 4.0, 300, ctx.cfg.seed + 60, ctx.cfg.threads);
  note(r, "kkmp_ratio_p4", kk);
  gate(r, "kkmp_band", kk >= 0.97 && kk <= C::kKkmpK * 2.0);

  auto con = series::contraction_check(spec, 4.0, kGauss, 300, ctx.cfg.seed + 61,
                                       ctx.cfg.threads);
  note(r, "contraction_lhs", con.lhs);
  note(r, "contraction_rhs", con.rhs);
  gate(r, "contraction",
       con.lhs <= con.rhs + 3.0 * (con.lhs_stderr + con.rhs_stderr));

  auto rows = series::heavytail_divergence_demo(2.0, {1000, 100000}, ctx.cfg.seed + 62);
  gate(r, "divergence_monotone", rows[1].running_max >= rows[0].running_max);

  Eigen::ArrayXd delta = Eigen::ArrayXd::Zero(5);
  delta[4] = 1.0;
  gate(r, "sobolev_delta",
       std::fabs(plp::sobolev_norm(osc(2), delta, 2.0) - 5.0) <= 1e-12 &&
           std::fabs(plp::sobolev_norm(highest(2), delta, 1.0) - 6.0) <= 1e-12);

  auto rep = plp::hypothesis_checks(osc(2), 4.0, 10, 2.0, 6.0);
  gate(r, "hypothesis_weak_stable",
       std::fabs(rep.weak_quasinorm_2N - rep.weak_quasinorm_N) <=
           0.10 * rep.weak_quasinorm_N);

  auto sweep = plp::embedding_sweep(highest(2), 6.0);
  note(r, "embedding_s_hat", sweep.s_hat);
  note(r, "embedding_s_expected", sweep.s_expected);
  gate(r, "embedding_transition",
       std::fabs(sweep.s_hat - sweep.s_expected) <= 0.08);
  gate(r, "embedding_lacunary",
       sweep.lacunary_in_sobolev_below && sweep.lacunary_plp_growth > 1.3);
  return r;
}

const char* kOps[] = {
    "hermite_h", "hermite_zero", "jacobi_p", "phi_fn", "muckenhoupt_main",
    "y_norm_const", "zonal_z", "jacobi_band_constant", "sphere_area",
    "integrate_zonal", "integrate_band", "integrate_radial", "lp_norm",
    "weak_lp_quasinorm", "dim_e", "osc_spectral", "osc_concentration_report",
    "sqrt_spectral_lp", "tilde_profiles", "zonal_lp_profile", "sample",
    "heavytail_sample", "matrix_abs", "op_norm", "smallest_singular",
    "mc_opnorm_moment", "mc_sigma_expected_abs", "sample_series",
    "mc_lp_moment", "kkmp_ratio", "universality_ratio", "contraction_check",
    "torus_salem_zygmund", "heavytail_divergence_demo", "plp_norm_quadrature",
    "y_closed_form", "z_closed_form", "hermite_closed_form", "sobolev_norm",
    "critical_exponent", "interpolation_defect", "holder_witness",
    "hypothesis_checks", "embedding_sweep", "r_boundedness_counterexample"};

}  // namespace

std::vector<std::string> suite_names() {
  return {"1", "2", "3", "4", "5", "6", "7", "8", "9", "10", "11", "12", "13",
          "14", "coverage"};
}

Report run(const Config& cfg) {
  Ctx ctx{cfg, {}};
  if (ctx.cfg.threads <= 0) ctx.cfg.threads = mc::hardware_threads();
  Report rep;
  auto want = [&](const char* tag) {
    return cfg.suite == "all" || cfg.suite == tag;
  };
  if (want("1")) rep.results.push_back(criterion1(ctx));
  if (want("2")) rep.results.push_back(criterion2(ctx));
  if (want("3")) rep.results.push_back(criterion3(ctx));
  if (want("4")) rep.results.push_back(criterion4(ctx));
  if (want("5")) rep.results.push_back(criterion5(ctx));
  if (want("6")) rep.results.push_back(criterion6(ctx));
  if (want("7")) rep.results.push_back(criterion7(ctx));
  if (want("8")) rep.results.push_back(criterion8(ctx));
  if (want("9")) rep.results.push_back(criterion9(ctx));
  if (want("10")) rep.results.push_back(criterion10(ctx));
  if (want("11")) rep.results.push_back(criterion11(ctx));
  if (want("12")) rep.results.push_back(criterion12(ctx));
  if (want("13")) rep.results.push_back(criterion13(ctx));
  if (want("14")) rep.results.push_back(criterion14(ctx));
  if (want("coverage")) rep.results.push_back(coverage_extras(ctx));
  for (const char* op : kOps)
    rep.coverage.emplace_back(op, ctx.covered.count(op) > 0);
  for (const auto& res : rep.results) rep.all_pass = rep.all_pass && res.pass;
  return rep;
}

}  // namespace eigenrand::verify
