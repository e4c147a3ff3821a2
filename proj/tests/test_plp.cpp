#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "eigenrand/constants.hpp"
#include "eigenrand/measure.hpp"
#include "eigenrand/plp.hpp"
#include "eigenrand/rng.hpp"
#include "eigenrand/specfun.hpp"
#include "eigenrand/spectral.hpp"

using namespace eigenrand;

namespace {

constexpr double kPi = 3.141592653589793238462643;

spectral::Family osc2{spectral::FamilyTag::HermiteOscillator, 2};
spectral::Family osc3{spectral::FamilyTag::HermiteOscillator, 3};
spectral::Family y2{spectral::FamilyTag::SphereHighest, 2};
spectral::Family z2{spectral::FamilyTag::SphereZonal, 2};
spectral::Family torus{spectral::FamilyTag::TorusFourier, 1};

Eigen::ArrayXd power_norms(int count, double sigma, std::uint64_t salt) {
  Eigen::ArrayXd out(count);
  mc::Rng rng(1234, salt);
  for (int k = 0; k < count; ++k)
    out[k] = std::pow(k + 1.0, -sigma) * (0.5 + rng.uniform());
  return out;
}

// uniform rule on [0,1], for profile tests
std::shared_ptr<measure::QuadratureRule> unit_rule(int m) {
  auto rule = std::make_shared<measure::QuadratureRule>();
  rule->domain = measure::Domain::Torus;
  rule->dim_ambient = 1;
  rule->resolution = m;
  rule->nodes = Eigen::ArrayXd::LinSpaced(m, 0.5 / m, 1.0 - 0.5 / m);
  rule->weights = Eigen::ArrayXd::Constant(m, 1.0 / m);
  return rule;
}

}  // namespace

TEST_CASE("hurwitz zeta") {
  CHECK(plp::hurwitz_zeta(2.0, 1.0) == doctest::Approx(kPi * kPi / 6.0).epsilon(1e-12));
  CHECK(plp::hurwitz_zeta(3.0, 1.0) == doctest::Approx(1.2020569031595943).epsilon(1e-12));
  CHECK(plp::hurwitz_zeta(1.5, 1.0) == doctest::Approx(2.612375348685488).epsilon(1e-12));
  // shift identity zeta(s, a) = zeta(s, a+1) + a^{-s}
  for (double s : {1.3, 2.0, 4.5}) {
    for (double a : {1.0, 2.5, 17.0}) {
      CHECK(plp::hurwitz_zeta(s, a) ==
            doctest::Approx(plp::hurwitz_zeta(s, a + 1.0) + std::pow(a, -s)).epsilon(1e-12));
    }
  }
}

TEST_CASE("plp_norm_quadrature basics") {
  // p = 2 is the coefficient norm, any family
  for (const auto& fam : {osc2, osc3, y2, z2}) {
    Eigen::ArrayXd norms = power_norms(12, 0.7, 1);
    if (fam.tag == spectral::FamilyTag::SphereZonal) {
      // zonal input is a_n of Z_n; at p = 2 the quadrature returns the true
      // L^2 size sqrt(sum |a_n|^2 ||Z_n||^2)
      auto res = plp::plp_norm_quadrature(fam, norms, 2.0);
      double want = 0.0;
      for (int k = 0; k < norms.size(); ++k) {
        double l2 = specfun::zonal_z_l2(fam.d, k + 1);
        want += norms[k] * norms[k] * l2 * l2;
      }
      CHECK(res.value == doctest::Approx(std::sqrt(want)).epsilon(1e-7));
    } else {
      auto res = plp::plp_norm_quadrature(fam, norms, 2.0);
      CHECK(res.value == doctest::Approx(std::sqrt(norms.square().sum())).epsilon(1e-7));
    }
  }
  // torus
  Eigen::ArrayXd a = power_norms(9, 0.4, 2);
  CHECK(plp::plp_norm_quadrature(torus, a, 5.0).value ==
        doctest::Approx(std::sqrt(a.square().sum())).epsilon(1e-12));

  // single level: ||u_n|| ||sqrt(e)||_p / sqrt(d_n)
  for (const auto& fam : {osc2, y2}) {
    for (int n : {1, 6}) {
      Eigen::ArrayXd norms = Eigen::ArrayXd::Zero(n + 2);
      int idx = fam.tag == spectral::FamilyTag::HermiteOscillator ? n : n - 1;
      norms[idx] = 1.7;
      auto res = plp::plp_norm_quadrature(fam, norms, 4.0);
      double want = 1.7 * spectral::sqrt_spectral_lp(fam, n, 4.0).value /
                    std::sqrt(static_cast<double>(spectral::level_dim(fam, n)));
      CHECK(res.value == doctest::Approx(want).epsilon(1e-5));
    }
  }

  // homogeneity is exact
  Eigen::ArrayXd norms = power_norms(10, 0.6, 3);
  double v1 = plp::plp_norm_quadrature(osc2, norms, 4.0).value;
  double v2 = plp::plp_norm_quadrature(osc2, Eigen::ArrayXd(3.0 * norms), 4.0).value;
  CHECK(v2 == doctest::Approx(3.0 * v1).epsilon(1e-9));
}

TEST_CASE("y closed form") {
  Eigen::ArrayXd delta1 = Eigen::ArrayXd::Zero(1);
  delta1[0] = 1.0;
  CHECK(plp::y_closed_form(delta1, 2.0, 2) ==
        doctest::Approx(std::sqrt(2.612375348685488)).epsilon(1e-10));
  CHECK(plp::y_closed_form(Eigen::ArrayXd::Zero(5), 4.0, 2) == 0.0);

  // equivalence band against quadrature through the ~Y route
  for (double p : {4.0, 6.0}) {
    for (std::uint64_t salt : {10, 11, 12, 13}) {
      Eigen::ArrayXd a = power_norms(24, 0.3 + 0.1 * static_cast<double>(salt - 10), salt);
      double cf = plp::y_closed_form(a, p, 2);
      double quad = plp::plp_norm_quadrature(y2, a, p).value;
      double ratio = cf / quad;
      CHECK(ratio > constants::kYRatioLo);
      CHECK(ratio < constants::kYRatioHi);
    }
  }
}

TEST_CASE("z closed form") {
  Eigen::ArrayXd delta1 = Eigen::ArrayXd::Zero(1);
  delta1[0] = 1.0;
  CHECK(plp::z_closed_form(delta1, 5.0, 2) ==
        doctest::Approx(std::pow(1.2020569031595943, 0.2)).epsilon(1e-10));
  CHECK_THROWS_AS(plp::z_closed_form(delta1, 3.9, 2), std::domain_error);

  for (double p : {5.0, 8.0}) {
    for (std::uint64_t salt : {20, 21, 22, 23}) {
      Eigen::ArrayXd a = power_norms(40, 0.5 + 0.12 * static_cast<double>(salt - 20), salt);
      double cf = plp::z_closed_form(a, p, 2);
      double quad = plp::plp_norm_quadrature(z2, a, p).value;
      double ratio = cf / quad;
      CHECK(ratio > constants::kZRatioLo);
      CHECK(ratio < constants::kZRatioHi);
    }
  }
}

TEST_CASE("hermite closed form") {
  // single level: one term in the outer sum per n <= n0
  Eigen::ArrayXd norms = Eigen::ArrayXd::Zero(6);
  norms[5] = 2.0;
  double want = 0.0;
  for (int n = 1; n <= 5; ++n)
    want += std::pow(static_cast<double>(n), 0.5 * 2.0 - 1.0) *
            std::pow(4.0 * std::pow(5.0, -1.0), 0.5 * 4.0);
  CHECK(plp::hermite_closed_form(norms, 4.0, 2) ==
        doctest::Approx(std::pow(want, 0.25)).epsilon(1e-12));

  // monotone inclusion: value(p2) <= C value(p1) for p1 < p2
  for (std::uint64_t salt : {30, 31, 32}) {
    Eigen::ArrayXd v = power_norms(40, 0.8, salt);
    double v2 = plp::hermite_closed_form(v, 2.0, 2);
    double v4 = plp::hermite_closed_form(v, 4.0, 2);
    double v6 = plp::hermite_closed_form(v, 6.0, 2);
    CHECK(v4 <= constants::kHermiteMonotoneC * v2);
    CHECK(v6 <= constants::kHermiteMonotoneC * v4);
  }

  // equivalence with the quadrature norm
  for (int d : {2, 3}) {
    spectral::Family fam{spectral::FamilyTag::HermiteOscillator, d};
    for (double p : {2.0, 4.0, 6.0}) {
      for (std::uint64_t salt : {40, 41}) {
        Eigen::ArrayXd v = power_norms(30, 0.6, salt);
        double cf = plp::hermite_closed_form(v, p, d);
        double quad = plp::plp_norm_quadrature(fam, v, p).value;
        double ratio = cf / quad;
        CHECK(ratio > constants::kHermiteRatioLo);
        CHECK(ratio < constants::kHermiteRatioHi);
      }
    }
  }
}

TEST_CASE("sobolev norms") {
  Eigen::ArrayXd delta = Eigen::ArrayXd::Zero(8);
  delta[7] = 1.0;
  // oscillator weight (1+n)^s at level n = 7
  CHECK(plp::sobolev_norm(osc2, delta, 1.5) ==
        doctest::Approx(std::pow(8.0, 0.75)).epsilon(1e-13));
  // sphere weight (1+n)^{2s} at level n = 8
  CHECK(plp::sobolev_norm(y2, delta, 1.5) ==
        doctest::Approx(std::pow(9.0, 1.5)).epsilon(1e-13));
  CHECK(plp::sobolev_norm(osc2, delta, 0.0) == doctest::Approx(1.0));
}

TEST_CASE("critical exponent") {
  // Z-family log instances flip membership at beta = 1 and recover p0
  const int d = 2;
  const double p0 = 5.0;
  for (double beta : {0.5, 1.5}) {
    auto a = [=](double n) {
      if (n < 2.0) return 0.0;
      return std::pow(n, -d * (0.5 - 1.0 / p0)) * std::pow(std::log(n), -beta / p0);
    };
    CHECK(plp::plp_membership(z2, a, p0) == (beta > 1.0));
    double pc = plp::critical_exponent(z2, a);
    CHECK(std::fabs(pc - p0) <= 1e-2);
  }

  // rapidly decaying: member of everything
  CHECK(plp::critical_exponent(z2, [](double n) {
          return std::pow(2.0, -n);
        }) == std::numeric_limits<double>::infinity());

  // 1/(sqrt(n) ln n) on the Y family: rejected for every p > 2
  auto ay = [](double n) {
    if (n < 2.0) return 0.0;
    return 1.0 / (std::sqrt(n) * std::log(n));
  };
  for (double p : {2.05, 2.5, 4.0, 16.0}) CHECK(!plp::plp_membership(y2, ay, p));
  CHECK(plp::critical_exponent(y2, ay) <= 2.05);
}

TEST_CASE("interpolation defect") {
  // indicators have defect exactly 1
  auto rule = unit_rule(400);
  Eigen::ArrayXd ind = (rule->nodes < 0.35).cast<double>();
  measure::SampledFunction f{rule, 2.5 * ind};
  CHECK(plp::interpolation_defect(f, 1.5, 6.0) == doctest::Approx(1.0).epsilon(1e-6));

  // gaussian on R against the (pi/p)^{1/2p} closed form
  auto rr = measure::radial_rule(1, 14.0, 160);
  measure::SampledFunction g{rr, (-rr->nodes.square()).exp()};
  double q = plp::interpolation_defect(g, 2.0, 4.0);
  double best = 1.0;
  for (int i = 0; i <= 4096; ++i) {
    double p = 2.0 + 2.0 * i / 4096.0;
    double t1 = (1.0 / p - 0.25) / 0.25;
    double np = std::pow(kPi / p, 0.5 / p);
    double n2 = std::pow(kPi / 2.0, 0.25), n4 = std::pow(kPi / 4.0, 0.125);
    best = std::max(best, std::pow(n2, t1) * std::pow(n4, 1.0 - t1) / np);
  }
  CHECK(q == doctest::Approx(best).epsilon(1e-4));

  // always >= 1
  mc::Rng rng(9, 9);
  for (int t = 0; t < 6; ++t) {
    Eigen::ArrayXd v(rule->nodes.size());
    for (Eigen::Index i = 0; i < v.size(); ++i) v[i] = 0.05 + rng.uniform();
    measure::SampledFunction h{rule, v};
    CHECK(plp::interpolation_defect(h, 1.2, 7.0) >= 1.0 - 1e-9);
  }
}

TEST_CASE("holder witness") {
  auto rule = unit_rule(512);
  CHECK_THROWS_AS(
      plp::holder_witness({rule, Eigen::ArrayXd::Ones(512)}, 1.2, 1.5),
      std::domain_error);

  // phi = 1_{[0,t]}: psi = (1/t) 1_{[0,t]}, all products exactly 1
  {
    Eigen::ArrayXd ind = (rule->nodes < 0.25).cast<double>();
    auto w = plp::holder_witness({rule, ind}, 2.0, 5.0);
    CHECK(w.pairing == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(w.prod1 == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(w.prod2 == doctest::Approx(1.0).epsilon(1e-12));
    for (Eigen::Index i = 0; i < 512; ++i)
      if (ind[i] > 0.0) CHECK(w.psi.values[i] == doctest::Approx(4.0).epsilon(1e-12));
  }

  // ten random positive profiles: pairing, the two Holder products and
  // the two density dominations
  mc::Rng rng(77, 1);
  for (int t = 0; t < 10; ++t) {
    Eigen::ArrayXd v(rule->nodes.size());
    for (Eigen::Index i = 0; i < v.size(); ++i) {
      double x = rule->nodes[i];
      v[i] = 0.02 + rng.uniform() +
             2.0 * std::exp(-40.0 * (x - rng.uniform()) * (x - rng.uniform()));
    }
    double p1 = 1.6 + 0.4 * rng.uniform();
    double p2 = 3.0 + 3.0 * rng.uniform();
    auto w = plp::holder_witness({rule, v}, p1, p2);
    double qr = std::pow(w.q_defect, w.r);
    CHECK(std::fabs(w.pairing - 1.0) <= 1e-8);
    CHECK(w.prod1 <= qr + 1e-6);
    CHECK(w.prod2 <= qr + 1e-6);
    CHECK(w.dom_slack1 <= 1e-6);
    CHECK(w.dom_slack2 <= 1e-6);
  }
}

TEST_CASE("hypothesis checks") {
  // oscillator: weak quasinorm stable, pairing bounded, sup-profile envelope
  {
    auto rep = plp::hypothesis_checks(osc2, 4.0, 12, 2.0, 6.0);
    CHECK(std::fabs(rep.weak_quasinorm_2N - rep.weak_quasinorm_N) <=
          0.10 * rep.weak_quasinorm_N);
    CHECK(rep.pairing_sup < 3.0);
    CHECK(rep.defect_sup < 20.0);

    auto rule = measure::radial_rule(2, std::sqrt(2.0 * 12 + 1.0) + 8.0, 64);
    double cap = 0.0;
    for (Eigen::Index i = 0; i < rule->nodes.size(); ++i) {
      double r = rule->nodes[i];
      double g = 0.0;
      for (int n = 0; n <= 12; ++n)
        g = std::max(g, std::sqrt(spectral::osc_spectral(2, n, r)) /
                            spectral::sqrt_spectral_lp(osc2, n, 4.0).value);
      double env = std::pow(std::max(r, 1e-3), -2.0 / 4.0) +
                   std::exp(-0.5 * constants::kOscTailGamma * r * r);
      cap = std::max(cap, g / env);
    }
    CHECK(cap < 20.0);
  }
  // highest weight at p = 4: weak norm stable, strong norm grows (the
  // divergence of the sup profile is logarithmic in N, so compare N and 8N on
  // the p-th power scale)
  {
    auto rep8 = plp::hypothesis_checks(y2, 4.0, 8, 3.0, 6.0);
    auto rep64 = plp::hypothesis_checks(y2, 4.0, 64, 3.0, 6.0);
    CHECK(std::fabs(rep8.weak_quasinorm_2N - rep8.weak_quasinorm_N) <=
          0.20 * rep8.weak_quasinorm_N);
    CHECK(std::pow(rep64.lp_norm_N / rep8.lp_norm_N, 4.0) > 1.25);
  }
  // zonal pairing product: bounded below the critical exponent, growing
  // above it
  {
    auto lo8 = plp::hypothesis_checks(z2, 3.5, 8, 3.0, 3.9);
    auto lo32 = plp::hypothesis_checks(z2, 3.5, 32, 3.0, 3.9);
    CHECK(lo32.pairing_sup <= 1.6 * lo8.pairing_sup);
    auto hi8 = plp::hypothesis_checks(z2, 8.0, 8, 6.0, 10.0);
    auto hi64 = plp::hypothesis_checks(z2, 8.0, 64, 6.0, 10.0);
    CHECK(hi64.pairing_sup > 1.4 * hi8.pairing_sup);
  }
}

TEST_CASE("embedding sweeps") {
  for (const auto& [fam, p] : {std::pair{y2, 6.0}, std::pair{z2, 6.0},
                               std::pair{osc2, 4.0}}) {
    auto sweep = plp::embedding_sweep(fam, p);
    CHECK(std::fabs(sweep.s_hat - sweep.s_expected) <= 0.08);
    int mismatches = 0;
    for (const auto& cell : sweep.cells)
      if (cell.embeds != cell.expected &&
          std::fabs(cell.s - sweep.s_expected) > 0.06)
        ++mismatches;
    CHECK(mismatches == 0);
  }
  // lacunary witnesses at the critical exponent: inside every H^{s-eps},
  // outside PL^p (partial sums keep growing)
  for (const auto& [fam, p] : {std::pair{y2, 6.0}, std::pair{z2, 6.0}}) {
    auto sweep = plp::embedding_sweep(fam, p);
    CHECK(sweep.lacunary_in_sobolev_below);
    CHECK(sweep.lacunary_plp_growth > 1.3);
  }
  // oscillator: the triangle-inequality route keeps the embedding constant
  // bounded
  auto sweep = plp::embedding_sweep(osc2, 4.0);
  CHECK(sweep.lacunary_plp_growth < 10.0);
}

TEST_CASE("duality pairing bound") {
  mc::Rng rng(5, 5);
  for (const auto& fam : {osc2, y2}) {
    for (int t = 0; t < 4; ++t) {
      Eigen::ArrayXd u = power_norms(10, 0.3 + 0.2 * t, 60 + t);
      Eigen::ArrayXd w = power_norms(10, 0.9 - 0.1 * t, 70 + t);
      double p = 2.5 + t;
      double q = p / (p - 1.0);
      double lhs = 0.0;
      for (int k = 0; k < u.size(); ++k) {
        int n = (fam.tag == spectral::FamilyTag::HermiteOscillator) ? k : k + 1;
        // quadrature pairing of the level densities (each integrates to 1)
        lhs += u[k] * w[k] * spectral::density_integral(fam, n).value;
      }
      double rhs = plp::plp_norm_quadrature(fam, u, p).value *
                   plp::plp_norm_quadrature(fam, w, q).value;
      CHECK(lhs <= rhs * (1.0 + 1e-8));
    }
  }
}

TEST_CASE("defect-corrected interpolation lower bound") {
  auto rule = unit_rule(400);
  mc::Rng rng(6, 6);
  for (int t = 0; t < 5; ++t) {
    Eigen::ArrayXd v(rule->nodes.size());
    for (Eigen::Index i = 0; i < v.size(); ++i) v[i] = 0.05 + rng.uniform();
    measure::SampledFunction f{rule, v};
    double p1 = 1.5, p2 = 6.0;
    double q = plp::interpolation_defect(f, p1, p2);
    double n1 = measure::lp_norm(f, p1), n2 = measure::lp_norm(f, p2);
    for (int i = 1; i < 8; ++i) {
      double p = p1 + (p2 - p1) * i / 8.0;
      double t1 = (1.0 / p - 1.0 / p2) / (1.0 / p1 - 1.0 / p2);
      double lower = std::pow(n1, t1) * std::pow(n2, 1.0 - t1) / q;
      CHECK(lower <= measure::lp_norm(f, p) * (1.0 + 1e-9));
    }
  }
}

TEST_CASE("section 12 counterexample") {
  auto r = plp::r_boundedness_counterexample(4.0, 4);
  CHECK(r.shifted == doctest::Approx(16.0).epsilon(1e-12));
  CHECK(r.unshifted == doctest::Approx(4.0).epsilon(1e-12));
  for (int N : {1, 2, 7, 64}) {
    auto c = plp::r_boundedness_counterexample(2.0, N);
    CHECK(c.shifted == doctest::Approx(static_cast<double>(N)).epsilon(1e-12));
    CHECK(c.unshifted == doctest::Approx(static_cast<double>(N)).epsilon(1e-12));
  }
  auto one = plp::r_boundedness_counterexample(6.0, 1);
  CHECK(one.shifted == doctest::Approx(1.0));
  CHECK(one.unshifted == doctest::Approx(1.0));
  for (double p : {3.0, 4.0, 6.0}) {
    for (int N : {1, 3, 16, 64}) {
      auto v = plp::r_boundedness_counterexample(p, N);
      CHECK(std::fabs(v.shifted - std::pow(N, 0.5 * p)) <= 1e-12 * v.shifted);
      CHECK(std::fabs(v.unshifted - N) <= 1e-12 * v.unshifted);
    }
  }
}
