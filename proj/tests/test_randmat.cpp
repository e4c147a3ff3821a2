#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <complex>

#include "eigenrand/constants.hpp"
#include "eigenrand/randmat.hpp"

using namespace eigenrand;

TEST_CASE("haar orthogonal sampling") {
  mc::Rng rng(7, 0);
  for (int d : {1, 3, 8, 25}) {
    Eigen::MatrixXd q = randmat::sample_orthogonal(d, rng);
    double err = (q.transpose() * q - Eigen::MatrixXd::Identity(d, d))
                     .cwiseAbs()
                     .maxCoeff();
    CHECK(err <= 1e-12);
  }
  // d = 1: +-1 with frequency 1/2
  auto est = mc::run(100000, 11, 2, [&](std::int64_t, mc::Rng& r) {
    return randmat::sample_orthogonal(1, r)(0, 0) > 0 ? 1.0 : 0.0;
  });
  CHECK(std::fabs(est.mean - 0.5) <= 3.0 * est.stderr_);

  mc::Rng rng2(7, 1);
  for (int d : {1, 4, 16}) {
    Eigen::MatrixXcd u = randmat::sample_unitary(d, rng2);
    double err = (u.adjoint() * u - Eigen::MatrixXcd::Identity(d, d))
                     .cwiseAbs()
                     .maxCoeff();
    CHECK(err <= 1e-12);
  }
}

TEST_CASE("haar trace moments") {
  for (int d : {2, 5, 20}) {
    Eigen::MatrixXcd a(d, d);
    mc::Rng fill(99, d);
    for (int j = 0; j < d; ++j)
      for (int i = 0; i < d; ++i)
        a(i, j) = std::complex<double>(fill.gaussian(), fill.gaussian());
    auto ests = mc::run_multi(
        40000, 3, 2024, 2, [&](std::int64_t, mc::Rng& r, double* row) {
          Eigen::MatrixXd p = randmat::sample_orthogonal(d, r);
          std::complex<double> t = (p * a).trace();
          row[0] = t.real();
          row[1] = t.imag();
          row[2] = std::norm(t);
        });
    CHECK(std::fabs(ests[0].mean) <= 3.0 * ests[0].stderr_);
    CHECK(std::fabs(ests[1].mean) <= 3.0 * ests[1].stderr_);
    double want = (a.conjugate().transpose() * a).trace().real() / d;
    CHECK(std::fabs(ests[2].mean - want) <= 3.0 * ests[2].stderr_);
  }
}

TEST_CASE("heavytail law") {
  const double p = 4.0;
  const double e = 2.718281828459045;
  auto ind_e = mc::run(200000, 5, 2, [&](std::int64_t, mc::Rng& r) {
    return std::fabs(randmat::heavytail_sample(p, r)) >= e ? 1.0 : 0.0;
  });
  CHECK(std::fabs(ind_e.mean - std::exp(-p)) <= 3.0 * ind_e.stderr_);

  for (double t : {5.0, 10.0}) {
    auto ind = mc::run(400000, 6, 2, [&](std::int64_t, mc::Rng& r) {
      return std::fabs(randmat::heavytail_sample(p, r)) >= t ? 1.0 : 0.0;
    });
    double norm = std::pow(t, p) / std::log(t);
    CHECK(std::fabs(ind.mean * norm - 1.0) <= 3.0 * ind.stderr_ * norm);
  }

  // q-th moment settles for q < p, p-th moment keeps growing with samples
  auto m2_small = mc::run(30000, 8, 2, [&](std::int64_t, mc::Rng& r) {
    return std::pow(std::fabs(randmat::heavytail_sample(p, r)), 2.0);
  });
  auto m2_large = mc::run(300000, 8, 2, [&](std::int64_t, mc::Rng& r) {
    return std::pow(std::fabs(randmat::heavytail_sample(p, r)), 2.0);
  });
  CHECK(std::fabs(m2_large.mean - m2_small.mean) <=
        5.0 * (m2_small.stderr_ + m2_large.stderr_));
  double m4_small = 0.0, m4_large = 0.0;
  {
    mc::Rng r(12, 0);
    double s = 0.0;
    for (int i = 0; i < 20000; ++i)
      s += std::pow(std::fabs(randmat::heavytail_sample(p, r)), p);
    m4_small = s / 20000;
    for (int i = 20000; i < 2000000; ++i)
      s += std::pow(std::fabs(randmat::heavytail_sample(p, r)), p);
    m4_large = s / 2000000;
  }
  CHECK(m4_large > 1.5 * m4_small);  // log-divergent fourth moment
}

TEST_CASE("matrix functionals") {
  Eigen::MatrixXd diag = Eigen::Vector3d(0.5, -2.0, 1.25).asDiagonal();
  CHECK(randmat::op_norm(diag) == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(randmat::smallest_singular(diag) == doctest::Approx(0.5).epsilon(1e-12));
  Eigen::MatrixXd ad = randmat::matrix_abs(diag);
  CHECK(ad(0, 0) == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(ad(1, 1) == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(ad(2, 2) == doctest::Approx(1.25).epsilon(1e-12));
  CHECK((ad - ad.transpose()).cwiseAbs().maxCoeff() <= 1e-13);

  mc::Rng rng(3, 3);
  Eigen::MatrixXd q = randmat::sample_orthogonal(9, rng);
  CHECK((randmat::matrix_abs(q) - Eigen::MatrixXd::Identity(9, 9)).cwiseAbs().maxCoeff() <= 1e-10);
  CHECK(randmat::op_norm(q) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(randmat::smallest_singular(q) == doctest::Approx(1.0).epsilon(1e-12));

  for (int trial = 0; trial < 12; ++trial) {
    Eigen::MatrixXd m(6, 6);
    for (int j = 0; j < 6; ++j)
      for (int i = 0; i < 6; ++i) m(i, j) = rng.gaussian();
    double op = randmat::op_norm(m);
    double sig = randmat::smallest_singular(m);
    double hs = m.norm();
    CHECK(sig <= op * (1 + 1e-12));
    CHECK(op <= hs * (1 + 1e-12));
    CHECK(hs <= std::sqrt(6.0) * op * (1 + 1e-12));
  }
}

TEST_CASE("op-norm moments") {
  randmat::Ensemble haar{randmat::EnsembleKind::HaarOrthogonal, randmat::EntryLaw::Rademacher, 4.0};
  auto h = randmat::mc_opnorm_moment(haar, 6, 1.0, 200, 17, 2);
  CHECK(h.mean == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(h.stderr_ <= 1e-12);

  randmat::Ensemble rad{randmat::EnsembleKind::IIDEntries, randmat::EntryLaw::Rademacher, 4.0};
  double lo = 1e300, hi = 0.0;
  for (int d : {20, 50, 100}) {
    auto est = randmat::mc_opnorm_moment(rad, d, 1.0, 300, 17, 2);
    lo = std::min(lo, est.mean);
    hi = std::max(hi, est.mean);
  }
  CHECK((hi - lo) / hi <= constants::kOpnormSpread);

  randmat::Ensemble gauss{randmat::EnsembleKind::IIDEntries, randmat::EntryLaw::StdGaussian, 4.0};
  auto m8 = randmat::mc_opnorm_moment(gauss, 30, 8.0, 300, 17, 2);
  CHECK(m8.mean <= constants::kLatalaC8 * 105.0);  // E[g^8] = 105
}

TEST_CASE("sigma of expected |M|") {
  randmat::Ensemble haar{randmat::EnsembleKind::HaarOrthogonal, randmat::EntryLaw::Rademacher, 4.0};
  auto h = randmat::mc_sigma_expected_abs(haar, 7, 128, 4, 2);
  CHECK(h.mean == doctest::Approx(1.0).epsilon(1e-10));

  randmat::Ensemble rad1{randmat::EnsembleKind::IIDEntries, randmat::EntryLaw::Rademacher, 4.0};
  auto one = randmat::mc_sigma_expected_abs(rad1, 1, 64, 4, 2);
  CHECK(one.mean == doctest::Approx(1.0).epsilon(1e-12));

  // Eq (13): sigma(E|M_d|) >= E[X^2]/(C E[X^4]^{1/4}) with the frozen C
  for (int d : {20, 60}) {
    auto est = randmat::mc_sigma_expected_abs(rad1, d, 400, 4, 2);
    CHECK(est.mean >= 1.0 / constants::kSigmaLowerC);
  }
}

TEST_CASE("orthogonal invariance of tr(PMA) (KS at 1%)") {
  const int d = 6;
  const std::int64_t n = 10000;
  mc::Rng fix(55, 0);
  Eigen::MatrixXd pfix = randmat::sample_orthogonal(d, fix);
  Eigen::MatrixXd a(d, d);
  for (int j = 0; j < d; ++j)
    for (int i = 0; i < d; ++i) a(i, j) = fix.gaussian();
  Eigen::ArrayXd s1(n), s2(n);
  mc::Rng r1(56, 0), r2(56, 1);
  for (std::int64_t i = 0; i < n; ++i) {
    s1[i] = (pfix * randmat::sample_orthogonal(d, r1) * a).trace();
    s2[i] = (randmat::sample_orthogonal(d, r2) * a).trace();
  }
  double ks = randmat::ks_two_sample(s1, s2);
  double crit = constants::kKsLevel1pc * std::sqrt(2.0 / static_cast<double>(n));
  CHECK(ks <= crit);
}

TEST_CASE("matrix Kahane-Khintchine moments (Rademacher entries)") {
  randmat::Ensemble rad{randmat::EnsembleKind::IIDEntries, randmat::EntryLaw::Rademacher, 4.0};
  for (int d : {20, 60}) {
    auto ests = mc::run_multi(400, 4, 31, 2, [&](std::int64_t, mc::Rng& r, double* row) {
      double v = randmat::op_norm(randmat::sample(rad, d, r));
      row[0] = v;
      row[1] = v * v;
      row[2] = std::pow(v, 4.0);
      row[3] = std::pow(v, 8.0);
    });
    double m1 = ests[0].mean;
    double q[3] = {2.0, 4.0, 8.0};
    double m[3] = {ests[1].mean, ests[2].mean, ests[3].mean};
    for (int k = 0; k < 3; ++k) {
      double ratio = std::pow(m[k], 1.0 / q[k]) / m1;
      CHECK(ratio >= 1.0 - 0.02);
      CHECK(ratio <= constants::kKkmpK * std::sqrt(q[k]));
    }
  }
}

TEST_CASE("three-term operator-norm bound on sparse weights") {
  for (int trial = 0; trial < 4; ++trial) {
    const int d = 40;
    mc::Rng setup(70 + trial, 0);
    Eigen::MatrixXd a = Eigen::MatrixXd::Zero(d, d);
    for (int j = 0; j < d; ++j)
      for (int i = 0; i < d; ++i)
        if (setup.uniform() < 0.07) a(i, j) = setup.gaussian() * (1.0 + 3.0 * setup.uniform());
    double t1 = std::pow(a.array().pow(4.0).sum(), 0.25);
    double t2 = a.array().square().rowwise().sum().sqrt().maxCoeff();
    double t3 = a.array().square().colwise().sum().sqrt().maxCoeff();
    auto est = mc::run(400, 71 + trial, 2, [&](std::int64_t, mc::Rng& r) {
      Eigen::MatrixXd g(d, d);
      for (int j = 0; j < d; ++j)
        for (int i = 0; i < d; ++i) g(i, j) = a(i, j) * r.gaussian();
      return randmat::op_norm(g);
    });
    CHECK(est.mean <= constants::kLatalaC * (t1 + t2 + t3));
  }
}

TEST_CASE("mc reproducibility across thread counts") {
  randmat::Ensemble gauss{randmat::EnsembleKind::IIDEntries, randmat::EntryLaw::StdGaussian, 4.0};
  auto a = randmat::mc_opnorm_moment(gauss, 12, 1.0, 500, 123, 1);
  auto b = randmat::mc_opnorm_moment(gauss, 12, 1.0, 500, 123, 8);
  CHECK(a.mean == b.mean);
  CHECK(a.stderr_ == b.stderr_);
}
