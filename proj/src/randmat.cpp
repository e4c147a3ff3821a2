#include "eigenrand/randmat.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <stdexcept>
#include <vector>

namespace eigenrand::randmat {

Ensemble parse_ensemble(const std::string& name) {
  Ensemble e;
  if (name == "haar-o") {
    e.kind = EnsembleKind::HaarOrthogonal;
  } else if (name == "haar-u") {
    e.kind = EnsembleKind::HaarUnitary;
  } else if (name == "gaussian") {
    e.kind = EnsembleKind::IIDEntries;
    e.law = EntryLaw::StdGaussian;
  } else if (name == "rademacher") {
    e.kind = EnsembleKind::IIDEntries;
    e.law = EntryLaw::Rademacher;
  } else if (name == "haar-rademacher") {
    e.kind = EnsembleKind::HaarTimesIID;
    e.law = EntryLaw::Rademacher;
  } else if (name.rfind("heavytail", 0) == 0) {
    e.kind = EnsembleKind::IIDEntries;
    e.law = EntryLaw::HeavyTail;
    auto pos = name.find(':');
    e.tail_p = pos == std::string::npos ? 4.0 : std::stod(name.substr(pos + 1));
  } else {
    throw std::invalid_argument("unknown ensemble: " + name);
  }
  return e;
}

std::string ensemble_name(const Ensemble& e) {
  switch (e.kind) {
    case EnsembleKind::HaarOrthogonal: return "haar-o";
    case EnsembleKind::HaarUnitary: return "haar-u";
    case EnsembleKind::HaarTimesIID: return "haar-rademacher";
    case EnsembleKind::IIDEntries:
      switch (e.law) {
        case EntryLaw::Rademacher: return "rademacher";
        case EntryLaw::StdGaussian: return "gaussian";
        case EntryLaw::HeavyTail:
          return "heavytail:" + std::to_string(e.tail_p);
      }
  }
  return "?";
}

Eigen::MatrixXd sample_orthogonal(int d, mc::Rng& rng) {
  Eigen::MatrixXd g(d, d);
  for (int j = 0; j < d; ++j)
    for (int i = 0; i < d; ++i) g(i, j) = rng.gaussian();
  Eigen::HouseholderQR<Eigen::MatrixXd> qr(g);
  Eigen::MatrixXd q = qr.householderQ();
  Eigen::MatrixXd r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (int j = 0; j < d; ++j)
    if (r(j, j) < 0.0) q.col(j) = -q.col(j);
  return q;
}

Eigen::MatrixXcd sample_unitary(int d, mc::Rng& rng) {
  Eigen::MatrixXcd g(d, d);
  for (int j = 0; j < d; ++j)
    for (int i = 0; i < d; ++i)
      g(i, j) = std::complex<double>(rng.gaussian(), rng.gaussian());
  Eigen::HouseholderQR<Eigen::MatrixXcd> qr(g);
  Eigen::MatrixXcd q = qr.householderQ();
  Eigen::MatrixXcd r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (int j = 0; j < d; ++j) {
    std::complex<double> rjj = r(j, j);
    double a = std::abs(rjj);
    if (a > 0.0) q.col(j) *= rjj / a;
  }
  return q;
}

double heavytail_sample(double p, mc::Rng& rng) {
  if (p < 2.0) throw std::domain_error("heavytail_sample: p < 2");
  double u = rng.uniform();
  double sign = rng.rademacher();
  double thresh = std::exp(-p);  // survival at t = e
  if (u >= thresh) return 0.0;
  // solve ln(t)/t^p = u on [e, inf); survival is decreasing there
  double lo = 2.718281828459045, hi = lo;
  while (std::log(hi) / std::pow(hi, p) >= u) hi *= 2.0;
  for (int it = 0; it < 200; ++it) {
    double mid = 0.5 * (lo + hi);
    if (std::log(mid) / std::pow(mid, p) >= u)
      lo = mid;
    else
      hi = mid;
    if (hi - lo <= 1e-13 * lo) break;
  }
  return sign * 0.5 * (lo + hi);
}

double sample_entry(EntryLaw law, double tail_p, mc::Rng& rng) {
  switch (law) {
    case EntryLaw::Rademacher: return rng.rademacher();
    case EntryLaw::StdGaussian: return rng.gaussian();
    case EntryLaw::HeavyTail: return heavytail_sample(tail_p, rng);
  }
  return 0.0;
}

Eigen::MatrixXd sample_iid(int d, EntryLaw law, double tail_p, mc::Rng& rng) {
  Eigen::MatrixXd m(d, d);
  double s = 1.0 / std::sqrt(static_cast<double>(d));
  for (int j = 0; j < d; ++j)
    for (int i = 0; i < d; ++i) m(i, j) = s * sample_entry(law, tail_p, rng);
  return m;
}

Eigen::MatrixXd sample(const Ensemble& e, int d, mc::Rng& rng) {
  switch (e.kind) {
    case EnsembleKind::HaarOrthogonal:
      return sample_orthogonal(d, rng);
    case EnsembleKind::HaarUnitary:
      throw std::invalid_argument("sample: HaarUnitary is complex-valued");
    case EnsembleKind::IIDEntries:
      return sample_iid(d, e.law, e.tail_p, rng);
    case EnsembleKind::HaarTimesIID:
      return sample_orthogonal(d, rng) * sample_iid(d, e.law, e.tail_p, rng);
  }
  return {};
}

Eigen::MatrixXcd sample_complex(const Ensemble& e, int d, mc::Rng& rng) {
  if (e.kind == EnsembleKind::HaarUnitary) return sample_unitary(d, rng);
  return sample(e, d, rng).cast<std::complex<double>>();
}

Eigen::MatrixXd matrix_abs(const Eigen::MatrixXd& m) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(m.transpose() * m);
  if (es.info() != Eigen::Success)
    throw std::runtime_error("matrix_abs: eigensolver failed");
  Eigen::VectorXd s = es.eigenvalues().cwiseMax(0.0).cwiseSqrt();
  return es.eigenvectors() * s.asDiagonal() * es.eigenvectors().transpose();
}

Eigen::MatrixXcd matrix_abs(const Eigen::MatrixXcd& m) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(m.adjoint() * m);
  if (es.info() != Eigen::Success)
    throw std::runtime_error("matrix_abs: eigensolver failed");
  Eigen::VectorXd s = es.eigenvalues().cwiseMax(0.0).cwiseSqrt();
  return es.eigenvectors() * s.asDiagonal() * es.eigenvectors().adjoint();
}

namespace {

template <class Mat>
double op_norm_impl(const Mat& m) {
  Eigen::SelfAdjointEigenSolver<Mat> es(m.adjoint() * m, Eigen::EigenvaluesOnly);
  if (es.info() != Eigen::Success)
    throw std::runtime_error("op_norm: eigensolver failed");
  return std::sqrt(std::max(0.0, es.eigenvalues().maxCoeff()));
}

template <class Mat>
double smallest_singular_impl(const Mat& m) {
  Eigen::SelfAdjointEigenSolver<Mat> es(m.adjoint() * m, Eigen::EigenvaluesOnly);
  if (es.info() != Eigen::Success)
    throw std::runtime_error("smallest_singular: eigensolver failed");
  return std::sqrt(std::max(0.0, es.eigenvalues().minCoeff()));
}

}  // namespace

double op_norm(const Eigen::MatrixXd& m) { return op_norm_impl(m); }
double op_norm(const Eigen::MatrixXcd& m) { return op_norm_impl(m); }
double smallest_singular(const Eigen::MatrixXd& m) { return smallest_singular_impl(m); }
double smallest_singular(const Eigen::MatrixXcd& m) { return smallest_singular_impl(m); }

mc::MCEstimate mc_opnorm_moment(const Ensemble& e, int d, double p,
                                std::int64_t samples, std::uint64_t seed,
                                int threads) {
  if (threads <= 0) threads = mc::hardware_threads();
  if (e.kind == EnsembleKind::HaarUnitary)
    return mc::run(samples, seed, threads, [&](std::int64_t, mc::Rng& rng) {
      return std::pow(op_norm(sample_unitary(d, rng)), p);
    });
  return mc::run(samples, seed, threads, [&](std::int64_t, mc::Rng& rng) {
    return std::pow(op_norm(sample(e, d, rng)), p);
  });
}

mc::MCEstimate mc_sigma_expected_abs(const Ensemble& e, int d,
                                     std::int64_t samples, std::uint64_t seed,
                                     int threads) {
  if (threads <= 0) threads = mc::hardware_threads();
  std::int64_t n_chunks = (samples + mc::kChunkSize - 1) / mc::kChunkSize;
  std::vector<Eigen::MatrixXd> sums(static_cast<std::size_t>(n_chunks));
  std::vector<std::int64_t> counts(static_cast<std::size_t>(n_chunks), 0);
  mc::parallel_chunks(n_chunks, threads, [&](std::int64_t c) {
    mc::Rng rng(seed, static_cast<std::uint64_t>(c));
    std::int64_t lo = c * mc::kChunkSize;
    std::int64_t hi = std::min(samples, lo + mc::kChunkSize);
    Eigen::MatrixXd acc = Eigen::MatrixXd::Zero(d, d);
    for (std::int64_t i = lo; i < hi; ++i) {
      if (e.kind == EnsembleKind::HaarUnitary)
        acc += matrix_abs(sample_unitary(d, rng)).real();
      else
        acc += matrix_abs(sample(e, d, rng));
    }
    sums[static_cast<std::size_t>(c)] = acc;
    counts[static_cast<std::size_t>(c)] = hi - lo;
  });
  Eigen::MatrixXd total = Eigen::MatrixXd::Zero(d, d);
  mc::Welford chunk_sigmas;
  for (std::size_t c = 0; c < sums.size(); ++c) {
    total += sums[c];
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(
        sums[c] / static_cast<double>(counts[c]), Eigen::EigenvaluesOnly);
    chunk_sigmas.add(es.eigenvalues().minCoeff());
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(
      total / static_cast<double>(samples), Eigen::EigenvaluesOnly);
  mc::MCEstimate est;
  est.mean = es.eigenvalues().minCoeff();
  est.stderr_ = chunk_sigmas.stderr_of_mean();
  est.count = samples;
  est.seed = seed;
  return est;
}

double ks_two_sample(Eigen::ArrayXd a, Eigen::ArrayXd b) {
  std::sort(a.data(), a.data() + a.size());
  std::sort(b.data(), b.data() + b.size());
  Eigen::Index i = 0, j = 0;
  double d = 0.0;
  const double na = static_cast<double>(a.size());
  const double nb = static_cast<double>(b.size());
  while (i < a.size() && j < b.size()) {
    if (a[i] <= b[j])
      ++i;
    else
      ++j;
    d = std::max(d, std::fabs(static_cast<double>(i) / na -
                              static_cast<double>(j) / nb));
  }
  return d;
}

}  // namespace eigenrand::randmat
