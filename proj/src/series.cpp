#include "eigenrand/series.hpp"

#include <cmath>
#include <complex>
#include <stdexcept>

#include "eigenrand/specfun.hpp"

namespace eigenrand::series {

namespace {
constexpr double kPi = 3.141592653589793238462643;
using Cpx = std::complex<double>;
}  // namespace

int first_level(const spectral::Family& fam) {
  switch (fam.tag) {
    case spectral::FamilyTag::HermiteOscillator: return 0;
    case spectral::FamilyTag::SphereHighest:
    case spectral::FamilyTag::SphereZonal:
    case spectral::FamilyTag::TorusFourier: return 1;
  }
  return 0;
}

std::shared_ptr<const measure::QuadratureRule> make_series_grid(
    const spectral::Family& fam, int N) {
  switch (fam.tag) {
    case spectral::FamilyTag::HermiteOscillator: {
      if (fam.d != 2)
        throw std::invalid_argument("series: oscillator family implemented for d = 2");
      double half = std::sqrt(2.0 * N + 3.0) + 4.0;
      return measure::box_rule_2d(half, 8);
    }
    case spectral::FamilyTag::SphereHighest:
      return measure::band_rule(fam.d, std::max(96, 4 * N), std::max(64, 4 * N));
    case spectral::FamilyTag::SphereZonal:
      return measure::zonal_rule(fam.d, std::max(16, 20 * (N + 1) / 16 + 1));
    case spectral::FamilyTag::TorusFourier:
      return measure::torus_rule(std::max(64, 16 * N));
  }
  return {};
}

RandomSeriesSpec make_series_spec(const spectral::Family& fam, int N,
                                  const randmat::Ensemble& ensemble) {
  RandomSeriesSpec spec;
  spec.family = fam;
  spec.N = N;
  spec.ensemble = ensemble;
  spec.grid = make_series_grid(fam, N);
  for (int n = first_level(fam); n <= N; ++n)
    spec.coeffs.emplace_back(
        Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(spectral::level_dim(fam, n))));
  return spec;
}

double coeff_l2(const RandomSeriesSpec& spec) {
  double s = 0.0;
  for (const auto& c : spec.coeffs) s += c.squaredNorm();
  return std::sqrt(s);
}

SeriesSampler::SeriesSampler(const RandomSeriesSpec& spec)
    : spec_(&spec), n0_(first_level(spec.family)) {
  const auto& fam = spec.family;
  const auto& grid = *spec.grid;
  int levels = spec.N - n0_ + 1;
  if (static_cast<int>(spec.coeffs.size()) != levels)
    throw std::invalid_argument("SeriesSampler: coefficient/level count mismatch");
  switch (fam.tag) {
    case spectral::FamilyTag::SphereZonal: {
      zonal_basis_.resize(levels, grid.nodes.size());
      double a = 0.5 * (fam.d - 2.0);
      Eigen::ArrayXd l2(levels);
      for (int n = 1; n <= spec.N; ++n) l2[n - 1] = specfun::zonal_z_l2(fam.d, n);
      for (Eigen::Index j = 0; j < grid.nodes.size(); ++j) {
        Eigen::ArrayXd pj = specfun::jacobi_p_all(spec.N, a, std::cos(grid.nodes[j]));
        for (int n = 1; n <= spec.N; ++n)
          zonal_basis_(n - 1, j) = std::sqrt(static_cast<double>(n)) * pj[n] / l2[n - 1];
      }
      break;
    }
    case spectral::FamilyTag::SphereHighest: {
      // band rule is a tensor rho x theta grid: factor the basis
      Eigen::Index nt = 0;
      while (nt < grid.nodes.size() && grid.nodes[nt] == grid.nodes[0]) ++nt;
      Eigen::Index nr = grid.nodes.size() / nt;
      band_radial_.resize(levels, nr);
      band_phase_.resize(levels, nt);
      for (Eigen::Index i = 0; i < nr; ++i) {
        double rho = grid.nodes[i * nt];
        for (int n = 1; n <= spec.N; ++n)
          band_radial_(n - 1, i) =
              specfun::y_norm_const(fam.d, n) * std::pow(rho, n);
      }
      for (Eigen::Index j = 0; j < nt; ++j) {
        double theta = grid.nodes2[j];
        for (int n = 1; n <= spec.N; ++n)
          band_phase_(n - 1, j) = std::polar(1.0, n * theta);
      }
      break;
    }
    case spectral::FamilyTag::TorusFourier: {
      torus_phase_.resize(levels, grid.nodes.size());
      for (Eigen::Index j = 0; j < grid.nodes.size(); ++j)
        for (int n = 1; n <= spec.N; ++n)
          torus_phase_(n - 1, j) = std::polar(1.0, n * grid.nodes[j]);
      break;
    }
    case spectral::FamilyTag::HermiteOscillator: {
      hermite_axis_.resize(spec.N + 1, grid.axis.size());
      for (Eigen::Index j = 0; j < grid.axis.size(); ++j)
        hermite_axis_.col(j) = specfun::hermite_h_all(spec.N, grid.axis[j]).matrix();
      break;
    }
  }
}

std::vector<Eigen::VectorXcd> SeriesSampler::draw_coeffs(mc::Rng& rng) const {
  std::vector<Eigen::VectorXcd> w(spec_->coeffs.size());
  for (std::size_t k = 0; k < w.size(); ++k) {
    int dn = static_cast<int>(spec_->coeffs[k].size());
    Eigen::MatrixXcd m = randmat::sample_complex(spec_->ensemble, dn, rng);
    w[k] = m * spec_->coeffs[k];
  }
  return w;
}

Eigen::ArrayXd SeriesSampler::eval_abs(const std::vector<Eigen::VectorXcd>& w) const {
  const auto& fam = spec_->family;
  int levels = spec_->N - n0_ + 1;
  switch (fam.tag) {
    case spectral::FamilyTag::SphereZonal: {
      Eigen::VectorXcd wv(levels);
      for (int k = 0; k < levels; ++k) wv[k] = w[static_cast<std::size_t>(k)][0];
      Eigen::VectorXcd s = zonal_basis_.transpose() * wv;
      return s.array().abs();
    }
    case spectral::FamilyTag::SphereHighest: {
      Eigen::MatrixXcd a(band_radial_.rows(), band_radial_.cols());
      for (int k = 0; k < levels; ++k)
        a.row(k) = w[static_cast<std::size_t>(k)][0] * band_radial_.row(k);
      Eigen::MatrixXcd s = a.transpose() * band_phase_;  // nr x nt
      Eigen::ArrayXd out(s.size());
      Eigen::Index nt = band_phase_.cols();
      for (Eigen::Index i = 0; i < s.rows(); ++i)
        for (Eigen::Index j = 0; j < nt; ++j)
          out[i * nt + j] = std::abs(s(i, j));
      return out;
    }
    case spectral::FamilyTag::TorusFourier: {
      Eigen::VectorXcd wv(levels);
      for (int k = 0; k < levels; ++k) wv[k] = w[static_cast<std::size_t>(k)][0];
      Eigen::VectorXcd s = torus_phase_.transpose() * wv;
      return s.array().abs();
    }
    case spectral::FamilyTag::HermiteOscillator: {
      // Gamma(i,k) = coefficient of h_i(x) h_k(y), i + k = n
      Eigen::MatrixXcd gamma = Eigen::MatrixXcd::Zero(spec_->N + 1, spec_->N + 1);
      for (int n = 0; n <= spec_->N; ++n) {
        const auto& cn = w[static_cast<std::size_t>(n)];
        for (int i = 0; i <= n; ++i) gamma(i, n - i) = cn[i];
      }
      Eigen::MatrixXcd s =
          hermite_axis_.transpose() * gamma * hermite_axis_;  // node x node
      Eigen::ArrayXd out(s.size());
      Eigen::Index m = hermite_axis_.cols();
      for (Eigen::Index i = 0; i < m; ++i)
        for (Eigen::Index j = 0; j < m; ++j) out[i * m + j] = std::abs(s(i, j));
      return out;
    }
  }
  return {};
}

Eigen::ArrayXd SeriesSampler::eval_deterministic() const {
  return eval_abs(spec_->coeffs);
}

Eigen::ArrayXd SeriesSampler::draw_abs(mc::Rng& rng) const {
  return eval_abs(draw_coeffs(rng));
}

double SeriesSampler::draw_lp(mc::Rng& rng, double p) const {
  auto w = draw_coeffs(rng);
  if (p == 2.0) {
    double s = 0.0;
    for (const auto& c : w) s += c.squaredNorm();
    return std::sqrt(s);
  }
  return measure::lp_norm(*spec_->grid, eval_abs(w), p);
}

measure::SampledFunction sample_series(const RandomSeriesSpec& spec, mc::Rng& rng) {
  SeriesSampler sampler(spec);
  return {spec.grid, sampler.draw_abs(rng)};
}

double deterministic_plp_on_grid(const RandomSeriesSpec& spec, double p) {
  const auto& fam = spec.family;
  const auto& grid = *spec.grid;
  int n0 = first_level(fam);
  Eigen::ArrayXd g;
  switch (fam.tag) {
    case spectral::FamilyTag::SphereZonal:
    case spectral::FamilyTag::SphereHighest: {
      g = Eigen::ArrayXd::Zero(grid.nodes.size());
      for (std::size_t k = 0; k < spec.coeffs.size(); ++k) {
        int n = n0 + static_cast<int>(k);
        double c2 = spec.coeffs[k].squaredNorm();
        if (c2 == 0.0) continue;
        for (Eigen::Index i = 0; i < grid.nodes.size(); ++i)
          g[i] += c2 * spectral::spectral_value(fam, n, grid.nodes[i]);
      }
      break;
    }
    case spectral::FamilyTag::TorusFourier: {
      double s = 0.0;
      for (const auto& c : spec.coeffs) s += c.squaredNorm();
      g = Eigen::ArrayXd::Constant(grid.nodes.size(), s);
      break;
    }
    case spectral::FamilyTag::HermiteOscillator: {
      g = Eigen::ArrayXd::Zero(grid.nodes.size());
      for (Eigen::Index i = 0; i < grid.nodes.size(); ++i) {
        double r = std::hypot(grid.nodes[i], grid.nodes2[i]);
        Eigen::ArrayXd e = spectral::osc_spectral_levels(fam.d, spec.N, r);
        for (std::size_t k = 0; k < spec.coeffs.size(); ++k) {
          int n = n0 + static_cast<int>(k);
          double c2 = spec.coeffs[k].squaredNorm();
          if (c2 == 0.0) continue;
          g[i] += c2 * e[n] / static_cast<double>(spectral::dim_e(fam.d, n));
        }
      }
      break;
    }
  }
  return measure::lp_norm(grid, g.sqrt(), p);
}

mc::MCEstimate mc_lp_moment(const RandomSeriesSpec& spec, double p, double q,
                            std::int64_t samples, std::uint64_t seed, int threads) {
  if (threads <= 0) threads = mc::hardware_threads();
  SeriesSampler sampler(spec);
  auto est = mc::run(samples, seed, threads, [&](std::int64_t, mc::Rng& rng) {
    return std::pow(sampler.draw_lp(rng, p), q);
  });
  mc::MCEstimate out = est;
  out.mean = std::pow(est.mean, 1.0 / q);
  out.stderr_ = est.mean > 0.0
                    ? est.stderr_ * std::pow(est.mean, 1.0 / q - 1.0) / q
                    : 0.0;
  return out;
}

double kkmp_ratio(const RandomSeriesSpec& spec, double p, std::int64_t samples,
                  std::uint64_t seed, int threads) {
  if (threads <= 0) threads = mc::hardware_threads();
  SeriesSampler sampler(spec);
  auto ests = mc::run_multi(samples, 2, seed, threads,
                            [&](std::int64_t, mc::Rng& rng, double* row) {
                              double v = sampler.draw_lp(rng, p);
                              row[0] = std::pow(v, p);
                              row[1] = v;
                            });
  return std::pow(ests[0].mean, 1.0 / p) / ests[1].mean;
}

std::vector<UniversalityRow> universality_ratio(
    const RandomSeriesSpec& spec, double p,
    const std::vector<randmat::Ensemble>& ensembles, std::int64_t samples,
    std::uint64_t seed, int threads) {
  double det = deterministic_plp_on_grid(spec, p);
  double q = std::max(2.0, p);
  std::vector<UniversalityRow> rows;
  for (const auto& e : ensembles) {
    RandomSeriesSpec s = spec;
    s.ensemble = e;
    auto est = mc_lp_moment(s, p, q, samples, seed, threads);
    UniversalityRow row;
    row.ensemble = randmat::ensemble_name(e);
    row.estimate = est.mean;
    row.stderr_ = est.stderr_;
    row.deterministic = det;
    row.ratio = est.mean / det;
    rows.push_back(row);
  }
  return rows;
}

ContractionResult contraction_check(const RandomSeriesSpec& spec, double p,
                                    const randmat::Ensemble& ensemble,
                                    std::int64_t samples, std::uint64_t seed,
                                    int threads) {
  if (threads <= 0) threads = mc::hardware_threads();
  ContractionResult res;

  // c = min_n sigma(E|M_n|) over the distinct level dimensions
  if (ensemble.kind == randmat::EnsembleKind::HaarOrthogonal ||
      ensemble.kind == randmat::EnsembleKind::HaarUnitary) {
    res.c = 1.0;  // |M| = I exactly
  } else {
    res.c = 1e300;
    std::vector<int> dims;
    for (const auto& c : spec.coeffs) {
      int dn = static_cast<int>(c.size());
      bool seen = false;
      for (int d : dims) seen = seen || d == dn;
      if (!seen) dims.push_back(dn);
    }
    for (int dn : dims) {
      auto est = randmat::mc_sigma_expected_abs(ensemble, dn,
                                                std::max<std::int64_t>(samples, 256),
                                                seed + 101, threads);
      res.c = std::min(res.c, est.mean);
    }
  }

  RandomSeriesSpec ref = spec;
  ref.ensemble.kind = ensemble.kind == randmat::EnsembleKind::HaarUnitary
                          ? randmat::EnsembleKind::HaarUnitary
                          : randmat::EnsembleKind::HaarOrthogonal;
  RandomSeriesSpec tgt = spec;
  tgt.ensemble = ensemble;
  auto lhs = mc_lp_moment(ref, p, 1.0, samples, seed, threads);
  auto rhs = mc_lp_moment(tgt, p, 1.0, samples, seed, threads);
  res.lhs = res.c * lhs.mean;
  res.lhs_stderr = res.c * lhs.stderr_;
  res.rhs = rhs.mean;
  res.rhs_stderr = rhs.stderr_;
  return res;
}

namespace {

// radix-2 in-place FFT (inverse sign convention), length must be 2^k
void fft_pow2(std::vector<Cpx>& a) {
  const std::size_t n = a.size();
  for (std::size_t i = 1, j = 0; i < n; ++i) {
    std::size_t bit = n >> 1;
    for (; j & bit; bit >>= 1) j ^= bit;
    j ^= bit;
    if (i < j) std::swap(a[i], a[j]);
  }
  for (std::size_t len = 2; len <= n; len <<= 1) {
    double ang = 2.0 * kPi / static_cast<double>(len);
    Cpx wl(std::cos(ang), std::sin(ang));
    for (std::size_t i = 0; i < n; i += len) {
      Cpx w(1.0, 0.0);
      for (std::size_t j = 0; j < len / 2; ++j) {
        Cpx u = a[i + j], v = a[i + j + len / 2] * w;
        a[i + j] = u + v;
        a[i + j + len / 2] = u - v;
        w *= wl;
      }
    }
  }
}

}  // namespace

SalemZygmundResult torus_salem_zygmund(int N, std::int64_t samples,
                                       std::int64_t grid_size, std::uint64_t seed,
                                       int threads) {
  if (threads <= 0) threads = mc::hardware_threads();
  std::int64_t m = std::max<std::int64_t>(grid_size, 16LL * N);
  std::int64_t m2 = 1;
  while (m2 < m) m2 <<= 1;  // power of two so the FFT applies
  SalemZygmundResult result;
  result.zero_denominator = N <= 1;
  double denom = result.zero_denominator
                     ? 1.0
                     : std::sqrt(static_cast<double>(N) * std::log(static_cast<double>(N)));

  std::int64_t n_chunks = (samples + mc::kChunkSize - 1) / mc::kChunkSize;
  std::vector<mc::Welford> acc(static_cast<std::size_t>(n_chunks));
  std::vector<double> chunk_min(static_cast<std::size_t>(n_chunks), 1e300);
  mc::parallel_chunks(n_chunks, threads, [&](std::int64_t c) {
    mc::Rng rng(seed, static_cast<std::uint64_t>(c));
    std::int64_t lo = c * mc::kChunkSize;
    std::int64_t hi = std::min(samples, lo + mc::kChunkSize);
    std::vector<Cpx> buf;
    mc::Welford w;
    double mn = 1e300;
    for (std::int64_t s = lo; s < hi; ++s) {
      buf.assign(static_cast<std::size_t>(m2), Cpx(0.0, 0.0));
      for (int n = 1; n <= N; ++n)
        buf[static_cast<std::size_t>(n)] = Cpx(rng.rademacher(), 0.0);
      fft_pow2(buf);  // buf[j] = sum_n eps_n e^{2 pi i n j / m2}
      double sup = 0.0;
      for (const auto& z : buf) sup = std::max(sup, std::abs(z));
      w.add(sup / denom);
      mn = std::min(mn, sup);
    }
    acc[static_cast<std::size_t>(c)] = w;
    chunk_min[static_cast<std::size_t>(c)] = mn;
  });
  mc::Welford total;
  double mn = 1e300;
  for (std::size_t c = 0; c < acc.size(); ++c) {
    total.merge(acc[c]);
    mn = std::min(mn, chunk_min[c]);
  }
  result.est.mean = total.mean;
  result.est.stderr_ = total.stderr_of_mean();
  result.est.count = total.n;
  result.est.seed = seed;
  result.min_sup = mn;
  return result;
}

std::vector<DivergenceRow> heavytail_divergence_demo(
    double p, const std::vector<std::int64_t>& N_list, std::uint64_t seed,
    bool rademacher) {
  std::vector<DivergenceRow> rows;
  if (N_list.empty()) return rows;
  mc::Rng rng(seed, 0);
  double run_max = 0.0;
  std::int64_t n = 2;
  for (std::int64_t target : N_list) {
    for (; n <= target; ++n) {
      double x = rademacher ? rng.rademacher() : randmat::heavytail_sample(p, rng);
      double nn = static_cast<double>(n);
      double denom = std::pow(nn, 1.0 / p) * std::pow(std::log(nn), 2.0 / p);
      run_max = std::max(run_max, std::fabs(x) / denom);
    }
    rows.push_back({target, run_max});
  }
  return rows;
}

mc::MCEstimate mc_hs_identity(const std::vector<Eigen::MatrixXcd>& a,
                              std::int64_t samples, std::uint64_t seed,
                              int threads) {
  if (threads <= 0) threads = mc::hardware_threads();
  return mc::run(samples, seed, threads, [&](std::int64_t, mc::Rng& rng) {
    Cpx s(0.0, 0.0);
    for (const auto& an : a) {
      int d = static_cast<int>(an.rows());
      Eigen::MatrixXd e = randmat::sample_orthogonal(d, rng);
      s += std::sqrt(static_cast<double>(d)) *
           (e.cast<Cpx>() * an).trace();
    }
    return std::norm(s);
  });
}

}  // namespace eigenrand::series
