#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "eigenrand/mc.hpp"
#include "eigenrand/measure.hpp"
#include "eigenrand/randmat.hpp"
#include "eigenrand/spectral.hpp"

namespace eigenrand::series {

// Randomized series over one of the concrete families. Coefficients are
// per-level vectors in an orthonormal basis of the level (length d_n);
// sphere and torus levels are one-dimensional, level n of the planar
// oscillator has dimension n+1. Sphere levels start at n = 1, oscillator
// and torus levels at n = first_level().
struct RandomSeriesSpec {
  spectral::Family family;
  int N = 10;  // truncation: levels first..N inclusive
  std::vector<Eigen::VectorXcd> coeffs;
  randmat::Ensemble ensemble;
  std::shared_ptr<const measure::QuadratureRule> grid;
};

int first_level(const spectral::Family& fam);

std::shared_ptr<const measure::QuadratureRule> make_series_grid(
    const spectral::Family& fam, int N);

// Spec with every level dimension sized, coefficients zero-initialized.
RandomSeriesSpec make_series_spec(const spectral::Family& fam, int N,
                                  const randmat::Ensemble& ensemble);

// deterministic coefficient l2 norm: sqrt(sum_n ||c_n||^2)
double coeff_l2(const RandomSeriesSpec& spec);

// PL^p norm of the deterministic input evaluated on the series grid:
// || sqrt( sum_n ||c_n||^2 e(n,.)/d_n ) ||_{L^p(grid)}.
double deterministic_plp_on_grid(const RandomSeriesSpec& spec, double p);

// Precomputed basis tables for repeated sampling.
class SeriesSampler {
 public:
  explicit SeriesSampler(const RandomSeriesSpec& spec);

  // one draw of (M_n): |S_N| at the grid nodes
  Eigen::ArrayXd draw_abs(mc::Rng& rng) const;

  // ||S_N||_{L^p} of one draw; p = 2 goes through the coefficient norm
  // (levels are orthonormal, so Parseval is exact there)
  double draw_lp(mc::Rng& rng, double p) const;

  // rotated per-level coefficients of one draw
  std::vector<Eigen::VectorXcd> draw_coeffs(mc::Rng& rng) const;

  // |S_N| without randomization (all M_n = I)
  Eigen::ArrayXd eval_deterministic() const;

  const RandomSeriesSpec& spec() const { return *spec_; }

 private:
  Eigen::ArrayXd eval_abs(const std::vector<Eigen::VectorXcd>& w) const;

  const RandomSeriesSpec* spec_;
  int n0_;
  Eigen::MatrixXd zonal_basis_;     // level x node, orthonormal in L^2
  Eigen::MatrixXd band_radial_;     // level x rho-node (c_n rho^n)
  Eigen::MatrixXcd band_phase_;     // level x theta-node (e^{i n theta})
  Eigen::MatrixXcd torus_phase_;    // level x node
  Eigen::MatrixXd hermite_axis_;    // degree x axis-node (h_k at nodes)
};

// one draw as a SampledFunction on the series grid
measure::SampledFunction sample_series(const RandomSeriesSpec& spec, mc::Rng& rng);

// estimate of E[ ||S_N||_{L^p}^q ]^{1/q} (delta-method stderr)
mc::MCEstimate mc_lp_moment(const RandomSeriesSpec& spec, double p, double q,
                            std::int64_t samples, std::uint64_t seed,
                            int threads = 0);

// E[||S||_p^p]^{1/p} / E[||S||_p]
double kkmp_ratio(const RandomSeriesSpec& spec, double p, std::int64_t samples,
                  std::uint64_t seed, int threads = 0);

struct UniversalityRow {
  std::string ensemble;
  double estimate = 0.0;   // mc_lp_moment at q = max(2,p)
  double stderr_ = 0.0;
  double deterministic = 0.0;
  double ratio = 0.0;
};

std::vector<UniversalityRow> universality_ratio(
    const RandomSeriesSpec& spec, double p,
    const std::vector<randmat::Ensemble>& ensembles, std::int64_t samples,
    std::uint64_t seed, int threads = 0);

struct ContractionResult {
  double lhs = 0.0;  // c * E|| sum sqrt(d_n) tr(E_n b_n) ||_p
  double rhs = 0.0;  // E|| sum sqrt(d_n) tr(M_n b_n) ||_p
  double c = 0.0;    // min_n sigma(E|M_n|)
  double lhs_stderr = 0.0;
  double rhs_stderr = 0.0;
};

ContractionResult contraction_check(const RandomSeriesSpec& spec, double p,
                                    const randmat::Ensemble& ensemble,
                                    std::int64_t samples, std::uint64_t seed,
                                    int threads = 0);

struct SalemZygmundResult {
  mc::MCEstimate est;          // of sup / sqrt(N ln N), or raw sup when N = 1
  bool zero_denominator = false;
  double min_sup = 0.0;        // smallest per-sample sup seen
};

// E[ max_grid | sum_{n=1}^N eps_n e^{inx} | ] / sqrt(N ln N);
// grid_size >= 16 N enforced.
SalemZygmundResult torus_salem_zygmund(int N, std::int64_t samples,
                                       std::int64_t grid_size, std::uint64_t seed,
                                       int threads = 0);

struct DivergenceRow {
  std::int64_t N;
  double running_max;
};

// running max of |X_{n,p}| / (n^{1/p} ln^{2/p} n) along one trajectory,
// recorded at each entry of N_list (ascending); rademacher = true replaces
// the heavy-tail law by signs (bounded comparison case)
std::vector<DivergenceRow> heavytail_divergence_demo(
    double p, const std::vector<std::int64_t>& N_list, std::uint64_t seed,
    bool rademacher = false);

// E| sum_n sqrt(d_n) tr(E_n a_n) |^2 for fixed complex matrices a_n with
// Haar-orthogonal E_n; compare against sum ||a_n||_HS^2.
mc::MCEstimate mc_hs_identity(const std::vector<Eigen::MatrixXcd>& a,
                              std::int64_t samples, std::uint64_t seed,
                              int threads = 0);

}  // namespace eigenrand::series
