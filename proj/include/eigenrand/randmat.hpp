#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <string>

#include "eigenrand/mc.hpp"

namespace eigenrand::randmat {

enum class EntryLaw { Rademacher, StdGaussian, HeavyTail };

enum class EnsembleKind { HaarOrthogonal, HaarUnitary, IIDEntries, HaarTimesIID };

struct Ensemble {
  EnsembleKind kind = EnsembleKind::HaarOrthogonal;
  EntryLaw law = EntryLaw::Rademacher;  // for IIDEntries / HaarTimesIID
  double tail_p = 4.0;                  // for EntryLaw::HeavyTail
};

Ensemble parse_ensemble(const std::string& name);  // "haar-o", "haar-u", ...
std::string ensemble_name(const Ensemble& e);

// Haar measure on O_d(R): gaussian matrix, QR, columns fixed by sign(R_jj).
Eigen::MatrixXd sample_orthogonal(int d, mc::Rng& rng);

// Haar measure on U_d(C), phases fixed by R_jj/|R_jj|.
Eigen::MatrixXcd sample_unitary(int d, mc::Rng& rng);

// Symmetric heavy-tail variable: survival ln(t)/t^p on t >= e, the leftover
// mass sits in an atom at 0, sign is an independent Rademacher. Inverse CDF
// by bisection.
double heavytail_sample(double p, mc::Rng& rng);

double sample_entry(EntryLaw law, double tail_p, mc::Rng& rng);

// iid-entry matrix scaled by 1/sqrt(d)
Eigen::MatrixXd sample_iid(int d, EntryLaw law, double tail_p, mc::Rng& rng);

// real-valued draw of any real ensemble (HaarUnitary excluded)
Eigen::MatrixXd sample(const Ensemble& e, int d, mc::Rng& rng);

// complex draw of any ensemble (real ensembles are embedded)
Eigen::MatrixXcd sample_complex(const Ensemble& e, int d, mc::Rng& rng);

// |M| = sqrt(M^* M) through a self-adjoint eigendecomposition.
Eigen::MatrixXd matrix_abs(const Eigen::MatrixXd& m);
Eigen::MatrixXcd matrix_abs(const Eigen::MatrixXcd& m);

// largest / smallest singular value
double op_norm(const Eigen::MatrixXd& m);
double op_norm(const Eigen::MatrixXcd& m);
double smallest_singular(const Eigen::MatrixXd& m);
double smallest_singular(const Eigen::MatrixXcd& m);

// Monte Carlo estimate of E[ ||M||_op^p ].
mc::MCEstimate mc_opnorm_moment(const Ensemble& e, int d, double p,
                                std::int64_t samples, std::uint64_t seed,
                                int threads = 0);

// sigma( E[|M|] ): smallest eigenvalue of the sample-averaged |M|. The
// stderr is the spread of per-chunk sigmas over sqrt(#chunks).
mc::MCEstimate mc_sigma_expected_abs(const Ensemble& e, int d,
                                     std::int64_t samples, std::uint64_t seed,
                                     int threads = 0);

// two-sample Kolmogorov-Smirnov statistic
double ks_two_sample(Eigen::ArrayXd a, Eigen::ArrayXd b);

}  // namespace eigenrand::randmat
