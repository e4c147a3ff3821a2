#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <functional>
#include <vector>

#include "eigenrand/measure.hpp"
#include "eigenrand/spectral.hpp"

namespace eigenrand::plp {

// Hurwitz zeta sum_{k>=0} (a+k)^{-s}, s > 1, by Euler-Maclaurin with the
// remainder driven below 1e-12.
double hurwitz_zeta(double s, double a);

// PL^p norm || sqrt(sum_n ||u_n||^2 e(n,.)/d_n) ||_{L^p} of level norms, n starting at
// the family's first level. For the zonal family the entries are the
// coefficients a_n of Z_n itself (the normalization cancels inside the
// integrand).
measure::QuadResult plp_norm_quadrature(const spectral::Family& fam,
                                        const Eigen::ArrayXd& level_norms,
                                        double p);

// [ sum_n n^{-(d+1)/2} (sum_{k<=n} k^{(d-1)/2} |a_k|^2)^{p/2} ]^{1/p} with
// the constant-tail summed by Hurwitz zeta; a starts at n = 1.
double y_closed_form(const Eigen::ArrayXd& a, double p, int d);

// [ sum_n n^{-(d+1)} S_n^{p/2} ]^{1/p}, S_n = sum_{k<=n} k^{d-1} |a_k|^2;
// throws std::domain_error for p <= 2d/(d-1), where the space collapses
// to l^2 and the partial-sum characterization does not apply.
double z_closed_form(const Eigen::ArrayXd& a, double p, int d);

// ||Pi_0 u|| + [ sum_{n>=1} n^{d/2-1} (sum_{k>=n} ||Pi_k u||^2 k^{-d/2})^{p/2} ]^{1/p};
// norms start at n = 0.
double hermite_closed_form(const Eigen::ArrayXd& norms, double p, int d);

// weighted l2 Sobolev norm; sphere weight (1+n)^{2s}, oscillator (1+n)^s
// (the spectral parameter of -Delta + |x|^2 is linear in n).
double sobolev_norm(const spectral::Family& fam, const Eigen::ArrayXd& norms,
                    double s);

// ---- membership analysis for parametric sequences -------------------------

// summand tail model t_n ~ C n^{-e} ln^{-kappa} n
struct TailFit {
  double e = 0.0;
  double kappa = 0.0;
};

// Tail analyzer for a parametric coefficient sequence a(n) (smooth in n for
// large n). Inner partial sums are computed exactly up to 2^14 and continued
// by Euler-Maclaurin up to dyadic checkpoints 2^44, which pins the summand
// exponents far better than any directly summable range.
class TailAnalyzer {
 public:
  TailAnalyzer(const spectral::Family& fam, std::function<double(double)> a);

  TailFit fit(double p) const;           // exponents of the closed-form summand
  bool member(double p) const;           // convergence of the closed-form series
  bool finite_support() const { return finite_support_; }
  bool l2() const;                       // square-summability of a itself

 private:
  double log_inner_at(int k) const;

  spectral::Family fam_;
  std::function<double(double)> a_;
  bool finite_support_ = false;
  std::vector<int> k_;                   // checkpoint exponents
  std::vector<double> log_inner_;        // ln of T/S/R at n = 2^k
};

// Does the coefficient sequence a(n) lie in PL^p of the family?
bool plp_membership(const spectral::Family& fam,
                    const std::function<double(double)>& a, double p);

// Critical exponent by bisection of the membership predicate to 1e-3 in p,
// scanned over (2, 64]. Returns +infinity when membership holds everywhere;
// for the oscillator (reversed inclusions) the returned value is the
// infimum of the membership region.
double critical_exponent(const spectral::Family& fam,
                         const std::function<double(double)>& a);

// ---- interpolation defect and Holder witness -------------------------------

// Q(phi, [p1,p2]) = sup_p ||phi||_{p1}^{t1} ||phi||_{p2}^{t2} / ||phi||_p
// over a >= 64-point p-grid refined near the maximizer.
double interpolation_defect(const measure::SampledFunction& phi, double p1,
                            double p2);

struct HolderWitness {
  measure::SampledFunction psi;
  double r = 0.0;       // exponent used, midpoint of the admissible interval
  double q1 = 0.0, q2 = 0.0;
  double pairing = 0.0;          // int phi psi (should be 1)
  double prod1 = 0.0, prod2 = 0.0;  // ||phi||_{p_i} ||psi||_{q_i}
  double q_defect = 0.0;            // Q(phi,[p1,p2])
  double dom_slack1 = 0.0, dom_slack2 = 0.0;  // max pointwise violation of
                                              // the density dominations
};

// psi = |phi|^r / (phi int |phi|^r); throws std::domain_error when
// 1/p1 + 1/p2 > 1 (empty r-interval).
HolderWitness holder_witness(const measure::SampledFunction& phi, double p1,
                             double p2);

// ---- spectral-hypothesis checks (17)/(18)/(19) ------------------------------

struct HypothesisReport {
  double weak_quasinorm_N = 0.0;   // (17): ||g_N||_{p,infty}
  double weak_quasinorm_2N = 0.0;  // same at 2N (stability probe)
  double lp_norm_N = 0.0;          // ||g_N||_p
  double lp_norm_2N = 0.0;
  double defect_sup = 0.0;         // (18): sup_n Q(sqrt e(n,.), [p1,p2])
  double pairing_sup = 0.0;        // (19): sup_n ||sqrt e||_p ||sqrt e||_q / d_n
};

HypothesisReport hypothesis_checks(const spectral::Family& fam, double p, int N,
                                   double p1, double p2);

// ---- Sobolev embedding sweep ------------------------------------------------

struct EmbeddingCell {
  double s;
  bool embeds;     // power-law witnesses just inside H^s land in PL^p
  bool expected;   // the theoretical exponent says they should
};

struct EmbeddingSweep {
  double s_expected;                // theoretical exponent for this family/p
  double s_hat;                     // empirical transition
  std::vector<EmbeddingCell> cells;
  // lacunary witness J = {2^k} at the critical exponent:
  bool lacunary_in_sobolev_below;   // finite H^{s-eps} norm for eps > 0
  double lacunary_plp_growth;       // closed-form partial-sum growth factor
};

EmbeddingSweep embedding_sweep(const spectral::Family& fam, double p);

// ---- section 12 counterexample ----------------------------------------------

struct ShiftNorms {
  double shifted;    // || (+P_n)(f_{N,n}) ||^p = N^{p/2}
  double unshifted;  // || (f_{N,n}) ||^p        = N
};

// exact evaluation on the piecewise-constant representation
ShiftNorms r_boundedness_counterexample(double p, int N);

}  // namespace eigenrand::plp
