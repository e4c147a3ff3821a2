#pragma once

// Frozen numerical constants used by the regression and acceptance suites.
//
// Two kinds live here. Statistical acceptance bands (3-sigma, KS level,
// ratio bands such as 5x or [0.3, 3]) are design choices pinned once and
// for all. Calibrated constants were fitted by `tools/calibrate` over the
// tested parameter ranges and then frozen with the stated headroom; rerun
// that tool and paste fresh values if the underlying evaluators change.

namespace eigenrand::constants {

// ---- calibrated (tools/calibrate) ----------------------------------------

// Hermite envelope past the turning point: |h_n(x)| <= C exp(-gamma/2 x^2)
// for |x| > sqrt(2n+1), n <= 500. The inside-envelope (2n+2-x^2)^{-1/4} is
// constant-free. gamma is frozen well under the exact at-the-edge limit
// 2 ln(C/|h_n(edge)|)/(2n+1) ~ 3.6e-3 at n = 500.
inline constexpr double kHermiteTailC = 1.5;
inline constexpr double kHermiteTailGamma = 1.5e-3;

// Muckenhoupt main-term remainder: |h_n(x) - main(n,x)| <= C sqrt(2n+1) *
// (2n+1-x^2)^{-7/4} on 0 <= x <= sqrt(2n+1) - (2n+1)^{-1/6}, n <= 300.
// Observed 0.159, frozen x1.3.
inline constexpr double kMuckenhouptC = 0.21;

// Squared form on [0, beta sqrt(2n+1)], beta = 0.8, n in [2, 400]:
// |h_n^2 - (2/pi)(2n+1-x^2)^{-1/2} cos^2[...]| <= C (2n+1)^{-3/2}.
// Observed 0.972, frozen x1.3.
inline constexpr double kHermiteSqC = 1.3;

// Oscillator spectral tail: e_d(n,r) e^{gamma r^2} / n^{d/2-1} <= bound for
// r >= sqrt(2n+1); fitted on d = 2, n = 100, verified over d in {2,3},
// n <= 400 (max observed 0.33 at gamma = 2.1e-3; frozen smaller again).
inline constexpr double kOscTailGamma = 1.5e-3;
inline constexpr double kOscTailBound = 1.0;

// Zonal oscillation envelope (Jacobi on the band away from the poles):
// |P_n^{(a,a)}(cos T)| sqrt(n) (sin T)^{a+1/2} <= bound for a in [0, 1.5].
// Observed 2.23 near the cap edge, frozen x1.15.
inline constexpr double kJacobiOscBound = 2.6;

// Closed-form / quadrature equivalence ratio bands, measured once per
// family over the regression coefficient sets and widened 2x.
inline constexpr double kYRatioLo = 1.0, kYRatioHi = 5.2;       // obs [2.19, 2.57]
inline constexpr double kZRatioLo = 0.28, kZRatioHi = 1.5;      // obs [0.57, 0.74]
inline constexpr double kHermiteRatioLo = 0.65, kHermiteRatioHi = 7.7;  // obs [1.32, 3.83]

// ||~Y_n||_p / ||Y_n||_p over n <= 300, p in {2,4,6}; obs [3.49, 5.33].
inline constexpr double kTildeYRatioLo = 1.7, kTildeYRatioHi = 10.7;

// Y_n gaussian envelope constant: |Y_n| / n^{(d-1)/4} <=
// C exp(-n delta^2 / 2), delta = arccos(rho).
inline constexpr double kYGaussEnvC = 2.0;

// multilinear band: integral |~Y_{n1} ~Y_{n2}|^2 / n2^{(d-1)/2} in [lo, hi]
inline constexpr double kMultilinearLo = 0.05, kMultilinearHi = 20.0;

// Z sqrt-log law: ||Z_n||_{2d/(d-1)} / sqrt(ln(n+1)) band over n in [20,400];
// obs [0.82, 2.34], frozen x2.
inline constexpr double kZLogLawLo = 0.41, kZLogLawHi = 4.7;

// smallest-singular-value lower bound (13): sigma(E|M_d|) >=
// E[X^2] / (C E[X^4]^{1/4}); observed sigma ~ 0.79 for Rademacher entries.
inline constexpr double kSigmaLowerC = 2.0;

// Latala three-term operator-norm bound with gaussian entries; observed 0.46.
inline constexpr double kLatalaC = 1.0;

// Eq (14) with p = 8, gaussian entries: E||M||^8 <= C(8) E[g^8]; obs 2.13.
inline constexpr double kLatalaC8 = 8.5;

// monotone L^p inclusion constant for the oscillator closed form:
// value(p2) <= C value(p1) for p1 < p2 on the regression set; obs 0.99.
inline constexpr double kHermiteMonotoneC = 2.0;

// concentration annulus: inner radius C0/sqrt(2n+1)
inline constexpr double kAnnulusC0 = 3.0;
inline constexpr int kOscMinLevel = 20;

// ---- spec-pinned statistical bands ----------------------------------------

inline constexpr double kAnnulusRatioLo = 0.01, kAnnulusRatioHi = 100.0;
inline constexpr double kKkmpK = 3.0;            // KKMP moment growth K sqrt(p)
inline constexpr double kUniversalityBand = 5.0; // max/min across ensembles
inline constexpr double kNStabilityBand = 0.20;  // +-20% when N doubles
inline constexpr double kSalemZygmundLo = 0.3, kSalemZygmundHi = 3.0;
inline constexpr double kOpnormSpread = 0.15;    // Rademacher E||M|| across d
inline constexpr double kKsLevel1pc = 1.628;     // two-sample KS, alpha = 1%
inline constexpr double kHeavyTailGrowth = 2.0;  // d=20 -> d=200 growth factor

}  // namespace eigenrand::constants
