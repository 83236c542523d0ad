#pragma once

#include <complex>
#include <limits>
#include <vector>

namespace tiltzeta {

/// Working precision of the Riemann-Siegel phase computation.
enum class Precision {
    standard,  ///< double-precision phases; fast path used by the quadrature engine
    extended,  ///< long double phases; for large t or reference runs
};

/// Samples with |zeta|^2 below this are treated as sitting on a zero.
inline constexpr double kAbs2Floor = 1e-30;

/// Below this height Z(t) is computed by Euler-Maclaurin summation.
inline constexpr double kRiemannSiegelCrossover = 30.0;

/// Riemann-Siegel theta function arg Gamma(1/4 + it/2) - (t/2) log pi.
/// Odd in t. Asymptotic series for |t| >= 10, complex log-gamma below.
double riemann_siegel_theta(double t);

/// Same, returned in extended precision (the value is O(t log t) and the
/// Riemann-Siegel phase needs its low-order digits).
long double riemann_siegel_theta_ld(long double t);

/// Derivative theta'(t), used by Newton iterations on Gram points.
double riemann_siegel_theta_prime(double t);

/// Hardy's Z(t) with an a-posteriori error estimate.
struct HardyZ {
    double value = 0.0;
    double err_bound = 0.0;
};

/// Z(t) = e^{i theta(t)} zeta(1/2 + it). Riemann-Siegel main sum plus the
/// corrections C0..C4 for |t| >= 30; Euler-Maclaurin below.
/// err_bound = max(1e-8, 0.05 |t|^{-9/4}) on the Riemann-Siegel branch.
HardyZ hardy_Z(double t, Precision precision = Precision::standard);

/// zeta(1/2 + it) by Euler-Maclaurin summation in double precision.
/// Accurate to ~1e-13 for |t| < 60; cost grows linearly in |t|.
std::complex<double> zeta_half_euler_maclaurin(double t);

/// One point on the critical line.
struct CriticalSample {
    double t = 0.0;
    double zeta_re = 0.0;
    double zeta_im = 0.0;
    double abs2 = 0.0;
    /// 0.5 log(abs2), or -infinity when abs2 < kAbs2Floor.
    double log_abs = -std::numeric_limits<double>::infinity();
    double err_bound = 0.0;

    bool on_zero() const noexcept { return abs2 < kAbs2Floor; }
    std::complex<double> zeta() const noexcept { return {zeta_re, zeta_im}; }
};

/// zeta(1/2 + it) = Z(t) e^{-i theta(t)}.
CriticalSample zeta_half(double t, Precision precision = Precision::standard);

/// Solve theta(t) = target for t >= 7 (theta is increasing there).
double theta_inverse(double target, double guess = 0.0);

/// n-th Gram point, theta(g_n) = n pi, for n >= -1.
double gram_point(long n);

/// Zero ordinates located in a window, with a count certificate.
struct ZeroList {
    double t_lo = 0.0;
    double t_hi = 0.0;
    std::vector<double> gammas;
    long expected_count = 0;
    long found_count = 0;
    bool complete = false;

    /// True when [a, b] lies inside [t_lo, t_hi].
    bool covers(double a, double b) const noexcept { return t_lo <= a && b <= t_hi; }
};

/// Locate every sign change of Z in [t_lo, t_hi] (10 <= t_lo < t_hi).
///
/// Samples Z on Gram and half-Gram points. The expected count is
/// N(t_hi) - N(t_lo), where N(t) is the integer nearest theta(t)/pi + 1 with
/// the parity fixed by sign Z(t) = (-1)^{N(t)-1}. Segments whose sign-change
/// count falls short are refined by recursive trisection (depth <= 12) and
/// each zero is polished to 1e-9. A residual mismatch leaves complete=false.
ZeroList find_zeros(double t_lo, double t_hi);

/// eta_t = min over located zeros of |t - gamma|. The list must be complete
/// and cover [t-1, t+1]; otherwise DomainError.
double eta_min_distance(double t, const ZeroList& zeros);

/// Estimated zero count N(t) from theta and the sign of Z(t) (see find_zeros).
long zero_count_estimate(double t);

}  // namespace tiltzeta
