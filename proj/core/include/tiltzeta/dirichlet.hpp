#pragma once

#include <complex>
#include <vector>

#include "tiltzeta/primes.hpp"
#include "tiltzeta/zeta.hpp"

namespace tiltzeta {

/// P(t) = sum_{p <= x} p^{-1/2 - it}, summed in increasing p.
std::complex<double> eval_P(double t, const PrimeTable& table);

/// Truncated zero sum sum_gamma 1 / |4/log x + i(t - gamma)|^2 over the
/// supplied zeros, plus an analytic estimate for zeros outside the window.
struct SelbergSum {
    double truncated = 0.0;
    /// For each side at distance W from the window edge:
    /// sum_{j>=1} (W D) / (j W)^2 = pi^2 D / (6 W), with D = log(t/2pi)/(2pi)
    /// the mean zero density.
    double tail = 0.0;

    double value() const noexcept { return truncated + tail; }
};

SelbergSum selberg_zero_sum(double t, const ZeroList& zeros, double log_x);

/// The explicit sums appearing in the approximation of log zeta(1/2+it) by P(t).
struct ProofSums {
    double t = 0.0;
    double T = 0.0;
    double log_x = 0.0;
    std::complex<double> P;
    /// sum_{p<=x} (p^{-1/2-4/log x} - p^{-1/2}) p^{-it}
    std::complex<double> S1;
    /// sum_{p^r<=x, r>=2} p^{-r(1/2+4/log x+it)} / r
    std::complex<double> S2;
    /// sum_{x<n<=x^3} Lambda(n)/log n * n^{-1/2-4/log x-it}
    std::complex<double> S3;
    /// sum_{n<=x^3} Lambda(n) n^{-4/log x} / n^{1/2+it}
    std::complex<double> LambdaSum;
    /// (5/log x)(|LambdaSum| + log T)
    double R = 0.0;
    /// (4/log x)^2 * selberg_zero_sum; NaN when zeros are unavailable.
    double L2 = 0.0;
    double L2_tail = 0.0;
    /// min |t - gamma|; NaN when zeros are unavailable.
    double eta = 0.0;
    bool zeros_available = false;
};

/// Precomputed prime-power data for repeated evaluation of ProofSums at a
/// fixed x. Sieves up to x^3, so x^3 must not exceed kMaxSieveCutoff.
class ProofSumEvaluator {
public:
    /// `table` supplies x = table.x_cutoff().
    ProofSumEvaluator(const PrimeTable& table, double T);

    double x() const noexcept { return x_; }
    double log_x() const noexcept { return log_x_; }

    /// `zeros` may be null; L2 and eta are then marked unavailable. They are
    /// also unavailable when the list is incomplete or misses [t-1, t+1].
    ProofSums operator()(double t, const ZeroList* zeros) const;

private:
    double x_;
    double log_x_;
    double T_;
    std::vector<PrimePower> small_primes_;   // p <= x, r = 1
    std::vector<PrimePower> small_powers_;   // p^r <= x, r >= 2
    std::vector<PrimePower> large_powers_;   // x < p^r <= x^3
};

/// Convenience wrapper building a ProofSumEvaluator for one evaluation.
ProofSums eval_proof_sums(double t, double T, const PrimeTable& table, const ZeroList* zeros);

}  // namespace tiltzeta
