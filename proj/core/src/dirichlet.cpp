#include "tiltzeta/dirichlet.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "tiltzeta/error.hpp"

namespace tiltzeta {

namespace {

// n^{-sigma - it} for n = p^r, from the cached log p.
std::complex<double> power_term(const PrimePower& pp, double sigma, double t) {
    const double logn = pp.r * pp.log_p;
    return std::polar(std::exp(-sigma * logn), -t * logn);
}

bool zeros_usable(double t, const ZeroList* zeros) {
    return zeros != nullptr && zeros->complete && zeros->covers(t - 1.0, t + 1.0);
}

}  // namespace

std::complex<double> eval_P(double t, const PrimeTable& table) {
    if (table.empty()) throw DomainError("eval_P: empty prime table");
    const auto logs = table.log_p();
    std::complex<double> sum = 0.0;
    for (double lp : logs) sum += std::polar(std::exp(-0.5 * lp), -t * lp);
    return sum;
}

SelbergSum selberg_zero_sum(double t, const ZeroList& zeros, double log_x) {
    if (!zeros.complete) throw DomainError("selberg_zero_sum: zero list is incomplete");
    if (!zeros.covers(t - 1.0, t + 1.0)) {
        throw DomainError("selberg_zero_sum: zero window must contain [t-1, t+1]");
    }
    const double a = 4.0 / log_x;
    const double a2 = a * a;
    SelbergSum out;
    for (double g : zeros.gammas) {
        const double d = t - g;
        out.truncated += 1.0 / (a2 + d * d);
    }
    const double density = std::log(std::abs(t) / (2.0 * std::numbers::pi)) / (2.0 * std::numbers::pi);
    const double left = t - zeros.t_lo;
    const double right = zeros.t_hi - t;
    constexpr double kZeta2 = std::numbers::pi * std::numbers::pi / 6.0;
    out.tail = kZeta2 * std::max(density, 0.0) * (1.0 / left + 1.0 / right);
    return out;
}

ProofSumEvaluator::ProofSumEvaluator(const PrimeTable& table, double T)
    : x_(table.x_cutoff()), log_x_(std::log(table.x_cutoff())), T_(T) {
    if (table.empty()) throw DomainError("ProofSumEvaluator: empty prime table");
    if (!(x_ > 1.0)) throw DomainError("ProofSumEvaluator: x must exceed 1");
    const double x3 = x_ * x_ * x_;
    if (x3 > kMaxSieveCutoff) {
        std::ostringstream msg;
        msg << "eval_proof_sums: x^3 = " << x3 << " exceeds sieve capacity " << kMaxSieveCutoff;
        throw DomainError(msg.str());
    }
    const PrimeTable wide(std::max(2.0, x3));
    small_primes_ = prime_powers(table, 0.0, x_, 1);
    small_primes_.erase(std::remove_if(small_primes_.begin(), small_primes_.end(),
                                       [](const PrimePower& p) { return p.r != 1; }),
                        small_primes_.end());
    small_powers_ = prime_powers(table, 0.0, x_, 2);
    large_powers_ = prime_powers(wide, x_, x3, 1);
}

ProofSums ProofSumEvaluator::operator()(double t, const ZeroList* zeros) const {
    ProofSums s;
    s.t = t;
    s.T = T_;
    s.log_x = log_x_;
    const double shift = 4.0 / log_x_;
    const double sigma = 0.5 + shift;

    for (const auto& p : small_primes_) {
        const std::complex<double> base = power_term(p, 0.5, t);
        s.P += base;
        s.S1 += (std::exp(-shift * p.log_p) - 1.0) * base;
        s.LambdaSum += p.log_p * power_term(p, sigma, t);
    }
    for (const auto& pp : small_powers_) {
        const std::complex<double> term = power_term(pp, sigma, t);
        s.S2 += term / static_cast<double>(pp.r);
        s.LambdaSum += pp.log_p * term;
    }
    for (const auto& pp : large_powers_) {
        const std::complex<double> term = power_term(pp, sigma, t);
        s.S3 += term / static_cast<double>(pp.r);
        s.LambdaSum += pp.log_p * term;
    }
    s.R = 5.0 / log_x_ * (std::abs(s.LambdaSum) + std::log(T_));

    if (zeros_usable(t, zeros)) {
        const SelbergSum sel = selberg_zero_sum(t, *zeros, log_x_);
        s.L2 = shift * shift * sel.truncated;
        s.L2_tail = shift * shift * sel.tail;
        s.eta = eta_min_distance(t, *zeros);
        s.zeros_available = true;
    } else {
        s.L2 = std::numeric_limits<double>::quiet_NaN();
        s.L2_tail = std::numeric_limits<double>::quiet_NaN();
        s.eta = std::numeric_limits<double>::quiet_NaN();
    }
    return s;
}

ProofSums eval_proof_sums(double t, double T, const PrimeTable& table, const ZeroList* zeros) {
    return ProofSumEvaluator(table, T)(t, zeros);
}

}  // namespace tiltzeta
