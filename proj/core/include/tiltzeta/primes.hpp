#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace tiltzeta {

/// Largest cutoff the sieve accepts.
inline constexpr double kMaxSieveCutoff = 1e8;

/// Sieved primes p <= x with cached log p and 1/p.
///
/// Immutable after construction, so a single table can be shared by any
/// number of worker threads.
class PrimeTable {
public:
    /// Sieves all primes up to `x_cutoff`. Throws DomainError if
    /// x_cutoff < 2 or x_cutoff > kMaxSieveCutoff.
    explicit PrimeTable(double x_cutoff);

    double x_cutoff() const noexcept { return x_cutoff_; }
    std::size_t size() const noexcept { return primes_.size(); }
    bool empty() const noexcept { return primes_.empty(); }

    std::span<const std::uint32_t> primes() const noexcept { return primes_; }
    std::span<const double> log_p() const noexcept { return log_p_; }
    std::span<const double> inv_p() const noexcept { return inv_p_; }

    /// Table restricted to primes <= x (x <= x_cutoff()).
    PrimeTable truncated(double x) const;

private:
    PrimeTable() = default;

    double x_cutoff_ = 0.0;
    std::vector<std::uint32_t> primes_;
    std::vector<double> log_p_;
    std::vector<double> inv_p_;
};

/// A prime power n = p^r together with log p.
struct PrimePower {
    std::uint64_t n;
    std::uint32_t p;
    int r;
    double log_p;
};

/// Segmented sieve of Eratosthenes.
PrimeTable sieve_primes(double x_cutoff);

/// Mertens sum L = sum_{p <= x} 1/p, summed in increasing p.
double mertens_L(const PrimeTable& table);

/// Sum_{p <= x} log p / p.
double sum_log_p_over_p(const PrimeTable& table);

/// All prime powers p^r (r >= min_exponent) with lo < p^r <= hi, sorted by n.
/// Uses the primes of `table`, which must cover hi when min_exponent == 1.
std::vector<PrimePower> prime_powers(const PrimeTable& table, double lo, double hi,
                                     int min_exponent = 1);

/// Length schedule x = T^(eps/k) with eps = 1/log log log T.
struct Schedule {
    double T;
    int k;
    double epsilon;
    double x;
    /// False when x >= T, which is the case for every feasible T at k = 1.
    bool asymptotic_regime = false;
};

/// Throws DomainError for T <= e^e (log log log T undefined or non-positive)
/// or k < 1.
Schedule schedule_x(double T, int k);

/// Default polynomial length used by the CLI: min(sqrt(T), 1e5).
double default_x(double T);

/// von Mangoldt function: log p if n = p^r, else 0. Exact for all n < 2^64.
double lambda_von_mangoldt(std::uint64_t n);

/// Deterministic Miller-Rabin for 64-bit integers.
bool is_prime_u64(std::uint64_t n);

}  // namespace tiltzeta
