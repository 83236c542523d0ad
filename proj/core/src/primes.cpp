#include "tiltzeta/primes.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "tiltzeta/error.hpp"

namespace tiltzeta {

namespace {

constexpr std::uint64_t kSegmentSize = 1u << 18;

std::vector<std::uint32_t> simple_sieve(std::uint32_t limit) {
    std::vector<bool> composite(limit + 1, false);
    std::vector<std::uint32_t> out;
    for (std::uint64_t i = 2; i <= limit; ++i) {
        if (composite[i]) continue;
        out.push_back(static_cast<std::uint32_t>(i));
        for (std::uint64_t j = i * i; j <= limit; j += i) composite[j] = true;
    }
    return out;
}

std::vector<std::uint32_t> segmented_sieve(std::uint64_t limit) {
    const auto root = static_cast<std::uint32_t>(std::sqrt(static_cast<double>(limit))) + 1;
    const std::vector<std::uint32_t> base = simple_sieve(root);

    std::vector<std::uint32_t> primes;
    primes.reserve(static_cast<std::size_t>(1.1 * limit / std::max(1.0, std::log(double(limit)) - 1.1)) + 16);

    std::vector<char> is_composite(kSegmentSize);
    std::vector<std::uint64_t> next(base.size());
    for (std::size_t i = 0; i < base.size(); ++i) next[i] = std::uint64_t{base[i]} * base[i];

    for (std::uint64_t lo = 2; lo <= limit; lo += kSegmentSize) {
        const std::uint64_t hi = std::min(lo + kSegmentSize - 1, limit);
        std::fill(is_composite.begin(), is_composite.end(), 0);
        for (std::size_t i = 0; i < base.size(); ++i) {
            const std::uint64_t p = base[i];
            if (p * p > hi) break;
            std::uint64_t j = std::max(next[i], (lo + p - 1) / p * p);
            for (; j <= hi; j += p) is_composite[j - lo] = 1;
            next[i] = j;
        }
        for (std::uint64_t n = lo; n <= hi; ++n) {
            if (!is_composite[n - lo]) primes.push_back(static_cast<std::uint32_t>(n));
        }
    }
    return primes;
}

__extension__ typedef unsigned __int128 u128;

std::uint64_t mul_mod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
    return static_cast<std::uint64_t>(static_cast<u128>(a) * b % m);
}

std::uint64_t pow_mod(std::uint64_t base, std::uint64_t exp, std::uint64_t m) {
    std::uint64_t result = 1 % m;
    base %= m;
    while (exp > 0) {
        if (exp & 1) result = mul_mod(result, base, m);
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    return result;
}

// Largest m with m^r <= n.
std::uint64_t integer_root(std::uint64_t n, int r) {
    if (r == 1) return n;
    auto m = static_cast<std::uint64_t>(std::pow(static_cast<double>(n), 1.0 / r));
    auto pow_le = [&](std::uint64_t base) {
        u128 acc = 1;
        for (int i = 0; i < r; ++i) {
            acc *= base;
            if (acc > n) return false;
        }
        return true;
    };
    while (m > 0 && !pow_le(m)) --m;
    while (pow_le(m + 1)) ++m;
    return m;
}

}  // namespace

PrimeTable::PrimeTable(double x_cutoff) : x_cutoff_(x_cutoff) {
    if (!(x_cutoff >= 2.0)) {
        std::ostringstream msg;
        msg << "sieve_primes: x_cutoff must be >= 2 (got " << x_cutoff << ")";
        throw DomainError(msg.str());
    }
    if (x_cutoff > kMaxSieveCutoff) {
        std::ostringstream msg;
        msg << "sieve_primes: x_cutoff " << x_cutoff << " exceeds sieve capacity " << kMaxSieveCutoff;
        throw DomainError(msg.str());
    }
    primes_ = segmented_sieve(static_cast<std::uint64_t>(std::floor(x_cutoff)));
    log_p_.reserve(primes_.size());
    inv_p_.reserve(primes_.size());
    for (auto p : primes_) {
        log_p_.push_back(std::log(static_cast<double>(p)));
        inv_p_.push_back(1.0 / static_cast<double>(p));
    }
}

PrimeTable PrimeTable::truncated(double x) const {
    if (x > x_cutoff_) throw DomainError("PrimeTable::truncated: x exceeds the table cutoff");
    if (x < 2.0) throw DomainError("PrimeTable::truncated: x must be >= 2");
    PrimeTable out;
    out.x_cutoff_ = x;
    const auto end = std::upper_bound(primes_.begin(), primes_.end(), x,
                                      [](double v, std::uint32_t p) { return v < static_cast<double>(p); });
    const auto n = static_cast<std::size_t>(end - primes_.begin());
    out.primes_.assign(primes_.begin(), primes_.begin() + n);
    out.log_p_.assign(log_p_.begin(), log_p_.begin() + n);
    out.inv_p_.assign(inv_p_.begin(), inv_p_.begin() + n);
    return out;
}

PrimeTable sieve_primes(double x_cutoff) { return PrimeTable(x_cutoff); }

double mertens_L(const PrimeTable& table) {
    double sum = 0.0;
    for (double v : table.inv_p()) sum += v;
    return sum;
}

double sum_log_p_over_p(const PrimeTable& table) {
    double sum = 0.0;
    const auto logs = table.log_p();
    const auto invs = table.inv_p();
    for (std::size_t i = 0; i < table.size(); ++i) sum += logs[i] * invs[i];
    return sum;
}

std::vector<PrimePower> prime_powers(const PrimeTable& table, double lo, double hi, int min_exponent) {
    if (min_exponent <= 1 && hi > table.x_cutoff()) {
        throw DomainError("prime_powers: table does not cover the requested range");
    }
    std::vector<PrimePower> out;
    const auto primes = table.primes();
    const auto logs = table.log_p();
    for (std::size_t i = 0; i < primes.size(); ++i) {
        const std::uint64_t p = primes[i];
        if (static_cast<double>(p) * static_cast<double>(p) > hi && min_exponent >= 2) break;
        if (static_cast<double>(p) > hi) break;
        std::uint64_t n = 1;
        for (int r = 1;; ++r) {
            n *= p;
            if (static_cast<double>(n) > hi) break;
            if (r >= min_exponent && static_cast<double>(n) > lo) out.push_back({n, primes[i], r, logs[i]});
        }
    }
    std::sort(out.begin(), out.end(), [](const PrimePower& a, const PrimePower& b) { return a.n < b.n; });
    return out;
}

Schedule schedule_x(double T, int k) {
    if (k < 1) throw DomainError("schedule_x: k must be a positive integer");
    if (!(T > std::exp(std::numbers::e))) {
        throw DomainError(
            "schedule_x: T must exceed e^e so that log log log T > 0; supply the polynomial length x explicitly");
    }
    const double lll = std::log(std::log(std::log(T)));
    Schedule s{};
    s.T = T;
    s.k = k;
    s.epsilon = 1.0 / lll;
    s.x = std::pow(T, s.epsilon / k);
    s.asymptotic_regime = s.x < T;
    return s;
}

double default_x(double T) { return std::min(std::sqrt(T), 1e5); }

bool is_prime_u64(std::uint64_t n) {
    if (n < 2) return false;
    for (std::uint64_t p : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
        if (n % p == 0) return n == p;
    }
    std::uint64_t d = n - 1;
    int s = 0;
    while ((d & 1) == 0) {
        d >>= 1;
        ++s;
    }
    for (std::uint64_t a : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
        std::uint64_t x = pow_mod(a, d, n);
        if (x == 1 || x == n - 1) continue;
        bool witness = true;
        for (int i = 1; i < s; ++i) {
            x = mul_mod(x, x, n);
            if (x == n - 1) {
                witness = false;
                break;
            }
        }
        if (witness) return false;
    }
    return true;
}

double lambda_von_mangoldt(std::uint64_t n) {
    if (n < 2) return 0.0;
    // n = p^r: try every exponent from the largest down so that the base is prime.
    for (int r = 63; r >= 1; --r) {
        if (r > 1 && (std::uint64_t{1} << std::min(r, 63)) > n) continue;
        const std::uint64_t m = integer_root(n, r);
        if (m < 2) continue;
        u128 acc = 1;
        for (int i = 0; i < r; ++i) acc *= m;
        if (acc != n) continue;
        return is_prime_u64(m) ? std::log(static_cast<double>(m)) : 0.0;
    }
    return 0.0;
}

}  // namespace tiltzeta
