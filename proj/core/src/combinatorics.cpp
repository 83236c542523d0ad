#include <cmath>
#include <map>
#include <numeric>
#include <sstream>

#include "tiltzeta/error.hpp"
#include "tiltzeta/moment_theory.hpp"

namespace tiltzeta {

namespace {

mpz_class factorial(unsigned long n) {
    mpz_class f;
    mpz_fac_ui(f.get_mpz_t(), n);
    return f;
}

mpz_class binomial(unsigned long n, unsigned long k) {
    mpz_class b;
    mpz_bin_uiui(b.get_mpz_t(), n, k);
    return b;
}

// Ordered tuples of pairwise distinct primes, aggregated by product.
void distinct_products(std::span<const std::uint32_t> primes, int len, std::vector<bool>& used, std::uint64_t prod,
                       std::map<std::uint64_t, std::uint64_t>& out) {
    if (len == 0) {
        ++out[prod];
        return;
    }
    for (std::size_t i = 0; i < primes.size(); ++i) {
        if (used[i]) continue;
        used[i] = true;
        distinct_products(primes, len - 1, used, prod * primes[i], out);
        used[i] = false;
    }
}

}  // namespace

RepetitionReport repetition_decomposition_check(int r, int s, const PrimeTable& table) {
    if (r < 0 || s < 0) throw DomainError("repetition_decomposition_check: r and s must be non-negative");
    const auto primes = table.primes();
    const double tuples = std::pow(static_cast<double>(primes.size()), r + s);
    if (tuples > kMaxRepetitionTuples) {
        std::ostringstream msg;
        msg << "repetition_decomposition_check: " << tuples << " tuples exceed " << kMaxRepetitionTuples;
        throw DomainError(msg.str());
    }

    RepetitionReport rep;
    std::vector<bool> used(primes.size(), false);
    std::map<std::uint64_t, std::uint64_t> ns, ms;
    distinct_products(primes, r, used, 1, ns);
    distinct_products(primes, s, used, 1, ms);
    rep.lhs = 0;
    for (const auto& [n, cn] : ns) {
        for (const auto& [m, cm] : ms) {
            mpq_class term(mpz_class(static_cast<unsigned long>(cn * cm)),
                           mpz_class(static_cast<unsigned long>(n / std::gcd(n, m) * m)));
            term.canonicalize();
            rep.lhs += term;
        }
    }

    // Elementary symmetric sums e_j of {1/p}; distinct ordered j-tuples give j! e_j.
    const int top = r + s;
    std::vector<mpq_class> e(static_cast<std::size_t>(top + 1), mpq_class(0));
    e[0] = 1;
    for (std::uint32_t p : primes) {
        const mpq_class inv(mpz_class(1), mpz_class(static_cast<unsigned long>(p)));
        for (int j = top; j >= 1; --j) e[static_cast<std::size_t>(j)] += e[static_cast<std::size_t>(j - 1)] * inv;
    }
    rep.rhs = 0;
    for (int m = 0; m <= std::min(r, s); ++m) {
        const auto len = static_cast<unsigned long>(r + s - m);
        const mpz_class mult = binomial(static_cast<unsigned long>(r), static_cast<unsigned long>(m)) *
                               binomial(static_cast<unsigned long>(s), static_cast<unsigned long>(m)) *
                               factorial(static_cast<unsigned long>(m));
        mpq_class term = mpq_class(mult * factorial(len)) * e[len];
        term.canonicalize();
        rep.terms.push_back(term);
        rep.rhs += term;
    }
    rep.equal = rep.lhs == rep.rhs;
    return rep;
}

bool double_factorial_identity(int k) {
    if (k < 0 || k > 40 || k % 2 != 0) {
        std::ostringstream msg;
        msg << "double_factorial_identity: k must be even in [0, 40] (got " << k << ")";
        throw DomainError(msg.str());
    }
    mpz_class odd_df = 1;
    for (int j = k - 1; j > 1; j -= 2) odd_df *= j;
    mpz_class pow2;
    mpz_ui_pow_ui(pow2.get_mpz_t(), 2, static_cast<unsigned long>(k / 2));
    return factorial(static_cast<unsigned long>(k)) == pow2 * factorial(static_cast<unsigned long>(k / 2)) * odd_df;
}

}  // namespace tiltzeta
