#include <cmath>
#include <map>
#include <numeric>
#include <sstream>
#include <utility>

#include "tiltzeta/error.hpp"
#include "tiltzeta/moment_theory.hpp"

namespace tiltzeta {

namespace {

// Bivariate polynomial in X, Y truncated to a <= R, b <= S, a + b <= K.
template <class Num>
class TruncatedSeries {
public:
    TruncatedSeries(int R, int S, int K) : R_(R), S_(S), K_(K), c_((R + 1) * (S + 1)) { at(0, 0) = Num(1); }

    bool in_range(int a, int b) const { return a <= R_ && b <= S_ && a + b <= K_; }
    Num& at(int a, int b) { return c_[static_cast<std::size_t>(a * (S_ + 1) + b)]; }
    const Num& at(int a, int b) const { return c_[static_cast<std::size_t>(a * (S_ + 1) + b)]; }

    // *this *= f, where f(0,0) == 1. In place, highest degree first.
    void multiply_unit(const TruncatedSeries& f) {
        for (int i = R_; i >= 0; --i) {
            for (int j = S_; j >= 0; --j) {
                if (!in_range(i, j)) continue;
                Num acc = at(i, j);
                for (int a = 0; a <= i; ++a) {
                    for (int b = 0; b <= j; ++b) {
                        if (a == 0 && b == 0) continue;
                        acc += at(i - a, j - b) * f.at(a, b);
                    }
                }
                at(i, j) = acc;
            }
        }
    }

    int R() const { return R_; }
    int S() const { return S_; }

private:
    int R_, S_, K_;
    std::vector<Num> c_;
};

// Value and first w-derivative.
struct Dual {
    HighPrecision v;
    HighPrecision d;

    Dual() = default;
    explicit Dual(int x) : v(x), d(0) {}
    Dual(HighPrecision value, HighPrecision deriv) : v(std::move(value)), d(std::move(deriv)) {}

    Dual& operator+=(const Dual& o) {
        v += o.v;
        d += o.d;
        return *this;
    }
    friend Dual operator*(const Dual& a, const Dual& b) { return {a.v * b.v, a.v * b.d + a.d * b.v}; }
};

mpz_class factorial(int n) {
    mpz_class f;
    mpz_fac_ui(f.get_mpz_t(), static_cast<unsigned long>(n));
    return f;
}

double factorial_d(int n) { return std::tgamma(n + 1.0); }

void check_orders(int r, int s, const char* who) {
    if (r < 0 || s < 0) {
        std::ostringstream msg;
        msg << who << ": r and s must be non-negative (got " << r << ", " << s << ")";
        throw DomainError(msg.str());
    }
}

// Local factor at w = 0 in exact rationals: 1/(a! b! p^max(a,b)).
TruncatedSeries<mpq_class> exact_local(std::uint32_t p, int R, int S, int K) {
    TruncatedSeries<mpq_class> f(R, S, K);
    for (int a = 0; a <= R; ++a) {
        for (int b = 0; b <= S; ++b) {
            if (!f.in_range(a, b) || (a == 0 && b == 0)) continue;
            mpz_class den;
            mpz_ui_pow_ui(den.get_mpz_t(), p, static_cast<unsigned long>(std::max(a, b)));
            den *= factorial(a) * factorial(b);
            f.at(a, b) = mpq_class(mpz_class(1), den);
        }
    }
    return f;
}

// Local factor at w = 0 with derivative: p^{e(w)} / (a! b!), e'(w) = 2 min - a - b.
TruncatedSeries<Dual> dual_local(std::uint32_t p, int R, int S, int K) {
    TruncatedSeries<Dual> f(R, S, K);
    const HighPrecision hp_p(p);
    const HighPrecision log_p = log(hp_p);
    for (int a = 0; a <= R; ++a) {
        for (int b = 0; b <= S; ++b) {
            if (!f.in_range(a, b) || (a == 0 && b == 0)) continue;
            HighPrecision v = HighPrecision(1) / (pow(hp_p, std::max(a, b)) * factorial_d(a) * factorial_d(b));
            const int slope = 2 * std::min(a, b) - a - b;
            f.at(a, b) = Dual(v, v * log_p * slope);
        }
    }
    return f;
}

// Local factor at general w in high precision.
TruncatedSeries<HighPrecision> real_local(std::uint32_t p, double w, int R, int S, int K) {
    TruncatedSeries<HighPrecision> f(R, S, K);
    const HighPrecision log_p = log(HighPrecision(p));
    const HighPrecision hw(w);
    for (int a = 0; a <= R; ++a) {
        for (int b = 0; b <= S; ++b) {
            if (!f.in_range(a, b) || (a == 0 && b == 0)) continue;
            const HighPrecision e = std::min(a, b) * (2 * hw + 1) - (a + b) * (hw + 1);
            f.at(a, b) = exp(e * log_p) / (factorial_d(a) * factorial_d(b));
        }
    }
    return f;
}

// Ordered r-tuples of primes aggregated by their product.
std::map<std::uint64_t, std::uint64_t> tuple_products(std::span<const std::uint32_t> primes, int r) {
    std::map<std::uint64_t, std::uint64_t> cur{{1, 1}};
    for (int i = 0; i < r; ++i) {
        std::map<std::uint64_t, std::uint64_t> next;
        for (const auto& [n, c] : cur) {
            for (std::uint32_t p : primes) next[n * p] += c;
        }
        cur = std::move(next);
    }
    return cur;
}

struct ExhaustiveTerms {
    // (g, nm) -> number of ordered tuple pairs
    std::map<std::pair<std::uint64_t, std::uint64_t>, std::uint64_t> by_gcd_product;
};

ExhaustiveTerms enumerate_tuples(int r, int s, const PrimeTable& table) {
    const auto primes = table.primes();
    const double tuples = std::pow(static_cast<double>(primes.size()), r + s);
    if (tuples > kMaxExhaustiveTuples) {
        std::ostringstream msg;
        msg << "gcd_sum_f: " << tuples << " tuples exceed the exhaustive limit " << kMaxExhaustiveTuples
            << "; use factored mode";
        throw DomainError(msg.str());
    }
    if (!primes.empty() && (r + s) * std::log2(static_cast<double>(primes.back())) >= 63.0) {
        throw DomainError("gcd_sum_f: tuple products overflow 64 bits; use factored mode");
    }
    ExhaustiveTerms out;
    const auto ns = tuple_products(primes, r);
    const auto ms = tuple_products(primes, s);
    for (const auto& [n, cn] : ns) {
        for (const auto& [m, cm] : ms) out.by_gcd_product[{std::gcd(n, m), n * m}] += cn * cm;
    }
    return out;
}

GcdSumResult exhaustive_sum(int r, int s, const PrimeTable& table, double w) {
    const ExhaustiveTerms terms = enumerate_tuples(r, s, table);
    GcdSumResult out;
    out.r = r;
    out.s = s;
    out.w = w;
    long double deriv = 0.0L;
    if (w == 0.0) {
        mpq_class total = 0;
        for (const auto& [key, count] : terms.by_gcd_product) {
            const auto [g, nm] = key;
            mpq_class term(mpz_class(static_cast<unsigned long>(count)), mpz_class(static_cast<unsigned long>(nm / g)));
            term.canonicalize();
            total += term;
        }
        out.exact = total;
        out.value = total.get_d();
    } else {
        long double total = 0.0L;
        for (const auto& [key, count] : terms.by_gcd_product) {
            const auto [g, nm] = key;
            const long double lg = std::log(static_cast<long double>(g));
            const long double lnm = std::log(static_cast<long double>(nm));
            total += count * std::exp((2.0L * w + 1.0L) * lg - (w + 1.0L) * lnm);
        }
        out.value = static_cast<double>(total);
    }
    for (const auto& [key, count] : terms.by_gcd_product) {
        const auto [g, nm] = key;
        const long double ratio = static_cast<long double>(g) / static_cast<long double>(nm);
        deriv += count * ratio * std::log(static_cast<long double>(g) * ratio);
    }
    out.derivative_at_0 = static_cast<double>(deriv);
    return out;
}

GcdSumResult factored_sum(int r, int s, const PrimeTable& table, double w) {
    GcdSumResult out;
    out.r = r;
    out.s = s;
    out.w = w;
    const int K = r + s;
    const auto primes = table.primes();
    if (w == 0.0) {
        TruncatedSeries<Dual> g(r, s, K);
        for (std::uint32_t p : primes) g.multiply_unit(dual_local(p, r, s, K));
        const double scale = factorial_d(r) * factorial_d(s);
        out.value = static_cast<double>(g.at(r, s).v * scale);
        out.derivative_at_0 = static_cast<double>(g.at(r, s).d * scale);
        if (table.x_cutoff() <= 1e3 && K <= 6) {
            TruncatedSeries<mpq_class> q(r, s, K);
            for (std::uint32_t p : primes) q.multiply_unit(exact_local(p, r, s, K));
            mpq_class v = q.at(r, s) * mpq_class(factorial(r) * factorial(s));
            v.canonicalize();
            out.exact = v;
            out.value = v.get_d();
        }
    } else {
        TruncatedSeries<HighPrecision> g(r, s, K);
        for (std::uint32_t p : primes) g.multiply_unit(real_local(p, w, r, s, K));
        out.value = static_cast<double>(g.at(r, s) * factorial_d(r) * factorial_d(s));
    }
    return out;
}

}  // namespace

GcdSumResult gcd_sum_f(int r, int s, const PrimeTable& table, double w, GcdSumMode mode) {
    check_orders(r, s, "gcd_sum_f");
    if (mode == GcdSumMode::exhaustive) {
        if (r + s > 8) throw DomainError("gcd_sum_f: exhaustive mode supports r + s <= 8; use factored mode");
        return exhaustive_sum(r, s, table, w);
    }
    if (r + s > 12) throw DomainError("gcd_sum_f: factored mode supports r + s <= 12");
    return factored_sum(r, s, table, w);
}

double gcd_sum_f_derivative(int r, int s, const PrimeTable& table, GcdSumMode mode) {
    return *gcd_sum_f(r, s, table, 0.0, mode).derivative_at_0;
}

MixedMomentTable::MixedMomentTable(const PrimeTable& table, int max_degree)
    : degree_(max_degree), x_(table.x_cutoff()) {
    if (max_degree < 0 || max_degree > 12) throw DomainError("MixedMomentTable: degree must be in [0, 12]");
    const int K = max_degree;
    TruncatedSeries<Dual> g(K, K, K);
    mertens_ = 0;
    for (std::uint32_t p : table.primes()) {
        g.multiply_unit(dual_local(p, K, K, K));
        mertens_ += HighPrecision(1) / p;
    }
    const bool keep_exact = x_ <= 1e3 && K <= 6;
    std::optional<TruncatedSeries<mpq_class>> q;
    if (keep_exact) {
        q.emplace(K, K, K);
        for (std::uint32_t p : table.primes()) q->multiply_unit(exact_local(p, K, K, K));
    }
    const std::size_t n = static_cast<std::size_t>((K + 1) * (K + 1));
    value_.resize(n);
    deriv_.resize(n);
    if (keep_exact) exact_.resize(n);
    for (int r = 0; r <= K; ++r) {
        for (int s = 0; r + s <= K; ++s) {
            const double scale = factorial_d(r) * factorial_d(s);
            value_[index(r, s)] = g.at(r, s).v * scale;
            deriv_[index(r, s)] = g.at(r, s).d * scale;
            if (keep_exact) {
                mpq_class v = q->at(r, s) * mpq_class(factorial(r) * factorial(s));
                v.canonicalize();
                exact_[index(r, s)] = v;
            }
        }
    }
}

std::size_t MixedMomentTable::index(int r, int s) const {
    if (r < 0 || s < 0 || r + s > degree_) {
        std::ostringstream msg;
        msg << "MixedMomentTable: (" << r << ", " << s << ") outside degree " << degree_;
        throw DomainError(msg.str());
    }
    return static_cast<std::size_t>(r * (degree_ + 1) + s);
}

const HighPrecision& MixedMomentTable::f0(int r, int s) const { return value_[index(r, s)]; }

const HighPrecision& MixedMomentTable::f0_derivative(int r, int s) const { return deriv_[index(r, s)]; }

const mpq_class& MixedMomentTable::f0_exact(int r, int s) const {
    if (exact_.empty()) throw DomainError("MixedMomentTable: no exact values kept for this table");
    return exact_[index(r, s)];
}

}  // namespace tiltzeta
