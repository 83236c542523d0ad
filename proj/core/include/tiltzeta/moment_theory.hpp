#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_bin_float.hpp>
#include <gmpxx.h>

#include "tiltzeta/primes.hpp"

namespace tiltzeta {

using HighPrecision = boost::multiprecision::cpp_bin_float_50;

/// c = 2 gamma + log 4 - log 2 pi - 1.
double constant_c();

/// Coefficients of A(s) = sum a(n) n^-s and B(s) = sum b(m) m^-s.
struct TwistedMomentSpec {
    std::map<std::uint64_t, double> a;
    std::map<std::uint64_t, double> b;
    double theta = 0.0;
    double sigma = 0.0;
    double T = 0.0;

    /// theta + 2 sigma < 1, supports within T^theta / T^sigma, |a(n)| <= n^0.01.
    void validate() const;
};

inline constexpr std::size_t kMaxBchbPairs = 1'000'000;

/// T sum_{m,n} (a*b)(n) b(m) / [n,m] * (log(T (n,m)^2 / nm) + c).
double bchb_main_term(const TwistedMomentSpec& spec);

enum class GcdSumMode { exhaustive, factored };

/// Ordered tuples beyond this count are refused in exhaustive mode.
inline constexpr double kMaxExhaustiveTuples = 5e7;

struct GcdSumResult {
    double value = 0.0;
    /// Present when w == 0 and the sum was done in rational arithmetic.
    std::optional<mpq_class> exact;
    int r = 0;
    int s = 0;
    double w = 0.0;
    std::optional<double> derivative_at_0;
};

/// f(w) = sum over prime tuples p_1..p_r, q_1..q_s of (n,m)^{2w+1} / (nm)^{w+1}
/// with n = p_1...p_r, m = q_1...q_s.
///
/// Exhaustive mode enumerates the tuples. Factored mode uses the per-prime
/// local factors sum_{a,b} X^a Y^b / (a! b!) p^{min(a,b)(2w+1) - (a+b)(w+1)}.
/// Both are exact at w = 0; factored mode also accepts tables with x <= 1e3
/// exactly and falls back to 50-digit floats beyond.
GcdSumResult gcd_sum_f(int r, int s, const PrimeTable& table, double w = 0.0,
                       GcdSumMode mode = GcdSumMode::exhaustive);

/// d/dw f(w) at w = 0, i.e. sum (g/(nm)) log(g^2/(nm)).
double gcd_sum_f_derivative(int r, int s, const PrimeTable& table,
                            GcdSumMode mode = GcdSumMode::factored);

/// f(0) and f'(0) for every r + s <= max_degree from one factored product.
class MixedMomentTable {
public:
    /// Exact rationals are kept when x <= 1e3 and max_degree <= 6.
    MixedMomentTable(const PrimeTable& table, int max_degree);

    int max_degree() const noexcept { return degree_; }
    double x() const noexcept { return x_; }
    bool has_exact() const noexcept { return !exact_.empty(); }

    const HighPrecision& f0(int r, int s) const;
    const HighPrecision& f0_derivative(int r, int s) const;
    /// Throws DomainError when no exact table is kept.
    const mpq_class& f0_exact(int r, int s) const;

    /// sum 1/p over the table.
    const HighPrecision& mertens() const noexcept { return mertens_; }

private:
    std::size_t index(int r, int s) const;

    int degree_;
    double x_;
    std::vector<HighPrecision> value_;
    std::vector<HighPrecision> deriv_;
    std::vector<mpq_class> exact_;
    HighPrecision mertens_;
};

/// (1/(T log T)) [T (log T + c) f(0) + T f'(0)].
double predicted_mixed_moment(int r, int s, const PrimeTable& table, double T);
HighPrecision predicted_mixed_moment(int r, int s, const MixedMomentTable& table, double T);

inline constexpr int kMaxPredictedMoment = 6;

/// sum_{j+h=k} C(k,h) (-L)^j 2^-h sum_{r+s=h} C(h,r) M(r,s), L = sum 1/p.
double predicted_central_moment(int k, const PrimeTable& table, double T);
HighPrecision predicted_central_moment(int k, const MixedMomentTable& table, double T);

/// (L/2)^{k/2} (k-1)!! for even k, 0 for odd k.
double gaussian_target(int k, double L);

struct PredictionRow {
    int k = 0;
    double x = 0.0;
    double L = 0.0;
    double predicted = 0.0;
    double gaussian_target = 0.0;
    double residual = 0.0;
    /// residual / L^{(k-1)/2}
    double residual_over_L_half_power = 0.0;
};

std::vector<PredictionRow> prediction_table(const std::vector<double>& xs, int k_max, double T);
std::string prediction_csv(const std::vector<PredictionRow>& rows);

/// max over the x grid of |M_4 / (L/2)^2 - 3| * sqrt(L).
struct CancellationFit {
    std::vector<double> xs;
    std::vector<double> L;
    std::vector<double> ratio4;
    double C4 = 0.0;
};

CancellationFit fit_cancellation(const std::vector<double>& xs, double T);

struct RepetitionReport {
    bool equal = false;
    /// Sum over tuples with distinct entries within each of p and q.
    mpq_class lhs;
    /// sum_{m <= min(r,s)} C(r,m) C(s,m) m! * sum over distinct (r+s-m)-tuples.
    mpq_class rhs;
    /// Per-m contributions to rhs.
    std::vector<mpq_class> terms;
};

inline constexpr double kMaxRepetitionTuples = 1e7;

RepetitionReport repetition_decomposition_check(int r, int s, const PrimeTable& table);

/// k! == 2^{k/2} (k/2)! (k-1)!! for even 0 <= k <= 40.
bool double_factorial_identity(int k);

}  // namespace tiltzeta
