#include <cmath>
#include <numbers>
#include <random>
#include <vector>

#include <doctest.h>

#include "gcd_oracle.hpp"
#include "tiltzeta/error.hpp"
#include "tiltzeta/moment_theory.hpp"

using namespace tiltzeta;

namespace {

std::vector<std::uint32_t> primes_of(const PrimeTable& t) { return {t.primes().begin(), t.primes().end()}; }

}  // namespace

TEST_SUITE("moment_theory") {

TEST_CASE("constant c") {
    CHECK(constant_c() == doctest::Approx(-0.2971513755).epsilon(1e-10));
    const double g = 0.57721566490153286;
    CHECK(constant_c() == doctest::Approx(2 * g + std::log(4 / (2 * std::numbers::pi)) - 1).epsilon(1e-14));
}

TEST_CASE("twisted main term") {
    TwistedMomentSpec s;
    s.a = {{1, 1.0}};
    s.b = {{1, 1.0}};
    s.T = 1e6;
    CHECK(bchb_main_term(s) == doctest::Approx(1e6 * (std::log(1e6) + constant_c())).epsilon(1e-15));
    s.a = {{7, 1.0}};
    s.theta = 0.2;
    CHECK(bchb_main_term(s) == doctest::Approx(1e6 / 7 * (std::log(1e6 / 7) + constant_c())).epsilon(1e-14));
    s.theta = 0.5;
    s.sigma = 0.3;
    CHECK_THROWS_AS(s.validate(), DomainError);
    s.theta = 0.1;
    s.sigma = 0.1;
    s.b = {{1000000, 1.0}};
    CHECK_THROWS_AS(s.validate(), DomainError);
}

TEST_CASE("gcd sum small cases") {
    const PrimeTable t3 = sieve_primes(3);
    const GcdSumResult r = gcd_sum_f(1, 1, t3);
    REQUIRE(r.exact);
    CHECK(*r.exact == mpq_class(7, 6));
    CHECK(*gcd_sum_f(1, 1, t3, 0.0, GcdSumMode::factored).exact == mpq_class(7, 6));

    const PrimeTable t5 = sieve_primes(5);
    const mpq_class L(31, 30);
    const mpq_class inv_sq = mpq_class(1, 4) + mpq_class(1, 9) + mpq_class(1, 25);
    CHECK(*gcd_sum_f(1, 1, t5).exact == L * L - inv_sq + L);
    CHECK(*gcd_sum_f(1, 0, t5).exact == L);
    CHECK(*gcd_sum_f(0, 0, t5).exact == 1);

    const double w = 0.3;
    double expect = 0.0;
    for (double p : {2.0, 3.0, 5.0}) expect += std::pow(p, -(w + 1));
    CHECK(gcd_sum_f(1, 0, t5, w).value == doctest::Approx(expect).epsilon(1e-14));
    CHECK(gcd_sum_f(0, 1, t5, w, GcdSumMode::factored).value == doctest::Approx(expect).epsilon(1e-14));
    CHECK_FALSE(gcd_sum_f(1, 0, t5, w).exact);
}

TEST_CASE("exhaustive and factored modes agree with the brute oracle") {
    const PrimeTable t13 = sieve_primes(13);
    const auto primes = primes_of(t13);
    for (int r = 0; r <= 5; ++r) {
        for (int s = 0; r + s <= 5; ++s) {
            const mpq_class brute = oracle::gcd_sum_brute(r, s, primes);
            CHECK(*gcd_sum_f(r, s, t13, 0.0, GcdSumMode::exhaustive).exact == brute);
            CHECK(*gcd_sum_f(r, s, t13, 0.0, GcdSumMode::factored).exact == brute);
        }
    }
}

TEST_CASE("derivative at zero") {
    const PrimeTable t3 = sieve_primes(3);
    // diagonal pairs have g^2 = nm, so only the two cross terms survive
    const double hand = 2 * (std::log(1.0 / 6) / 6);
    CHECK(gcd_sum_f_derivative(1, 1, t3) == doctest::Approx(hand).epsilon(1e-14));
    CHECK(gcd_sum_f_derivative(1, 1, t3, GcdSumMode::exhaustive) == doctest::Approx(hand).epsilon(1e-14));
    CHECK(gcd_sum_f_derivative(1, 0, sieve_primes(100)) ==
          doctest::Approx(-sum_log_p_over_p(sieve_primes(100))).epsilon(1e-13));
    const PrimeTable t13 = sieve_primes(13);
    for (int r = 0; r <= 3; ++r) {
        for (int s = 0; s <= 3; ++s) {
            const double brute = double(oracle::gcd_sum_derivative_brute(r, s, primes_of(t13)));
            CHECK(gcd_sum_f_derivative(r, s, t13) == doctest::Approx(brute).epsilon(1e-12));
            CHECK(gcd_sum_f_derivative(r, s, t13) == doctest::Approx(gcd_sum_f_derivative(s, r, t13)).epsilon(1e-14));
        }
    }
}

TEST_CASE("derivative matches central differences") {
    std::mt19937_64 rng(3);
    std::uniform_int_distribution<int> deg(0, 3);
    std::uniform_real_distribution<double> cut(2.0, 60.0);
    const double h = 1e-6;
    for (int i = 0; i < 20; ++i) {
        const int r = deg(rng);
        const int s = deg(rng);
        if (r + s == 0) continue;
        const PrimeTable t = sieve_primes(cut(rng));
        const double fd = (gcd_sum_f(r, s, t, h, GcdSumMode::factored).value -
                           gcd_sum_f(r, s, t, -h, GcdSumMode::factored).value) /
                          (2 * h);
        CHECK(gcd_sum_f_derivative(r, s, t) == doctest::Approx(fd).epsilon(1e-6));
    }
}

TEST_CASE("mixed moment table") {
    const PrimeTable t = sieve_primes(100);
    const MixedMomentTable m(t, 4);
    CHECK(m.has_exact());
    CHECK(m.f0_exact(2, 1) == *gcd_sum_f(2, 1, t, 0.0, GcdSumMode::factored).exact);
    CHECK(double(m.f0_derivative(2, 2)) == doctest::Approx(gcd_sum_f_derivative(2, 2, t)).epsilon(1e-13));
    CHECK(double(m.mertens()) == doctest::Approx(mertens_L(t)).epsilon(1e-15));
    const MixedMomentTable big(sieve_primes(1e4), 4);
    CHECK_FALSE(big.has_exact());
    CHECK_THROWS_AS(big.f0_exact(1, 1), DomainError);
}

TEST_CASE("predicted mixed moments") {
    const double T = 1e5;
    const double lT = std::log(T);
    const PrimeTable t = sieve_primes(1000);
    CHECK(predicted_mixed_moment(0, 0, t, T) == doctest::Approx((lT + constant_c()) / lT).epsilon(1e-14));
    const double expect = (lT + constant_c()) * mertens_L(t) / lT - sum_log_p_over_p(t) / lT;
    CHECK(predicted_mixed_moment(1, 0, t, T) == doctest::Approx(expect).epsilon(1e-13));
    CHECK(predicted_central_moment(0, t, T) == doctest::Approx((lT + constant_c()) / lT).epsilon(1e-13));
}

TEST_CASE("gaussian target") {
    CHECK(gaussian_target(2, 2.0) == 1.0);
    CHECK(gaussian_target(4, 2.0) == 3.0);
    CHECK(gaussian_target(3, 2.0) == 0.0);
    for (double L : {0.7, 2.0, 3.3}) {
        double m = 1.0;
        for (int k = 2; k <= 12; k += 2) {
            m *= (k - 1) * (L / 2);
            CHECK(gaussian_target(k, L) == doctest::Approx(m).epsilon(1e-14));
        }
    }
}

TEST_CASE("cancellation toward the gaussian") {
    const double T = 1e10;
    std::vector<double> ratios;
    for (double x : {1e2, 1e3, 1e4}) {
        const PrimeTable t = sieve_primes(x);
        const double L = mertens_L(t);
        const double m2 = predicted_central_moment(2, t, T);
        CHECK(std::abs(m2 - L / 2) <= 3 + 2 * L * std::log(x) / std::log(T));
        ratios.push_back(predicted_central_moment(4, t, T) / (L * L / 4));
    }
    const CancellationFit fit = fit_cancellation({1e2, 1e3, 1e4}, T);
    CHECK(fit.C4 > 0.0);
    for (std::size_t i = 0; i < ratios.size(); ++i) {
        CHECK(std::abs(ratios[i] - 3) <= fit.C4 / std::sqrt(fit.L[i]) + 1e-12);
        CHECK(fit.ratio4[i] == doctest::Approx(ratios[i]).epsilon(1e-12));
    }
}

TEST_CASE("prediction table") {
    const auto rows = prediction_table({100.0}, 4, 1e8);
    REQUIRE(rows.size() == 5);
    CHECK(rows[2].k == 2);
    CHECK(rows[2].residual == doctest::Approx(rows[2].predicted - rows[2].gaussian_target));
    CHECK(prediction_csv(rows).rfind("k,", 0) == 0);
    CHECK_THROWS_AS(prediction_table({100.0}, 7, 1e8), DomainError);
}

TEST_CASE("repetition decomposition") {
    const RepetitionReport a = repetition_decomposition_check(1, 1, sieve_primes(3));
    CHECK(a.equal);
    CHECK(a.lhs == mpq_class(7, 6));
    REQUIRE(a.terms.size() == 2);
    CHECK(a.terms[0] == mpq_class(1, 3));
    CHECK(a.terms[1] == mpq_class(5, 6));
    CHECK(repetition_decomposition_check(2, 1, sieve_primes(5)).equal);
    CHECK(repetition_decomposition_check(0, 3, sieve_primes(7)).equal);
    CHECK(repetition_decomposition_check(0, 3, sieve_primes(7)).terms.size() == 1);
    for (int r = 0; r <= 3; ++r)
        for (int s = 0; s <= 3; ++s) CHECK(repetition_decomposition_check(r, s, sieve_primes(13)).equal);
}

TEST_CASE("double factorial identity") {
    for (int k = 0; k <= 40; k += 2) CHECK(double_factorial_identity(k));
    CHECK_THROWS_AS(double_factorial_identity(3), DomainError);
    CHECK_THROWS_AS(double_factorial_identity(42), DomainError);
}

}
