#include <cmath>

#include <doctest.h>

#include "prime_oracle.hpp"
#include "tiltzeta/error.hpp"
#include "tiltzeta/primes.hpp"

using namespace tiltzeta;

TEST_SUITE("primes") {

TEST_CASE("small cutoffs") {
    const PrimeTable t10 = sieve_primes(10);
    REQUIRE(t10.size() == 4);
    CHECK(t10.primes()[0] == 2);
    CHECK(t10.primes()[3] == 7);
    const PrimeTable t2 = sieve_primes(2);
    REQUIRE(t2.size() == 1);
    CHECK(t2.primes()[0] == 2);
    CHECK_THROWS_AS(sieve_primes(1.5), DomainError);
}

TEST_CASE("sieve matches trial division") {
    const PrimeTable table = sieve_primes(200000);
    const auto expect = oracle::primes_trial(200000);
    REQUIRE(table.size() == expect.size());
    for (std::size_t i = 0; i < expect.size(); ++i) {
        REQUIRE(table.primes()[i] == expect[i]);
        CHECK(std::abs(table.log_p()[i] - std::log(double(expect[i]))) <= 1e-14 * std::log(double(expect[i])));
    }
}

TEST_CASE("prime count to one million") {
    CHECK(sieve_primes(1e6).size() == 78498);
}

TEST_CASE("truncation") {
    const PrimeTable table = sieve_primes(1000);
    const PrimeTable small = table.truncated(100);
    CHECK(small.size() == 25);
    CHECK(small.primes().back() == 97);
}

TEST_CASE("mertens sum") {
    CHECK(mertens_L(sieve_primes(10)) == doctest::Approx(247.0 / 210.0).epsilon(1e-15));
    CHECK(mertens_L(sieve_primes(2)) == 0.5);
    double prev = 0.0;
    for (double x : {1e3, 1e4, 1e5, 1e6}) {
        const double L = mertens_L(sieve_primes(x));
        CHECK(std::abs(L - (std::log(std::log(x)) + 0.26149721)) < 0.05);
        CHECK(L >= prev);
        prev = L;
    }
}

TEST_CASE("schedule") {
    const double T0 = std::exp(std::exp(std::exp(1.0)));
    const Schedule s0 = schedule_x(T0, 1);
    CHECK(s0.epsilon == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(s0.x == doctest::Approx(T0).epsilon(1e-10));
    CHECK_FALSE(s0.asymptotic_regime);

    const Schedule s = schedule_x(1e6, 2);
    const double expo = 1.0 / (2.0 * std::log(std::log(std::log(1e6))));
    CHECK(s.x == doctest::Approx(std::pow(1e6, expo)).epsilon(1e-12));
    CHECK(s.x == doctest::Approx(1.28e3).epsilon(0.01));

    CHECK_THROWS_AS(schedule_x(10, 1), DomainError);
    CHECK_THROWS_AS(schedule_x(1e6, 0), DomainError);
}

TEST_CASE("default length") {
    CHECK(default_x(1e4) == doctest::Approx(100.0));
    CHECK(default_x(1e12) == doctest::Approx(1e5));
}

TEST_CASE("von Mangoldt") {
    CHECK(lambda_von_mangoldt(1) == 0.0);
    CHECK(lambda_von_mangoldt(8) == doctest::Approx(std::log(2.0)));
    CHECK(lambda_von_mangoldt(6) == 0.0);
    CHECK(lambda_von_mangoldt(997) == doctest::Approx(std::log(997.0)));
    const std::uint64_t m61 = (std::uint64_t{1} << 61) - 1;
    CHECK(lambda_von_mangoldt(m61) == doctest::Approx(std::log(double(m61))));
    const std::uint64_t q = 2147483647ULL;
    CHECK(lambda_von_mangoldt(q * q) == doctest::Approx(std::log(double(q))));
    CHECK(lambda_von_mangoldt(q * 2147483629ULL) == 0.0);
}

TEST_CASE("psi by prime powers") {
    double psi_lambda = 0.0;
    for (std::uint64_t n = 1; n <= 10000; ++n) psi_lambda += lambda_von_mangoldt(n);
    double psi = 0.0;
    for (std::uint32_t p : oracle::primes_trial(10000)) {
        for (std::uint64_t q = p; q <= 10000; q *= p) psi += std::log(double(p));
    }
    CHECK(psi_lambda == doctest::Approx(psi).epsilon(1e-12));
}

TEST_CASE("primality agrees with trial division") {
    for (std::uint64_t n = 0; n < 20000; ++n) REQUIRE(is_prime_u64(n) == oracle::is_prime_trial(n));
    CHECK(is_prime_u64(18446744073709551557ULL));
    CHECK_FALSE(is_prime_u64(3215031751ULL));
}

TEST_CASE("prime powers") {
    const auto pp = prime_powers(sieve_primes(10), 0, 10, 2);
    REQUIRE(pp.size() == 3);
    CHECK(pp[0].n == 4);
    CHECK(pp[1].n == 8);
    CHECK(pp[1].r == 3);
    CHECK(pp[2].n == 9);
    CHECK(pp[2].p == 3);
}

TEST_CASE("sum of log p over p") {
    CHECK(sum_log_p_over_p(sieve_primes(5)) ==
          doctest::Approx(std::log(2.0) / 2 + std::log(3.0) / 3 + std::log(5.0) / 5));
}

}
