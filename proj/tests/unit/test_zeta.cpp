#include <cmath>
#include <complex>
#include <random>

#include <doctest.h>

#include "tiltzeta/zeta.hpp"
#include "zeta_oracle.hpp"

using namespace tiltzeta;

TEST_SUITE("zeta") {

TEST_CASE("theta values") {
    CHECK(riemann_siegel_theta(0.0) == 0.0);
    CHECK(std::abs(riemann_siegel_theta(17.8455995404)) < 1e-9);
    for (double t : {5.0, 9.99, 10.0, 100.0, 1234.5, 1e5, 1e7}) {
        const double ref = oracle::theta(oracle::Real(t)).convert_to<double>();
        CHECK(std::abs(riemann_siegel_theta(t) - ref) <= std::max(1e-10, 4e-16 * std::abs(ref)));
        CHECK(riemann_siegel_theta(-t) == -riemann_siegel_theta(t));
    }
}

TEST_CASE("theta derivative") {
    for (double t : {20.0, 500.0, 1e5}) {
        const double h = 1e-3;
        const double fd = (riemann_siegel_theta(t + h) - riemann_siegel_theta(t - h)) / (2 * h);
        CHECK(riemann_siegel_theta_prime(t) == doctest::Approx(fd).epsilon(1e-7));
    }
}

TEST_CASE("zeta at one half") {
    const CriticalSample s = zeta_half(0.0);
    CHECK(s.zeta_re == doctest::Approx(-1.4603545088095868).epsilon(1e-12));
    CHECK(std::abs(s.zeta_im) < 1e-15);
    CHECK(hardy_Z(0.0).value == doctest::Approx(-1.4603545088095868).epsilon(1e-12));
}

TEST_CASE("first zero") {
    const CriticalSample s = zeta_half(14.1347251417);
    CHECK(s.abs2 <= 1e-12);
    CHECK(std::abs(hardy_Z(14.1347251417).value) < 1e-6);
}

TEST_CASE("sample invariants") {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> u(1e2, 1e6);
    for (int i = 0; i < 1000; ++i) {
        const double t = u(rng);
        const CriticalSample s = zeta_half(t);
        CHECK(s.abs2 == doctest::Approx(s.zeta_re * s.zeta_re + s.zeta_im * s.zeta_im).epsilon(1e-12));
        if (!s.on_zero()) CHECK(s.log_abs == doctest::Approx(0.5 * std::log(s.abs2)).epsilon(1e-12));
        const std::complex<double> rot = s.zeta() * std::polar(1.0, riemann_siegel_theta(t));
        CHECK(std::abs(rot.imag()) <= s.err_bound + 1e-12 * std::abs(rot.real()) + 1e-13);
    }
}

TEST_CASE("conjugate symmetry and evenness of Z") {
    for (double t : {3.0, 25.0, 31.0, 777.7, 54321.0}) {
        const CriticalSample a = zeta_half(t);
        const CriticalSample b = zeta_half(-t);
        CHECK(b.zeta_re == doctest::Approx(a.zeta_re).epsilon(1e-12));
        CHECK(b.zeta_im == doctest::Approx(-a.zeta_im).epsilon(1e-12));
        CHECK(hardy_Z(-t).value == hardy_Z(t).value);
    }
}

TEST_CASE("agreement with the multiprecision oracle") {
    for (double t : {10.0, 17.0, 29.9, 30.0, 30.1, 100.0, 1000.0, 12345.678, 99999.0}) {
        const double ref = oracle::hardy_Z(oracle::Real(t)).convert_to<double>();
        const HardyZ z = hardy_Z(t);
        CHECK(std::abs(z.value - ref) <= z.err_bound);
        const HardyZ zx = hardy_Z(t, Precision::extended);
        CHECK(std::abs(zx.value - ref) <= zx.err_bound);
    }
}

TEST_CASE("Euler-Maclaurin branch") {
    for (double t : {1.0, 14.0, 40.0}) {
        const auto o = oracle::zeta_half(oracle::Real(t));
        const std::complex<double> z = zeta_half_euler_maclaurin(t);
        CHECK(std::abs(z.real() - o.re.convert_to<double>()) < 1e-12);
        CHECK(std::abs(z.imag() - o.im.convert_to<double>()) < 1e-12);
    }
}

TEST_CASE("error bound envelope") {
    CHECK(hardy_Z(1e3).err_bound == doctest::Approx(1e-8));
    CHECK(hardy_Z(40.0).err_bound == doctest::Approx(std::max(1e-8, 0.05 * std::pow(40.0, -2.25))));
}

TEST_CASE("floor sentinel") {
    CriticalSample s;
    s.abs2 = 1e-31;
    CHECK(s.on_zero());
}

}
