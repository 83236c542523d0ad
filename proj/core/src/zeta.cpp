#include "tiltzeta/zeta.hpp"

#include <array>
#include <cmath>
#include <numbers>

#include <boost/math/special_functions/lambert_w.hpp>

namespace tiltzeta {

namespace {

#include "rs_coefficients.inc"

constexpr long double kPiL = 3.141592653589793238462643383279502884L;
constexpr long double kTwoPiL = 2.0L * kPiL;
constexpr double kTwoPi = 2.0 * std::numbers::pi;

// B_{2k} for k = 1..12.
constexpr std::array<double, 12> kBernoulli2k = {
    1.0 / 6.0,       -1.0 / 30.0,           1.0 / 42.0,   -1.0 / 30.0,
    5.0 / 66.0,      -691.0 / 2730.0,       7.0 / 6.0,    -3617.0 / 510.0,
    43867.0 / 798.0, -174611.0 / 330.0,     854513.0 / 138.0,
    -236364091.0 / 2730.0,
};

// Im log Gamma(z) for Re z > 0 on the continuous branch (arg Gamma).
long double arg_gamma(std::complex<long double> z) {
    constexpr int kShift = 12;
    long double shift_arg = 0.0L;
    for (int j = 0; j < kShift; ++j) shift_arg += std::arg(z + static_cast<long double>(j));
    const std::complex<long double> w = z + static_cast<long double>(kShift);
    const std::complex<long double> logw = std::log(w);
    std::complex<long double> series = (w - 0.5L) * logw - w;
    std::complex<long double> wpow = w;  // w^{2k-1}
    const std::complex<long double> w2 = w * w;
    for (std::size_t k = 1; k <= 10; ++k) {
        const long double b = kBernoulli2k[k - 1];
        series += b / (static_cast<long double>(2 * k) * static_cast<long double>(2 * k - 1)) / wpow;
        wpow *= w2;
    }
    return series.imag() - shift_arg;
}

template <std::size_t N>
double horner(const double (&c)[N], double z) {
    double acc = 0.0;
    for (std::size_t i = N; i-- > 0;) acc = acc * z + c[i];
    return acc;
}

struct TermTables {
    static constexpr std::size_t kSize = 4200;  // covers t <= 2 pi 4200^2 ~ 1.1e8
    std::array<double, kSize + 1> log_n{};
    std::array<double, kSize + 1> inv_sqrt_n{};
    std::array<long double, kSize + 1> log_n_ld{};

    TermTables() {
        for (std::size_t n = 1; n <= kSize; ++n) {
            log_n_ld[n] = std::log(static_cast<long double>(n));
            log_n[n] = static_cast<double>(log_n_ld[n]);
            inv_sqrt_n[n] = 1.0 / std::sqrt(static_cast<double>(n));
        }
    }
};

const TermTables& term_tables() {
    static const TermTables tables;
    return tables;
}

double rs_main_sum(double t, long double theta, long N, Precision precision) {
    const auto& tab = term_tables();
    double sum = 0.0;
    if (precision == Precision::standard) {
        const double th = static_cast<double>(std::fmod(theta, kTwoPiL));
        for (long n = 1; n <= N; ++n) {
            const auto idx = static_cast<std::size_t>(n);
            const double logn = idx <= TermTables::kSize ? tab.log_n[idx] : std::log(static_cast<double>(n));
            const double w = idx <= TermTables::kSize ? tab.inv_sqrt_n[idx] : 1.0 / std::sqrt(static_cast<double>(n));
            sum += w * std::cos(th - t * logn);
        }
    } else {
        const long double tl = t;
        for (long n = 1; n <= N; ++n) {
            const auto idx = static_cast<std::size_t>(n);
            const long double logn =
                idx <= TermTables::kSize ? tab.log_n_ld[idx] : std::log(static_cast<long double>(n));
            const double w = idx <= TermTables::kSize ? tab.inv_sqrt_n[idx] : 1.0 / std::sqrt(static_cast<double>(n));
            const long double phase = std::fmod(theta - tl * logn, kTwoPiL);
            sum += w * std::cos(static_cast<double>(phase));
        }
    }
    return 2.0 * sum;
}

double rs_remainder(double tau, long N) {
    const double p = tau - static_cast<double>(N);
    const double z = 1.0 - 2.0 * p;
    const double inv_tau = 1.0 / tau;
    const double c0 = horner(kRsC0, z);
    const double c1 = horner(kRsC1, z);
    const double c2 = horner(kRsC2, z);
    const double c3 = horner(kRsC3, z);
    const double c4 = horner(kRsC4, z);
    const double series = c0 + inv_tau * (c1 + inv_tau * (c2 + inv_tau * (c3 + inv_tau * c4)));
    const double sign = (N - 1) % 2 == 0 ? 1.0 : -1.0;
    return sign * series / std::sqrt(tau);
}

}  // namespace

long double riemann_siegel_theta_ld(long double t) {
    if (t < 0) return -riemann_siegel_theta_ld(-t);
    if (t < 10.0L) {
        const std::complex<long double> z(0.25L, t / 2.0L);
        return arg_gamma(z) - t / 2.0L * std::log(kPiL);
    }
    const long double inv = 1.0L / t;
    const long double inv2 = inv * inv;
    const long double tail =
        inv * (1.0L / 48.0L +
               inv2 * (7.0L / 5760.0L +
                       inv2 * (31.0L / 80640.0L + inv2 * (127.0L / 430080.0L + inv2 * (511.0L / 1216512.0L)))));
    return t / 2.0L * std::log(t / kTwoPiL) - t / 2.0L - kPiL / 8.0L + tail;
}

double riemann_siegel_theta(double t) { return static_cast<double>(riemann_siegel_theta_ld(t)); }

double riemann_siegel_theta_prime(double t) {
    const double a = std::abs(t);
    if (a < 1e-300) return 0.5 * std::log(1.0 / kTwoPi);  // limit is finite; only used away from 0
    return 0.5 * std::log(a / kTwoPi) - 1.0 / (48.0 * a * a) - 7.0 / (1920.0 * a * a * a * a);
}

std::complex<double> zeta_half_euler_maclaurin(double t) {
    using cd = std::complex<double>;
    const cd s(0.5, t);
    const long N = 20 + static_cast<long>(std::ceil(std::abs(t) / 2.0));
    cd sum = 0.0;
    for (long n = 1; n < N; ++n) sum += std::exp(-s * std::log(static_cast<double>(n)));
    const double logN = std::log(static_cast<double>(N));
    const cd N_pow_minus_s = std::exp(-s * logN);
    sum += N_pow_minus_s * static_cast<double>(N) / (s - 1.0);
    sum += 0.5 * N_pow_minus_s;
    // sum_k B_{2k}/(2k)! s(s+1)...(s+2k-2) N^{-s-2k+1}
    cd rising = s;                           // s (s+1) ... (s+2k-2)
    cd npow = N_pow_minus_s / static_cast<double>(N);  // N^{-s-2k+1}
    double factorial = 2.0;                  // (2k)!
    const double invN2 = 1.0 / (static_cast<double>(N) * static_cast<double>(N));
    for (std::size_t k = 1; k <= kBernoulli2k.size(); ++k) {
        sum += kBernoulli2k[k - 1] / factorial * rising * npow;
        rising *= (s + static_cast<double>(2 * k - 1)) * (s + static_cast<double>(2 * k));
        npow *= invN2;
        factorial *= static_cast<double>((2 * k + 1) * (2 * k + 2));
    }
    return sum;
}

HardyZ hardy_Z(double t, Precision precision) {
    const double a = std::abs(t);  // Z is even
    HardyZ out;
    if (a < kRiemannSiegelCrossover) {
        const std::complex<double> zeta = zeta_half_euler_maclaurin(a);
        const double th = riemann_siegel_theta(a);
        out.value = (std::polar(1.0, th) * zeta).real();
        out.err_bound = 1e-8;
        return out;
    }
    const long double theta = riemann_siegel_theta_ld(a);
    const double tau = std::sqrt(a / kTwoPi);
    const long N = static_cast<long>(std::floor(tau));
    out.value = rs_main_sum(a, theta, N, precision) + rs_remainder(tau, N);
    out.err_bound = std::max(1e-8, 0.05 * std::pow(a, -2.25));
    return out;
}

CriticalSample zeta_half(double t, Precision precision) {
    CriticalSample s;
    s.t = t;
    const HardyZ z = hardy_Z(t, precision);
    const long double theta = riemann_siegel_theta_ld(t);
    const double th = static_cast<double>(std::fmod(theta, kTwoPiL));
    s.zeta_re = z.value * std::cos(th);
    s.zeta_im = -z.value * std::sin(th);
    s.abs2 = z.value * z.value;
    s.log_abs = s.abs2 < kAbs2Floor ? -std::numeric_limits<double>::infinity() : 0.5 * std::log(s.abs2);
    s.err_bound = z.err_bound;
    return s;
}

double theta_inverse(double target, double guess) {
    double t = guess;
    if (!(t >= 7.0)) {
        // theta(t) ~ (t/2) log(t / (2 pi e)) - pi/8  =>  t = 2 pi e exp(W(y))
        const double y = (target + std::numbers::pi / 8.0) / (std::numbers::pi * std::numbers::e);
        t = y > -1.0 / std::numbers::e ? kTwoPi * std::numbers::e * std::exp(boost::math::lambert_w0(y)) : 7.0;
        t = std::max(t, 7.0);
    }
    for (int iter = 0; iter < 50; ++iter) {
        const double f = static_cast<double>(riemann_siegel_theta_ld(t) - static_cast<long double>(target));
        const double step = f / riemann_siegel_theta_prime(t);
        t -= step;
        if (t < 7.0) t = 7.0;
        if (std::abs(step) <= 1e-14 * std::max(1.0, t)) break;
    }
    return t;
}

double gram_point(long n) { return theta_inverse(static_cast<double>(n) * std::numbers::pi); }

long zero_count_estimate(double t) {
    const double x = riemann_siegel_theta(t) / std::numbers::pi + 1.0;
    const double z = hardy_Z(t).value;
    if (z == 0.0) return std::lround(x);
    // sign Z(t) = (-1)^{N-1}: Z > 0 -> N odd, Z < 0 -> N even.
    const double parity = z > 0.0 ? 1.0 : 0.0;
    return static_cast<long>(2.0 * std::round((x - parity) / 2.0) + parity);
}

}  // namespace tiltzeta
