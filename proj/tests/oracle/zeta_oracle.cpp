#include "zeta_oracle.hpp"

#include <vector>

#include <boost/math/special_functions/bernoulli.hpp>

namespace oracle {

namespace {

struct C {
    Real re, im;
};

C operator+(const C& a, const C& b) { return {a.re + b.re, a.im + b.im}; }
C operator-(const C& a, const C& b) { return {a.re - b.re, a.im - b.im}; }
C operator*(const C& a, const C& b) { return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re}; }
C operator*(const C& a, const Real& r) { return {a.re * r, a.im * r}; }
C operator/(const C& a, const C& b) {
    const Real d = b.re * b.re + b.im * b.im;
    return {(a.re * b.re + a.im * b.im) / d, (a.im * b.re - a.re * b.im) / d};
}
C cexp(const C& z) {
    const Real m = exp(z.re);
    return {m * cos(z.im), m * sin(z.im)};
}
C clog(const C& z) { return {log(sqrt(z.re * z.re + z.im * z.im)), atan2(z.im, z.re)}; }

const std::vector<Real>& bernoulli_2k(int count) {
    static std::vector<Real> b;
    if (static_cast<int>(b.size()) < count) {
        b.clear();
        for (int k = 1; k <= count; ++k) b.push_back(boost::math::bernoulli_b2n<Real>(k));
    }
    return b;
}

// Im log Gamma(z), Re z > 0, continuous branch.
Real arg_gamma(const C& z) {
    constexpr int kShift = 30;
    constexpr int kTerms = 30;
    Real shift_arg = 0;
    for (int j = 0; j < kShift; ++j) shift_arg += atan2(z.im, z.re + j);
    const C w{z.re + kShift, z.im};
    C series = (C{w.re - Real(0.5), w.im} * clog(w)) - w;
    const auto& b = bernoulli_2k(kTerms);
    const C w2 = w * w;
    C wpow = w;
    for (int k = 1; k <= kTerms; ++k) {
        series = series + (C{Real(1), Real(0)} / wpow) * (b[k - 1] / (Real(2 * k) * Real(2 * k - 1)));
        wpow = wpow * w2;
    }
    return series.im - shift_arg;
}

}  // namespace

Real theta(const Real& t) {
    const Real pi = boost::math::constants::pi<Real>();
    return arg_gamma(C{Real(0.25), t / 2}) - t / 2 * log(pi);
}

Complex zeta_half(const Real& t) {
    constexpr int kTerms = 30;
    const Real pi = boost::math::constants::pi<Real>();
    const C s{Real(0.5), t};
    const long N = static_cast<long>(abs(t) / pi) + 20;
    C sum{Real(0), Real(0)};
    for (long n = 1; n < N; ++n) {
        const Real ln = log(Real(n));
        const Real mag = 1 / sqrt(Real(n));
        sum.re += mag * cos(t * ln);
        sum.im -= mag * sin(t * ln);
    }
    const Real logN = log(Real(N));
    const C n_pow = cexp(C{-Real(0.5) * logN, -t * logN});  // N^{-s}
    sum = sum + (n_pow * Real(N)) / (s - C{Real(1), Real(0)});
    sum = sum + n_pow * Real(0.5);
    const auto& b = bernoulli_2k(kTerms);
    C rising = s;
    C npow = n_pow * (1 / Real(N));
    Real fact = 2;
    const Real invN2 = 1 / (Real(N) * Real(N));
    for (int k = 1; k <= kTerms; ++k) {
        sum = sum + rising * npow * (b[k - 1] / fact);
        rising = rising * (s + C{Real(2 * k - 1), Real(0)}) * (s + C{Real(2 * k), Real(0)});
        npow = npow * invN2;
        fact *= Real(2 * k + 1) * Real(2 * k + 2);
    }
    return {sum.re, sum.im};
}

Real hardy_Z(const Real& t) {
    const Complex z = zeta_half(t);
    const Real th = theta(t);
    return cos(th) * z.re - sin(th) * z.im;
}

}  // namespace oracle
