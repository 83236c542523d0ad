#include <cmath>
#include <numeric>
#include <sstream>

#include "tiltzeta/error.hpp"
#include "tiltzeta/moment_theory.hpp"

namespace tiltzeta {

namespace {

constexpr long double kEulerGamma = 0.57721566490153286060651209008240243L;
constexpr long double kPi = 3.14159265358979323846264338327950288L;

void check_coefficients(const std::map<std::uint64_t, double>& coeffs, double max_n, const char* name) {
    for (const auto& [n, v] : coeffs) {
        std::ostringstream msg;
        if (n == 0) {
            msg << "TwistedMomentSpec: " << name << "(0) is not a Dirichlet coefficient";
            throw DomainError(msg.str());
        }
        if (static_cast<double>(n) > max_n * (1.0 + 1e-12)) {
            msg << "TwistedMomentSpec: " << name << " has support " << n << " beyond " << max_n;
            throw DomainError(msg.str());
        }
        if (!std::isfinite(v) || std::abs(v) > std::pow(static_cast<double>(n), 0.01) * (1.0 + 1e-12)) {
            msg << "TwistedMomentSpec: |" << name << "(" << n << ")| = " << std::abs(v) << " exceeds n^0.01";
            throw DomainError(msg.str());
        }
    }
}

}  // namespace

double constant_c() {
    return static_cast<double>(2.0L * kEulerGamma + std::log(4.0L) - std::log(2.0L * kPi) - 1.0L);
}

void TwistedMomentSpec::validate() const {
    if (!(T > 1.0)) throw DomainError("TwistedMomentSpec: T must exceed 1");
    if (!(theta >= 0.0) || !(sigma >= 0.0)) throw DomainError("TwistedMomentSpec: theta and sigma must be >= 0");
    if (!(theta + 2.0 * sigma < 1.0)) {
        std::ostringstream msg;
        msg << "TwistedMomentSpec: theta + 2 sigma = " << theta + 2.0 * sigma << " must be < 1";
        throw DomainError(msg.str());
    }
    check_coefficients(a, std::pow(T, theta), "a");
    check_coefficients(b, std::pow(T, sigma), "b");
}

double bchb_main_term(const TwistedMomentSpec& spec) {
    spec.validate();
    std::map<std::uint64_t, double> conv;
    for (const auto& [d1, av] : spec.a) {
        for (const auto& [d2, bv] : spec.b) conv[d1 * d2] += av * bv;
    }
    if (static_cast<double>(conv.size()) * static_cast<double>(spec.b.size()) > static_cast<double>(kMaxBchbPairs)) {
        std::ostringstream msg;
        msg << "bchb_main_term: " << conv.size() << " x " << spec.b.size() << " pairs exceed " << kMaxBchbPairs;
        throw DomainError(msg.str());
    }
    const long double logT = std::log(static_cast<long double>(spec.T));
    const long double c = constant_c();
    long double sum = 0.0L;
    for (const auto& [n, cv] : conv) {
        for (const auto& [m, bv] : spec.b) {
            const std::uint64_t g = std::gcd(n, m);
            const long double lcm = static_cast<long double>(n / g) * static_cast<long double>(m);
            const long double log_ratio = 2.0L * std::log(static_cast<long double>(g)) -
                                          std::log(static_cast<long double>(n)) - std::log(static_cast<long double>(m));
            sum += cv * bv / lcm * (logT + log_ratio + c);
        }
    }
    return static_cast<double>(static_cast<long double>(spec.T) * sum);
}

}  // namespace tiltzeta
