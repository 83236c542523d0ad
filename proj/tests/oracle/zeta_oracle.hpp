#pragma once

#include <boost/multiprecision/mpfr.hpp>

namespace oracle {

using Real = boost::multiprecision::mpfr_float_50;

/// theta(t) from the Stirling series for log Gamma(1/4 + it/2), 50 digits.
Real theta(const Real& t);

/// zeta(1/2 + it) by Euler-Maclaurin summation in 50-digit arithmetic.
struct Complex {
    Real re;
    Real im;
};
Complex zeta_half(const Real& t);

/// Z(t) = Re(e^{i theta} zeta(1/2 + it)).
Real hardy_Z(const Real& t);

}  // namespace oracle
