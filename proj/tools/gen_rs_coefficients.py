#!/usr/bin/env python3
"""Generate Taylor coefficients of the Riemann-Siegel correction functions.

C_j(p) are expanded in z = 1 - 2p, where p is the fractional part of
sqrt(t / 2pi). Output is a C++ initializer block for core/src/rs_coefficients.inc.
"""
import mpmath as mp

mp.mp.dps = 80
NTERMS = 120  # power-series length in z


def mul(a, b):
    out = [mp.mpf(0)] * NTERMS
    for i, ai in enumerate(a):
        if ai == 0:
            continue
        for j in range(NTERMS - i):
            out[i + j] += ai * b[j]
    return out


def inv(a):
    out = [mp.mpf(0)] * NTERMS
    out[0] = 1 / a[0]
    for n in range(1, NTERMS):
        s = mp.mpf(0)
        for k in range(1, n + 1):
            s += a[k] * out[n - k]
        out[n] = -s / a[0]
    return out


def deriv(a):
    return [a[i + 1] * (i + 1) for i in range(NTERMS - 1)] + [mp.mpf(0)]


def scale(a, c):
    return [c * v for v in a]


def add(*series):
    out = [mp.mpf(0)] * NTERMS
    for s in series:
        out = [x + y for x, y in zip(out, s)]
    return out


# Psi(z) = cos(pi z^2/2 - 5 pi/8) / (-cos(pi z)) with p = (1 - z)/2.
a = -5 * mp.pi / 8
cos_u = [mp.mpf(0)] * NTERMS
sin_u = [mp.mpf(0)] * NTERMS
for j in range(NTERMS):
    if 2 * j >= NTERMS:
        break
    term = (mp.pi / 2) ** j / mp.factorial(j)  # u^j / j!, u = pi z^2 / 2
    if j % 2 == 0:
        cos_u[2 * j] = term * (-1) ** (j // 2)
    else:
        sin_u[2 * j] = term * (-1) ** ((j - 1) // 2)
num = add(scale(cos_u, mp.cos(a)), scale(sin_u, -mp.sin(a)))
den = [mp.mpf(0)] * NTERMS
for j in range(0, NTERMS, 2):
    den[j] = -((-1) ** (j // 2)) * mp.pi ** j / mp.factorial(j)
psi = mul(num, inv(den))

# n-th derivative with respect to p is (-2)^n d^n/dz^n.
dpsi = [psi]
for n in range(1, 13):
    dpsi.append(scale(deriv(dpsi[-1]), -2))

pi2, pi4, pi6, pi8 = mp.pi ** 2, mp.pi ** 4, mp.pi ** 6, mp.pi ** 8
C = [
    dpsi[0],
    scale(dpsi[3], -1 / (96 * pi2)),
    add(scale(dpsi[2], 1 / (64 * pi2)), scale(dpsi[6], 1 / (18432 * pi4))),
    add(scale(dpsi[1], -1 / (64 * pi2)), scale(dpsi[5], -1 / (3840 * pi4)),
        scale(dpsi[9], -1 / (5308416 * pi6))),
    add(scale(dpsi[0], 1 / (128 * pi2)), scale(dpsi[4], 19 / (24576 * pi4)),
        scale(dpsi[8], 11 / (5898240 * pi6)), scale(dpsi[12], 1 / (2038431744 * pi8))),
]

for j, series in enumerate(C):
    coeffs = series[: NTERMS - 20]
    last = max(i for i, v in enumerate(coeffs) if abs(v) > mp.mpf("1e-22"))
    print(f"// C{j}(z), coefficients of z^0 .. z^{last}")
    print(f"inline constexpr double kRsC{j}[] = {{")
    for i in range(last + 1):
        print(f"    {mp.nstr(coeffs[i], 20, min_fixed=0, max_fixed=0)},")
    print("};")
