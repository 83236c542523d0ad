#pragma once

#include <string>
#include <vector>

#include "tiltzeta/zeta.hpp"

namespace tiltzeta {

struct GonekReport {
    double T = 0.0;
    double alpha = 0.0;
    double sum_value = 0.0;
    double main_term = 0.0;
    /// sum_value / main_term; NaN when the main term vanishes (alpha = 0).
    double ratio = 0.0;
    long n_zeros = 0;
    bool completeness = false;
};

/// sum_{0 < gamma <= T} |zeta(1/2 + i(gamma + 2 pi alpha / log T))|^2.
///
/// The list must be complete and span (0, T] (t_lo below the first zero,
/// t_hi >= T); an incomplete list raises IncompleteZerosError. Requires
/// |alpha| <= log T / (2 pi).
double gonek_sum(const ZeroList& zeros, double alpha, double T, int workers = 1);

/// (1 - (sin(pi alpha) / (pi alpha))^2) (T / 2pi) (log T)^2.
double gonek_main_term(double alpha, double T);

GonekReport gonek_report(const ZeroList& zeros, double alpha, double T, int workers = 1);

std::vector<GonekReport> gonek_alpha_grid(const ZeroList& zeros, const std::vector<double>& alphas, double T,
                                          int workers = 1);

/// Columns alpha, sum, main_term, ratio, n_zeros.
std::string gonek_csv(const std::vector<GonekReport>& reports);

}  // namespace tiltzeta
