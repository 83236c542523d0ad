#include <cmath>
#include <sstream>

#include "tiltzeta/error.hpp"
#include "tiltzeta/json_writer.hpp"
#include "tiltzeta/moment_theory.hpp"

namespace tiltzeta {

namespace {

HighPrecision binomial_hp(int n, int k) {
    HighPrecision b = 1;
    for (int i = 1; i <= k; ++i) b = b * (n - k + i) / i;
    return b;
}

void check_T(double T, const char* who) {
    if (!(T > 1.0)) {
        std::ostringstream msg;
        msg << who << ": T must exceed 1 (got " << T << ")";
        throw DomainError(msg.str());
    }
}

}  // namespace

HighPrecision predicted_mixed_moment(int r, int s, const MixedMomentTable& table, double T) {
    check_T(T, "predicted_mixed_moment");
    const HighPrecision logT = log(HighPrecision(T));
    return ((logT + constant_c()) * table.f0(r, s) + table.f0_derivative(r, s)) / logT;
}

double predicted_mixed_moment(int r, int s, const PrimeTable& table, double T) {
    if (r < 0 || s < 0) throw DomainError("predicted_mixed_moment: r and s must be non-negative");
    return static_cast<double>(predicted_mixed_moment(r, s, MixedMomentTable(table, r + s), T));
}

HighPrecision predicted_central_moment(int k, const MixedMomentTable& table, double T) {
    if (k < 0 || k > kMaxPredictedMoment || k > table.max_degree()) {
        std::ostringstream msg;
        msg << "predicted_central_moment: k = " << k << " outside [0, "
            << std::min(kMaxPredictedMoment, table.max_degree()) << "]";
        throw DomainError(msg.str());
    }
    const HighPrecision& L = table.mertens();
    HighPrecision total = 0;
    for (int h = 0; h <= k; ++h) {
        const int j = k - h;
        HighPrecision inner = 0;
        for (int r = 0; r <= h; ++r) inner += binomial_hp(h, r) * predicted_mixed_moment(r, h - r, table, T);
        const HighPrecision sign = j % 2 == 0 ? 1 : -1;
        total += binomial_hp(k, h) * sign * pow(L, j) * inner / pow(HighPrecision(2), h);
    }
    return total;
}

double predicted_central_moment(int k, const PrimeTable& table, double T) {
    if (k < 0 || k > kMaxPredictedMoment) {
        std::ostringstream msg;
        msg << "predicted_central_moment: k = " << k << " outside [0, " << kMaxPredictedMoment << "]";
        throw DomainError(msg.str());
    }
    return static_cast<double>(predicted_central_moment(k, MixedMomentTable(table, k), T));
}

double gaussian_target(int k, double L) {
    if (k < 0) throw DomainError("gaussian_target: k must be >= 0");
    if (k % 2 != 0) return 0.0;
    double df = 1.0;
    for (int j = k - 1; j > 1; j -= 2) df *= j;
    return std::pow(L / 2.0, k / 2) * df;
}

std::vector<PredictionRow> prediction_table(const std::vector<double>& xs, int k_max, double T) {
    std::vector<PredictionRow> rows;
    for (double x : xs) {
        const PrimeTable table(x);
        const MixedMomentTable mixed(table, k_max);
        const double L = static_cast<double>(mixed.mertens());
        for (int k = 0; k <= k_max; ++k) {
            PredictionRow row;
            row.k = k;
            row.x = x;
            row.L = L;
            row.predicted = static_cast<double>(predicted_central_moment(k, mixed, T));
            row.gaussian_target = gaussian_target(k, L);
            row.residual = row.predicted - row.gaussian_target;
            row.residual_over_L_half_power = row.residual / std::pow(L, (k - 1) / 2.0);
            rows.push_back(row);
        }
    }
    return rows;
}

std::string prediction_csv(const std::vector<PredictionRow>& rows) {
    std::string out = "k,x,L,predicted,gaussian_target,residual,residual_over_L_half_power\n";
    for (const auto& r : rows) {
        out += std::to_string(r.k) + ',' + format_number(r.x) + ',' + format_number(r.L) + ',' +
               format_number(r.predicted) + ',' + format_number(r.gaussian_target) + ',' +
               format_number(r.residual) + ',' + format_number(r.residual_over_L_half_power) + '\n';
    }
    return out;
}

CancellationFit fit_cancellation(const std::vector<double>& xs, double T) {
    CancellationFit fit;
    for (double x : xs) {
        const MixedMomentTable mixed(PrimeTable(x), 4);
        const double L = static_cast<double>(mixed.mertens());
        const double m4 = static_cast<double>(predicted_central_moment(4, mixed, T));
        const double ratio = m4 / ((L / 2.0) * (L / 2.0));
        fit.xs.push_back(x);
        fit.L.push_back(L);
        fit.ratio4.push_back(ratio);
        fit.C4 = std::max(fit.C4, std::abs(ratio - 3.0) * std::sqrt(L));
    }
    return fit;
}

}  // namespace tiltzeta
