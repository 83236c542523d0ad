#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "tiltzeta/grid.hpp"
#include "tiltzeta/primes.hpp"
#include "tiltzeta/zeta.hpp"

namespace tiltzeta {

struct SweepOptions {
    int workers = 1;
    Precision precision = Precision::standard;
};

/// Histogram over the standardized variable z = (v - center) / scale.
/// Values outside [lo, hi) are clamped into the edge bins.
struct HistogramSpec {
    double lo = -10.0;
    double hi = 8.0;
    double bin_width = 0.25;
    double center = 0.0;
    double scale = 1.0;

    int bins() const;
    int bin_of(double v) const;
};

/// Sums over quadrature nodes of weight * density * (v - center)^j.
///
/// `density` is |zeta|^2 for the tilted measure and 1 for Lebesgue measure.
/// Fine and coarse sums are kept side by side for the Richardson estimate.
/// Samples with a non-finite value (log|zeta| on a zero) contribute nothing.
class WeightedAccumulator {
public:
    WeightedAccumulator(int k_max, double center, std::optional<HistogramSpec> hist = std::nullopt,
                        bool keep_samples = false);

    void add(const QuadNode& node, double density, double v);
    /// Appends `other`, which must cover later nodes for sample order to stay in t order.
    void merge(const WeightedAccumulator& other);

    int k_max() const noexcept { return k_max_; }
    double center() const noexcept { return center_; }
    /// Sum weight * density (fine rule).
    double w_total() const noexcept { return fine_[0]; }
    double w_total_coarse() const noexcept { return coarse_[0]; }
    const std::vector<double>& raw_moments() const noexcept { return fine_; }
    const std::vector<double>& raw_moments_coarse() const noexcept { return coarse_; }
    long n_samples() const noexcept { return n_samples_; }
    long n_skipped() const noexcept { return n_skipped_; }

    const std::optional<HistogramSpec>& histogram_spec() const noexcept { return hist_; }
    const std::vector<double>& histogram_mass() const noexcept { return mass_; }

    struct Sample {
        double v;
        double weight;
    };
    /// Fine-rule samples in t order (empty unless keep_samples).
    const std::vector<Sample>& samples() const noexcept { return samples_; }

private:
    int k_max_;
    double center_;
    std::optional<HistogramSpec> hist_;
    bool keep_samples_;
    std::vector<double> fine_;
    std::vector<double> coarse_;
    std::vector<double> mass_;
    std::vector<Sample> samples_;
    long n_samples_ = 0;
    long n_skipped_ = 0;
};

/// Moments of the probability measure defined by an accumulator.
struct MomentSummary {
    double mean = 0.0;
    double var = 0.0;
    /// Index k holds the k-th central moment, k = 0..k_max.
    std::vector<double> central;
};

MomentSummary summarize(const std::vector<double>& raw, double center);

/// sup |F_w(v) - Phi((v - mean) / sd)| over the weighted empirical CDF;
/// ties in v keep t order.
double ks_distance(std::vector<WeightedAccumulator::Sample> samples, double mean, double sd);

struct QuadratureEstimate {
    double value = 0.0;
    /// |I_fine - I_coarse| / (2^p - 1).
    double error = 0.0;
    /// error > 10% of |value|.
    bool flagged = false;
};

struct DistributionReport {
    double mean_w = 0.0;
    double var_w = 0.0;
    std::vector<double> central_moments_w;
    double ks_distance = 0.0;
    double predicted_mean = 0.0;
    double predicted_var = 0.0;
    /// Tilted: integral of |zeta|^2 over T (log T + c). Lebesgue: integral of dt over T.
    double normalization = 0.0;

    double mean_err = 0.0;
    double var_err = 0.0;
    std::vector<double> central_moment_errs;
    double normalization_err = 0.0;
    long n_samples = 0;
    long n_skipped = 0;
    bool flagged = false;
};

/// (1/(T log T)) integral_T^{2T} f(t) |zeta(1/2+it)|^2 dt.
QuadratureEstimate weighted_integral(const std::function<double(double)>& observable, const GridSpec& grid,
                                     const SweepOptions& opts = {});

inline constexpr int kMaxDistributionMoment = 8;

/// log|zeta| under the tilted measure; KS against N(log log T, 1/2 log log T).
DistributionReport weighted_moments_logzeta(const GridSpec& grid, int k_max, const SweepOptions& opts = {});

/// log|zeta| under dt/T; predicted mean 0, variance 1/2 log log T.
DistributionReport unweighted_baseline(const GridSpec& grid, int k_max = 4, const SweepOptions& opts = {});

struct HistogramRow {
    double bin_left;
    double bin_right;
    double weighted_mass;
    double unweighted_mass;
};

struct CltReport {
    DistributionReport weighted;
    DistributionReport unweighted;
    /// Both masses normalized to 1, over z = (log|zeta| - log log T) / sqrt(1/2 log log T).
    std::vector<HistogramRow> histogram;
    /// weighted mean - unweighted mean.
    double girsanov_shift = 0.0;
};

/// Both distributions and the histogram from one sweep.
CltReport clt_analysis(const GridSpec& grid, int k_max, const SweepOptions& opts = {});

std::string histogram_csv(const std::vector<HistogramRow>& rows);

struct RePReport {
    /// Re P under the tilted measure; KS against N(L, L/2).
    DistributionReport distribution;
    double L = 0.0;
    /// (1/(T log T)) integral (Re P - L)^k |zeta|^2, k = 0..k_max.
    std::vector<QuadratureEstimate> moments_about_L;
    /// predicted_central_moment(k) for k <= 6, NaN beyond.
    std::vector<double> predicted;
    /// x <= T^{1/4}.
    bool length_condition = false;
};

/// Throws DomainError when x > T; length_condition records x <= T^{1/4}.
RePReport weighted_moments_reP(const GridSpec& grid, const PrimeTable& table, int k_max,
                               const SweepOptions& opts = {});

/// (1/(T log T)) integral |log|zeta| - Re P|^{2k} |zeta|^2 dt, k in {1, 2}.
QuadratureEstimate diff_moment_2k(const GridSpec& grid, const PrimeTable& table, int k,
                                  const SweepOptions& opts = {});

}  // namespace tiltzeta
