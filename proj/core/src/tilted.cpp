#include "tiltzeta/tilted.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "tiltzeta/dirichlet.hpp"
#include "tiltzeta/error.hpp"
#include "tiltzeta/json_writer.hpp"
#include "tiltzeta/moment_theory.hpp"

namespace tiltzeta {

namespace {

constexpr double kFlagFraction = 0.1;
constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

double normal_cdf(double z) { return 0.5 * std::erfc(-z / std::sqrt(2.0)); }

template <class State, class Init, class Visit>
State sweep(const QuadratureGrid& grid, const SweepOptions& opts, Init init, Visit visit) {
    std::vector<State> states = run_panels<State>(grid, opts.workers, init, visit);
    State total = std::move(states.front());
    for (std::size_t i = 1; i < states.size(); ++i) total.merge(states[i]);
    return total;
}

struct Pair {
    WeightedAccumulator weighted;
    WeightedAccumulator unweighted;

    void merge(const Pair& o) {
        weighted.merge(o.weighted);
        unweighted.merge(o.unweighted);
    }
};

void check_k_max(int k_max) {
    if (k_max < 2 || k_max > kMaxDistributionMoment) {
        std::ostringstream msg;
        msg << "k_max must be in [2, " << kMaxDistributionMoment << "] (got " << k_max << ")";
        throw DomainError(msg.str());
    }
}

double rel_excess(double err, double scale) { return scale > 0.0 ? err / scale : (err > 0.0 ? 1.0 : 0.0); }

DistributionReport make_report(const WeightedAccumulator& acc, double divisor, double predicted_mean,
                               double predicted_var, double normalization_denominator, bool keep_ks) {
    if (!(acc.w_total() > 0.0)) throw DomainError("distribution: total weight is not positive");
    DistributionReport rep;
    const MomentSummary fine = summarize(acc.raw_moments(), acc.center());
    const MomentSummary coarse = summarize(acc.raw_moments_coarse(), acc.center());
    rep.mean_w = fine.mean;
    rep.var_w = fine.var;
    rep.central_moments_w = fine.central;
    rep.mean_err = std::abs(fine.mean - coarse.mean) / divisor;
    rep.var_err = std::abs(fine.var - coarse.var) / divisor;
    for (std::size_t k = 0; k < fine.central.size(); ++k) {
        rep.central_moment_errs.push_back(std::abs(fine.central[k] - coarse.central[k]) / divisor);
    }
    rep.predicted_mean = predicted_mean;
    rep.predicted_var = predicted_var;
    rep.normalization = acc.w_total() / normalization_denominator;
    rep.normalization_err = std::abs(acc.w_total() - acc.w_total_coarse()) / divisor / normalization_denominator;
    rep.n_samples = acc.n_samples();
    rep.n_skipped = acc.n_skipped();
    rep.ks_distance = keep_ks ? ks_distance(acc.samples(), predicted_mean, std::sqrt(predicted_var)) : kNaN;
    const double sd = std::sqrt(rep.var_w);
    rep.flagged = rel_excess(rep.normalization_err, rep.normalization) > kFlagFraction ||
                  rel_excess(rep.var_err, rep.var_w) > kFlagFraction ||
                  rel_excess(rep.mean_err, std::max(std::abs(rep.mean_w), sd)) > kFlagFraction;
    return rep;
}

double loglog(double T) { return std::log(std::log(T)); }

HistogramSpec clt_histogram(double T) {
    HistogramSpec h;
    h.center = loglog(T);
    h.scale = std::sqrt(0.5 * loglog(T));
    return h;
}

Pair clt_sweep(const QuadratureGrid& grid, int k_max, const SweepOptions& opts, bool keep_samples) {
    const double T = grid.spec().T;
    const double center = loglog(T);
    const HistogramSpec hist = clt_histogram(T);
    auto init = [&] {
        return Pair{WeightedAccumulator(k_max, center, hist, keep_samples),
                    WeightedAccumulator(k_max, 0.0, hist, keep_samples)};
    };
    auto visit = [&](Pair& st, const QuadNode& node) {
        const CriticalSample s = zeta_half(node.t, opts.precision);
        st.weighted.add(node, s.abs2, s.log_abs);
        st.unweighted.add(node, 1.0, s.log_abs);
    };
    return sweep<Pair>(grid, opts, init, visit);
}

DistributionReport weighted_from(const WeightedAccumulator& acc, const QuadratureGrid& grid) {
    const double T = grid.spec().T;
    return make_report(acc, grid.richardson_divisor(), loglog(T), 0.5 * loglog(T), T * (std::log(T) + constant_c()),
                       true);
}

DistributionReport unweighted_from(const WeightedAccumulator& acc, const QuadratureGrid& grid) {
    const double T = grid.spec().T;
    return make_report(acc, grid.richardson_divisor(), 0.0, 0.5 * loglog(T), T, true);
}

}  // namespace

int HistogramSpec::bins() const { return static_cast<int>(std::lround((hi - lo) / bin_width)); }

int HistogramSpec::bin_of(double v) const {
    const double z = (v - center) / scale;
    const auto idx = static_cast<long>(std::floor((z - lo) / bin_width));
    return static_cast<int>(std::clamp<long>(idx, 0, bins() - 1));
}

WeightedAccumulator::WeightedAccumulator(int k_max, double center, std::optional<HistogramSpec> hist,
                                         bool keep_samples)
    : k_max_(k_max),
      center_(center),
      hist_(hist),
      keep_samples_(keep_samples),
      fine_(static_cast<std::size_t>(k_max + 1), 0.0),
      coarse_(static_cast<std::size_t>(k_max + 1), 0.0) {
    if (k_max < 0) throw DomainError("WeightedAccumulator: k_max must be >= 0");
    if (hist_) mass_.assign(static_cast<std::size_t>(hist_->bins()), 0.0);
}

void WeightedAccumulator::add(const QuadNode& node, double density, double v) {
    if (!std::isfinite(v) || !std::isfinite(density)) {
        if (node.w_fine != 0.0) ++n_skipped_;
        return;
    }
    const double d = v - center_;
    const double wf = node.w_fine * density;
    const double wc = node.w_coarse * density;
    double pw = 1.0;
    for (int j = 0; j <= k_max_; ++j) {
        fine_[static_cast<std::size_t>(j)] += wf * pw;
        coarse_[static_cast<std::size_t>(j)] += wc * pw;
        pw *= d;
    }
    if (node.w_fine == 0.0) return;
    ++n_samples_;
    if (hist_) mass_[static_cast<std::size_t>(hist_->bin_of(v))] += wf;
    if (keep_samples_) samples_.push_back({v, wf});
}

void WeightedAccumulator::merge(const WeightedAccumulator& other) {
    if (other.k_max_ != k_max_ || other.center_ != center_ || other.mass_.size() != mass_.size()) {
        throw DomainError("WeightedAccumulator::merge: incompatible accumulators");
    }
    for (std::size_t j = 0; j < fine_.size(); ++j) {
        fine_[j] += other.fine_[j];
        coarse_[j] += other.coarse_[j];
    }
    for (std::size_t b = 0; b < mass_.size(); ++b) mass_[b] += other.mass_[b];
    samples_.insert(samples_.end(), other.samples_.begin(), other.samples_.end());
    n_samples_ += other.n_samples_;
    n_skipped_ += other.n_skipped_;
}

MomentSummary summarize(const std::vector<double>& raw, double center) {
    MomentSummary out;
    const double W = raw.at(0);
    const std::size_t K = raw.size() - 1;
    std::vector<double> r(raw.size());
    for (std::size_t j = 0; j <= K; ++j) r[j] = raw[j] / W;
    const double m1 = K >= 1 ? r[1] : 0.0;
    out.mean = center + m1;
    out.central.assign(K + 1, 0.0);
    for (std::size_t k = 0; k <= K; ++k) {
        double acc = 0.0;
        double binom = 1.0;
        for (std::size_t j = 0; j <= k; ++j) {
            acc += binom * r[j] * std::pow(-m1, static_cast<double>(k - j));
            binom = binom * static_cast<double>(k - j) / static_cast<double>(j + 1);
        }
        out.central[k] = acc;
    }
    if (K >= 1) out.central[1] = 0.0;
    out.var = K >= 2 ? std::max(0.0, out.central[2]) : 0.0;
    if (K >= 2) out.central[2] = out.var;
    return out;
}

double ks_distance(std::vector<WeightedAccumulator::Sample> samples, double mean, double sd) {
    if (samples.empty()) return kNaN;
    if (!(sd > 0.0)) throw DomainError("ks_distance: model standard deviation must be positive");
    std::stable_sort(samples.begin(), samples.end(), [](const auto& a, const auto& b) { return a.v < b.v; });
    double total = 0.0;
    for (const auto& s : samples) total += s.weight;
    double cum = 0.0;
    double best = 0.0;
    for (std::size_t i = 0; i < samples.size();) {
        const double v = samples[i].v;
        const double model = normal_cdf((v - mean) / sd);
        best = std::max(best, std::abs(model - cum / total));
        while (i < samples.size() && samples[i].v == v) cum += samples[i++].weight;
        best = std::max(best, std::abs(model - cum / total));
    }
    return std::min(1.0, best);
}

QuadratureEstimate weighted_integral(const std::function<double(double)>& observable, const GridSpec& grid,
                                     const SweepOptions& opts) {
    const QuadratureGrid q(grid);
    auto init = [] { return WeightedAccumulator(0, 0.0); };
    auto visit = [&](WeightedAccumulator& acc, const QuadNode& node) {
        const CriticalSample s = zeta_half(node.t, opts.precision);
        acc.add(node, s.abs2 * observable(node.t), 0.0);
    };
    const WeightedAccumulator acc = sweep<WeightedAccumulator>(q, opts, init, visit);
    const double scale = grid.T * std::log(grid.T);
    QuadratureEstimate est;
    est.value = acc.w_total() / scale;
    est.error = std::abs(acc.w_total() - acc.w_total_coarse()) / q.richardson_divisor() / scale;
    est.flagged = est.error > kFlagFraction * std::abs(est.value);
    return est;
}

DistributionReport weighted_moments_logzeta(const GridSpec& grid, int k_max, const SweepOptions& opts) {
    check_k_max(k_max);
    const QuadratureGrid q(grid);
    const double center = loglog(grid.T);
    auto init = [&] { return WeightedAccumulator(k_max, center, clt_histogram(grid.T), true); };
    auto visit = [&](WeightedAccumulator& acc, const QuadNode& node) {
        const CriticalSample s = zeta_half(node.t, opts.precision);
        acc.add(node, s.abs2, s.log_abs);
    };
    return weighted_from(sweep<WeightedAccumulator>(q, opts, init, visit), q);
}

DistributionReport unweighted_baseline(const GridSpec& grid, int k_max, const SweepOptions& opts) {
    check_k_max(k_max);
    const QuadratureGrid q(grid);
    auto init = [&] { return WeightedAccumulator(k_max, 0.0, clt_histogram(grid.T), true); };
    auto visit = [&](WeightedAccumulator& acc, const QuadNode& node) {
        const CriticalSample s = zeta_half(node.t, opts.precision);
        acc.add(node, 1.0, s.log_abs);
    };
    return unweighted_from(sweep<WeightedAccumulator>(q, opts, init, visit), q);
}

CltReport clt_analysis(const GridSpec& grid, int k_max, const SweepOptions& opts) {
    check_k_max(k_max);
    const QuadratureGrid q(grid);
    const Pair acc = clt_sweep(q, k_max, opts, true);
    CltReport rep;
    rep.weighted = weighted_from(acc.weighted, q);
    rep.unweighted = unweighted_from(acc.unweighted, q);
    rep.girsanov_shift = rep.weighted.mean_w - rep.unweighted.mean_w;

    const HistogramSpec& h = *acc.weighted.histogram_spec();
    double wsum = 0.0, usum = 0.0;
    for (double m : acc.weighted.histogram_mass()) wsum += m;
    for (double m : acc.unweighted.histogram_mass()) usum += m;
    for (int b = 0; b < h.bins(); ++b) {
        const auto i = static_cast<std::size_t>(b);
        rep.histogram.push_back({h.lo + b * h.bin_width, h.lo + (b + 1) * h.bin_width,
                                 acc.weighted.histogram_mass()[i] / wsum, acc.unweighted.histogram_mass()[i] / usum});
    }
    return rep;
}

std::string histogram_csv(const std::vector<HistogramRow>& rows) {
    std::string out = "bin_left,bin_right,weighted_mass,unweighted_mass\n";
    for (const auto& r : rows) {
        out += format_number(r.bin_left) + ',' + format_number(r.bin_right) + ',' + format_number(r.weighted_mass) +
               ',' + format_number(r.unweighted_mass) + '\n';
    }
    return out;
}

RePReport weighted_moments_reP(const GridSpec& grid, const PrimeTable& table, int k_max, const SweepOptions& opts) {
    check_k_max(k_max);
    const double x = table.x_cutoff();
    if (x > grid.T) {
        std::ostringstream msg;
        msg << "weighted_moments_reP: x = " << x << " violates the length condition x <= T (T = " << grid.T
            << ")";
        throw DomainError(msg.str());
    }
    const QuadratureGrid q(grid);
    const int k_pred = std::min(k_max, kMaxPredictedMoment);
    const MixedMomentTable mixed(table, k_pred);
    const double L = static_cast<double>(mixed.mertens());

    auto init = [&] { return WeightedAccumulator(k_max, L, std::nullopt, true); };
    auto visit = [&](WeightedAccumulator& acc, const QuadNode& node) {
        const CriticalSample s = zeta_half(node.t, opts.precision);
        acc.add(node, s.abs2, eval_P(node.t, table).real());
    };
    const WeightedAccumulator acc = sweep<WeightedAccumulator>(q, opts, init, visit);

    RePReport rep;
    rep.L = L;
    rep.length_condition = x <= std::pow(grid.T, 0.25);
    const double m0 = static_cast<double>(predicted_mixed_moment(0, 0, mixed, grid.T));
    const double m1 = static_cast<double>(predicted_mixed_moment(1, 0, mixed, grid.T));
    rep.distribution = make_report(acc, q.richardson_divisor(), m1 / m0, L / 2.0,
                                   grid.T * (std::log(grid.T) + constant_c()), true);
    const double scale = grid.T * std::log(grid.T);
    for (int k = 0; k <= k_max; ++k) {
        const auto i = static_cast<std::size_t>(k);
        QuadratureEstimate est;
        est.value = acc.raw_moments()[i] / scale;
        est.error = std::abs(acc.raw_moments()[i] - acc.raw_moments_coarse()[i]) / q.richardson_divisor() / scale;
        est.flagged = est.error > kFlagFraction * std::abs(est.value);
        rep.moments_about_L.push_back(est);
        rep.predicted.push_back(k <= k_pred ? static_cast<double>(predicted_central_moment(k, mixed, grid.T)) : kNaN);
    }
    return rep;
}

QuadratureEstimate diff_moment_2k(const GridSpec& grid, const PrimeTable& table, int k, const SweepOptions& opts) {
    if (k != 1 && k != 2) throw DomainError("diff_moment_2k: k must be 1 or 2");
    const QuadratureGrid q(grid);
    auto init = [] { return WeightedAccumulator(0, 0.0); };
    auto visit = [&](WeightedAccumulator& acc, const QuadNode& node) {
        const CriticalSample s = zeta_half(node.t, opts.precision);
        const double diff = s.log_abs - eval_P(node.t, table).real();
        acc.add(node, s.abs2 * std::pow(diff, 2 * k), diff);
    };
    const WeightedAccumulator acc = sweep<WeightedAccumulator>(q, opts, init, visit);
    const double scale = grid.T * std::log(grid.T);
    QuadratureEstimate est;
    est.value = acc.w_total() / scale;
    est.error = std::abs(acc.w_total() - acc.w_total_coarse()) / q.richardson_divisor() / scale;
    est.flagged = est.error > kFlagFraction * std::abs(est.value);
    return est;
}

}  // namespace tiltzeta
