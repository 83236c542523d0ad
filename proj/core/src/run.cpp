#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <ostream>
#include <sstream>
#include <vector>

#include "tiltzeta/dirichlet.hpp"
#include "tiltzeta/error.hpp"
#include "tiltzeta/gonek.hpp"
#include "tiltzeta/json_writer.hpp"
#include "tiltzeta/moment_theory.hpp"
#include "tiltzeta/report.hpp"
#include "tiltzeta/tilted.hpp"

#ifndef TILTZETA_VERSION
#define TILTZETA_VERSION "unknown"
#endif

namespace tiltzeta {

namespace {

namespace fs = std::filesystem;
using Clock = std::chrono::steady_clock;

struct Artifacts {
    fs::path dir;
    std::vector<std::string> written;
    std::vector<std::pair<std::string, double>> timings;

    void write(const std::string& name, const std::string& content) {
        std::ofstream out(dir / name, std::ios::binary | std::ios::trunc);
        out << content;
        if (!out) throw std::runtime_error("failed to write " + (dir / name).string());
        written.push_back(name);
    }

    template <class F>
    auto timed(const std::string& phase, F&& f) {
        const auto t0 = Clock::now();
        auto result = f();
        timings.emplace_back(phase, std::chrono::duration<double>(Clock::now() - t0).count());
        return result;
    }
};

struct Outcome {
    std::string results;
    bool flagged = false;
    bool failed = false;
};

void write_config(JsonWriter& j, const RunConfig& c) {
    j.begin_object();
    j.field("command", to_string(c.command));
    j.field("T", c.T);
    j.key("x");
    if (c.x) {
        j.value(*c.x);
    } else {
        j.null();
    }
    j.field("kmax", c.k_max);
    j.key("alpha");
    if (c.alpha) {
        j.value(*c.alpha);
    } else {
        j.null();
    }
    j.field("oversample", c.oversample);
    j.field("workers", c.workers);
    j.field("precision", c.precision == Precision::standard ? "double" : "extended");
    j.field("rule", to_string(c.rule));
    j.field("output_dir", c.output_dir);
    j.end_object();
}

void write_grid(JsonWriter& j, const GridSpec& g) {
    j.begin_object();
    j.field("T", g.T);
    j.field("n_points", g.n_points);
    j.field("rule", to_string(g.rule));
    j.field("oversample", g.oversample);
    j.end_object();
}

void write_report(JsonWriter& j, const DistributionReport& r) {
    j.begin_object();
    j.field("mean_w", r.mean_w);
    j.field("var_w", r.var_w);
    j.field("central_moments_w", r.central_moments_w);
    j.field("ks_distance", r.ks_distance);
    j.field("predicted_mean", r.predicted_mean);
    j.field("predicted_var", r.predicted_var);
    j.field("normalization", r.normalization);
    j.field("mean_err", r.mean_err);
    j.field("var_err", r.var_err);
    j.field("central_moment_errs", r.central_moment_errs);
    j.field("normalization_err", r.normalization_err);
    j.field("n_samples", r.n_samples);
    j.field("n_skipped", r.n_skipped);
    j.field("flagged", r.flagged);
    j.end_object();
}

void write_estimate(JsonWriter& j, const QuadratureEstimate& e) {
    j.begin_object();
    j.field("value", e.value);
    j.field("error", e.error);
    j.field("flagged", e.flagged);
    j.end_object();
}

GridSpec grid_for(const RunConfig& c) { return make_grid(c.T, c.oversample, c.rule); }

SweepOptions sweep_for(const RunConfig& c) { return {c.workers, c.precision}; }

Outcome run_clt(const RunConfig& c, Artifacts& art, std::ostream& log) {
    const GridSpec grid = grid_for(c);
    log << "clt: T=" << c.T << " n_points=" << grid.n_points << "\n";
    const CltReport rep = art.timed("clt_sweep", [&] { return clt_analysis(grid, c.k_max, sweep_for(c)); });
    JsonWriter j;
    j.begin_object();
    j.field("command", "clt");
    j.key("grid");
    write_grid(j, grid);
    j.field("loglogT", std::log(std::log(c.T)));
    j.key("weighted");
    write_report(j, rep.weighted);
    j.key("unweighted");
    write_report(j, rep.unweighted);
    j.field("girsanov_shift", rep.girsanov_shift);
    j.end_object();
    art.write("histogram.csv", histogram_csv(rep.histogram));
    return {j.str(), rep.weighted.flagged || rep.unweighted.flagged, false};
}

Outcome run_moments(const RunConfig& c, Artifacts& art, std::ostream& log) {
    const GridSpec grid = grid_for(c);
    const double x = c.x.value_or(default_x(c.T));
    const PrimeTable table(x);
    log << "moments: T=" << c.T << " x=" << x << " n_points=" << grid.n_points << "\n";
    const RePReport rep =
        art.timed("reP_sweep", [&] { return weighted_moments_reP(grid, table, c.k_max, sweep_for(c)); });
    const QuadratureEstimate d1 = art.timed("diff_k1", [&] { return diff_moment_2k(grid, table, 1, sweep_for(c)); });
    const QuadratureEstimate d2 = art.timed("diff_k2", [&] { return diff_moment_2k(grid, table, 2, sweep_for(c)); });
    if (!rep.length_condition) log << "moments: x exceeds T^(1/4); outside the mean-value length range\n";

    JsonWriter j;
    j.begin_object();
    j.field("command", "moments");
    j.key("grid");
    write_grid(j, grid);
    j.field("x", x);
    j.field("L", rep.L);
    j.field("length_condition", rep.length_condition);
    j.key("reP");
    write_report(j, rep.distribution);
    j.key("moments_about_L");
    j.begin_array();
    bool flagged = rep.distribution.flagged;
    for (std::size_t k = 0; k < rep.moments_about_L.size(); ++k) {
        j.begin_object();
        j.field("k", k);
        j.field("value", rep.moments_about_L[k].value);
        j.field("error", rep.moments_about_L[k].error);
        j.field("predicted", rep.predicted[k]);
        j.field("gaussian_target", gaussian_target(static_cast<int>(k), rep.L));
        j.field("flagged", rep.moments_about_L[k].flagged);
        j.end_object();
        flagged = flagged || rep.moments_about_L[k].flagged;
    }
    j.end_array();
    j.key("diff_moment_k1");
    write_estimate(j, d1);
    j.key("diff_moment_k2");
    write_estimate(j, d2);
    j.end_object();

    const int k_pred = std::min(c.k_max, kMaxPredictedMoment);
    art.write("predictions.csv", prediction_csv(prediction_table({x}, k_pred, c.T)));
    return {j.str(), flagged || d1.flagged || d2.flagged, false};
}

Outcome run_predict(const RunConfig& c, Artifacts& art, std::ostream& log) {
    const std::vector<double> xs = c.x ? std::vector<double>{*c.x} : std::vector<double>{1e2, 1e3, 1e4, 1e5};
    log << "predict: T=" << c.T << " kmax=" << c.k_max << "\n";
    const auto rows = art.timed("prediction_table", [&] { return prediction_table(xs, c.k_max, c.T); });
    art.write("predictions.csv", prediction_csv(rows));

    JsonWriter j;
    j.begin_object();
    j.field("command", "predict");
    j.field("T", c.T);
    j.key("rows");
    j.begin_array();
    for (const auto& r : rows) {
        j.begin_object();
        j.field("k", r.k);
        j.field("x", r.x);
        j.field("L", r.L);
        j.field("predicted", r.predicted);
        j.field("gaussian_target", r.gaussian_target);
        j.field("residual", r.residual);
        j.field("residual_over_L_half_power", r.residual_over_L_half_power);
        j.end_object();
    }
    j.end_array();
    if (c.k_max >= 4) {
        const CancellationFit fit = art.timed("cancellation_fit", [&] { return fit_cancellation(xs, c.T); });
        j.key("cancellation_fit");
        j.begin_object();
        j.field("x", fit.xs);
        j.field("L", fit.L);
        j.field("ratio4", fit.ratio4);
        j.field("C4", fit.C4);
        j.end_object();
    }
    j.end_object();
    return {j.str(), false, false};
}

Outcome run_gonek(const RunConfig& c, Artifacts& art, std::ostream& log) {
    const ZeroList zeros = art.timed("find_zeros", [&] { return find_zeros(10.0, c.T); });
    const double count_estimate = riemann_siegel_theta(c.T) / 3.141592653589793 + 1.0;
    log << "gonek: T=" << c.T << " zeros found=" << zeros.found_count << " expected=" << zeros.expected_count << "\n";
    std::vector<double> alphas;
    if (c.alpha) {
        alphas = {*c.alpha};
    } else {
        const double cap = std::log(c.T) / (2.0 * 3.141592653589793);
        for (double a : {-1.0, -0.5, 0.0, 0.25, 0.5, 1.0, 2.0}) {
            if (std::abs(a) <= cap) alphas.push_back(a);
        }
    }
    const auto reports =
        art.timed("gonek_sum", [&] { return gonek_alpha_grid(zeros, alphas, c.T, c.workers); });
    art.write("gonek.csv", gonek_csv(reports));

    JsonWriter j;
    j.begin_object();
    j.field("command", "gonek");
    j.field("T", c.T);
    j.field("zero_count_estimate", count_estimate);
    j.key("reports");
    j.begin_array();
    for (const auto& r : reports) {
        j.begin_object();
        j.field("T", r.T);
        j.field("alpha", r.alpha);
        j.field("sum_value", r.sum_value);
        j.field("main_term", r.main_term);
        j.field("ratio", r.ratio);
        j.field("n_zeros", r.n_zeros);
        j.field("completeness", r.completeness);
        j.end_object();
    }
    j.end_array();
    j.end_object();
    return {j.str(), false, false};
}

Outcome run_verify(const RunConfig&, Artifacts& art, std::ostream& log) {
    const PrimeTable table(13);
    int failures = 0;
    JsonWriter j;
    j.begin_object();
    j.field("command", "verify");

    j.key("double_factorial");
    j.begin_array();
    art.timed("double_factorial", [&] {
        for (int k = 0; k <= 40; k += 2) {
            const bool ok = double_factorial_identity(k);
            failures += ok ? 0 : 1;
            j.begin_object().field("k", k).field("ok", ok).end_object();
        }
        return 0;
    });
    j.end_array();

    j.key("repetition_decomposition");
    j.begin_array();
    art.timed("repetition_decomposition", [&] {
        for (int r = 0; r <= 3; ++r) {
            for (int s = 0; s <= 3; ++s) {
                const RepetitionReport rep = repetition_decomposition_check(r, s, table);
                failures += rep.equal ? 0 : 1;
                j.begin_object().field("r", r).field("s", s).field("lhs", rep.lhs.get_str());
                j.field("rhs", rep.rhs.get_str()).field("ok", rep.equal).end_object();
            }
        }
        return 0;
    });
    j.end_array();

    j.key("gcd_oracle");
    j.begin_array();
    art.timed("gcd_oracle", [&] {
        for (int r = 0; r <= 5; ++r) {
            for (int s = 0; r + s <= 5; ++s) {
                const GcdSumResult ex = gcd_sum_f(r, s, table, 0.0, GcdSumMode::exhaustive);
                const GcdSumResult fa = gcd_sum_f(r, s, table, 0.0, GcdSumMode::factored);
                const bool ok = ex.exact && fa.exact && *ex.exact == *fa.exact;
                failures += ok ? 0 : 1;
                j.begin_object().field("r", r).field("s", s).field("exhaustive", ex.exact->get_str());
                j.field("factored", fa.exact ? fa.exact->get_str() : std::string("n/a")).field("ok", ok).end_object();
            }
        }
        return 0;
    });
    j.end_array();
    j.field("failures", failures);
    j.end_object();
    log << "verify: " << failures << " failure(s)\n";
    return {j.str(), false, failures != 0};
}

Outcome run_bchb(const RunConfig& c, Artifacts& art, std::ostream& log) {
    const std::vector<std::uint64_t> support = {1, 2, 3, 5};
    TwistedMomentSpec spec;
    for (auto n : support) {
        spec.a[n] = 1.0;
        spec.b[n] = 1.0;
    }
    spec.theta = spec.sigma = std::max(0.01, std::log(5.0) / std::log(c.T) * 1.0001);
    spec.T = c.T;
    const double main = bchb_main_term(spec);
    const GridSpec grid = grid_for(c);
    auto observable = [&](double t) {
        std::complex<double> A = 0.0;
        for (auto n : support) {
            const double ln = std::log(static_cast<double>(n));
            A += std::polar(std::exp(-0.5 * ln), -t * ln);
        }
        return A.real() * std::norm(A);
    };
    const QuadratureEstimate q =
        art.timed("bchb_quadrature", [&] { return weighted_integral(observable, grid, sweep_for(c)); });
    const double scale = c.T * std::log(c.T);
    const double integral = q.value * scale;
    log << "bchb: main=" << main << " quadrature=" << integral << "\n";

    JsonWriter j;
    j.begin_object();
    j.field("command", "bchb");
    j.key("grid");
    write_grid(j, grid);
    j.field("support", std::vector<double>(support.begin(), support.end()));
    j.field("theta", spec.theta);
    j.field("sigma", spec.sigma);
    j.field("main_term", main);
    j.field("quadrature", integral);
    j.field("quadrature_error", q.error * scale);
    j.field("relative_error", integral / main - 1.0);
    j.end_object();
    return {j.str(), q.flagged, false};
}

std::string manifest(const RunConfig& c, const Artifacts& art, int status, double total_seconds) {
    JsonWriter j;
    j.begin_object();
    j.field("tool", "tiltzeta");
    j.field("version", version_string());
    j.key("config");
    write_config(j, c);
    j.key("timings_seconds");
    j.begin_object();
    for (const auto& [phase, secs] : art.timings) j.field(phase, secs);
    j.field("total", total_seconds);
    j.end_object();
    j.key("artifacts");
    j.begin_array();
    for (const auto& f : art.written) j.value(f);
    j.value("run_manifest.json");
    j.end_array();
    j.field("exit_status", status);
    j.end_object();
    return j.str();
}

}  // namespace

std::string version_string() { return TILTZETA_VERSION; }

int run(const RunConfig& config, std::ostream& log) {
    try {
        config.validate();
    } catch (const UsageError& e) {
        log << "usage error: " << e.what() << "\n";
        return kExitUsage;
    }
    Artifacts art;
    art.dir = config.output_dir;
    std::error_code ec;
    fs::create_directories(art.dir, ec);
    if (ec || !fs::is_directory(art.dir)) {
        log << "usage error: cannot create output directory '" << config.output_dir << "'\n";
        return kExitUsage;
    }

    const auto t0 = Clock::now();
    int status = kExitOk;
    try {
        Outcome out;
        switch (config.command) {
            case Command::clt: out = run_clt(config, art, log); break;
            case Command::moments: out = run_moments(config, art, log); break;
            case Command::predict: out = run_predict(config, art, log); break;
            case Command::gonek: out = run_gonek(config, art, log); break;
            case Command::verify: out = run_verify(config, art, log); break;
            case Command::bchb: out = run_bchb(config, art, log); break;
        }
        art.write("results.json", out.results);
        status = out.failed ? kExitError : (out.flagged ? kExitFlagged : kExitOk);
        if (out.flagged) log << "warning: quadrature error estimate exceeds 10% on at least one result\n";
    } catch (const IncompleteZerosError& e) {
        log << "error: " << e.what() << " (found " << e.found() << ", expected " << e.expected() << ")\n";
        status = kExitError;
    } catch (const std::exception& e) {
        log << "error: " << e.what() << "\n";
        status = kExitError;
    }
    const double total = std::chrono::duration<double>(Clock::now() - t0).count();
    try {
        art.write("run_manifest.json", manifest(config, art, status, total));
    } catch (const std::exception& e) {
        log << "error: " << e.what() << "\n";
        return kExitError;
    }
    return status;
}

}  // namespace tiltzeta
