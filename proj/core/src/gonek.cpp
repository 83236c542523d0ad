#include "tiltzeta/gonek.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <numbers>
#include <sstream>
#include <thread>

#include "tiltzeta/error.hpp"
#include "tiltzeta/json_writer.hpp"

namespace tiltzeta {

namespace {

constexpr std::size_t kBlock = 128;
// Below the first zero ordinate 14.1347...
constexpr double kFirstZeroFloor = 14.0;

std::size_t zeros_up_to(const ZeroList& zeros, double T) {
    return static_cast<std::size_t>(std::upper_bound(zeros.gammas.begin(), zeros.gammas.end(), T) -
                                    zeros.gammas.begin());
}

void check_inputs(const ZeroList& zeros, double alpha, double T) {
    if (!(T >= 10.0)) throw DomainError("gonek: T must be >= 10");
    if (!(std::abs(alpha) <= std::log(T) / (2.0 * std::numbers::pi))) {
        std::ostringstream msg;
        msg << "gonek: |alpha| = " << std::abs(alpha) << " exceeds log T / 2pi = " << std::log(T) / (2.0 * std::numbers::pi);
        throw DomainError(msg.str());
    }
    if (!zeros.complete) {
        std::ostringstream msg;
        msg << "gonek: zero list is incomplete (found " << zeros.found_count << ", expected " << zeros.expected_count
            << ")";
        throw IncompleteZerosError(msg.str(), zeros.found_count, zeros.expected_count);
    }
    if (!(zeros.t_lo <= kFirstZeroFloor) || !(zeros.t_hi >= T)) {
        std::ostringstream msg;
        msg << "gonek: zero list [" << zeros.t_lo << ", " << zeros.t_hi << "] does not span (0, " << T << "]";
        throw DomainError(msg.str());
    }
}

}  // namespace

double gonek_sum(const ZeroList& zeros, double alpha, double T, int workers) {
    check_inputs(zeros, alpha, T);
    const std::size_t n = zeros_up_to(zeros, T);
    const double shift = 2.0 * std::numbers::pi * alpha / std::log(T);
    const std::size_t blocks = (n + kBlock - 1) / kBlock;
    std::vector<double> partial(blocks, 0.0);
    std::atomic<std::size_t> next{0};
    auto work = [&] {
        for (std::size_t b; (b = next.fetch_add(1)) < blocks;) {
            double acc = 0.0;
            const std::size_t end = std::min(n, (b + 1) * kBlock);
            for (std::size_t i = b * kBlock; i < end; ++i) acc += zeta_half(zeros.gammas[i] + shift).abs2;
            partial[b] = acc;
        }
    };
    const int threads = std::max(1, std::min<int>(workers, static_cast<int>(blocks)));
    if (threads <= 1) {
        work();
    } else {
        std::vector<std::jthread> pool;
        for (int i = 0; i < threads; ++i) pool.emplace_back(work);
    }
    double total = 0.0;
    for (double p : partial) total += p;
    return total;
}

double gonek_main_term(double alpha, double T) {
    if (!(T >= 10.0)) throw DomainError("gonek_main_term: T must be >= 10");
    const double x = std::numbers::pi * alpha;
    const double sinc = x == 0.0 ? 1.0 : std::sin(x) / x;
    const double logT = std::log(T);
    return (1.0 - sinc * sinc) * T / (2.0 * std::numbers::pi) * logT * logT;
}

GonekReport gonek_report(const ZeroList& zeros, double alpha, double T, int workers) {
    GonekReport rep;
    rep.T = T;
    rep.alpha = alpha;
    rep.sum_value = gonek_sum(zeros, alpha, T, workers);
    rep.main_term = gonek_main_term(alpha, T);
    rep.ratio = rep.main_term > 0.0 ? rep.sum_value / rep.main_term : std::nan("");
    rep.n_zeros = static_cast<long>(zeros_up_to(zeros, T));
    rep.completeness = zeros.complete;
    return rep;
}

std::vector<GonekReport> gonek_alpha_grid(const ZeroList& zeros, const std::vector<double>& alphas, double T,
                                          int workers) {
    std::vector<GonekReport> out;
    out.reserve(alphas.size());
    for (double a : alphas) out.push_back(gonek_report(zeros, a, T, workers));
    return out;
}

std::string gonek_csv(const std::vector<GonekReport>& reports) {
    std::string out = "alpha,sum,main_term,ratio,n_zeros\n";
    for (const auto& r : reports) {
        out += format_number(r.alpha) + ',' + format_number(r.sum_value) + ',' + format_number(r.main_term) + ',' +
               format_number(r.ratio) + ',' + std::to_string(r.n_zeros) + '\n';
    }
    return out;
}

}  // namespace tiltzeta
