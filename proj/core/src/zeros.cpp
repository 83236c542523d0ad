#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numbers>
#include <sstream>

#include <boost/math/tools/toms748_solve.hpp>

#include "tiltzeta/error.hpp"
#include "tiltzeta/zeta.hpp"

namespace tiltzeta {

namespace {

constexpr int kMaxRefineDepth = 12;
// Up to this depth every sign-less interval of a deficient segment is
// trisected; deeper levels only trisect around the smallest |Z| sample.
constexpr int kExhaustiveDepth = 4;
constexpr double kRootTolerance = 1e-9;

struct Sample {
    double t;
    double z;
};

int sign_of(double v) { return (v > 0.0) - (v < 0.0); }

double z_at(double t) { return hardy_Z(t).value; }

// Zeros implied by the sample sequence: exact-zero samples plus brackets
// between consecutive nonzero samples of opposite sign.
long count_sign_changes(const std::vector<Sample>& s) {
    long count = 0;
    int last_sign = 0;
    bool zero_since_last = false;
    for (const auto& p : s) {
        const int sg = sign_of(p.z);
        if (sg == 0) {
            ++count;
            zero_since_last = true;
            continue;
        }
        if (last_sign != 0 && sg != last_sign && !zero_since_last) ++count;
        last_sign = sg;
        zero_since_last = false;
    }
    return count;
}

std::vector<Sample> trisect(const std::vector<Sample>& s, const std::vector<bool>& split) {
    std::vector<Sample> out;
    out.reserve(s.size() * 3);
    for (std::size_t i = 0; i + 1 < s.size(); ++i) {
        out.push_back(s[i]);
        if (!split[i]) continue;
        const double a = s[i].t;
        const double h = (s[i + 1].t - a) / 3.0;
        out.push_back({a + h, z_at(a + h)});
        out.push_back({a + 2.0 * h, z_at(a + 2.0 * h)});
    }
    out.push_back(s.back());
    return out;
}

// Refine a segment until it shows `expected` sign changes or depth runs out.
void refine_segment(std::vector<Sample>& seg, long expected) {
    for (int depth = 1; depth <= kMaxRefineDepth; ++depth) {
        if (count_sign_changes(seg) >= expected) return;
        std::vector<bool> split(seg.size() - 1, false);
        if (depth <= kExhaustiveDepth) {
            for (std::size_t i = 0; i + 1 < seg.size(); ++i) {
                split[i] = sign_of(seg[i].z) == sign_of(seg[i + 1].z);
            }
        } else {
            std::size_t best = 0;
            for (std::size_t i = 1; i < seg.size(); ++i) {
                if (std::abs(seg[i].z) < std::abs(seg[best].z)) best = i;
            }
            if (best > 0) split[best - 1] = true;
            if (best + 1 < seg.size()) split[best] = true;
        }
        seg = trisect(seg, split);
    }
}

double polish_root(double a, double b, double za, double zb) {
    auto f = [](double t) { return z_at(t); };
    auto tol = [](double lo, double hi) { return hi - lo <= kRootTolerance; };
    std::uintmax_t max_iter = 200;
    const auto [lo, hi] = boost::math::tools::toms748_solve(f, a, b, za, zb, tol, max_iter);
    return 0.5 * (lo + hi);
}

void collect_roots(const std::vector<Sample>& s, std::vector<double>& out) {
    const Sample* last = nullptr;
    bool zero_since_last = false;
    for (const auto& p : s) {
        if (p.z == 0.0) {
            out.push_back(p.t);
            zero_since_last = true;
            continue;
        }
        if (last != nullptr && sign_of(p.z) != sign_of(last->z) && !zero_since_last) {
            out.push_back(polish_root(last->t, p.t, last->z, p.z));
        }
        last = &p;
        zero_since_last = false;
    }
}

long count_from_parity(double theta_over_pi_plus_one, double z) {
    if (z == 0.0) return std::lround(theta_over_pi_plus_one);
    const double parity = z > 0.0 ? 1.0 : 0.0;
    return static_cast<long>(2.0 * std::round((theta_over_pi_plus_one - parity) / 2.0) + parity);
}

}  // namespace

ZeroList find_zeros(double t_lo, double t_hi) {
    if (!(t_lo >= 10.0) || !(t_hi > t_lo)) {
        std::ostringstream msg;
        msg << "find_zeros: need 10 <= t_lo < t_hi (got [" << t_lo << ", " << t_hi << "])";
        throw DomainError(msg.str());
    }
    ZeroList out;
    out.t_lo = t_lo;
    out.t_hi = t_hi;

    // Grid of points with theta(t) = j pi / 2: even j are Gram points, odd j
    // half-Gram points. Half-Gram points serve as counting anchors because the
    // parity rounding there is unambiguous for |S(t)| < 1.5. The grid runs
    // from the last half-Gram point at or below t_lo to the first at or above
    // t_hi; zeros outside [t_lo, t_hi] are dropped afterwards.
    const double th_lo = riemann_siegel_theta(t_lo);
    const double th_hi = riemann_siegel_theta(t_hi);
    auto odd_floor = [](double v) {
        const auto j = static_cast<long>(std::floor(v));
        return j % 2 != 0 ? j : j - 1;
    };
    auto odd_ceil = [](double v) {
        const auto j = static_cast<long>(std::ceil(v));
        return j % 2 != 0 ? j : j + 1;
    };
    long j_first = odd_floor(2.0 * th_lo / std::numbers::pi);
    const long j_last = odd_ceil(2.0 * th_hi / std::numbers::pi);

    struct Anchor {
        std::size_t index;  // into `points`
        long count;         // N(t) estimate
    };
    std::vector<Sample> points;
    std::vector<Anchor> anchors;
    double guess = 0.0;
    if (j_first < -1) {
        // No half-Gram point below t_lo (theta has its minimum above -3 pi / 2);
        // S(t) is tiny here, so t_lo itself is a safe anchor.
        const double z = z_at(t_lo);
        points.push_back({t_lo, z});
        anchors.push_back({0, count_from_parity(th_lo / std::numbers::pi + 1.0, z)});
        guess = t_lo;
        j_first = -1;
    }
    for (long j = j_first; j <= j_last; ++j) {
        const double target = static_cast<double>(j) * std::numbers::pi / 2.0;
        const double t = theta_inverse(target, guess);
        guess = t;
        if (!points.empty() && !(t > points.back().t)) continue;
        const double z = z_at(t);
        points.push_back({t, z});
        if (j % 2 != 0) anchors.push_back({points.size() - 1, count_from_parity(static_cast<double>(j) / 2.0 + 1.0, z)});
    }
    if (anchors.size() < 2) throw DomainError("find_zeros: failed to place counting anchors");

    const long extended_expected = anchors.back().count - anchors.front().count;
    std::vector<double> roots;
    for (std::size_t a = 0; a + 1 < anchors.size(); ++a) {
        const std::size_t i0 = anchors[a].index;
        const std::size_t i1 = anchors[a + 1].index;
        std::vector<Sample> seg(points.begin() + static_cast<std::ptrdiff_t>(i0),
                                points.begin() + static_cast<std::ptrdiff_t>(i1) + 1);
        const long expected = anchors[a + 1].count - anchors[a].count;
        refine_segment(seg, expected);
        collect_roots(seg, roots);
    }

    // An exact zero on a shared anchor is collected by both neighbours.
    std::sort(roots.begin(), roots.end());
    roots.erase(std::unique(roots.begin(), roots.end()), roots.end());
    const auto extended_found = static_cast<long>(roots.size());
    for (double g : roots) {
        if (g >= t_lo && g <= t_hi) out.gammas.push_back(g);
    }
    out.found_count = static_cast<long>(out.gammas.size());
    out.expected_count = extended_expected - (extended_found - out.found_count);
    out.complete = extended_found == extended_expected;
    return out;
}

double eta_min_distance(double t, const ZeroList& zeros) {
    if (!zeros.complete) throw DomainError("eta_min_distance: zero list is incomplete");
    if (!zeros.covers(t - 1.0, t + 1.0)) {
        throw DomainError("eta_min_distance: zero window must contain [t-1, t+1]");
    }
    const auto& g = zeros.gammas;
    const auto it = std::lower_bound(g.begin(), g.end(), t);
    double best = std::numeric_limits<double>::infinity();
    if (it != g.end()) best = std::min(best, std::abs(*it - t));
    if (it != g.begin()) best = std::min(best, std::abs(*std::prev(it) - t));
    return best;
}

}  // namespace tiltzeta
