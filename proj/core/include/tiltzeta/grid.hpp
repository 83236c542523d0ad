#pragma once

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace tiltzeta {

enum class QuadratureRule { midpoint, simpson, gauss_legendre_panels };

const char* to_string(QuadratureRule rule);
QuadratureRule parse_quadrature_rule(const char* name);

/// Quadrature over the window [T, 2T].
struct GridSpec {
    double T = 0.0;
    /// Number of fine-rule nodes.
    long n_points = 0;
    QuadratureRule rule = QuadratureRule::simpson;
    /// Nodes per mean zero gap 2 pi / log(T / 2 pi); at least 4.
    double oversample = 6.0;

    /// Throws DomainError unless T >= 100, oversample >= 4 and n_points >=
    /// required_points(T, oversample).
    void validate() const;
};

/// oversample * (T / 2pi) * log(T / 2pi), rounded up.
long required_points(double T, double oversample);

/// Smallest grid for the rule meeting the oversampling requirement; validated.
GridSpec make_grid(double T, double oversample = 6.0, QuadratureRule rule = QuadratureRule::simpson);

/// One quadrature node with its weight in the fine rule and in the nested
/// coarse rule used for the Richardson error estimate. Nodes that belong to
/// only one of the rules carry a zero weight in the other.
struct QuadNode {
    double t;
    double w_fine;
    double w_coarse;
};

/// Node layout for a GridSpec, partitioned into fixed panels.
///
/// [T, 2T] is split into equal cells. Per cell:
///   simpson    4 fine intervals; the coarse rule is Simpson on every other node
///   midpoint   2 fine midpoints plus the coarse (single) midpoint
///   gauss_legendre_panels  4-point Gauss-Legendre on each half (fine) and on
///              the whole cell (coarse)
/// The panel partition depends only on the GridSpec, never on the number of
/// workers, so reductions in panel order are reproducible bit for bit.
class QuadratureGrid {
public:
    explicit QuadratureGrid(const GridSpec& spec);

    const GridSpec& spec() const noexcept { return spec_; }
    long cell_count() const noexcept { return cells_; }
    std::size_t panel_count() const noexcept { return panels_; }
    /// Order p of the fine rule; error estimate is |I_fine - I_coarse| / (2^p - 1).
    int richardson_order() const noexcept;
    double richardson_divisor() const noexcept;

    std::vector<QuadNode> panel_nodes(std::size_t panel) const;

    static constexpr long kCellsPerPanel = 256;

private:
    void append_cell(long cell, std::vector<QuadNode>& out) const;

    GridSpec spec_;
    long cells_ = 0;
    std::size_t panels_ = 0;
    double cell_width_ = 0.0;
};

/// Runs `visit(state, node)` over every node, one private `State` per panel,
/// with up to `workers` threads pulling panels from a shared counter. Returns
/// the panel states in panel order.
template <class State, class Init, class Visit>
std::vector<State> run_panels(const QuadratureGrid& grid, int workers, Init init, Visit visit) {
    const std::size_t n = grid.panel_count();
    std::vector<State> states;
    states.reserve(n);
    for (std::size_t i = 0; i < n; ++i) states.push_back(init());

    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    auto work = [&] {
        for (;;) {
            const std::size_t panel = next.fetch_add(1);
            if (panel >= n) return;
            try {
                for (const QuadNode& node : grid.panel_nodes(panel)) visit(states[panel], node);
            } catch (...) {
                std::lock_guard lock(failure_mutex);
                if (!failure) failure = std::current_exception();
                next = n;
                return;
            }
        }
    };
    const int threads = std::max(1, std::min<int>(workers, static_cast<int>(n)));
    if (threads == 1) {
        work();
    } else {
        std::vector<std::jthread> pool;
        pool.reserve(static_cast<std::size_t>(threads));
        for (int i = 0; i < threads; ++i) pool.emplace_back(work);
    }
    if (failure) std::rethrow_exception(failure);
    return states;
}

}  // namespace tiltzeta
