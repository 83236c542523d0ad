#include "tiltzeta/grid.hpp"

#include <cmath>
#include <cstring>
#include <numbers>
#include <sstream>

#include "tiltzeta/error.hpp"

namespace tiltzeta {

namespace {

constexpr double kGl4Node[2] = {0.3399810435848562648, 0.8611363115940525752};
constexpr double kGl4Weight[2] = {0.6521451548625461427, 0.3478548451374538574};

long fine_nodes_per_cell(QuadratureRule rule) {
    switch (rule) {
        case QuadratureRule::simpson: return 4;
        case QuadratureRule::midpoint: return 2;
        case QuadratureRule::gauss_legendre_panels: return 8;
    }
    return 4;
}

// 4-point Gauss-Legendre nodes on [a, a + w] scaled by `scale`.
void push_gl4(double a, double w, bool fine, std::vector<QuadNode>& out) {
    const double mid = a + 0.5 * w;
    const double half = 0.5 * w;
    for (int sgn : {-1, 1}) {
        for (int i = 1; i >= 0; --i) {
            const int k = sgn < 0 ? i : 1 - i;
            const double t = mid + sgn * half * kGl4Node[k];
            const double wt = half * kGl4Weight[k];
            out.push_back(fine ? QuadNode{t, wt, 0.0} : QuadNode{t, 0.0, wt});
        }
    }
}

}  // namespace

const char* to_string(QuadratureRule rule) {
    switch (rule) {
        case QuadratureRule::midpoint: return "midpoint";
        case QuadratureRule::simpson: return "simpson";
        case QuadratureRule::gauss_legendre_panels: return "gauss_legendre_panels";
    }
    return "simpson";
}

QuadratureRule parse_quadrature_rule(const char* name) {
    if (std::strcmp(name, "midpoint") == 0) return QuadratureRule::midpoint;
    if (std::strcmp(name, "simpson") == 0) return QuadratureRule::simpson;
    if (std::strcmp(name, "gauss_legendre_panels") == 0 || std::strcmp(name, "gauss") == 0) {
        return QuadratureRule::gauss_legendre_panels;
    }
    throw DomainError(std::string("unknown quadrature rule: ") + name);
}

long required_points(double T, double oversample) {
    const double u = T / (2.0 * std::numbers::pi);
    return static_cast<long>(std::ceil(oversample * u * std::log(u)));
}

void GridSpec::validate() const {
    if (!(T >= 100.0)) {
        std::ostringstream msg;
        msg << "grid: T must be >= 100 (got " << T << ")";
        throw DomainError(msg.str());
    }
    if (!(oversample >= 4.0)) throw DomainError("grid: oversample must be >= 4 points per zero gap");
    if (n_points < required_points(T, oversample)) {
        std::ostringstream msg;
        msg << "grid: n_points " << n_points << " below the oversampling requirement "
            << required_points(T, oversample);
        throw DomainError(msg.str());
    }
}

GridSpec make_grid(double T, double oversample, QuadratureRule rule) {
    GridSpec g;
    g.T = T;
    g.oversample = oversample;
    g.rule = rule;
    const long per_cell = fine_nodes_per_cell(rule);
    const long need = T >= 100.0 ? required_points(T, oversample) : per_cell;
    const long cells = std::max(1L, (need + per_cell - 1) / per_cell);
    g.n_points = cells * per_cell + (rule == QuadratureRule::simpson ? 1 : 0);
    g.validate();
    return g;
}

QuadratureGrid::QuadratureGrid(const GridSpec& spec) : spec_(spec) {
    spec_.validate();
    const long per_cell = fine_nodes_per_cell(spec_.rule);
    const long fine = spec_.n_points - (spec_.rule == QuadratureRule::simpson ? 1 : 0);
    cells_ = std::max(1L, fine / per_cell);
    panels_ = static_cast<std::size_t>((cells_ + kCellsPerPanel - 1) / kCellsPerPanel);
    cell_width_ = spec_.T / static_cast<double>(cells_);
}

int QuadratureGrid::richardson_order() const noexcept {
    switch (spec_.rule) {
        case QuadratureRule::midpoint: return 2;
        case QuadratureRule::simpson: return 4;
        case QuadratureRule::gauss_legendre_panels: return 8;
    }
    return 4;
}

double QuadratureGrid::richardson_divisor() const noexcept {
    return std::ldexp(1.0, richardson_order()) - 1.0;
}

void QuadratureGrid::append_cell(long cell, std::vector<QuadNode>& out) const {
    const double a = spec_.T + static_cast<double>(cell) * cell_width_;
    const double w = cell_width_;
    switch (spec_.rule) {
        case QuadratureRule::simpson: {
            const double h = w / 4.0;
            const double H = 2.0 * h;
            const double edge_f = cell == 0 ? h / 3.0 : 2.0 * h / 3.0;
            const double edge_c = cell == 0 ? H / 3.0 : 2.0 * H / 3.0;
            out.push_back({a, edge_f, edge_c});
            out.push_back({a + h, 4.0 * h / 3.0, 0.0});
            out.push_back({a + 2.0 * h, 2.0 * h / 3.0, 4.0 * H / 3.0});
            out.push_back({a + 3.0 * h, 4.0 * h / 3.0, 0.0});
            if (cell == cells_ - 1) out.push_back({spec_.T * 2.0, h / 3.0, H / 3.0});
            break;
        }
        case QuadratureRule::midpoint:
            out.push_back({a + 0.25 * w, 0.5 * w, 0.0});
            out.push_back({a + 0.5 * w, 0.0, w});
            out.push_back({a + 0.75 * w, 0.5 * w, 0.0});
            break;
        case QuadratureRule::gauss_legendre_panels:
            push_gl4(a, 0.5 * w, true, out);
            push_gl4(a, w, false, out);
            push_gl4(a + 0.5 * w, 0.5 * w, true, out);
            break;
    }
}

std::vector<QuadNode> QuadratureGrid::panel_nodes(std::size_t panel) const {
    std::vector<QuadNode> out;
    const long first = static_cast<long>(panel) * kCellsPerPanel;
    const long last = std::min(cells_, first + kCellsPerPanel);
    out.reserve(static_cast<std::size_t>((last - first) * 12 + 1));
    for (long c = first; c < last; ++c) append_cell(c, out);
    return out;
}

}  // namespace tiltzeta
