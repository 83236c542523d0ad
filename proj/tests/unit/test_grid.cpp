#include <cmath>
#include <numbers>
#include <stdexcept>

#include <doctest.h>

#include "tiltzeta/error.hpp"
#include "tiltzeta/grid.hpp"

using namespace tiltzeta;

namespace {

struct Sums {
    double fine = 0.0;
    double coarse = 0.0;
    long nodes = 0;
};

Sums integrate(const GridSpec& spec, double (*f)(double), int workers = 1) {
    const QuadratureGrid grid(spec);
    const auto states = run_panels<Sums>(grid, workers, [] { return Sums{}; }, [&](Sums& s, const QuadNode& n) {
        s.fine += n.w_fine * f(n.t);
        s.coarse += n.w_coarse * f(n.t);
        ++s.nodes;
    });
    Sums out;
    for (const Sums& s : states) {
        out.fine += s.fine;
        out.coarse += s.coarse;
        out.nodes += s.nodes;
    }
    return out;
}

double one(double) { return 1.0; }
double cubic(double t) { return t * t * t; }
double septic(double t) { return std::pow(t / 1000.0, 7); }

}  // namespace

TEST_SUITE("grid") {

TEST_CASE("required points") {
    const double u = 1e4 / (2 * std::numbers::pi);
    CHECK(required_points(1e4, 6) == long(std::ceil(6 * u * std::log(u))));
}

TEST_CASE("validation") {
    GridSpec g = make_grid(1e4);
    CHECK_NOTHROW(g.validate());
    CHECK(g.n_points >= required_points(1e4, 6));
    g.n_points = 10;
    CHECK_THROWS_AS(g.validate(), DomainError);
    CHECK_THROWS_AS(make_grid(50), DomainError);
    CHECK_THROWS_AS(make_grid(1e4, 3), DomainError);
}

TEST_CASE("rule names") {
    CHECK(parse_quadrature_rule("simpson") == QuadratureRule::simpson);
    CHECK(parse_quadrature_rule("midpoint") == QuadratureRule::midpoint);
    CHECK(parse_quadrature_rule("gauss") == QuadratureRule::gauss_legendre_panels);
    CHECK(std::string(to_string(QuadratureRule::gauss_legendre_panels)) ==
          to_string(parse_quadrature_rule(to_string(QuadratureRule::gauss_legendre_panels))));
    CHECK_THROWS(parse_quadrature_rule("trapezoid"));
}

TEST_CASE("weights sum to the window length") {
    for (auto rule : {QuadratureRule::midpoint, QuadratureRule::simpson, QuadratureRule::gauss_legendre_panels}) {
        const Sums s = integrate(make_grid(1e3, 6, rule), one);
        CHECK(s.fine == doctest::Approx(1e3).epsilon(1e-12));
        CHECK(s.coarse == doctest::Approx(1e3).epsilon(1e-12));
    }
}

TEST_CASE("node spacing and range") {
    const double T = 1e4;
    for (auto rule : {QuadratureRule::midpoint, QuadratureRule::simpson, QuadratureRule::gauss_legendre_panels}) {
        const GridSpec spec = make_grid(T, 6, rule);
        const QuadratureGrid grid(spec);
        long fine = 0;
        double prev = T;
        double max_gap = 0.0;
        for (std::size_t p = 0; p < grid.panel_count(); ++p) {
            for (const QuadNode& n : grid.panel_nodes(p)) {
                CHECK(n.t >= T);
                CHECK(n.t <= 2 * T);
                if (n.w_fine != 0.0) {
                    ++fine;
                    max_gap = std::max(max_gap, n.t - prev);
                    prev = n.t;
                }
            }
        }
        CHECK(fine >= spec.n_points);
        CHECK(max_gap <= 2 * std::numbers::pi / (6 * std::log(T / (2 * std::numbers::pi))) * 1.5);
    }
}

TEST_CASE("polynomial exactness") {
    const double T = 1000.0;
    const double exact3 = (std::pow(2 * T, 4) - std::pow(T, 4)) / 4;
    CHECK(integrate(make_grid(T, 6, QuadratureRule::simpson), cubic).fine == doctest::Approx(exact3).epsilon(1e-12));
    CHECK(integrate(make_grid(T, 6, QuadratureRule::simpson), cubic).coarse == doctest::Approx(exact3).epsilon(1e-12));
    const double exact7 = (std::pow(2.0, 8) - 1.0) * 1000.0 / 8;
    const Sums gl = integrate(make_grid(T, 6, QuadratureRule::gauss_legendre_panels), septic);
    CHECK(gl.fine == doctest::Approx(exact7).epsilon(1e-12));
    CHECK(gl.coarse == doctest::Approx(exact7).epsilon(1e-12));
}

TEST_CASE("richardson orders") {
    CHECK(QuadratureGrid(make_grid(1e3, 6, QuadratureRule::midpoint)).richardson_order() == 2);
    CHECK(QuadratureGrid(make_grid(1e3, 6, QuadratureRule::simpson)).richardson_order() == 4);
    CHECK(QuadratureGrid(make_grid(1e3, 6, QuadratureRule::gauss_legendre_panels)).richardson_order() == 8);
    CHECK(QuadratureGrid(make_grid(1e3)).richardson_divisor() == 15.0);
}

TEST_CASE("panel reduction is independent of the worker count") {
    const GridSpec spec = make_grid(1e4);
    const Sums a = integrate(spec, cubic, 1);
    const Sums b = integrate(spec, cubic, 8);
    CHECK(a.fine == b.fine);
    CHECK(a.coarse == b.coarse);
    CHECK(a.nodes == b.nodes);
}

TEST_CASE("worker exceptions propagate") {
    const QuadratureGrid grid(make_grid(1e4));
    auto boom = [](int&, const QuadNode& n) {
        if (n.t > 1.5e4) throw std::runtime_error("boom");
    };
    CHECK_THROWS_AS(run_panels<int>(grid, 4, [] { return 0; }, boom), std::runtime_error);
}

}
