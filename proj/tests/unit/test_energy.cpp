#include <cmath>
#include <sstream>
#include <string>

#include "cvqp/energy.hpp"
#include "cvqp/errors.hpp"
#include "cvqp/perceptron.hpp"
#include "doctest.h"

using cvqp::and_surface;
using cvqp::EnergyBudget;
using cvqp::mode_energy;
using cvqp::SurfaceCell;
using cvqp::SurfaceGrid;
using cvqp::TradeoffSurface;
using cvqp::width_squared_from_budget;
using cvqp::xor_surface;

namespace {

bool rel_close(double value, double reference, double tol) {
    return std::fabs(value - reference) <= tol * std::fabs(reference);
}

}  // namespace

TEST_SUITE("energy") {

TEST_CASE("vacuum costs nothing; displacement and squeezing both cost photons") {
    CHECK(mode_energy(0.0, 1.0) == 0.0);
    CHECK(mode_energy(2.0, 1.0) == 2.0);
    CHECK(2.0 * mode_energy(2.0, 1.0) == 4.0);
    // Two modes displaced by one at width 1/e; 40-digit reference.
    CHECK(rel_close(2.0 * mode_energy(1.0, std::exp(-1.0)), 3.7621956910836315, 1e-14));
    CHECK(mode_energy(0.0, 0.5) > 0.0);
    CHECK_THROWS_AS(mode_energy(1.0, 0.0), cvqp::InvalidWidthError);
    CHECK_THROWS_AS(mode_energy(1.0, -1.0), cvqp::InvalidWidthError);
}

TEST_CASE("spending exactly the displacement budget leaves the width untouched") {
    CHECK(width_squared_from_budget(EnergyBudget{1.0, 1.0}) == 1.0);
    CHECK(width_squared_from_budget(EnergyBudget{4.0, 2.0}) == 1.0);
    CHECK(width_squared_from_budget(EnergyBudget{0.0, 0.0}) == 1.0);
}

TEST_CASE("the familiar 3.76-photon budget buys roughly 1/e of width") {
    const double d2 = width_squared_from_budget(EnergyBudget{3.7621956910836315, 1.0});
    CHECK(std::fabs(d2 - std::exp(-2.0)) <= 1e-3);
    CHECK(rel_close(2.0 * mode_energy(1.0, std::sqrt(d2)), 3.7621956910836315, 1e-12));
}

TEST_CASE("a 50-photon budget at unit displacement, reference inversion") {
    const double d2 = width_squared_from_budget(EnergyBudget{50.0, 1.0});
    CHECK(rel_close(d2, 0.010001000200050014, 1e-12));
}

TEST_CASE("budgets below the displacement floor are infeasible") {
    CHECK_THROWS_AS(width_squared_from_budget(EnergyBudget{0.5, 1.0}),
                    cvqp::InfeasibleBudgetError);
    CHECK_THROWS_AS(width_squared_from_budget(EnergyBudget{-1.0, 0.0}),
                    cvqp::ConfigurationError);
}

TEST_CASE("budget inversion round-trips and never anti-squeezes") {
    for (int xi = 0; xi < 100; ++xi) {
        for (int ei = 0; ei < 100; ++ei) {
            const double x = 2.0 * static_cast<double>(xi) / 99.0;
            const double e = 6.0 * static_cast<double>(ei) / 99.0;
            if (e < x * x) {
                continue;
            }
            const double d2 = width_squared_from_budget(EnergyBudget{e, x});
            REQUIRE(d2 > 0.0);
            CHECK(d2 <= 1.0);
            CHECK(std::fabs(2.0 * mode_energy(x, std::sqrt(d2)) - e) <= 1e-10);
        }
    }
}

TEST_CASE("conjunction surface reproduces the hand-checked cells") {
    const TradeoffSurface surf = and_surface(SurfaceGrid{});
    REQUIRE(surf.xs().size() == 121);
    REQUIRE(surf.es().size() == 121);
    // x = 1 sits at index 60, E = 1 at index 20; both land exactly on the knots.
    const SurfaceCell& cell = surf.at(60, 20);
    REQUIRE(cell.x == 1.0);
    REQUIRE(cell.e_tot == 1.0);
    REQUIRE(cell.p_err_plus.has_value());
    CHECK(rel_close(*cell.p_err_plus, 0.15865525393145705, 1e-13));
    REQUIRE(cell.p_err_minus.has_value());
    CHECK(rel_close(*cell.p_err_minus, 0.15865525393145705, 1e-13));
}

TEST_CASE("a single-cell surface hits the high-energy conjunction value") {
    const TradeoffSurface surf =
        and_surface(SurfaceGrid{1.0, 1.0, 3.7621956910836315, 3.7621956910836315, 1, 1});
    const SurfaceCell& cell = surf.at(0, 0);
    REQUIRE(cell.p_err_plus.has_value());
    // Rounded to one significant figure in percent this is the 0.3% cell.
    CHECK(std::fabs(*cell.p_err_plus - 0.0033) <= 1e-4);
    CHECK(std::fabs(*cell.p_err_plus - 0.0032810958362956705) <= 2e-7);
}

TEST_CASE("conjunction error decreases as the budget grows at fixed displacement") {
    const TradeoffSurface surf = and_surface(SurfaceGrid{});
    double prev = 1.0;
    std::size_t feasible = 0;
    for (std::size_t ei = 0; ei < surf.es().size(); ++ei) {
        const SurfaceCell& cell = surf.at(60, ei);
        if (!cell.p_err_plus.has_value()) {
            CHECK(cell.e_tot < 1.0); // below the x = 1 displacement floor
            continue;
        }
        ++feasible;
        CHECK(*cell.p_err_plus <= prev);
        prev = *cell.p_err_plus;
    }
    CHECK(feasible == 101);
    CHECK(prev < 0.0005);
}

TEST_CASE("the mixed-row error depends only on the width, not the displacement") {
    // Cells whose budget exceeds the displacement floor by the same amount
    // invert to bit-identical widths; the mixed-row tail (a mean -1 Gaussian,
    // no x in it) must then be literally identical.
    const TradeoffSurface surf = and_surface(SurfaceGrid{});
    const SurfaceCell& a = surf.at(0, 40);   // x = 0, E = 2
    const SurfaceCell& b = surf.at(60, 60);  // x = 1, E = 3
    REQUIRE(a.x == 0.0);
    REQUIRE(a.e_tot == 2.0);
    REQUIRE(b.x == 1.0);
    REQUIRE(b.e_tot == 3.0);
    REQUIRE(a.p_err_minus.has_value());
    REQUIRE(b.p_err_minus.has_value());
    CHECK(*a.p_err_minus == *b.p_err_minus);
    CHECK(*a.p_err_minus < 0.16);
}

TEST_CASE("infeasible cells stay empty instead of being clamped") {
    const TradeoffSurface surf = and_surface(SurfaceGrid{});
    const SurfaceCell& corner = surf.at(120, 0); // x = 2, E = 0
    CHECK(corner.x == 2.0);
    CHECK(corner.e_tot == 0.0);
    CHECK(!corner.p_err_plus.has_value());
    CHECK(!corner.p_err_minus.has_value());
    // E = x^2 exactly is feasible: x = 2 at E = 4 (index 80).
    const SurfaceCell& edge = surf.at(120, 80);
    REQUIRE(edge.e_tot == 4.0);
    CHECK(edge.p_err_plus.has_value());
}

TEST_CASE("parity surface errs above one half everywhere and approaches it with energy") {
    const TradeoffSurface surf = xor_surface(SurfaceGrid{});
    for (const SurfaceCell& cell : surf.cells()) {
        if (cell.p_err_plus.has_value()) {
            CHECK(*cell.p_err_plus > 0.5);
            CHECK(*cell.p_err_plus <= 1.0);
            REQUIRE(cell.p_err_minus.has_value());
            CHECK(*cell.p_err_minus >= 0.0);
            CHECK(*cell.p_err_minus <= 1.0);
        } else {
            CHECK(cell.e_tot < cell.x * cell.x);
        }
    }
    const TradeoffSurface rich = xor_surface(SurfaceGrid{1.0, 1.0, 50.0, 50.0, 1, 1});
    REQUIRE(rich.at(0, 0).p_err_plus.has_value());
    CHECK(std::fabs(*rich.at(0, 0).p_err_plus - 0.5) <= 0.01);
}

TEST_CASE("a generous parity budget answers correctly three times in four") {
    const double d2 = width_squared_from_budget(EnergyBudget{50.0, 1.0});
    const cvqp::ExperimentReport report = cvqp::run_xor(std::sqrt(d2));
    CHECK(std::fabs(report.aggregate_accuracy - 0.75) <= 0.01);
}

TEST_CASE("surfaces reject empty or inverted ranges") {
    CHECK_THROWS_AS(and_surface(SurfaceGrid{0.0, 2.0, 0.0, 6.0, 0, 121}),
                    cvqp::ConfigurationError);
    CHECK_THROWS_AS(and_surface(SurfaceGrid{2.0, 0.0, 0.0, 6.0, 121, 121}),
                    cvqp::ConfigurationError);
    CHECK_THROWS_AS(xor_surface(SurfaceGrid{0.0, 2.0, 6.0, 0.0, 121, 121}),
                    cvqp::ConfigurationError);
}

TEST_CASE("surface CSV uses the fixed header, blank missing fields, and stable bytes") {
    const TradeoffSurface surf = and_surface(SurfaceGrid{0.0, 2.0, 0.0, 6.0, 3, 3});
    std::ostringstream first;
    cvqp::write_surface_csv(surf, first);
    std::ostringstream second;
    cvqp::write_surface_csv(surf, second);
    CHECK(first.str() == second.str());

    const std::string text = first.str();
    CHECK(text.substr(0, text.find('\n')) == "x,e_tot,p_err_plus,p_err_minus");
    // Row-major: the x = 2, E = 0 corner is infeasible -> two empty fields.
    CHECK(text.find("\n2.0,0.0,,\n") != std::string::npos);
    // 10 lines: header plus nine cells.
    std::size_t lines = 0;
    for (char ch : text) {
        lines += ch == '\n' ? 1 : 0;
    }
    CHECK(lines == 10);
}

}  // TEST_SUITE
