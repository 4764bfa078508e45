#include "cvqp/energy.hpp"

#include <cmath>
#include <string>

#include "cvqp/measurement.hpp"
#include "cvqp/serialize.hpp"
#include "cvqp/superposition.hpp"

namespace cvqp {

double mode_energy(double x, double delta) {
    if (!(delta > 0.0) || !std::isfinite(delta)) {
        throw InvalidWidthError("mode width must be positive, got " + std::to_string(delta));
    }
    const double d2 = delta * delta;
    const double squeeze = (1.0 - d2) * (1.0 - d2) / (4.0 * d2);
    return 0.5 * x * x + squeeze;
}

double width_squared_from_budget(const EnergyBudget& budget) {
    if (!(budget.total >= 0.0) || !std::isfinite(budget.total) ||
        !std::isfinite(budget.displacement_mag)) {
        throw ConfigurationError("energy budget must be a finite nonnegative total");
    }
    const double floor = budget.displacement_mag * budget.displacement_mag;
    if (budget.total < floor) {
        throw InfeasibleBudgetError("budget " + std::to_string(budget.total) +
                                    " below displacement floor " + std::to_string(floor));
    }
    // Squeeze cost (1 - u)^2 / (2u) = total - |x|^2 solved for u = Delta^2;
    // the minus branch keeps u in (0, 1].
    const double a = 1.0 + (budget.total - floor);
    return a - std::sqrt(a * a - 1.0);
}

TradeoffSurface::TradeoffSurface(std::vector<double> xs, std::vector<double> es,
                                 std::vector<SurfaceCell> cells)
    : xs_(std::move(xs)), es_(std::move(es)), cells_(std::move(cells)) {
    if (cells_.size() != xs_.size() * es_.size()) {
        throw ConfigurationError("surface cell count does not match its axes");
    }
}

namespace {

std::vector<double> axis(double lo, double hi, std::size_t points) {
    if (points == 0 || hi < lo || !std::isfinite(lo) || !std::isfinite(hi)) {
        throw ConfigurationError("surface axis range is empty");
    }
    std::vector<double> v(points);
    if (points == 1) {
        v[0] = lo;
        return v;
    }
    for (std::size_t i = 0; i < points; ++i) {
        // Endpoint-exact spacing: interior knots hit round values like 1.0.
        v[i] = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(points - 1);
    }
    return v;
}

template <typename PlusErr>
TradeoffSurface sweep(const SurfaceGrid& grid, PlusErr&& p_plus) {
    std::vector<double> xs = axis(grid.x_min, grid.x_max, grid.x_points);
    std::vector<double> es = axis(grid.e_min, grid.e_max, grid.e_points);
    std::vector<SurfaceCell> cells;
    cells.reserve(xs.size() * es.size());
    for (double x : xs) {
        for (double e : es) {
            SurfaceCell cell{x, e, std::nullopt, std::nullopt};
            if (e >= x * x) {
                const double d2 = width_squared_from_budget(EnergyBudget{e, x});
                const double delta = std::sqrt(d2);
                cell.p_err_plus = p_plus(x, delta);
                // Mixed/equal rows read out at N(-1, Delta); label 0 errs on y > 0.
                cell.p_err_minus = prob_error(
                    GaussianMixture({MixtureComponent{1.0, -1.0, delta}}),
                    Polarity::nonpositive);
            }
            cells.push_back(cell);
        }
    }
    return TradeoffSurface(std::move(xs), std::move(es), std::move(cells));
}

} // namespace

TradeoffSurface and_surface(const SurfaceGrid& grid) {
    return sweep(grid, [](double x, double delta) {
        // (+x, +x) row: readout N(2x - 1, Delta), label 1 errs on y <= 0.
        return prob_error(GaussianMixture({MixtureComponent{1.0, 2.0 * x - 1.0, delta}}),
                          Polarity::positive);
    });
}

TradeoffSurface xor_surface(const SurfaceGrid& grid) {
    return sweep(grid, [](double x, double delta) {
        const GaussianMixture mix =
            xor_homodyne_mixture(symmetric_superposition(x, -x, delta), {1.0, -1.0}, -1.0);
        return prob_error(mix, Polarity::positive);
    });
}

void write_surface_csv(const TradeoffSurface& surface, std::ostream& out) {
    std::string text = "x,e_tot,p_err_plus,p_err_minus\n";
    for (const SurfaceCell& cell : surface.cells()) {
        text += format_double(cell.x);
        text.push_back(',');
        text += format_double(cell.e_tot);
        text.push_back(',');
        if (cell.p_err_plus) text += format_double(*cell.p_err_plus);
        text.push_back(',');
        if (cell.p_err_minus) text += format_double(*cell.p_err_minus);
        text.push_back('\n');
    }
    out << text;
}

} // namespace cvqp
