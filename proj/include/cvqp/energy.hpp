#pragma once

#include <cstddef>
#include <optional>
#include <ostream>
#include <vector>

#include "cvqp/errors.hpp"

namespace cvqp {

// Mean photon number of a displaced squeezed mode:
//   E(x, Delta) = |x|^2 / 2 + (1 - Delta^2)^2 / (4 Delta^2).
// Vacuum (x = 0, Delta = 1) costs zero. Throws InvalidWidthError on
// delta <= 0.
double mode_energy(double x, double delta);

// Total budget for two equal modes displaced by +-displacement_mag:
//   E_total = |x|^2 + (1 - Delta^2)^2 / (2 Delta^2),
// feasible only when total >= displacement_mag^2.
struct EnergyBudget {
    double total = 0.0;
    double displacement_mag = 0.0;
};

// Inverts the two-mode budget for the squeezed width: with
// A = 1 + total - displacement_mag^2,
//   Delta^2 = A - sqrt(A^2 - 1),
// the root branch that keeps Delta^2 in (0, 1]. Returns Delta^2.
// Throws InfeasibleBudgetError when total < displacement_mag^2.
double width_squared_from_budget(const EnergyBudget& budget);

// Rectangular (x, E_total) sweep. Points are inclusive endpoints with
// uniform spacing; a single-point axis pins the range's low edge.
struct SurfaceGrid {
    double x_min = 0.0;
    double x_max = 2.0;
    double e_min = 0.0;
    double e_max = 6.0;
    std::size_t x_points = 121;
    std::size_t e_points = 121;
};

// One grid cell; infeasible budgets (e_tot < x^2) keep both error fields
// empty rather than clamped.
struct SurfaceCell {
    double x = 0.0;
    double e_tot = 0.0;
    std::optional<double> p_err_plus;
    std::optional<double> p_err_minus;
};

// Row-major sweep result: x varies in the outer loop, e_tot in the inner.
class TradeoffSurface {
  public:
    TradeoffSurface(std::vector<double> xs, std::vector<double> es, std::vector<SurfaceCell> cells);

    const std::vector<double>& xs() const noexcept { return xs_; }
    const std::vector<double>& es() const noexcept { return es_; }
    const std::vector<SurfaceCell>& cells() const noexcept { return cells_; }
    const SurfaceCell& at(std::size_t xi, std::size_t ei) const {
        return cells_[xi * es_.size() + ei];
    }

  private:
    std::vector<double> xs_;
    std::vector<double> es_;
    std::vector<SurfaceCell> cells_;
};

// Two-input conjunction at inputs +-x, weights (1, 1), bias -1, with the
// width taken from the budget at every feasible cell:
//   p_err_plus  = mass at y <= 0 of N(2x - 1, Delta)   (the (+x, +x) row)
//   p_err_minus = mass at y > 0 of N(-1, Delta)        (the mixed rows).
TradeoffSurface and_surface(const SurfaceGrid& grid);

// Two-input parity at inputs x1 = -x2 = x under the symmetric-superposition
// encoding, weights (1, -1), bias -1:
//   p_err_plus  = mass at y <= 0 of the three-component parity mixture
//   p_err_minus = mass at y > 0 of N(-1, Delta) (the equal-input rows).
TradeoffSurface xor_surface(const SurfaceGrid& grid);

// CSV serialization: header "x,e_tot,p_err_plus,p_err_minus", one row per
// cell in row-major order, missing cells as empty fields, shortest
// round-trip float formatting.
void write_surface_csv(const TradeoffSurface& surface, std::ostream& out);

} // namespace cvqp
