#pragma once

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <utility>
#include <vector>

#include "actopt/grid.hpp"

namespace actopt {

// Actuator set omega as a cell-center indicator on a uniform grid.
struct ActuatorShape {
    Grid grid;
    std::vector<bool> cells;

    ActuatorShape(Grid g, std::vector<bool> c) : grid(g), cells(std::move(c)) {
        if (static_cast<int>(cells.size()) != grid.n_cells)
            throw std::invalid_argument("ActuatorShape: cell count does not match grid");
    }

    bool operator==(const ActuatorShape& other) const {
        return grid == other.grid && cells == other.cells;
    }
};

// Level-set representation: the induced shape is {psi < 0}. Cells where
// psi == 0 lie outside (strict-inequality convention).
struct LevelSet {
    Grid grid;
    Eigen::VectorXd values;

    LevelSet(Grid g, Eigen::VectorXd v) : grid(g), values(std::move(v)) {
        if (values.size() != grid.n_cells)
            throw std::invalid_argument("LevelSet: value count does not match grid");
    }
};

inline ActuatorShape shape_from_levelset(const LevelSet& psi) {
    std::vector<bool> cells(psi.grid.n_cells);
    for (int j = 0; j < psi.grid.n_cells; ++j) cells[j] = psi.values[j] < 0.0;
    return {psi.grid, std::move(cells)};
}

inline double measure(const ActuatorShape& shape) {
    long n = std::count(shape.cells.begin(), shape.cells.end(), true);
    return shape.grid.cell_width * static_cast<double>(n);
}

// Builds a shape from a list of intervals. Cell j belongs to the shape iff
// its center lies in some [a, b). Half-open so that adjacent intervals tile
// without overlap on any grid.
inline ActuatorShape shape_from_intervals(const Grid& grid,
                                          const std::vector<std::pair<double, double>>& intervals) {
    for (const auto& [a, b] : intervals) {
        if (!(a < b) || a < 0.0 || b > 1.0)
            throw std::invalid_argument("shape_from_intervals: bad interval");
    }
    std::vector<bool> cells(grid.n_cells, false);
    for (int j = 0; j < grid.n_cells; ++j) {
        double x = grid.center(j);
        for (const auto& [a, b] : intervals)
            if (x >= a && x < b) { cells[j] = true; break; }
    }
    return {grid, std::move(cells)};
}

// b_n = integral over omega of sqrt(2) sin(n pi x) dx, evaluated exactly on
// each cell through the antiderivative.
inline Eigen::VectorXd input_vector(const ActuatorShape& shape, int n_modes) {
    const double root2 = std::sqrt(2.0);
    Eigen::VectorXd b = Eigen::VectorXd::Zero(n_modes);
    for (int n = 1; n <= n_modes; ++n) {
        double npi = n * M_PI;
        double sum = 0.0;
        for (int j = 0; j < shape.grid.n_cells; ++j) {
            if (!shape.cells[j]) continue;
            sum += std::cos(npi * shape.grid.left_edge(j)) - std::cos(npi * shape.grid.right_edge(j));
        }
        b[n - 1] = root2 * sum / npi;
    }
    return b;
}

// Rebuilds psi as a signed distance to the interface. Interface points are
// zero crossings of psi between adjacent cell centers, located by linear
// interpolation. The induced shape is preserved cell for cell; uniform-sign
// inputs map to the constant +-1.
inline LevelSet signed_distance_reinit(const LevelSet& psi) {
    const Grid& g = psi.grid;
    const int m = g.n_cells;

    std::vector<bool> inside(m);
    for (int j = 0; j < m; ++j) inside[j] = psi.values[j] < 0.0;

    std::vector<double> interfaces;
    for (int j = 0; j + 1 < m; ++j) {
        if (inside[j] == inside[j + 1]) continue;
        double pl = psi.values[j], pr = psi.values[j + 1];
        double x = g.center(j) + pl / (pl - pr) * g.cell_width;
        interfaces.push_back(x);
    }

    Eigen::VectorXd out(m);
    if (interfaces.empty()) {
        out.setConstant(inside[0] ? -1.0 : 1.0);
        return {g, out};
    }
    for (int j = 0; j < m; ++j) {
        double d = std::numeric_limits<double>::infinity();
        for (double xi : interfaces) d = std::min(d, std::abs(g.center(j) - xi));
        out[j] = inside[j] ? -d : d;
    }
    return {g, out};
}

// Measure of the symmetric difference, the set metric used by the optimizer
// stopping rule.
inline double symmetric_difference(const ActuatorShape& s1, const ActuatorShape& s2) {
    if (!(s1.grid == s2.grid))
        throw std::invalid_argument("symmetric_difference: grid mismatch");
    long n = 0;
    for (int j = 0; j < s1.grid.n_cells; ++j)
        if (s1.cells[j] != s2.cells[j]) ++n;
    return s1.grid.cell_width * static_cast<double>(n);
}

// Number of maximal runs of consecutive cells in the shape.
inline int count_components(const ActuatorShape& shape) {
    int n = 0;
    bool prev = false;
    for (bool c : shape.cells) {
        if (c && !prev) ++n;
        prev = c;
    }
    return n;
}

inline ActuatorShape mirror(const ActuatorShape& shape) {
    std::vector<bool> cells(shape.cells.rbegin(), shape.cells.rend());
    return {shape.grid, std::move(cells)};
}

}  // namespace actopt
