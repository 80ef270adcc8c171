#pragma once

#include <stdexcept>
#include <vector>

namespace actopt {

// Uniform partition of [0,1] into M cells. Shapes and level-set functions
// live on cell centers.
struct Grid {
    int n_cells;
    double cell_width;

    explicit Grid(int m) : n_cells(m), cell_width(1.0 / m) {
        if (m < 2) throw std::invalid_argument("Grid: need at least 2 cells");
    }

    double center(int j) const { return (j + 0.5) * cell_width; }
    double left_edge(int j) const { return j * cell_width; }
    double right_edge(int j) const { return (j + 1) * cell_width; }

    std::vector<double> centers() const {
        std::vector<double> xs(n_cells);
        for (int j = 0; j < n_cells; ++j) xs[j] = center(j);
        return xs;
    }

    bool operator==(const Grid& other) const { return n_cells == other.n_cells; }
};

}  // namespace actopt
