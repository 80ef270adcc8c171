#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "actopt/grid.hpp"

namespace actopt {

// Physical and cost parameters of the damped Euler-Bernoulli beam problem.
struct BeamParams {
    double kelvin_voigt = 1e-4;   // C_d
    double viscous = 1e-3;        // mu
    double control_penalty = 1e-3;  // gamma
    double horizon = 200.0;       // tau
    double volume_penalty = 0.1;  // alpha
    double volume_target = 0.4;   // c
    int n_modes = 40;             // N

    void validate() const {
        if (kelvin_voigt < 0.0) throw std::invalid_argument("BeamParams: kelvin_voigt < 0");
        if (viscous < 0.0) throw std::invalid_argument("BeamParams: viscous < 0");
        if (!(control_penalty > 0.0)) throw std::invalid_argument("BeamParams: control_penalty must be > 0");
        if (!(horizon > 0.0)) throw std::invalid_argument("BeamParams: horizon must be > 0");
        if (volume_penalty < 0.0) throw std::invalid_argument("BeamParams: volume_penalty < 0");
        if (!(volume_target > 0.0 && volume_target < 1.0))
            throw std::invalid_argument("BeamParams: volume_target must lie in (0,1)");
        if (n_modes < 1) throw std::invalid_argument("BeamParams: n_modes must be >= 1");
    }
};

// n-th eigenvalue of the simply supported biharmonic operator: (n pi)^4.
inline double eigenvalue(int n) {
    if (n < 1) throw std::invalid_argument("eigenvalue: mode index must be >= 1");
    double npi = n * M_PI;
    return npi * npi * npi * npi;
}

// phi_n(x) = sqrt(2) sin(n pi x), L2-orthonormal on (0,1).
inline double mode_eval(int n, double x) {
    if (n < 1) throw std::invalid_argument("mode_eval: mode index must be >= 1");
    if (x < 0.0 || x > 1.0) throw std::invalid_argument("mode_eval: x outside [0,1]");
    return std::sqrt(2.0) * std::sin(n * M_PI * x);
}

struct ModalBasis {
    int n_modes;
    Eigen::VectorXd eigenvalues;  // lambda_n = (n pi)^4

    explicit ModalBasis(int n) : n_modes(n), eigenvalues(n) {
        if (n < 1) throw std::invalid_argument("ModalBasis: n_modes must be >= 1");
        for (int k = 1; k <= n; ++k) eigenvalues[k - 1] = eigenvalue(k);
    }
};

// Finite-dimensional LQR data in raw modal coordinates Z = (a, adot).
//
//   A = [ 0        I      ]      B = (0, b)      Q = diag(lambda + 1, 1)
//       [ -Lambda  -Damp   ]
//
// with Lambda = diag(lambda_n) and Damp = diag(C_d lambda_n + mu). The
// diagonal data is kept alongside the dense matrix so solvers can exploit
// the per-mode block structure.
struct ModalSystem {
    int n_modes;
    Eigen::MatrixXd a_matrix;   // 2N x 2N
    Eigen::VectorXd b_vector;   // 2N; first N entries zero
    Eigen::VectorXd q_diag;     // 2N diagonal of the H-norm weight
    Eigen::VectorXd lambdas;    // N
    Eigen::VectorXd damping;    // N, C_d lambda_n + mu

    Eigen::MatrixXd q_matrix() const { return q_diag.asDiagonal(); }
    int dim() const { return 2 * n_modes; }
};

// Assembles the first-order modal system. b holds the velocity-block input
// coefficients, one per mode.
inline ModalSystem assemble_system(const BeamParams& params, const Eigen::VectorXd& b) {
    params.validate();
    const int n = params.n_modes;
    if (b.size() != n)
        throw std::invalid_argument("assemble_system: input vector length does not match n_modes");

    ModalSystem sys;
    sys.n_modes = n;
    sys.lambdas.resize(n);
    sys.damping.resize(n);
    for (int k = 0; k < n; ++k) {
        sys.lambdas[k] = eigenvalue(k + 1);
        sys.damping[k] = params.kelvin_voigt * sys.lambdas[k] + params.viscous;
    }

    sys.a_matrix = Eigen::MatrixXd::Zero(2 * n, 2 * n);
    sys.a_matrix.topRightCorner(n, n).setIdentity();
    sys.a_matrix.bottomLeftCorner(n, n) = (-sys.lambdas).asDiagonal();
    sys.a_matrix.bottomRightCorner(n, n) = (-sys.damping).asDiagonal();

    sys.b_vector = Eigen::VectorXd::Zero(2 * n);
    sys.b_vector.tail(n) = b;

    sys.q_diag.resize(2 * n);
    sys.q_diag.head(n) = sys.lambdas.array() + 1.0;
    sys.q_diag.tail(n).setOnes();
    return sys;
}

// Squared H-norm of a state: sum (lambda_n + 1) a_n^2 + sum adot_n^2.
inline double h_norm_sq(const Eigen::VectorXd& z, const ModalBasis& basis) {
    const int n = basis.n_modes;
    if (z.size() != 2 * n) throw std::invalid_argument("h_norm_sq: dimension mismatch");
    double s = 0.0;
    for (int k = 0; k < n; ++k) {
        s += (basis.eigenvalues[k] + 1.0) * z[k] * z[k];
        s += z[n + k] * z[n + k];
    }
    return s;
}

// L2 projection of sampled displacement/velocity data onto the first N modes
// via the midpoint rule on the given grid. Exact for band-limited data with
// fewer than 2M oscillations.
inline Eigen::VectorXd project_samples(const std::vector<double>& samples, const Grid& grid,
                                       int n_modes) {
    if (static_cast<int>(samples.size()) != grid.n_cells)
        throw std::invalid_argument("project_samples: sample count does not match grid");
    Eigen::VectorXd coeffs = Eigen::VectorXd::Zero(n_modes);
    for (int n = 1; n <= n_modes; ++n) {
        double s = 0.0;
        for (int j = 0; j < grid.n_cells; ++j)
            s += samples[j] * mode_eval(n, grid.center(j));
        coeffs[n - 1] = s * grid.cell_width;
    }
    return coeffs;
}

// Stacks displacement and velocity coefficient vectors into Z(0) = (a, adot).
inline Eigen::VectorXd project_initial_condition(const Eigen::VectorXd& w0_coeffs,
                                                 const Eigen::VectorXd& v0_coeffs) {
    if (w0_coeffs.size() != v0_coeffs.size())
        throw std::invalid_argument("project_initial_condition: coefficient length mismatch");
    Eigen::VectorXd z(2 * w0_coeffs.size());
    z.head(w0_coeffs.size()) = w0_coeffs;
    z.tail(v0_coeffs.size()) = v0_coeffs;
    return z;
}

inline Eigen::VectorXd project_initial_condition(const std::vector<double>& w0_samples,
                                                 const std::vector<double>& v0_samples,
                                                 const Grid& grid, int n_modes) {
    return project_initial_condition(project_samples(w0_samples, grid, n_modes),
                                     project_samples(v0_samples, grid, n_modes));
}

// Reconstructs the displacement field w(x) = sum a_n phi_n(x) at the grid
// centers from the first N modal coefficients of z.
inline Eigen::VectorXd displacement_field(const Eigen::VectorXd& modal_coeffs, const Grid& grid) {
    Eigen::VectorXd w = Eigen::VectorXd::Zero(grid.n_cells);
    for (int j = 0; j < grid.n_cells; ++j)
        for (int n = 1; n <= modal_coeffs.size(); ++n)
            w[j] += modal_coeffs[n - 1] * mode_eval(n, grid.center(j));
    return w;
}

}  // namespace actopt
