#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "actopt/beam.hpp"
#include "actopt/modal_transform.hpp"
#include "actopt/riccati.hpp"

namespace actopt {

// Time histories of the state, the control, and the adjoint expansion
// coefficients (the velocity block of 2 Pi(t) Z(t)).
struct Trajectory {
    std::vector<double> time_grid;
    Eigen::MatrixXd state;           // 2N x (K+1)
    Eigen::VectorXd control;         // K+1
    Eigen::MatrixXd adjoint_coeffs;  // N x (K+1)

    int n_samples() const { return static_cast<int>(time_grid.size()); }
};

// Closed-loop simulation under the optimal feedback
//
//   Z' = (A - (1/gamma) B B^T Pi(t)) Z,  u(t) = -(1/gamma) B^T Pi(t) Z(t),
//
// on the Riccati sampling grid. The same integrating-factor RK4 scheme as the
// Riccati solver propagates each mode exactly through its eigen-exponential;
// the feedback forcing uses the gain row B^T Pi(t) interpolated linearly
// between stored samples.
inline Trajectory closed_loop_sim(const ModalSystem& sys, const RiccatiSolution& ric,
                                  const Eigen::VectorXd& z0, double gamma, int substeps = 5) {
    if (z0.size() != sys.dim())
        throw std::invalid_argument("closed_loop_sim: state dimension mismatch");
    if (substeps < 1) throw std::invalid_argument("closed_loop_sim: substeps must be >= 1");
    const int n = sys.n_modes;
    const int steps = ric.n_steps();
    const double dt = ric.dt();
    const double h = dt / substeps;
    const double inv_gamma = 1.0 / gamma;

    const ModalTransform mt(sys);
    const Eigen::VectorXcd bt = mt.input_to_modal(sys.b_vector.tail(n));
    Eigen::VectorXcd e_full(2 * n), e_half(2 * n);
    for (int i = 0; i < 2 * n; ++i) {
        e_full[i] = std::exp(h * mt.eig[i]);
        e_half[i] = std::exp(0.5 * h * mt.eig[i]);
    }

    // Gain vectors g_k = Pi(t_k) B at the sample points.
    std::vector<Eigen::VectorXd> gain(steps + 1);
    for (int k = 0; k <= steps; ++k) gain[k] = ric.matrices[k] * sys.b_vector;

    auto control_at = [&](double t, const Eigen::VectorXcd& xi) -> double {
        double s = t / dt;
        int k = std::min(static_cast<int>(s), steps - 1);
        double theta = s - k;
        Eigen::VectorXd g = (1.0 - theta) * gain[k] + theta * gain[k + 1];
        return -inv_gamma * g.dot(mt.state_from_modal(xi));
    };

    Trajectory traj;
    traj.time_grid = ric.time_grid;
    traj.state.resize(2 * n, steps + 1);
    traj.control.resize(steps + 1);
    traj.adjoint_coeffs.resize(n, steps + 1);

    Eigen::VectorXcd xi = mt.state_to_modal(z0);
    auto record = [&](int k) {
        Eigen::VectorXd z = mt.state_from_modal(xi);
        if (!z.allFinite())
            throw NumericalError("closed_loop_sim: non-finite state; increase n_steps/substeps");
        traj.state.col(k) = z;
        traj.control[k] = -inv_gamma * gain[k].dot(z);
        traj.adjoint_coeffs.col(k) = 2.0 * (ric.matrices[k] * z).tail(n);
    };

    record(0);
    Eigen::VectorXcd f1(2 * n), f2(2 * n), f3(2 * n), f4(2 * n), stage(2 * n);
    for (int k = 0; k < steps; ++k) {
        double t0 = ric.time_grid[k];
        for (int s = 0; s < substeps; ++s) {
            double t = t0 + s * h;
            f1 = bt * control_at(t, xi);
            stage = e_half.cwiseProduct(xi + (0.5 * h) * f1);
            f2 = bt * control_at(t + 0.5 * h, stage);
            stage = e_half.cwiseProduct(xi) + (0.5 * h) * f2;
            f3 = bt * control_at(t + 0.5 * h, stage);
            stage = e_full.cwiseProduct(xi) + h * e_half.cwiseProduct(f3);
            f4 = bt * control_at(t + h, stage);
            xi = e_full.cwiseProduct(xi + (h / 6.0) * f1) + (h / 3.0) * e_half.cwiseProduct(f2 + f3) +
                 (h / 6.0) * f4;
        }
        record(k + 1);
    }
    return traj;
}

// Open-loop (u = 0) evolution; each mode is propagated by its exact
// exponential. Adjoint coefficients are identically zero.
inline Trajectory open_loop_sim(const ModalSystem& sys, const Eigen::VectorXd& z0, double tau,
                                int n_steps) {
    if (z0.size() != sys.dim())
        throw std::invalid_argument("open_loop_sim: state dimension mismatch");
    if (!(tau > 0.0) || n_steps < 1) throw std::invalid_argument("open_loop_sim: bad time grid");
    const int n = sys.n_modes;
    const double dt = tau / n_steps;

    const ModalTransform mt(sys);
    Eigen::VectorXcd step(2 * n);
    for (int i = 0; i < 2 * n; ++i) step[i] = std::exp(dt * mt.eig[i]);

    Trajectory traj;
    traj.time_grid.resize(n_steps + 1);
    traj.state.resize(2 * n, n_steps + 1);
    traj.control = Eigen::VectorXd::Zero(n_steps + 1);
    traj.adjoint_coeffs = Eigen::MatrixXd::Zero(n, n_steps + 1);

    Eigen::VectorXcd xi = mt.state_to_modal(z0);
    for (int k = 0; k <= n_steps; ++k) {
        traj.time_grid[k] = tau * k / n_steps;
        traj.state.col(k) = mt.state_from_modal(xi);
        if (k < n_steps) xi = step.cwiseProduct(xi);
    }
    return traj;
}

// Trapezoidal quadrature of the running cost along a trajectory:
// integral of z^T Q z + gamma u^2 dt.
inline double trajectory_cost(const Trajectory& traj, const ModalSystem& sys, double gamma) {
    const int k_max = traj.n_samples() - 1;
    auto integrand = [&](int k) {
        double zqz = traj.state.col(k).dot(sys.q_diag.cwiseProduct(traj.state.col(k)));
        return zqz + gamma * traj.control[k] * traj.control[k];
    };
    double sum = 0.5 * (integrand(0) + integrand(k_max));
    for (int k = 1; k < k_max; ++k) sum += integrand(k);
    return sum * (traj.time_grid[1] - traj.time_grid[0]);
}

}  // namespace actopt
