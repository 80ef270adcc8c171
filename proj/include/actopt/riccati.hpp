#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "actopt/beam.hpp"
#include "actopt/modal_transform.hpp"
#include "actopt/ode.hpp"

namespace actopt {

// Raised when an integration produces non-finite values; the step count is
// too coarse for the system at hand.
struct NumericalError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Time-sampled backward solution of the differential Riccati equation
//
//   Pi' = -A^T Pi - Pi A + (1/gamma) Pi B B^T Pi - Q,   Pi(tau) = 0,
//
// stored at t_k = k tau / n_steps, k = 0..n_steps.
struct RiccatiSolution {
    double tau = 0.0;
    std::vector<double> time_grid;
    std::vector<Eigen::MatrixXd> matrices;

    int n_steps() const { return static_cast<int>(time_grid.size()) - 1; }
    double dt() const { return tau / n_steps(); }
    const Eigen::MatrixXd& initial() const { return matrices.front(); }

    Eigen::MatrixXd interpolate(double t) const {
        if (t <= 0.0) return matrices.front();
        if (t >= tau) return matrices.back();
        double u = t / dt();
        int k = std::min(static_cast<int>(u), n_steps() - 1);
        double theta = u - k;
        return (1.0 - theta) * matrices[k] + theta * matrices[k + 1];
    }
};

namespace detail {

inline void check_dre_args(double gamma, double tau, int n_steps, int substeps) {
    if (!(gamma > 0.0)) throw std::invalid_argument("solve_dre: gamma must be > 0");
    if (!(tau > 0.0)) throw std::invalid_argument("solve_dre: tau must be > 0");
    if (n_steps < 1) throw std::invalid_argument("solve_dre: n_steps must be >= 1");
    if (substeps < 1) throw std::invalid_argument("solve_dre: substeps must be >= 1");
}

// Integrates the modal-eigenbasis Riccati equation forward in sigma = tau - t
// with the classical fourth-order tableau in integrating-factor (Lawson)
// form: the diagonal drift sigma-rate D_ij = s_i + s_j is propagated by exact
// entrywise exponentials, the constant weight and the rank-one quadratic term
// explicitly. Reduces to plain RK4 when D = 0. Calls sink(sample_index, Pi)
// for each requested sample of the t-grid.
template <class Sink>
void integrate_modal_dre(const ModalSystem& sys, double gamma, double tau, int n_steps,
                         int substeps, bool store_all, Sink&& sink) {
    check_dre_args(gamma, tau, n_steps, substeps);
    const ModalTransform mt(sys);
    const int m = mt.dim();
    const double dt = tau / n_steps;
    const double h = dt / substeps;
    const double inv_gamma = 1.0 / gamma;

    Eigen::MatrixXcd e_full(m, m), e_half(m, m);
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j) {
            std::complex<double> d = mt.eig[i] + mt.eig[j];
            e_full(i, j) = std::exp(h * d);
            e_half(i, j) = std::exp(0.5 * h * d);
        }

    const Eigen::MatrixXcd qt = mt.weight_to_modal(sys.q_diag);
    const Eigen::VectorXcd bt = mt.input_to_modal(sys.b_vector.tail(sys.n_modes));

    Eigen::MatrixXcd u = Eigen::MatrixXcd::Zero(m, m);
    Eigen::MatrixXcd f1(m, m), f2(m, m), f3(m, m), f4(m, m), stage(m, m);
    Eigen::VectorXcd w(m);

    auto rhs_nl = [&](const Eigen::MatrixXcd& x, Eigen::MatrixXcd& out) {
        w.noalias() = x * bt;
        out = qt;
        out.noalias() -= inv_gamma * (w * w.transpose());
    };

    auto emit = [&](int sample) {
        Eigen::MatrixXd pi = mt.pi_from_modal(u);
        pi = 0.5 * (pi + pi.transpose()).eval();
        if (!pi.allFinite())
            throw NumericalError("solve_dre: non-finite entries; increase n_steps/substeps");
        sink(sample, pi);
    };

    if (store_all) emit(n_steps);  // Pi(tau) = 0
    for (int j = 1; j <= n_steps; ++j) {
        for (int s = 0; s < substeps; ++s) {
            rhs_nl(u, f1);
            stage = e_half.cwiseProduct(u + (0.5 * h) * f1);
            rhs_nl(stage, f2);
            stage = e_half.cwiseProduct(u) + (0.5 * h) * f2;
            rhs_nl(stage, f3);
            stage = e_full.cwiseProduct(u) + h * e_half.cwiseProduct(f3);
            rhs_nl(stage, f4);
            u = e_full.cwiseProduct(u + (h / 6.0) * f1) + (h / 3.0) * e_half.cwiseProduct(f2 + f3) +
                (h / 6.0) * f4;
        }
        // sigma_j = j h substeps corresponds to t index n_steps - j
        if (store_all || j == n_steps) emit(n_steps - j);
    }
}

}  // namespace detail

// Dense-matrix path: classical RK4 on the full matrix equation. Suitable for
// small or mildly stiff systems and for oracle problems with closed forms.
inline RiccatiSolution solve_dre(const Eigen::MatrixXd& a, const Eigen::VectorXd& b,
                                 const Eigen::MatrixXd& q, double gamma, double tau, int n_steps,
                                 int substeps = 1) {
    detail::check_dre_args(gamma, tau, n_steps, substeps);
    const int m = static_cast<int>(a.rows());
    if (a.cols() != m || q.rows() != m || q.cols() != m || b.size() != m)
        throw std::invalid_argument("solve_dre: dimension mismatch");

    const double dt = tau / n_steps;
    const double h = dt / substeps;
    const double inv_gamma = 1.0 / gamma;

    // sigma = tau - t; d Phi / d sigma = A^T Phi + Phi A + Q - (1/gamma)(Phi b)(Phi b)^T
    auto rhs = [&](const Eigen::MatrixXd& phi) -> Eigen::MatrixXd {
        Eigen::MatrixXd at_phi = a.transpose() * phi;
        Eigen::VectorXd w = phi * b;
        return at_phi + at_phi.transpose() + q - inv_gamma * (w * w.transpose());
    };

    RiccatiSolution sol;
    sol.tau = tau;
    sol.time_grid.resize(n_steps + 1);
    sol.matrices.resize(n_steps + 1);
    for (int k = 0; k <= n_steps; ++k) sol.time_grid[k] = tau * k / n_steps;

    Eigen::MatrixXd phi = Eigen::MatrixXd::Zero(m, m);
    sol.matrices[n_steps] = phi;
    for (int j = 1; j <= n_steps; ++j) {
        for (int s = 0; s < substeps; ++s) {
            phi = rk4_step(rhs, phi, h);
            phi = 0.5 * (phi + phi.transpose()).eval();
        }
        if (!phi.allFinite())
            throw NumericalError("solve_dre: non-finite entries; increase n_steps");
        sol.matrices[n_steps - j] = phi;
    }
    return sol;
}

// Structured beam path. The per-mode eigen decomposition keeps every step
// O(N^2) and unconditionally stable in the stiff linear part, which plain
// RK4 cannot handle at the default grid once C_d lambda_N is large.
inline RiccatiSolution solve_dre(const ModalSystem& sys, double gamma, double tau, int n_steps,
                                 int substeps = 5) {
    RiccatiSolution sol;
    sol.tau = tau;
    sol.time_grid.resize(n_steps + 1);
    sol.matrices.resize(n_steps + 1);
    for (int k = 0; k <= n_steps; ++k) sol.time_grid[k] = tau * k / n_steps;
    detail::integrate_modal_dre(sys, gamma, tau, n_steps, substeps, true,
                                [&](int k, const Eigen::MatrixXd& pi) { sol.matrices[k] = pi; });
    return sol;
}

// Pi(0) only; used where the full time history is not needed (line-search
// cost evaluations, gain sweeps).
inline Eigen::MatrixXd riccati_initial_value(const ModalSystem& sys, double gamma, double tau,
                                             int n_steps, int substeps = 5) {
    Eigen::MatrixXd pi0;
    detail::integrate_modal_dre(sys, gamma, tau, n_steps, substeps, false,
                                [&](int, const Eigen::MatrixXd& pi) { pi0 = pi; });
    return pi0;
}

// J_{1,N} = Z0^T Pi(0) Z0 + alpha (|omega| - c)^2
inline double optimal_cost(const RiccatiSolution& ric, const Eigen::VectorXd& z0, double alpha,
                           double vol, double c) {
    return z0.dot(ric.initial() * z0) + alpha * (vol - c) * (vol - c);
}

inline double optimal_cost(const Eigen::MatrixXd& pi0, const Eigen::VectorXd& z0, double alpha,
                           double vol, double c) {
    return z0.dot(pi0 * z0) + alpha * (vol - c) * (vol - c);
}

// Feedback row K = -(1/gamma) B^T Pi(0).
inline Eigen::RowVectorXd kalman_gain(const RiccatiSolution& ric, const ModalSystem& sys,
                                      double gamma) {
    return (-(1.0 / gamma) * (ric.initial() * sys.b_vector)).transpose();
}

inline Eigen::RowVectorXd kalman_gain(const Eigen::MatrixXd& pi0, const ModalSystem& sys,
                                      double gamma) {
    return (-(1.0 / gamma) * (pi0 * sys.b_vector)).transpose();
}

}  // namespace actopt
