#pragma once

#include <Eigen/Dense>
#include <complex>
#include <stdexcept>

#include "actopt/beam.hpp"

namespace actopt {

// Per-mode eigendecomposition of the modal block system. Each mode k with
// eigenvalue lambda and damping d contributes the 2x2 companion block
// [[0,1],[-lambda,-d]] whose eigenvalues are
//
//   s_{+,-} = (-d +- sqrt(d^2 - 4 lambda)) / 2.
//
// In the eigenbasis the drift becomes diagonal, so the stiff linear part of
// the Riccati and state equations can be propagated by exact exponentials
// while only the rank-one input coupling is integrated numerically. The
// calculus below uses plain transposes (not adjoints) throughout, which keeps
// the transformed Riccati matrix complex symmetric.
//
// Coordinate layout: real states are packed (a_1..a_N, adot_1..adot_N);
// eigen-coordinates are interleaved, mode k owning slots (2k, 2k+1).
struct ModalTransform {
    int n_modes;
    Eigen::VectorXcd s_plus;   // per mode
    Eigen::VectorXcd s_minus;  // per mode
    Eigen::VectorXcd eig;      // 2N interleaved eigenvalues

    explicit ModalTransform(const ModalSystem& sys)
        : n_modes(sys.n_modes), s_plus(sys.n_modes), s_minus(sys.n_modes), eig(2 * sys.n_modes) {
        for (int k = 0; k < n_modes; ++k) {
            double lam = sys.lambdas[k];
            double d = sys.damping[k];
            std::complex<double> root = std::sqrt(std::complex<double>(d * d - 4.0 * lam, 0.0));
            s_plus[k] = 0.5 * (-d + root);
            s_minus[k] = 0.5 * (-d - root);
            if (std::abs(s_plus[k] - s_minus[k]) < 1e-12 * (std::abs(s_plus[k]) + std::abs(s_minus[k])))
                throw std::runtime_error("ModalTransform: critically damped mode, eigenbasis is singular");
            eig[2 * k] = s_plus[k];
            eig[2 * k + 1] = s_minus[k];
        }
    }

    int dim() const { return 2 * n_modes; }

  private:
    // Rows of V^{-1} for mode k: xi_{2k} = al*a + be*adot, xi_{2k+1} = ga*a + de*adot.
    void vinv_coeffs(int k, std::complex<double>& al, std::complex<double>& be,
                     std::complex<double>& ga, std::complex<double>& de) const {
        std::complex<double> det = s_minus[k] - s_plus[k];
        al = s_minus[k] / det;
        be = -1.0 / det;
        ga = -s_plus[k] / det;
        de = 1.0 / det;
    }

  public:
    // xi = V^{-1} z
    Eigen::VectorXcd state_to_modal(const Eigen::VectorXd& z) const {
        const int n = n_modes;
        Eigen::VectorXcd xi(2 * n);
        for (int k = 0; k < n; ++k) {
            std::complex<double> al, be, ga, de;
            vinv_coeffs(k, al, be, ga, de);
            xi[2 * k] = al * z[k] + be * z[n + k];
            xi[2 * k + 1] = ga * z[k] + de * z[n + k];
        }
        return xi;
    }

    // z = Re(V xi)
    Eigen::VectorXd state_from_modal(const Eigen::VectorXcd& xi) const {
        const int n = n_modes;
        Eigen::VectorXd z(2 * n);
        for (int k = 0; k < n; ++k) {
            z[k] = (xi[2 * k] + xi[2 * k + 1]).real();
            z[n + k] = (s_plus[k] * xi[2 * k] + s_minus[k] * xi[2 * k + 1]).real();
        }
        return z;
    }

    // btilde = V^{-1} (0; b) for a velocity-block input vector of length N.
    Eigen::VectorXcd input_to_modal(const Eigen::VectorXd& b) const {
        const int n = n_modes;
        Eigen::VectorXcd bt(2 * n);
        for (int k = 0; k < n; ++k) {
            std::complex<double> al, be, ga, de;
            vinv_coeffs(k, al, be, ga, de);
            bt[2 * k] = be * b[k];
            bt[2 * k + 1] = de * b[k];
        }
        return bt;
    }

    // Qtilde = V^T diag(q) V, block diagonal with one 2x2 block per mode.
    Eigen::MatrixXcd weight_to_modal(const Eigen::VectorXd& q_diag) const {
        const int n = n_modes;
        Eigen::MatrixXcd qt = Eigen::MatrixXcd::Zero(2 * n, 2 * n);
        for (int k = 0; k < n; ++k) {
            std::complex<double> qd = q_diag[k];
            std::complex<double> qv = q_diag[n + k];
            qt(2 * k, 2 * k) = qd + qv * s_plus[k] * s_plus[k];
            qt(2 * k, 2 * k + 1) = qd + qv * s_plus[k] * s_minus[k];
            qt(2 * k + 1, 2 * k) = qt(2 * k, 2 * k + 1);
            qt(2 * k + 1, 2 * k + 1) = qd + qv * s_minus[k] * s_minus[k];
        }
        return qt;
    }

    // Pitilde = V^T Pi V
    Eigen::MatrixXcd pi_to_modal(const Eigen::MatrixXd& pi) const {
        const int n = n_modes;
        Eigen::MatrixXcd y(2 * n, 2 * n);
        for (int k = 0; k < n; ++k) {
            y.col(2 * k) = pi.col(k) + s_plus[k] * pi.col(n + k);
            y.col(2 * k + 1) = pi.col(k) + s_minus[k] * pi.col(n + k);
        }
        Eigen::MatrixXcd pt(2 * n, 2 * n);
        for (int k = 0; k < n; ++k) {
            pt.row(2 * k) = y.row(k) + s_plus[k] * y.row(n + k);
            pt.row(2 * k + 1) = y.row(k) + s_minus[k] * y.row(n + k);
        }
        return pt;
    }

    // Pi = Re(V^{-T} Pitilde V^{-1})
    Eigen::MatrixXd pi_from_modal(const Eigen::MatrixXcd& pt) const {
        const int n = n_modes;
        Eigen::MatrixXcd y(2 * n, 2 * n);
        for (int k = 0; k < n; ++k) {
            std::complex<double> al, be, ga, de;
            vinv_coeffs(k, al, be, ga, de);
            y.col(k) = al * pt.col(2 * k) + ga * pt.col(2 * k + 1);
            y.col(n + k) = be * pt.col(2 * k) + de * pt.col(2 * k + 1);
        }
        Eigen::MatrixXd pi(2 * n, 2 * n);
        for (int k = 0; k < n; ++k) {
            std::complex<double> al, be, ga, de;
            vinv_coeffs(k, al, be, ga, de);
            pi.row(k) = (al * y.row(2 * k) + ga * y.row(2 * k + 1)).real();
            pi.row(n + k) = (be * y.row(2 * k) + de * y.row(2 * k + 1)).real();
        }
        return pi;
    }
};

}  // namespace actopt
