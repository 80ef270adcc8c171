#pragma once

namespace actopt {

// One classical fourth-order Runge-Kutta step for an autonomous ODE
// y' = f(y) on any Eigen-compatible state (vector or matrix valued).
template <class State, class Rhs>
State rk4_step(const Rhs& f, const State& y, double h) {
    State k1 = f(y);
    State k2 = f(y + (0.5 * h) * k1);
    State k3 = f(y + (0.5 * h) * k2);
    State k4 = f(y + h * k3);
    return y + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
}

// Time-dependent variant, y' = f(t, y).
template <class State, class Rhs>
State rk4_step(const Rhs& f, double t, const State& y, double h) {
    State k1 = f(t, y);
    State k2 = f(t + 0.5 * h, y + (0.5 * h) * k1);
    State k3 = f(t + 0.5 * h, y + (0.5 * h) * k2);
    State k4 = f(t + h, y + h * k3);
    return y + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
}

}  // namespace actopt
