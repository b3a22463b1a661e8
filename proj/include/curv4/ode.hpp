#pragma once

// Adaptive explicit Runge-Kutta integration (Dormand-Prince 5(4)) over states
// whose elements are doubles or Jet3 values, plus the Picard-style completion
// that fills the independent-variable dependence of a jet from its defining
// ODE.  Trajectory queries between accepted steps re-integrate locally from
// the nearest stored node, so every reported value carries only integrator
// tolerance, never interpolation error.

#include <algorithm>
#include <cmath>
#include <functional>
#include <vector>

#include "curv4/errors.hpp"
#include "curv4/jet.hpp"

namespace curv4::ode {

inline double elem_norm(double x) { return std::abs(x); }
inline double elem_norm(const Jet3& x) { return x.max_abs_coeff(); }

template <class T>
using Rhs = std::function<std::vector<T>(double, const std::vector<T>&)>;

template <class T>
struct Trajectory {
    std::vector<double> grid;              // accepted abscissae, monotone in integration order
    std::vector<std::vector<T>> states;
    int interpolation_order = 5;           // queries re-integrate at full method order
    double tol = 1e-10;
    Rhs<T> rhs;

    const std::vector<T>& initial_state() const { return states.front(); }
    const std::vector<T>& final_state() const { return states.back(); }
    double t_begin() const { return grid.front(); }
    double t_end() const { return grid.back(); }

    std::vector<T> eval(double t) const;
};

namespace detail {

template <class T>
std::vector<T> lin_comb(const std::vector<T>& y, double h,
                        std::initializer_list<std::pair<double, const std::vector<T>*>> ks) {
    std::vector<T> out = y;
    for (const auto& [w, k] : ks) {
        if (w == 0.0) continue;
        for (std::size_t m = 0; m < out.size(); ++m) out[m] += (*k)[m] * (h * w);
    }
    return out;
}

// One DOPRI5 step from (t, y) with first-same-as-last stage k1 provided.
// Returns the 5th-order solution, error estimate norm and the new k1.
template <class T>
struct StepResult {
    std::vector<T> y;
    std::vector<T> k_last;
    double err = 0.0;
};

template <class T>
StepResult<T> dopri5_step(const Rhs<T>& f, double t, const std::vector<T>& y,
                          const std::vector<T>& k1, double h, double tol) {
    const auto k2 = f(t + h / 5.0, lin_comb(y, h, {{1.0 / 5.0, &k1}}));
    const auto k3 = f(t + 3.0 * h / 10.0, lin_comb(y, h, {{3.0 / 40.0, &k1}, {9.0 / 40.0, &k2}}));
    const auto k4 = f(t + 4.0 * h / 5.0,
                      lin_comb(y, h, {{44.0 / 45.0, &k1}, {-56.0 / 15.0, &k2}, {32.0 / 9.0, &k3}}));
    const auto k5 = f(t + 8.0 * h / 9.0,
                      lin_comb(y, h,
                               {{19372.0 / 6561.0, &k1},
                                {-25360.0 / 2187.0, &k2},
                                {64448.0 / 6561.0, &k3},
                                {-212.0 / 729.0, &k4}}));
    const auto k6 = f(t + h, lin_comb(y, h,
                                      {{9017.0 / 3168.0, &k1},
                                       {-355.0 / 33.0, &k2},
                                       {46732.0 / 5247.0, &k3},
                                       {49.0 / 176.0, &k4},
                                       {-5103.0 / 18656.0, &k5}}));
    StepResult<T> r;
    r.y = lin_comb(y, h,
                   {{35.0 / 384.0, &k1},
                    {500.0 / 1113.0, &k3},
                    {125.0 / 192.0, &k4},
                    {-2187.0 / 6784.0, &k5},
                    {11.0 / 84.0, &k6}});
    r.k_last = f(t + h, r.y);

    // embedded 4th-order error
    double err = 0.0;
    const double e1 = 71.0 / 57600.0, e3 = -71.0 / 16695.0, e4 = 71.0 / 1920.0,
                 e5 = -17253.0 / 339200.0, e6 = 22.0 / 525.0, e7 = -1.0 / 40.0;
    for (std::size_t m = 0; m < y.size(); ++m) {
        T d = k1[m] * (h * e1);
        d += k3[m] * (h * e3);
        d += k4[m] * (h * e4);
        d += k5[m] * (h * e5);
        d += k6[m] * (h * e6);
        d += r.k_last[m] * (h * e7);
        const double scale = tol * (1.0 + std::max(elem_norm(y[m]), elem_norm(r.y[m])));
        err = std::max(err, elem_norm(d) / scale);
    }
    r.err = err;
    return r;
}

} // namespace detail

/// Integrates y' = rhs(t, y) from t0 to t1 (either direction), recording every
/// accepted step.  Throws IntegrationError on step underflow; the message
/// carries the last valid abscissa.
template <class T>
Trajectory<T> integrate(Rhs<T> rhs, std::vector<T> y0, double t0, double t1,
                        double tol = 1e-10) {
    if (!(tol > 0.0)) throw ArgumentError("ode::integrate: tol must be positive");
    Trajectory<T> traj;
    traj.tol = tol;
    traj.rhs = rhs;
    traj.grid.push_back(t0);
    traj.states.push_back(y0);
    if (t1 == t0) return traj;

    const double dir = t1 > t0 ? 1.0 : -1.0;
    const double span = std::abs(t1 - t0);
    double t = t0;
    double h = dir * std::min(span, std::max(1e-6, span / 64.0));
    std::vector<T> y = std::move(y0);
    std::vector<T> k1 = rhs(t, y);

    while ((t1 - t) * dir > 0.0) {
        if (std::abs(h) > std::abs(t1 - t)) h = t1 - t;
        if (std::abs(h) < 1e-14 * span)
            throw IntegrationError("ode::integrate: step underflow at t = " + std::to_string(t));
        auto step = detail::dopri5_step(rhs, t, y, k1, h, tol);
        if (step.err <= 1.0) {
            t += h;
            y = std::move(step.y);
            k1 = std::move(step.k_last);
            traj.grid.push_back(t);
            traj.states.push_back(y);
            h *= std::clamp(0.9 * std::pow(std::max(step.err, 1e-10), -0.2), 1.0, 5.0);
        } else {
            h *= std::clamp(0.9 * std::pow(step.err, -0.2), 0.2, 0.9);
        }
    }
    return traj;
}

template <class T>
std::vector<T> Trajectory<T>::eval(double t) const {
    const double dir = grid.size() > 1 && grid.back() < grid.front() ? -1.0 : 1.0;
    const double span = std::abs(grid.back() - grid.front());
    const double slack = 1e-9 * (1.0 + span);
    if ((t - grid.front()) * dir < -slack || (t - grid.back()) * dir > slack)
        throw ArgumentError("Trajectory::eval: abscissa outside integrated span");

    // last node not past t in the integration direction
    std::size_t i = 0;
    for (std::size_t m = 1; m < grid.size(); ++m)
        if ((grid[m] - t) * dir <= 0.0) i = m;
    if (std::abs(grid[i] - t) < 1e-14 * (1.0 + span)) return states[i];

    auto local = integrate<T>(rhs, states[i], grid[i], t, tol);
    return local.final_state();
}

/// Completes the x_var-dependence of a jet state governed by
/// d(state)/d x_var = rhs(state).  `base` must not depend on x_var; three
/// passes fix all entries up to total order 3 exactly.
template <class RhsFn>
std::vector<Jet3> ode_jet_complete_system(const std::vector<Jet3>& base, RhsFn&& rhs, int var) {
    std::vector<Jet3> state = base;
    for (int pass = 0; pass < kJetOrder; ++pass) {
        const std::vector<Jet3> rate = rhs(state);
        std::vector<Jet3> next = base;
        for (std::size_t m = 0; m < next.size(); ++m) next[m].set_antiderivative(rate[m], var);
        state = std::move(next);
    }
    return state;
}

template <class RhsFn>
Jet3 ode_jet_complete(const Jet3& base, RhsFn&& rhs, int var) {
    auto sys = ode_jet_complete_system(std::vector<Jet3>{base},
                                       [&](const std::vector<Jet3>& s) {
                                           return std::vector<Jet3>{rhs(s[0])};
                                       },
                                       var);
    return sys[0];
}

} // namespace curv4::ode

namespace curv4 {
using JetTrajectory = ode::Trajectory<Jet3>;
}
