#pragma once

#include <algorithm>
#include <array>
#include <boost/numeric/odeint.hpp>
#include <cmath>
#include <functional>
#include <vector>

#include "eitlab/eit/master_equation.hpp"

namespace eitlab::eit {

/// Optional time-dependent Rabi frequencies. Unset functions fall back to the
/// static values in LambdaSystem. Breakpoints mark kinks or switch-on times;
/// the integrator never steps across them.
struct Controls {
    std::function<double(double)> omega_p;
    std::function<double(double)> omega_c;
    std::vector<double> breakpoints;
};

struct EvolveOptions {
    double rel_tol = 1e-9;
    double abs_tol = 1e-12;
    /// Spacing of recorded samples; 0 records only the start, breakpoints and end.
    double sample_interval = 0.0;
    /// Smallest step (in units of 1/gamma) before giving up.
    double min_step = 1e-10;
};

struct Trajectory {
    std::vector<double> times;
    std::vector<DensityMatrix3> states;

    [[nodiscard]] const DensityMatrix3& final_state() const { return states.back(); }
};

namespace detail {

using OdeState = std::array<cdouble, 9>;

inline OdeState to_ode(const Eigen::Matrix3cd& m) {
    OdeState s;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) s[3 * i + j] = m(i, j);
    return s;
}

inline Eigen::Matrix3cd from_ode(const OdeState& s) {
    Eigen::Matrix3cd m;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) m(i, j) = s[3 * i + j];
    return m;
}

inline std::vector<double> event_times(double t_final, const Controls& controls, double sample_interval) {
    std::vector<double> t{0.0, t_final};
    if (sample_interval > 0.0) {
        const auto n = static_cast<std::size_t>(std::floor(t_final / sample_interval));
        for (std::size_t k = 1; k <= n; ++k) t.push_back(static_cast<double>(k) * sample_interval);
    }
    for (double b : controls.breakpoints)
        if (b > 0.0 && b < t_final) t.push_back(b);
    std::sort(t.begin(), t.end());
    const double merge = 1e-12 * std::max(1.0, t_final);
    std::vector<double> out;
    for (double v : t)
        if (out.empty() || v - out.back() > merge) out.push_back(v);
    if (out.back() != t_final) out.back() = t_final;
    return out;
}

}  // namespace detail

/// Integrates the master equation with an adaptive Dormand-Prince 5(4) pair,
/// landing exactly on every sample time and breakpoint.
inline Trajectory evolve(const LambdaSystem& sys, const DensityMatrix3& rho0, double t_final,
                         const Controls& controls = {}, const EvolveOptions& options = {}) {
    sys.validate();
    require(std::isfinite(t_final) && t_final > 0.0, "evolve: t_final must be positive");
    require(options.rel_tol > 0.0 && options.abs_tol > 0.0, "evolve: tolerances must be positive");
    namespace odeint = boost::numeric::odeint;
    using detail::OdeState;

    auto rhs = [&](const OdeState& x, OdeState& dxdt, double t) {
        LambdaSystem s = sys;
        if (controls.omega_p) s.omega_p = controls.omega_p(t);
        if (controls.omega_c) s.omega_c = controls.omega_c(t);
        dxdt = detail::to_ode(apply_generator(s, detail::from_ode(x)));
    };

    auto stepper = odeint::make_controlled(options.abs_tol, options.rel_tol, odeint::runge_kutta_dopri5<OdeState>());
    const auto events = detail::event_times(t_final, controls, options.sample_interval);

    Trajectory traj;
    traj.times.reserve(events.size());
    traj.states.reserve(events.size());
    OdeState x = detail::to_ode(rho0.matrix());
    double t = 0.0;
    double dt = std::min(0.01 / sys.gamma, t_final);
    traj.times.push_back(0.0);
    traj.states.push_back(rho0);

    for (std::size_t e = 1; e < events.size(); ++e) {
        const double t_end = events[e];
        while (t < t_end) {
            const double remaining = t_end - t;
            const bool clipped = dt >= remaining;
            const double dt_nominal = dt;
            double trial = clipped ? remaining : dt;
            const double t_before = t;
            const auto result = stepper.try_step(rhs, x, t, trial);
            if (result == odeint::success) {
                if (clipped) {
                    t = t_end;
                    dt = std::max(dt_nominal, trial);
                } else {
                    dt = trial;
                }
            } else {
                dt = trial;
                if (dt < options.min_step) {
                    throw Error(ErrorKind::StepSizeUnderflow,
                                "step size fell below " + std::to_string(options.min_step) + " at t = " +
                                    std::to_string(t_before));
                }
            }
        }
        traj.times.push_back(t_end);
        traj.states.emplace_back(detail::from_ode(x));
    }
    return traj;
}

}  // namespace eitlab::eit
