#include "ptlab/integrators.hpp"

#include <cmath>
#include <string>

#include "ptlab/errors.hpp"

namespace ptlab {

StateVector SplitRhs::full_tendency(const StateVector& state, double t) const {
    StateVector f = implicit_part(state, t);
    axpy(1.0, explicit_part(state, t), f);
    return f;
}

std::string_view to_string(Method method) {
    switch (method) {
        case Method::ImexEuler: return "imex-euler";
        case Method::Rk3Explicit: return "rk3";
    }
    return "unknown";
}

StateVector imex_euler_step(const StateVector& state, double t, double h, const SplitRhs& rhs) {
    if (!(h > 0.0)) throw ConfigError("imex_euler_step: step size must be positive");
    StateVector b = state;
    axpy(h, rhs.explicit_part(state, t), b);
    StateVector x = rhs.implicit_solve(b, t + h, h);
    if (rhs.post_step) rhs.post_step(x, t + h, h);
    return x;
}

StateVector rk3_step(const StateVector& state, double t, double h, const SplitRhs& rhs) {
    if (!(h > 0.0)) throw ConfigError("rk3_step: step size must be positive");
    const std::size_t n = state.size();

    StateVector k1 = state;
    axpy(h, rhs.full_tendency(state, t), k1);

    const StateVector f1 = rhs.full_tendency(k1, t + h);
    StateVector k2(n);
    for (std::size_t i = 0; i < n; ++i) k2[i] = 0.75 * state[i] + 0.25 * k1[i] + 0.25 * h * f1[i];

    const StateVector f2 = rhs.full_tendency(k2, t + 0.5 * h);
    StateVector out(n);
    for (std::size_t i = 0; i < n; ++i)
        out[i] = state[i] / 3.0 + 2.0 * k2[i] / 3.0 + 2.0 * h * f2[i] / 3.0;

    if (rhs.post_step) rhs.post_step(out, t + h, h);
    return out;
}

StateVector step(const PropagatorSpec& spec, const StateVector& state, double t) {
    switch (spec.method) {
        case Method::ImexEuler: return imex_euler_step(state, t, spec.step_size, spec.rhs);
        case Method::Rk3Explicit: return rk3_step(state, t, spec.step_size, spec.rhs);
    }
    throw ConfigError("step: unknown method");
}

StateVector propagate(const PropagatorSpec& spec, const StateVector& state, double t0, double t1, int n_steps) {
    if (!(t1 > t0)) throw ConfigError("propagate: t1 must exceed t0");
    if (n_steps <= 0) throw ConfigError("propagate: n_steps must be positive");
    if (!(spec.step_size > 0.0)) throw ConfigError("propagate: step size must be positive");
    const double span = t1 - t0;
    if (std::abs(n_steps * spec.step_size - span) > 1e-12 * span) {
        throw ConfigError("propagate: " + std::to_string(n_steps) + " steps of " +
                          std::to_string(spec.step_size) + " do not cover [" + std::to_string(t0) +
                          ", " + std::to_string(t1) + "]");
    }

    StateVector u = state;
    for (int j = 0; j < n_steps; ++j) u = step(spec, u, t0 + j * spec.step_size);
    return u;
}

}  // namespace ptlab
