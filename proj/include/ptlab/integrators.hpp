#pragma once

#include <functional>
#include <string_view>

#include "ptlab/state.hpp"

namespace ptlab {

/// Additively split right-hand side u' = implicit_part(u, t) + explicit_part(u, t).
///
/// implicit_solve(rhs, t, h) returns x with (I - h * implicit_part)(x) = rhs.
/// post_step, when set, is applied to the state after every completed step
/// (the Navier-Stokes pressure projection lives there).
struct SplitRhs {
    using Tendency = std::function<StateVector(const StateVector&, double)>;
    using Solve = std::function<StateVector(const StateVector&, double, double)>;
    using PostStep = std::function<void(StateVector&, double, double)>;

    Tendency implicit_part;
    Tendency explicit_part;
    Solve implicit_solve;
    PostStep post_step;

    /// implicit_part + explicit_part
    StateVector full_tendency(const StateVector& state, double t) const;
};

enum class Method { ImexEuler, Rk3Explicit };

std::string_view to_string(Method method);

struct PropagatorSpec {
    Method method = Method::Rk3Explicit;
    double step_size = 0.0;
    SplitRhs rhs;
};

/// x = implicit_solve(state + h * explicit_part(state, t), t + h, h).
StateVector imex_euler_step(const StateVector& state, double t, double h, const SplitRhs& rhs);

/// Three-stage strong-stability-preserving RK3 (Shu-Osher) on the unsplit tendency.
StateVector rk3_step(const StateVector& state, double t, double h, const SplitRhs& rhs);

/// One step of spec.method with size spec.step_size.
StateVector step(const PropagatorSpec& spec, const StateVector& state, double t);

/// n_steps steps from t0 to t1. Requires n_steps * spec.step_size == t1 - t0
/// to relative tolerance 1e-12; throws ConfigError otherwise.
StateVector propagate(const PropagatorSpec& spec, const StateVector& state, double t0, double t1, int n_steps);

}  // namespace ptlab
