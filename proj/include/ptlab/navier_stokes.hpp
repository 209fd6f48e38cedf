#pragma once

#include <memory>
#include <vector>

#include "ptlab/integrators.hpp"
#include "ptlab/parareal.hpp"
#include "ptlab/state.hpp"

namespace ptlab {

/// Driven cavity on [0,1]^2 discretized on an n_x by n_x collocated node grid.
struct CavityConfig {
    int n_x = 16;
    double nu = 1e-1;
    double lid_velocity = 1.0;
    double poisson_tol = 1e-10;

    double spacing() const { return 1.0 / (n_x - 1); }
    /// Throws ConfigError unless n_x >= 4, nu > 0 and poisson_tol in (0, 1e-6].
    void validate() const;
};

/// Velocity and pressure on the node grid; node (i, j) sits at (i h, j h) and is
/// stored at i + n j.
///
/// As a StateVector the field is laid out [u | v | p].
struct FlowField {
    int n = 0;
    std::vector<double> u, v, p;

    explicit FlowField(int n_x = 0)
        : n(n_x), u(static_cast<std::size_t>(n_x) * n_x), v(u.size()), p(u.size()) {}

    double spacing() const { return 1.0 / (n - 1); }
    std::size_t idx(int i, int j) const { return static_cast<std::size_t>(i) + static_cast<std::size_t>(n) * j; }

    StateVector to_state() const;
    static FlowField from_state(int n_x, const StateVector& state);
};

/// Interior-node tendency of (u, v); boundary entries are zero.
struct VelocityTendency {
    std::vector<double> u, v;
};

/// -(u . grad) u with first-order upwind differences.
VelocityTendency convection_tendency(const FlowField& field);

/// nu times the 5-point Laplacian of each velocity component.
VelocityTendency diffusion_tendency(const FlowField& field, double nu);

/// Central-difference pressure gradient at interior nodes.
VelocityTendency pressure_gradient(const FlowField& field);

/// Vertex-centred discrete divergence at every node. It is the negative adjoint of
/// pressure_gradient scaled by the inverse control-volume fraction, so walls
/// contribute zero normal flux.
std::vector<double> divergence(const FlowField& field);

/// Max-norm of divergence(field).
double max_divergence(const FlowField& field);

/// 10 * poisson_tol * (|u|_inf + |v|_inf) / h.
double divergence_bound(const FlowField& field, const CavityConfig& config);

/// Overwrites boundary velocities with the cavity conditions (lid on top, no-slip
/// elsewhere, corners no-slip).
void apply_cavity_bc(FlowField& field, const CavityConfig& config);

/// Fluid at rest, lid imposed, zero pressure.
FlowField cavity_initial_field(const CavityConfig& config);

class CavityOperators;

/// Discrete operators and cached factorizations for one configuration. Shared
/// between the coarse and fine propagators; safe to use concurrently.
class CavityProblem {
public:
    explicit CavityProblem(const CavityConfig& config);
    ~CavityProblem();
    CavityProblem(CavityProblem&&) noexcept;
    CavityProblem& operator=(CavityProblem&&) noexcept;

    const CavityConfig& config() const;

    /// Incremental projection of a provisional velocity: solves
    /// (G^T G) phi = G^T u* / dt (Neumann, zero mean), then u <- u* - dt G phi,
    /// p <- p + phi, and re-imposes the boundary conditions.
    /// Throws SolverFailure carrying the residual when poisson_tol is not met.
    void project(FlowField& field, double dt) const;

    /// Split right-hand side over the [u | v | p] state. The implicit part is
    /// diffusion; the explicit part is upwind convection plus the frozen pressure
    /// gradient; the post-step hook is the projection.
    SplitRhs rhs() const;

    StateVector initial_state() const;
    /// Degrees of freedom carrying velocity (pressure is excluded from e^k).
    ErrorDofs velocity_dofs() const;

private:
    std::shared_ptr<const CavityOperators> ops_;
};

/// Projection with a freshly assembled solver.
FlowField pressure_projection(const FlowField& field, double dt, const CavityConfig& config);

/// CavityProblem(config).rhs()
SplitRhs cavity_rhs(const CavityConfig& config);

/// T = 15, N = 15, coarse step 1/coarse_steps_per_unit, fine step 1/500.
SliceDecomposition default_cavity_decomposition(int coarse_steps_per_unit = 200, int fine_steps_per_unit = 500);

struct CavityRunOptions {
    unsigned workers = 1;
    std::optional<double> stop_tolerance;
};

struct CavityParareal {
    std::vector<StateVector> reference;  // serial fine solution at slice ends
    PararealRun run;
};

/// Serial fine reference followed by Parareal (IMEX Euler coarse, RK3 fine),
/// starting from the impulsively started lid. Throws DivergenceError when the
/// fine propagator blows up.
CavityParareal run_cavity_parareal(const CavityConfig& config, const SliceDecomposition& decomp, int max_iter,
                                   const CavityRunOptions& options = {});

}  // namespace ptlab
