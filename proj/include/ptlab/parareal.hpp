#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "ptlab/integrators.hpp"
#include "ptlab/state.hpp"

namespace ptlab {

/// Uniform partition of [0, t_end] into n_slices time slices.
struct SliceDecomposition {
    double t_end = 1.0;
    int n_slices = 1;
    int coarse_steps_per_slice = 1;
    int fine_steps_per_slice = 1;

    double slice_length() const { return t_end / n_slices; }
    double boundary(int n) const { return n * t_end / n_slices; }
    double coarse_step() const { return slice_length() / coarse_steps_per_slice; }
    double fine_step() const { return slice_length() / fine_steps_per_slice; }

    /// Throws ConfigError unless all fields are positive.
    void validate() const;
};

/// Degrees of freedom entering the error norm: [offset, offset + count).
/// count == 0 selects everything from offset to the end of the state.
struct ErrorDofs {
    std::size_t offset = 0;
    std::size_t count = 0;

    std::span<const double> select(const StateVector& state) const;
};

struct PararealOptions {
    /// Threads used for the independent fine propagations of one iteration.
    unsigned workers = 1;
    /// Stop once e^k <= stop_tolerance (requires a reference). Off by default.
    std::optional<double> stop_tolerance;
    ErrorDofs error_dofs;
};

struct PararealRun {
    /// iterates[k][n] = U^k_n for k = 0..k_performed, n = 0..N.
    std::vector<std::vector<StateVector>> iterates;
    /// errors[k] = e^k for k = 0..k_performed; empty without a reference.
    std::vector<double> errors;
    int k_performed = 0;
};

/// Serial fine time-marching: U_0 = u0, U_{n+1} = F(U_n).
std::vector<StateVector> serial_reference(const PropagatorSpec& fine, const SliceDecomposition& decomp,
                                          const StateVector& u0);

/// Serial coarse time-marching with the same slice layout.
std::vector<StateVector> serial_coarse(const PropagatorSpec& coarse, const SliceDecomposition& decomp,
                                       const StateVector& u0);

/// Parareal iteration
///   U^{k+1}_{n+1} = G(U^{k+1}_n) + F(U^k_n) - G(U^k_n),
/// initialised by the serial coarse sweep U^0_{n+1} = G(U^0_n).
///
/// Runs exactly max_iter iterations unless options.stop_tolerance triggers.
/// Throws DivergenceError on NaN/Inf and PropagationError on step failures.
PararealRun parareal_solve(const PropagatorSpec& fine, const PropagatorSpec& coarse, const SliceDecomposition& decomp,
                           const StateVector& u0, int max_iter,
                           const std::optional<std::vector<StateVector>>& reference = std::nullopt,
                           const PararealOptions& options = {});

/// max_{n=1..N} |U^k_n - U_n|_inf / |U_n|_inf over the selected dofs.
/// Index 0 of both sequences (the initial value) is skipped.
double relative_error(const std::vector<StateVector>& iterates_k, const std::vector<StateVector>& reference,
                      const ErrorDofs& dofs = {});

/// min(n_slices / n_iter, cost_fine / cost_coarse).
double speedup_bound(int n_slices, int n_iter, double cost_fine, double cost_coarse);

}  // namespace ptlab
