#include "ptlab/parareal.hpp"

#include <cmath>
#include <cstring>
#include <string>

#include "ptlab/errors.hpp"
#include "ptlab/parallel.hpp"

namespace ptlab {

namespace {

bool bitwise_equal(const StateVector& a, const StateVector& b) {
    return a.size() == b.size() && std::memcmp(a.data(), b.data(), a.size() * sizeof(double)) == 0;
}

void check_consistent(const PropagatorSpec& spec, double expected_step, const char* which) {
    if (std::abs(spec.step_size - expected_step) > 1e-12 * expected_step) {
        throw ConfigError(std::string(which) + " step size " + std::to_string(spec.step_size) +
                          " does not match the slice decomposition (" + std::to_string(expected_step) + ")");
    }
}

StateVector propagate_slice(const PropagatorSpec& spec, const SliceDecomposition& decomp, const StateVector& u,
                            int n, int steps) {
    return propagate(spec, u, decomp.boundary(n), decomp.boundary(n + 1), steps);
}

}  // namespace

void SliceDecomposition::validate() const {
    if (!(t_end > 0.0) || !std::isfinite(t_end)) throw ConfigError("slice decomposition: t_end must be positive");
    if (n_slices <= 0) throw ConfigError("slice decomposition: n_slices must be positive");
    if (coarse_steps_per_slice <= 0 || fine_steps_per_slice <= 0)
        throw ConfigError("slice decomposition: steps per slice must be positive");
}

std::span<const double> ErrorDofs::select(const StateVector& state) const {
    if (offset > state.size()) throw ConfigError("error dofs: offset beyond state size");
    const std::size_t avail = state.size() - offset;
    const std::size_t n = count == 0 ? avail : count;
    if (n > avail) throw ConfigError("error dofs: range beyond state size");
    return std::span<const double>(state).subspan(offset, n);
}

std::vector<StateVector> serial_reference(const PropagatorSpec& fine, const SliceDecomposition& decomp,
                                          const StateVector& u0) {
    decomp.validate();
    check_consistent(fine, decomp.fine_step(), "fine");
    std::vector<StateVector> out;
    out.reserve(decomp.n_slices + 1);
    out.push_back(u0);
    for (int n = 0; n < decomp.n_slices; ++n) {
        try {
            out.push_back(propagate_slice(fine, decomp, out.back(), n, decomp.fine_steps_per_slice));
        } catch (const StepFailure& e) {
            throw PropagationError("serial fine run, slice " + std::to_string(n) + ": " + e.what(), -1, n);
        }
        if (!all_finite(out.back()))
            throw DivergenceError("serial fine run produced NaN/Inf in slice " + std::to_string(n), -1, n);
    }
    return out;
}

std::vector<StateVector> serial_coarse(const PropagatorSpec& coarse, const SliceDecomposition& decomp,
                                       const StateVector& u0) {
    decomp.validate();
    check_consistent(coarse, decomp.coarse_step(), "coarse");
    std::vector<StateVector> out;
    out.reserve(decomp.n_slices + 1);
    out.push_back(u0);
    for (int n = 0; n < decomp.n_slices; ++n)
        out.push_back(propagate_slice(coarse, decomp, out.back(), n, decomp.coarse_steps_per_slice));
    return out;
}

PararealRun parareal_solve(const PropagatorSpec& fine, const PropagatorSpec& coarse, const SliceDecomposition& decomp,
                           const StateVector& u0, int max_iter,
                           const std::optional<std::vector<StateVector>>& reference,
                           const PararealOptions& options) {
    decomp.validate();
    check_consistent(fine, decomp.fine_step(), "fine");
    check_consistent(coarse, decomp.coarse_step(), "coarse");
    const int N = decomp.n_slices;
    if (max_iter < 0 || max_iter > N)
        throw ConfigError("parareal: max_iter must lie in [0, " + std::to_string(N) + "]");
    if (reference && static_cast<int>(reference->size()) != N + 1)
        throw ConfigError("parareal: reference must hold N+1 states");
    if (options.stop_tolerance && !reference)
        throw ConfigError("parareal: stop_tolerance requires a reference solution");

    auto coarse_prop = [&](const StateVector& u, int k, int n) {
        try {
            return propagate_slice(coarse, decomp, u, n, decomp.coarse_steps_per_slice);
        } catch (const StepFailure& e) {
            throw PropagationError("coarse propagation failed (iteration " + std::to_string(k) + ", slice " +
                                       std::to_string(n) + "): " + e.what(),
                                   k, n);
        }
    };
    auto check_finite = [&](const std::vector<StateVector>& U, int k) {
        for (int n = 0; n <= N; ++n)
            if (!all_finite(U[n]))
                throw DivergenceError("parareal iterate diverged (iteration " + std::to_string(k) + ", slice " +
                                          std::to_string(n) + ")",
                                      k, n);
    };

    PararealRun run;
    run.iterates.reserve(max_iter + 1);

    // k = 0: serial coarse prediction. coarse_of[n] = G(U^k_n) for the latest k.
    std::vector<StateVector> U(N + 1);
    std::vector<StateVector> coarse_of(N);
    U[0] = u0;
    for (int n = 0; n < N; ++n) {
        coarse_of[n] = coarse_prop(U[n], 0, n);
        U[n + 1] = coarse_of[n];
    }
    check_finite(U, 0);
    run.iterates.push_back(U);
    if (reference) run.errors.push_back(relative_error(U, *reference, options.error_dofs));

    // fine_of[n] = F(fine_input[n]); reused while the slice's start value is unchanged.
    std::vector<StateVector> fine_of(N);
    std::vector<StateVector> fine_input(N);

    for (int k = 0; k < max_iter; ++k) {
        if (options.stop_tolerance && run.errors.back() <= *options.stop_tolerance) break;

        parallel_for(static_cast<std::size_t>(N), options.workers, [&](std::size_t idx) {
            const int n = static_cast<int>(idx);
            if (!fine_input[n].empty() && bitwise_equal(fine_input[n], U[n])) return;
            try {
                fine_of[n] = propagate_slice(fine, decomp, U[n], n, decomp.fine_steps_per_slice);
            } catch (const StepFailure& e) {
                throw PropagationError("fine propagation failed (iteration " + std::to_string(k + 1) +
                                           ", slice " + std::to_string(n) + "): " + e.what(),
                                       k + 1, n);
            }
            fine_input[n] = U[n];
        });

        std::vector<StateVector> next(N + 1);
        next[0] = u0;
        for (int n = 0; n < N; ++n) {
            if (bitwise_equal(next[n], U[n])) {
                // G(U^{k+1}_n) - G(U^k_n) vanishes identically.
                next[n + 1] = fine_of[n];
                continue;
            }
            StateVector g = coarse_prop(next[n], k + 1, n);
            StateVector u = g;
            for (std::size_t i = 0; i < u.size(); ++i) u[i] += fine_of[n][i] - coarse_of[n][i];
            coarse_of[n] = std::move(g);
            next[n + 1] = std::move(u);
        }
        U = std::move(next);
        check_finite(U, k + 1);
        run.iterates.push_back(U);
        if (reference) run.errors.push_back(relative_error(U, *reference, options.error_dofs));
        run.k_performed = k + 1;
    }
    return run;
}

double relative_error(const std::vector<StateVector>& iterates_k, const std::vector<StateVector>& reference,
                      const ErrorDofs& dofs) {
    if (iterates_k.size() != reference.size()) throw ConfigError("relative_error: sequence lengths differ");
    double e = 0.0;
    for (std::size_t n = 1; n < reference.size(); ++n) {
        const auto ref = dofs.select(reference[n]);
        const auto it = dofs.select(iterates_k[n]);
        if (ref.size() != it.size()) throw ConfigError("relative_error: state sizes differ");
        const double denom = max_norm(ref);
        if (!(denom > 0.0))
            throw MetricError("relative_error: reference state " + std::to_string(n) + " has zero max-norm");
        double diff = 0.0;
        for (std::size_t i = 0; i < ref.size(); ++i) diff = std::max(diff, std::abs(it[i] - ref[i]));
        e = std::max(e, diff / denom);
    }
    return e;
}

double speedup_bound(int n_slices, int n_iter, double cost_fine, double cost_coarse) {
    if (n_slices <= 0 || n_iter <= 0 || !(cost_fine > 0.0) || !(cost_coarse > 0.0))
        throw std::domain_error("speedup_bound: all arguments must be positive");
    return std::min(static_cast<double>(n_slices) / n_iter, cost_fine / cost_coarse);
}

}  // namespace ptlab
