#pragma once

#include <complex>
#include <limits>
#include <string>
#include <vector>

#include "ptlab/integrators.hpp"
#include "ptlab/parareal.hpp"

namespace ptlab {

/// Eigenvalue of the scalar test problem y' = (re + i im) y.
struct ComplexLambda {
    double re = 0.0;
    double im = 0.0;
};

/// Split rhs on the complex scalar stored as (Re y, Im y): the real part of
/// lambda is treated implicitly, the imaginary part explicitly.
SplitRhs dahlquist_rhs(ComplexLambda lambda);

/// Propagator pair used throughout the stability study: IMEX Euler coarse, RK3 fine.
PropagatorSpec dahlquist_coarse(ComplexLambda lambda, const SliceDecomposition& decomp);
PropagatorSpec dahlquist_fine(ComplexLambda lambda, const SliceDecomposition& decomp);

/// Fig. 1 decomposition: 15 slices of length 2, two IMEX steps and five RK3 steps per slice.
SliceDecomposition default_stability_decomposition();

struct Scheme {
    enum class Kind { CoarseSerial, FineSerial, Parareal };
    Kind kind = Kind::FineSerial;
    int iterations = 0;  // Parareal only

    static Scheme coarse() { return {Kind::CoarseSerial, 0}; }
    static Scheme fine() { return {Kind::FineSerial, 0}; }
    static Scheme parareal(int k) { return {Kind::Parareal, k}; }

    /// "coarse-serial", "fine-serial" or "parareal@k".
    std::string label() const;
    /// Inverse of label(); throws ConfigError.
    static Scheme parse(const std::string& label);
};

/// Magnitude above which a trajectory is flagged as overflowed.
inline constexpr double kOverflowThreshold = 1e100;

struct Trajectory {
    std::vector<std::complex<double>> values;  // U_0..U_N, truncated after overflow
    bool overflow = false;
};

/// Slice-boundary values of y' = lambda y, y(0) = 1 under the given scheme.
Trajectory run_scheme(const Scheme& scheme, ComplexLambda lambda, const SliceDecomposition& decomp);

/// max_{n>=1} |U_n|^{1/n}; +inf for overflowed trajectories.
double amplification_factor(const Trajectory& trajectory);

/// max_{n>=1} |U_n - exp(lambda t_n)|; +inf for overflowed trajectories.
double accuracy_error(const Trajectory& trajectory, ComplexLambda lambda, const SliceDecomposition& decomp);

/// Sampled stability/accuracy data over a rectangle of the lambda plane.
///
/// Values are stored as [scheme][re][im], flattened.
struct StabilityGrid {
    std::vector<double> re_samples;
    std::vector<double> im_samples;
    std::vector<Scheme> schemes;
    std::vector<double> amplification;
    std::vector<double> accuracy;

    std::size_t index(std::size_t scheme, std::size_t ire, std::size_t iim) const {
        return (scheme * re_samples.size() + ire) * im_samples.size() + iim;
    }
    /// Number of points of the given layer with amplification <= 1.
    std::size_t stable_count(std::size_t scheme) const;
    /// Position of the layer with this label; throws ConfigError when absent.
    std::size_t layer(const std::string& label) const;
};

struct SweepOptions {
    unsigned workers = 1;
};

/// Layers: coarse-serial, fine-serial, then parareal@k for each requested k.
StabilityGrid sweep(std::pair<double, double> re_range, std::pair<double, double> im_range, int resolution,
                    const std::vector<int>& iter_counts, const SliceDecomposition& decomp,
                    const SweepOptions& options = {});

}  // namespace ptlab
