#include "ptlab/stability.hpp"

#include <algorithm>
#include <cmath>

#include "ptlab/errors.hpp"
#include "ptlab/parallel.hpp"

namespace ptlab {

namespace {

std::complex<double> as_complex(const StateVector& y) { return {y[0], y[1]}; }

std::vector<double> linspace(double lo, double hi, int count) {
    std::vector<double> out(count);
    // fill from both ends so a window symmetric about zero samples exact negatives
    for (int i = 0; i < count; ++i)
        out[i] = (2 * i < count) ? lo + (hi - lo) * i / (count - 1) : hi - (hi - lo) * (count - 1 - i) / (count - 1);
    return out;
}

}  // namespace

SplitRhs dahlquist_rhs(ComplexLambda lambda) {
    if (!std::isfinite(lambda.re) || !std::isfinite(lambda.im))
        throw ConfigError("dahlquist_rhs: lambda must be finite");
    SplitRhs rhs;
    rhs.implicit_part = [re = lambda.re](const StateVector& y, double) { return StateVector{re * y[0], re * y[1]}; };
    rhs.explicit_part = [im = lambda.im](const StateVector& y, double) { return StateVector{-im * y[1], im * y[0]}; };
    rhs.implicit_solve = [re = lambda.re](const StateVector& b, double, double h) {
        const double d = 1.0 - h * re;
        if (d == 0.0) throw StepFailure("dahlquist implicit solve: 1 - h*lambda_re is zero", 0.0);
        return StateVector{b[0] / d, b[1] / d};
    };
    return rhs;
}

PropagatorSpec dahlquist_coarse(ComplexLambda lambda, const SliceDecomposition& decomp) {
    return {Method::ImexEuler, decomp.coarse_step(), dahlquist_rhs(lambda)};
}

PropagatorSpec dahlquist_fine(ComplexLambda lambda, const SliceDecomposition& decomp) {
    return {Method::Rk3Explicit, decomp.fine_step(), dahlquist_rhs(lambda)};
}

SliceDecomposition default_stability_decomposition() { return {30.0, 15, 2, 5}; }

std::string Scheme::label() const {
    switch (kind) {
        case Kind::CoarseSerial: return "coarse-serial";
        case Kind::FineSerial: return "fine-serial";
        case Kind::Parareal: return "parareal@" + std::to_string(iterations);
    }
    return "unknown";
}

Scheme Scheme::parse(const std::string& label) {
    if (label == "coarse-serial") return coarse();
    if (label == "fine-serial") return fine();
    const std::string prefix = "parareal@";
    if (label.rfind(prefix, 0) == 0) {
        try {
            std::size_t used = 0;
            const int k = std::stoi(label.substr(prefix.size()), &used);
            if (used == label.size() - prefix.size() && k >= 0) return parareal(k);
        } catch (const std::exception&) {
        }
    }
    throw ConfigError("unknown scheme label '" + label + "'");
}

Trajectory run_scheme(const Scheme& scheme, ComplexLambda lambda, const SliceDecomposition& decomp) {
    const StateVector y0{1.0, 0.0};
    const PropagatorSpec coarse = dahlquist_coarse(lambda, decomp);
    const PropagatorSpec fine = dahlquist_fine(lambda, decomp);

    Trajectory out;
    auto push = [&out](const StateVector& y) {
        const std::complex<double> z = as_complex(y);
        if (!std::isfinite(z.real()) || !std::isfinite(z.imag()) || std::abs(z) > kOverflowThreshold) {
            out.overflow = true;
            return false;
        }
        out.values.push_back(z);
        return true;
    };

    switch (scheme.kind) {
        case Scheme::Kind::CoarseSerial:
        case Scheme::Kind::FineSerial: {
            const bool is_coarse = scheme.kind == Scheme::Kind::CoarseSerial;
            const PropagatorSpec& spec = is_coarse ? coarse : fine;
            const int steps = is_coarse ? decomp.coarse_steps_per_slice : decomp.fine_steps_per_slice;
            StateVector y = y0;
            push(y);
            for (int n = 0; n < decomp.n_slices; ++n) {
                y = propagate(spec, y, decomp.boundary(n), decomp.boundary(n + 1), steps);
                if (!push(y)) break;
            }
            break;
        }
        case Scheme::Kind::Parareal: {
            if (scheme.iterations < 0 || scheme.iterations > decomp.n_slices)
                throw ConfigError("run_scheme: parareal iterations out of range");
            PararealRun run;
            try {
                run = parareal_solve(fine, coarse, decomp, y0, scheme.iterations);
            } catch (const DivergenceError&) {
                out.overflow = true;
                out.values.push_back({1.0, 0.0});
                return out;
            }
            for (const StateVector& y : run.iterates.back())
                if (!push(y)) break;
            break;
        }
    }
    return out;
}

double amplification_factor(const Trajectory& trajectory) {
    if (trajectory.overflow) return std::numeric_limits<double>::infinity();
    double amp = 0.0;
    for (std::size_t n = 1; n < trajectory.values.size(); ++n)
        amp = std::max(amp, std::pow(std::abs(trajectory.values[n]), 1.0 / static_cast<double>(n)));
    return amp;
}

double accuracy_error(const Trajectory& trajectory, ComplexLambda lambda, const SliceDecomposition& decomp) {
    if (trajectory.overflow) return std::numeric_limits<double>::infinity();
    const std::complex<double> lam{lambda.re, lambda.im};
    double err = 0.0;
    for (std::size_t n = 1; n < trajectory.values.size(); ++n) {
        const std::complex<double> exact = std::exp(lam * decomp.boundary(static_cast<int>(n)));
        err = std::max(err, std::abs(trajectory.values[n] - exact));
    }
    return err;
}

std::size_t StabilityGrid::stable_count(std::size_t scheme) const {
    const std::size_t per_layer = re_samples.size() * im_samples.size();
    const auto first = amplification.begin() + static_cast<std::ptrdiff_t>(scheme * per_layer);
    return static_cast<std::size_t>(
        std::count_if(first, first + static_cast<std::ptrdiff_t>(per_layer), [](double a) { return a <= 1.0; }));
}

std::size_t StabilityGrid::layer(const std::string& label) const {
    for (std::size_t s = 0; s < schemes.size(); ++s)
        if (schemes[s].label() == label) return s;
    throw ConfigError("stability grid has no layer '" + label + "'");
}

StabilityGrid sweep(std::pair<double, double> re_range, std::pair<double, double> im_range, int resolution,
                    const std::vector<int>& iter_counts, const SliceDecomposition& decomp,
                    const SweepOptions& options) {
    decomp.validate();
    if (resolution < 2) throw ConfigError("sweep: resolution must be at least 2");
    if (!(re_range.first <= re_range.second) || !(im_range.first <= im_range.second))
        throw ConfigError("sweep: ranges must satisfy lo <= hi");
    for (int k : iter_counts)
        if (k < 1 || k > decomp.n_slices) throw ConfigError("sweep: iteration counts must lie in [1, N]");

    StabilityGrid grid;
    grid.re_samples = linspace(re_range.first, re_range.second, resolution);
    grid.im_samples = linspace(im_range.first, im_range.second, resolution);
    grid.schemes = {Scheme::coarse(), Scheme::fine()};
    for (int k : iter_counts) grid.schemes.push_back(Scheme::parareal(k));
    const std::size_t cells = grid.re_samples.size() * grid.im_samples.size();
    grid.amplification.assign(grid.schemes.size() * cells, 0.0);
    grid.accuracy.assign(grid.schemes.size() * cells, 0.0);

    const int k_max = iter_counts.empty() ? 0 : *std::max_element(iter_counts.begin(), iter_counts.end());
    const StateVector y0{1.0, 0.0};

    parallel_for(cells, options.workers, [&](std::size_t cell) {
        const std::size_t ire = cell / grid.im_samples.size();
        const std::size_t iim = cell % grid.im_samples.size();
        const ComplexLambda lambda{grid.re_samples[ire], grid.im_samples[iim]};

        auto store = [&](std::size_t s, const Trajectory& tr) {
            grid.amplification[grid.index(s, ire, iim)] = amplification_factor(tr);
            grid.accuracy[grid.index(s, ire, iim)] = accuracy_error(tr, lambda, decomp);
        };
        store(0, run_scheme(Scheme::coarse(), lambda, decomp));
        store(1, run_scheme(Scheme::fine(), lambda, decomp));
        if (k_max == 0) return;

        // One Parareal run provides every requested iteration count; iterates do
        // not depend on max_iter.
        std::vector<Trajectory> layers(k_max + 1);
        try {
            const PararealRun run =
                parareal_solve(dahlquist_fine(lambda, decomp), dahlquist_coarse(lambda, decomp), decomp, y0, k_max);
            for (int k = 1; k <= k_max; ++k) {
                Trajectory& tr = layers[k];
                for (const StateVector& y : run.iterates[k]) {
                    const std::complex<double> z = as_complex(y);
                    if (std::abs(z) > kOverflowThreshold) {
                        tr.overflow = true;
                        break;
                    }
                    tr.values.push_back(z);
                }
            }
        } catch (const DivergenceError& e) {
            for (int k = 1; k <= k_max; ++k) {
                if (k < e.iteration()) layers[k] = run_scheme(Scheme::parareal(k), lambda, decomp);
                else layers[k].overflow = true;
            }
        }
        for (std::size_t s = 2; s < grid.schemes.size(); ++s) store(s, layers[grid.schemes[s].iterations]);
    });
    return grid;
}

}  // namespace ptlab
