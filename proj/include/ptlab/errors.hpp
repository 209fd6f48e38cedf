#pragma once

#include <stdexcept>
#include <string>

namespace ptlab {

/// Invalid parameters or inconsistent configuration.
class ConfigError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// A single time step could not be completed (implicit or projection solve failed).
class StepFailure : public std::runtime_error {
public:
    StepFailure(const std::string& what, double residual)
        : std::runtime_error(what), residual_(residual) {}

    double residual() const noexcept { return residual_; }

private:
    double residual_;
};

/// Linear solver failed to reach its tolerance within the iteration cap.
class SolverFailure : public StepFailure {
public:
    using StepFailure::StepFailure;
};

/// NaN/Inf detected in a propagated state.
///
/// iteration is -1 for a serial (non-Parareal) run.
class DivergenceError : public std::runtime_error {
public:
    DivergenceError(const std::string& what, int iteration, int slice)
        : std::runtime_error(what), iteration_(iteration), slice_(slice) {}

    int iteration() const noexcept { return iteration_; }
    int slice() const noexcept { return slice_; }

private:
    int iteration_;
    int slice_;
};

/// Failure inside a Parareal run, annotated with where it happened.
class PropagationError : public std::runtime_error {
public:
    PropagationError(const std::string& what, int iteration, int slice)
        : std::runtime_error(what), iteration_(iteration), slice_(slice) {}

    int iteration() const noexcept { return iteration_; }
    int slice() const noexcept { return slice_; }

private:
    int iteration_;
    int slice_;
};

/// A metric is undefined for its input (e.g. zero reference norm).
class MetricError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

}  // namespace ptlab
