#pragma once

#include <ostream>
#include <string>
#include <vector>

#include "ptlab/navier_stokes.hpp"
#include "ptlab/stability.hpp"

namespace ptlab {

/// Fixed 17-significant-digit rendering ("inf", "-inf" and "nan" for non-finite values).
std::string format_real(double value);

/// Columns scheme,re,im,amplification,accuracy_error for one layer.
void write_stability_csv(std::ostream& os, const StabilityGrid& grid, std::size_t layer);
/// Same fields as a JSON document; +inf overflow sentinels become null.
void write_stability_json(std::ostream& os, const StabilityGrid& grid, std::size_t layer);

/// One row of a cavity convergence history.
struct ConvergenceRow {
    int nx = 0;
    double nu = 0.0;
    double dt_coarse = 0.0;
    double dt_fine = 0.0;
    int k = 0;
    double error = 0.0;
    bool flagged_unstable = false;
};

/// Columns nx,nu,dt_coarse,dt_fine,k,error,flagged_unstable.
void write_convergence_csv(std::ostream& os, const std::vector<ConvergenceRow>& rows);
void write_convergence_json(std::ostream& os, const std::vector<ConvergenceRow>& rows);

struct SpeedupRow {
    int n_slices = 0;
    int n_iter = 0;
    double cost_ratio = 0.0;
    double bound = 0.0;
};

/// Columns n_slices,n_iter,cost_ratio,bound.
void write_speedup_csv(std::ostream& os, const std::vector<SpeedupRow>& rows);
void write_speedup_json(std::ostream& os, const std::vector<SpeedupRow>& rows);

/// Columns x,y,u,v,p, one row per node.
void write_flow_snapshot_csv(std::ostream& os, const FlowField& field);

}  // namespace ptlab
