#include "ptlab/output.hpp"

#include <cmath>
#include <cstdio>

#include <json.hpp>

namespace ptlab {

namespace {

nlohmann::ordered_json real_or_null(double value) {
    if (!std::isfinite(value)) return nullptr;
    return value;
}

void dump(std::ostream& os, const nlohmann::ordered_json& doc) { os << doc.dump(2) << '\n'; }

}  // namespace

std::string format_real(double value) {
    if (std::isnan(value)) return "nan";
    if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", value);
    return buf;
}

void write_stability_csv(std::ostream& os, const StabilityGrid& grid, std::size_t layer) {
    const std::string label = grid.schemes.at(layer).label();
    os << "scheme,re,im,amplification,accuracy_error\n";
    for (std::size_t ire = 0; ire < grid.re_samples.size(); ++ire) {
        for (std::size_t iim = 0; iim < grid.im_samples.size(); ++iim) {
            const std::size_t k = grid.index(layer, ire, iim);
            os << label << ',' << format_real(grid.re_samples[ire]) << ',' << format_real(grid.im_samples[iim]) << ','
               << format_real(grid.amplification[k]) << ',' << format_real(grid.accuracy[k]) << '\n';
        }
    }
}

void write_stability_json(std::ostream& os, const StabilityGrid& grid, std::size_t layer) {
    nlohmann::ordered_json doc;
    doc["scheme"] = grid.schemes.at(layer).label();
    auto& points = doc["points"] = nlohmann::ordered_json::array();
    for (std::size_t ire = 0; ire < grid.re_samples.size(); ++ire) {
        for (std::size_t iim = 0; iim < grid.im_samples.size(); ++iim) {
            const std::size_t k = grid.index(layer, ire, iim);
            points.push_back({{"scheme", doc["scheme"]},
                              {"re", grid.re_samples[ire]},
                              {"im", grid.im_samples[iim]},
                              {"amplification", real_or_null(grid.amplification[k])},
                              {"accuracy_error", real_or_null(grid.accuracy[k])}});
        }
    }
    dump(os, doc);
}

void write_convergence_csv(std::ostream& os, const std::vector<ConvergenceRow>& rows) {
    os << "nx,nu,dt_coarse,dt_fine,k,error,flagged_unstable\n";
    for (const auto& r : rows) {
        os << r.nx << ',' << format_real(r.nu) << ',' << format_real(r.dt_coarse) << ',' << format_real(r.dt_fine)
           << ',' << r.k << ',' << format_real(r.error) << ',' << (r.flagged_unstable ? 1 : 0) << '\n';
    }
}

void write_convergence_json(std::ostream& os, const std::vector<ConvergenceRow>& rows) {
    auto doc = nlohmann::ordered_json::array();
    for (const auto& r : rows) {
        doc.push_back({{"nx", r.nx},
                       {"nu", r.nu},
                       {"dt_coarse", r.dt_coarse},
                       {"dt_fine", r.dt_fine},
                       {"k", r.k},
                       {"error", real_or_null(r.error)},
                       {"flagged_unstable", r.flagged_unstable}});
    }
    dump(os, doc);
}

void write_speedup_csv(std::ostream& os, const std::vector<SpeedupRow>& rows) {
    os << "n_slices,n_iter,cost_ratio,bound\n";
    for (const auto& r : rows)
        os << r.n_slices << ',' << r.n_iter << ',' << format_real(r.cost_ratio) << ',' << format_real(r.bound) << '\n';
}

void write_speedup_json(std::ostream& os, const std::vector<SpeedupRow>& rows) {
    auto doc = nlohmann::ordered_json::array();
    for (const auto& r : rows)
        doc.push_back({{"n_slices", r.n_slices}, {"n_iter", r.n_iter}, {"cost_ratio", r.cost_ratio}, {"bound", r.bound}});
    dump(os, doc);
}

void write_flow_snapshot_csv(std::ostream& os, const FlowField& field) {
    os << "x,y,u,v,p\n";
    const double h = field.spacing();
    for (int j = 0; j < field.n; ++j) {
        for (int i = 0; i < field.n; ++i) {
            const std::size_t c = field.idx(i, j);
            os << format_real(i * h) << ',' << format_real(j * h) << ',' << format_real(field.u[c]) << ','
               << format_real(field.v[c]) << ',' << format_real(field.p[c]) << '\n';
        }
    }
}

}  // namespace ptlab
