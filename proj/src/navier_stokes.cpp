#include "ptlab/navier_stokes.hpp"

#include <Eigen/Sparse>
#include <Eigen/SparseCholesky>

#include <cmath>
#include <limits>
#include <array>
#include <map>
#include <mutex>
#include <numeric>
#include <span>
#include <string>

#include "ptlab/errors.hpp"

namespace ptlab {

namespace {

using SpMat = Eigen::SparseMatrix<double>;
using Vec = Eigen::VectorXd;

// Interior-node kernels over raw component arrays (n*n each).

void convection_kernel(int n, std::span<const double> u, std::span<const double> v, std::span<double> tu,
                       std::span<double> tv) {
    const double inv_h = n - 1.0;
    for (int j = 1; j < n - 1; ++j) {
        for (int i = 1; i < n - 1; ++i) {
            const std::size_t c = i + static_cast<std::size_t>(n) * j;
            const std::size_t w = c - 1, e = c + 1, s = c - n, nn = c + n;
            const double a = u[c], b = v[c];
            const double dudx = a > 0.0 ? u[c] - u[w] : u[e] - u[c];
            const double dvdx = a > 0.0 ? v[c] - v[w] : v[e] - v[c];
            const double dudy = b > 0.0 ? u[c] - u[s] : u[nn] - u[c];
            const double dvdy = b > 0.0 ? v[c] - v[s] : v[nn] - v[c];
            tu[c] = -(a * dudx + b * dudy) * inv_h;
            tv[c] = -(a * dvdx + b * dvdy) * inv_h;
        }
    }
}

void laplacian_kernel(int n, double scale, std::span<const double> f, std::span<double> out) {
    const double coef = scale * (n - 1.0) * (n - 1.0);
    for (int j = 1; j < n - 1; ++j) {
        for (int i = 1; i < n - 1; ++i) {
            const std::size_t c = i + static_cast<std::size_t>(n) * j;
            out[c] = coef * (f[c - 1] + f[c + 1] + f[c - n] + f[c + n] - 4.0 * f[c]);
        }
    }
}

void gradient_kernel(int n, std::span<const double> p, std::span<double> gx, std::span<double> gy) {
    const double inv_2h = 0.5 * (n - 1.0);
    for (int j = 1; j < n - 1; ++j) {
        for (int i = 1; i < n - 1; ++i) {
            const std::size_t c = i + static_cast<std::size_t>(n) * j;
            gx[c] = (p[c + 1] - p[c - 1]) * inv_2h;
            gy[c] = (p[c + n] - p[c - n]) * inv_2h;
        }
    }
}

// Fraction of a full control volume owned by node (i, j).
double volume_fraction(int n, int i, int j) {
    double w = 1.0;
    if (i == 0 || i == n - 1) w *= 0.5;
    if (j == 0 || j == n - 1) w *= 0.5;
    return w;
}

// -M^{-1} G^T (u, v): adjoint of the central gradient restricted to interior nodes.
void divergence_kernel(int n, std::span<const double> u, std::span<const double> v, std::span<double> out) {
    std::fill(out.begin(), out.end(), 0.0);
    const double inv_2h = 0.5 * (n - 1.0);
    for (int j = 1; j < n - 1; ++j) {
        for (int i = 1; i < n - 1; ++i) {
            const std::size_t c = i + static_cast<std::size_t>(n) * j;
            // G_x row c touches p[c+1] with +1/(2h) and p[c-1] with -1/(2h).
            out[c + 1] -= u[c] * inv_2h;
            out[c - 1] += u[c] * inv_2h;
            out[c + n] -= v[c] * inv_2h;
            out[c - n] += v[c] * inv_2h;
        }
    }
    for (int j = 0; j < n; ++j)
        for (int i = 0; i < n; ++i) out[i + static_cast<std::size_t>(n) * j] /= volume_fraction(n, i, j);
}

}  // namespace

// ---------------------------------------------------------------------------

class CavityOperators {
public:
    explicit CavityOperators(const CavityConfig& config) : config_(config), n_(config.n_x) {
        assemble_poisson();
    }

    const CavityConfig& config() const { return config_; }
    int n() const { return n_; }
    std::size_t nodes() const { return static_cast<std::size_t>(n_) * n_; }

    void project(std::span<double> u, std::span<double> v, std::span<double> p, double dt) const;
    void solve_diffusion(std::span<const double> rhs, std::span<double> out, double h) const;
    void apply_bc(std::span<double> u, std::span<double> v) const;

private:
    struct DiffusionSolver {
        SpMat matrix;
        Eigen::SimplicialLDLT<SpMat> ldlt;
    };

    void assemble_poisson();
    void remove_null_space(Vec& x) const;
    const DiffusionSolver& diffusion_solver(double h) const;

    CavityConfig config_;
    int n_;

    // G^T G on all nodes plus a small diagonal shift; the shift only fixes the
    // null space (constants and checkerboards) and is removed by refinement.
    SpMat poisson_;
    Eigen::SimplicialLDLT<SpMat> poisson_ldlt_;
    // null(G) is spanned by the indicators of these disjoint node classes: the
    // four parity sub-lattices (corners excluded) and each corner on its own.
    std::vector<int> null_class_;
    std::array<double, 8> null_class_size_{};

    mutable std::mutex diffusion_mutex_;
    mutable std::map<double, std::unique_ptr<DiffusionSolver>> diffusion_;
};

void CavityOperators::assemble_poisson() {
    const int n = n_;
    const double inv_2h = 0.5 * (n - 1.0);
    std::vector<Eigen::Triplet<double>> trip;
    // Rows: x-gradient at interior node c (row 2c), y-gradient (row 2c+1).
    for (int j = 1; j < n - 1; ++j) {
        for (int i = 1; i < n - 1; ++i) {
            const int c = i + n * j;
            trip.emplace_back(2 * c, c + 1, inv_2h);
            trip.emplace_back(2 * c, c - 1, -inv_2h);
            trip.emplace_back(2 * c + 1, c + n, inv_2h);
            trip.emplace_back(2 * c + 1, c - n, -inv_2h);
        }
    }
    SpMat grad(2 * static_cast<Eigen::Index>(nodes()), static_cast<Eigen::Index>(nodes()));
    grad.setFromTriplets(trip.begin(), trip.end());
    poisson_ = SpMat(grad.transpose() * grad);
    poisson_.makeCompressed();

    double max_diag = 0.0;
    for (Eigen::Index k = 0; k < poisson_.rows(); ++k) max_diag = std::max(max_diag, poisson_.coeff(k, k));
    SpMat shifted = poisson_;
    SpMat eye(shifted.rows(), shifted.cols());
    eye.setIdentity();
    shifted += (1e-9 * max_diag) * eye;
    poisson_ldlt_.compute(shifted);

    null_class_.resize(nodes());
    for (int j = 0; j < n; ++j) {
        for (int i = 0; i < n; ++i) {
            const bool corner = (i == 0 || i == n - 1) && (j == 0 || j == n - 1);
            const int cls = corner ? 4 + (i == 0 ? 0 : 1) + (j == 0 ? 0 : 2) : (i % 2) + 2 * (j % 2);
            null_class_[i + static_cast<std::size_t>(n) * j] = cls;
            null_class_size_[cls] += 1.0;
        }
    }
    if (poisson_ldlt_.info() != Eigen::Success) throw SolverFailure("pressure Poisson factorization failed", 0.0);
}

void CavityOperators::remove_null_space(Vec& x) const {
    std::array<double, 8> sums{};
    for (Eigen::Index c = 0; c < x.size(); ++c) sums[null_class_[c]] += x[c];
    for (Eigen::Index c = 0; c < x.size(); ++c) x[c] -= sums[null_class_[c]] / null_class_size_[null_class_[c]];
}

const CavityOperators::DiffusionSolver& CavityOperators::diffusion_solver(double h) const {
    std::lock_guard lock(diffusion_mutex_);
    auto it = diffusion_.find(h);
    if (it != diffusion_.end()) return *it->second;

    const int n = n_;
    const int m = n - 2;
    const double c = h * config_.nu * (n - 1.0) * (n - 1.0);
    std::vector<Eigen::Triplet<double>> trip;
    for (int j = 0; j < m; ++j) {
        for (int i = 0; i < m; ++i) {
            const int r = i + m * j;
            trip.emplace_back(r, r, 1.0 + 4.0 * c);
            if (i > 0) trip.emplace_back(r, r - 1, -c);
            if (i < m - 1) trip.emplace_back(r, r + 1, -c);
            if (j > 0) trip.emplace_back(r, r - m, -c);
            if (j < m - 1) trip.emplace_back(r, r + m, -c);
        }
    }
    auto solver = std::make_unique<DiffusionSolver>();
    solver->matrix = SpMat(m * m, m * m);
    solver->matrix.setFromTriplets(trip.begin(), trip.end());
    solver->ldlt.compute(solver->matrix);
    if (solver->ldlt.info() != Eigen::Success) throw SolverFailure("diffusion factorization failed", 0.0);
    return *diffusion_.emplace(h, std::move(solver)).first->second;
}

void CavityOperators::solve_diffusion(std::span<const double> rhs, std::span<double> out, double h) const {
    const DiffusionSolver& solver = diffusion_solver(h);
    const int n = n_;
    const int m = n - 2;
    const double c = h * config_.nu * (n - 1.0) * (n - 1.0);

    // Dirichlet data from the boundary entries of rhs move to the right-hand side.
    Vec b(m * m);
    for (int j = 1; j < n - 1; ++j) {
        for (int i = 1; i < n - 1; ++i) {
            const std::size_t k = i + static_cast<std::size_t>(n) * j;
            double val = rhs[k];
            if (i == 1) val += c * rhs[k - 1];
            if (i == n - 2) val += c * rhs[k + 1];
            if (j == 1) val += c * rhs[k - n];
            if (j == n - 2) val += c * rhs[k + n];
            b[(i - 1) + m * (j - 1)] = val;
        }
    }
    const Vec x = solver.ldlt.solve(b);
    const double bnorm = b.norm();
    const double res = (b - solver.matrix * x).norm();
    if (bnorm > 0.0 && !(res <= 1e-10 * bnorm))
        throw SolverFailure("diffusion solve missed tolerance, relative residual " + std::to_string(res / bnorm),
                            res / bnorm);

    std::copy(rhs.begin(), rhs.end(), out.begin());
    for (int j = 1; j < n - 1; ++j)
        for (int i = 1; i < n - 1; ++i) out[i + static_cast<std::size_t>(n) * j] = x[(i - 1) + m * (j - 1)];
}

void CavityOperators::apply_bc(std::span<double> u, std::span<double> v) const {
    const int n = n_;
    for (int k = 0; k < n; ++k) {
        for (const std::size_t c : {static_cast<std::size_t>(k), static_cast<std::size_t>(n) * k,
                                    static_cast<std::size_t>(n - 1) + static_cast<std::size_t>(n) * k}) {
            u[c] = 0.0;
            v[c] = 0.0;
        }
        const std::size_t top = k + static_cast<std::size_t>(n) * (n - 1);
        u[top] = (k == 0 || k == n - 1) ? 0.0 : config_.lid_velocity;
        v[top] = 0.0;
    }
}

void CavityOperators::project(std::span<double> u, std::span<double> v, std::span<double> p, double dt) const {
    const int n = n_;
    const std::size_t nn = nodes();

    // b = G^T u* / dt, with G^T = -M D.
    std::vector<double> div(nn);
    divergence_kernel(n, u, v, div);
    Vec b(static_cast<Eigen::Index>(nn));
    for (int j = 0; j < n; ++j)
        for (int i = 0; i < n; ++i) {
            const std::size_t c = i + static_cast<std::size_t>(n) * j;
            b[static_cast<Eigen::Index>(c)] = -volume_fraction(n, i, j) * div[c] / dt;
        }

    if (!b.allFinite()) {
        // Blown-up state: poison it so callers see NaN rather than a solver error.
        const double nan = std::numeric_limits<double>::quiet_NaN();
        std::fill(u.begin(), u.end(), nan);
        std::fill(v.begin(), v.end(), nan);
        std::fill(p.begin(), p.end(), nan);
        return;
    }

    // Neumann compatibility: b must lie in range(G^T G) = null(G)^perp.
    remove_null_space(b);
    const double bnorm = b.norm();
    Vec phi = Vec::Zero(static_cast<Eigen::Index>(nn));
    if (bnorm > 0.0) {
        constexpr int kMaxRefinements = 30;
        const double target = 1e-3 * config_.poisson_tol;
        Vec r = b;
        double rel = 1.0;
        for (int it = 0; it < kMaxRefinements && rel > target; ++it) {
            phi += poisson_ldlt_.solve(r);
            r = b - poisson_ * phi;
            remove_null_space(r);
            const double next = r.norm() / bnorm;
            if (!(next < rel) && it > 2) {
                rel = next;
                break;
            }
            rel = next;
        }
        if (!(rel <= config_.poisson_tol))
            throw SolverFailure("pressure Poisson solve missed tolerance, relative residual " + std::to_string(rel),
                                rel);
        remove_null_space(phi);
    }

    std::vector<double> gx(nn, 0.0), gy(nn, 0.0);
    gradient_kernel(n, std::span<const double>(phi.data(), nn), gx, gy);
    for (std::size_t c = 0; c < nn; ++c) {
        u[c] -= dt * gx[c];
        v[c] -= dt * gy[c];
        p[c] += phi[static_cast<Eigen::Index>(c)];
    }
    apply_bc(u, v);
}

// ---------------------------------------------------------------------------

void CavityConfig::validate() const {
    if (n_x < 4) throw ConfigError("cavity: n_x must be at least 4");
    if (!(nu > 0.0) || !std::isfinite(nu)) throw ConfigError("cavity: nu must be positive");
    if (!std::isfinite(lid_velocity)) throw ConfigError("cavity: lid velocity must be finite");
    if (!(poisson_tol > 0.0 && poisson_tol <= 1e-6)) throw ConfigError("cavity: poisson_tol must lie in (0, 1e-6]");
}

StateVector FlowField::to_state() const {
    StateVector s;
    s.reserve(3 * u.size());
    s.insert(s.end(), u.begin(), u.end());
    s.insert(s.end(), v.begin(), v.end());
    s.insert(s.end(), p.begin(), p.end());
    return s;
}

FlowField FlowField::from_state(int n_x, const StateVector& state) {
    FlowField f(n_x);
    const std::size_t nn = f.u.size();
    if (state.size() != 3 * nn) throw ConfigError("flow field: state size does not match grid");
    std::copy_n(state.begin(), nn, f.u.begin());
    std::copy_n(state.begin() + nn, nn, f.v.begin());
    std::copy_n(state.begin() + 2 * nn, nn, f.p.begin());
    return f;
}

VelocityTendency convection_tendency(const FlowField& field) {
    VelocityTendency t{std::vector<double>(field.u.size(), 0.0), std::vector<double>(field.u.size(), 0.0)};
    convection_kernel(field.n, field.u, field.v, t.u, t.v);
    return t;
}

VelocityTendency diffusion_tendency(const FlowField& field, double nu) {
    VelocityTendency t{std::vector<double>(field.u.size(), 0.0), std::vector<double>(field.u.size(), 0.0)};
    laplacian_kernel(field.n, nu, field.u, t.u);
    laplacian_kernel(field.n, nu, field.v, t.v);
    return t;
}

VelocityTendency pressure_gradient(const FlowField& field) {
    VelocityTendency t{std::vector<double>(field.u.size(), 0.0), std::vector<double>(field.u.size(), 0.0)};
    gradient_kernel(field.n, field.p, t.u, t.v);
    return t;
}

std::vector<double> divergence(const FlowField& field) {
    std::vector<double> out(field.u.size());
    divergence_kernel(field.n, field.u, field.v, out);
    return out;
}

double max_divergence(const FlowField& field) { return max_norm(divergence(field)); }

double divergence_bound(const FlowField& field, const CavityConfig& config) {
    return 10.0 * config.poisson_tol * (max_norm(field.u) + max_norm(field.v)) / field.spacing();
}

void apply_cavity_bc(FlowField& field, const CavityConfig& config) {
    CavityConfig c = config;
    c.n_x = field.n;
    const int n = field.n;
    for (int k = 0; k < n; ++k) {
        for (const std::size_t idx : {field.idx(k, 0), field.idx(0, k), field.idx(n - 1, k)}) {
            field.u[idx] = 0.0;
            field.v[idx] = 0.0;
        }
        const std::size_t top = field.idx(k, n - 1);
        field.u[top] = (k == 0 || k == n - 1) ? 0.0 : c.lid_velocity;
        field.v[top] = 0.0;
    }
}

FlowField cavity_initial_field(const CavityConfig& config) {
    config.validate();
    FlowField f(config.n_x);
    apply_cavity_bc(f, config);
    return f;
}

CavityProblem::CavityProblem(const CavityConfig& config) {
    config.validate();
    ops_ = std::make_shared<const CavityOperators>(config);
}

CavityProblem::~CavityProblem() = default;
CavityProblem::CavityProblem(CavityProblem&&) noexcept = default;
CavityProblem& CavityProblem::operator=(CavityProblem&&) noexcept = default;

const CavityConfig& CavityProblem::config() const { return ops_->config(); }

void CavityProblem::project(FlowField& field, double dt) const {
    if (field.n != ops_->n()) throw ConfigError("projection: field grid does not match problem");
    if (!(dt > 0.0)) throw ConfigError("projection: dt must be positive");
    ops_->project(field.u, field.v, field.p, dt);
}

SplitRhs CavityProblem::rhs() const {
    auto ops = ops_;
    const int n = ops->n();
    const std::size_t nn = ops->nodes();
    const double nu = ops->config().nu;

    auto check = [nn](const StateVector& s) {
        if (s.size() != 3 * nn) throw ConfigError("cavity rhs: state size does not match grid");
    };

    SplitRhs rhs;
    rhs.implicit_part = [=](const StateVector& s, double) {
        check(s);
        StateVector out(3 * nn, 0.0);
        const std::span<const double> all(s);
        const std::span<double> dst(out);
        laplacian_kernel(n, nu, all.subspan(0, nn), dst.subspan(0, nn));
        laplacian_kernel(n, nu, all.subspan(nn, nn), dst.subspan(nn, nn));
        return out;
    };
    rhs.explicit_part = [=](const StateVector& s, double) {
        check(s);
        StateVector out(3 * nn, 0.0);
        const std::span<const double> all(s);
        const std::span<double> dst(out);
        convection_kernel(n, all.subspan(0, nn), all.subspan(nn, nn), dst.subspan(0, nn), dst.subspan(nn, nn));
        std::vector<double> gx(nn, 0.0), gy(nn, 0.0);
        gradient_kernel(n, all.subspan(2 * nn, nn), gx, gy);
        for (std::size_t c = 0; c < nn; ++c) {
            out[c] -= gx[c];
            out[nn + c] -= gy[c];
        }
        return out;
    };
    rhs.implicit_solve = [=](const StateVector& b, double, double h) {
        check(b);
        StateVector out(3 * nn);
        const std::span<const double> src(b);
        const std::span<double> dst(out);
        ops->solve_diffusion(src.subspan(0, nn), dst.subspan(0, nn), h);
        ops->solve_diffusion(src.subspan(nn, nn), dst.subspan(nn, nn), h);
        std::copy(b.begin() + 2 * nn, b.end(), out.begin() + 2 * nn);
        return out;
    };
    rhs.post_step = [=](StateVector& s, double, double h) {
        check(s);
        const std::span<double> all(s);
        ops->project(all.subspan(0, nn), all.subspan(nn, nn), all.subspan(2 * nn, nn), h);
    };
    return rhs;
}

StateVector CavityProblem::initial_state() const { return cavity_initial_field(ops_->config()).to_state(); }

ErrorDofs CavityProblem::velocity_dofs() const { return {0, 2 * ops_->nodes()}; }

FlowField pressure_projection(const FlowField& field, double dt, const CavityConfig& config) {
    CavityConfig c = config;
    c.n_x = field.n;
    const CavityProblem problem(c);
    FlowField out = field;
    problem.project(out, dt);
    return out;
}

SplitRhs cavity_rhs(const CavityConfig& config) { return CavityProblem(config).rhs(); }

SliceDecomposition default_cavity_decomposition(int coarse_steps_per_unit, int fine_steps_per_unit) {
    return {15.0, 15, coarse_steps_per_unit, fine_steps_per_unit};
}

CavityParareal run_cavity_parareal(const CavityConfig& config, const SliceDecomposition& decomp, int max_iter,
                                   const CavityRunOptions& options) {
    decomp.validate();
    const CavityProblem problem(config);
    const SplitRhs rhs = problem.rhs();
    const PropagatorSpec fine{Method::Rk3Explicit, decomp.fine_step(), rhs};
    const PropagatorSpec coarse{Method::ImexEuler, decomp.coarse_step(), rhs};
    const StateVector u0 = problem.initial_state();

    CavityParareal out;
    out.reference = serial_reference(fine, decomp, u0);
    PararealOptions popts;
    popts.workers = options.workers;
    popts.stop_tolerance = options.stop_tolerance;
    popts.error_dofs = problem.velocity_dofs();
    out.run = parareal_solve(fine, coarse, decomp, u0, max_iter, out.reference, popts);
    return out;
}

}  // namespace ptlab
