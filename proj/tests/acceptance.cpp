// Acceptance run: one PASS/FAIL line per criterion; exit status 1 if any fails.

#include <chrono>
#include <cmath>
#include <complex>
#include <cstdio>
#include <functional>
#include <string>
#include <thread>
#include <vector>

#include "ptlab/errors.hpp"
#include "ptlab/navier_stokes.hpp"
#include "ptlab/parareal.hpp"
#include "ptlab/stability.hpp"
#include "test_support.hpp"

using namespace ptlab;

namespace {

int failures = 0;

void report(bool ok, const char* id, const std::string& what, const std::string& detail) {
    std::printf("[%s] %s %s: %s\n", ok ? "PASS" : "FAIL", id, what.c_str(), detail.c_str());
    std::fflush(stdout);
    if (!ok) ++failures;
}

std::string fmt(const char* f, double a) {
    char buf[128];
    std::snprintf(buf, sizeof buf, f, a);
    return buf;
}

unsigned workers() { return std::max(1u, std::thread::hardware_concurrency()); }

// max over slices n = 1..k of |U^k_n - U_n| / |U_n| on the selected dofs
double slice_error(const PararealRun& run, const std::vector<StateVector>& ref, int k, const ErrorDofs& dofs) {
    double worst = 0.0;
    for (int n = 1; n <= k; ++n) {
        const auto a = dofs.select(run.iterates[k][n]);
        const auto b = dofs.select(ref[n]);
        worst = std::max(worst, max_norm(lincomb(1.0, a, -1.0, b)) / max_norm(b));
    }
    return worst;
}

struct Runs {
    PararealRun dahlquist;
    std::vector<StateVector> dahlquist_ref;
    CavityParareal cavity;
    ErrorDofs cavity_dofs;
};

Runs termination_runs() {
    Runs r;
    const SliceDecomposition d = default_stability_decomposition();
    const ComplexLambda lam{-0.5, 1.0};
    const PropagatorSpec fine = dahlquist_fine(lam, d), coarse = dahlquist_coarse(lam, d);
    r.dahlquist_ref = serial_reference(fine, d, {1.0, 0.0});
    r.dahlquist = parareal_solve(fine, coarse, d, {1.0, 0.0}, d.n_slices, r.dahlquist_ref);
    CavityConfig cav;
    cav.n_x = 16;
    cav.nu = 1e-1;
    r.cavity = run_cavity_parareal(cav, default_cavity_decomposition(), 15, {workers(), std::nullopt});
    r.cavity_dofs = CavityProblem(cav).velocity_dofs();
    return r;
}

void ac1_ac2() {
    const Runs r = termination_runs();
    const double ed = r.dahlquist.errors.back(), ec = r.cavity.run.errors.back();
    report(ed <= 1e-10 && ec <= 1e-10, "AC1", "finite termination",
           fmt("Dahlquist e^15 = %.3g", ed) + fmt(", cavity e^15 = %.3g (<= 1e-10)", ec));

    double worst_d = 0.0, worst_c = 0.0;
    for (int k = 1; k <= 5; ++k) {
        worst_d = std::max(worst_d, slice_error(r.dahlquist, r.dahlquist_ref, k, {}));
        worst_c = std::max(worst_c, slice_error(r.cavity.run, r.cavity.reference, k, r.cavity_dofs));
    }
    report(worst_d <= 1e-11 && worst_c <= 1e-11, "AC2", "slice exactness for k = 1..5",
           fmt("Dahlquist max %.3g", worst_d) + fmt(", cavity max %.3g (<= 1e-11)", worst_c));
}

void ac3() {
    const StabilityGrid g = sweep({-4.0, 0.0}, {0.0, 4.0}, 201, {1, 4, 8, 12}, default_stability_decomposition(),
                                  {workers()});
    const double c1 = g.stable_count(g.layer("parareal@1")), c4 = g.stable_count(g.layer("parareal@4"));
    const double c8 = g.stable_count(g.layer("parareal@8")), c12 = g.stable_count(g.layer("parareal@12"));
    const double margin = 0.01 * 201 * 201;
    const bool ok = c4 < c1 - margin && c8 <= c4 && c12 > c8 + margin;
    char buf[160];
    std::snprintf(buf, sizeof buf, "stable points k1=%.0f k4=%.0f k8=%.0f k12=%.0f (strict margin %.0f)", c1, c4, c8,
                  c12, margin);
    report(ok, "AC3", "stability domain shrinks then expands", buf);
}

void ac4_ac5() {
    const StabilityGrid g = sweep({-4.0, 0.0}, {-4.0, 4.0}, 201, {1, 4, 8, 12, 15}, default_stability_decomposition(),
                                  {workers()});
    const std::size_t fine = g.layer("fine-serial"), par = g.layer("parareal@15");
    const std::size_t nre = g.re_samples.size(), nim = g.im_samples.size();
    auto rel = [](double a, double b) {
        if (a == b) return 0.0;  // also covers matching overflow sentinels
        return std::abs(a - b) / std::max(std::abs(a), std::abs(b));
    };
    double worst = 0.0;
    for (std::size_t ire = 0; ire < nre; ++ire)
        for (std::size_t iim = 0; iim < nim; ++iim) {
            worst = std::max(worst, rel(g.amplification[g.index(fine, ire, iim)], g.amplification[g.index(par, ire, iim)]));
            worst = std::max(worst, rel(g.accuracy[g.index(fine, ire, iim)], g.accuracy[g.index(par, ire, iim)]));
        }
    report(worst <= 1e-10, "AC4", "k = N layer equals the fine layer", fmt("max relative difference %.3g", worst));

    double sym = 0.0;
    for (std::size_t s = 0; s < g.schemes.size(); ++s)
        for (std::size_t ire = 0; ire < nre; ++ire)
            for (std::size_t iim = 0; iim < nim; ++iim) {
                const std::size_t a = g.index(s, ire, iim), b = g.index(s, ire, nim - 1 - iim);
                sym = std::max({sym, rel(g.amplification[a], g.amplification[b]), rel(g.accuracy[a], g.accuracy[b])});
            }
    report(sym <= 1e-12, "AC5", "conjugate symmetry of all layers", fmt("max relative difference %.3g", sym));
}

// smallest k with e^k <= 1e-5; -1 if never reached
int k_star(int nx, double nu, int coarse_per_unit) {
    CavityConfig cav;
    cav.n_x = nx;
    cav.nu = nu;
    const CavityParareal r =
        run_cavity_parareal(cav, default_cavity_decomposition(coarse_per_unit), 15, {workers(), 1e-5});
    const auto& e = r.run.errors;
    for (std::size_t k = 0; k < e.size(); ++k)
        if (e[k] <= 1e-5) return static_cast<int>(k);
    return -1;
}

void ac6_to_ac8() {
    const double nus[] = {1e-1, 1e-2, 1e-3, 1e-4};
    int k32[4], k8[4];
    for (int i = 0; i < 4; ++i) {
        k32[i] = k_star(32, nus[i], 200);
        k8[i] = k_star(8, nus[i], 200);
    }
    char buf[200];
    std::snprintf(buf, sizeof buf, "N_x=32 k* = %d, %d, %d, %d for nu = 1e-1 .. 1e-4", k32[0], k32[1], k32[2], k32[3]);
    const bool defined = k32[0] >= 0 && k32[1] >= 0 && k32[2] >= 0 && k32[3] >= 0;
    report(defined && k32[0] <= k32[1] && k32[1] <= k32[2] && k32[2] < k32[3], "AC6",
           "convergence degrades with viscosity", buf);

    const int d32 = k32[3] - k32[0], d8 = k8[3] - k8[0];
    std::snprintf(buf, sizeof buf, "k*(1e-4) - k*(1e-1): N_x=32 -> %d, N_x=8 -> %d (N_x=8 k* = %d, %d, %d, %d)", d32, d8,
                  k8[0], k8[1], k8[2], k8[3]);
    report(defined && k8[0] >= 0 && k8[3] >= 0 && d32 > d8, "AC7", "degradation grows with resolution", buf);

    const int fine_dt = k_star(32, 1e-3, 400);
    std::snprintf(buf, sizeof buf, "N_x=32, nu=1e-3: k*(1/400) = %d, k*(1/200) = %d", fine_dt, k32[2]);
    report(fine_dt >= 0 && k32[2] >= 0 && fine_dt <= k32[2], "AC8", "smaller coarse step helps", buf);
}

void ac9() {
    CavityConfig cav;
    cav.n_x = 64;
    cav.nu = 1e-1;
    std::string detail;
    bool ok = false;
    try {
        const CavityParareal r = run_cavity_parareal(cav, default_cavity_decomposition(), 1, {workers(), std::nullopt});
        detail = fmt("no instability detected, e^1 = %.3g", r.run.errors.back());
    } catch (const DivergenceError& e) {
        ok = true;
        detail = std::string("flagged: ") + e.what();
    } catch (const std::exception& e) {
        detail = std::string("unexpected error: ") + e.what();
    }
    report(ok, "AC9", "fine propagator instability at N_x = 64", detail);
}

void ac10() {
    CavityConfig cav;
    cav.n_x = 16;
    cav.nu = 1e-2;
    const CavityProblem problem(cav);
    const PropagatorSpec fine{Method::Rk3Explicit, 1.0 / 500, problem.rhs()};
    StateVector s = problem.initial_state();
    double worst = 0.0;
    bool ok = true;
    for (int n = 0; n < 500; ++n) {
        s = step(fine, s, n * fine.step_size);
        const FlowField f = FlowField::from_state(cav.n_x, s);
        const double div = max_divergence(f), bound = divergence_bound(f, cav);
        ok = ok && div <= bound;
        worst = std::max(worst, div / bound);
    }
    report(ok, "AC10", "projection keeps divergence within bound", fmt("max divergence / bound = %.3g over 500 steps", worst));
}

void ac11() {
    const ComplexLambda lam{-0.5, 1.0};
    const SplitRhs rhs = dahlquist_rhs(lam);
    const std::complex<double> exact = std::exp(std::complex<double>(lam.re, lam.im));
    auto slope = [&](Method m) {
        std::vector<double> hs, errs;
        for (int i = 0; i < 5; ++i) {
            const int steps = 10 << i;
            const StateVector u = propagate({m, 1.0 / steps, rhs}, {1.0, 0.0}, 0.0, 1.0, steps);
            hs.push_back(1.0 / steps);
            errs.push_back(std::abs(std::complex<double>(u[0], u[1]) - exact));
        }
        return test::loglog_slope(hs, errs);
    };
    const double s1 = slope(Method::ImexEuler), s3 = slope(Method::Rk3Explicit);
    report(std::abs(s1 - 1.0) <= 0.1 && std::abs(s3 - 3.0) <= 0.2, "AC11", "integrator orders",
           fmt("IMEX Euler slope %.3f", s1) + fmt(", RK3 slope %.3f", s3));
}

void ac12() {
    const double a = speedup_bound(15, 15, 2.5, 1.0), b = speedup_bound(15, 3, 2.5, 1.0),
                 c = speedup_bound(15, 2, 100.0, 1.0);
    char buf[128];
    std::snprintf(buf, sizeof buf, "bounds %.17g, %.17g, %.17g (expected 1, 2.5, 7.5)", a, b, c);
    report(a == 1.0 && b == 2.5 && c == 7.5, "AC12", "speedup bound", buf);
}

void guarded(const char* id, const std::function<void()>& fn) {
    const auto t0 = std::chrono::steady_clock::now();
    try {
        fn();
    } catch (const std::exception& e) {
        report(false, id, "aborted", e.what());
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    std::fprintf(stderr, "  (%s: %.1f s)\n", id, secs);
}

}  // namespace

int main() {
    guarded("AC1/AC2", ac1_ac2);
    guarded("AC3", ac3);
    guarded("AC4/AC5", ac4_ac5);
    guarded("AC6-AC8", ac6_to_ac8);
    guarded("AC9", ac9);
    guarded("AC10", ac10);
    guarded("AC11", ac11);
    guarded("AC12", ac12);
    std::printf("%d acceptance criteria failed\n", failures);
    return failures == 0 ? 0 : 1;
}
