#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <complex>
#include <cstring>
#include <limits>

#include "ptlab/errors.hpp"
#include "ptlab/parareal.hpp"
#include "ptlab/stability.hpp"
#include "test_support.hpp"

using namespace ptlab;
using cplx = std::complex<double>;

namespace {

double rel_diff(const StateVector& a, const StateVector& b) {
    double d = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) d = std::max(d, std::abs(a[i] - b[i]));
    return d / max_norm(b);
}

bool same_bits(const StateVector& a, const StateVector& b) {
    return a.size() == b.size() && std::memcmp(a.data(), b.data(), a.size() * sizeof(double)) == 0;
}

struct Setup {
    SliceDecomposition decomp;
    PropagatorSpec fine, coarse;
};

Setup dahlquist_setup(ComplexLambda lam, SliceDecomposition decomp) {
    return {decomp, dahlquist_fine(lam, decomp), dahlquist_coarse(lam, decomp)};
}

}  // namespace

TEST_CASE("slice decomposition") {
    const SliceDecomposition d{30.0, 15, 2, 5};
    CHECK(d.slice_length() == 2.0);
    CHECK(d.coarse_step() == 1.0);
    CHECK(d.fine_step() == doctest::Approx(0.4));
    CHECK(d.boundary(15) == 30.0);
    CHECK_THROWS_AS((SliceDecomposition{0.0, 15, 2, 5}.validate()), ConfigError);
    CHECK_THROWS_AS((SliceDecomposition{1.0, 0, 2, 5}.validate()), ConfigError);
    CHECK_THROWS_AS((SliceDecomposition{1.0, 3, 0, 5}.validate()), ConfigError);
}

TEST_CASE("serial_reference") {
    SUBCASE("a single slice is one propagation") {
        const Setup s = dahlquist_setup({-0.3, 0.8}, {2.0, 1, 3, 7});
        const auto ref = serial_reference(s.fine, s.decomp, {1.0, 0.0});
        REQUIRE(ref.size() == 2);
        CHECK(ref[0] == StateVector{1.0, 0.0});
        CHECK(ref[1] == propagate(s.fine, {1.0, 0.0}, 0.0, 2.0, 7));
    }
    SUBCASE("zero tendency keeps u0") {
        const Setup s = dahlquist_setup({0.0, 0.0}, {15.0, 15, 2, 5});
        for (const auto& u : serial_reference(s.fine, s.decomp, {0.25, -2.0})) CHECK(u == StateVector{0.25, -2.0});
    }
    SUBCASE("decay over 15 unit slices, 5 RK3 steps each") {
        const Setup s = dahlquist_setup({-1.0, 0.0}, {15.0, 15, 2, 5});
        const auto ref = serial_reference(s.fine, s.decomp, {1.0, 0.0});
        // Oracle: 75 applications of the stability polynomial at z = -0.2.
        const double oracle = std::pow(test::rk3_polynomial(-0.2).real(), 75);
        CHECK(ref[15][0] == doctest::Approx(oracle).epsilon(1e-12));
        // Third-order per-step error 8e-5 accumulates to ~5.9e-3 against exp(-15).
        CHECK(std::abs(ref[15][0] / std::exp(-15.0) - 1.0) == doctest::Approx(5.85e-3).epsilon(0.01));
    }
    SUBCASE("blow-up is reported with the slice index") {
        const Setup s = dahlquist_setup({0.0, 0.0}, {4.0, 4, 1, 1});
        PropagatorSpec bad = s.fine;
        bad.rhs.explicit_part = [](const StateVector& y, double t) {
            return t > 2.0 ? StateVector(y.size(), std::numeric_limits<double>::infinity()) : StateVector(y.size());
        };
        try {
            serial_reference(bad, s.decomp, {1.0, 0.0});
            FAIL("expected divergence");
        } catch (const DivergenceError& e) {
            CHECK(e.slice() == 2);
            CHECK(e.iteration() == -1);
        }
    }
}

TEST_CASE("parareal_solve finite termination") {
    const Setup s = dahlquist_setup({-0.5, 1.0}, {30.0, 15, 2, 5});
    const StateVector u0{1.0, 0.0};
    const auto ref = serial_reference(s.fine, s.decomp, u0);
    const PararealRun run = parareal_solve(s.fine, s.coarse, s.decomp, u0, 15, ref);

    REQUIRE(run.k_performed == 15);
    REQUIRE(run.iterates.size() == 16);
    REQUIRE(run.errors.size() == 16);
    for (int n = 0; n <= 15; ++n) CHECK(rel_diff(run.iterates[15][n], ref[n]) <= 1e-12);
    CHECK(run.errors[15] <= 1e-11);

    // U^k_n is the serial fine value for every n <= k.
    for (int k = 0; k <= 15; ++k)
        for (int n = 0; n <= k; ++n) CHECK(rel_diff(run.iterates[k][n], ref[n]) <= 1e-12);
    for (int k = 0; k <= 15; ++k) CHECK(same_bits(run.iterates[k][0], u0));
    for (double e : run.errors) CHECK(e >= 0.0);
}

TEST_CASE("coarse equal to fine converges in one iteration") {
    const SliceDecomposition decomp{10.0, 10, 4, 4};
    const SplitRhs rhs = dahlquist_rhs({-0.2, 1.5});
    const PropagatorSpec prop{Method::Rk3Explicit, decomp.fine_step(), rhs};
    const auto ref = serial_reference(prop, decomp, {1.0, 0.0});
    const PararealRun run = parareal_solve(prop, prop, decomp, {1.0, 0.0}, 1, ref);
    CHECK(run.errors[0] <= 1e-12);
    CHECK(run.errors[1] <= 1e-12);
}

TEST_CASE("parareal property: exactness by slice for random problems") {
    auto gen = test::rng(2024);
    std::uniform_real_distribution<double> re(-3.0, 0.0), im(-3.0, 3.0);
    std::uniform_int_distribution<int> slices(1, 12), steps(1, 6);
    for (int trial = 0; trial < 60; ++trial) {
        const int N = slices(gen);
        const SliceDecomposition decomp{0.5 * N, N, steps(gen), steps(gen)};
        const Setup s = dahlquist_setup({re(gen), im(gen)}, decomp);
        const StateVector u0{1.0, 0.5};
        const auto ref = serial_reference(s.fine, decomp, u0);
        const PararealRun run = parareal_solve(s.fine, s.coarse, decomp, u0, N, ref);
        for (int k = 0; k <= N; ++k) {
            CHECK(same_bits(run.iterates[k][0], u0));
            for (int n = 0; n <= k; ++n) CHECK(rel_diff(run.iterates[k][n], ref[n]) <= 1e-11);
        }
        CHECK(run.errors[N] <= 1e-11);
    }
}

TEST_CASE("fine propagation schedule does not change the iterates") {
    const Setup s = dahlquist_setup({-0.1, 2.5}, {30.0, 15, 2, 5});
    const StateVector u0{1.0, 0.0};
    PararealOptions serial_opts, threaded_opts;
    threaded_opts.workers = 4;
    const auto a = parareal_solve(s.fine, s.coarse, s.decomp, u0, 8, std::nullopt, serial_opts);
    for (int repeat = 0; repeat < 5; ++repeat) {
        const auto b = parareal_solve(s.fine, s.coarse, s.decomp, u0, 8, std::nullopt, threaded_opts);
        for (int k = 0; k <= 8; ++k)
            for (int n = 0; n <= 15; ++n) CHECK(same_bits(a.iterates[k][n], b.iterates[k][n]));
    }
}

TEST_CASE("parareal options and errors") {
    const Setup s = dahlquist_setup({-1.0, 0.5}, {15.0, 15, 2, 5});
    const StateVector u0{1.0, 0.0};
    const auto ref = serial_reference(s.fine, s.decomp, u0);

    SUBCASE("max_iter = 0 is the coarse prediction") {
        const auto run = parareal_solve(s.fine, s.coarse, s.decomp, u0, 0, ref);
        CHECK(run.k_performed == 0);
        REQUIRE(run.errors.size() == 1);
        CHECK(run.iterates[0] == serial_coarse(s.coarse, s.decomp, u0));
    }
    SUBCASE("early exit") {
        PararealOptions opts;
        opts.stop_tolerance = 1e-6;
        const auto run = parareal_solve(s.fine, s.coarse, s.decomp, u0, 15, ref, opts);
        CHECK(run.k_performed < 15);
        CHECK(run.errors.back() <= 1e-6);
        CHECK(run.errors[run.errors.size() - 2] > 1e-6);
    }
    SUBCASE("configuration checks") {
        CHECK_THROWS_AS(parareal_solve(s.fine, s.coarse, s.decomp, u0, 16), ConfigError);
        CHECK_THROWS_AS(parareal_solve(s.fine, s.coarse, s.decomp, u0, -1), ConfigError);
        CHECK_THROWS_AS(parareal_solve(s.coarse, s.coarse, s.decomp, u0, 2), ConfigError);
        PararealOptions opts;
        opts.stop_tolerance = 1e-3;
        CHECK_THROWS_AS(parareal_solve(s.fine, s.coarse, s.decomp, u0, 2, std::nullopt, opts), ConfigError);
    }
    SUBCASE("coarse step failure carries its location") {
        const SliceDecomposition d{15.0, 15, 2, 5};
        const Setup bad = dahlquist_setup({2.0, 0.0}, d);  // 1 - 0.5 * 2 = 0
        try {
            parareal_solve(bad.fine, bad.coarse, d, u0, 3);
            FAIL("expected failure");
        } catch (const PropagationError& e) {
            CHECK(e.iteration() == 0);
            CHECK(e.slice() == 0);
        }
    }
    SUBCASE("fine step failure carries its location") {
        PropagatorSpec fine = s.fine;
        fine.rhs.explicit_part = [](const StateVector& y, double t) {
            if (t > 7.0) throw StepFailure("synthetic", 1.0);
            return StateVector(y.size(), 0.0);
        };
        try {
            parareal_solve(fine, s.coarse, s.decomp, u0, 3);
            FAIL("expected failure");
        } catch (const PropagationError& e) {
            CHECK(e.iteration() == 1);
            CHECK(e.slice() >= 7);
        }
    }
    SUBCASE("NaN in an iterate is a divergence error") {
        PropagatorSpec fine = s.fine;
        fine.rhs.explicit_part = [](const StateVector& y, double t) {
            return t >= 4.0 ? StateVector(y.size(), std::numeric_limits<double>::quiet_NaN()) : StateVector(y.size());
        };
        CHECK_THROWS_AS(parareal_solve(fine, s.coarse, s.decomp, u0, 2), DivergenceError);
    }
}

TEST_CASE("relative_error") {
    const std::vector<StateVector> ref{{1.0}, {1.0}, {2.0}};
    CHECK(relative_error(ref, ref) == 0.0);
    CHECK(relative_error({{1.0}, {1.1}}, {{1.0}, {1.0}}) == doctest::Approx(0.1));
    CHECK(relative_error({{1.0}, {1.02}, {2.1}}, ref) == doctest::Approx(0.05));
    // The initial value never enters.
    CHECK(relative_error({{5.0}, {1.0}, {2.0}}, ref) == 0.0);

    SUBCASE("selected dofs") {
        const std::vector<StateVector> a{{0, 0, 0}, {1.0, 1.0, 100.0}}, b{{0, 0, 0}, {1.0, 2.0, 0.0}};
        CHECK(relative_error(a, b, {0, 2}) == doctest::Approx(0.5));
        CHECK_THROWS_AS(relative_error(a, b, {2, 5}), ConfigError);
    }
    SUBCASE("zero reference norm") {
        CHECK_THROWS_AS(relative_error({{1.0}, {1.0}}, {{1.0}, {0.0}}), MetricError);
    }
    SUBCASE("length mismatch") { CHECK_THROWS_AS(relative_error({{1.0}}, ref), ConfigError); }
}

TEST_CASE("speedup_bound") {
    CHECK(speedup_bound(15, 3, 10.0, 1.0) == 5.0);
    CHECK(speedup_bound(15, 15, 100.0, 1.0) == 1.0);
    CHECK(speedup_bound(15, 1, 2.0, 1.0) == 2.0);
    CHECK_THROWS_AS(speedup_bound(0, 1, 2.0, 1.0), std::domain_error);
    CHECK_THROWS_AS(speedup_bound(15, 0, 2.0, 1.0), std::domain_error);
    CHECK_THROWS_AS(speedup_bound(15, 1, -2.0, 1.0), std::domain_error);
    CHECK_THROWS_AS(speedup_bound(15, 1, 2.0, 0.0), std::domain_error);
}
