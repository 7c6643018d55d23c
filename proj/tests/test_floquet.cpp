#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include <Eigen/Dense>
#include <unsupported/Eigen/MatrixFunctions>

#include "floqlab/errors.hpp"
#include "floqlab/floquet.hpp"
#include "floqlab/model.hpp"

using namespace floqlab;

namespace {

constexpr Complex I{0.0, 1.0};
constexpr double pi = std::numbers::pi;

CMatrix random_hermitian(int dim, std::mt19937& rng) {
    std::normal_distribution<double> dist(0.0, 1.0);
    CMatrix a(dim, dim);
    for (int i = 0; i < dim; ++i)
        for (int j = 0; j < dim; ++j)
            a(i, j) = Complex{dist(rng), dist(rng)};
    CMatrix h = 0.5 * (a + a.adjoint());
    h /= h.norm();   // Frobenius norm 1 bounds the spectral norm by 1
    return h;
}

PeriodicHamiltonian random_driven(int dim, std::mt19937& rng, double omega = 1.0) {
    PeriodicHamiltonian h;
    h.dim = dim;
    h.omega = omega;
    h.fourier[0] = random_hermitian(dim, rng);
    std::normal_distribution<double> dist(0.0, 1.0);
    CMatrix c(dim, dim);
    for (int i = 0; i < dim; ++i)
        for (int j = 0; j < dim; ++j)
            c(i, j) = Complex{dist(rng), dist(rng)};
    c /= c.norm();
    h.fourier[1] = c;
    h.fourier[-1] = c.adjoint();
    h.validate();
    return h;
}

void check_invariants(const FloquetSolution& sol) {
    CHECK(sol.unitarity_residual < 1e-10);
    CHECK(sol.orthonormality_residual < 1e-8);
    CHECK(sol.periodicity_residual < 1e-8);
}

} // namespace

TEST_CASE("fold maps onto the half-open first zone") {
    CHECK(fold(0.0, 1.0) == 0.0);
    CHECK(fold(0.49, 1.0) == doctest::Approx(0.49).epsilon(1e-15));
    CHECK(fold(0.6, 1.0) == doctest::Approx(-0.4).epsilon(1e-12));
    CHECK(fold(1.0, 1.0) == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(fold(-1.7, 2.0) == doctest::Approx(0.3).epsilon(1e-12));
    // Both edges land on the lower one.
    CHECK(fold(0.5, 1.0) == doctest::Approx(-0.5).epsilon(1e-12));
    CHECK(fold(-0.5, 1.0) == doctest::Approx(-0.5).epsilon(1e-12));
}

TEST_CASE("solver config rejects inconsistent discretizations") {
    SolverConfig cfg;
    CHECK_NOTHROW(cfg.validate());

    cfg.time_steps = 4095;   // odd; step halving needs an even count
    CHECK_THROWS_AS(cfg.validate(), ConfigError);

    cfg = SolverConfig{};
    cfg.time_samples = 500;   // does not divide 4096
    CHECK_THROWS_AS(cfg.validate(), ConfigError);

    cfg = SolverConfig{};
    cfg.harmonic_cutoff = 0;
    CHECK_THROWS_AS(cfg.validate(), ConfigError);

    cfg = SolverConfig{};
    cfg.unitarity_tol = 0.0;
    CHECK_THROWS_AS(cfg.validate(), ConfigError);
}

TEST_CASE("static monodromy equals the matrix exponential") {
    std::mt19937 rng(2024);
    for (int trial = 0; trial < 5; ++trial) {
        const int dim = 2 + trial;
        PeriodicHamiltonian h;
        h.dim = dim;
        h.omega = 1.0;
        h.fourier[0] = 2.0 * random_hermitian(dim, rng);
        h.validate();

        SolverConfig cfg;
        const CMatrix u = monodromy(h, cfg);
        const CMatrix want = (-I * h.period() * h.fourier[0]).exp();
        CHECK(max_abs_diff(u, want) < 1e-10);
    }
}

TEST_CASE("driven propagation converges at fourth order in the step size") {
    std::mt19937 rng(7);
    PeriodicHamiltonian h = random_driven(3, rng);
    for (auto& [k, m] : h.fourier)
        m *= 2.0;

    SolverConfig ref_cfg;
    ref_cfg.time_steps = 32768;
    ref_cfg.time_samples = 2;
    const CMatrix ref = monodromy(h, ref_cfg);

    auto err_at = [&](int steps) {
        SolverConfig c;
        c.time_steps = steps;
        c.time_samples = 2;
        return max_abs_diff(monodromy(h, c), ref);
    };
    const double e1 = err_at(256);
    const double e2 = err_at(512);
    // A fourth-order scheme gains a factor 16 per halving; allow slack for
    // the reference's own error.
    CHECK(e1 / e2 > 10.0);
    CHECK(e2 < e1);
}

TEST_CASE("monodromy is unitary even at coarse steps") {
    std::mt19937 rng(11);
    PeriodicHamiltonian h = random_driven(4, rng);
    SolverConfig cfg;
    cfg.time_steps = 64;
    cfg.time_samples = 2;
    const CMatrix u = monodromy(h, cfg);
    CHECK(unitarity_residual(u) < 1e-12);
}

TEST_CASE("a hopelessly coarse grid raises a solver error") {
    std::mt19937 rng(13);
    PeriodicHamiltonian h = random_driven(3, rng);
    for (auto& [k, m] : h.fourier)
        m *= 40.0;   // strong drive: two steps per period cannot track it
    SolverConfig cfg;
    cfg.time_steps = 2;
    cfg.time_samples = 2;
    CHECK_THROWS_AS(monodromy(h, cfg), SolverError);
    CHECK_THROWS_WITH_AS(monodromy(h, cfg),
                         doctest::Contains("time_steps"), SolverError);
}

TEST_CASE("quasienergies come out sorted, folded and phase-fixed") {
    std::mt19937 rng(3);
    PeriodicHamiltonian h = random_driven(5, rng);
    SolverConfig cfg;
    FloquetSolution sol = floquet_solve(h, cfg);
    check_invariants(sol);

    REQUIRE(sol.dim() == 5);
    for (int i = 0; i < sol.dim(); ++i) {
        CHECK(sol.quasienergies[i] >= -0.5);
        CHECK(sol.quasienergies[i] < 0.5);
        if (i > 0)
            CHECK(sol.quasienergies[i] >= sol.quasienergies[i - 1]);
        // Gauge: the largest component of u(0) is real positive.
        int arg = 0;
        sol.modes[0].col(i).cwiseAbs().maxCoeff(&arg);
        const Complex top = sol.modes[0](arg, i);
        CHECK(std::abs(top.imag()) < 1e-12);
        CHECK(top.real() > 0.0);
    }
}

TEST_CASE("mode reconstruction reproduces the monodromy") {
    std::mt19937 rng(5);
    PeriodicHamiltonian h = random_driven(3, rng);
    SolverConfig cfg;
    FloquetSolution sol = floquet_solve(h, cfg);

    // U(T) = M(0) diag(e^{-i eps T}) M(0)† by construction of the modes.
    CMatrix d = CMatrix::Zero(3, 3);
    for (int i = 0; i < 3; ++i)
        d(i, i) = std::exp(-I * sol.quasienergies[i] * sol.period());
    const CMatrix rebuilt = sol.modes[0] * d * sol.modes[0].adjoint();
    CHECK(max_abs_diff(rebuilt, sol.monodromy) < 1e-9);
}

TEST_CASE("the two solver routes agree on random driven models") {
    std::mt19937 rng(42);
    for (int trial = 0; trial < 4; ++trial) {
        const int dim = 2 + trial;
        PeriodicHamiltonian h = random_driven(dim, rng);
        SolverConfig cfg;

        FloquetSolution a = floquet_solve(h, cfg);
        FloquetSolution b = extended_space_solve(h, cfg);
        check_invariants(a);
        check_invariants(b);

        for (int i = 0; i < dim; ++i) {
            // Pair states by overlap at t = 0; sorted order can differ only
            // through near-ties, so the match is essentially the identity.
            int best = -1;
            double best_ov = -1.0;
            for (int j = 0; j < dim; ++j) {
                const double ov = std::abs(b.modes[0].col(j).dot(a.modes[0].col(i)));
                if (ov > best_ov) {
                    best_ov = ov;
                    best = j;
                }
            }
            CHECK(best_ov > 1.0 - 1e-6);
            const double de = fold(a.quasienergies[i] - b.quasienergies[best], h.omega);
            CHECK(std::abs(de) < 1e-8);
        }
    }
}

TEST_CASE("extended space route rejects a cutoff below the drive content") {
    ModelBundle m = build_tls(0.05, 1.0, 1.0);
    SolverConfig cfg;
    PeriodicHamiltonian h = m.hamiltonian;
    CMatrix sx(2, 2);
    sx << 0, 1, 1, 0;
    h.fourier[2] = 0.1 * sx;
    h.fourier[-2] = 0.1 * sx;
    cfg.harmonic_cutoff = 1;   // below max_harmonic = 2
    CHECK_THROWS_AS(extended_space_solve(h, cfg), ConfigError);
}

TEST_CASE("undriven tls has the bare quasienergies and a trivial monodromy at zero splitting") {
    SolverConfig cfg;

    ModelBundle split = build_tls(0.05, 0.0, 1.0);
    FloquetSolution sol = floquet_solve(split.hamiltonian, cfg);
    CHECK(sol.quasienergies[0] == doctest::Approx(-0.025).epsilon(1e-10));
    CHECK(sol.quasienergies[1] == doctest::Approx(0.025).epsilon(1e-10));

    ModelBundle flat = build_tls(0.0, 1.7, 1.0);
    FloquetSolution free_sol = floquet_solve(flat.hamiltonian, cfg);
    CHECK(max_abs_diff(free_sol.monodromy, CMatrix::Identity(2, 2)) < 1e-10);
    CHECK(std::abs(free_sol.quasienergies[0]) < 1e-10);
    CHECK(std::abs(free_sol.quasienergies[1]) < 1e-10);
}

TEST_CASE("modes_at interpolates the stored grid exactly and smoothly") {
    std::mt19937 rng(17);
    PeriodicHamiltonian h = random_driven(3, rng);
    SolverConfig cfg;
    cfg.time_samples = 256;
    FloquetSolution sol = floquet_solve(h, cfg);

    // On-grid times return the stored snapshot.
    for (int j : {0, 1, 100, 255})
        CHECK(max_abs_diff(sol.modes_at(sol.time_at(j)), sol.modes[j]) == 0.0);

    // Off-grid times agree with a solve that samples there natively.
    SolverConfig fine = cfg;
    fine.time_samples = 512;
    FloquetSolution ref = floquet_solve(h, fine);
    const double t = ref.time_at(101);   // midpoint of the coarse grid
    CHECK(max_abs_diff(sol.modes_at(t), ref.modes[101]) < 1e-6);

    // Periodicity of the interpolant.
    CHECK(max_abs_diff(sol.modes_at(0.3 + sol.period()), sol.modes_at(0.3)) < 1e-9);
}

TEST_CASE("mode harmonics synthesize back to the time-domain modes") {
    ModelBundle m = build_tls(0.05, 1.3, 1.0);
    SolverConfig cfg;
    FloquetSolution sol = floquet_solve(m.hamiltonian, cfg);

    const int kmax = 40;
    std::vector<CMatrix> uk = sol.mode_harmonics(kmax);
    REQUIRE(static_cast<int>(uk.size()) == 2 * kmax + 1);

    for (int j : {0, 37, 250}) {
        const double t = sol.time_at(j);
        CMatrix rebuilt = CMatrix::Zero(2, 2);
        for (int k = -kmax; k <= kmax; ++k)
            rebuilt += uk[k + kmax] * std::exp(I * (k * m.hamiltonian.omega * t));
        CHECK(max_abs_diff(rebuilt, sol.modes[j]) < 1e-8);
    }
}

TEST_CASE("branch matching recovers a column permutation") {
    std::mt19937 rng(23);
    PeriodicHamiltonian h = random_driven(4, rng);
    SolverConfig cfg;
    FloquetSolution a = floquet_solve(h, cfg);

    FloquetSolution b = a;
    // Swap two columns as if the sort order had flipped between sweep points.
    b.modes[0].col(1).swap(b.modes[0].col(2));
    std::swap(b.quasienergies[1], b.quasienergies[2]);

    BranchMatch match = match_branches(a, b);
    REQUIRE(match.assignment.size() == 4);
    CHECK(match.assignment[0] == 0);
    CHECK(match.assignment[1] == 2);
    CHECK(match.assignment[2] == 1);
    CHECK(match.assignment[3] == 3);
    CHECK(match.min_overlap > 1.0 - 1e-12);
    CHECK(!match.discontinuity);
}

TEST_CASE("branch matching flags a lost branch") {
    ModelBundle m = build_tls(0.05, 0.4, 1.0);
    SolverConfig cfg;
    FloquetSolution a = floquet_solve(m.hamiltonian, cfg);

    // Wipe one column so no candidate overlaps it above the 0.5 threshold;
    // the matcher must fall back and report the discontinuity.
    FloquetSolution c = a;
    c.modes[0].col(0) *= 0.0;
    BranchMatch bad = match_branches(a, c);
    CHECK(bad.discontinuity);
    CHECK(bad.min_overlap < 0.5);
}

TEST_CASE("quasienergy sweep tracks the tls gap through the crossing") {
    // The circular gap |fold(eps1 - eps0)| shrinks toward the first zero of
    // the zeroth Bessel function and reopens beyond it.
    SolverConfig cfg;
    cfg.time_steps = 1024;
    cfg.time_samples = 4;
    auto gap = [&](double f) {
        FloquetSolution s = floquet_solve(build_tls(0.05, f, 1.0).hamiltonian, cfg);
        return std::abs(fold(s.quasienergies[1] - s.quasienergies[0], 1.0));
    };
    const double g0 = gap(0.0);
    const double g1 = gap(1.2);
    const double g2 = gap(2.4);
    const double g3 = gap(3.0);
    CHECK(g0 == doctest::Approx(0.05).epsilon(1e-8));
    CHECK(g1 < g0);
    CHECK(g2 < 1e-3);
    CHECK(g3 > g2);
}
