#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include <Eigen/Dense>

#include "floqlab/dipole.hpp"
#include "floqlab/errors.hpp"
#include "floqlab/model.hpp"

using namespace floqlab;

namespace {

CMatrix random_hermitian(int dim, std::mt19937& rng) {
    std::normal_distribution<double> dist(0.0, 1.0);
    CMatrix a(dim, dim);
    for (int i = 0; i < dim; ++i)
        for (int j = 0; j < dim; ++j)
            a(i, j) = Complex{dist(rng), dist(rng)};
    return 0.5 * (a + a.adjoint());
}

} // namespace

TEST_CASE("static model: only the zeroth harmonic survives and matches the eigenbasis") {
    std::mt19937 rng(31);
    const int dim = 4;
    PeriodicHamiltonian h;
    h.dim = dim;
    h.omega = 1.0;
    h.fourier[0] = random_hermitian(dim, rng);
    // Keep the spectrum well inside the first zone so folding preserves the
    // eigenvalue order.
    h.fourier[0] *= 0.3 / h.fourier[0].norm();
    h.validate();

    ProbeOperator probe{random_hermitian(dim, rng), 1.0};

    SolverConfig cfg;
    FloquetSolution sol = floquet_solve(h, cfg);
    DipoleSet ds = dipole_elements(sol, probe, 8);

    // Modes of a static Hamiltonian are its eigenvectors, time independent,
    // so every n != 0 harmonic vanishes.
    for (int n = -8; n <= 8; ++n) {
        if (n == 0)
            continue;
        CHECK(max_abs(ds.at(n)) < 1e-11);
    }
    CHECK(ds.cutoff_adequate);

    // |V^(0)| must match the probe in the eigenbasis of an independent
    // diagonalization, element by element (moduli are gauge-free).
    Eigen::SelfAdjointEigenSolver<CMatrix> es(h.fourier[0]);
    const CMatrix w = es.eigenvectors().adjoint() * probe.matrix * es.eigenvectors();
    // Both bases are sorted by energy: the folded quasienergies keep the
    // eigenvalue order because the norm is well under omega/2.
    for (int i = 0; i < dim; ++i)
        for (int j = 0; j < dim; ++j)
            CHECK(std::abs(ds.value(0, i, j)) ==
                  doctest::Approx(std::abs(w(i, j))).epsilon(1e-9));
}

TEST_CASE("driven tls at zero splitting reproduces the bessel ladder") {
    // With h_x = 0 the modes are the bare spin states dressed by the drive
    // phase, and the sideband elements of sigma_x are Bessel functions of
    // the drive amplitude over the frequency.
    const double f = 1.3, omega = 1.0;
    ModelBundle m = build_tls(0.0, f, omega);
    SolverConfig cfg;
    FloquetSolution sol = floquet_solve(m.hamiltonian, cfg);
    DipoleSet ds = dipole_elements(sol, m.probe, 12);

    for (int n = -10; n <= 10; ++n) {
        const double jn = std::cyl_bessel_j(std::abs(n), f / omega) *
                          ((n < 0 && (n % 2) != 0) ? -1.0 : 1.0);
        const Complex up_down = ds.value(n, 0, 1);
        const Complex down_up = ds.value(n, 1, 0);
        CAPTURE(n);
        CHECK(std::abs(up_down.real() - jn) < 1e-10);
        CHECK(std::abs(up_down.imag()) < 1e-10);
        const double sign = (n % 2 == 0) ? 1.0 : -1.0;
        CHECK(std::abs(down_up.real() - sign * jn) < 1e-10);
        CHECK(std::abs(down_up.imag()) < 1e-10);
        // sigma_x has no diagonal part in the spin basis at any harmonic.
        CHECK(std::abs(ds.value(n, 0, 0)) < 1e-12);
        CHECK(std::abs(ds.value(n, 1, 1)) < 1e-12);
    }
}

TEST_CASE("conjugation identity and hermitian zeroth harmonic") {
    ModelBundle m = build_benzene(0.45, 0.05, 1.0, 1.0);
    SolverConfig cfg;
    FloquetSolution sol = floquet_solve(m.hamiltonian, cfg);
    DipoleSet ds = dipole_elements(sol, m.probe);

    CHECK(ds.conjugation_residual() < 1e-10);
    CHECK(hermiticity_residual(ds.at(0)) < 1e-10);
    CHECK(ds.max_element > 0.0);
}

TEST_CASE("parseval balance holds for all three models") {
    SolverConfig cfg;
    std::vector<ModelBundle> models;
    models.push_back(build_benzene(0.45, 0.05, 1.0, 1.0));
    models.push_back(build_dimer(0.2, 0.05, 2.0, 1.0, 1.0));
    models.push_back(build_tls(0.05, 1.3, 1.0));

    for (const ModelBundle& m : models) {
        FloquetSolution sol = floquet_solve(m.hamiltonian, cfg);
        DipoleSet ds = dipole_elements(sol, m.probe);
        CHECK(parseval_residual(ds, sol, m.probe) < 1e-8);
        CHECK(ds.cutoff_adequate);
    }
}

TEST_CASE("doubling the time grid leaves the elements unchanged") {
    ModelBundle m = build_tls(0.05, 2.0, 1.0);
    SolverConfig coarse;
    coarse.time_samples = 256;
    SolverConfig fine;
    fine.time_samples = 512;

    DipoleSet a = dipole_elements(floquet_solve(m.hamiltonian, coarse), m.probe);
    DipoleSet b = dipole_elements(floquet_solve(m.hamiltonian, fine), m.probe);
    REQUIRE(a.harmonics == b.harmonics);
    double worst = 0.0;
    for (int n = -a.harmonics; n <= a.harmonics; ++n)
        worst = std::max(worst, max_abs_diff(a.at(n), b.at(n)));
    CHECK(worst < 1e-9);
}

TEST_CASE("nyquist guard and cutoff bookkeeping") {
    ModelBundle m = build_tls(0.05, 1.0, 1.0);
    SolverConfig cfg;
    cfg.time_samples = 64;
    cfg.time_steps = 4096;
    FloquetSolution sol = floquet_solve(m.hamiltonian, cfg);

    CHECK_THROWS_AS(dipole_elements(sol, m.probe, 32), ConfigError);
    CHECK_NOTHROW(dipole_elements(sol, m.probe, 31));

    DipoleSet ds = dipole_elements(sol, m.probe, 6);
    CHECK_THROWS_AS(ds.at(7), ConfigError);
    CHECK_THROWS_AS(ds.at(-7), ConfigError);
    CHECK_NOTHROW(ds.at(-6));
}

TEST_CASE("a harsh drive with a tiny cutoff is flagged as inadequate") {
    ModelBundle m = build_tls(0.05, 3.0, 1.0);
    SolverConfig cfg;
    FloquetSolution sol = floquet_solve(m.hamiltonian, cfg);
    DipoleSet tight = dipole_elements(sol, m.probe, 2);
    CHECK(!tight.cutoff_adequate);
    CHECK(tight.cutoff_ratio > 1e-6);

    DipoleSet wide = dipole_elements(sol, m.probe, 20);
    CHECK(wide.cutoff_adequate);
}

TEST_CASE("non-hermitian probes are rejected") {
    ModelBundle m = build_tls(0.05, 1.0, 1.0);
    SolverConfig cfg;
    FloquetSolution sol = floquet_solve(m.hamiltonian, cfg);
    CMatrix bad(2, 2);
    bad << 0.0, 1.0, 0.0, 0.0;
    CHECK_THROWS_AS(dipole_elements(sol, ProbeOperator{bad, 1.0}, 4), ConfigError);
}
