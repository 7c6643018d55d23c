#pragma once

#include <vector>

#include "floqlab/hamiltonian.hpp"

namespace floqlab {

/// Discretization parameters shared by both quasienergy solvers.
struct SolverConfig {
    int time_steps = 4096;       // propagation steps per period (even)
    int time_samples = 512;      // stored mode snapshots per period; divides time_steps
    int harmonic_cutoff = 30;    // extended-space truncation |k| <= cutoff
    double unitarity_tol = 1e-10;

    void validate() const;       // throws ConfigError on inconsistent values

    friend bool operator==(const SolverConfig&, const SolverConfig&) = default;
};

/// Map a quasienergy to the first Brillouin zone [-omega/2, omega/2); the
/// upper boundary +omega/2 folds to -omega/2.
double fold(double e, double omega);

/// One period of Floquet data: quasienergies, periodic modes on a uniform
/// time grid, and the one-period propagator.
///
/// Conventions fixed here and relied on elsewhere:
///  - quasienergies sorted ascending within the first Brillouin zone; ties
///    closer than 1e-9 * omega are ordered by descending magnitude of the
///    first significant component of u(0)
///  - each u_mu(0) is phase-fixed so its largest-magnitude component is real
///    and positive
///  - modes[j] holds u_mu(t_j) in column mu, t_j = j * period / time_samples
struct FloquetSolution {
    double omega = 0.0;
    RVector quasienergies;
    std::vector<CMatrix> modes;
    CMatrix monodromy;

    // diagnostics filled by the solvers
    double unitarity_residual = 0.0;       // |U U† - 1| of the one-period propagator
    double orthonormality_residual = 0.0;  // worst |M†M - 1| over the time grid
    double periodicity_residual = 0.0;     // worst |e^{i eps T} U u(0) - u(0)|
    double accuracy_estimate = 0.0;        // step-halving comparison (monodromy route)
                                           // or worst edge-block population (extended route)

    int dim() const { return static_cast<int>(quasienergies.size()); }
    int samples() const { return static_cast<int>(modes.size()); }
    double period() const;
    double time_at(int j) const;

    /// Modes at an arbitrary time by trigonometric interpolation of the
    /// stored grid (exact on grid points).
    CMatrix modes_at(double t) const;

    /// Discrete Fourier components of the modes: element k + kmax of the
    /// result holds u^{(k)}_mu in column mu, for k in [-kmax, kmax].
    std::vector<CMatrix> mode_harmonics(int kmax) const;
};

/// One-period propagator U(T, 0) by stepwise integration with a fourth-order
/// commutator-free exponential scheme; every step factor is the exponential
/// of a Hermitian combination evaluated by eigendecomposition, so the result
/// is unitary to solver precision at any step size. Throws SolverError when
/// the unitarity tolerance is exceeded or when the step-halving comparison
/// indicates a propagation error above 1e-6 (increase time_steps).
CMatrix monodromy(const PeriodicHamiltonian& h, const SolverConfig& cfg);

/// Full Floquet solution via the monodromy route: diagonalize U(T, 0) with a
/// Schur decomposition (orthonormal eigenbasis even under degeneracy), fold
/// eigenphases to the first Brillouin zone, and reconstruct modes as
/// u_mu(t) = e^{i eps_mu t} U(t, 0) u_mu(0).
FloquetSolution floquet_solve(const PeriodicHamiltonian& h, const SolverConfig& cfg);

/// Independent route: diagonalize the harmonic-block operator with blocks
/// H_{k-k'} + k omega delta_{kk'} truncated at |k| <= harmonic_cutoff, keep
/// the dim eigenvectors in the first Brillouin zone, and synthesize modes
/// from their harmonic components. Throws SolverError when the truncation is
/// too tight (fewer than dim in-zone states, or edge-block population of a
/// selected state above 1e-8).
FloquetSolution extended_space_solve(const PeriodicHamiltonian& h,
                                     const SolverConfig& cfg);

/// Continuation of branch labels between two solutions at neighbouring sweep
/// points, by greedy assignment on the t = 0 mode overlaps.
struct BranchMatch {
    std::vector<int> assignment;   // assignment[nu] = branch index in prev
    double min_overlap = 1.0;
    bool discontinuity = false;    // some overlap fell below 0.5
};

BranchMatch match_branches(const FloquetSolution& prev, const FloquetSolution& next);

} // namespace floqlab
