#pragma once

#include <set>
#include <string>
#include <utility>
#include <vector>

#include "floqlab/dipole.hpp"
#include "floqlab/symmetry_spec.hpp"

namespace floqlab {

/// Outcome of sampling a symmetry's defining relation over one period.
struct VerifyResult {
    bool verified = false;
    double max_residual = 0.0;
};

/// Check the time-domain relation of spec s on `samples` uniformly spaced
/// times: for a unitary kind S H(t_S + beta t) S† = alpha H(t), for an
/// antiunitary kind S conj(H(t_S + beta t)) S† = alpha H(t). The derivative
/// term of the quasienergy operator transforms identically for all four
/// (alpha, beta) classes, so sampling H alone decides the symmetry.
/// Throws ConfigError on dimension mismatch, a non-unitary operator, or an
/// RS spec whose time shift is not period / n_fold.
VerifyResult verify_symmetry(const PeriodicHamiltonian& h, const SymmetrySpec& s,
                             int samples = 64, double tol = 1e-10);

/// Rotation labels m_mu in {0, .., n_fold - 1}: the time-averaged overlap
/// matrix W = mean_t <u_mu(t)| R |u_nu(t + t_R)> is diagonal on nondegenerate
/// states with entries on the unit circle; within quasienergy-degenerate
/// clusters the block of W is diagonalized first, so the returned labels
/// describe the symmetry-adapted basis of each cluster. Every eigenvalue is
/// snapped to the nearest n_fold-th root of unity e^{i 2 pi m / n_fold};
/// snap distance above 1e-6 raises SymmetryError.
std::vector<int> rotation_eigenvalues(const FloquetSolution& sol,
                                      const SymmetrySpec& s);

/// One matrix element predicted (or observed) to vanish: row mu, column nu,
/// harmonic n of V^(n)_{mu nu}.
struct DarkPrediction {
    int mu = 0;
    int nu = 0;
    int n = 0;

    friend bool operator==(const DarkPrediction&, const DarkPrediction&) = default;
    friend auto operator<=>(const DarkPrediction&, const DarkPrediction&) = default;
};

/// Elements forced to zero by an n_fold rotation: (mu, nu, n) with
/// |n| <= n_range is dark unless e^{i 2 pi (m_mu - m_nu + n) / N} alpha_v = 1.
std::vector<DarkPrediction> predict_rs_dark_states(const std::vector<int>& labels,
                                                   const SymmetrySpec& s,
                                                   int n_range);

/// Bands n with |n| <= band_range whose susceptibility vanishes identically
/// under the rotation (any diagonal stationary state): all n with
/// n mod n_fold != 0.
std::set<int> fbsr_vanishing_bands(const SymmetrySpec& s, int band_range);

/// Pair each Floquet state with its particle-hole partner: the state
/// maximizing |<u_mu'(0)| P conj(u_mu(t_P))>| among those with
/// |fold(eps_mu' + eps_mu)| < tol. Self-pairing is allowed at eps = 0.
/// tol <= 0 selects the default 1e-8 * omega. Throws SymmetryError when some
/// state has no admissible partner. Pairs are returned as (mu, mu') with
/// mu <= mu', sorted.
std::vector<std::pair<int, int>> phs_partner_pairing(const FloquetSolution& sol,
                                                     const SymmetrySpec& s,
                                                     double tol = 0.0);

/// Elements between particle-hole partners forced to zero: (mu, mu', n) is
/// dark when alpha_v e^{-i n W t_P} = -1. Applies only when t_P is 0 or half
/// a period and P conj(P) = 1; otherwise throws InapplicabilityError listing
/// the failed preconditions (the symmetry may hold yet imply no dark rule).
std::vector<DarkPrediction> predict_phs_dark_states(
    const std::vector<std::pair<int, int>>& pairs, const SymmetrySpec& s,
    double omega, int n_range);

/// Symmetry-induced transparency analysis for two commuting particle-hole
/// symmetries sharing a zero-quasienergy doublet.
struct SitBandPhase {
    int band = 0;      // response band n
    int m = 0;         // resonance omega_p = m W
    bool cancels = false;
};

struct SitReport {
    std::pair<int, int> doublet{-1, -1};    // solver columns of the zero pair
    /// Relative residual of the partner identity
    ///   V^(n)_{ba} = V^(n)_{ab} alpha_v1 alpha_v2 e^{-i n W (t_P1 - t_P2)}
    /// evaluated in the symmetry-adapted basis of the doublet.
    double pair_identity_residual = 0.0;
    std::vector<SitBandPhase> phases;       // per (band, m) cancellation flags
};

/// Preconditions (throws InapplicabilityError listing all failures): both
/// specs are verified particle-hole symmetries, the operators differ (not
/// equal up to sign), commute, square to the identity, and the spectrum has
/// a zero-quasienergy doublet within zero_tol (<= 0 selects 1e-6 * omega).
/// On success the doublet's symmetry-adapted basis is constructed internally
/// and the partner identity is evaluated there, together with the predicted
/// cancellation phase e^{i m W (t_P1 - t_P2)} per (band, m).
SitReport sit_check(const PeriodicHamiltonian& h, const SymmetrySpec& s1,
                    const SymmetrySpec& s2, const FloquetSolution& sol,
                    const DipoleSet& ds, int band_range, double zero_tol = 0.0);

/// A chiral and a time-reversal symmetry compose to the particle-hole
/// operation P = C T with t_P = (t_T - t_C) mod period and multiplied probe
/// signs. The dark-state rule additionally needs t_P in {0, T/2},
/// conj(C) C = 1, conj(T) T = 1 and [C, T] = 0; failures are flagged, not
/// raised.
struct ComposedPhs {
    SymmetrySpec spec;
    bool dark_rule_applicable = false;
    std::vector<std::string> failed_conditions;
};

ComposedPhs compose_cs_trs(const SymmetrySpec& cs, const SymmetrySpec& trs,
                           double omega);

/// Numeric census of small dipole elements: every (mu, nu, n) with
/// |V^(n)_{mu nu}| < threshold_ratio * max |V|. Differencing this list
/// against symmetry predictions exposes accidental dark states.
std::vector<DarkPrediction> scan_dark_states(const DipoleSet& ds,
                                             double threshold_ratio);

/// What a lone chiral or time-reversal symmetry implies instead of a dark
/// state: a reality constraint on the dipole elements. The TRS form holds in
/// the solver's fixed mode gauge and is testable; the CS form picks up
/// mode-gauge phases and is reported but not asserted.
struct NoDarkStatement {
    SymmetryKind kind = SymmetryKind::CS;
    std::string identity;
    bool testable = false;
};

NoDarkStatement no_dark_rule(SymmetryKind kind);

/// max |V^(n) - e^{-i n W t_T} alpha_v conj(V^(n))| over all stored
/// harmonics; the testable TRS identity from no_dark_rule.
double trs_reality_residual(const DipoleSet& ds, const SymmetrySpec& trs);

/// Everything the report command serializes for one declared symmetry.
struct SymmetryReport {
    SymmetrySpec spec;
    bool verified = false;
    double max_residual = 0.0;
    std::vector<int> rotation_labels;              // RS
    std::vector<std::pair<int, int>> pairs;        // PHS
    std::vector<DarkPrediction> predicted_dark;    // RS / applicable PHS
    std::set<int> vanishing_bands;                 // RS
    std::vector<double> dark_ratios;               // measured |V| / max |V| per prediction
    bool dark_rule_applicable = true;
    double reality_residual = -1.0;                // TRS only; -1 = not applicable
    std::string note;
};

/// Run the full analysis pipeline for one spec against a solved model:
/// verification, state classification, dark-state predictions and their
/// measured ratios. Classification failures and inapplicable dark rules are
/// recorded in the report rather than thrown.
SymmetryReport analyze_symmetry(const PeriodicHamiltonian& h, const SymmetrySpec& s,
                                const FloquetSolution& sol, const DipoleSet& ds,
                                int n_range);

} // namespace floqlab
