#pragma once

#include <vector>

#include "floqlab/dipole.hpp"

namespace floqlab {

/// Stationary-state weights of the Floquet modes (the density matrix is
/// assumed diagonal in the Floquet basis; off-diagonal coherences are out of
/// scope).
struct Populations {
    RVector values;

    /// Throws ConfigError unless all weights are non-negative and they sum
    /// to one within 1e-12.
    void validate() const;
};

/// Boltzmann-like weights over the folded quasienergies,
/// p_mu = exp(-beta eps_mu) / Z. beta = 0 gives the uniform distribution;
/// large beta concentrates on the smallest folded quasienergy.
Populations floquet_gibbs(const FloquetSolution& sol, double beta);

/// Parameters of the susceptibility sum.
struct ResponseConfig {
    double gamma = 0.0;    // uniform linewidth, same units as the quasienergies
    double lambda = 1.0;   // probe coupling; chi scales as lambda^2
    int m_cutoff = 10;     // drive-harmonic summation range |m| <= m_cutoff

    /// Throws ConfigError unless gamma > 0, m_cutoff >= 0 and
    /// |band| + m_cutoff fits inside the dipole cutoff.
    void validate(int dipole_harmonics, int band) const;
};

/// chi_n(omega_p) on a probe-frequency grid for one band n.
struct ResponseSpectrum {
    int band = 0;
    std::vector<double> omega_p_grid;
    std::vector<Complex> chi;
    ResponseConfig config;
};

/// Band-resolved linear response
///
///   chi_n(w_p) = i lambda^2 sum_{nu,mu} sum_{|m| <= m_cutoff}
///                V^(-n-m)_{nu mu} V^(m)_{mu nu} (p_nu - p_mu)
///                / (eps_mu - eps_nu + m W - w_p - i gamma).
///
/// The pair sum runs over all ordered (nu, mu) including nu = mu; the
/// diagonal terms carry a vanishing population factor and contribute zero.
ResponseSpectrum susceptibility(const DipoleSet& ds, const FloquetSolution& sol,
                                const Populations& pops, const ResponseConfig& cfg,
                                int band, const std::vector<double>& omega_p_grid);

/// Heterodyne intensity change for one (band, omega_p) point:
/// -i chi coherence + c.c. = 2 Im(chi * coherence). The probe-signal
/// coherence is experiment-specific and enters as a free complex input.
double intensity_change(Complex chi_value, Complex coherence);

} // namespace floqlab
