#pragma once

#include <vector>

#include "floqlab/floquet.hpp"

namespace floqlab {

/// Harmonic-resolved matrix elements of the probe between Floquet modes:
///
///   V^(n)_{mu nu} = (1/T) int_0^T dt <u_mu(t)| V |u_nu(t)> e^{-i n W t},
///
/// evaluated as a discrete Fourier transform over the solution's time grid.
struct DipoleSet {
    int harmonics = 0;              // cutoff M; n ranges over [-M, M]
    double omega = 0.0;
    std::vector<CMatrix> elements;  // index n + harmonics -> V^(n)

    // metadata filled by dipole_elements
    double max_element = 0.0;       // max |V^(n)_{mu nu}| over everything
    double cutoff_ratio = 0.0;      // edge-harmonic max |V| relative to max |V^(0)|
    bool cutoff_adequate = true;    // cutoff_ratio < 1e-6

    int dim() const {
        return elements.empty() ? 0 : static_cast<int>(elements[0].rows());
    }

    /// V^(n); throws ConfigError when |n| exceeds the cutoff.
    const CMatrix& at(int n) const;

    Complex value(int n, int mu, int nu) const;

    /// max |V^(n)_{mu nu} - conj(V^(-n)_{nu mu})| over all stored n; a
    /// structural identity of the definition, zero up to arithmetic noise.
    double conjugation_residual() const;
};

/// Compute all harmonics n in [-m_max, m_max]. Requires a Hermitian probe,
/// matching dimensions and m_max < time_samples / 2 (Nyquist). An inadequate
/// cutoff (edge harmonics not yet negligible) is flagged in the result, not
/// raised as an error.
DipoleSet dipole_elements(const FloquetSolution& sol, const ProbeOperator& probe,
                          int m_max = 20);

/// Parseval mismatch between the stored harmonics and the time-domain matrix
/// elements: max over (mu, nu) of
/// | sum_n |V^(n)_{mu nu}|^2 - mean_j |<u_mu|V|u_nu>(t_j)|^2 |.
/// Small only when m_max captures the full harmonic content.
double parseval_residual(const DipoleSet& ds, const FloquetSolution& sol,
                         const ProbeOperator& probe);

} // namespace floqlab
