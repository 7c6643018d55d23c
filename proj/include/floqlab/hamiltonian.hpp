#pragma once

#include <map>

#include "floqlab/linalg.hpp"

namespace floqlab {

/// Time-periodic Hamiltonian stored by Fourier components:
///
///   H(t) = sum_k H_k exp(i k W t),   W = 2 pi / period.
///
/// Hermiticity of H(t) at every t is equivalent to H_{-k} = H_k† for every
/// stored harmonic; validate() enforces that pairing entrywise to 1e-12.
struct PeriodicHamiltonian {
    int dim = 0;
    double omega = 0.0;                       // drive angular frequency W > 0
    std::map<int, CMatrix> fourier;           // k -> H_k

    double period() const;                    // 2 pi / omega

    /// H(t) by direct Fourier synthesis.
    CMatrix evaluate(double t) const;

    /// Stored component H_k, or a zero matrix when k is absent.
    CMatrix component(int k) const;

    /// Largest |k| with a stored component (0 for a static Hamiltonian).
    int max_harmonic() const;

    /// max over stored k of max |H_{-k} - H_k†|.
    double hermiticity_pairing_residual() const;

    /// Throws ConfigError unless dimensions are consistent, omega > 0 and
    /// the Hermiticity pairing holds.
    void validate() const;
};

/// Probe operator V with its dimensionless coupling strength.
struct ProbeOperator {
    CMatrix matrix;
    double coupling = 1.0;   // lambda; susceptibility scales as lambda^2
};

} // namespace floqlab
