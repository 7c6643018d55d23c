#include "floqlab/response.hpp"

#include <cmath>

#include "floqlab/errors.hpp"

namespace floqlab {

void Populations::validate() const {
    if (values.size() == 0)
        throw ConfigError("populations: empty weight vector");
    for (Eigen::Index i = 0; i < values.size(); ++i)
        if (!(values(i) >= 0.0))
            throw ConfigError("populations: weight " + std::to_string(i) +
                              " is negative or not a number");
    if (std::abs(values.sum() - 1.0) > 1e-12)
        throw ConfigError("populations: weights must sum to 1");
}

Populations floquet_gibbs(const FloquetSolution& sol, double beta) {
    if (!(beta >= 0.0))
        throw ConfigError("floquet_gibbs: beta must be non-negative");
    const RVector& eps = sol.quasienergies;
    // shift by the smallest quasienergy so every exponent is <= 0; large
    // beta then underflows to the zero-temperature indicator instead of
    // overflowing
    const double ref = eps.minCoeff();
    RVector w = (-beta * (eps.array() - ref)).exp();
    Populations p;
    p.values = w / w.sum();
    return p;
}

void ResponseConfig::validate(int dipole_harmonics, int band) const {
    if (!(gamma > 0.0))
        throw ConfigError("response: gamma must be positive");
    if (m_cutoff < 0)
        throw ConfigError("response: m_cutoff must be non-negative");
    if (std::abs(band) + m_cutoff > dipole_harmonics)
        throw ConfigError("response: |band| + m_cutoff = " +
                          std::to_string(std::abs(band) + m_cutoff) +
                          " exceeds the dipole harmonic cutoff " +
                          std::to_string(dipole_harmonics));
}

ResponseSpectrum susceptibility(const DipoleSet& ds, const FloquetSolution& sol,
                                const Populations& pops, const ResponseConfig& cfg,
                                int band, const std::vector<double>& omega_p_grid) {
    cfg.validate(ds.harmonics, band);
    pops.validate();
    const int dim = sol.dim();
    if (ds.dim() != dim)
        throw ConfigError("susceptibility: dipole set does not match the solution");
    if (static_cast<int>(pops.values.size()) != dim)
        throw ConfigError("susceptibility: populations do not match the solution");

    const RVector& eps = sol.quasienergies;
    const double scale = cfg.lambda * cfg.lambda;

    ResponseSpectrum out;
    out.band = band;
    out.omega_p_grid = omega_p_grid;
    out.config = cfg;
    out.chi.resize(omega_p_grid.size());
    for (size_t g = 0; g < omega_p_grid.size(); ++g) {
        const double wp = omega_p_grid[g];
        Complex sum = 0.0;
        for (int nu = 0; nu < dim; ++nu) {
            for (int mu = 0; mu < dim; ++mu) {
                const double dp = pops.values(nu) - pops.values(mu);
                for (int m = -cfg.m_cutoff; m <= cfg.m_cutoff; ++m) {
                    const Complex num =
                        ds.value(-band - m, nu, mu) * ds.value(m, mu, nu) * dp;
                    const Complex den(eps(mu) - eps(nu) + m * sol.omega - wp,
                                      -cfg.gamma);
                    sum += num / den;
                }
            }
        }
        out.chi[g] = Complex(0.0, 1.0) * scale * sum;
    }
    return out;
}

double intensity_change(Complex chi_value, Complex coherence) {
    return 2.0 * std::imag(chi_value * coherence);
}

} // namespace floqlab
