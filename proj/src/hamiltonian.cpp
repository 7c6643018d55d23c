#include "floqlab/hamiltonian.hpp"

#include <cmath>
#include <numbers>

#include "floqlab/errors.hpp"

namespace floqlab {

double PeriodicHamiltonian::period() const {
    return 2.0 * std::numbers::pi / omega;
}

CMatrix PeriodicHamiltonian::evaluate(double t) const {
    CMatrix h = CMatrix::Zero(dim, dim);
    for (const auto& [k, hk] : fourier)
        h += hk * std::exp(Complex(0.0, k * omega * t));
    return h;
}

CMatrix PeriodicHamiltonian::component(int k) const {
    auto it = fourier.find(k);
    if (it == fourier.end())
        return CMatrix::Zero(dim, dim);
    return it->second;
}

int PeriodicHamiltonian::max_harmonic() const {
    int kmax = 0;
    for (const auto& [k, hk] : fourier)
        kmax = std::max(kmax, std::abs(k));
    return kmax;
}

double PeriodicHamiltonian::hermiticity_pairing_residual() const {
    double r = 0.0;
    for (const auto& [k, hk] : fourier)
        r = std::max(r, max_abs_diff(component(-k), hk.adjoint()));
    return r;
}

void PeriodicHamiltonian::validate() const {
    if (dim <= 0)
        throw ConfigError("hamiltonian: dim must be positive");
    if (!(omega > 0.0))
        throw ConfigError("hamiltonian: omega must be positive");
    if (fourier.empty())
        throw ConfigError("hamiltonian: at least one Fourier component required");
    for (const auto& [k, hk] : fourier)
        if (hk.rows() != dim || hk.cols() != dim)
            throw ConfigError("hamiltonian: component k=" + std::to_string(k) +
                              " is not dim x dim");
    if (hermiticity_pairing_residual() > 1e-12)
        throw ConfigError("hamiltonian: components violate H_{-k} = H_k^dagger");
}

} // namespace floqlab
