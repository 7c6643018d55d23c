#include "floqlab/dipole.hpp"

#include <cmath>
#include <limits>
#include <numbers>

#include "floqlab/errors.hpp"

namespace floqlab {

const CMatrix& DipoleSet::at(int n) const {
    if (std::abs(n) > harmonics)
        throw ConfigError("dipole: harmonic " + std::to_string(n) +
                          " outside the stored cutoff " + std::to_string(harmonics));
    return elements[n + harmonics];
}

Complex DipoleSet::value(int n, int mu, int nu) const {
    return at(n)(mu, nu);
}

double DipoleSet::conjugation_residual() const {
    double r = 0.0;
    for (int n = -harmonics; n <= harmonics; ++n)
        r = std::max(r, max_abs_diff(at(n), at(-n).adjoint()));
    return r;
}

DipoleSet dipole_elements(const FloquetSolution& sol, const ProbeOperator& probe,
                          int m_max) {
    const int s = sol.samples();
    const int dim = sol.dim();
    if (m_max < 0)
        throw ConfigError("dipole: harmonic cutoff must be non-negative");
    if (2 * m_max >= s)
        throw ConfigError("dipole: harmonic cutoff " + std::to_string(m_max) +
                          " violates the Nyquist bound time_samples / 2 = " +
                          std::to_string(s / 2));
    if (probe.matrix.rows() != dim || probe.matrix.cols() != dim)
        throw ConfigError("dipole: probe dimension does not match the solution");
    if (hermiticity_residual(probe.matrix) > 1e-12)
        throw ConfigError("dipole: probe operator is not Hermitian");

    // time series A_j = M(t_j)† V M(t_j); entry (mu, nu) is <u_mu|V|u_nu>(t_j)
    std::vector<CMatrix> series(s);
    for (int j = 0; j < s; ++j)
        series[j] = sol.modes[j].adjoint() * probe.matrix * sol.modes[j];

    DipoleSet ds;
    ds.harmonics = m_max;
    ds.omega = sol.omega;
    ds.elements.assign(2 * m_max + 1, CMatrix::Zero(dim, dim));
    for (int n = -m_max; n <= m_max; ++n) {
        CMatrix acc = CMatrix::Zero(dim, dim);
        for (int j = 0; j < s; ++j)
            acc += series[j] *
                   std::exp(Complex(0.0, -2.0 * std::numbers::pi * n * j / s));
        ds.elements[n + m_max] = acc / static_cast<double>(s);
    }

    for (const CMatrix& v : ds.elements)
        ds.max_element = std::max(ds.max_element, max_abs(v));
    const double center = max_abs(ds.at(0));
    const double edge = std::max(max_abs(ds.at(m_max)), max_abs(ds.at(-m_max)));
    if (center > 0.0)
        ds.cutoff_ratio = edge / center;
    else
        ds.cutoff_ratio = edge > 0.0 ? std::numeric_limits<double>::infinity() : 0.0;
    ds.cutoff_adequate = ds.cutoff_ratio < 1e-6;
    return ds;
}

double parseval_residual(const DipoleSet& ds, const FloquetSolution& sol,
                         const ProbeOperator& probe) {
    const int s = sol.samples();
    const int dim = sol.dim();
    if (ds.dim() != dim || probe.matrix.rows() != dim)
        throw ConfigError("parseval_residual: dimension mismatch");

    Eigen::MatrixXd harmonic_power = Eigen::MatrixXd::Zero(dim, dim);
    for (int n = -ds.harmonics; n <= ds.harmonics; ++n)
        harmonic_power += ds.at(n).cwiseAbs2();

    Eigen::MatrixXd time_power = Eigen::MatrixXd::Zero(dim, dim);
    for (int j = 0; j < s; ++j) {
        const CMatrix a = sol.modes[j].adjoint() * probe.matrix * sol.modes[j];
        time_power += a.cwiseAbs2();
    }
    time_power /= static_cast<double>(s);

    return (harmonic_power - time_power).cwiseAbs().maxCoeff();
}

} // namespace floqlab
