#include "floqlab/model.hpp"

#include <cmath>
#include <numbers>

#include "floqlab/errors.hpp"

namespace floqlab {

namespace {

constexpr Complex I{0.0, 1.0};

void check_drive_params(double f_drive, double omega) {
    if (!(omega > 0.0))
        throw ConfigError("model: omega must be positive");
    if (f_drive < 0.0)
        throw ConfigError("model: f_drive must be non-negative");
}

} // namespace

ModelBundle build_benzene(double e0, double j0, double f_drive, double omega,
                          double d0) {
    check_drive_params(f_drive, omega);
    const int n_sites = 6;
    const int dim = n_sites + 1;   // |g> at index 0, ring sites at 1..6
    auto site = [&](int j) { return 1 + ((j % n_sites + n_sites) % n_sites); };

    CMatrix h0 = CMatrix::Zero(dim, dim);
    for (int j = 0; j < n_sites; ++j) {
        h0(site(j), site(j)) = e0;
        h0(site(j), site(j + 1)) += j0;
        h0(site(j + 1), site(j)) += j0;
    }

    // Bond drive i f_j(t)|e_j><e_{j+1}| + h.c. with one phase step per bond:
    // cos(W t + p_j) splits into e^{±i W t} halves, so the drive occupies
    // harmonics ±1 only.
    CMatrix h_plus = CMatrix::Zero(dim, dim);
    for (int j = 0; j < n_sites; ++j) {
        const Complex phase = std::exp(I * (2.0 * std::numbers::pi * j / n_sites));
        const Complex amp = 0.5 * f_drive * phase;
        h_plus(site(j), site(j + 1)) += I * amp;
        h_plus(site(j + 1), site(j)) += -I * amp;
    }

    PeriodicHamiltonian h;
    h.dim = dim;
    h.omega = omega;
    h.fourier[0] = h0;
    if (f_drive != 0.0) {
        h.fourier[1] = h_plus;
        h.fourier[-1] = h_plus.adjoint();
    }
    h.validate();

    CMatrix v = CMatrix::Zero(dim, dim);
    for (int j = 0; j < n_sites; ++j) {
        v(site(j), 0) = d0;
        v(0, site(j)) = d0;
    }

    SymmetrySpec rot;
    rot.kind = SymmetryKind::RS;
    rot.n_fold = n_sites;
    rot.t_shift = (2.0 * std::numbers::pi / omega) / n_sites;
    rot.alpha_v = +1;
    rot.op = CMatrix::Zero(dim, dim);
    rot.op(0, 0) = 1.0;
    for (int j = 0; j < n_sites; ++j)
        rot.op(site(j + 1), site(j)) = 1.0;

    ModelBundle m;
    m.hamiltonian = std::move(h);
    m.probe = ProbeOperator{std::move(v), 1.0};
    m.symmetries = {std::move(rot)};
    m.basis_labels = {"g", "e0", "e1", "e2", "e3", "e4", "e5"};
    return m;
}

ModelBundle build_dimer(double delta, double j0, double r, double f_drive,
                        double omega) {
    check_drive_params(f_drive, omega);
    const int dim = 4;   // basis order g, e1, e2, f
    enum { g = 0, e1 = 1, e2 = 2, f = 3 };

    auto bond = [&](CMatrix& m, int a, int b, double w) {
        m(a, b) += w;
        m(b, a) += w;
    };

    CMatrix h0 = CMatrix::Zero(dim, dim);
    h0(f, f) = delta;
    h0(g, g) = -delta;
    bond(h0, e1, e2, j0);

    CMatrix drive = CMatrix::Zero(dim, dim);
    bond(drive, e1, f, 1.0);
    bond(drive, g, e1, 1.0);
    bond(drive, e1, e2, r);

    PeriodicHamiltonian h;
    h.dim = dim;
    h.omega = omega;
    h.fourier[0] = h0;
    if (f_drive != 0.0) {
        h.fourier[1] = 0.5 * f_drive * drive;
        h.fourier[-1] = 0.5 * f_drive * drive;
    }
    h.validate();

    CMatrix v = CMatrix::Zero(dim, dim);
    bond(v, e1, f, 1.0);
    bond(v, g, e1, 1.0);

    SymmetrySpec phs;
    phs.kind = SymmetryKind::PHS;
    phs.t_shift = 0.0;
    phs.alpha_v = -1;
    phs.op = CMatrix::Zero(dim, dim);
    phs.op(g, f) = 1.0;
    phs.op(f, g) = 1.0;
    phs.op(e1, e1) = -1.0;
    phs.op(e2, e2) = 1.0;

    ModelBundle m;
    m.hamiltonian = std::move(h);
    m.probe = ProbeOperator{std::move(v), 1.0};
    m.symmetries = {std::move(phs)};
    m.basis_labels = {"g", "e1", "e2", "f"};
    return m;
}

ModelBundle build_tls(double h_x, double f_drive, double omega) {
    check_drive_params(f_drive, omega);
    const double tau = 2.0 * std::numbers::pi / omega;

    CMatrix sx(2, 2), sz(2, 2), id = CMatrix::Identity(2, 2);
    sx << 0, 1, 1, 0;
    sz << 1, 0, 0, -1;

    PeriodicHamiltonian h;
    h.dim = 2;
    h.omega = omega;
    h.fourier[0] = 0.5 * h_x * sx;
    if (f_drive != 0.0) {
        h.fourier[1] = 0.25 * f_drive * sz;
        h.fourier[-1] = 0.25 * f_drive * sz;
    }
    h.validate();

    SymmetrySpec rot;
    rot.kind = SymmetryKind::RS;
    rot.n_fold = 2;
    rot.t_shift = tau / 2.0;
    rot.alpha_v = +1;
    rot.op = sx;

    SymmetrySpec phs;
    phs.kind = SymmetryKind::PHS;
    phs.t_shift = tau / 2.0;
    phs.alpha_v = -1;
    phs.op = sz;

    ModelBundle m;
    m.hamiltonian = std::move(h);
    m.probe = ProbeOperator{sx, 1.0};
    m.symmetries = {std::move(rot), std::move(phs)};
    if (h_x == 0.0) {
        SymmetrySpec phs2;
        phs2.kind = SymmetryKind::PHS;
        phs2.t_shift = tau / 2.0;
        phs2.alpha_v = +1;
        phs2.op = id;
        m.symmetries.push_back(std::move(phs2));
    }
    m.basis_labels = {"up", "down"};
    return m;
}

} // namespace floqlab
