#pragma once

#include <string>
#include <vector>

#include "floqlab/hamiltonian.hpp"
#include "floqlab/symmetry_spec.hpp"

namespace floqlab {

/// A complete simulation input: driven Hamiltonian, probe operator, declared
/// symmetries and basis-state labels.
struct ModelBundle {
    PeriodicHamiltonian hamiltonian;
    ProbeOperator probe;
    std::vector<SymmetrySpec> symmetries;
    std::vector<std::string> basis_labels;
};

/// Six-site excitonic ring above a common ground state (dim = 7, basis
/// g, e0..e5). Static part: onsite energy e0 and nearest-neighbour hopping
/// j0 on the ring; the ground state sits at energy 0 and is not coupled by
/// the drive. Drive: chiral bond modulation
///   i f_j(t) |e_j><e_{j+1}| + h.c.,  f_j(t) = f_drive cos(W t + 2 pi j / 6),
/// which contains exactly harmonics {-1, 0, +1}. Probe: d0 sum_j |e_j><g| + h.c.
/// Bundled symmetry: six-fold site rotation combined with the t -> t + T/6
/// shift (identity on |g>), alpha_v = +1.
ModelBundle build_benzene(double e0, double j0, double f_drive, double omega,
                          double d0 = 1.0);

/// Four-level dimer (basis g, e1, e2, f): gap delta between g and f, static
/// e1<->e2 coupling j0, and a single-harmonic drive of amplitude f_drive on
/// the g-e1, e1-f and (scaled by r) e1-e2 bonds. Bundled symmetry: the
/// particle-hole conjugation that swaps g and f and acts as diag(-1, +1) on
/// (e1, e2), with t_shift = 0 and alpha_v = -1.
ModelBundle build_dimer(double delta, double j0, double r, double f_drive,
                        double omega);

/// Driven two-level system H(t) = (h_x/2) sx + (f_drive/2) cos(W t) sz with
/// probe sx. Bundled symmetries: two-fold rotation (sx, T/2, alpha_v = +1)
/// and particle-hole (sz, T/2, alpha_v = -1); at h_x = 0 additionally the
/// trivial-operator particle-hole (1, T/2, alpha_v = +1).
ModelBundle build_tls(double h_x, double f_drive, double omega);

} // namespace floqlab
