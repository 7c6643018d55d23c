#pragma once

#include <string>

#include "floqlab/linalg.hpp"

namespace floqlab {

/// The four dynamical-symmetry classes of a periodically driven Hamiltonian,
/// classified by (alpha, beta) in
///
///   S [H(t_S + beta t) - i d/dt] S^{-1} = alpha [H(t) - i d/dt]
///
/// RS  (+1, +1)  unitary rotation, t_S = period / n_fold
/// PHS (-1, +1)  antiunitary particle-hole conjugation
/// CS  (-1, -1)  unitary chiral operation
/// TRS (+1, -1)  antiunitary time reversal
enum class SymmetryKind { RS, PHS, CS, TRS };

std::string to_string(SymmetryKind kind);
SymmetryKind symmetry_kind_from_string(const std::string& name);

/// One declared symmetry: its unitary part, time shift, and how the probe
/// operator transforms under it (alpha_v = ±1).
struct SymmetrySpec {
    SymmetryKind kind = SymmetryKind::RS;
    CMatrix op;             // unitary part; the antiunitary classes compose it with conjugation
    double t_shift = 0.0;   // t_S in absolute time units, in [0, period)
    int n_fold = 1;         // RS only: order of the rotation, t_shift = period / n_fold
    int alpha_v = +1;       // probe transformation sign

    bool antiunitary() const {
        return kind == SymmetryKind::PHS || kind == SymmetryKind::TRS;
    }
    int alpha_s() const {
        return (kind == SymmetryKind::PHS || kind == SymmetryKind::CS) ? -1 : +1;
    }
    int beta_s() const {
        return (kind == SymmetryKind::CS || kind == SymmetryKind::TRS) ? -1 : +1;
    }
};

} // namespace floqlab
