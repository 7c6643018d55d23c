#include "floqlab/symmetry.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <complex>
#include <numbers>
#include <sstream>
#include <vector>

#include <Eigen/Eigenvalues>

#include "floqlab/errors.hpp"

namespace floqlab {

namespace {

constexpr Complex I{0.0, 1.0};

std::string join(const std::vector<std::string>& parts) {
    std::string out;
    for (std::size_t i = 0; i < parts.size(); ++i) {
        if (i > 0) out += "; ";
        out += parts[i];
    }
    return out;
}

// Smallest |v - e^{i 2 pi m / n_fold}| decides the label; anything further
// than 1e-6 from every root of unity means the classification is unreliable.
int snap_to_root_of_unity(Complex v, int n_fold) {
    int best = 0;
    double best_dist = std::numeric_limits<double>::infinity();
    for (int m = 0; m < n_fold; ++m) {
        const double phi = 2.0 * std::numbers::pi * m / n_fold;
        const double d = std::abs(v - std::exp(I * phi));
        if (d < best_dist) {
            best_dist = d;
            best = m;
        }
    }
    if (best_dist > 1e-6) {
        std::ostringstream msg;
        msg << "rotation_eigenvalues: eigenvalue (" << v.real() << ", " << v.imag()
            << ") is not close to any " << n_fold
            << "-th root of unity; the symmetry may not hold or the operator may not close";
        throw SymmetryError(msg.str());
    }
    return best;
}

// Quasienergies live on a circle of circumference omega, so degeneracy
// clustering has to treat the zone edges as adjacent.
std::vector<std::vector<int>> circular_clusters(const RVector& eps, double omega) {
    const double tol = 1e-8 * omega;
    const int dim = static_cast<int>(eps.size());
    std::vector<std::vector<int>> clusters;
    for (int i = 0; i < dim; ++i) {
        if (i > 0 && std::abs(fold(eps(i) - eps(i - 1), omega)) < tol)
            clusters.back().push_back(i);
        else
            clusters.push_back({i});
    }
    if (clusters.size() > 1 &&
        std::abs(fold(eps(0) - eps(dim - 1), omega)) < tol) {
        auto& first = clusters.front();
        const auto& last = clusters.back();
        first.insert(first.end(), last.begin(), last.end());
        clusters.pop_back();
        std::sort(first.begin(), first.end());
    }
    return clusters;
}

} // namespace

std::string to_string(SymmetryKind kind) {
    switch (kind) {
    case SymmetryKind::RS: return "RS";
    case SymmetryKind::PHS: return "PHS";
    case SymmetryKind::CS: return "CS";
    case SymmetryKind::TRS: return "TRS";
    }
    throw ConfigError("to_string: unknown symmetry kind");
}

SymmetryKind symmetry_kind_from_string(const std::string& name) {
    std::string upper = name;
    for (char& c : upper)
        c = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
    if (upper == "RS") return SymmetryKind::RS;
    if (upper == "PHS") return SymmetryKind::PHS;
    if (upper == "CS") return SymmetryKind::CS;
    if (upper == "TRS") return SymmetryKind::TRS;
    throw ConfigError("symmetry kind '" + name + "' is not one of RS, PHS, CS, TRS");
}

VerifyResult verify_symmetry(const PeriodicHamiltonian& h, const SymmetrySpec& s,
                             int samples, double tol) {
    h.validate();
    if (s.op.rows() != h.dim || s.op.cols() != h.dim)
        throw ConfigError("verify_symmetry: operator dimension does not match the Hamiltonian");
    if (samples < 2)
        throw ConfigError("verify_symmetry: need at least two sample times");
    if (!(tol > 0.0))
        throw ConfigError("verify_symmetry: tolerance must be positive");
    if (unitarity_residual(s.op) > 1e-10)
        throw ConfigError("verify_symmetry: symmetry operator is not unitary");
    const double tau = h.period();
    if (s.kind == SymmetryKind::RS) {
        if (s.n_fold < 1)
            throw ConfigError("verify_symmetry: RS spec needs n_fold >= 1");
        if (std::abs(s.t_shift - tau / s.n_fold) > 1e-9 * tau)
            throw ConfigError("verify_symmetry: RS time shift must equal period / n_fold");
    }

    const double alpha = s.alpha_s();
    const double beta = s.beta_s();
    double worst = 0.0;
    for (int j = 0; j < samples; ++j) {
        const double t = j * tau / samples;
        CMatrix lhs = h.evaluate(s.t_shift + beta * t);
        if (s.antiunitary()) lhs = lhs.conjugate();
        lhs = s.op * lhs * s.op.adjoint();
        worst = std::max(worst, max_abs_diff(lhs, (alpha * h.evaluate(t)).eval()));
    }
    return {worst < tol, worst};
}

std::vector<int> rotation_eigenvalues(const FloquetSolution& sol, const SymmetrySpec& s) {
    if (s.kind != SymmetryKind::RS)
        throw ConfigError("rotation_eigenvalues: spec kind must be RS");
    const int dim = sol.dim();
    if (s.op.rows() != dim || s.op.cols() != dim)
        throw ConfigError("rotation_eigenvalues: operator dimension mismatch");
    if (s.n_fold < 1)
        throw ConfigError("rotation_eigenvalues: n_fold must be positive");

    // W(mu, nu) = (1/tau) int dt <u_mu(t)| R |u_nu(t + t_R)> reduces to a sum
    // over mode harmonics, which also handles shifts that fall between the
    // stored sample times.
    const int kmax = sol.samples() / 2 - 1;
    const auto harm = sol.mode_harmonics(kmax);
    CMatrix w = CMatrix::Zero(dim, dim);
    for (int k = -kmax; k <= kmax; ++k) {
        const Complex phase = std::exp(I * (k * sol.omega * s.t_shift));
        w += phase * (harm[k + kmax].adjoint() * s.op * harm[k + kmax]);
    }

    std::vector<int> labels(dim, 0);
    for (const auto& cluster : circular_clusters(sol.quasienergies, sol.omega)) {
        const int m = static_cast<int>(cluster.size());

        // A wraparound cluster holds states degenerate modulo omega whose
        // stored modes differ by one harmonic of dressing. Align every
        // member to the unfolded quasienergy of the topmost one before
        // building the block; otherwise part of the rotation weight leaks
        // into harmonic-shifted copies and the block is not unitary.
        double eps_max = sol.quasienergies[cluster[0]];
        for (int a : cluster)
            eps_max = std::max(eps_max, sol.quasienergies[a]);
        std::vector<int> dress(m, 0);
        for (int a = 0; a < m; ++a)
            if (eps_max - sol.quasienergies[cluster[a]] > 0.5 * sol.omega)
                dress[a] = 1;

        std::vector<Complex> vals;
        if (m == 1) {
            vals.push_back(w(cluster[0], cluster[0]));
        } else {
            CMatrix block(m, m);
            for (int a = 0; a < m; ++a)
                for (int b = 0; b < m; ++b) {
                    const int d = dress[a] - dress[b];
                    Complex acc = 0.0;
                    for (int p = std::max(-kmax, -kmax - d);
                         p <= std::min(kmax, kmax - d); ++p) {
                        const Complex ph = std::exp(I * (p * sol.omega * s.t_shift));
                        acc += ph * harm[p + kmax].col(cluster[a]).dot(
                                        s.op * harm[p + d + kmax].col(cluster[b]));
                    }
                    block(a, b) = std::exp(I * (dress[a] * sol.omega * s.t_shift)) * acc;
                }
            Eigen::ComplexEigenSolver<CMatrix> es(block, false);
            if (es.info() != Eigen::Success)
                throw SymmetryError("rotation_eigenvalues: eigensolve failed on a degenerate block");
            for (int a = 0; a < m; ++a) vals.push_back(es.eigenvalues()(a));
            std::sort(vals.begin(), vals.end(), [](Complex a, Complex b) {
                const double pa = std::arg(a), pb = std::arg(b);
                if (pa != pb) return pa < pb;
                return a.real() < b.real();
            });
        }
        // Translate each aligned eigenvalue back into the zone frame of the
        // member it is assigned to: one dressing harmonic advances the
        // rotation phase by a full step.
        for (int a = 0; a < m; ++a) {
            const int snapped = snap_to_root_of_unity(vals[a], s.n_fold);
            labels[cluster[a]] =
                ((snapped - dress[a]) % s.n_fold + s.n_fold) % s.n_fold;
        }
    }
    return labels;
}

std::vector<DarkPrediction> predict_rs_dark_states(const std::vector<int>& labels,
                                                   const SymmetrySpec& s, int n_range) {
    if (s.kind != SymmetryKind::RS)
        throw ConfigError("predict_rs_dark_states: spec kind must be RS");
    if (s.n_fold < 1)
        throw ConfigError("predict_rs_dark_states: n_fold must be positive");
    if (s.alpha_v != 1 && s.alpha_v != -1)
        throw ConfigError("predict_rs_dark_states: alpha_v must be +1 or -1");
    if (n_range < 0)
        throw ConfigError("predict_rs_dark_states: n_range must be non-negative");

    const int nf = s.n_fold;
    const int dim = static_cast<int>(labels.size());
    std::vector<DarkPrediction> out;
    for (int mu = 0; mu < dim; ++mu) {
        for (int nu = 0; nu < dim; ++nu) {
            for (int n = -n_range; n <= n_range; ++n) {
                // The element carries a phase e^{i 2 pi ph / nf} under one
                // rotation step; it can only survive when that phase equals
                // alpha_v.
                const int ph = (((labels[mu] - labels[nu] + n) % nf) + nf) % nf;
                const bool allowed = (s.alpha_v == 1 && ph == 0) ||
                                     (s.alpha_v == -1 && 2 * ph == nf);
                if (!allowed) out.push_back({mu, nu, n});
            }
        }
    }
    return out;
}

std::set<int> fbsr_vanishing_bands(const SymmetrySpec& s, int band_range) {
    if (s.kind != SymmetryKind::RS)
        throw ConfigError("fbsr_vanishing_bands: spec kind must be RS");
    if (s.n_fold < 1)
        throw ConfigError("fbsr_vanishing_bands: n_fold must be positive");
    if (band_range < 0)
        throw ConfigError("fbsr_vanishing_bands: band_range must be non-negative");
    std::set<int> out;
    for (int n = -band_range; n <= band_range; ++n) {
        const int r = ((n % s.n_fold) + s.n_fold) % s.n_fold;
        if (r != 0) out.insert(n);
    }
    return out;
}

std::vector<std::pair<int, int>> phs_partner_pairing(const FloquetSolution& sol,
                                                     const SymmetrySpec& s, double tol) {
    if (s.kind != SymmetryKind::PHS)
        throw ConfigError("phs_partner_pairing: spec kind must be PHS");
    const int dim = sol.dim();
    if (s.op.rows() != dim || s.op.cols() != dim)
        throw ConfigError("phs_partner_pairing: operator dimension mismatch");
    if (tol <= 0.0) tol = 1e-8 * sol.omega;

    // Overlap of each mode at t = 0 with the particle-hole image of each
    // mode, |<u_a(0)| P conj(u_b(t_P))>|; the image of u_b is a Floquet mode
    // with quasienergy -eps_b, so the partner shows up with overlap near 1.
    const CMatrix image = s.op * sol.modes_at(s.t_shift).conjugate();
    const Eigen::MatrixXd ov = (sol.modes[0].adjoint() * image).cwiseAbs();
    const RVector& eps = sol.quasienergies;

    std::vector<int> partner(dim, -1);
    int remaining = dim;
    while (remaining > 0) {
        double best = -1.0;
        int ba = -1, bb = -1;
        for (int a = 0; a < dim; ++a) {
            if (partner[a] >= 0) continue;
            for (int b = 0; b < dim; ++b) {
                if (partner[b] >= 0) continue;
                if (std::abs(fold(eps(a) + eps(b), sol.omega)) >= tol) continue;
                if (ov(a, b) > best) {
                    best = ov(a, b);
                    ba = a;
                    bb = b;
                }
            }
        }
        if (ba < 0)
            throw SymmetryError("phs_partner_pairing: a state has no partner with opposite "
                                "quasienergy; the symmetry may not hold at this drive");
        partner[ba] = bb;
        partner[bb] = ba;
        remaining -= (ba == bb) ? 1 : 2;
    }

    std::vector<std::pair<int, int>> pairs;
    for (int a = 0; a < dim; ++a)
        if (partner[a] >= a) pairs.emplace_back(a, partner[a]);
    return pairs;
}

std::vector<DarkPrediction> predict_phs_dark_states(const std::vector<std::pair<int, int>>& pairs,
                                                    const SymmetrySpec& s, double omega,
                                                    int n_range) {
    if (s.kind != SymmetryKind::PHS)
        throw ConfigError("predict_phs_dark_states: spec kind must be PHS");
    if (!(omega > 0.0))
        throw ConfigError("predict_phs_dark_states: omega must be positive");
    if (n_range < 0)
        throw ConfigError("predict_phs_dark_states: n_range must be non-negative");
    if (s.alpha_v != 1 && s.alpha_v != -1)
        throw ConfigError("predict_phs_dark_states: alpha_v must be +1 or -1");

    const double tau = 2.0 * std::numbers::pi / omega;
    const double teps = 1e-9 * tau;
    const bool at_zero = std::abs(s.t_shift) < teps || std::abs(s.t_shift - tau) < teps;
    const bool at_half = std::abs(s.t_shift - 0.5 * tau) < teps;
    std::vector<std::string> failed;
    if (!at_zero && !at_half)
        failed.push_back("the selection rule needs t_shift = 0 or half a period");
    if (s.op.size() > 0) {
        const CMatrix prod = s.op * s.op.conjugate();
        if (max_abs_diff(prod, CMatrix::Identity(prod.rows(), prod.cols())) > 1e-10)
            failed.push_back("the operator times its own conjugate is not the identity");
    } else {
        failed.push_back("the spec carries no operator");
    }
    if (!failed.empty())
        throw InapplicabilityError("predict_phs_dark_states: " + join(failed));

    // The pair element picks up alpha_v e^{-i n Omega t_P} under the
    // symmetry; the exact phase is +-1 at the two admissible shifts, and -1
    // forces the element to vanish.
    std::vector<DarkPrediction> out;
    for (const auto& [a, b] : pairs) {
        for (int n = -n_range; n <= n_range; ++n) {
            const int shift_sign = at_zero ? 1 : ((n % 2 == 0) ? 1 : -1);
            if (s.alpha_v * shift_sign == -1) {
                out.push_back({a, b, n});
                if (a != b) out.push_back({b, a, n});
            }
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

SitReport sit_check(const PeriodicHamiltonian& h, const SymmetrySpec& s1,
                    const SymmetrySpec& s2, const FloquetSolution& sol,
                    const DipoleSet& ds, int band_range, double zero_tol) {
    const int dim = sol.dim();
    if (band_range < 0 || band_range > ds.harmonics)
        throw ConfigError("sit_check: band_range is outside the dipole harmonic cutoff");
    if (ds.dim() != dim)
        throw ConfigError("sit_check: dipole set and solution dimensions differ");
    if (zero_tol <= 0.0) zero_tol = 1e-6 * sol.omega;

    std::vector<std::string> failed;
    if (s1.kind != SymmetryKind::PHS)
        failed.push_back("first spec is not particle-hole");
    if (s2.kind != SymmetryKind::PHS)
        failed.push_back("second spec is not particle-hole");
    if (failed.empty()) {
        const CMatrix id = CMatrix::Identity(dim, dim);
        if (const auto v = verify_symmetry(h, s1); !v.verified) {
            std::ostringstream msg;
            msg << "first symmetry does not hold (residual " << v.max_residual << ")";
            failed.push_back(msg.str());
        }
        if (const auto v = verify_symmetry(h, s2); !v.verified) {
            std::ostringstream msg;
            msg << "second symmetry does not hold (residual " << v.max_residual << ")";
            failed.push_back(msg.str());
        }
        if (max_abs_diff(s1.op, s2.op) < 1e-10 ||
            max_abs_diff(s1.op, (-s2.op).eval()) < 1e-10)
            failed.push_back("the two operators coincide up to sign");
        if (max_abs_diff((s1.op * s2.op).eval(), (s2.op * s1.op).eval()) > 1e-10)
            failed.push_back("the two operators do not commute");
        if (max_abs_diff((s1.op * s1.op).eval(), id) > 1e-10)
            failed.push_back("first operator does not square to the identity");
        if (max_abs_diff((s2.op * s2.op).eval(), id) > 1e-10)
            failed.push_back("second operator does not square to the identity");
    }

    std::vector<int> zero;
    for (int i = 0; i < dim; ++i)
        if (std::abs(sol.quasienergies(i)) < zero_tol) zero.push_back(i);
    if (zero.size() < 2)
        failed.push_back("no zero-quasienergy doublet within tolerance");
    if (!failed.empty())
        throw InapplicabilityError("sit_check: " + join(failed));

    std::sort(zero.begin(), zero.end(), [&](int a, int b) {
        const double da = std::abs(sol.quasienergies(a));
        const double db = std::abs(sol.quasienergies(b));
        if (da != db) return da < db;
        return a < b;
    });
    int i0 = zero[0], i1 = zero[1];
    if (i0 > i1) std::swap(i0, i1);

    // Coefficients of each antiunitary map on the doublet:
    // G(a, j) = <u_a(0)| P conj(u_j(t_P))> for a, j in the doublet.
    CMatrix z0(dim, 2);
    z0.col(0) = sol.modes[0].col(i0);
    z0.col(1) = sol.modes[0].col(i1);
    const auto doublet_map = [&](const SymmetrySpec& s) {
        const CMatrix zt = sol.modes_at(s.t_shift);
        CMatrix cols(dim, 2);
        cols.col(0) = zt.col(i0);
        cols.col(1) = zt.col(i1);
        return (z0.adjoint() * (s.op * cols.conjugate())).eval();
    };
    const CMatrix g1 = doublet_map(s1);
    const CMatrix g2 = doublet_map(s2);
    if (unitarity_residual(g1) > 1e-6)
        throw InapplicabilityError("sit_check: first symmetry does not preserve the doublet");
    if (unitarity_residual(g2) > 1e-6)
        throw InapplicabilityError("sit_check: second symmetry does not preserve the doublet");

    // The composite of the two antiunitary maps acts on the doublet through
    // K = G1 conj(G2); the construction needs one +1 and one -1 eigenvalue.
    const CMatrix k = g1 * g2.conjugate();
    Eigen::ComplexEigenSolver<CMatrix> es(k);
    if (es.info() != Eigen::Success)
        throw SymmetryError("sit_check: eigensolve failed on the doublet block");
    int idx_plus = -1, idx_minus = -1;
    for (int j = 0; j < 2; ++j) {
        if (std::abs(es.eigenvalues()(j) - 1.0) < 1e-6) idx_plus = j;
        else if (std::abs(es.eigenvalues()(j) + 1.0) < 1e-6) idx_minus = j;
    }
    if (idx_plus < 0 || idx_minus < 0)
        throw InapplicabilityError(
            "sit_check: the composed operator does not split the doublet into +1 and -1 "
            "sectors; the two symmetries act identically on it");

    // Gauge each sector vector so the first map fixes it exactly, then take
    // the +- combinations: the first map still fixes both combinations while
    // the second swaps them, which is the basis the pair identity refers to.
    const auto gauged = [&](CVector w) {
        w.normalize();
        const Complex c = (w.adjoint() * (g1 * w.conjugate()))(0);
        w *= std::exp(I * (std::arg(c) / 2.0));
        if ((g1 * w.conjugate() - w).cwiseAbs().maxCoeff() > 1e-6)
            throw SymmetryError("sit_check: could not gauge the doublet basis to be fixed "
                                "by the first symmetry");
        return w;
    };
    const CVector vp = gauged(es.eigenvectors().col(idx_plus));
    const CVector vm = gauged(es.eigenvectors().col(idx_minus));
    const CVector ua = (vp + vm) / std::numbers::sqrt2;
    const CVector ub = (vp - vm) / std::numbers::sqrt2;

    SitReport report;
    report.doublet = {i0, i1};

    const double delta = s1.t_shift - s2.t_shift;
    const double a12 = static_cast<double>(s1.alpha_v) * s2.alpha_v;
    double worst = 0.0, vmax = 0.0;
    for (int n = -band_range; n <= band_range; ++n) {
        CMatrix block(2, 2);
        block(0, 0) = ds.value(n, i0, i0);
        block(0, 1) = ds.value(n, i0, i1);
        block(1, 0) = ds.value(n, i1, i0);
        block(1, 1) = ds.value(n, i1, i1);
        const Complex vab = (ua.adjoint() * (block * ub))(0);
        const Complex vba = (ub.adjoint() * (block * ua))(0);
        const Complex predicted = vab * a12 * std::exp(-I * (n * sol.omega * delta));
        worst = std::max(worst, std::abs(vba - predicted));
        vmax = std::max({vmax, std::abs(vab), std::abs(vba)});
    }
    report.pair_identity_residual = vmax > 0.0 ? worst / vmax : 0.0;

    // Contribution phases e^{i m Omega (t_P1 - t_P2)}: a band only cancels
    // when the phase is exactly +1 for the harmonics feeding it.
    for (int n = -band_range; n <= band_range; ++n) {
        for (int m = -band_range; m <= band_range; ++m) {
            const Complex phase = std::exp(I * (m * sol.omega * delta));
            report.phases.push_back({n, m, std::abs(phase - 1.0) < 1e-9});
        }
    }
    return report;
}

ComposedPhs compose_cs_trs(const SymmetrySpec& cs, const SymmetrySpec& trs, double omega) {
    if (cs.kind != SymmetryKind::CS)
        throw ConfigError("compose_cs_trs: first spec must be CS");
    if (trs.kind != SymmetryKind::TRS)
        throw ConfigError("compose_cs_trs: second spec must be TRS");
    if (!(omega > 0.0))
        throw ConfigError("compose_cs_trs: omega must be positive");
    if (cs.op.rows() != trs.op.rows() || cs.op.cols() != trs.op.cols())
        throw ConfigError("compose_cs_trs: operator dimensions differ");

    const double tau = 2.0 * std::numbers::pi / omega;
    ComposedPhs out;
    out.spec.kind = SymmetryKind::PHS;
    out.spec.op = cs.op * trs.op;
    out.spec.t_shift = std::fmod(trs.t_shift - cs.t_shift, tau);
    if (out.spec.t_shift < 0.0) out.spec.t_shift += tau;
    out.spec.alpha_v = cs.alpha_v * trs.alpha_v;

    const double teps = 1e-9 * tau;
    const double tp = out.spec.t_shift;
    if (!(std::abs(tp) < teps || std::abs(tp - tau) < teps || std::abs(tp - 0.5 * tau) < teps))
        out.failed_conditions.push_back("composed t_shift is neither 0 nor half a period");
    const auto conj_square_ok = [](const CMatrix& m) {
        return max_abs_diff((m * m.conjugate()).eval(),
                            CMatrix::Identity(m.rows(), m.cols()).eval()) <= 1e-10;
    };
    if (!conj_square_ok(cs.op))
        out.failed_conditions.push_back("CS operator times its conjugate is not the identity");
    if (!conj_square_ok(trs.op))
        out.failed_conditions.push_back("TRS operator times its conjugate is not the identity");
    if (max_abs_diff((cs.op * trs.op).eval(), (trs.op * cs.op).eval()) > 1e-10)
        out.failed_conditions.push_back("CS and TRS operators do not commute");
    out.dark_rule_applicable = out.failed_conditions.empty();
    return out;
}

std::vector<DarkPrediction> scan_dark_states(const DipoleSet& ds, double threshold_ratio) {
    if (!(threshold_ratio > 0.0))
        throw ConfigError("scan_dark_states: threshold_ratio must be positive");
    std::vector<DarkPrediction> out;
    const double threshold = threshold_ratio * ds.max_element;
    const int dim = ds.dim();
    for (int n = -ds.harmonics; n <= ds.harmonics; ++n)
        for (int mu = 0; mu < dim; ++mu)
            for (int nu = 0; nu < dim; ++nu)
                if (std::abs(ds.value(n, mu, nu)) < threshold)
                    out.push_back({mu, nu, n});
    std::sort(out.begin(), out.end());
    return out;
}

NoDarkStatement no_dark_rule(SymmetryKind kind) {
    NoDarkStatement out;
    out.kind = kind;
    switch (kind) {
    case SymmetryKind::TRS:
        out.identity = "V^(n) = alpha_v e^{-i n Omega t_T} conj(V^(n)) in the solver gauge: "
                       "a reality constraint on the elements, not a selection rule";
        out.testable = true;
        break;
    case SymmetryKind::CS:
        out.identity = "V^(n) relates to its adjoint through the chiral partner map with a "
                       "gauge-dependent phase; no element is forced to vanish";
        out.testable = false;
        break;
    default:
        throw ConfigError("no_dark_rule: only CS and TRS carry a no-dark-rule statement");
    }
    return out;
}

double trs_reality_residual(const DipoleSet& ds, const SymmetrySpec& trs) {
    if (trs.kind != SymmetryKind::TRS)
        throw ConfigError("trs_reality_residual: spec kind must be TRS");
    if (!(ds.omega > 0.0))
        throw ConfigError("trs_reality_residual: dipole set has no frequency");
    if (trs.op.rows() != ds.dim() || trs.op.cols() != ds.dim())
        throw ConfigError("trs_reality_residual: operator dimension mismatch");

    // With T = identity and modes in the deterministic solver gauge the
    // constraint V^(n) = alpha_v e^{-i n Omega t_T} conj(V^(n)) is testable
    // element by element.
    double worst = 0.0;
    for (int n = -ds.harmonics; n <= ds.harmonics; ++n) {
        const Complex phase = static_cast<double>(trs.alpha_v) *
                              std::exp(-I * (n * ds.omega * trs.t_shift));
        worst = std::max(worst, max_abs_diff(ds.at(n), (phase * ds.at(n).conjugate()).eval()));
    }
    return worst;
}

SymmetryReport analyze_symmetry(const PeriodicHamiltonian& h, const SymmetrySpec& s,
                                const FloquetSolution& sol, const DipoleSet& ds, int n_range) {
    SymmetryReport report;
    report.spec = s;
    n_range = std::min(n_range, ds.harmonics);

    const VerifyResult v = verify_symmetry(h, s);
    report.verified = v.verified;
    report.max_residual = v.max_residual;
    if (!report.verified) {
        report.note = "the symmetry relation does not hold at this drive; no predictions made";
        return report;
    }

    switch (s.kind) {
    case SymmetryKind::RS:
        try {
            report.rotation_labels = rotation_eigenvalues(sol, s);
            report.predicted_dark = predict_rs_dark_states(report.rotation_labels, s, n_range);
            report.vanishing_bands = fbsr_vanishing_bands(s, n_range);
        } catch (const SymmetryError& e) {
            report.note = e.what();
        }
        break;
    case SymmetryKind::PHS:
        try {
            report.pairs = phs_partner_pairing(sol, s);
            report.predicted_dark = predict_phs_dark_states(report.pairs, s, sol.omega, n_range);
        } catch (const SymmetryError& e) {
            report.note = e.what();
        } catch (const InapplicabilityError& e) {
            report.dark_rule_applicable = false;
            report.note = e.what();
        }
        break;
    case SymmetryKind::CS:
        report.dark_rule_applicable = false;
        report.note = no_dark_rule(SymmetryKind::CS).identity;
        break;
    case SymmetryKind::TRS:
        report.dark_rule_applicable = false;
        report.note = no_dark_rule(SymmetryKind::TRS).identity;
        report.reality_residual = trs_reality_residual(ds, s);
        break;
    }

    report.dark_ratios.reserve(report.predicted_dark.size());
    for (const DarkPrediction& d : report.predicted_dark)
        report.dark_ratios.push_back(
            ds.max_element > 0.0 ? std::abs(ds.value(d.n, d.mu, d.nu)) / ds.max_element : 0.0);
    return report;
}

} // namespace floqlab
