#include "floqlab/floquet.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>

#include "floqlab/errors.hpp"

namespace floqlab {

namespace {

constexpr Complex I{0.0, 1.0};

// Gauss-Legendre nodes and weights of the fourth-order commutator-free
// scheme. The late-node-heavy exponential acts last (left factor).
constexpr double kHalfSqrt3Over3 = 0.28867513459481288225457439025098;
constexpr double kNodeLo = 0.5 - kHalfSqrt3Over3;
constexpr double kNodeHi = 0.5 + kHalfSqrt3Over3;
constexpr double kWeightA = 0.25 + kHalfSqrt3Over3;
constexpr double kWeightB = 0.25 - kHalfSqrt3Over3;

struct Propagation {
    std::vector<CMatrix> samples;   // U(t_j, 0) on the sample grid
    CMatrix full_period;            // U(T, 0)
};

Propagation propagate(const PeriodicHamiltonian& h, int steps, int samples) {
    const double tau = h.period();
    const double dt = tau / steps;
    const int per_sample = samples > 0 ? steps / samples : steps + 1;

    Propagation out;
    out.samples.reserve(std::max(samples, 0));
    CMatrix u = CMatrix::Identity(h.dim, h.dim);
    for (int i = 0; i < steps; ++i) {
        if (samples > 0 && i % per_sample == 0)
            out.samples.push_back(u);
        const double t = i * dt;
        const CMatrix h1 = h.evaluate(t + kNodeLo * dt);
        const CMatrix h2 = h.evaluate(t + kNodeHi * dt);
        u = unitary_exp(kWeightB * h1 + kWeightA * h2, dt) *
            (unitary_exp(kWeightA * h1 + kWeightB * h2, dt) * u);
    }
    out.full_period = std::move(u);
    return out;
}

// Magnitude of the first component above the significance floor; the
// deterministic tie-break key inside degenerate clusters.
double first_significant_magnitude(const CVector& v) {
    for (Eigen::Index i = 0; i < v.size(); ++i)
        if (std::abs(v(i)) > 1e-10)
            return std::abs(v(i));
    return 0.0;
}

// Column order sorted by ascending quasienergy; clusters closer than
// 1e-9 * omega are ordered by descending first significant magnitude.
std::vector<int> sorted_order(const RVector& eps, const CMatrix& v0, double omega) {
    const int n = static_cast<int>(eps.size());
    std::vector<int> idx(n);
    std::iota(idx.begin(), idx.end(), 0);
    std::stable_sort(idx.begin(), idx.end(),
                     [&](int a, int b) { return eps(a) < eps(b); });

    const double tie = 1e-9 * omega;
    int lo = 0;
    while (lo < n) {
        int hi = lo + 1;
        while (hi < n && eps(idx[hi]) - eps(idx[hi - 1]) < tie)
            ++hi;
        if (hi - lo > 1)
            std::stable_sort(idx.begin() + lo, idx.begin() + hi, [&](int a, int b) {
                return first_significant_magnitude(v0.col(a)) >
                       first_significant_magnitude(v0.col(b));
            });
        lo = hi;
    }
    return idx;
}

// Multiplying a column by this phase makes its largest-magnitude component
// real and positive.
Complex gauge_phase(const CVector& col) {
    Eigen::Index imax = 0;
    col.cwiseAbs().maxCoeff(&imax);
    const Complex pivot = col(imax);
    const double mag = std::abs(pivot);
    return mag > 0.0 ? std::conj(pivot) / mag : Complex(1.0, 0.0);
}

void fill_residuals(FloquetSolution& sol) {
    const int dim = sol.dim();
    sol.unitarity_residual = unitarity_residual(sol.monodromy);

    double orth = 0.0;
    for (const CMatrix& m : sol.modes)
        orth = std::max(orth,
                        max_abs(m.adjoint() * m - CMatrix::Identity(dim, dim)));
    sol.orthonormality_residual = orth;

    const double tau = sol.period();
    CVector phases(dim);
    for (int m = 0; m < dim; ++m)
        phases(m) = std::exp(I * sol.quasienergies(m) * tau);
    const CMatrix& v0 = sol.modes[0];
    sol.periodicity_residual =
        max_abs(sol.monodromy * v0 * phases.asDiagonal() - v0);
}

} // namespace

void SolverConfig::validate() const {
    if (time_steps < 2 || time_steps % 2 != 0)
        throw ConfigError("solver: time_steps must be even and >= 2");
    if (time_samples < 2)
        throw ConfigError("solver: time_samples must be >= 2");
    if (time_steps % time_samples != 0)
        throw ConfigError("solver: time_samples must divide time_steps");
    if (harmonic_cutoff < 1)
        throw ConfigError("solver: harmonic_cutoff must be >= 1");
    if (!(unitarity_tol > 0.0))
        throw ConfigError("solver: unitarity_tol must be positive");
}

double fold(double e, double omega) {
    if (!(omega > 0.0))
        throw ConfigError("fold: omega must be positive");
    double r = e - omega * std::round(e / omega);
    if (r >= 0.5 * omega)
        r -= omega;
    if (r < -0.5 * omega)
        r += omega;
    return r;
}

double FloquetSolution::period() const {
    return 2.0 * std::numbers::pi / omega;
}

double FloquetSolution::time_at(int j) const {
    return j * period() / samples();
}

CMatrix FloquetSolution::modes_at(double t) const {
    const int s = samples();
    const double tau = period();
    const double pos = (t / tau) * s;
    const double nearest = std::round(pos);
    if (std::abs(pos - nearest) < 1e-9) {
        int j = static_cast<int>(nearest) % s;
        if (j < 0)
            j += s;
        return modes[j];
    }
    // trigonometric interpolation from the harmonic content of the grid
    const int kmax = s / 2 - 1;
    const auto harm = mode_harmonics(kmax);
    CMatrix m = CMatrix::Zero(modes[0].rows(), modes[0].cols());
    for (int k = -kmax; k <= kmax; ++k)
        m += harm[k + kmax] * std::exp(I * (k * omega * t));
    return m;
}

std::vector<CMatrix> FloquetSolution::mode_harmonics(int kmax) const {
    const int s = samples();
    std::vector<CMatrix> harm(2 * kmax + 1);
    for (int k = -kmax; k <= kmax; ++k) {
        CMatrix acc = CMatrix::Zero(modes[0].rows(), modes[0].cols());
        for (int j = 0; j < s; ++j)
            acc += modes[j] *
                   std::exp(-I * (2.0 * std::numbers::pi * k * j / s));
        harm[k + kmax] = acc / static_cast<double>(s);
    }
    return harm;
}

CMatrix monodromy(const PeriodicHamiltonian& h, const SolverConfig& cfg) {
    cfg.validate();
    h.validate();
    Propagation fine = propagate(h, cfg.time_steps, 0);
    const double ures = unitarity_residual(fine.full_period);
    if (ures > cfg.unitarity_tol)
        throw SolverError("monodromy: unitarity residual " + std::to_string(ures) +
                          " exceeds tolerance; increase time_steps");
    Propagation coarse = propagate(h, cfg.time_steps / 2, 0);
    const double est = max_abs_diff(fine.full_period, coarse.full_period) / 15.0;
    if (est > 1e-6)
        throw SolverError("monodromy: step-halving comparison estimates error " +
                          std::to_string(est) + "; increase time_steps");
    return fine.full_period;
}

FloquetSolution floquet_solve(const PeriodicHamiltonian& h, const SolverConfig& cfg) {
    cfg.validate();
    h.validate();
    const double tau = h.period();

    Propagation fine = propagate(h, cfg.time_steps, cfg.time_samples);
    const CMatrix& u = fine.full_period;

    const double ures = unitarity_residual(u);
    if (ures > cfg.unitarity_tol)
        throw SolverError("floquet_solve: unitarity residual " + std::to_string(ures) +
                          " exceeds tolerance; increase time_steps");

    Propagation coarse = propagate(h, cfg.time_steps / 2, 0);
    const double accuracy = max_abs_diff(u, coarse.full_period) / 15.0;
    if (accuracy > 1e-6)
        throw SolverError("floquet_solve: step-halving comparison estimates error " +
                          std::to_string(accuracy) + "; increase time_steps");

    // Schur rather than a generic eigensolver: the monodromy is normal, so
    // the Schur form is diagonal and the basis stays orthonormal even at
    // degeneracies.
    Eigen::ComplexSchur<CMatrix> schur(u, true);
    if (schur.info() != Eigen::Success)
        throw SolverError("floquet_solve: Schur decomposition failed");
    const CMatrix& t = schur.matrixT();

    double offdiag = 0.0;
    for (int r = 0; r < h.dim; ++r)
        for (int c = r + 1; c < h.dim; ++c)
            offdiag = std::max(offdiag, std::abs(t(r, c)));
    if (offdiag > 1e-8)
        throw SolverError("floquet_solve: propagator not diagonalizable to tolerance");

    RVector eps_raw(h.dim);
    for (int m = 0; m < h.dim; ++m)
        eps_raw(m) = -std::arg(t(m, m)) / tau;   // arg in (-pi, pi] maps into [-W/2, W/2)

    const std::vector<int> order = sorted_order(eps_raw, schur.matrixU(), h.omega);
    RVector eps(h.dim);
    CMatrix v0(h.dim, h.dim);
    for (int m = 0; m < h.dim; ++m) {
        const int src = order[m];
        eps(m) = eps_raw(src);
        v0.col(m) = schur.matrixU().col(src) * gauge_phase(schur.matrixU().col(src));
    }

    FloquetSolution sol;
    sol.omega = h.omega;
    sol.quasienergies = eps;
    sol.monodromy = u;
    sol.accuracy_estimate = accuracy;
    sol.modes.reserve(cfg.time_samples);
    for (int j = 0; j < cfg.time_samples; ++j) {
        const double tj = j * tau / cfg.time_samples;
        CVector phases(h.dim);
        for (int m = 0; m < h.dim; ++m)
            phases(m) = std::exp(I * eps(m) * tj);
        sol.modes.push_back(fine.samples[j] * v0 * phases.asDiagonal());
    }
    fill_residuals(sol);
    return sol;
}

FloquetSolution extended_space_solve(const PeriodicHamiltonian& h,
                                     const SolverConfig& cfg) {
    cfg.validate();
    h.validate();
    const int k_cut = cfg.harmonic_cutoff;
    if (k_cut < h.max_harmonic())
        throw ConfigError("extended_space_solve: harmonic_cutoff below the "
                          "Hamiltonian's own harmonic content");

    const int dim = h.dim;
    const int blocks = 2 * k_cut + 1;
    const Eigen::Index total = static_cast<Eigen::Index>(dim) * blocks;

    CMatrix hf = CMatrix::Zero(total, total);
    for (const auto& [dk, hk] : h.fourier) {
        for (int a = 0; a < blocks; ++a) {
            const int b = a - dk;
            if (b < 0 || b >= blocks)
                continue;
            hf.block(a * dim, b * dim, dim, dim) += hk;
        }
    }
    for (int a = 0; a < blocks; ++a)
        hf.block(a * dim, a * dim, dim, dim) +=
            ((a - k_cut) * h.omega) * CMatrix::Identity(dim, dim);

    Eigen::SelfAdjointEigenSolver<CMatrix> es(hf);
    if (es.info() != Eigen::Success)
        throw SolverError("extended_space_solve: eigensolver failed");

    // one representative per replica family: the eigenvalue inside the zone,
    // with the smallest-edge-weight states preferred if truncation noise
    // pushes extras into the window
    struct Candidate {
        double e;
        double edge;
        Eigen::Index col;
    };
    std::vector<Candidate> cands;
    const double half = 0.5 * h.omega;
    for (Eigen::Index i = 0; i < total; ++i) {
        const double e = es.eigenvalues()(i);
        if (e < -half || e >= half)
            continue;
        const auto vec = es.eigenvectors().col(i);
        const double edge = vec.segment(0, dim).squaredNorm() +
                            vec.segment((blocks - 1) * dim, dim).squaredNorm();
        cands.push_back({e, edge, i});
    }
    if (static_cast<int>(cands.size()) < dim)
        throw SolverError("extended_space_solve: fewer than dim states in the "
                          "first Brillouin zone; increase harmonic_cutoff");
    if (static_cast<int>(cands.size()) > dim) {
        std::stable_sort(cands.begin(), cands.end(),
                         [](const Candidate& a, const Candidate& b) {
                             return a.edge < b.edge;
                         });
        cands.resize(dim);
    }

    double worst_edge = 0.0;
    for (const Candidate& c : cands)
        worst_edge = std::max(worst_edge, c.edge);
    if (worst_edge > 1e-8)
        throw SolverError("extended_space_solve: edge-block population " +
                          std::to_string(worst_edge) +
                          " exceeds 1e-8; increase harmonic_cutoff");

    RVector eps_raw(dim);
    std::vector<CMatrix> comp(blocks, CMatrix::Zero(dim, dim)); // u^{(k)} per block
    for (int m = 0; m < dim; ++m) {
        eps_raw(m) = cands[m].e;
        const auto vec = es.eigenvectors().col(cands[m].col);
        for (int a = 0; a < blocks; ++a)
            comp[a].col(m) = vec.segment(a * dim, dim);
    }
    CMatrix v0_raw = CMatrix::Zero(dim, dim);
    for (int a = 0; a < blocks; ++a)
        v0_raw += comp[a];

    const std::vector<int> order = sorted_order(eps_raw, v0_raw, h.omega);
    RVector eps(dim);
    std::vector<CMatrix> comp_sorted(blocks, CMatrix::Zero(dim, dim));
    for (int m = 0; m < dim; ++m) {
        const int src = order[m];
        eps(m) = eps_raw(src);
        const Complex ph = gauge_phase(v0_raw.col(src));
        for (int a = 0; a < blocks; ++a)
            comp_sorted[a].col(m) = ph * comp[a].col(src);
    }

    FloquetSolution sol;
    sol.omega = h.omega;
    sol.quasienergies = eps;
    sol.accuracy_estimate = worst_edge;
    sol.modes.reserve(cfg.time_samples);
    const double tau = h.period();
    for (int j = 0; j < cfg.time_samples; ++j) {
        const double tj = j * tau / cfg.time_samples;
        CMatrix m = CMatrix::Zero(dim, dim);
        for (int a = 0; a < blocks; ++a)
            m += comp_sorted[a] * std::exp(I * ((a - k_cut) * h.omega * tj));
        sol.modes.push_back(std::move(m));
    }

    CVector mono_phases(dim);
    for (int m = 0; m < dim; ++m)
        mono_phases(m) = std::exp(-I * eps(m) * tau);
    sol.monodromy =
        sol.modes[0] * mono_phases.asDiagonal() * sol.modes[0].adjoint();
    fill_residuals(sol);
    return sol;
}

BranchMatch match_branches(const FloquetSolution& prev, const FloquetSolution& next) {
    if (prev.dim() != next.dim())
        throw ConfigError("match_branches: dimension mismatch");
    const int n = prev.dim();
    Eigen::MatrixXd overlap =
        (prev.modes[0].adjoint() * next.modes[0]).cwiseAbs();

    BranchMatch out;
    out.assignment.assign(n, -1);
    std::vector<bool> row_used(n, false), col_used(n, false);
    int assigned = 0;
    while (assigned < n) {
        double best = -1.0;
        int br = -1, bc = -1;
        for (int r = 0; r < n; ++r) {
            if (row_used[r])
                continue;
            for (int c = 0; c < n; ++c) {
                if (col_used[c])
                    continue;
                if (overlap(r, c) > best) {
                    best = overlap(r, c);
                    br = r;
                    bc = c;
                }
            }
        }
        if (best < 0.5)
            break;
        out.assignment[bc] = br;
        row_used[br] = true;
        col_used[bc] = true;
        out.min_overlap = std::min(out.min_overlap, best);
        ++assigned;
    }
    if (assigned < n) {
        // ambiguous region: keep the remaining branches in index order
        out.discontinuity = true;
        std::vector<int> rows, cols;
        for (int r = 0; r < n; ++r)
            if (!row_used[r])
                rows.push_back(r);
        for (int c = 0; c < n; ++c)
            if (!col_used[c])
                cols.push_back(c);
        for (size_t i = 0; i < cols.size(); ++i) {
            out.assignment[cols[i]] = rows[i];
            out.min_overlap = std::min(out.min_overlap, overlap(rows[i], cols[i]));
        }
    }
    return out;
}

} // namespace floqlab
