#include "floqlab/commands.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <functional>
#include <string>
#include <thread>
#include <vector>

#include <json.hpp>

#include "floqlab/csv.hpp"
#include "floqlab/dipole.hpp"
#include "floqlab/errors.hpp"
#include "floqlab/response.hpp"
#include "floqlab/symmetry.hpp"

namespace floqlab {

namespace {

void require_output(const RunConfig& cfg, const char* artifact) {
    if (!cfg.allows(artifact))
        throw ConfigError(std::string("run config: outputs does not include '") + artifact + "'");
}

// Runs body(0..n-1), possibly concurrently. Results must be written into
// per-index slots by the body; the first failing index (in index order, not
// completion order) is rethrown, so behavior does not depend on the worker
// count.
void parallel_for(int n, int workers, const std::function<void(int)>& body) {
    if (n <= 0) return;
    workers = std::max(1, std::min(workers, n));
    if (workers == 1) {
        for (int i = 0; i < n; ++i) body(i);
        return;
    }
    std::atomic<int> next{0};
    std::vector<std::exception_ptr> errors(n);
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (int w = 0; w < workers; ++w) {
        pool.emplace_back([&] {
            while (true) {
                const int i = next.fetch_add(1, std::memory_order_relaxed);
                if (i >= n) return;
                try {
                    body(i);
                } catch (...) {
                    errors[i] = std::current_exception();
                }
            }
        });
    }
    for (std::thread& t : pool) t.join();
    for (int i = 0; i < n; ++i)
        if (errors[i]) std::rethrow_exception(errors[i]);
}

// Rethrows library errors with the failing grid point in the message,
// preserving the error type (and therefore the exit code).
template <typename Fn>
void with_point_context(double f_over_omega, Fn&& fn) {
    const auto prefix = [&](const char* what) {
        return "at drive point f/omega = " + format_double(f_over_omega) + ": " + what;
    };
    try {
        fn();
    } catch (const ConfigError& e) {
        throw ConfigError(prefix(e.what()));
    } catch (const SolverError& e) {
        throw SolverError(prefix(e.what()));
    } catch (const SymmetryError& e) {
        throw SymmetryError(prefix(e.what()));
    } catch (const InapplicabilityError& e) {
        throw InapplicabilityError(prefix(e.what()));
    }
}

Populations make_populations(const RunConfig& cfg, const FloquetSolution& sol) {
    const PopulationSpec& spec = cfg.response.populations;
    if (spec.source == PopulationSpec::Source::FloquetGibbs)
        return floquet_gibbs(sol, spec.beta / sol.omega);
    if (static_cast<int>(spec.values.size()) != sol.dim())
        throw ConfigError("run config: field 'response.populations.values' lists " +
                          std::to_string(spec.values.size()) + " populations for a model with " +
                          std::to_string(sol.dim()) + " states");
    Populations pops;
    pops.values = Eigen::Map<const RVector>(spec.values.data(),
                                            static_cast<Eigen::Index>(spec.values.size()));
    pops.validate();
    return pops;
}

std::string join_rows(const std::string& header, const std::vector<std::string>& slots) {
    std::size_t total = header.size() + 1;
    for (const std::string& s : slots) total += s.size();
    std::string out;
    out.reserve(total);
    out += header;
    out += '\n';
    for (const std::string& s : slots) out += s;
    return out;
}

} // namespace

std::string cmd_quasienergies(const RunConfig& cfg, const CommandOptions& opt) {
    cfg.validate();
    require_output(cfg, "quasienergies");
    const std::vector<double> grid = cfg.drive.points();
    const int n = static_cast<int>(grid.size());

    std::vector<FloquetSolution> sols(n);
    parallel_for(n, opt.workers, [&](int i) {
        with_point_context(grid[i], [&] {
            FloquetSolution sol =
                floquet_solve(build_model(cfg.model, grid[i]).hamiltonian, cfg.solver);
            sol.modes.resize(1); // only u(0) is needed for branch matching
            sols[i] = std::move(sol);
        });
    });

    const int dim = sols[0].dim();
    std::vector<int> column_of_branch(dim);
    for (int b = 0; b < dim; ++b) column_of_branch[b] = b;

    std::string out = "f_over_omega,branch,eps_over_omega\n";
    std::vector<int> inverse(dim);
    for (int i = 0; i < n; ++i) {
        if (i > 0) {
            const BranchMatch match = match_branches(sols[i - 1], sols[i]);
            for (int nu = 0; nu < dim; ++nu) inverse[match.assignment[nu]] = nu;
            for (int b = 0; b < dim; ++b) column_of_branch[b] = inverse[column_of_branch[b]];
        }
        for (int b = 0; b < dim; ++b) {
            out += format_double(grid[i]);
            out += ',';
            out += std::to_string(b);
            out += ',';
            out += format_double(sols[i].quasienergies(column_of_branch[b]) / sols[i].omega);
            out += '\n';
        }
    }
    return out;
}

std::string cmd_susceptibility(const RunConfig& cfg, const CommandOptions& opt) {
    cfg.validate();
    require_output(cfg, "susceptibility");
    const std::vector<double> fs = cfg.drive.points();
    const std::vector<double> omega_ps = cfg.probe.points();
    const std::vector<int>& bands = cfg.response.bands;
    const int n = static_cast<int>(fs.size());

    std::vector<std::string> slots(n);
    parallel_for(n, opt.workers, [&](int i) {
        with_point_context(fs[i], [&] {
            const ModelBundle bundle = build_model(cfg.model, fs[i]);
            const FloquetSolution sol = floquet_solve(bundle.hamiltonian, cfg.solver);
            const DipoleSet ds =
                dipole_elements(sol, bundle.probe, cfg.response.dipole_harmonics);
            const Populations pops = make_populations(cfg, sol);
            ResponseConfig rc;
            rc.gamma = cfg.response.gamma * sol.omega;
            rc.lambda = cfg.response.lambda * bundle.probe.coupling;
            rc.m_cutoff = cfg.response.m_cutoff;

            std::vector<double> probe_grid(omega_ps.size());
            for (std::size_t p = 0; p < omega_ps.size(); ++p)
                probe_grid[p] = omega_ps[p] * sol.omega;

            std::vector<ResponseSpectrum> spectra;
            spectra.reserve(bands.size());
            for (const int band : bands)
                spectra.push_back(susceptibility(ds, sol, pops, rc, band, probe_grid));

            const std::string f_cell = format_double(fs[i]);
            std::string rows;
            for (std::size_t p = 0; p < omega_ps.size(); ++p) {
                for (std::size_t b = 0; b < bands.size(); ++b) {
                    const Complex chi = spectra[b].chi[p];
                    const double abs_chi = std::abs(chi);
                    rows += f_cell;
                    rows += ',';
                    rows += format_double(omega_ps[p]);
                    rows += ',';
                    rows += std::to_string(bands[b]);
                    rows += ',';
                    rows += format_double(chi.real());
                    rows += ',';
                    rows += format_double(chi.imag());
                    rows += ',';
                    rows += format_double(abs_chi);
                    rows += ',';
                    rows += format_double(log10_clamped(abs_chi));
                    rows += '\n';
                }
            }
            slots[i] = std::move(rows);
        });
    });
    return join_rows("f_over_omega,omega_p_over_omega,band,re_chi,im_chi,abs_chi,log10_abs_chi",
                     slots);
}

std::string cmd_dipoles(const RunConfig& cfg, const CommandOptions& opt) {
    cfg.validate();
    require_output(cfg, "dipoles");
    const std::vector<double> fs = cfg.drive.points();
    const int n = static_cast<int>(fs.size());

    std::vector<std::string> slots(n);
    parallel_for(n, opt.workers, [&](int i) {
        with_point_context(fs[i], [&] {
            const ModelBundle bundle = build_model(cfg.model, fs[i]);
            const FloquetSolution sol = floquet_solve(bundle.hamiltonian, cfg.solver);
            const DipoleSet ds =
                dipole_elements(sol, bundle.probe, cfg.response.dipole_harmonics);
            const int dim = ds.dim();
            const std::string f_cell = format_double(fs[i]);
            std::string rows;
            for (int h = -cfg.response.m_cutoff; h <= cfg.response.m_cutoff; ++h) {
                for (int mu = 0; mu < dim; ++mu) {
                    for (int nu = 0; nu < dim; ++nu) {
                        const Complex v = ds.value(h, mu, nu);
                        rows += f_cell;
                        rows += ',';
                        rows += std::to_string(h);
                        rows += ',';
                        rows += std::to_string(mu);
                        rows += ',';
                        rows += std::to_string(nu);
                        rows += ',';
                        rows += format_double(v.real());
                        rows += ',';
                        rows += format_double(v.imag());
                        rows += ',';
                        rows += format_double(std::abs(v));
                        rows += '\n';
                    }
                }
            }
            slots[i] = std::move(rows);
        });
    });
    return join_rows("f_over_omega,n,mu,nu,re_v,im_v,abs_v", slots);
}

std::string cmd_dark_scan(const RunConfig& cfg, const CommandOptions& opt) {
    cfg.validate();
    require_output(cfg, "dark_scan");
    const std::vector<double> fs = cfg.drive.points();
    const int n = static_cast<int>(fs.size());

    std::vector<std::string> slots(n);
    parallel_for(n, opt.workers, [&](int i) {
        with_point_context(fs[i], [&] {
            const ModelBundle bundle = build_model(cfg.model, fs[i]);
            const FloquetSolution sol = floquet_solve(bundle.hamiltonian, cfg.solver);
            const DipoleSet ds =
                dipole_elements(sol, bundle.probe, cfg.response.dipole_harmonics);
            const int dim = ds.dim();
            const std::string f_cell = format_double(fs[i]);
            std::string rows;
            for (int mu = 0; mu < dim; ++mu) {
                for (int nu = 0; nu < dim; ++nu) {
                    for (int h = -cfg.response.m_cutoff; h <= cfg.response.m_cutoff; ++h) {
                        const double ratio = ds.max_element > 0.0
                                                 ? std::abs(ds.value(h, mu, nu)) / ds.max_element
                                                 : 0.0;
                        rows += f_cell;
                        rows += ',';
                        rows += std::to_string(mu);
                        rows += ',';
                        rows += std::to_string(nu);
                        rows += ',';
                        rows += std::to_string(h);
                        rows += ',';
                        rows += format_double(ratio);
                        rows += '\n';
                    }
                }
            }
            slots[i] = std::move(rows);
        });
    });
    return join_rows("f_over_omega,mu,nu,n,abs_v_over_max", slots);
}

std::string cmd_symmetry_report(const RunConfig& cfg, const CommandOptions& opt) {
    cfg.validate();
    require_output(cfg, "symmetry_report");
    using nlohmann::ordered_json;

    const double f = cfg.drive.start;
    ordered_json doc;
    with_point_context(f, [&] {
        const ModelBundle bundle = build_model(cfg.model, f);
        const FloquetSolution sol = floquet_solve(bundle.hamiltonian, cfg.solver);
        const DipoleSet ds = dipole_elements(sol, bundle.probe, cfg.response.dipole_harmonics);
        const int n_range = std::min(cfg.response.m_cutoff, ds.harmonics);
        const double tau = sol.period();

        doc["model"] = cfg.model.name;
        doc["f_over_omega"] = f;
        doc["dim"] = sol.dim();
        doc["basis_labels"] = bundle.basis_labels;
        {
            std::vector<double> eps(sol.dim());
            for (int m = 0; m < sol.dim(); ++m) eps[m] = sol.quasienergies(m) / sol.omega;
            doc["quasienergies_over_omega"] = eps;
        }

        doc["symmetries"] = ordered_json::array();
        std::vector<const SymmetrySpec*> verified_phs;
        for (const SymmetrySpec& s : bundle.symmetries) {
            const SymmetryReport report =
                analyze_symmetry(bundle.hamiltonian, s, sol, ds, n_range);
            if (opt.strict && s.kind == SymmetryKind::PHS && report.verified &&
                !report.dark_rule_applicable)
                throw InapplicabilityError(report.note);
            if (s.kind == SymmetryKind::PHS && report.verified)
                verified_phs.push_back(&s);

            ordered_json entry;
            entry["kind"] = to_string(s.kind);
            entry["t_shift_over_tau"] = s.t_shift / tau;
            entry["alpha_v"] = s.alpha_v;
            if (s.kind == SymmetryKind::RS) entry["n_fold"] = s.n_fold;
            entry["verified"] = report.verified;
            entry["max_residual"] = report.max_residual;
            if (!report.rotation_labels.empty()) entry["rotation_labels"] = report.rotation_labels;
            if (!report.pairs.empty()) {
                ordered_json pairs = ordered_json::array();
                for (const auto& [a, b] : report.pairs) pairs.push_back({a, b});
                entry["pairs"] = pairs;
            }
            entry["dark_rule_applicable"] = report.dark_rule_applicable;
            if (!report.predicted_dark.empty()) {
                ordered_json dark = ordered_json::array();
                for (std::size_t d = 0; d < report.predicted_dark.size(); ++d) {
                    const DarkPrediction& p = report.predicted_dark[d];
                    dark.push_back({{"mu", p.mu},
                                    {"nu", p.nu},
                                    {"n", p.n},
                                    {"measured_ratio", report.dark_ratios[d]}});
                }
                entry["predicted_dark"] = dark;
            }
            if (!report.vanishing_bands.empty())
                entry["vanishing_bands"] =
                    std::vector<int>(report.vanishing_bands.begin(), report.vanishing_bands.end());
            if (report.reality_residual >= 0.0)
                entry["reality_residual"] = report.reality_residual;
            if (!report.note.empty()) entry["note"] = report.note;
            doc["symmetries"].push_back(std::move(entry));
        }

        ordered_json sit;
        if (verified_phs.size() >= 2) {
            try {
                const SitReport report = sit_check(bundle.hamiltonian, *verified_phs[0],
                                                   *verified_phs[1], sol, ds, n_range);
                sit["applicable"] = true;
                sit["doublet"] = {report.doublet.first, report.doublet.second};
                sit["pair_identity_residual"] = report.pair_identity_residual;
                ordered_json bands = ordered_json::array();
                for (int band = -n_range; band <= n_range; ++band) {
                    bool all_cancel = true;
                    for (const SitBandPhase& phase : report.phases)
                        if (phase.band == band && !phase.cancels) all_cancel = false;
                    bands.push_back({{"band", band}, {"contributions_cancel", all_cancel}});
                }
                sit["bands"] = std::move(bands);
            } catch (const InapplicabilityError& e) {
                if (opt.strict) throw;
                sit["applicable"] = false;
                sit["note"] = e.what();
            }
        } else {
            sit["applicable"] = false;
            sit["note"] = "needs two distinct verified particle-hole symmetries";
        }
        doc["sit"] = std::move(sit);
    });
    return doc.dump(2) + "\n";
}

} // namespace floqlab
