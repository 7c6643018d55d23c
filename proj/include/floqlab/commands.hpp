#pragma once

#include <string>

#include "floqlab/run_config.hpp"

namespace floqlab {

struct CommandOptions {
    int workers = 1;     // concurrent sweep evaluations; output is identical at any count
    bool strict = false; // surface symmetry-rule inapplicability as an error
};

/// Quasienergy sweep: CSV `f_over_omega,branch,eps_over_omega`, with branches
/// followed continuously across the drive grid.
std::string cmd_quasienergies(const RunConfig& cfg, const CommandOptions& opt = {});

/// Susceptibility sweep: CSV
/// `f_over_omega,omega_p_over_omega,band,re_chi,im_chi,abs_chi,log10_abs_chi`,
/// rows ordered drive-amplitude outer, probe-frequency inner, band innermost.
std::string cmd_susceptibility(const RunConfig& cfg, const CommandOptions& opt = {});

/// Dynamical dipole elements: CSV `f_over_omega,n,mu,nu,re_v,im_v,abs_v` for
/// |n| up to the response m_cutoff.
std::string cmd_dipoles(const RunConfig& cfg, const CommandOptions& opt = {});

/// Symmetry analysis at the first drive-grid point: JSON report covering
/// every declared symmetry plus the two-symmetry transparency check.
std::string cmd_symmetry_report(const RunConfig& cfg, const CommandOptions& opt = {});

/// Dark-state scan: CSV `f_over_omega,mu,nu,n,abs_v_over_max` for every
/// element with |n| up to the response m_cutoff, for bracketing accidental
/// zeros along the sweep.
std::string cmd_dark_scan(const RunConfig& cfg, const CommandOptions& opt = {});

} // namespace floqlab
