// Convergence experiment: ill-prepared data generation, the epsilon sweep
// forming the difference against the stratified limit, norm tables and
// fitted decay rates.

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "stratlab/fit.hpp"
#include "stratlab/heat1d.hpp"
#include "stratlab/solver.hpp"

namespace stratlab {

struct InitialDataSpec {
    std::uint64_t seed = 1;
    double spectrum_peak = 3.0;   // shell |k| ~ peak carries the energy
    double amplitude_strat = 1.0; // L2 norm of the horizontal-swirl part
    double amplitude_osc = 1.0;   // L2 norm of the complement
    std::vector<complex_t> theta_profile;  // vertical buoyancy modes (index = freq)
    bool exclude_degenerate_line = true;   // zero the xi_h = 0 modes of U0
};

struct InitialData {
    SpectralField4 U0;
    std::array<scalar_data, 2> v_tilde0_h;  // horizontal part of the swirl piece
    VerticalProfile theta_tilde0;
};

// Random-phase divergence-free data on a spectral shell around the peak,
// rescaled so the swirl / complement parts have the requested L2 norms
// exactly.  Same seed, same grid -> bit-identical output.
InitialData build_initial_data(const InitialDataSpec& spec, const Grid3& g);

enum class RateRegime { nu_distinct, nu_equal };

// Guaranteed lower bound on the decay exponent of the oscillating part in
// L^2_t L^q:  K(q) = min(6/q - 1, 1 - 2/q)^2 / (6/q - 1), divided by 640
// (distinct diffusivities) or 544 (equal).  Requires 2 < q < 6.
double theoretical_rate(double q, RateRegime regime);

// global-in-time equal-diffusivity exponent 3/16
double theoretical_rate_global_equal();

struct SweepRow {
    double epsilon = 0.0;
    double q = 0.0;
    double t_final = 0.0;
    double norm_osc = 0.0;    // || osc part ||_{L^2_t L^q}
    double norm_strat = 0.0;  // || swirl part ||_{L^2_t L^q}
    bool admissible = true;   // eps <= eps_1 when nu != nu'
};

struct SweepResult {
    std::vector<double> epsilons;
    std::vector<double> q_list;
    std::vector<SweepRow> rows;
    std::vector<DecayFit> fits;          // per q, over admissible eps only
    std::vector<double> theoretical;     // per q
    std::vector<std::string> checkpoint_paths;
    bool complete = true;                // false if a run aborted (partial rows kept)
};

struct SweepConfig {
    Grid3 grid;
    PhysicsParams physics;          // epsilon field ignored (swept)
    SolverConfig solver;
    double trunc_m = 1.0 / 320.0;   // window exponents for the admissibility flag
    double trunc_M = 1.0 / 320.0;
    std::string checkpoint_dir;     // empty -> no checkpoints written
};

SweepResult run_sweep(const std::vector<double>& eps_list, const InitialDataSpec& ic,
                      const SweepConfig& cfg, const std::vector<double>& q_list);

// Instantaneous L^q of the oscillating part along a recorded trajectory
// plus the running L^2_t aggregate.
struct OscSeries {
    SpaceTimeSeries instantaneous;
    std::vector<double> running_l2t;
};

OscSeries osc_norm_series(const Trajectory& traj, double q);

// Buoyancy relabeling between the penalized system and the full-density
// formulation: rho = rho_ref - x3/(eps^2 kappa^2) + theta/(eps kappa^2).
// The affine background is carried as metadata; only the fluctuation is a
// periodic field.  forward then backward is the identity.
struct BuoyancyMap {
    double kappa = 1.0;
    double rho_ref = 0.0;
    double epsilon = 0.1;
};

SpectralField4 to_density_form(const SpectralField4& U, const BuoyancyMap& map);
SpectralField4 from_density_form(const SpectralField4& V, const BuoyancyMap& map);

}  // namespace stratlab
