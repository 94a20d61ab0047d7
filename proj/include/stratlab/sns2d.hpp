// Stratified limit flow: horizontal velocity field advected in the
// horizontal directions only, with full 3D diffusion; x3 enters as a
// parameter.  Evolved in scalar vorticity form
//     d_t w + v_h . grad_h w = nu Lap w,      v_h = grad_h^perp Lap_h^-1 w,
// (no vortex stretching) by Strang splitting: exact viscous half steps
// around a Heun step for the advection, 2/3-rule dealiased.

#pragma once

#include <array>
#include <stdexcept>
#include <vector>

#include "stratlab/field.hpp"
#include "stratlab/grid.hpp"
#include "stratlab/transform.hpp"

namespace stratlab {

// Advective speed too fast for the step: the offending step is rejected and
// the run stops here rather than continuing on an unstable trajectory.
struct CflError : std::runtime_error {
    double cfl = 0.0;
    double t = 0.0;
    double suggested_dt = 0.0;  // largest step that would have met the limit
    CflError(double cfl_, double t_, double suggested);
};

// Horizontal Biot-Savart: vhat = (i xi2, -i xi1) what / |xi_h|^2; modes
// with xi_h = 0 carry no horizontal swirl and are set to zero.
void biot_savart_h(const Grid3& g, const scalar_data& omega,
                   std::array<scalar_data, 2>& v_h);

struct StratifiedFlowSeries {
    Grid3 grid;
    double dt = 0.0;
    std::size_t steps_per_sample = 1;
    std::vector<double> times;
    std::vector<scalar_data> omega;  // vorticity at the sampled step boundaries
    double max_cfl = 0.0;            // largest advective CFL number met
};

// March n_steps of size dt from omega0, recording every steps_per_sample
// boundaries (the initial state included).
StratifiedFlowSeries solve_sns(const Grid3& g, const scalar_data& omega0, double nu,
                               double dt, std::size_t n_steps,
                               std::size_t steps_per_sample, SpectralTransform& tr);

// One Strang step (exposed so a coupled solver can reproduce the exact
// stage fields of a recorded run).
struct SnsStepScratch {
    scalar_data omega_half, omega_star, adv, px, py, pw;
    std::array<scalar_data, 2> v_h;
};

void sns_viscous_half(const Grid3& g, double nu, double dt, scalar_data& omega);

// advection tendency -dealias(v_h . grad_h omega) at the given state
void sns_advection(const Grid3& g, const scalar_data& omega, SpectralTransform& tr,
                   SnsStepScratch& scratch, scalar_data& tendency, double* sup_vh);

void sns_strang_step(const Grid3& g, double nu, double dt, scalar_data& omega,
                     SpectralTransform& tr, SnsStepScratch& scratch, double* cfl);

}  // namespace stratlab
