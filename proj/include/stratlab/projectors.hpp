// Mode-wise projectors: Leray (divergence removal), the horizontal-swirl
// ("stratified") projector, and expansion on the wave eigenbasis.
//
// The stratified part of a 4-component field keeps, per mode, the component
// along (-xi2, xi1, 0, 0): horizontal, horizontally divergence-free velocity
// with no vertical velocity and no buoyancy.  Its complement is the
// oscillating part.

#pragma once

#include <array>

#include "stratlab/field.hpp"
#include "stratlab/wave.hpp"

namespace stratlab {

// Remove the gradient part of the velocity components (theta untouched):
// vhat -= xi (xi . vhat) / |xi|^2.  The mean velocity passes through.
void leray_project(SpectralField4& f);

// max over modes of |xi . vhat| / max(1, |xi|) (diagnostic)
double divergence_defect(const SpectralField4& f);

// horizontal curl: omega_hat = i (xi1 fhat2 - xi2 fhat1)
void horizontal_vorticity(const SpectralField4& f, scalar_data& omega);

struct StratOscSplit {
    SpectralField4 stratified;
    SpectralField4 oscillating;
};

StratOscSplit split_stratified_osc(const SpectralField4& f);

// In-place stratified projector (the oscillating part is f - P2 f).
void stratified_project(SpectralField4& f);

struct WaveProjection {
    SpectralField4 part;    // a_k(xi) V_k(xi) over modes
    double max_cond = 1.0;  // worst conditioning met in the basis solve
};

// Component of f along eigenvector k in {2, 3, 4}.  Requires f divergence
// free.  For nu != nu' the (V3, V4) pair is oblique and the expansion
// solves a 2x2 system per mode; cond reports its conditioning.
WaveProjection wave_project(const SpectralField4& f, const PhysicsParams& par, int k);

}  // namespace stratlab
