// Residual forcing exerted by a horizontal limit flow on the full system.
//
// A flow (v_h(x_h, x3), 0, theta(x3)) fails to solve the projected
// primitive equations by the Leray projection of its padded 2D pressure
// gradient G = P(grad_h pi, 0, 0), where -Lap_h pi = q and
// q = sum_{i,j<=2} d_i d_j (v^i v^j).  Mode-wise, with Fq the transform
// of q:
//     G1 = +i xi1 xi3^2 Fq / (|xi|^2 |xi_h|^2)
//     G2 = +i xi2 xi3^2 Fq / (|xi|^2 |xi_h|^2)
//     G3 = -i xi3       Fq / |xi|^2
//     G4 = 0,
// zero on the xi = 0 and xi_h = 0 modes.  G is divergence free, carries
// no horizontal swirl, and vanishes when v_h does not depend on x3.

#pragma once

#include <array>

#include "stratlab/field.hpp"
#include "stratlab/grid.hpp"
#include "stratlab/transform.hpp"

namespace stratlab {

// q = sum_{i,j<=2} d_i d_j (v^i v^j), products dealiased.
void horizontal_pressure_source(const Grid3& g, const std::array<scalar_data, 2>& v_h,
                                SpectralTransform& tr, scalar_data& q);

SpectralField4 compute_gtilde(const Grid3& g, const std::array<scalar_data, 2>& v_h,
                              SpectralTransform& tr);

// Same field from a precomputed source q (cheap path for solver stages).
void gtilde_from_source(const Grid3& g, const scalar_data& q, SpectralField4& out);

}  // namespace stratlab
