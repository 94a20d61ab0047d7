// Vertical heat flow: the buoyancy limit profile depends on x3 only and
// obeys d_t theta = nu' d33 theta, solved exactly per mode by the
// multiplier exp(-nu' xi3^2 t).

#pragma once

#include <vector>

#include "stratlab/field.hpp"
#include "stratlab/grid.hpp"

namespace stratlab {

struct VerticalProfile {
    std::size_t n = 0;
    double box_length = 0.0;
    scalar_data modes;  // spectral coefficients along the vertical axis

    VerticalProfile() = default;
    VerticalProfile(std::size_t n_, double L_) : n(n_), box_length(L_), modes(n_) {}
};

// Exact solution at each requested time (not a time-stepper).
std::vector<VerticalProfile> heat1d_solve(const VerticalProfile& theta0,
                                          double nu_prime,
                                          const std::vector<double>& times);

VerticalProfile heat1d_at(const VerticalProfile& theta0, double nu_prime, double t);

// Embed as the buoyancy component of a 4-component field (modes on the
// xi_h = 0 line) / pull that line back out.
void embed_vertical(const VerticalProfile& p, SpectralField4& f);
VerticalProfile extract_vertical(const SpectralField4& f);

// Spectral derivative along x3.
VerticalProfile d3(const VerticalProfile& p);

double profile_l2(const VerticalProfile& p);  // sqrt(L) weighted, mean kept
void zero_profile_mean(VerticalProfile& p);

}  // namespace stratlab
