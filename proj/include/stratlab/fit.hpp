// Log-log least-squares power-law fits for measured decay curves.

#pragma once

#include <vector>

namespace stratlab {

struct DecayFit {
    double exponent = 0.0;   // slope of log(value) against log(x)
    double prefactor = 0.0;  // exp(intercept)
    double r_squared = 0.0;
    double max_rel_residual = 0.0;  // worst |fit - sample| / sample
    std::size_t n = 0;
};

// Requires all x, y > 0 and at least two points.
DecayFit fit_decay(const std::vector<double>& x, const std::vector<double>& y);

// Restrict to samples with x inside [x_lo, x_hi] first.
DecayFit fit_decay_window(const std::vector<double>& x, const std::vector<double>& y,
                          double x_lo, double x_hi);

}  // namespace stratlab
