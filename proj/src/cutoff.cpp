#include "stratlab/cutoff.hpp"

#include <cmath>

namespace stratlab {

double bump_chi(double x) {
    const double ax = std::fabs(x);
    if (ax <= 0.5) return 1.0;
    if (ax >= 1.0) return 0.0;
    const double u = 2.0 * ax - 1.0;  // transition variable in (0, 1)
    return std::exp(1.0 - 1.0 / (1.0 - u * u));
}

double bump_phi(double x) { return bump_chi(0.5 * x) - bump_chi(x); }

double window_low_high(double rho, double rho_h, double r, double R) {
    return bump_chi(rho / R) * (1.0 - bump_chi(rho_h / (2.0 * r)));
}

}  // namespace stratlab
