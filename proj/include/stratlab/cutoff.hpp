// Radial bump functions used for dyadic decompositions and for the
// frequency windows that keep |xi| below R and the horizontal part
// |xi_h| above r.

#pragma once

namespace stratlab {

// Even bump: 1 on [-1/2, 1/2], 0 outside (-1, 1), with the classical
// exp(1 - 1/(1 - u^2)) profile (u = 2|x| - 1) on the transition band.
double bump_chi(double x);

// Annulus function phi(x) = chi(x/2) - chi(x): supported in 1/2 <= |x| <= 2,
// and sum_j phi(2^-j x) telescopes to 1 away from the endpoints.
double bump_phi(double x);

// Window value at wavenumber magnitudes (rho = |xi|, rho_h = |xi_h|):
//   w(xi) = chi(rho / R) * (1 - chi(rho_h / (2 r))).
// Equals 1 on {rho <= R/2, rho_h >= 2r}; support lies in {rho <= R, rho_h >= r}.
double window_low_high(double rho, double rho_h, double r, double R);

}  // namespace stratlab
