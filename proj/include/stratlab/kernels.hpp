// Oscillatory kernels of the wave phase b(xi) = |xi_h| / |xi| and the
// smoothing of the heat flow on low-|xi_h|-excluded frequency sets.
//
// Axisymmetry around the vertical axis and evenness in x3 reduce every
// kernel to a function of (|x_h|, |x3|); the angular integral collapses
// to a Bessel J0 factor, leaving a 2D (radius x polar angle) quadrature
// with phase-controlled panel sizes.

#pragma once

#include <array>
#include <complex>

#include "stratlab/wave.hpp"

namespace stratlab {

// phase value and Hessian spectrum of b at xi (closed form):
//   { xi3^2/(|xi_h| |xi|^3),  -(|xi_h| +- sqrt(|xi|^2 + 3 xi3^2))/(2 |xi|^3) }.
// On the equator xi3 = 0 (where grad b vanishes and the phase is
// stationary) the rank drops to 1, which sets the sigma^{-1/2} decay.
double phase_b(const std::array<double, 3>& xi);
std::array<double, 3> phase_hessian_eigs(const std::array<double, 3>& xi);

struct KernelSup {
    double sup = 0.0;
    double x_h = 0.0, x_3 = 0.0;  // where the search peaked
    long n_evals = 0;
};

// sup_x | int e^{i x.xi + i sigma b(xi)} phi1(|xi|) dxi |, phi1 a fixed
// smooth annulus bump supported in 1/2 <= |xi| <= 3.
KernelSup kernel_K0_sup(double sigma, double rel_tol = 1e-6);

// value of the kernel at one point (exposed for cross-checks)
std::complex<double> kernel_K0_value(double sigma, double x_h, double x_3,
                                     double rel_tol = 1e-8);

// Two-time damped kernel of the full wave flow over the window
// {|xi| <= 2R (smooth), |xi_h| >= r/2 (smooth)}:
//   K(x) = (2 pi)^-3 int e^{i x.xi} e^{-((nu+nu')/4)(t+t') |xi|^2}
//            e^{ i ((t-t')/eps) b(xi) - i (t-t') eps D(eps,xi) }
//            chi(|xi|/(2R)) (1 - chi(|xi_h|/r)) dxi.
KernelSup kernel_Keps_sup(const PhysicsParams& par, double t, double t_prime,
                          double r, double R, double rel_tol = 1e-6);

std::complex<double> kernel_Keps_value(const PhysicsParams& par, double t,
                                       double t_prime, double r, double R,
                                       double x_h, double x_3,
                                       double rel_tol = 1e-8);

// Worst over random band-limited trial fields of
//   ||e^{t Lap} u||_p / ( (R^3/r^4) e^{-t r^2 / 2} ||u||_p )
// for u with spectrum in {|xi| <= R, |xi_h| >= r}.
double heat_truncated_ratio(double r, double R, double t, double p,
                            std::size_t trials, unsigned seed);

}  // namespace stratlab
