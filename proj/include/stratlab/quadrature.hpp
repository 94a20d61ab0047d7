// Adaptive Gauss-Kronrod quadrature (7-point Gauss / 15-point Kronrod
// pair, bisection refinement), plus fixed-order Gauss-Legendre panels for
// smooth oscillatory integrands.

#pragma once

#include <complex>
#include <functional>
#include <vector>

namespace stratlab {

struct QuadResult {
    double value = 0.0;
    double error = 0.0;   // accumulated Kronrod error estimate
    long evals = 0;
    bool converged = true;
};

QuadResult integrate_gk(const std::function<double(double)>& f, double a, double b,
                        double abs_tol, double rel_tol, int max_depth = 48);

// Splits [a, b] at the given interior points first, then adapts each piece.
QuadResult integrate_gk_split(const std::function<double(double)>& f, double a,
                              double b, const std::vector<double>& splits,
                              double abs_tol, double rel_tol, int max_depth = 48);

// Composite fixed Gauss-Legendre rule: n_panels panels, 8 nodes each.
std::complex<double> integrate_gl8(
    const std::function<std::complex<double>(double)>& f, double a, double b,
    int n_panels);

}  // namespace stratlab
