// The near-resonance measure integral
//     I_{alpha,beta}^R(sigma) = int_0^{sqrt(R^2 - alpha^2)}
//                                   dx / (1 + sigma (f_alpha(x) - beta)^2),
// f_alpha(x) = alpha x / (x^2 + alpha^2)^{3/2}, which controls how long the
// phase lingers near level beta.  Scaling reduces everything to alpha = 1:
//     I_{alpha,beta}^R(sigma) = alpha I_{1,alpha beta}^{R/alpha}(sigma/alpha^2).
// The integrand peaks where f1 crosses beta (simple crossings of width
// sigma^{-1/2}) and, for beta at the maximum of f1, a degenerate crossing
// of width sigma^{-1/4} which sets the uniform sup_beta rate.

#pragma once

#include "stratlab/quadrature.hpp"

namespace stratlab {

struct IntegralValue {
    double value = 0.0;
    double error = 0.0;
    bool converged = true;
};

// Requires alpha > 0, R > alpha, sigma >= 0, beta >= 0.
IntegralValue eval_I(double alpha, double beta, double R, double sigma,
                     double rel_tol = 1e-10);

struct SupResult {
    double sup = 0.0;
    double beta_at_sup = 0.0;
    long n_evals = 0;
};

// sup over beta >= 0 of I_{alpha,beta}^R(sigma): coarse scan of the
// critical neighborhood plus golden-section refinement.
SupResult sup_beta_I(double alpha, double R, double sigma, double rel_tol = 1e-8);

}  // namespace stratlab
