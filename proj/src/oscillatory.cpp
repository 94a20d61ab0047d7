#include "stratlab/oscillatory.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "stratlab/phase1d.hpp"

namespace stratlab {

namespace {

// reduced integral J(beta) = int_0^X dx / (1 + sigma (f1(x) - beta)^2);
// splitting at the level crossings (and at the critical point) hands each
// narrow resonance peak to the adaptive rule at an interval endpoint
QuadResult eval_core(double beta, double X, double sigma, double rel_tol,
                     long* evals) {
    auto f = [&](double x) {
        if (evals) ++*evals;
        const double d = f1_eval(x, 0) - beta;
        return 1.0 / (1.0 + sigma * d * d);
    };
    std::vector<double> splits;
    splits.push_back(f1_argmax);
    if (beta > 0.0 && beta < f1_max) {
        const CardanRoots r = cardan_roots(beta);
        if (r.valid) {
            splits.push_back(r.z1);
            splits.push_back(r.z2);
        }
    }
    return integrate_gk_split(f, 0.0, X, splits, 0.0, rel_tol, 48);
}

}  // namespace

IntegralValue eval_I(double alpha, double beta, double R, double sigma,
                     double rel_tol) {
    if (!(alpha > 0.0) || !(R > alpha) || !(sigma >= 0.0) || !(beta >= 0.0))
        throw std::invalid_argument(
            "eval_I: need alpha > 0, R > alpha, sigma >= 0, beta >= 0");
    // alpha scaling: I_{alpha,beta}^R(sigma) = alpha I_{1, alpha beta}^{R/alpha}
    // (sigma / alpha^2)
    const double Rr = R / alpha;
    const double X = std::sqrt(Rr * Rr - 1.0);
    const QuadResult q =
        eval_core(alpha * beta, X, sigma / (alpha * alpha), rel_tol, nullptr);
    IntegralValue out;
    out.value = alpha * q.value;
    out.error = alpha * q.error;
    out.converged = q.converged;
    return out;
}

SupResult sup_beta_I(double alpha, double R, double sigma, double rel_tol) {
    if (!(alpha > 0.0) || !(R > alpha) || !(sigma >= 0.0))
        throw std::invalid_argument("sup_beta_I: need alpha > 0, R > alpha, sigma >= 0");
    const double Rr = R / alpha;
    const double X = std::sqrt(Rr * Rr - 1.0);
    const double sig = sigma / (alpha * alpha);

    SupResult out;
    long evals = 0;
    const double coarse_tol = std::max(rel_tol, 1e-5);
    auto J = [&](double b, double tol) {
        return eval_core(b, X, sig, tol, &evals).value;
    };

    // candidate levels: zero, a uniform sweep of the attained range, and a
    // two-sided log refinement of the critical level where the degenerate
    // (width sigma^{-1/4}) crossing lives
    std::vector<double> cand;
    cand.push_back(0.0);
    for (int i = 1; i <= 80; ++i)
        cand.push_back(f1_max * static_cast<double>(i) / 80.0);
    const double h_min = std::max(1e-12, sig > 1.0 ? 0.03 / sig : 1e-3);
    for (double h = 0.45; h > h_min; h *= 0.5) {
        cand.push_back(std::max(0.0, f1_max - h));
        cand.push_back(f1_max + h);
    }
    std::sort(cand.begin(), cand.end());
    cand.erase(std::unique(cand.begin(), cand.end()), cand.end());

    std::size_t best = 0;
    double best_val = -1.0;
    std::vector<double> vals(cand.size());
    for (std::size_t i = 0; i < cand.size(); ++i) {
        vals[i] = J(cand[i], coarse_tol);
        if (vals[i] > best_val) {
            best_val = vals[i];
            best = i;
        }
    }

    // golden-section polish inside the bracket around the best sample
    double lo = cand[best > 0 ? best - 1 : 0];
    double hi = cand[best + 1 < cand.size() ? best + 1 : best];
    double b_best = cand[best];
    if (hi > lo) {
        const double gr = 0.6180339887498949;
        double x1 = hi - gr * (hi - lo);
        double x2 = lo + gr * (hi - lo);
        double v1 = J(x1, coarse_tol);
        double v2 = J(x2, coarse_tol);
        for (int it = 0; it < 70 && hi - lo > 1e-13 * (1.0 + hi); ++it) {
            if (v1 < v2) {
                lo = x1;
                x1 = x2;
                v1 = v2;
                x2 = lo + gr * (hi - lo);
                v2 = J(x2, coarse_tol);
            } else {
                hi = x2;
                x2 = x1;
                v2 = v1;
                x1 = hi - gr * (hi - lo);
                v1 = J(x1, coarse_tol);
            }
        }
        const double b_mid = 0.5 * (lo + hi);
        if (std::max(v1, v2) > best_val) {
            b_best = b_mid;
            best_val = std::max(v1, v2);
        }
    }

    out.sup = alpha * J(b_best, rel_tol);
    out.beta_at_sup = b_best / alpha;
    out.n_evals = evals;
    return out;
}

}  // namespace stratlab
