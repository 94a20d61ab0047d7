// Scalar phase profile f1(x) = x / (x^2 + 1)^{3/2} and its analysis:
// derivatives, the two preimages of a level y in (0, f1max) in closed
// trigonometric (Cardano) form, and the expansion residuals used to
// validate the small-y and near-critical asymptotics.
//
// f1 rises from 0 to its single maximum 2/(3 sqrt 3) at x = 1/sqrt 2,
// then decays; z1(y) < 1/sqrt 2 < z2(y) denote the two preimages.

#pragma once

#include <array>

namespace stratlab {

inline constexpr double f1_max = 0.38490017945975050986;   // 2/(3 sqrt 3)
inline constexpr double f1_argmax = 0.70710678118654752440; // 1/sqrt 2

// derivative order 0..4
double f1_eval(double x, int order);

struct CardanRoots {
    double z1 = 0.0;  // ascending-branch preimage
    double z2 = 0.0;  // descending-branch preimage
    bool valid = false;
};

// Solves f1(z) = y for 0 < y < f1_max.  The substitution w = z^2 + 1 turns
// the equation into the depressed cubic w^3 - w/y^2 + 1/y^2 = 0, solved by
// the cosine parametrization (three real roots; the negative one is
// discarded).  See e.g. planetmath "trigonometric cubic formula".
CardanRoots cardan_roots(double y);

enum class ExpansionKind {
    z1_small_y,        // z1 = y (1 + 3/2 y^2) + O(y^5)
    z2_small_y,        // z2 = y^{-1/2} (1 - 3/4 y - 15/32 y^2 - 77/128 y^3) + ...
    f1p_z1_small_y,    // f1'(z1) = 1 - 9/2 y^2 - 33/8 y^4 + ...
    f1p_z2_small_y,    // f1'(z2) = -2 y^{3/2} (1 - 3/4 y - 27/32 y^2) + ...
    z1_near_max,       // z1(f1max - h) = 1/sqrt2 - 3^{5/4}/(2 sqrt2) sqrt h + c h + ...
    z2_near_max,       // z2(f1max - h) = 1/sqrt2 + 3^{5/4}/(2 sqrt2) sqrt h + c h + ...
    f1p_z1_near_max,   // f1'(z1(f1max - h)) =  (4 sqrt2 / 3^{5/4}) sqrt h + O(h)
    f1p_z2_near_max,   // f1'(z2(f1max - h)) = -(4 sqrt2 / 3^{5/4}) sqrt h + O(h)
};

// |exact - truncated expansion|, normalized by the scale of the last
// retained order.  Decreases toward zero along a decreasing argument
// sequence, at the rate of the first omitted order.
double asymptotic_residual(ExpansionKind kind, double arg);

// Lower/upper bracket for 1/|f1'(z_k(f1max - h))|:
//   (3^{5/4}/8) h^{-1/2}  <=  1/|f1'|  <=  (3^{5/4}/4) h^{-1/2}
// valid for 0 < h <= bracket_h0.
struct PrimeBracket {
    double lower = 0.0, upper = 0.0;
};
PrimeBracket inverse_prime_bracket(double h);
inline constexpr double bracket_h0 = 0.02;

}  // namespace stratlab
