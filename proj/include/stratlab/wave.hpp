// Per-mode linear algebra of the rotating/stratified wave operator.
//
// For each wavenumber xi the linearized, Leray-projected generator is the
// real 4x4 matrix  M(xi) = -nu |xi|^2 P_vel - nu' |xi|^2 P_theta coupling
// the divergence-free velocity modes to the buoyancy through the 1/eps
// skew term.  On the invariant 3-space {velocity . xi = 0} + {theta} its
// spectrum is known in closed form:
//     lambda_2      = -nu |xi|^2                       (horizontal swirl)
//     lambda_{3,4}  = -((nu+nu')/2) |xi|^2 +- i (|xi_h|/(eps |xi|)) sqrt(1 - s^2)
// with the dimensionless detuning s = (nu - nu') eps |xi|^3 / (2 |xi_h|).
// For s^2 > 1 the pair turns real (overdamped); for xi_h = 0 the block
// decouples; the zero mode rotates (v3, theta) at rate 1/eps.

#pragma once

#include <array>
#include <complex>

#include "stratlab/field.hpp"
#include "stratlab/grid.hpp"

namespace stratlab {

struct PhysicsParams {
    double nu = 0.05;        // velocity viscosity
    double nu_prime = 0.05;  // buoyancy diffusivity
    double epsilon = 0.1;    // penalization parameter
};

using vec4c = std::array<complex_t, 4>;
using mat4d = std::array<std::array<double, 4>, 4>;

// Dense symbol of the projected generator at one mode (diffusion composed
// with the Leray projector plus the 1/eps skew coupling).  xi = physical
// wavenumber; requires |xi| > 0.
mat4d wave_matrix(const std::array<double, 3>& xi, const PhysicsParams& par);

enum class ModeRegime {
    generic,        // xi_h != 0, s^2 < 1, nu != nu'
    equal_visc,     // xi_h != 0, nu == nu' (orthonormal wave basis)
    overdamped,     // xi_h != 0, s^2 >= 1 (real spectrum, flagged fallback)
    vertical_line,  // xi_h == 0, xi != 0: diagonal heat factors
    zero_mode,      // xi == 0: pure (v3, theta) rotation at rate 1/eps
};

ModeRegime classify_mode(const std::array<double, 3>& xi, const PhysicsParams& par);

struct ModeEigensystem {
    ModeRegime regime = ModeRegime::generic;
    std::array<complex_t, 4> lambda{};  // lambda[0] unused (gradient direction)
    vec4c V2{}, V3{}, V4{};             // unit eigenvectors (V3, V4 wave pair)
    double s = 0.0;                     // detuning parameter
    double eta = 0.0;                   // |xi_h| / (eps |xi|)
    double cond = 1.0;                  // conditioning of the (V2, V3, V4) basis
};

// Closed-form eigensystem off the degenerate lines.  Throws std::domain_error
// for xi = 0 (singular mode) and xi_h = 0 (V2 and the wave pair undefined);
// those modes evolve by explicit heat/rotation factors instead, see
// linear_flow.  The overdamped branch diagonalizes the coupled 2x2 block by
// the quadratic formula and is flagged; rate experiments exclude it.
ModeEigensystem eigen_closed_form(const std::array<double, 3>& xi,
                                  const PhysicsParams& par);

// Dispersive frequency correction D with
//   lambda_3 = -((nu+nu')/2)|xi|^2 + i |xi_h|/(eps |xi|) - i eps D(eps, xi),
// computed algebraically as (eta/eps) s^2 / (1 + sqrt(1 - s^2)) — the closed
// form of the first-order Taylor remainder of sqrt(1 - s^2) — never by
// subtracting nearby eigenvalues.  Requires s^2 <= 1.
double correction_term(const std::array<double, 3>& xi, const PhysicsParams& par);

// Largest eps for which every mode in the window {|xi| <= R, |xi_h| >= r}
// with r = eps^m, R = eps^-M stays oscillatory (constant 2) or keeps
// s^2 <= 1/2 (constant sqrt(2)).  Returns +inf for nu == nu' (no threshold
// needed); throws std::invalid_argument unless 3M + m < 1.
double epsilon_threshold(double nu, double nu_prime, double m, double M,
                         double constant);

struct TruncationWindow {
    double r = 0.0;  // keep |xi_h| >= r (smooth roll-off below 2r)
    double R = 0.0;  // keep |xi| <= R (smooth roll-off above R/2)
};

// Multiply f by the smooth window; support of the result lies inside
// {|xi| <= R, |xi_h| >= r} exactly.
void freq_truncate(SpectralField4& f, const TruncationWindow& w);
void freq_truncate(const Grid3& g, scalar_data& f, const TruncationWindow& w);

}  // namespace stratlab
