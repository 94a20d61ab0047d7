#include "stratlab/phase1d.hpp"

#include <cassert>
#include <cmath>
#include <stdexcept>

namespace stratlab {

double f1_eval(double x, int order) {
    const double s = x * x + 1.0;
    const double rs = std::sqrt(s);
    const double x2 = x * x;
    switch (order) {
        case 0:
            return x / (s * rs);
        case 1:
            return (1.0 - 2.0 * x2) / (s * s * rs);
        case 2:
            return 3.0 * x * (2.0 * x2 - 3.0) / (s * s * s * rs);
        case 3:
            return -3.0 * ((8.0 * x2 - 24.0) * x2 + 3.0) / (s * s * s * s * rs);
        case 4:
            return 15.0 * x * ((8.0 * x2 - 40.0) * x2 + 15.0) /
                   (s * s * s * s * s * rs);
        default:
            throw std::invalid_argument("f1_eval: derivative order must be 0..4");
    }
}

namespace {

// a couple of Newton steps on f1(z) = y; safe whenever f1' is not tiny
// (away from the critical point), where the solve is well conditioned
double newton_polish(double z, double y) {
    for (int it = 0; it < 3; ++it) {
        const double fp = f1_eval(z, 1);
        if (std::fabs(fp) < 1e-6) break;
        z -= (f1_eval(z, 0) - y) / fp;
    }
    return z;
}

}  // namespace

CardanRoots cardan_roots(double y) {
    CardanRoots out;
    if (!(y > 0.0) || !(y < f1_max)) return out;

    // w = z^2 + 1 solves w^3 - w/y^2 + 1/y^2 = 0; with p = -1/y^2 the three
    // real roots are (2/(y sqrt3)) cos(phi/3 - 2 pi k/3),
    // phi = arccos(-(3 sqrt3 / 2) y); k = 2 gives the negative root
    const double arg = -1.5 * std::sqrt(3.0) * y;
    const double phi = std::acos(std::max(-1.0, std::min(1.0, arg)));
    const double scale = 2.0 / (y * std::sqrt(3.0));
    const double w0 = scale * std::cos(phi / 3.0);                     // large root
    const double w1 = scale * std::cos(phi / 3.0 - 2.0 * M_PI / 3.0);  // near 1

    // small root: w1 - 1 = z1^2 cancels badly for small y, where the
    // inversion of y = z - 3/2 z^3 + ... is perfectly conditioned instead
    double z1;
    if (y < 1e-4) {
        z1 = y * (1.0 + 1.5 * y * y);
    } else {
        z1 = std::sqrt(std::max(w1 - 1.0, 0.0));
    }
    double z2 = std::sqrt(std::max(w0 - 1.0, 0.0));

    out.z1 = newton_polish(z1, y);
    out.z2 = newton_polish(z2, y);
    out.valid = true;
    assert(out.z1 <= f1_argmax + 1e-12 && out.z2 >= f1_argmax - 1e-12);
    return out;
}

double asymptotic_residual(ExpansionKind kind, double arg) {
    const double sigma = std::pow(3.0, 1.25) / (2.0 * std::sqrt(2.0));
    const double fp_coef = 4.0 * std::sqrt(2.0) / std::pow(3.0, 1.25);
    const double ch = 7.0 * std::sqrt(6.0) / 16.0;  // shared h-coefficient

    switch (kind) {
        case ExpansionKind::z1_small_y: {
            const double y = arg;
            const CardanRoots r = cardan_roots(y);
            assert(r.valid);
            const double approx = y * (1.0 + 1.5 * y * y);
            return std::fabs(r.z1 - approx) / (y * y * y);
        }
        case ExpansionKind::z2_small_y: {
            const double y = arg;
            const CardanRoots r = cardan_roots(y);
            assert(r.valid);
            const double approx =
                (1.0 - 0.75 * y - (15.0 / 32.0) * y * y -
                 (77.0 / 128.0) * y * y * y) /
                std::sqrt(y);
            return std::fabs(r.z2 - approx) / std::pow(y, 2.5);
        }
        case ExpansionKind::f1p_z1_small_y: {
            const double y = arg;
            const CardanRoots r = cardan_roots(y);
            assert(r.valid);
            const double approx = 1.0 - 4.5 * y * y - (33.0 / 8.0) * y * y * y * y;
            return std::fabs(f1_eval(r.z1, 1) - approx) / std::pow(y, 4.0);
        }
        case ExpansionKind::f1p_z2_small_y: {
            const double y = arg;
            const CardanRoots r = cardan_roots(y);
            assert(r.valid);
            const double approx =
                -2.0 * std::pow(y, 1.5) * (1.0 - 0.75 * y - (27.0 / 32.0) * y * y);
            return std::fabs(f1_eval(r.z2, 1) - approx) / std::pow(y, 3.5);
        }
        case ExpansionKind::z1_near_max: {
            const double h = arg;
            const CardanRoots r = cardan_roots(f1_max - h);
            assert(r.valid);
            const double approx = f1_argmax - sigma * std::sqrt(h) + ch * h;
            return std::fabs(r.z1 - approx) / h;
        }
        case ExpansionKind::z2_near_max: {
            const double h = arg;
            const CardanRoots r = cardan_roots(f1_max - h);
            assert(r.valid);
            const double approx = f1_argmax + sigma * std::sqrt(h) + ch * h;
            return std::fabs(r.z2 - approx) / h;
        }
        case ExpansionKind::f1p_z1_near_max: {
            const double h = arg;
            const CardanRoots r = cardan_roots(f1_max - h);
            assert(r.valid);
            return std::fabs(f1_eval(r.z1, 1) - fp_coef * std::sqrt(h)) /
                   std::sqrt(h);
        }
        case ExpansionKind::f1p_z2_near_max: {
            const double h = arg;
            const CardanRoots r = cardan_roots(f1_max - h);
            assert(r.valid);
            return std::fabs(f1_eval(r.z2, 1) + fp_coef * std::sqrt(h)) /
                   std::sqrt(h);
        }
    }
    throw std::invalid_argument("asymptotic_residual: unknown expansion kind");
}

PrimeBracket inverse_prime_bracket(double h) {
    if (!(h > 0.0) || h > bracket_h0)
        throw std::invalid_argument(
            "inverse_prime_bracket: argument outside (0, 0.02]");
    PrimeBracket b;
    const double base = std::pow(3.0, 1.25) / std::sqrt(h);
    b.lower = base / 8.0;
    b.upper = base / 4.0;
    return b;
}

}  // namespace stratlab
