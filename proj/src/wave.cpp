#include "stratlab/wave.hpp"

#include <cassert>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "stratlab/cutoff.hpp"

namespace stratlab {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

}  // namespace

mat4d wave_matrix(const std::array<double, 3>& xi, const PhysicsParams& par) {
    const double k2 = xi[0] * xi[0] + xi[1] * xi[1] + xi[2] * xi[2];
    assert(k2 > 0.0);
    mat4d m{};
    // velocity block: diffusion composed with the projector, -nu |xi|^2 (I - xi xi^T/|xi|^2)
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
            m[i][j] = -par.nu * k2 * ((i == j ? 1.0 : 0.0) - xi[i] * xi[j] / k2);
    // buoyancy force -(1/eps) P(theta e3): column 4 is -(1/eps) times the
    // projected vertical unit vector
    m[0][3] = xi[0] * xi[2] / (par.epsilon * k2);
    m[1][3] = xi[1] * xi[2] / (par.epsilon * k2);
    m[2][3] = -(xi[0] * xi[0] + xi[1] * xi[1]) / (par.epsilon * k2);
    // buoyancy transport (1/eps) v3 and diffusion
    m[3][2] = 1.0 / par.epsilon;
    m[3][3] = -par.nu_prime * k2;
    return m;
}

ModeRegime classify_mode(const std::array<double, 3>& xi,
                         const PhysicsParams& par) {
    const double kh2 = xi[0] * xi[0] + xi[1] * xi[1];
    const double k2 = kh2 + xi[2] * xi[2];
    if (k2 == 0.0) return ModeRegime::zero_mode;
    if (kh2 == 0.0) return ModeRegime::vertical_line;
    if (par.nu == par.nu_prime) return ModeRegime::equal_visc;
    const double s =
        (par.nu - par.nu_prime) * par.epsilon * k2 * std::sqrt(k2) / (2.0 * std::sqrt(kh2));
    return s * s < 1.0 ? ModeRegime::generic : ModeRegime::overdamped;
}

ModeEigensystem eigen_closed_form(const std::array<double, 3>& xi,
                                  const PhysicsParams& par) {
    ModeEigensystem sys;
    const double eps = par.epsilon;
    const double kh2 = xi[0] * xi[0] + xi[1] * xi[1];
    const double k2 = kh2 + xi[2] * xi[2];

    if (k2 == 0.0) throw std::domain_error("eigen_closed_form: singular mode xi = 0");
    if (kh2 == 0.0)
        throw std::domain_error(
            "eigen_closed_form: degenerate line xi_h = 0 (swirl and wave "
            "directions undefined; modes there evolve by heat factors)");

    const double kh = std::sqrt(kh2);
    const double k = std::sqrt(k2);
    const double eta = kh / (eps * k);
    const double s = (par.nu - par.nu_prime) * eps * k2 * k / (2.0 * kh);
    sys.eta = eta;
    sys.s = s;

    // swirl mode: horizontal, divergence-free, no vertical or buoyancy part
    sys.lambda[1] = complex_t(-par.nu * k2);
    sys.V2 = {complex_t(-xi[1] / kh), complex_t(xi[0] / kh), complex_t(0.0),
              complex_t(0.0)};

    // orthonormal frame of the coupled 2-space: the wave velocity direction
    // and the buoyancy axis
    const vec4c e_w = {complex_t(xi[0] * xi[2] / (k * kh)),
                       complex_t(xi[1] * xi[2] / (k * kh)),
                       complex_t(-kh / k), complex_t(0.0)};
    const double half_trace = 0.5 * (par.nu + par.nu_prime) * k2;

    complex_t z3, z4;
    if (s == 0.0) {
        sys.regime = ModeRegime::equal_visc;
        sys.lambda[2] = complex_t(-half_trace, eta);
        sys.lambda[3] = complex_t(-half_trace, -eta);
        z3 = complex_t(0.0, 1.0);
        z4 = complex_t(0.0, -1.0);
        sys.cond = 1.0;
    } else if (s * s < 1.0) {
        sys.regime = ModeRegime::generic;
        const double disc = std::sqrt(1.0 - s * s);
        sys.lambda[2] = complex_t(-half_trace, eta * disc);
        sys.lambda[3] = complex_t(-half_trace, -eta * disc);
        z3 = complex_t(s, disc);
        z4 = complex_t(s, -disc);
        // kappa_2 of the (V3, V4) basis on the coupled 2-space
        sys.cond = std::sqrt((1.0 + std::fabs(s)) / (1.0 - std::fabs(s)));
    } else {
        sys.regime = ModeRegime::overdamped;
        const double disc = std::sqrt(s * s - 1.0);
        sys.lambda[2] = complex_t(-half_trace + eta * disc);
        sys.lambda[3] = complex_t(-half_trace - eta * disc);
        z3 = complex_t(s + (s > 0 ? disc : -disc));
        z4 = complex_t(s - (s > 0 ? disc : -disc));
        const double as = std::fabs(s);
        sys.cond = disc == 0.0 ? kInf : std::sqrt((as + 1.0) / (as - 1.0));
    }

    // eigenvectors (e_w + z e_theta) / sqrt(1 + |z|^2); |z| = 1 when oscillatory
    const double n3 = std::sqrt(1.0 + std::norm(z3));
    const double n4 = std::sqrt(1.0 + std::norm(z4));
    for (int c = 0; c < 3; ++c) {
        sys.V3[c] = e_w[c] / n3;
        sys.V4[c] = e_w[c] / n4;
    }
    sys.V3[3] = z3 / n3;
    sys.V4[3] = z4 / n4;
    return sys;
}

double correction_term(const std::array<double, 3>& xi, const PhysicsParams& par) {
    const double kh2 = xi[0] * xi[0] + xi[1] * xi[1];
    const double k2 = kh2 + xi[2] * xi[2];
    assert(kh2 > 0.0);
    const double kh = std::sqrt(kh2);
    const double k = std::sqrt(k2);
    const double eta = kh / (par.epsilon * k);
    const double s = (par.nu - par.nu_prime) * par.epsilon * k2 * k / (2.0 * kh);
    assert(s * s <= 1.0);
    // eta (1 - sqrt(1 - s^2)) = eta s^2 / (1 + sqrt(1 - s^2)); dividing by eps
    // keeps full accuracy for small s where direct subtraction would cancel
    return (eta / par.epsilon) * s * s / (1.0 + std::sqrt(1.0 - s * s));
}

double epsilon_threshold(double nu, double nu_prime, double m, double M,
                         double constant) {
    assert(constant > 0.0);
    const double gap = 1.0 - (3.0 * M + m);
    if (gap <= 0.0)
        throw std::invalid_argument("epsilon_threshold: need 3M + m < 1");
    if (nu == nu_prime) return kInf;  // every mode oscillates, no threshold
    // worst detuning over {|xi| <= eps^-M, |xi_h| >= eps^m} is
    // |s| <= |nu - nu'| eps^{1 - 3M - m} / 2, kept below constant/2 exactly
    // when eps is below this power
    return std::pow(constant / std::fabs(nu - nu_prime), 1.0 / gap);
}

void freq_truncate(const Grid3& g, scalar_data& f, const TruncationWindow& w) {
    assert(f.size() == g.size());
    for (std::size_t i = 0; i < g.n; ++i)
        for (std::size_t j = 0; j < g.n; ++j) {
            const double xi1 = g.wavenumber(g.freq(i));
            const double xi2 = g.wavenumber(g.freq(j));
            const double kh = std::hypot(xi1, xi2);
            for (std::size_t l = 0; l < g.n; ++l) {
                const double xi3 = g.wavenumber(g.freq(l));
                const double rho = std::hypot(kh, xi3);
                f[g.index(i, j, l)] *= window_low_high(rho, kh, w.r, w.R);
            }
        }
}

void freq_truncate(SpectralField4& f, const TruncationWindow& w) {
    for (int c = 0; c < 4; ++c) freq_truncate(f.grid, f.comp[c], w);
}

}  // namespace stratlab
