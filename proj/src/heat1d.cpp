#include "stratlab/heat1d.hpp"

#include <cassert>
#include <cmath>
#include <stdexcept>

namespace stratlab {

namespace {

// signed integer frequency for a length-n 1D grid, matching the Grid3 axis
// convention exactly
long freq1d(std::size_t n, std::size_t idx) {
    return idx <= n / 2 ? static_cast<long>(idx)
                        : static_cast<long>(idx) - static_cast<long>(n);
}

}  // namespace

VerticalProfile heat1d_at(const VerticalProfile& theta0, double nu_prime, double t) {
    if (t < 0.0) throw std::invalid_argument("heat1d_at: negative time");
    VerticalProfile out = theta0;
    for (std::size_t l = 0; l < out.n; ++l) {
        const double xi3 =
            2.0 * M_PI * static_cast<double>(freq1d(out.n, l)) / out.box_length;
        out.modes[l] *= std::exp(-nu_prime * xi3 * xi3 * t);
    }
    return out;
}

std::vector<VerticalProfile> heat1d_solve(const VerticalProfile& theta0,
                                          double nu_prime,
                                          const std::vector<double>& times) {
    std::vector<VerticalProfile> out;
    out.reserve(times.size());
    for (double t : times) out.push_back(heat1d_at(theta0, nu_prime, t));
    return out;
}

void embed_vertical(const VerticalProfile& p, SpectralField4& f) {
    const Grid3& g = f.grid;
    assert(p.n == g.n);
    assert(p.box_length == g.box_length);
    for (std::size_t l = 0; l < g.n; ++l)
        f.comp[3][g.index(0, 0, l)] = p.modes[l];
}

VerticalProfile extract_vertical(const SpectralField4& f) {
    const Grid3& g = f.grid;
    VerticalProfile p(g.n, g.box_length);
    for (std::size_t l = 0; l < g.n; ++l)
        p.modes[l] = f.comp[3][g.index(0, 0, l)];
    return p;
}

VerticalProfile d3(const VerticalProfile& p) {
    VerticalProfile out = p;
    const complex_t iu(0.0, 1.0);
    for (std::size_t l = 0; l < out.n; ++l) {
        const double xi3 =
            2.0 * M_PI * static_cast<double>(freq1d(out.n, l)) / out.box_length;
        out.modes[l] *= iu * xi3;
    }
    return out;
}

double profile_l2(const VerticalProfile& p) {
    double sum = 0.0;
    for (const auto& z : p.modes) sum += std::norm(z);
    return std::sqrt(p.box_length * sum);
}

void zero_profile_mean(VerticalProfile& p) {
    if (p.n > 0) p.modes[0] = complex_t(0.0);
}

}  // namespace stratlab
