#include "stratlab/dyadic.hpp"

#include <cmath>

#include "stratlab/cutoff.hpp"

namespace stratlab {

DyadicLadder make_ladder(const Grid3& g) {
    // smallest nonzero |xi| is 2 pi / L; largest is the diagonal corner
    const double xi_min = g.wavenumber(1);
    const double k_max = static_cast<double>(g.n / 2);
    const double xi_max = std::sqrt(3.0) * g.wavenumber(1) * k_max;
    DyadicLadder ladder;
    // phi(|xi|/2^j) is nonzero only for 2^{j-1} < |xi| < 2^{j+1}
    ladder.j_min = static_cast<int>(std::floor(std::log2(xi_min))) - 1;
    ladder.j_max = static_cast<int>(std::ceil(std::log2(xi_max))) + 1;
    return ladder;
}

void dyadic_project(const Grid3& g, const scalar_data& f, int j, scalar_data& out) {
    out.resize(f.size());
    const double inv_scale = std::ldexp(1.0, -j);  // 2^-j
    for (std::size_t i = 0; i < g.n; ++i) {
        const double xi1 = g.wavenumber(g.freq(i));
        for (std::size_t jj = 0; jj < g.n; ++jj) {
            const double xi2 = g.wavenumber(g.freq(jj));
            for (std::size_t l = 0; l < g.n; ++l) {
                const double xi3 = g.wavenumber(g.freq(l));
                const double rho = std::sqrt(xi1 * xi1 + xi2 * xi2 + xi3 * xi3);
                out[g.index(i, jj, l)] =
                    f[g.index(i, jj, l)] * bump_phi(rho * inv_scale);
            }
        }
    }
}

void dyadic_project(const SpectralField4& f, int j, SpectralField4& out) {
    out.grid = f.grid;
    for (int c = 0; c < 4; ++c) dyadic_project(f.grid, f.comp[c], j, out.comp[c]);
}

double partition_defect(const Grid3& g, const DyadicLadder& ladder) {
    double worst = 0.0;
    for (std::size_t i = 0; i < g.n; ++i)
        for (std::size_t jj = 0; jj < g.n; ++jj)
            for (std::size_t l = 0; l < g.n; ++l) {
                if (i == 0 && jj == 0 && l == 0) continue;
                const double xi1 = g.wavenumber(g.freq(i));
                const double xi2 = g.wavenumber(g.freq(jj));
                const double xi3 = g.wavenumber(g.freq(l));
                const double rho = std::sqrt(xi1 * xi1 + xi2 * xi2 + xi3 * xi3);
                double sum = 0.0;
                for (int j = ladder.j_min; j <= ladder.j_max; ++j)
                    sum += bump_phi(rho * std::ldexp(1.0, -j));
                worst = std::max(worst, std::fabs(1.0 - sum));
            }
    return worst;
}

}  // namespace stratlab
