#include "stratlab/gtilde.hpp"

#include <cassert>

#include "stratlab/solver.hpp"

namespace stratlab {

void horizontal_pressure_source(const Grid3& g, const std::array<scalar_data, 2>& v_h,
                                SpectralTransform& tr, scalar_data& q) {
    assert(v_h[0].size() == g.size() && v_h[1].size() == g.size());
    scalar_data p1(g.size()), p2(g.size());
    tr.to_physical(v_h[0], p1);
    tr.to_physical(v_h[1], p2);

    scalar_data w11(g.size()), w12(g.size()), w22(g.size());
    for (std::size_t m = 0; m < g.size(); ++m) {
        w11[m] = p1[m] * p1[m];
        w12[m] = p1[m] * p2[m];
        w22[m] = p2[m] * p2[m];
    }
    tr.to_spectral(w11, w11);
    tr.to_spectral(w12, w12);
    tr.to_spectral(w22, w22);

    q.resize(g.size());
    for (std::size_t i = 0; i < g.n; ++i)
        for (std::size_t j = 0; j < g.n; ++j) {
            const double xi1 = g.wavenumber(g.freq(i));
            const double xi2 = g.wavenumber(g.freq(j));
            for (std::size_t l = 0; l < g.n; ++l) {
                const std::size_t m = g.index(i, j, l);
                // sum_{i,j<=2} d_i d_j (v^i v^j) has symbol -(xi_i xi_j)
                q[m] = -(xi1 * xi1 * w11[m] + 2.0 * xi1 * xi2 * w12[m] +
                         xi2 * xi2 * w22[m]);
            }
        }
    dealias(g, q);
}

void gtilde_from_source(const Grid3& g, const scalar_data& q, SpectralField4& out) {
    assert(q.size() == g.size());
    assert(out.grid == g);
    const complex_t iu(0.0, 1.0);
    for (std::size_t i = 0; i < g.n; ++i)
        for (std::size_t j = 0; j < g.n; ++j) {
            const double xi1 = g.wavenumber(g.freq(i));
            const double xi2 = g.wavenumber(g.freq(j));
            const double kh2 = xi1 * xi1 + xi2 * xi2;
            for (std::size_t l = 0; l < g.n; ++l) {
                const std::size_t m = g.index(i, j, l);
                const double xi3 = g.wavenumber(g.freq(l));
                const double k2 = kh2 + xi3 * xi3;
                if (kh2 == 0.0 || k2 == 0.0) {
                    for (int c = 0; c < 4; ++c) out.comp[c][m] = complex_t(0.0);
                    continue;
                }
                const complex_t base = iu * q[m] / k2;
                out.comp[0][m] = base * (xi1 * xi3 * xi3 / kh2);
                out.comp[1][m] = base * (xi2 * xi3 * xi3 / kh2);
                out.comp[2][m] = -base * xi3;
                out.comp[3][m] = complex_t(0.0);
            }
        }
}

SpectralField4 compute_gtilde(const Grid3& g, const std::array<scalar_data, 2>& v_h,
                              SpectralTransform& tr) {
    scalar_data q;
    horizontal_pressure_source(g, v_h, tr, q);
    SpectralField4 out(g);
    gtilde_from_source(g, q, out);
    return out;
}

}  // namespace stratlab
