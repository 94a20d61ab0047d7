#include "stratlab/norms.hpp"

#include <cassert>
#include <cmath>

namespace stratlab {

namespace {

double volume(const Grid3& g) {
    return g.box_length * g.box_length * g.box_length;
}

// sum over modes of w(|xi|^2) |fhat|^2 over all components
template <typename Weight>
double weighted_mode_sum(const SpectralField4& f, Weight w) {
    const Grid3& g = f.grid;
    double sum = 0.0;
    for (std::size_t i = 0; i < g.n; ++i)
        for (std::size_t j = 0; j < g.n; ++j)
            for (std::size_t l = 0; l < g.n; ++l) {
                const double xi1 = g.wavenumber(g.freq(i));
                const double xi2 = g.wavenumber(g.freq(j));
                const double xi3 = g.wavenumber(g.freq(l));
                const double k2 = xi1 * xi1 + xi2 * xi2 + xi3 * xi3;
                const std::size_t m = g.index(i, j, l);
                double mag2 = 0.0;
                for (int c = 0; c < 4; ++c) mag2 += std::norm(f.comp[c][m]);
                if (k2 == 0.0)
                    sum += w(0.0) * mag2;
                else
                    sum += w(k2) * mag2;
            }
    return sum;
}

}  // namespace

double norm_l2(const SpectralField4& f) {
    return std::sqrt(volume(f.grid) *
                     weighted_mode_sum(f, [](double) { return 1.0; }));
}

double norm_l2(const Grid3& g, const scalar_data& f) {
    double sum = 0.0;
    for (const auto& z : f) sum += std::norm(z);
    return std::sqrt(volume(g) * sum);
}

double norm_hdot(const SpectralField4& f, double s) {
    return std::sqrt(volume(f.grid) * weighted_mode_sum(f, [s](double k2) {
               return k2 == 0.0 ? 0.0 : std::pow(k2, s);
           }));
}

double norm_hdot(const Grid3& g, const scalar_data& f, double s) {
    double sum = 0.0;
    for (std::size_t i = 0; i < g.n; ++i)
        for (std::size_t j = 0; j < g.n; ++j)
            for (std::size_t l = 0; l < g.n; ++l) {
                const double xi1 = g.wavenumber(g.freq(i));
                const double xi2 = g.wavenumber(g.freq(j));
                const double xi3 = g.wavenumber(g.freq(l));
                const double k2 = xi1 * xi1 + xi2 * xi2 + xi3 * xi3;
                if (k2 == 0.0) continue;
                sum += std::pow(k2, s) * std::norm(f[g.index(i, j, l)]);
            }
    return std::sqrt(volume(g) * sum);
}

double norm_lq(SpectralTransform& tr, const SpectralField4& f, double q) {
    const Grid3& g = f.grid;
    SpectralField4 phys(g);
    tr.to_physical(f, phys);
    const double cell = volume(g) / static_cast<double>(g.size());
    if (std::isinf(q)) {
        double worst = 0.0;
        for (std::size_t m = 0; m < g.size(); ++m) {
            double mag2 = 0.0;
            for (int c = 0; c < 4; ++c) mag2 += std::norm(phys.comp[c][m]);
            worst = std::max(worst, mag2);
        }
        return std::sqrt(worst);
    }
    double sum = 0.0;
    for (std::size_t m = 0; m < g.size(); ++m) {
        double mag2 = 0.0;
        for (int c = 0; c < 4; ++c) mag2 += std::norm(phys.comp[c][m]);
        sum += std::pow(mag2, 0.5 * q);
    }
    return std::pow(cell * sum, 1.0 / q);
}

double norm_lq(SpectralTransform& tr, const Grid3& g, const scalar_data& f,
               double q) {
    scalar_data phys;
    tr.to_physical(f, phys);
    const double cell = volume(g) / static_cast<double>(g.size());
    if (std::isinf(q)) {
        double worst = 0.0;
        for (const auto& z : phys) worst = std::max(worst, std::abs(z));
        return worst;
    }
    double sum = 0.0;
    for (const auto& z : phys) sum += std::pow(std::abs(z), q);
    return std::pow(cell * sum, 1.0 / q);
}

double norm_besov(SpectralTransform& tr, const SpectralField4& f, double s, double p,
                  double r, const DyadicLadder& ladder) {
    SpectralField4 block(f.grid);
    double accum = 0.0;
    double sup = 0.0;
    for (int j = ladder.j_min; j <= ladder.j_max; ++j) {
        dyadic_project(f, j, block);
        const double lp = norm_lq(tr, block, p);
        const double term = std::pow(2.0, s * j) * lp;
        if (std::isinf(r))
            sup = std::max(sup, term);
        else
            accum += std::pow(term, r);
    }
    return std::isinf(r) ? sup : std::pow(accum, 1.0 / r);
}

double norm(SpectralTransform& tr, const SpectralField4& f, const NormKind& kind,
            const DyadicLadder& ladder) {
    switch (kind.family) {
        case NormKind::L2: return norm_l2(f);
        case NormKind::Hdot: return norm_hdot(f, kind.s);
        case NormKind::Lq: return norm_lq(tr, f, kind.p);
        case NormKind::Besov: return norm_besov(tr, f, kind.s, kind.p, kind.r, ladder);
    }
    return 0.0;
}

double spacetime_norm(const SpaceTimeSeries& series, double rho) {
    assert(series.times.size() == series.values.size());
    if (series.values.empty()) return 0.0;
    if (std::isinf(rho)) {
        double worst = 0.0;
        for (double v : series.values) worst = std::max(worst, std::fabs(v));
        return worst;
    }
    double integral = 0.0;
    for (std::size_t i = 0; i + 1 < series.times.size(); ++i) {
        const double h = series.times[i + 1] - series.times[i];
        const double a = std::pow(std::fabs(series.values[i]), rho);
        const double b = std::pow(std::fabs(series.values[i + 1]), rho);
        integral += 0.5 * h * (a + b);
    }
    return std::pow(integral, 1.0 / rho);
}

double chemin_lerner_norm(const DyadicSeries& ds, double s, double rho, double r) {
    double accum = 0.0, sup = 0.0;
    for (std::size_t jdx = 0; jdx < ds.values.size(); ++jdx) {
        SpaceTimeSeries block{ds.times, ds.values[jdx]};
        const int j = ds.ladder.j_min + static_cast<int>(jdx);
        const double term = std::pow(2.0, s * j) * spacetime_norm(block, rho);
        if (std::isinf(r))
            sup = std::max(sup, term);
        else
            accum += std::pow(term, r);
    }
    return std::isinf(r) ? sup : std::pow(accum, 1.0 / r);
}

double spacetime_besov_norm(const DyadicSeries& ds, double s, double rho, double r) {
    if (ds.times.empty()) return 0.0;
    SpaceTimeSeries per_time;
    per_time.times = ds.times;
    per_time.values.resize(ds.times.size());
    for (std::size_t t = 0; t < ds.times.size(); ++t) {
        double accum = 0.0, sup = 0.0;
        for (std::size_t jdx = 0; jdx < ds.values.size(); ++jdx) {
            const int j = ds.ladder.j_min + static_cast<int>(jdx);
            const double term = std::pow(2.0, s * j) * ds.values[jdx][t];
            if (std::isinf(r))
                sup = std::max(sup, term);
            else
                accum += std::pow(term, r);
        }
        per_time.values[t] = std::isinf(r) ? sup : std::pow(accum, 1.0 / r);
    }
    return spacetime_norm(per_time, rho);
}

}  // namespace stratlab
