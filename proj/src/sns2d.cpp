#include "stratlab/sns2d.hpp"

#include <cassert>
#include <cmath>
#include <string>

#include "stratlab/solver.hpp"

namespace stratlab {

namespace {

void ensure_scratch(const Grid3& g, SnsStepScratch& s) {
    const std::size_t sz = g.size();
    if (s.omega_half.size() != sz) {
        s.omega_half.assign(sz, complex_t(0.0));
        s.omega_star.assign(sz, complex_t(0.0));
        s.adv.assign(sz, complex_t(0.0));
        s.px.assign(sz, complex_t(0.0));
        s.py.assign(sz, complex_t(0.0));
        s.pw.assign(sz, complex_t(0.0));
        s.v_h[0].assign(sz, complex_t(0.0));
        s.v_h[1].assign(sz, complex_t(0.0));
    }
}

void zero_vertical_line(const Grid3& g, scalar_data& f) {
    for (std::size_t l = 0; l < g.n; ++l) f[g.index(0, 0, l)] = complex_t(0.0);
}

}  // namespace

CflError::CflError(double cfl_, double t_, double suggested)
    : std::runtime_error("advective CFL " + std::to_string(cfl_) + " at t = " +
                         std::to_string(t_) + " exceeds the limit; try dt <= " +
                         std::to_string(suggested)),
      cfl(cfl_),
      t(t_),
      suggested_dt(suggested) {}

void biot_savart_h(const Grid3& g, const scalar_data& omega,
                   std::array<scalar_data, 2>& v_h) {
    assert(omega.size() == g.size());
    double peak = 0.0;
    for (const auto& z : omega) peak = std::max(peak, std::abs(z));
    for (std::size_t l = 0; l < g.n; ++l)
        if (std::abs(omega[g.index(0, 0, l)]) > 1e-12 * std::max(1.0, peak))
            throw std::invalid_argument(
                "biot_savart_h: vorticity carries mass on the xi_h = 0 line");
    for (int c = 0; c < 2; ++c) v_h[c].assign(g.size(), complex_t(0.0));
    const complex_t iu(0.0, 1.0);
    for (std::size_t i = 0; i < g.n; ++i)
        for (std::size_t j = 0; j < g.n; ++j) {
            const double xi1 = g.wavenumber(g.freq(i));
            const double xi2 = g.wavenumber(g.freq(j));
            const double kh2 = xi1 * xi1 + xi2 * xi2;
            if (kh2 == 0.0) continue;
            for (std::size_t l = 0; l < g.n; ++l) {
                const std::size_t m = g.index(i, j, l);
                v_h[0][m] = iu * xi2 * omega[m] / kh2;
                v_h[1][m] = -iu * xi1 * omega[m] / kh2;
            }
        }
}

void sns_viscous_half(const Grid3& g, double nu, double dt, scalar_data& omega) {
    // exact heat factor over half the step (full 3D Laplacian)
    for (std::size_t i = 0; i < g.n; ++i)
        for (std::size_t j = 0; j < g.n; ++j) {
            const double xi1 = g.wavenumber(g.freq(i));
            const double xi2 = g.wavenumber(g.freq(j));
            for (std::size_t l = 0; l < g.n; ++l) {
                const double xi3 = g.wavenumber(g.freq(l));
                const double k2 = xi1 * xi1 + xi2 * xi2 + xi3 * xi3;
                omega[g.index(i, j, l)] *= std::exp(-0.5 * nu * k2 * dt);
            }
        }
}

void sns_advection(const Grid3& g, const scalar_data& omega, SpectralTransform& tr,
                   SnsStepScratch& scratch, scalar_data& tendency, double* sup_vh) {
    ensure_scratch(g, scratch);
    tendency.resize(g.size());
    biot_savart_h(g, omega, scratch.v_h);

    // horizontal gradient of omega, then everything to collocation values
    const complex_t iu(0.0, 1.0);
    for (std::size_t i = 0; i < g.n; ++i)
        for (std::size_t j = 0; j < g.n; ++j) {
            const double xi1 = g.wavenumber(g.freq(i));
            const double xi2 = g.wavenumber(g.freq(j));
            for (std::size_t l = 0; l < g.n; ++l) {
                const std::size_t m = g.index(i, j, l);
                scratch.px[m] = iu * xi1 * omega[m];
                scratch.py[m] = iu * xi2 * omega[m];
            }
        }
    tr.to_physical(scratch.px, scratch.px);
    tr.to_physical(scratch.py, scratch.py);
    tr.to_physical(scratch.v_h[0], scratch.pw);
    tr.to_physical(scratch.v_h[1], tendency);

    double sup = 0.0;
    for (std::size_t m = 0; m < g.size(); ++m) {
        const complex_t v1 = scratch.pw[m];
        const complex_t v2 = tendency[m];
        sup = std::max(sup, std::sqrt(std::norm(v1) + std::norm(v2)));
        scratch.px[m] = -(v1 * scratch.px[m] + v2 * scratch.py[m]);
    }
    if (sup_vh) *sup_vh = sup;

    tr.to_spectral(scratch.px, tendency);
    dealias(g, tendency);
    // the advection has zero horizontal mean mode by mode (divergence form);
    // enforcing it keeps the line invariant exactly
    zero_vertical_line(g, tendency);
}

void sns_strang_step(const Grid3& g, double nu, double dt, scalar_data& omega,
                     SpectralTransform& tr, SnsStepScratch& scratch, double* cfl) {
    ensure_scratch(g, scratch);
    sns_viscous_half(g, nu, dt, omega);

    double sup1 = 0.0, sup2 = 0.0;
    sns_advection(g, omega, tr, scratch, scratch.omega_half, &sup1);
    scratch.omega_star = omega;
    for (std::size_t m = 0; m < g.size(); ++m)
        scratch.omega_star[m] += dt * scratch.omega_half[m];
    sns_advection(g, scratch.omega_star, tr, scratch, scratch.adv, &sup2);
    for (std::size_t m = 0; m < g.size(); ++m)
        omega[m] += 0.5 * dt * (scratch.omega_half[m] + scratch.adv[m]);

    sns_viscous_half(g, nu, dt, omega);
    if (cfl) *cfl = std::max(sup1, sup2) * dt / g.dx();
}

StratifiedFlowSeries solve_sns(const Grid3& g, const scalar_data& omega0, double nu,
                               double dt, std::size_t n_steps,
                               std::size_t steps_per_sample, SpectralTransform& tr) {
    assert(dt > 0.0);
    assert(steps_per_sample >= 1);
    StratifiedFlowSeries out;
    out.grid = g;
    out.dt = dt;
    out.steps_per_sample = steps_per_sample;

    scalar_data omega = omega0;
    dealias(g, omega);
    zero_vertical_line(g, omega);
    out.times.push_back(0.0);
    out.omega.push_back(omega);

    SnsStepScratch scratch;
    for (std::size_t step = 0; step < n_steps; ++step) {
        double cfl = 0.0;
        sns_strang_step(g, nu, dt, omega, tr, scratch, &cfl);
        out.max_cfl = std::max(out.max_cfl, cfl);
        const double t_now = static_cast<double>(step + 1) * dt;
        if (cfl > 0.5) throw CflError(cfl, t_now, 0.45 * dt / cfl);
        double peak = 0.0;
        for (const auto& z : omega) peak = std::max(peak, std::abs(z));
        if (!std::isfinite(peak))
            throw std::runtime_error("solve_sns: diverged (last stable t = " +
                                     std::to_string(t_now - dt) + ")");
        if ((step + 1) % steps_per_sample == 0) {
            out.times.push_back(t_now);
            out.omega.push_back(omega);
        }
    }
    return out;
}

}  // namespace stratlab
