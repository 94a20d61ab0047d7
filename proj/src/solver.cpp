#include "stratlab/solver.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <stdexcept>
#include <string>

namespace stratlab {

namespace {

// sin(g h) / g and its hyperbolic partner, series-guarded so the h -> 0 and
// g -> 0 limits stay fully accurate (no subtractive cancellation)
double sin_over(double g, double h) {
    const double x = g * h;
    if (std::fabs(x) < 1e-4) return h * (1.0 - x * x / 6.0 * (1.0 - x * x / 20.0));
    return std::sin(x) / g;
}

// apply exp(h * [[-a, eta], [-eta, -b]]) to the pair (cw, ct); exact closed
// form: with mu = (a+b)/2, delta = (a-b)/2, the traceless part N satisfies
// N^2 = (delta^2 - eta^2) I, so the exponential is a cos/cosh pair in N
void wave_block_exp(double a, double b, double eta, double h, complex_t& cw,
                    complex_t& ct) {
    const double mu = 0.5 * (a + b);
    const double delta = 0.5 * (a - b);
    const double disc = delta * delta - eta * eta;
    double A, B;  // exp = A I + B N
    if (disc < 0.0) {
        const double gt = std::sqrt(-disc);
        const double f = std::exp(-mu * h);
        A = f * std::cos(gt * h);
        B = f * sin_over(gt, h);
    } else {
        const double ga = std::sqrt(disc);
        if (ga * h < 1e-4) {
            const double x = ga * h;
            const double f = std::exp(-mu * h);
            A = f * std::cosh(x);
            B = f * h * (1.0 + x * x / 6.0 * (1.0 + x * x / 20.0));
        } else {
            // scaled form: never evaluates cosh alone, so no overflow even
            // for strongly overdamped modes (ga < mu always since eta > 0)
            const double p = std::exp((-mu + ga) * h);
            const double q = std::exp(-(mu + ga) * h);
            A = 0.5 * (p + q);
            B = (p - q) / (2.0 * ga);
        }
    }
    const complex_t nw = -delta * cw + eta * ct;
    const complex_t nt = -eta * cw + delta * ct;
    cw = A * cw + B * nw;
    ct = A * ct + B * nt;
}

double l2_sq_of(const SpectralField4& f) {
    double sum = 0.0;
    for (int c = 0; c < 4; ++c)
        for (const auto& z : f.comp[c]) sum += std::norm(z);
    const double L = f.grid.box_length;
    return L * L * L * sum;
}

// nu ||grad v||^2 + nu' ||grad theta||^2 by Parseval
double dissipation_of(const SpectralField4& f, const PhysicsParams& par) {
    const Grid3& g = f.grid;
    double sum_v = 0.0, sum_t = 0.0;
    for (std::size_t i = 0; i < g.n; ++i)
        for (std::size_t j = 0; j < g.n; ++j) {
            const double xi1 = g.wavenumber(g.freq(i));
            const double xi2 = g.wavenumber(g.freq(j));
            for (std::size_t l = 0; l < g.n; ++l) {
                const double xi3 = g.wavenumber(g.freq(l));
                const double k2 = xi1 * xi1 + xi2 * xi2 + xi3 * xi3;
                const std::size_t m = g.index(i, j, l);
                sum_v += k2 * (std::norm(f.comp[0][m]) + std::norm(f.comp[1][m]) +
                               std::norm(f.comp[2][m]));
                sum_t += k2 * std::norm(f.comp[3][m]);
            }
        }
    const double L = g.box_length;
    return L * L * L * (par.nu * sum_v + par.nu_prime * sum_t);
}

// collocation values of a vertical profile (or its x3 derivative) at the n
// grid layers; n^2 work, negligible next to any transform
std::vector<complex_t> profile_collocation(const VerticalProfile& p, bool deriv) {
    std::vector<complex_t> out(p.n, complex_t(0.0));
    for (std::size_t l = 0; l < p.n; ++l) {
        const double x_frac = static_cast<double>(l) / static_cast<double>(p.n);
        for (std::size_t m = 0; m < p.n; ++m) {
            const long k = m <= p.n / 2 ? static_cast<long>(m)
                                        : static_cast<long>(m) - static_cast<long>(p.n);
            const double xi3 = 2.0 * M_PI * static_cast<double>(k) / p.box_length;
            const double phase = 2.0 * M_PI * static_cast<double>(k) * x_frac;
            complex_t term = p.modes[m] * complex_t(std::cos(phase), std::sin(phase));
            if (deriv) term *= complex_t(0.0, xi3);
            out[l] += term;
        }
    }
    return out;
}

struct DiffScratch {
    SnsStepScratch sns;
    scalar_data a, astar, n1;             // limit stage vorticities
    std::array<scalar_data, 2> vw_a, vw_astar;
    scalar_data q_a, q_astar;             // pressure sources at the stages
    SpectralField4 N1, N2, star;
};

// tendency of the difference system at state D against the limit stage
// (v_w spectral, theta stage profile, pressure source q_w):
//   -P dealias[(v_D + v_w) . grad D + v_D . grad W] + Gtilde(q_w)
void difference_tendency(const SpectralField4& D, const std::array<scalar_data, 2>& vw,
                         const std::vector<complex_t>& theta_prime_col,
                         const scalar_data& q_w, SpectralTransform& tr,
                         SpectralField4& tendency, double* sup_v) {
    const Grid3& g = D.grid;
    const std::size_t sz = g.size();
    if (tendency.grid.n != g.n) tendency = SpectralField4(g);

    // physical v_D (kept for the D . grad W coupling) and the total
    // advecting velocity v_D + (v_w, 0)
    std::array<scalar_data, 3> pd, pv;
    for (int c = 0; c < 3; ++c) {
        tr.to_physical(D.comp[c], pd[c]);
        pv[c] = pd[c];
    }
    {
        scalar_data pw(sz);
        for (int c = 0; c < 2; ++c) {
            tr.to_physical(vw[c], pw);
            for (std::size_t m = 0; m < sz; ++m) pv[c][m] += pw[m];
        }
    }
    double sup = 0.0;
    for (std::size_t m = 0; m < sz; ++m)
        sup = std::max(sup, std::sqrt(std::norm(pv[0][m]) + std::norm(pv[1][m]) +
                                      std::norm(pv[2][m])));
    if (sup_v) *sup_v = sup;

    const complex_t iu(0.0, 1.0);
    scalar_data grad(sz), acc(sz);
    for (int c = 0; c < 4; ++c) {
        std::fill(acc.begin(), acc.end(), complex_t(0.0));
        // (v_D + v_w) . grad D^c
        for (int d = 0; d < 3; ++d) {
            for (std::size_t i = 0; i < g.n; ++i)
                for (std::size_t j = 0; j < g.n; ++j) {
                    const double xi[3] = {g.wavenumber(g.freq(i)),
                                          g.wavenumber(g.freq(j)), 0.0};
                    for (std::size_t l = 0; l < g.n; ++l) {
                        const double xid =
                            d == 0 ? xi[0] : (d == 1 ? xi[1] : g.wavenumber(g.freq(l)));
                        const std::size_t m = g.index(i, j, l);
                        grad[m] = iu * xid * D.comp[c][m];
                    }
                }
            tr.to_physical(grad, grad);
            for (std::size_t m = 0; m < sz; ++m) acc[m] += pv[d][m] * grad[m];
        }
        // v_D . grad W^c: W = (v_w, 0, theta(x3))
        if (c < 2) {
            for (int d = 0; d < 3; ++d) {
                for (std::size_t i = 0; i < g.n; ++i)
                    for (std::size_t j = 0; j < g.n; ++j) {
                        const double xi1 = g.wavenumber(g.freq(i));
                        const double xi2 = g.wavenumber(g.freq(j));
                        for (std::size_t l = 0; l < g.n; ++l) {
                            const double xid =
                                d == 0 ? xi1 : (d == 1 ? xi2 : g.wavenumber(g.freq(l)));
                            const std::size_t m = g.index(i, j, l);
                            grad[m] = iu * xid * vw[c][m];
                        }
                    }
                tr.to_physical(grad, grad);
                for (std::size_t m = 0; m < sz; ++m) acc[m] += pd[d][m] * grad[m];
            }
        } else if (c == 3) {
            // D^3 d3 theta(x3): the derivative profile broadcasts over x_h
            for (std::size_t i = 0; i < g.n; ++i)
                for (std::size_t j = 0; j < g.n; ++j)
                    for (std::size_t l = 0; l < g.n; ++l) {
                        const std::size_t m = g.index(i, j, l);
                        acc[m] += pd[2][m] * theta_prime_col[l];
                    }
        }
        tr.to_spectral(acc, tendency.comp[c]);
    }
    dealias(tendency);
    leray_project(tendency);
    tendency *= -1.0;

    // + Gtilde at the stage source (already divergence free)
    SpectralField4 gt(g);
    gtilde_from_source(g, q_w, gt);
    tendency += gt;
}

}  // namespace

std::size_t SolverConfig::steps() const {
    if (n_steps > 0) return n_steps;
    if (t_final <= 0.0) return 0;
    assert(dt > 0.0);
    return static_cast<std::size_t>(std::llround(t_final / dt));
}

long dealias_bound(const Grid3& g) {
    return static_cast<long>((g.n - 1) / 3);
}

void dealias(const Grid3& g, scalar_data& f) {
    const long K = dealias_bound(g);
    for (std::size_t i = 0; i < g.n; ++i)
        for (std::size_t j = 0; j < g.n; ++j) {
            const bool kill_ij = std::labs(g.freq(i)) > K || std::labs(g.freq(j)) > K;
            for (std::size_t l = 0; l < g.n; ++l)
                if (kill_ij || std::labs(g.freq(l)) > K)
                    f[g.index(i, j, l)] = complex_t(0.0);
        }
}

void dealias(SpectralField4& f) {
    for (int c = 0; c < 4; ++c) dealias(f.grid, f.comp[c]);
}

void friedrichs_project(SpectralField4& f, std::size_t radius) {
    if (radius == 0) return;
    const Grid3& g = f.grid;
    const long r2 = static_cast<long>(radius) * static_cast<long>(radius);
    for (std::size_t i = 0; i < g.n; ++i)
        for (std::size_t j = 0; j < g.n; ++j) {
            const long kij = g.freq(i) * g.freq(i) + g.freq(j) * g.freq(j);
            for (std::size_t l = 0; l < g.n; ++l)
                if (kij + g.freq(l) * g.freq(l) > r2) {
                    const std::size_t m = g.index(i, j, l);
                    for (int c = 0; c < 4; ++c) f.comp[c][m] = complex_t(0.0);
                }
        }
}

void nonlinear_term(const SpectralField4& U, SpectralTransform& tr,
                    SpectralField4& tendency, double* sup_v) {
    const Grid3& g = U.grid;
    const std::size_t sz = g.size();
    if (tendency.grid.n != g.n) tendency = SpectralField4(g);

    std::array<scalar_data, 3> pv;
    for (int c = 0; c < 3; ++c) tr.to_physical(U.comp[c], pv[c]);
    double sup = 0.0;
    for (std::size_t m = 0; m < sz; ++m)
        sup = std::max(sup, std::sqrt(std::norm(pv[0][m]) + std::norm(pv[1][m]) +
                                      std::norm(pv[2][m])));
    if (sup_v) *sup_v = sup;

    const complex_t iu(0.0, 1.0);
    scalar_data grad(sz), acc(sz);
    for (int c = 0; c < 4; ++c) {
        std::fill(acc.begin(), acc.end(), complex_t(0.0));
        for (int d = 0; d < 3; ++d) {
            for (std::size_t i = 0; i < g.n; ++i)
                for (std::size_t j = 0; j < g.n; ++j) {
                    const double xi1 = g.wavenumber(g.freq(i));
                    const double xi2 = g.wavenumber(g.freq(j));
                    for (std::size_t l = 0; l < g.n; ++l) {
                        const double xid =
                            d == 0 ? xi1 : (d == 1 ? xi2 : g.wavenumber(g.freq(l)));
                        const std::size_t m = g.index(i, j, l);
                        grad[m] = iu * xid * U.comp[c][m];
                    }
                }
            tr.to_physical(grad, grad);
            for (std::size_t m = 0; m < sz; ++m) acc[m] += pv[d][m] * grad[m];
        }
        tr.to_spectral(acc, tendency.comp[c]);
    }
    dealias(tendency);
    leray_project(tendency);
    tendency *= -1.0;
}

void linear_flow(SpectralField4& U, const PhysicsParams& par, double h) {
    const Grid3& g = U.grid;
    const double eps = par.epsilon;
    for (std::size_t i = 0; i < g.n; ++i)
        for (std::size_t j = 0; j < g.n; ++j) {
            const double xi1 = g.wavenumber(g.freq(i));
            const double xi2 = g.wavenumber(g.freq(j));
            const double kh2 = xi1 * xi1 + xi2 * xi2;
            for (std::size_t l = 0; l < g.n; ++l) {
                const double xi3 = g.wavenumber(g.freq(l));
                const double k2 = kh2 + xi3 * xi3;
                const std::size_t m = g.index(i, j, l);
                if (k2 == 0.0) {
                    // mean mode: (v3, theta) rotates at rate 1/eps, v_h frozen
                    const double phi = h / eps;
                    const complex_t v3 = U.comp[2][m], th = U.comp[3][m];
                    U.comp[2][m] = std::cos(phi) * v3 - std::sin(phi) * th;
                    U.comp[3][m] = std::sin(phi) * v3 + std::cos(phi) * th;
                    continue;
                }
                if (kh2 == 0.0) {
                    // vertical line: uncoupled heat factors (v3 = 0 when
                    // divergence free, so its factor never matters)
                    const double fv = std::exp(-par.nu * k2 * h);
                    const double ft = std::exp(-par.nu_prime * k2 * h);
                    U.comp[0][m] *= fv;
                    U.comp[1][m] *= fv;
                    U.comp[2][m] *= fv;
                    U.comp[3][m] *= ft;
                    continue;
                }
                const double kh = std::sqrt(kh2);
                const double k = std::sqrt(k2);
                // orthonormal frame: swirl, wave velocity direction, buoyancy
                const double sw1 = -xi2 / kh, sw2 = xi1 / kh;
                const double ew1 = xi1 * xi3 / (k * kh);
                const double ew2 = xi2 * xi3 / (k * kh);
                const double ew3 = -kh / k;
                complex_t c2 = sw1 * U.comp[0][m] + sw2 * U.comp[1][m];
                complex_t cw =
                    ew1 * U.comp[0][m] + ew2 * U.comp[1][m] + ew3 * U.comp[2][m];
                complex_t ct = U.comp[3][m];
                // residual along xi passes through unchanged (zero for
                // divergence-free states; the generator kills its velocity part)
                const complex_t r0 = U.comp[0][m] - c2 * sw1 - cw * ew1;
                const complex_t r1 = U.comp[1][m] - c2 * sw2 - cw * ew2;
                const complex_t r2 = U.comp[2][m] - cw * ew3;
                c2 *= std::exp(-par.nu * k2 * h);
                wave_block_exp(par.nu * k2, par.nu_prime * k2, kh / (eps * k), h, cw, ct);
                U.comp[0][m] = c2 * sw1 + cw * ew1 + r0;
                U.comp[1][m] = c2 * sw2 + cw * ew2 + r1;
                U.comp[2][m] = cw * ew3 + r2;
                U.comp[3][m] = ct;
            }
        }
}

namespace {

void prepare_state(SpectralField4& U, const SolverConfig& cfg) {
    if (cfg.dealias) dealias(U);
    if (cfg.friedrichs_radius > 0) friedrichs_project(U, cfg.friedrichs_radius);
    leray_project(U);
}

void record_lq_sample(const SpectralField4& U, SpectralTransform& tr, double t,
                      const std::vector<double>& q_list,
                      std::vector<SpaceTimeSeries>& lq_osc,
                      std::vector<SpaceTimeSeries>& lq_strat) {
    if (q_list.empty()) return;
    std::vector<double> vo, vs;
    split_lq_norms(U, tr, q_list, vo, vs);
    for (std::size_t qi = 0; qi < q_list.size(); ++qi) {
        lq_osc[qi].times.push_back(t);
        lq_osc[qi].values.push_back(vo[qi]);
        lq_strat[qi].times.push_back(t);
        lq_strat[qi].values.push_back(vs[qi]);
    }
}

}  // namespace

void split_lq_norms(const SpectralField4& U, SpectralTransform& tr,
                    const std::vector<double>& q_list, std::vector<double>& osc,
                    std::vector<double>& strat) {
    osc.assign(q_list.size(), 0.0);
    strat.assign(q_list.size(), 0.0);
    if (q_list.empty()) return;
    StratOscSplit split = split_stratified_osc(U);
    SpectralField4 posc(U.grid), pstrat(U.grid);
    tr.to_physical(split.oscillating, posc);
    tr.to_physical(split.stratified, pstrat);
    const double cell = std::pow(U.grid.box_length, 3.0) /
                        static_cast<double>(U.grid.size());
    for (std::size_t qi = 0; qi < q_list.size(); ++qi) {
        const double q = q_list[qi];
        double so = 0.0, ss = 0.0, mo = 0.0, ms = 0.0;
        for (std::size_t m = 0; m < U.grid.size(); ++m) {
            double a2 = 0.0, b2 = 0.0;
            for (int c = 0; c < 4; ++c) {
                a2 += std::norm(posc.comp[c][m]);
                b2 += std::norm(pstrat.comp[c][m]);
            }
            if (std::isinf(q)) {
                mo = std::max(mo, a2);
                ms = std::max(ms, b2);
            } else {
                so += std::pow(a2, 0.5 * q);
                ss += std::pow(b2, 0.5 * q);
            }
        }
        if (std::isinf(q)) {
            osc[qi] = std::sqrt(mo);
            strat[qi] = std::sqrt(ms);
        } else {
            osc[qi] = std::pow(cell * so, 1.0 / q);
            strat[qi] = std::pow(cell * ss, 1.0 / q);
        }
    }
}

Trajectory simulate_sepsilon(const SpectralField4& U0, const VerticalProfile& theta0,
                             const PhysicsParams& par, const SolverConfig& cfg,
                             SpectralTransform& tr) {
    const Grid3& g = U0.grid;
    assert(tr.grid() == g);
    if (cfg.friedrichs_radius > g.n / 2)
        throw std::invalid_argument("simulate_sepsilon: Friedrichs radius beyond Nyquist");
    const std::size_t n_steps = cfg.steps();
    const double dt = cfg.dt;

    SpectralField4 U = U0;
    if (theta0.n > 0) {
        assert(theta0.n == g.n && theta0.box_length == g.box_length);
        for (std::size_t l = 0; l < g.n; ++l)
            U.comp[3][g.index(0, 0, l)] += theta0.modes[l];
    }
    prepare_state(U, cfg);

    Trajectory traj;
    traj.grid = g;
    traj.par = par;
    traj.dt = dt;
    traj.q_list = cfg.q_list;
    traj.lq_osc.resize(cfg.q_list.size());
    traj.lq_strat.resize(cfg.q_list.size());

    auto record_sample = [&](double t) {
        traj.sample_times.push_back(t);
        if (cfg.record_states) traj.states.push_back(U);
        record_lq_sample(U, tr, t, cfg.q_list, traj.lq_osc, traj.lq_strat);
        if (cfg.record_ledger) {
            traj.ledger.l2_sq.times.push_back(t);
            traj.ledger.l2_sq.values.push_back(l2_sq_of(U));
            traj.ledger.dissipation.times.push_back(t);
            traj.ledger.dissipation.values.push_back(dissipation_of(U, par));
        }
        if (cfg.on_sample) cfg.on_sample(t, U);
    };

    record_sample(0.0);
    traj.l2.times.push_back(0.0);
    traj.l2.values.push_back(std::sqrt(l2_sq_of(U)));

    SpectralField4 N1, N2, star;
    for (std::size_t step = 0; step < n_steps; ++step) {
        const double t_next = static_cast<double>(step + 1) * dt;
        linear_flow(U, par, 0.5 * dt);
        double cfl = 0.0;
        if (cfg.advection) {
            double sup1 = 0.0, sup2 = 0.0;
            nonlinear_term(U, tr, N1, &sup1);
            if (cfg.friedrichs_radius > 0) friedrichs_project(N1, cfg.friedrichs_radius);
            star = U;
            axpy(star, dt, N1);
            nonlinear_term(star, tr, N2, &sup2);
            if (cfg.friedrichs_radius > 0) friedrichs_project(N2, cfg.friedrichs_radius);
            axpy(U, 0.5 * dt, N1);
            axpy(U, 0.5 * dt, N2);
            cfl = std::max(sup1, sup2) * dt / g.dx();
        }
        linear_flow(U, par, 0.5 * dt);

        traj.max_cfl = std::max(traj.max_cfl, cfl);
        if (cfl > cfg.cfl_limit)
            throw CflError(cfl, t_next, 0.9 * cfg.cfl_limit * dt / cfl);
        const double l2_now = std::sqrt(l2_sq_of(U));
        if (!std::isfinite(l2_now))
            throw std::runtime_error("simulate_sepsilon: diverged (last stable t = " +
                                     std::to_string(t_next - dt) + ")");
        traj.l2.times.push_back(t_next);
        traj.l2.values.push_back(l2_now);
        if ((step + 1) % cfg.sample_stride == 0) record_sample(t_next);
    }
    traj.final_state = U;
    traj.t_end = static_cast<double>(n_steps) * dt;
    return traj;
}

Trajectory simulate_difference(const SpectralField4& D0,
                               const StratifiedFlowSeries& v_series,
                               const std::vector<VerticalProfile>& theta_series,
                               const ForcingSeries& gtilde_series,
                               const PhysicsParams& par, const SolverConfig& cfg,
                               SpectralTransform& tr) {
    const Grid3& g = D0.grid;
    assert(tr.grid() == g);
    const std::size_t n_steps = cfg.steps();
    const double dt = cfg.dt;

    if (!(v_series.grid == g))
        throw std::invalid_argument("simulate_difference: limit-flow grid mismatch");
    if (std::fabs(v_series.dt - dt) > 1e-12 * dt || v_series.steps_per_sample != 1)
        throw std::invalid_argument(
            "simulate_difference: limit flow must be sampled at every solver step");
    if (v_series.omega.size() < n_steps + 1)
        throw std::invalid_argument("simulate_difference: limit-flow series too short");
    if (theta_series.size() < n_steps + 1)
        throw std::invalid_argument("simulate_difference: buoyancy series too short");
    for (const auto& p : theta_series)
        if (p.n != g.n || p.box_length != g.box_length)
            throw std::invalid_argument("simulate_difference: buoyancy profile mismatch");
    for (double ts : gtilde_series.times) {
        const double k = ts / dt;
        if (std::fabs(k - std::llround(k)) > 1e-9 ||
            std::llround(k) > static_cast<long long>(n_steps))
            throw std::invalid_argument(
                "simulate_difference: forcing samples off of the step grid");
    }

    SpectralField4 D = D0;
    prepare_state(D, cfg);

    Trajectory traj;
    traj.grid = g;
    traj.par = par;
    traj.dt = dt;
    traj.q_list = cfg.q_list;
    traj.lq_osc.resize(cfg.q_list.size());
    traj.lq_strat.resize(cfg.q_list.size());

    DiffScratch s;
    const double cell_scale = std::pow(g.box_length, 3.0) / static_cast<double>(g.size());

    // boundary-state bookkeeping: the recorded limit state at step k is
    // v_series.omega[k] and theta_series[k]
    auto record_sample = [&](std::size_t k, double t) {
        traj.sample_times.push_back(t);
        if (cfg.record_states) traj.states.push_back(D);
        record_lq_sample(D, tr, t, cfg.q_list, traj.lq_osc, traj.lq_strat);
        if (cfg.record_ledger) {
            traj.ledger.l2_sq.times.push_back(t);
            traj.ledger.l2_sq.values.push_back(l2_sq_of(D));
            traj.ledger.dissipation.times.push_back(t);
            traj.ledger.dissipation.values.push_back(dissipation_of(D, par));

            std::array<scalar_data, 2> vw;
            biot_savart_h(g, v_series.omega[k], vw);
            // A = -(D . grad v_w | D^h) via exact collocation quadrature
            std::array<scalar_data, 3> pd;
            for (int c = 0; c < 3; ++c) tr.to_physical(D.comp[c], pd[c]);
            scalar_data p4(g.size());
            tr.to_physical(D.comp[3], p4);
            const complex_t iu(0.0, 1.0);
            scalar_data grad(g.size());
            double term_a = 0.0;
            for (int c = 0; c < 2; ++c) {
                scalar_data dot(g.size(), complex_t(0.0));
                for (int d = 0; d < 3; ++d) {
                    for (std::size_t i = 0; i < g.n; ++i)
                        for (std::size_t j = 0; j < g.n; ++j) {
                            const double xi1 = g.wavenumber(g.freq(i));
                            const double xi2 = g.wavenumber(g.freq(j));
                            for (std::size_t l = 0; l < g.n; ++l) {
                                const double xid =
                                    d == 0 ? xi1
                                           : (d == 1 ? xi2 : g.wavenumber(g.freq(l)));
                                grad[g.index(i, j, l)] =
                                    iu * xid * vw[c][g.index(i, j, l)];
                            }
                        }
                    tr.to_physical(grad, grad);
                    for (std::size_t m = 0; m < g.size(); ++m)
                        dot[m] += pd[d][m] * grad[m];
                }
                for (std::size_t m = 0; m < g.size(); ++m)
                    term_a -= (dot[m] * std::conj(pd[c][m])).real();
            }
            term_a *= cell_scale;

            const std::vector<complex_t> tp = profile_collocation(theta_series[k], true);
            double term_b = 0.0;
            for (std::size_t i = 0; i < g.n; ++i)
                for (std::size_t j = 0; j < g.n; ++j)
                    for (std::size_t l = 0; l < g.n; ++l) {
                        const std::size_t m = g.index(i, j, l);
                        term_b -= (pd[2][m] * tp[l] * std::conj(p4[m])).real();
                    }
            term_b *= cell_scale;

            SpectralField4 gt = compute_gtilde(g, vw, tr);
            double term_c = 0.0;
            for (int c = 0; c < 4; ++c)
                for (std::size_t m = 0; m < g.size(); ++m)
                    term_c += (gt.comp[c][m] * std::conj(D.comp[c][m])).real();
            term_c *= std::pow(g.box_length, 3.0);

            traj.ledger.term_A.times.push_back(t);
            traj.ledger.term_A.values.push_back(term_a);
            traj.ledger.term_B.times.push_back(t);
            traj.ledger.term_B.values.push_back(term_b);
            traj.ledger.term_C.times.push_back(t);
            traj.ledger.term_C.values.push_back(term_c);
        }
        // validate any supplied forcing sample for this boundary
        for (std::size_t si = 0; si < gtilde_series.times.size(); ++si) {
            if (std::llround(gtilde_series.times[si] / dt) != static_cast<long long>(k))
                continue;
            std::array<scalar_data, 2> vw;
            biot_savart_h(g, v_series.omega[k], vw);
            SpectralField4 gt = compute_gtilde(g, vw, tr);
            SpectralField4 diff = gtilde_series.fields[si];
            diff -= gt;
            const double defect =
                std::sqrt(l2_sq_of(diff)) / (1.0 + std::sqrt(l2_sq_of(gt)));
            traj.forcing_defect = std::max(traj.forcing_defect, defect);
        }
        if (cfg.on_sample) cfg.on_sample(t, D);
    };

    record_sample(0, 0.0);
    traj.l2.times.push_back(0.0);
    traj.l2.values.push_back(std::sqrt(l2_sq_of(D)));

    for (std::size_t step = 0; step < n_steps; ++step) {
        const double t_next = static_cast<double>(step + 1) * dt;

        // reconstruct the limit solver's stage fields for this step
        s.a = v_series.omega[step];
        sns_viscous_half(g, par.nu, dt, s.a);
        sns_advection(g, s.a, tr, s.sns, s.n1, nullptr);
        s.astar = s.a;
        for (std::size_t m = 0; m < g.size(); ++m) s.astar[m] += dt * s.n1[m];
        biot_savart_h(g, s.a, s.vw_a);
        biot_savart_h(g, s.astar, s.vw_astar);
        horizontal_pressure_source(g, s.vw_a, tr, s.q_a);
        horizontal_pressure_source(g, s.vw_astar, tr, s.q_astar);
        const VerticalProfile theta_half =
            heat1d_at(theta_series[step], par.nu_prime, 0.5 * dt);
        const std::vector<complex_t> theta_prime_col =
            profile_collocation(theta_half, true);

        linear_flow(D, par, 0.5 * dt);
        double cfl = 0.0;
        if (cfg.advection) {
            double sup1 = 0.0, sup2 = 0.0;
            difference_tendency(D, s.vw_a, theta_prime_col, s.q_a, tr, s.N1, &sup1);
            if (cfg.friedrichs_radius > 0) friedrichs_project(s.N1, cfg.friedrichs_radius);
            s.star = D;
            axpy(s.star, dt, s.N1);
            difference_tendency(s.star, s.vw_astar, theta_prime_col, s.q_astar, tr,
                                s.N2, &sup2);
            if (cfg.friedrichs_radius > 0) friedrichs_project(s.N2, cfg.friedrichs_radius);
            axpy(D, 0.5 * dt, s.N1);
            axpy(D, 0.5 * dt, s.N2);
            cfl = std::max(sup1, sup2) * dt / g.dx();
        }
        linear_flow(D, par, 0.5 * dt);

        traj.max_cfl = std::max(traj.max_cfl, cfl);
        if (cfl > cfg.cfl_limit)
            throw CflError(cfl, t_next, 0.9 * cfg.cfl_limit * dt / cfl);
        const double l2_now = std::sqrt(l2_sq_of(D));
        if (!std::isfinite(l2_now))
            throw std::runtime_error("simulate_difference: diverged (last stable t = " +
                                     std::to_string(t_next - dt) + ")");
        traj.l2.times.push_back(t_next);
        traj.l2.values.push_back(l2_now);
        if ((step + 1) % cfg.sample_stride == 0) record_sample(step + 1, t_next);
    }
    traj.final_state = D;
    traj.t_end = static_cast<double>(n_steps) * dt;
    return traj;
}

scalar_data diagnostic_pressure(const SpectralField4& D,
                                const std::array<scalar_data, 2>& v_h,
                                const PhysicsParams& par, SpectralTransform& tr) {
    const Grid3& g = D.grid;
    const std::size_t sz = g.size();

    std::array<scalar_data, 3> pV;
    for (int c = 0; c < 3; ++c) tr.to_physical(D.comp[c], pV[c]);
    std::array<scalar_data, 2> pv;
    for (int c = 0; c < 2; ++c) tr.to_physical(v_h[c], pv[c]);

    // symmetric second-moment products: V x V and the V x (v,0) cross part;
    // for each index pair build the dealiased product once and fold it into
    // -xi_i xi_j (product)^ / |xi|^2
    scalar_data work(sz), q(sz, complex_t(0.0));
    auto add_pair = [&](const scalar_data& fa, const scalar_data& fb, int i, int j,
                        double factor) {
        for (std::size_t m = 0; m < sz; ++m) work[m] = fa[m] * fb[m];
        tr.to_spectral(work, work);
        dealias(g, work);
        for (std::size_t a = 0; a < g.n; ++a)
            for (std::size_t b = 0; b < g.n; ++b) {
                const double xi1 = g.wavenumber(g.freq(a));
                const double xi2 = g.wavenumber(g.freq(b));
                for (std::size_t l = 0; l < g.n; ++l) {
                    const double xi3 = g.wavenumber(g.freq(l));
                    const double k2 = xi1 * xi1 + xi2 * xi2 + xi3 * xi3;
                    if (k2 == 0.0) continue;
                    const double xii = i == 0 ? xi1 : (i == 1 ? xi2 : xi3);
                    const double xij = j == 0 ? xi1 : (j == 1 ? xi2 : xi3);
                    const std::size_t m = g.index(a, b, l);
                    q[m] -= factor * xii * xij * work[m] / k2;
                }
            }
    };

    // sum_{i,j<=3} didj(V^i V^j): diagonal once, off-diagonal twice
    for (int i = 0; i < 3; ++i)
        for (int j = i; j < 3; ++j)
            add_pair(pV[i], pV[j], i, j, i == j ? 1.0 : 2.0);
    // cross terms: sum_{i<=3, j<=2} didj(V^i v^j) + transpose
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 2; ++j) add_pair(pV[i], pv[j], i, j, 2.0);

    // -(1/eps) d3 Lap^-1 H
    const complex_t iu(0.0, 1.0);
    for (std::size_t a = 0; a < g.n; ++a)
        for (std::size_t b = 0; b < g.n; ++b) {
            const double xi1 = g.wavenumber(g.freq(a));
            const double xi2 = g.wavenumber(g.freq(b));
            for (std::size_t l = 0; l < g.n; ++l) {
                const double xi3 = g.wavenumber(g.freq(l));
                const double k2 = xi1 * xi1 + xi2 * xi2 + xi3 * xi3;
                if (k2 == 0.0) continue;
                const std::size_t m = g.index(a, b, l);
                q[m] += iu * xi3 * D.comp[3][m] / (par.epsilon * k2);
            }
        }
    return q;
}

EnergyReport energy_report(const Trajectory& traj, const SpaceTimeSeries& g_l2,
                           const SpaceTimeSeries& vh_hhalf_sq,
                           const SpaceTimeSeries& theta_h1, double nu0,
                           double envelope_c0) {
    const EnergyLedger& led = traj.ledger;
    const std::size_t n = led.l2_sq.times.size();
    if (n == 0) throw std::invalid_argument("energy_report: ledger empty");
    assert(g_l2.times.size() == n && vh_hhalf_sq.times.size() == n &&
           theta_h1.times.size() == n);

    EnergyReport rep;
    rep.times = led.l2_sq.times;
    rep.l2_sq = led.l2_sq.values;
    rep.dissipation_int.assign(n, 0.0);
    rep.drive_int.assign(n, 0.0);
    rep.budget_defect.assign(n, 0.0);
    rep.gronwall_bound.assign(n, 0.0);

    double diss = 0.0, drive = 0.0, g_int = 0.0, rate_int = 0.0;
    const bool have_abc = led.term_A.values.size() == n;
    for (std::size_t k = 0; k < n; ++k) {
        if (k > 0) {
            const double h = rep.times[k] - rep.times[k - 1];
            diss += 0.5 * h * (led.dissipation.values[k - 1] + led.dissipation.values[k]);
            if (have_abc) {
                const double f0 = led.term_A.values[k - 1] + led.term_B.values[k - 1] +
                                  led.term_C.values[k - 1];
                const double f1 =
                    led.term_A.values[k] + led.term_B.values[k] + led.term_C.values[k];
                drive += 0.5 * h * (f0 + f1);
            }
            g_int += 0.5 * h * (g_l2.values[k - 1] + g_l2.values[k]);
            const double r0 = g_l2.values[k - 1] + vh_hhalf_sq.values[k - 1] / nu0 +
                              std::pow(theta_h1.values[k - 1], 4.0 / 3.0) /
                                  std::cbrt(nu0);
            const double r1 = g_l2.values[k] + vh_hhalf_sq.values[k] / nu0 +
                              std::pow(theta_h1.values[k], 4.0 / 3.0) / std::cbrt(nu0);
            rate_int += 0.5 * h * (r0 + r1);
        }
        rep.dissipation_int[k] = 2.0 * diss;
        rep.drive_int[k] = 2.0 * drive;
        rep.budget_defect[k] =
            rep.l2_sq[k] + rep.dissipation_int[k] - rep.l2_sq[0] - rep.drive_int[k];
        rep.gronwall_bound[k] =
            (rep.l2_sq[0] + 0.5 * g_int) * std::exp(envelope_c0 * rate_int);
        rep.max_budget_defect =
            std::max(rep.max_budget_defect, std::fabs(rep.budget_defect[k]));
    }
    return rep;
}

}  // namespace stratlab
