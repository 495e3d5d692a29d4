#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <vector>

#include "cohesive/calibration.hpp"
#include "cohesive/common.hpp"
#include "cohesive/dynamics.hpp"
#include "cohesive/fields.hpp"
#include "cohesive/grid.hpp"
#include "cohesive/parallel.hpp"
#include "cohesive/quadrature.hpp"
#include "cohesive/vec.hpp"

namespace cohesive {

template <int D>
Box<D> unit_box() {
    Box<D> b;
    for (int k = 0; k < D; ++k) {
        b.lo[k] = 0;
        b.hi[k] = 1;
    }
    return b;
}

namespace detail {

// Nonlocal energy density at x: (1/omega_d) Int_{|xi|<1} J(|xi|) f(eps |xi| S^2)/eps dxi,
// S = (u(x + eps xi) - u(x)).e / (eps |xi|). In d=2 the angular integration is
// split at the jump-crossing angles so every Gauss panel sees a smooth
// integrand; smooth fields use a uniform periodic rule.
template <int D>
double pd_density(const AnalyticField<D>& field, const MaterialModel& mat, double eps,
                  const Vec<D>& x, const QuadratureRule1D& radial, int n_angle) {
    const Vec<D> ux = field.displacement(x);
    double acc = 0;

    if constexpr (D == 2) {
        double s_line = 0, theta_n = 0;
        const bool jump = field.has_jump();
        if (jump) {
            s_line = field.jump_line_distance(x);
            theta_n = std::atan2(field.line_normal[1], field.line_normal[0]);
        }
        for (std::size_t ir = 0; ir < radial.node.size(); ++ir) {
            const double r = radial.node[ir];
            const double wr = radial.weight[ir] * r; // polar measure r dr
            const double jw = mat.influence(r);
            if (jw == 0) continue;
            auto arc = [&](double a, double b, int n) {
                // Gauss-4 per sub-panel of the arc
                static constexpr double gx[4] = {-0.861136311594053, -0.339981043584856,
                                                 0.339981043584856, 0.861136311594053};
                static constexpr double gw[4] = {0.347854845137454, 0.652145154862546,
                                                 0.652145154862546, 0.347854845137454};
                double sum = 0;
                double hseg = (b - a) / n;
                for (int pnl = 0; pnl < n; ++pnl) {
                    double c = a + (pnl + 0.5) * hseg;
                    for (int gq = 0; gq < 4; ++gq) {
                        double th = c + 0.5 * hseg * gx[gq];
                        Vec<2> e = vec2(std::cos(th), std::sin(th));
                        Vec<2> y = x + e * (eps * r);
                        double strain = dot(field.displacement(y) - ux, e) / (eps * r);
                        sum += 0.5 * hseg * gw[gq] *
                               mat.potential.value(eps * r * strain * strain);
                    }
                }
                return sum;
            };
            double angular;
            if (jump && std::abs(s_line) < eps * r) {
                // split where the bond endpoint meets the line
                double half = std::acos(std::clamp(-s_line / (eps * r), -1.0, 1.0));
                double a1 = theta_n - half, a2 = theta_n + half;
                int n_in = std::max(2, n_angle / 4);
                angular = arc(a1, a2, n_in) + arc(a2, a1 + 2 * std::numbers::pi, n_in);
            } else {
                angular = arc(0, 2 * std::numbers::pi, std::max(4, n_angle / 4));
            }
            acc += wr * jw * angular;
        }
        return acc / (eps * unit_ball_volume(2));
    } else {
        // spherical product rule: Gauss in cos(polar), uniform in azimuth
        auto polar = gauss_legendre(std::max(4, n_angle / 2), -1.0, 1.0);
        const int n_az = std::max(8, n_angle);
        for (std::size_t ir = 0; ir < radial.node.size(); ++ir) {
            const double r = radial.node[ir];
            const double wr = radial.weight[ir] * r * r;
            const double jw = mat.influence(r);
            if (jw == 0) continue;
            double sphere = 0;
            for (std::size_t ip = 0; ip < polar.node.size(); ++ip) {
                double c = polar.node[ip];
                double s = std::sqrt(std::max(0.0, 1 - c * c));
                double band = 0;
                for (int ia = 0; ia < n_az; ++ia) {
                    double ph = 2 * std::numbers::pi * (ia + 0.5) / n_az;
                    Vec<3> e = vec3(s * std::cos(ph), s * std::sin(ph), c);
                    Vec<3> y = x + e * (eps * r);
                    double strain = dot(field.displacement(y) - ux, e) / (eps * r);
                    band += mat.potential.value(eps * r * strain * strain);
                }
                sphere += polar.weight[ip] * band * (2 * std::numbers::pi / n_az);
            }
            acc += wr * jw * sphere;
        }
        return acc / (eps * unit_ball_volume(3));
    }
}

template <int D>
double pd_energy_level(const AnalyticField<D>& field, const MaterialModel& mat, double eps,
                       const Box<D>& box, int nx, int n_radial, int n_angle) {
    auto radial = gauss_legendre(n_radial, 0.0, 1.0);

    // tensor-product cells with Gauss-3 per axis; cells near a jump line are
    // subdivided (refinement within the eps band of the discontinuity)
    static constexpr double gx[3] = {-0.774596669241483, 0.0, 0.774596669241483};
    static constexpr double gw[3] = {5.0 / 9.0, 8.0 / 9.0, 5.0 / 9.0};

    std::array<double, D> cell{};
    std::array<int, D> cells{};
    std::size_t total_cells = 1;
    for (int k = 0; k < D; ++k) {
        cells[static_cast<std::size_t>(k)] = nx;
        cell[static_cast<std::size_t>(k)] = (box.hi[k] - box.lo[k]) / nx;
        total_cells *= static_cast<std::size_t>(nx);
    }
    const double diag = [&] {
        double s = 0;
        for (int k = 0; k < D; ++k) s += cell[static_cast<std::size_t>(k)] * cell[static_cast<std::size_t>(k)];
        return std::sqrt(s);
    }();

    std::vector<double> partial(total_cells, 0.0);
    parallel_for(total_cells, [&](std::size_t c) {
        std::array<int, D> ci{};
        std::size_t rem = c;
        for (int k = 0; k < D; ++k) {
            ci[static_cast<std::size_t>(k)] = static_cast<int>(rem % static_cast<std::size_t>(nx));
            rem /= static_cast<std::size_t>(nx);
        }
        Vec<D> lo, hi;
        for (int k = 0; k < D; ++k) {
            lo[k] = box.lo[k] + ci[static_cast<std::size_t>(k)] * cell[static_cast<std::size_t>(k)];
            hi[k] = lo[k] + cell[static_cast<std::size_t>(k)];
        }
        int split = 1;
        if (field.has_jump()) {
            Vec<D> mid = (lo + hi) * 0.5;
            if (std::abs(field.jump_line_distance(mid)) < eps + diag) split = 4;
        }
        double sum = 0;
        // subcell tensor Gauss-3
        std::array<int, D> sc{};
        while (true) {
            Vec<D> slo, shi;
            for (int k = 0; k < D; ++k) {
                double w = (hi[k] - lo[k]) / split;
                slo[k] = lo[k] + sc[static_cast<std::size_t>(k)] * w;
                shi[k] = slo[k] + w;
            }
            std::array<int, D> gq{};
            while (true) {
                Vec<D> xq;
                double wq = 1;
                for (int k = 0; k < D; ++k) {
                    double half = 0.5 * (shi[k] - slo[k]);
                    xq[k] = 0.5 * (slo[k] + shi[k]) + half * gx[gq[static_cast<std::size_t>(k)]];
                    wq *= half * gw[gq[static_cast<std::size_t>(k)]];
                }
                sum += wq * pd_density(field, mat, eps, xq, radial, n_angle);
                int k = 0;
                for (; k < D; ++k) {
                    if (++gq[static_cast<std::size_t>(k)] < 3) break;
                    gq[static_cast<std::size_t>(k)] = 0;
                }
                if (k == D) break;
            }
            int k = 0;
            for (; k < D; ++k) {
                if (++sc[static_cast<std::size_t>(k)] < split) break;
                sc[static_cast<std::size_t>(k)] = 0;
            }
            if (k == D) break;
        }
        partial[c] = sum;
    });

    double total = 0;
    for (double p : partial) total += p;
    return total;
}

} // namespace detail

/// Nonlocal energy of an analytic field by dense quadrature over the unit
/// domain, converged to relative 1e-4 under resolution doubling.
template <int D>
double pd_energy_dense(const AnalyticField<D>& field, const MaterialModel& mat, double eps,
                       int base_resolution = 16) {
    const Box<D> box = unit_box<D>();
    int nx = std::max(8, base_resolution);
    if (nx % 2) ++nx; // keep jump lines on cell boundaries
    int n_radial = 12, n_angle = 16;
    double prev = 0;
    bool have_prev = false;
    for (int level = 0; level < 5; ++level) {
        double val = detail::pd_energy_level(field, mat, eps, box, nx, n_radial, n_angle);
        if (have_prev) {
            double scale = std::max({std::abs(val), std::abs(prev), 1e-300});
            if (std::abs(val - prev) <= 1e-4 * scale) return val;
        }
        prev = val;
        have_prev = true;
        nx *= 2;
        n_radial = n_radial * 3 / 2;
        n_angle *= 2;
    }
    throw NonConverged("pd_energy_dense: resolution ceiling reached before 1e-4 agreement");
}

/// Bulk elastic energy plus the surface term:
/// integral of 2 mu |E u|^2 + lambda |div u|^2 over the unit box, plus
/// G_c * (jump length). Closed form for every catalog field.
template <int D>
double lefm_energy(const AnalyticField<D>& field, const MaterialModel& mat) {
    const Box<D> box = unit_box<D>();
    const double mu = mat.mu, lambda = mat.lambda;
    switch (field.kind) {
    case FieldKind::linear:
    case FieldKind::dilation: {
        Mat<D> e = field.gradient.symmetric_part();
        return (2 * mu * e.frobenius2() + lambda * e.trace() * e.trace()) * box.volume();
    }
    case FieldKind::pure_jump: {
        if constexpr (D == 2) return mat.gc * field.jump_length_in(box);
        return 0;
    }
    case FieldKind::mode_i: {
        if constexpr (D == 2) {
            const double a = field.amplitude, r = field.ramp, y = field.y_decay;
            const double plateau_len = field.x1 - field.x0 - 2 * r;
            const double int_phi2 = plateau_len + 0.75 * r;      // int phi^2 dx
            const double int_dphi2 = std::numbers::pi * std::numbers::pi / (4 * r); // int phi'^2
            const double int_psi2 = 2 * (3.0 / 8.0) * y;         // both sides of the line
            const double int_dpsi2 = 2 * std::numbers::pi * std::numbers::pi / (8 * y);
            double bulk = (2 * mu + lambda) * 0.25 * a * a * int_phi2 * int_dpsi2 +
                          4 * mu * (a * a / 16.0) * int_dphi2 * int_psi2;
            return bulk + mat.gc * field.jump_length_in(box);
        }
        return 0;
    }
    case FieldKind::plane_wave: {
        Mat<D> e0 = outer(field.polarization, field.wavevector).symmetric_part();
        double coeff = 2 * mu * e0.frobenius2() + lambda * e0.trace() * e0.trace();
        // int_box cos^2(k.x) dx = (V + Re prod_j int e^{2 i k_j x_j}) / 2
        std::complex<double> osc(1.0, 0.0);
        for (int k = 0; k < D; ++k) {
            double kk = 2 * field.wavevector[k];
            if (std::abs(kk) < 1e-14) {
                osc *= box.hi[k] - box.lo[k];
            } else {
                std::complex<double> i(0, 1);
                osc *= (std::exp(i * (kk * box.hi[k])) - std::exp(i * (kk * box.lo[k]))) / (i * kk);
            }
        }
        double int_cos2 = 0.5 * (box.volume() + osc.real());
        return coeff * field.wave_amplitude * field.wave_amplitude * int_cos2;
    }
    }
    return 0;
}

template <int D>
struct InequalityReport {
    double pd = 0;
    double lefm = 0;
    bool holds = false;
};

/// PD^eps(u) <= LEFM(u) up to 1e-3 quadrature slack.
template <int D>
InequalityReport<D> check_inequality(const AnalyticField<D>& field, const MaterialModel& mat,
                                     double eps) {
    InequalityReport<D> rep;
    rep.pd = pd_energy_dense(field, mat, eps);
    rep.lefm = lefm_energy(field, mat);
    rep.holds = rep.pd <= rep.lefm * (1.0 + 1e-3);
    return rep;
}

/// PD^{M eta}(u) <= PD^{eta}(u) up to 1e-3 quadrature slack.
template <int D>
bool check_monotonicity(const AnalyticField<D>& field, const MaterialModel& mat, double eta, int m) {
    if (m < 1 || !(m * eta < 1.0))
        throw std::invalid_argument("check_monotonicity: need integer M >= 1 with M*eta < 1");
    double coarse = pd_energy_dense(field, mat, m * eta);
    double fine = pd_energy_dense(field, mat, eta);
    return coarse <= fine * (1.0 + 1e-3);
}

template <int D>
struct PlaneWaveReport {
    double l2_error = 0;
    double dt = 0;
    int steps = 0;
    double window_halfwidth = 0;
    double shear_speed = 0;
    double longitudinal_speed = 0;
};

/// Runs the dynamics from exact elastic plane-wave initial data on a fresh
/// grid and compares against the traveling wave inside an interior window
/// that boundary effects cannot reach within time T.
///
/// Wave speeds follow from the energy functional 2 mu |Eu|^2 + lambda |div u|^2
/// whose wave operator is div(4 mu Eu + 2 lambda tr(Eu) I):
/// c_s = sqrt(2 mu / rho), c_l = sqrt(2 (lambda + 2 mu) / rho).
template <int D>
PlaneWaveReport<D> plane_wave_check(const MaterialModel& mat, const Vec<D>& k, const Vec<D>& p,
                                    double T, double m_ratio = 4.0, double amplitude_scale = 1e-3) {
    PlaneWaveReport<D> rep;
    rep.shear_speed = std::sqrt(2.0 * mat.mu / mat.density);
    rep.longitudinal_speed = std::sqrt(2.0 * (mat.lambda + 2.0 * mat.mu) / mat.density);

    const double knorm = k.norm();
    if (!(knorm > 0)) throw std::invalid_argument("plane_wave_check: zero wave vector");
    const Vec<D> phat = p.normalized();
    const double align = std::abs(dot(phat, k)) / knorm;
    double speed;
    if (align < 1e-9) speed = rep.shear_speed;
    else if (align > 1.0 - 1e-9) speed = rep.longitudinal_speed;
    else throw std::invalid_argument("plane_wave_check: polarization must be parallel or normal to k");

    const double wavelength = 2 * std::numbers::pi / knorm;
    const double eps = mat.horizon;
    if (!(wavelength > 4 * eps))
        throw std::invalid_argument("plane_wave_check: wavelength must be well above the horizon");

    DomainSpec<D> spec;
    spec.bounds = unit_box<D>();
    spec.spacing = eps / m_ratio;
    spec.horizon = eps;
    spec.collar_thickness = 2 * eps + 2 * spec.spacing;
    auto grid = build_grid(spec);

    const double amplitude = amplitude_scale * wavelength;
    AnalyticField<D> wave = AnalyticField<D>::plane_wave(k, phat, amplitude, speed);

    // boundary influence travels at most c_l T plus a few horizons inward
    rep.window_halfwidth = 0.5 - spec.collar_thickness - rep.longitudinal_speed * T - 3 * eps;
    if (rep.window_halfwidth < 2 * spec.spacing)
        throw InvalidSpec("plane_wave_check: domain too small for an echo-free window at this T");

    std::vector<Vec<D>> u0(grid.node_count()), v0(grid.node_count());
    for (std::size_t n = 0; n < grid.node_count(); ++n) {
        u0[n] = wave.displacement(grid.position[n], 0.0);
        v0[n] = wave.velocity(grid.position[n], 0.0);
    }
    auto st = initialize_state(grid, mat, BodyForce<D>::zero(), std::move(u0), std::move(v0));

    double dt = stable_dt(grid, mat, 0.5);
    rep.steps = static_cast<int>(std::ceil(T / dt));
    rep.dt = T / rep.steps;
    for (int s = 0; s < rep.steps; ++s) step(st, grid, mat, BodyForce<D>::zero(), rep.dt);

    double num = 0, den = 0;
    for (int i : grid.interior) {
        std::size_t n = static_cast<std::size_t>(i);
        bool in_window = true;
        for (int kk = 0; kk < D; ++kk)
            if (std::abs(grid.position[n][kk] - 0.5) > rep.window_halfwidth) in_window = false;
        if (!in_window) continue;
        Vec<D> exact = wave.displacement(grid.position[n], st.time);
        num += (st.u[n] - exact).norm2();
        den += exact.norm2();
    }
    rep.l2_error = den > 0 ? std::sqrt(num / den) : std::sqrt(num);
    return rep;
}

} // namespace cohesive
