#pragma once

#include <cmath>
#include <cstddef>
#include <vector>

#include "cohesive/body_force.hpp"
#include "cohesive/calibration.hpp"
#include "cohesive/grid.hpp"
#include "cohesive/parallel.hpp"
#include "cohesive/vec.hpp"

namespace cohesive {

/// Running energy audit. total() is the system energy
///   E(t) = kinetic + potential - integral of b(t).u,
/// and the balance law states E(t) = E(0) - int_0^t int_D b_t . u.
struct EnergyLedger {
    double kinetic = 0;
    double potential = 0;
    double external = 0;      // integral of b(t) . u over the domain
    double initial_total = 0; // E(0)
    double work_integral = 0; // int_0^t int_D b_t . u  (trapezoid in time)
    double prev_work_rate = 0;
    double body_l2_integral = 0; // int_0^t ||b(tau)||_L2 dtau (process-zone bound input)
    double prev_body_l2 = 0;

    double total() const { return kinetic + potential - external; }
    double residual() const { return std::abs(total() - initial_total + work_integral); }
};

template <int D>
struct SimState {
    double time = 0;
    std::vector<Vec<D>> u, v, a;
    EnergyLedger ledger;
};

template <int D>
void zero_constrained(const DomainGrid<D>& grid, std::vector<Vec<D>>& field) {
    for (std::size_t n = 0; n < grid.node_count(); ++n)
        if (grid.constrained[n]) field[n] = Vec<D>{};
}

/// Internal force density F_i = (2/V_d) sum_j (force per unit length)(S_ij) e_ij w_ij
/// on interior nodes; zero on constrained nodes. When potential_out is given
/// it also accumulates the total cohesive energy in the same sweep:
/// bonds are counted from both endpoints, so interior-collar bonds enter
/// twice -- that makes the value the exact conserved energy of this force
/// field and the discrete version of the energy functional over the whole
/// domain (collar-centered neighborhoods included).
template <int D>
void assemble_force(const DomainGrid<D>& grid, const std::vector<Vec<D>>& u,
                    const MaterialModel& mat, std::vector<Vec<D>>& force,
                    double* potential_out = nullptr) {
    const double eps = mat.horizon;
    const double inv_ball = 1.0 / mat.ball_volume();
    const std::size_t rows = grid.interior_count();

    force.assign(grid.node_count(), Vec<D>{});
    std::vector<double> row_potential;
    const bool want_pot = potential_out != nullptr;
    if (want_pot) row_potential.assign(rows, 0.0);

    parallel_for(rows, [&](std::size_t r) {
        const int i = grid.interior[r];
        const Vec<D> xi = grid.position[static_cast<std::size_t>(i)];
        const Vec<D> ui = u[static_cast<std::size_t>(i)];
        Vec<D> sum{};
        double pot = 0;
        for (std::size_t s = grid.row_begin(static_cast<int>(r)); s < grid.row_end(static_cast<int>(r)); ++s) {
            const std::size_t j = static_cast<std::size_t>(grid.neighbor_node[s]);
            const double w = grid.neighbor_weight[s];
            const Vec<D> dx = grid.position[j] - xi;
            const double q = dx.norm();
            const double inv_q = 1.0 / q;
            const Vec<D> e = dx * inv_q;
            const double strain = dot(u[j] - ui, e) * inv_q;
            const double rho_bond = q * strain * strain;
            const double jw = mat.influence(q / eps);
            double fval, fslope;
            mat.potential.value_and_slope(rho_bond, fval, fslope);
            sum += e * (2.0 / eps * jw * fslope * strain * w);
            if (want_pot) pot += jw * fval / eps * w * (grid.constrained[j] ? 2.0 : 1.0);
        }
        force[static_cast<std::size_t>(i)] = sum * (2.0 * inv_ball);
        if (want_pot) row_potential[r] = pot;
    });

    if (want_pot) {
        double total = 0;
        for (double p : row_potential) total += p; // fixed order, deterministic
        *potential_out = total * grid.cell_volume * inv_ball;
    }
}

/// Cohesive potential energy of a displacement field (same bond counting as
/// the fused path in assemble_force).
template <int D>
double total_potential(const DomainGrid<D>& grid, const std::vector<Vec<D>>& u,
                       const MaterialModel& mat) {
    std::vector<Vec<D>> scratch;
    double pot = 0;
    assemble_force(grid, u, mat, scratch, &pot);
    return pot;
}

/// Linearized row-sum stiffness bound
///   K_max = max_i (2/V_d) sum_j (2/eps) J(q/eps) f'(0) / q * w_ij,
/// which majorizes the softening-regime curvature; dt = safety sqrt(2 rho / K_max).
template <int D>
double stable_dt(const DomainGrid<D>& grid, const MaterialModel& mat, double safety) {
    if (!(safety > 0.0) || safety > 1.0)
        throw std::invalid_argument("stable_dt: safety must lie in (0, 1]");
    const double eps = mat.horizon;
    const double slope0 = mat.potential.initial_slope();
    const double inv_ball = 1.0 / mat.ball_volume();
    double k_max = 0;
    for (std::size_t r = 0; r < grid.interior_count(); ++r) {
        const int i = grid.interior[r];
        const Vec<D> xi = grid.position[static_cast<std::size_t>(i)];
        double k_row = 0;
        for (std::size_t s = grid.row_begin(static_cast<int>(r)); s < grid.row_end(static_cast<int>(r)); ++s) {
            const Vec<D> dx = grid.position[static_cast<std::size_t>(grid.neighbor_node[s])] - xi;
            const double q = dx.norm();
            k_row += 2.0 / eps * mat.influence(q / eps) * slope0 / q * grid.neighbor_weight[s];
        }
        k_max = std::max(k_max, 2.0 * inv_ball * k_row);
    }
    if (k_max <= 0) throw InvalidSpec("stable_dt: grid has no bonds");
    return safety * std::sqrt(2.0 * mat.density / k_max);
}

namespace detail {

template <int D>
double kinetic_energy(const DomainGrid<D>& grid, const std::vector<Vec<D>>& v, double density) {
    double s = 0;
    for (std::size_t n = 0; n < grid.node_count(); ++n) s += v[n].norm2();
    return 0.5 * density * s * grid.cell_volume;
}

template <int D>
double external_term(const DomainGrid<D>& grid, const BodyForce<D>& bf, double t,
                     const std::vector<Vec<D>>& u) {
    if (bf.is_zero()) return 0;
    double s = 0;
    for (int i : grid.interior) // u vanishes on the collar
        s += dot(bf.value(t, grid.position[static_cast<std::size_t>(i)]), u[static_cast<std::size_t>(i)]);
    return s * grid.cell_volume;
}

template <int D>
double work_rate(const DomainGrid<D>& grid, const BodyForce<D>& bf, double t,
                 const std::vector<Vec<D>>& u) {
    if (bf.time_constant()) return 0;
    double s = 0;
    for (int i : grid.interior)
        s += dot(bf.time_derivative(t, grid.position[static_cast<std::size_t>(i)]),
                 u[static_cast<std::size_t>(i)]);
    return s * grid.cell_volume;
}

template <int D>
double body_l2_norm(const DomainGrid<D>& grid, const BodyForce<D>& bf, double t) {
    if (bf.is_zero()) return 0;
    double s = 0;
    for (std::size_t n = 0; n < grid.node_count(); ++n) s += bf.value(t, grid.position[n]).norm2();
    return std::sqrt(s * grid.cell_volume);
}

} // namespace detail

/// Builds the state at t = 0: pins the collar, assembles accelerations and
/// seeds the ledger reference energy.
template <int D>
SimState<D> initialize_state(const DomainGrid<D>& grid, const MaterialModel& mat,
                             const BodyForce<D>& bf, std::vector<Vec<D>> u0,
                             std::vector<Vec<D>> v0) {
    SimState<D> st;
    st.time = 0;
    st.u = std::move(u0);
    st.v = std::move(v0);
    st.u.resize(grid.node_count());
    st.v.resize(grid.node_count());
    zero_constrained(grid, st.u);
    zero_constrained(grid, st.v);

    double pot = 0;
    assemble_force(grid, st.u, mat, st.a, &pot);
    const double inv_rho = 1.0 / mat.density;
    for (int i : grid.interior) {
        std::size_t n = static_cast<std::size_t>(i);
        st.a[n] = (st.a[n] + bf.value(0.0, grid.position[n])) * inv_rho;
    }

    st.ledger.kinetic = detail::kinetic_energy(grid, st.v, mat.density);
    st.ledger.potential = pot;
    st.ledger.external = detail::external_term(grid, bf, 0.0, st.u);
    st.ledger.initial_total = st.ledger.total();
    st.ledger.prev_work_rate = detail::work_rate(grid, bf, 0.0, st.u);
    st.ledger.prev_body_l2 = detail::body_l2_norm(grid, bf, 0.0);
    return st;
}

/// One velocity-Verlet step:
///   v_half = v + dt/2 a;  u += dt v_half;  reassemble;  v = v_half + dt/2 a_new.
/// The collar is re-zeroed after every substep and the ledger is refreshed
/// at the new time.
template <int D>
void step(SimState<D>& st, const DomainGrid<D>& grid, const MaterialModel& mat,
          const BodyForce<D>& bf, double dt) {
    const double inv_rho = 1.0 / mat.density;
    const double t_new = st.time + dt;

    for (int i : grid.interior) {
        std::size_t n = static_cast<std::size_t>(i);
        st.v[n] += st.a[n] * (0.5 * dt);
        st.u[n] += st.v[n] * dt;
    }

    double pot = 0;
    assemble_force(grid, st.u, mat, st.a, &pot);
    for (int i : grid.interior) {
        std::size_t n = static_cast<std::size_t>(i);
        st.a[n] = (st.a[n] + bf.value(t_new, grid.position[n])) * inv_rho;
        st.v[n] += st.a[n] * (0.5 * dt);
    }

    st.time = t_new;
    st.ledger.kinetic = detail::kinetic_energy(grid, st.v, mat.density);
    st.ledger.potential = pot;
    st.ledger.external = detail::external_term(grid, bf, t_new, st.u);

    double rate = detail::work_rate(grid, bf, t_new, st.u);
    st.ledger.work_integral += 0.5 * dt * (st.ledger.prev_work_rate + rate);
    st.ledger.prev_work_rate = rate;

    double bl2 = detail::body_l2_norm(grid, bf, t_new);
    st.ledger.body_l2_integral += 0.5 * dt * (st.ledger.prev_body_l2 + bl2);
    st.ledger.prev_body_l2 = bl2;
}

/// |E(t) - E(0) + int_0^t int_D b_t . u| from the maintained ledger.
inline double energy_balance_residual(const EnergyLedger& ledger) { return ledger.residual(); }

} // namespace cohesive
