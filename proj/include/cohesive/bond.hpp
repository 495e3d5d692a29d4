#pragma once

#include <cmath>

#include "cohesive/common.hpp"
#include "cohesive/influence.hpp"
#include "cohesive/potential.hpp"
#include "cohesive/vec.hpp"

namespace cohesive {

/// One interacting pair: separation q = |y-x| < horizon, unit direction
/// e = (y-x)/q.
template <int D>
struct BondGeometry {
    double separation;
    Vec<D> direction;
    double horizon;

    bool valid() const {
        return separation > 0.0 && separation < horizon &&
               std::abs(direction.norm() - 1.0) <= 1e-12;
    }
};

/// Linearized bond strain S = ((u_y - u_x)/q) . e.
template <int D>
double bond_strain(const Vec<D>& u_x, const Vec<D>& u_y, const BondGeometry<D>& geom) {
    return dot(u_y - u_x, geom.direction) / geom.separation;
}

// Scalar cores, shared by the assembly loops (no direction needed).

/// Potential per unit length times q: (1/eps) J(q/eps) f(q S^2).
inline double bond_potential_q(double strain, double separation, double horizon,
                               const CohesivePotential& f, const InfluenceFunction& j) {
    return j(separation / horizon) * f.value(separation * strain * strain) / horizon;
}

/// Force per unit length: (2/eps) J(q/eps) f'(q S^2) S. Odd in S.
inline double bond_force_per_length_q(double strain, double separation, double horizon,
                                      const CohesivePotential& f, const InfluenceFunction& j) {
    return 2.0 / horizon * j(separation / horizon) * f.slope(separation * strain * strain) * strain;
}

/// d(force per unit length)/dS: (2/eps) J (f'(q S^2) + 2 f''(q S^2) q S^2).
/// Positive below the critical strain, negative above it.
inline double bond_force_curvature_q(double strain, double separation, double horizon,
                                     const CohesivePotential& f, const InfluenceFunction& j) {
    double rho = separation * strain * strain;
    return 2.0 / horizon * j(separation / horizon) * (f.slope(rho) + 2.0 * f.curvature(rho) * rho);
}

template <int D>
double bond_potential(double strain, const BondGeometry<D>& geom, const CohesivePotential& f,
                      const InfluenceFunction& j) {
    return bond_potential_q(strain, geom.separation, geom.horizon, f, j);
}

template <int D>
double bond_force_per_length(double strain, const BondGeometry<D>& geom, const CohesivePotential& f,
                             const InfluenceFunction& j) {
    return bond_force_per_length_q(strain, geom.separation, geom.horizon, f, j);
}

template <int D>
double bond_force_curvature(double strain, const BondGeometry<D>& geom, const CohesivePotential& f,
                            const InfluenceFunction& j) {
    return bond_force_curvature_q(strain, geom.separation, geom.horizon, f, j);
}

/// Critical strain S_c = r_bar / sqrt(q): the force law peaks here and
/// softens beyond.
inline double critical_strain(double separation, const CohesivePotential& f) {
    if (!(separation > 0)) throw std::invalid_argument("critical_strain: separation must be positive");
    return f.inflection_root() / std::sqrt(separation);
}

} // namespace cohesive
