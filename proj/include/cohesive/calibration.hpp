#pragma once

#include <cmath>

#include "cohesive/common.hpp"
#include "cohesive/influence.hpp"
#include "cohesive/potential.hpp"

namespace cohesive {

struct ElasticModuli {
    double mu;
    double lambda;
};

/// Shear and Lame moduli of the small-horizon limit. Central-force model:
/// mu == lambda always (Poisson ratio 1/3 in d=2, 1/4 in d=3).
///   d=2: mu = lambda = (1/4) f'(0) I2,  d=3: mu = lambda = (1/5) f'(0) I3,
/// with Ip the radial moment of J.
inline ElasticModuli elastic_moduli(const CohesivePotential& f, const InfluenceFunction& j, int dim) {
    double mu;
    if (dim == 2)
        mu = 0.25 * f.initial_slope() * j.moment(2);
    else if (dim == 3)
        mu = 0.2 * f.initial_slope() * j.moment(3);
    else
        throw std::invalid_argument("elastic_moduli: dim must be 2 or 3");
    return {mu, mu};
}

/// Critical energy release rate G_c = (2 omega_{d-1} / omega_d) f_inf Id.
inline double energy_release_rate(const CohesivePotential& f, const InfluenceFunction& j, int dim) {
    if (dim != 2 && dim != 3) throw std::invalid_argument("energy_release_rate: dim must be 2 or 3");
    return 2.0 * unit_ball_volume(dim - 1) / unit_ball_volume(dim) * f.plateau() * j.moment(dim);
}

/// Inverts the two moment formulas for the exponential profile: both are
/// linear in (f'(0), f_inf) separately, so the fit is exact.
inline CohesivePotential fit_kernel(double target_mu, double target_gc, const InfluenceFunction& j,
                                    int dim) {
    if (!(target_mu > 0) || !(target_gc > 0))
        throw std::invalid_argument("fit_kernel: targets must be positive");
    double slope0, plateau;
    if (dim == 2) {
        slope0 = 4.0 * target_mu / j.moment(2);
        plateau = target_gc * unit_ball_volume(2) / (2.0 * unit_ball_volume(1) * j.moment(2));
    } else if (dim == 3) {
        slope0 = 5.0 * target_mu / j.moment(3);
        plateau = target_gc * unit_ball_volume(3) / (2.0 * unit_ball_volume(2) * j.moment(3));
    } else {
        throw std::invalid_argument("fit_kernel: dim must be 2 or 3");
    }
    return CohesivePotential::exponential(slope0, plateau);
}

/// Constitutive pair plus derived macroscopic constants.
struct MaterialModel {
    double density;
    double horizon;
    int dim;
    CohesivePotential potential;
    InfluenceFunction influence;
    double mu;
    double lambda;
    double gc;

    static MaterialModel make(double density, double horizon, int dim, CohesivePotential f,
                              InfluenceFunction j) {
        if (!(density > 0)) throw std::invalid_argument("material: density must be positive");
        if (!(horizon > 0) || !(horizon < 1))
            throw std::invalid_argument("material: horizon must lie in (0,1) in rescaled units");
        auto m = elastic_moduli(f, j, dim);
        double gc = energy_release_rate(f, j, dim);
        return MaterialModel{density, horizon, dim, std::move(f), std::move(j), m.mu, m.lambda, gc};
    }

    /// Interaction-ball volume V_d = eps^d omega_d.
    double ball_volume() const { return std::pow(horizon, dim) * unit_ball_volume(dim); }
};

} // namespace cohesive
