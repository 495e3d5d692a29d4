#pragma once

#include <cmath>

#include "cohesive/vec.hpp"

namespace cohesive {

enum class BodyForceKind { zero, constant, ramped, plane_wave_source };

/// Closed-form body force density b(t, x) from a small catalog. The time
/// derivative is exposed analytically because the energy ledger integrates
/// b_t . u.
template <int D>
struct BodyForce {
    BodyForceKind kind = BodyForceKind::zero;
    Vec<D> amplitude{};  // direction and magnitude
    double ramp_time = 1; // `ramped` reaches full amplitude here
    Vec<D> wavevector{}; // `plane_wave_source`
    double omega = 0;

    static BodyForce zero() { return {}; }

    static BodyForce constant(Vec<D> b) { return {BodyForceKind::constant, b, 1, {}, 0}; }

    static BodyForce ramped(Vec<D> b, double t_ramp) {
        return {BodyForceKind::ramped, b, t_ramp, {}, 0};
    }

    static BodyForce plane_wave_source(Vec<D> b, Vec<D> k, double omega) {
        return {BodyForceKind::plane_wave_source, b, 1, k, omega};
    }

    Vec<D> value(double t, const Vec<D>& x) const {
        switch (kind) {
        case BodyForceKind::zero: return {};
        case BodyForceKind::constant: return amplitude;
        case BodyForceKind::ramped: return amplitude * std::min(t / ramp_time, 1.0);
        case BodyForceKind::plane_wave_source: return amplitude * std::sin(dot(wavevector, x) - omega * t);
        }
        return {};
    }

    Vec<D> time_derivative(double t, const Vec<D>& x) const {
        switch (kind) {
        case BodyForceKind::zero: return {};
        case BodyForceKind::constant: return {};
        case BodyForceKind::ramped: return t < ramp_time ? amplitude * (1.0 / ramp_time) : Vec<D>{};
        case BodyForceKind::plane_wave_source:
            return amplitude * (-omega * std::cos(dot(wavevector, x) - omega * t));
        }
        return {};
    }

    bool is_zero() const { return kind == BodyForceKind::zero; }
    bool time_constant() const {
        return kind == BodyForceKind::zero || kind == BodyForceKind::constant;
    }
};

} // namespace cohesive
