#pragma once

#include <cmath>
#include <numbers>
#include <string>

#include "cohesive/common.hpp"
#include "cohesive/grid.hpp"
#include "cohesive/vec.hpp"

namespace cohesive {

enum class FieldKind { linear, dilation, pure_jump, mode_i, plane_wave };

/// Closed-form displacement fields with exact strain and jump data, used by
/// the energy verification routines and as simulation initial data.
///
///  linear      u = G x
///  dilation    u = c x
///  pure_jump   u = jump * H((x - p).n)  across a full line (d=2)
///  mode_i      opening of amplitude A across y = line_y, tapered along the
///              line by cosine ramps on [x0, x1] and transversally within
///              y_decay (d=2)
///  plane_wave  u = A p sin(k.x - w t)
template <int D>
struct AnalyticField {
    FieldKind kind = FieldKind::linear;

    Mat<D> gradient{}; // linear / dilation: u = gradient * x

    Vec<D> line_point{}, line_normal{}; // jump line (pure_jump, mode_i)
    Vec<D> jump{};                      // pure_jump

    double x0 = 0, x1 = 0, ramp = 0, amplitude = 0, y_decay = 0; // mode_i

    Vec<D> wavevector{}, polarization{};
    double wave_amplitude = 0, speed = 0; // plane_wave

    static AnalyticField linear(const Mat<D>& g) {
        AnalyticField f;
        f.kind = FieldKind::linear;
        f.gradient = g;
        return f;
    }

    static AnalyticField dilation(double c) {
        AnalyticField f;
        f.kind = FieldKind::dilation;
        f.gradient = Mat<D>::identity() * c;
        return f;
    }

    static AnalyticField pure_jump(const Vec<D>& point, const Vec<D>& normal, const Vec<D>& jump_vec)
        requires(D == 2)
    {
        AnalyticField f;
        f.kind = FieldKind::pure_jump;
        f.line_point = point;
        f.line_normal = normal.normalized();
        f.jump = jump_vec;
        return f;
    }

    static AnalyticField mode_i(double line_y, double x0, double x1, double ramp, double amplitude,
                                double y_decay)
        requires(D == 2)
    {
        if (!(x1 - x0 > 2 * ramp) || !(ramp > 0) || !(y_decay > 0))
            throw std::invalid_argument("mode_i field: need x1 - x0 > 2*ramp and positive tapers");
        AnalyticField f;
        f.kind = FieldKind::mode_i;
        f.line_point = vec2(0.0, line_y);
        f.line_normal = vec2(0.0, 1.0);
        f.x0 = x0;
        f.x1 = x1;
        f.ramp = ramp;
        f.amplitude = amplitude;
        f.y_decay = y_decay;
        return f;
    }

    static AnalyticField plane_wave(const Vec<D>& k, const Vec<D>& p, double amplitude, double speed) {
        AnalyticField f;
        f.kind = FieldKind::plane_wave;
        f.wavevector = k;
        f.polarization = p.normalized();
        f.wave_amplitude = amplitude;
        f.speed = speed;
        return f;
    }

    std::string name() const {
        switch (kind) {
        case FieldKind::linear: return "linear";
        case FieldKind::dilation: return "dilation";
        case FieldKind::pure_jump: return "pure-jump";
        case FieldKind::mode_i: return "mode-i";
        case FieldKind::plane_wave: return "plane-wave";
        }
        return "?";
    }

    Vec<D> displacement(const Vec<D>& x, double t = 0) const {
        switch (kind) {
        case FieldKind::linear:
        case FieldKind::dilation: return gradient * x;
        case FieldKind::pure_jump: return dot(x - line_point, line_normal) >= 0 ? jump : Vec<D>{};
        case FieldKind::mode_i: {
            double s = x[1] - line_point[1];
            double sign = s >= 0 ? 1.0 : -1.0;
            Vec<D> u{};
            u[1] = 0.5 * amplitude * sign * along(x[0]) * across(std::abs(s));
            return u;
        }
        case FieldKind::plane_wave: {
            double omega = speed * wavevector.norm();
            return polarization * (wave_amplitude * std::sin(dot(wavevector, x) - omega * t));
        }
        }
        return {};
    }

    Vec<D> velocity(const Vec<D>& x, double t = 0) const {
        if (kind != FieldKind::plane_wave) return {};
        double omega = speed * wavevector.norm();
        return polarization * (-wave_amplitude * omega * std::cos(dot(wavevector, x) - omega * t));
    }

    /// Absolutely continuous strain (defined off the jump set).
    Mat<D> strain(const Vec<D>& x, double t = 0) const {
        switch (kind) {
        case FieldKind::linear:
        case FieldKind::dilation: return gradient.symmetric_part();
        case FieldKind::pure_jump: return {};
        case FieldKind::mode_i: {
            double s = x[1] - line_point[1];
            double sign = s >= 0 ? 1.0 : -1.0;
            Mat<D> e{};
            double exy = 0.25 * amplitude * sign * along_d(x[0]) * across(std::abs(s));
            e(0, 1) = e(1, 0) = exy;
            e(1, 1) = 0.5 * amplitude * along(x[0]) * across_d(std::abs(s));
            return e;
        }
        case FieldKind::plane_wave: {
            double omega = speed * wavevector.norm();
            double c = wave_amplitude * std::cos(dot(wavevector, x) - omega * t);
            return outer(polarization, wavevector).symmetric_part() * c;
        }
        }
        return {};
    }

    bool has_jump() const { return kind == FieldKind::pure_jump || kind == FieldKind::mode_i; }

    /// Signed distance to the jump line (valid when has_jump()).
    double jump_line_distance(const Vec<D>& x) const { return dot(x - line_point, line_normal); }

    /// Length of the jump set inside a box (jump lines are axis-parallel or
    /// clipped straight lines).
    double jump_length_in(const Box<D>& box) const
        requires(D == 2)
    {
        if (kind == FieldKind::pure_jump) {
            // chord of the straight line {(x-p).n = 0} inside the box
            Vec<2> dir = vec2(-line_normal[1], line_normal[0]);
            double tmin = -1e300, tmax = 1e300;
            for (int k = 0; k < 2; ++k) {
                if (std::abs(dir[k]) < 1e-15) {
                    if (line_point[k] < box.lo[k] || line_point[k] > box.hi[k]) return 0.0;
                    continue;
                }
                double t1 = (box.lo[k] - line_point[k]) / dir[k];
                double t2 = (box.hi[k] - line_point[k]) / dir[k];
                tmin = std::max(tmin, std::min(t1, t2));
                tmax = std::min(tmax, std::max(t1, t2));
            }
            return std::max(0.0, tmax - tmin);
        }
        if (kind == FieldKind::mode_i) {
            if (line_point[1] < box.lo[1] || line_point[1] > box.hi[1]) return 0.0;
            return std::max(0.0, std::min(x1, box.hi[0]) - std::max(x0, box.lo[0]));
        }
        return 0.0;
    }

    // mode_i taper profiles (public: the closed-form energy uses the same pieces)
    double along(double x) const {
        if (x <= x0 || x >= x1) return 0.0;
        if (x < x0 + ramp) {
            double s = std::sin(0.5 * std::numbers::pi * (x - x0) / ramp);
            return s * s;
        }
        if (x > x1 - ramp) {
            double s = std::sin(0.5 * std::numbers::pi * (x1 - x) / ramp);
            return s * s;
        }
        return 1.0;
    }

    double along_d(double x) const {
        if (x <= x0 || x >= x1) return 0.0;
        if (x < x0 + ramp) return 0.5 * std::numbers::pi / ramp * std::sin(std::numbers::pi * (x - x0) / ramp);
        if (x > x1 - ramp) return -0.5 * std::numbers::pi / ramp * std::sin(std::numbers::pi * (x1 - x) / ramp);
        return 0.0;
    }

    double across(double s) const {
        if (s >= y_decay) return 0.0;
        double c = std::cos(0.5 * std::numbers::pi * s / y_decay);
        return c * c;
    }

    double across_d(double s) const {
        if (s >= y_decay) return 0.0;
        return -0.5 * std::numbers::pi / y_decay * std::sin(std::numbers::pi * s / y_decay);
    }
};

} // namespace cohesive
