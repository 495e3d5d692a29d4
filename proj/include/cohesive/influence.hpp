#pragma once

#include <array>
#include <cmath>
#include <memory>
#include <utility>
#include <vector>

#include "cohesive/common.hpp"
#include "cohesive/interp.hpp"
#include "cohesive/quadrature.hpp"

namespace cohesive {

enum class InfluenceKind { constant, conical, table };

/// Radial influence weight J on the rescaled unit ball: J(r) for r in [0,1),
/// zero for r >= 1. The physical weight at separation q under horizon eps is
/// J(q/eps); one canonical J serves potentials, process-zone weights and the
/// calibration moments.
class InfluenceFunction {
public:
    static InfluenceFunction constant() {
        InfluenceFunction j(InfluenceKind::constant);
        j.init_moments();
        return j;
    }

    static InfluenceFunction conical() {
        InfluenceFunction j(InfluenceKind::conical);
        j.init_moments();
        return j;
    }

    /// Tabulated J >= 0 on abscissae within [0, 1).
    static InfluenceFunction from_table(std::vector<double> r, std::vector<double> value) {
        for (std::size_t i = 0; i < r.size(); ++i) {
            if (r[i] < 0.0 || r[i] >= 1.0)
                throw std::invalid_argument("influence table: abscissae must lie in [0,1)");
            if (value[i] < 0.0) throw std::invalid_argument("influence table: values must be >= 0");
        }
        InfluenceFunction j(InfluenceKind::table);
        j.table_ = std::make_shared<MonotoneCubic>(std::move(r), std::move(value));
        j.init_moments();
        return j;
    }

    double operator()(double r) const {
        if (r >= 1.0 || r < 0.0) return 0.0;
        switch (kind_) {
        case InfluenceKind::constant: return 1.0;
        case InfluenceKind::conical: return 1.0 - r;
        default: return std::max(0.0, (*table_)(r));
        }
    }

    InfluenceKind kind() const { return kind_; }

    /// Radial moment: integral of r^p J(r) over [0,1].
    double moment(int p) const {
        if (p < 0 || p > max_moment) throw std::invalid_argument("influence moment: p out of range");
        return moments_[static_cast<std::size_t>(p)];
    }

    /// Full-ball normalization m = integral of |xi| J(|xi|) over the unit
    /// ball = d * omega_d * moment(d).
    double normalization(int dim) const { return dim * unit_ball_volume(dim) * moment(dim); }

    static constexpr int max_moment = 6;

private:
    explicit InfluenceFunction(InfluenceKind k) : kind_(k) {}

    void init_moments() {
        for (int p = 0; p <= max_moment; ++p)
            moments_[static_cast<std::size_t>(p)] = integrate_adaptive(
                [this, p](double r) { return std::pow(r, p) * (*this)(r); }, 0.0, 1.0, 1e-13);
    }

    InfluenceKind kind_;
    std::shared_ptr<MonotoneCubic> table_;
    std::array<double, max_moment + 1> moments_{};
};

} // namespace cohesive
