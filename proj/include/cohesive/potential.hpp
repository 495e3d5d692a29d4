#pragma once

#include <cmath>
#include <utility>
#include <vector>

#include "cohesive/common.hpp"
#include "cohesive/interp.hpp"

namespace cohesive {

enum class ProfileKind { exponential, rational, table };

/// Cohesive potential profile f: [0,inf) -> [0, f_inf).
///
/// f(0) = 0, f strictly increasing and concave, f(r)/r -> f'(0) as r -> 0+,
/// f -> plateau at infinity. The inflection data are stated in terms of
/// rho = |y-x| S^2: rho_bar solves f'(rho) + 2 rho f''(rho) = 0 and
/// r_bar = sqrt(rho_bar), so that the bond force over S peaks at
/// S_c = r_bar / sqrt(|y-x|). (The map r -> f(r^2) inflects at r_bar; the
/// root equation lives in the squared variable.)
class CohesivePotential {
public:
    /// f(rho) = plateau * (1 - exp(-(slope0/plateau) rho)); rho_bar = plateau/(2 slope0).
    static CohesivePotential exponential(double initial_slope, double plateau) {
        check_params(initial_slope, plateau);
        CohesivePotential f;
        f.kind_ = ProfileKind::exponential;
        f.slope0_ = initial_slope;
        f.plateau_ = plateau;
        f.rate_ = initial_slope / plateau;
        f.inflection_ = plateau / (2.0 * initial_slope);
        return f;
    }

    /// f(rho) = plateau * rho / (rho + c), c = plateau/slope0; rho_bar = c/3.
    static CohesivePotential rational(double initial_slope, double plateau) {
        check_params(initial_slope, plateau);
        CohesivePotential f;
        f.kind_ = ProfileKind::rational;
        f.slope0_ = initial_slope;
        f.plateau_ = plateau;
        f.rate_ = plateau / initial_slope; // c
        f.inflection_ = f.rate_ / 3.0;
        return f;
    }

    /// Tabulated profile on increasing abscissae starting at rho=0 with f(0)=0.
    /// Values must be strictly increasing with strictly decreasing secant
    /// slopes (concavity); rejected otherwise. Beyond the table the profile
    /// continues linearly with the final slope.
    static CohesivePotential from_table(std::vector<double> rho, std::vector<double> value) {
        if (rho.size() < 3) throw std::invalid_argument("potential table: need >= 3 samples");
        if (rho.front() != 0.0 || value.front() != 0.0)
            throw std::invalid_argument("potential table: first sample must be (0, 0)");
        for (std::size_t i = 1; i < rho.size(); ++i)
            if (!(value[i] > value[i - 1]))
                throw std::invalid_argument("potential table: values must increase");
        double prev = (value[1] - value[0]) / (rho[1] - rho[0]);
        for (std::size_t i = 2; i < rho.size(); ++i) {
            double s = (value[i] - value[i - 1]) / (rho[i] - rho[i - 1]);
            if (!(s < prev)) throw std::invalid_argument("potential table: not concave");
            prev = s;
        }
        CohesivePotential f;
        f.kind_ = ProfileKind::table;
        f.plateau_ = value.back();
        f.table_ = MonotoneCubic(std::move(rho), std::move(value));
        f.slope0_ = f.table_.derivative(0.0);
        f.inflection_ = f.find_inflection();
        return f;
    }

    double value(double rho) const {
        switch (kind_) {
        case ProfileKind::exponential: return plateau_ * -std::expm1(-rate_ * rho);
        case ProfileKind::rational: return plateau_ * rho / (rho + rate_);
        default: return table_(rho);
        }
    }

    /// f'
    double slope(double rho) const {
        switch (kind_) {
        case ProfileKind::exponential: return slope0_ * std::exp(-rate_ * rho);
        case ProfileKind::rational: {
            double d = rho + rate_;
            return plateau_ * rate_ / (d * d);
        }
        default: return table_.derivative(rho);
        }
    }

    /// f''
    double curvature(double rho) const {
        switch (kind_) {
        case ProfileKind::exponential: return -rate_ * slope0_ * std::exp(-rate_ * rho);
        case ProfileKind::rational: {
            double d = rho + rate_;
            return -2.0 * plateau_ * rate_ / (d * d * d);
        }
        default: return table_.second_derivative(rho);
        }
    }

    /// f and f' together; the assembly loop calls this per bond and the
    /// built-in profiles share one transcendental evaluation.
    void value_and_slope(double rho, double& value_out, double& slope_out) const {
        switch (kind_) {
        case ProfileKind::exponential: {
            double s = std::exp(-rate_ * rho);
            value_out = plateau_ * (1.0 - s);
            slope_out = slope0_ * s;
            return;
        }
        case ProfileKind::rational: {
            double inv = 1.0 / (rho + rate_);
            value_out = plateau_ * rho * inv;
            slope_out = plateau_ * rate_ * inv * inv;
            return;
        }
        default:
            value_out = table_(rho);
            slope_out = table_.derivative(rho);
            return;
        }
    }

    double initial_slope() const { return slope0_; }
    double plateau() const { return plateau_; }
    ProfileKind kind() const { return kind_; }

    /// rho_bar: root of f'(rho) + 2 rho f''(rho) = 0.
    double inflection_argument() const { return inflection_; }
    /// r_bar = sqrt(rho_bar).
    double inflection_root() const { return std::sqrt(inflection_); }

private:
    static void check_params(double slope0, double plateau) {
        if (!(slope0 > 0) || !(plateau > 0))
            throw std::invalid_argument("cohesive potential: initial slope and plateau must be positive");
    }

    double find_inflection() const {
        auto g = [this](double p) { return slope(p) + 2.0 * p * curvature(p); };
        // scan for a sign change, then bisect inside the bracketing segment
        double hi = table_.x_back();
        const int n = 4096;
        double a = 0.0, ga = g(0.0);
        for (int i = 1; i <= n; ++i) {
            double b = hi * i / n;
            double gb = g(b);
            if (ga > 0 && gb <= 0) {
                for (int it = 0; it < 200; ++it) {
                    double m = 0.5 * (a + b);
                    (g(m) > 0 ? a : b) = m;
                }
                return 0.5 * (a + b);
            }
            a = b;
            ga = gb;
        }
        throw RootNotFound("potential table: no inflection of r -> f(r^2) found (profile too close to linear?)");
    }

    ProfileKind kind_ = ProfileKind::exponential;
    double slope0_ = 1.0;
    double plateau_ = 1.0;
    double rate_ = 1.0; // decay rate (exponential) or pole offset c (rational)
    double inflection_ = 0.5;
    MonotoneCubic table_;
};

} // namespace cohesive
