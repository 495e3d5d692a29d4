#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <vector>

namespace cohesive {

/// Monotone cubic Hermite interpolant (Fritsch-Carlson slope limiting).
/// Monotone data in, monotone curve out; C1, piecewise-cubic.
class MonotoneCubic {
public:
    MonotoneCubic() = default;

    MonotoneCubic(std::vector<double> x, std::vector<double> y) : x_(std::move(x)), y_(std::move(y)) {
        const std::size_t n = x_.size();
        if (n < 2 || y_.size() != n) throw std::invalid_argument("MonotoneCubic: need >= 2 samples");
        for (std::size_t i = 1; i < n; ++i)
            if (!(x_[i] > x_[i - 1])) throw std::invalid_argument("MonotoneCubic: abscissae must increase");

        std::vector<double> d(n - 1);
        for (std::size_t i = 0; i + 1 < n; ++i) d[i] = (y_[i + 1] - y_[i]) / (x_[i + 1] - x_[i]);

        m_.resize(n);
        // three-point endpoint slopes, clamped to keep monotonicity
        auto endpoint = [](double h0, double h1, double d0, double d1) {
            double m = ((2 * h0 + h1) * d0 - h0 * d1) / (h0 + h1);
            if (m * d0 <= 0) return 0.0;
            if (d0 * d1 <= 0 && std::abs(m) > 3 * std::abs(d0)) return 3 * d0;
            return m;
        };
        if (n == 2) {
            m_[0] = m_[1] = d[0];
        } else {
            m_[0] = endpoint(x_[1] - x_[0], x_[2] - x_[1], d[0], d[1]);
            m_[n - 1] = endpoint(x_[n - 1] - x_[n - 2], x_[n - 2] - x_[n - 3], d[n - 2], d[n - 3]);
        }
        for (std::size_t i = 1; i + 1 < n; ++i) {
            if (d[i - 1] * d[i] <= 0) {
                m_[i] = 0;
            } else {
                // weighted harmonic mean keeps the interpolant monotone
                double w1 = 2 * (x_[i + 1] - x_[i]) + (x_[i] - x_[i - 1]);
                double w2 = (x_[i + 1] - x_[i]) + 2 * (x_[i] - x_[i - 1]);
                m_[i] = (w1 + w2) / (w1 / d[i - 1] + w2 / d[i]);
            }
        }
        // Fritsch-Carlson limiter
        for (std::size_t i = 0; i + 1 < n; ++i) {
            if (d[i] == 0) {
                m_[i] = m_[i + 1] = 0;
                continue;
            }
            double a = m_[i] / d[i], b = m_[i + 1] / d[i];
            double s = a * a + b * b;
            if (s > 9.0) {
                double t = 3.0 / std::sqrt(s);
                m_[i] = t * a * d[i];
                m_[i + 1] = t * b * d[i];
            }
        }
    }

    double x_front() const { return x_.front(); }
    double x_back() const { return x_.back(); }
    double y_back() const { return y_.back(); }

    double operator()(double x) const { return eval<0>(x); }
    double derivative(double x) const { return eval<1>(x); }
    double second_derivative(double x) const { return eval<2>(x); }

private:
    template <int Order>
    double eval(double x) const {
        const std::size_t n = x_.size();
        std::size_t i;
        if (x <= x_.front()) {
            // linear extension keeps f' continuous at the ends
            if constexpr (Order == 0) return y_.front() + m_.front() * (x - x_.front());
            if constexpr (Order == 1) return m_.front();
            return 0.0;
        } else if (x >= x_.back()) {
            if constexpr (Order == 0) return y_.back() + m_.back() * (x - x_.back());
            if constexpr (Order == 1) return m_.back();
            return 0.0;
        } else {
            i = static_cast<std::size_t>(std::upper_bound(x_.begin(), x_.end(), x) - x_.begin()) - 1;
        }
        double h = x_[i + 1] - x_[i];
        double t = (x - x_[i]) / h;
        double y0 = y_[i], y1 = y_[i + 1], k0 = m_[i] * h, k1 = m_[i + 1] * h;
        if constexpr (Order == 0) {
            double h00 = (1 + 2 * t) * (1 - t) * (1 - t);
            double h10 = t * (1 - t) * (1 - t);
            double h01 = t * t * (3 - 2 * t);
            double h11 = t * t * (t - 1);
            return h00 * y0 + h10 * k0 + h01 * y1 + h11 * k1;
        } else if constexpr (Order == 1) {
            double d00 = 6 * t * t - 6 * t;
            double d10 = 3 * t * t - 4 * t + 1;
            double d01 = -6 * t * t + 6 * t;
            double d11 = 3 * t * t - 2 * t;
            return (d00 * y0 + d10 * k0 + d01 * y1 + d11 * k1) / h;
        } else {
            double s00 = 12 * t - 6;
            double s10 = 6 * t - 4;
            double s01 = -12 * t + 6;
            double s11 = 6 * t - 2;
            return (s00 * y0 + s10 * k0 + s01 * y1 + s11 * k1) / (h * h);
        }
    }

    std::vector<double> x_, y_, m_;
};

} // namespace cohesive
