#pragma once

#include <array>
#include <cmath>
#include <cstddef>
#include <utility>
#include <vector>

#include "cohesive/common.hpp"

namespace cohesive {

namespace detail {

// Gauss-Kronrod 7-15 nodes/weights on [-1, 1].
inline constexpr std::array<double, 8> gk_nodes = {
    0.991455371120813, 0.949107912342759, 0.864864423359769, 0.741531185599394,
    0.586087235467691, 0.405845151377397, 0.207784955007898, 0.0};
inline constexpr std::array<double, 8> gk_weights_k = {
    0.022935322010529, 0.063092092629979, 0.104790010322250, 0.140653259715525,
    0.169004726639267, 0.190350578064785, 0.204432940075298, 0.209482141084728};
inline constexpr std::array<double, 4> gk_weights_g = {
    0.129484966168870, 0.279705391489277, 0.381830050505119, 0.417959183673469};

template <class F>
std::pair<double, double> gauss_kronrod_15(F&& f, double a, double b) {
    double h = 0.5 * (b - a), c = 0.5 * (a + b);
    double kron = 0, gauss = 0;
    for (int i = 0; i < 8; ++i) {
        double x = h * gk_nodes[static_cast<std::size_t>(i)];
        double fv = (i == 7) ? f(c) : f(c - x) + f(c + x);
        kron += gk_weights_k[static_cast<std::size_t>(i)] * fv;
        if (i % 2 == 1) gauss += gk_weights_g[static_cast<std::size_t>(i / 2)] * fv;
    }
    return {kron * h, std::abs(kron - gauss) * h};
}

} // namespace detail

/// Adaptive Gauss-Kronrod integration of f on [a, b] to absolute tolerance.
template <class F>
double integrate_adaptive(F&& f, double a, double b, double abs_tol = 1e-12, int max_depth = 40) {
    struct Frame {
        double a, b, tol;
        int depth;
    };
    double total = 0;
    std::vector<Frame> stack{{a, b, abs_tol, 0}};
    while (!stack.empty()) {
        Frame fr = stack.back();
        stack.pop_back();
        auto [val, err] = detail::gauss_kronrod_15(f, fr.a, fr.b);
        if (err <= fr.tol || fr.depth >= max_depth) {
            total += val;
        } else {
            double m = 0.5 * (fr.a + fr.b);
            stack.push_back({fr.a, m, fr.tol / 2, fr.depth + 1});
            stack.push_back({m, fr.b, fr.tol / 2, fr.depth + 1});
        }
    }
    return total;
}

struct QuadratureRule1D {
    std::vector<double> node;
    std::vector<double> weight;
};

/// Gauss-Legendre rule with n points on [a, b] (Newton on Legendre polynomials).
inline QuadratureRule1D gauss_legendre(int n, double a, double b) {
    QuadratureRule1D rule;
    rule.node.resize(static_cast<std::size_t>(n));
    rule.weight.resize(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        // Chebyshev initial guess, then Newton.
        double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
        double dp = 0;
        for (int it = 0; it < 100; ++it) {
            double p0 = 1.0, p1 = x;
            for (int k = 2; k <= n; ++k) {
                double p2 = ((2 * k - 1) * x * p1 - (k - 1) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            dp = n * (x * p1 - p0) / (x * x - 1.0);
            double dx = p1 / dp;
            x -= dx;
            if (std::abs(dx) < 1e-15) break;
        }
        double w = 2.0 / ((1.0 - x * x) * dp * dp);
        rule.node[static_cast<std::size_t>(i)] = 0.5 * (b - a) * x + 0.5 * (a + b);
        rule.weight[static_cast<std::size_t>(i)] = 0.5 * (b - a) * w;
    }
    return rule;
}

} // namespace cohesive
