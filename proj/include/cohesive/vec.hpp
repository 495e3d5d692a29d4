#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <numbers>

namespace cohesive {

/// Fixed-size spatial vector, D = 2 or 3.
template <int D>
struct Vec {
    std::array<double, D> c{};

    double& operator[](int i) { return c[static_cast<std::size_t>(i)]; }
    double operator[](int i) const { return c[static_cast<std::size_t>(i)]; }

    Vec& operator+=(const Vec& o) {
        for (int i = 0; i < D; ++i) c[i] += o.c[i];
        return *this;
    }
    Vec& operator-=(const Vec& o) {
        for (int i = 0; i < D; ++i) c[i] -= o.c[i];
        return *this;
    }
    Vec& operator*=(double s) {
        for (int i = 0; i < D; ++i) c[i] *= s;
        return *this;
    }

    friend Vec operator+(Vec a, const Vec& b) { return a += b; }
    friend Vec operator-(Vec a, const Vec& b) { return a -= b; }
    friend Vec operator*(Vec a, double s) { return a *= s; }
    friend Vec operator*(double s, Vec a) { return a *= s; }
    friend Vec operator-(Vec a) { return a *= -1.0; }

    friend double dot(const Vec& a, const Vec& b) {
        double s = 0;
        for (int i = 0; i < D; ++i) s += a.c[i] * b.c[i];
        return s;
    }

    double norm2() const { return dot(*this, *this); }
    double norm() const { return std::sqrt(norm2()); }

    Vec normalized() const {
        Vec r = *this;
        double n = norm();
        if (n > 0) r *= 1.0 / n;
        return r;
    }
};

inline Vec<2> vec2(double x, double y) { return Vec<2>{{x, y}}; }
inline Vec<3> vec3(double x, double y, double z) { return Vec<3>{{x, y, z}}; }

/// Dense DxD matrix, row major.
template <int D>
struct Mat {
    std::array<double, D * D> m{};

    double& operator()(int i, int j) { return m[static_cast<std::size_t>(i * D + j)]; }
    double operator()(int i, int j) const { return m[static_cast<std::size_t>(i * D + j)]; }

    static Mat identity() {
        Mat r;
        for (int i = 0; i < D; ++i) r(i, i) = 1.0;
        return r;
    }

    Mat& operator+=(const Mat& o) {
        for (std::size_t i = 0; i < m.size(); ++i) m[i] += o.m[i];
        return *this;
    }
    Mat& operator*=(double s) {
        for (auto& v : m) v *= s;
        return *this;
    }
    friend Mat operator+(Mat a, const Mat& b) { return a += b; }
    friend Mat operator*(Mat a, double s) { return a *= s; }
    friend Mat operator*(double s, Mat a) { return a *= s; }

    friend Vec<D> operator*(const Mat& a, const Vec<D>& x) {
        Vec<D> r;
        for (int i = 0; i < D; ++i)
            for (int j = 0; j < D; ++j) r[i] += a(i, j) * x[j];
        return r;
    }

    double trace() const {
        double t = 0;
        for (int i = 0; i < D; ++i) t += (*this)(i, i);
        return t;
    }

    Mat transposed() const {
        Mat r;
        for (int i = 0; i < D; ++i)
            for (int j = 0; j < D; ++j) r(i, j) = (*this)(j, i);
        return r;
    }

    Mat symmetric_part() const {
        Mat r;
        for (int i = 0; i < D; ++i)
            for (int j = 0; j < D; ++j) r(i, j) = 0.5 * ((*this)(i, j) + (*this)(j, i));
        return r;
    }

    double frobenius2() const {
        double s = 0;
        for (auto v : m) s += v * v;
        return s;
    }

    double max_asymmetry() const {
        double s = 0;
        for (int i = 0; i < D; ++i)
            for (int j = i + 1; j < D; ++j) s = std::max(s, std::abs((*this)(i, j) - (*this)(j, i)));
        return s;
    }
};

template <int D>
Mat<D> outer(const Vec<D>& a, const Vec<D>& b) {
    Mat<D> r;
    for (int i = 0; i < D; ++i)
        for (int j = 0; j < D; ++j) r(i, j) = a[i] * b[j];
    return r;
}

/// Eigenvalues of a symmetric 2x2 matrix, ascending.
inline std::array<double, 2> symmetric_eigenvalues(const Mat<2>& a) {
    double tr = a(0, 0) + a(1, 1);
    double det = a(0, 0) * a(1, 1) - a(0, 1) * a(1, 0);
    double disc = std::sqrt(std::max(0.0, tr * tr / 4.0 - det));
    return {tr / 2.0 - disc, tr / 2.0 + disc};
}

/// Eigenvalues of a symmetric 3x3 matrix, ascending (trigonometric method).
inline std::array<double, 3> symmetric_eigenvalues(const Mat<3>& a) {
    double q = a.trace() / 3.0;
    Mat<3> b = a;
    for (int i = 0; i < 3; ++i) b(i, i) -= q;
    double p2 = b.frobenius2() / 6.0;
    if (p2 <= 0) return {q, q, q};
    double p = std::sqrt(p2);
    // det(b) / (2 p^3) clamped to [-1, 1]
    double det = b(0, 0) * (b(1, 1) * b(2, 2) - b(1, 2) * b(2, 1)) -
                 b(0, 1) * (b(1, 0) * b(2, 2) - b(1, 2) * b(2, 0)) +
                 b(0, 2) * (b(1, 0) * b(2, 1) - b(1, 1) * b(2, 0));
    double r = det / (2.0 * p * p2);
    r = std::clamp(r, -1.0, 1.0);
    double phi = std::acos(r) / 3.0;
    double e2 = q + 2.0 * p * std::cos(phi);
    double e0 = q + 2.0 * p * std::cos(phi + 2.0 * std::numbers::pi / 3.0);
    double e1 = 3.0 * q - e0 - e2;
    return {e0, e1, e2};
}

template <int D>
double max_eigenvalue(const Mat<D>& a) {
    auto e = symmetric_eigenvalues(a);
    return e[D - 1];
}

template <int D>
double min_eigenvalue(const Mat<D>& a) {
    auto e = symmetric_eigenvalues(a);
    return e[0];
}

} // namespace cohesive
