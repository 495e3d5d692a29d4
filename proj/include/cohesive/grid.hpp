#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <string>
#include <type_traits>
#include <vector>

#include "cohesive/common.hpp"
#include "cohesive/vec.hpp"

namespace cohesive {

template <int D>
struct Box {
    Vec<D> lo, hi;

    Vec<D> extent() const { return hi - lo; }
    double volume() const {
        double v = 1;
        for (int k = 0; k < D; ++k) v *= hi[k] - lo[k];
        return v;
    }
    bool contains(const Vec<D>& x) const {
        for (int k = 0; k < D; ++k)
            if (x[k] < lo[k] || x[k] > hi[k]) return false;
        return true;
    }
    double boundary_distance(const Vec<D>& x) const {
        double d = 1e300;
        for (int k = 0; k < D; ++k) d = std::min({d, x[k] - lo[k], hi[k] - x[k]});
        return d;
    }
};

/// Pre-crack geometry: a segment in d=2, a planar convex polygon in d=3.
struct NotchSegment {
    Vec<2> a, b;
};

struct NotchPolygon {
    std::vector<Vec<3>> vertex; // coplanar, convex, >= 3 vertices
};

template <int D>
using Notch = std::conditional_t<D == 2, NotchSegment, NotchPolygon>;

namespace detail {

// Bonds touching the notch from one side stay with the face they start on;
// the face containing the notch line itself is the positive side.
inline bool bond_crosses(const Vec<2>& p, const Vec<2>& q, const NotchSegment& n) {
    Vec<2> axis = n.b - n.a;
    double len = axis.norm();
    if (len <= 0) return false;
    Vec<2> u = axis * (1.0 / len);
    Vec<2> nrm = vec2(-u[1], u[0]);
    double sp = dot(p - n.a, nrm), sq = dot(q - n.a, nrm);
    bool below_p = sp < 0, below_q = sq < 0;
    if (below_p == below_q) return false;
    double t = sp / (sp - sq); // sp != sq since signs differ
    Vec<2> x = p + (q - p) * t;
    double tau = dot(x - n.a, u);
    return tau >= -1e-12 && tau <= len + 1e-12;
}

inline bool bond_crosses(const Vec<3>& p, const Vec<3>& q, const NotchPolygon& n) {
    if (n.vertex.size() < 3) return false;
    Vec<3> e1 = n.vertex[1] - n.vertex[0];
    Vec<3> e2 = n.vertex[2] - n.vertex[0];
    Vec<3> nrm = vec3(e1[1] * e2[2] - e1[2] * e2[1], e1[2] * e2[0] - e1[0] * e2[2],
                      e1[0] * e2[1] - e1[1] * e2[0])
                     .normalized();
    double sp = dot(p - n.vertex[0], nrm), sq = dot(q - n.vertex[0], nrm);
    bool below_p = sp < 0, below_q = sq < 0;
    if (below_p == below_q) return false;
    double t = sp / (sp - sq);
    Vec<3> x = p + (q - p) * t;
    // inside the convex polygon: consistent cross-product orientation
    int sign = 0;
    for (std::size_t i = 0; i < n.vertex.size(); ++i) {
        const Vec<3>& a = n.vertex[i];
        const Vec<3>& b = n.vertex[(i + 1) % n.vertex.size()];
        Vec<3> ab = b - a, ax = x - a;
        Vec<3> c = vec3(ab[1] * ax[2] - ab[2] * ax[1], ab[2] * ax[0] - ab[0] * ax[2],
                        ab[0] * ax[1] - ab[1] * ax[0]);
        double s = dot(c, nrm);
        if (std::abs(s) <= 1e-14) continue;
        int si = s > 0 ? 1 : -1;
        if (sign == 0) sign = si;
        else if (si != sign) return false;
    }
    return true;
}

} // namespace detail

template <int D>
struct DomainSpec {
    Box<D> bounds;
    double spacing = 0;          // lattice pitch h
    double horizon = 0;          // eps
    double collar_thickness = 0; // pinned boundary layer, must exceed 2 eps
    std::vector<Notch<D>> notches;
    bool exclude_notch_bonds = false;

    double m_ratio() const { return horizon / spacing; }

    void validate() const {
        if (!(spacing > 0)) throw InvalidSpec("domain: spacing must be positive");
        if (!(horizon > 0)) throw InvalidSpec("domain: horizon must be positive");
        if (m_ratio() < 2.0)
            throw InvalidSpec("domain: m_ratio = horizon/spacing must be >= 2 (got " +
                              std::to_string(m_ratio()) + ")");
        if (!(collar_thickness > 2.0 * horizon))
            throw InvalidSpec("domain: collar_thickness must exceed 2*horizon (the interaction diameter)");
        for (int k = 0; k < D; ++k)
            if (!(bounds.hi[k] - bounds.lo[k] > 2.0 * collar_thickness))
                throw InvalidSpec("domain: bounds leave no interior inside the collar");
    }
};

/// Fraction of a neighbor cell counted at center distance q: 1 inside
/// eps - h/2, 0 beyond eps + h/2, linear ramp across the horizon surface.
inline double partial_volume(double q, double h, double eps) {
    if (!(q > 0)) throw std::invalid_argument("partial_volume: q must be positive");
    if (q <= eps - 0.5 * h) return 1.0;
    if (q >= eps + 0.5 * h) return 0.0;
    return (eps + 0.5 * h - q) / h;
}

/// Uniform node lattice with constraint collar and horizon neighbor lists.
///
/// Nodes sit at bounds.lo + i*h with round(extent/h)+1 nodes per axis (so a
/// unit extent at h=0.05 carries 21 nodes). A node is constrained when its
/// distance to the domain boundary is below collar_thickness. Neighbor rows
/// exist for interior nodes only and hold every node at 0 < q < eps + h/2
/// with quadrature weight h^D * partial_volume(q); rows are capped at the
/// ball volume V_d when the ramp oversums (d=3 lattices).
template <int D>
struct DomainGrid {
    Box<D> bounds;
    double spacing = 0;
    double horizon = 0;
    double collar_thickness = 0;
    std::array<int, D> axis_nodes{};
    double cell_volume = 0; // h^D

    std::vector<Vec<D>> position;
    std::vector<std::uint8_t> constrained;
    std::vector<int> interior;    // node ids with a neighbor row, ascending
    std::vector<int> row_of_node; // -1 for constrained nodes

    std::vector<std::size_t> row_offset; // interior.size() + 1
    std::vector<int> neighbor_node;
    std::vector<double> neighbor_weight;

    std::size_t node_count() const { return position.size(); }
    std::size_t interior_count() const { return interior.size(); }
    double interior_measure() const { return static_cast<double>(interior.size()) * cell_volume; }

    std::size_t row_begin(int row) const { return row_offset[static_cast<std::size_t>(row)]; }
    std::size_t row_end(int row) const { return row_offset[static_cast<std::size_t>(row) + 1]; }
};

template <int D>
DomainGrid<D> build_grid(const DomainSpec<D>& spec) {
    spec.validate();
    DomainGrid<D> g;
    g.bounds = spec.bounds;
    g.spacing = spec.spacing;
    g.horizon = spec.horizon;
    g.collar_thickness = spec.collar_thickness;

    const double h = spec.spacing;
    std::size_t total = 1;
    for (int k = 0; k < D; ++k) {
        g.axis_nodes[static_cast<std::size_t>(k)] =
            static_cast<int>(std::lround((spec.bounds.hi[k] - spec.bounds.lo[k]) / h)) + 1;
        total *= static_cast<std::size_t>(g.axis_nodes[static_cast<std::size_t>(k)]);
    }
    g.cell_volume = std::pow(h, D);

    g.position.resize(total);
    g.constrained.resize(total);
    g.row_of_node.assign(total, -1);

    const double tol = 1e-9 * h;
    std::array<int, D> idx{};
    for (std::size_t n = 0; n < total; ++n) {
        Vec<D> x;
        for (int k = 0; k < D; ++k) x[k] = spec.bounds.lo[k] + idx[static_cast<std::size_t>(k)] * h;
        g.position[n] = x;
        bool pinned = g.bounds.boundary_distance(x) < spec.collar_thickness - tol;
        g.constrained[n] = pinned ? 1 : 0;
        if (!pinned) {
            g.row_of_node[n] = static_cast<int>(g.interior.size());
            g.interior.push_back(static_cast<int>(n));
        }
        // odometer over axis indices, axis 0 fastest
        for (int k = 0; k < D; ++k) {
            if (++idx[static_cast<std::size_t>(k)] < g.axis_nodes[static_cast<std::size_t>(k)]) break;
            idx[static_cast<std::size_t>(k)] = 0;
        }
    }

    const double cutoff = spec.horizon + 0.5 * h;
    const int window = static_cast<int>(std::ceil(cutoff / h));
    const double ball = std::pow(spec.horizon, D) * unit_ball_volume(D);

    // strides for index arithmetic
    std::array<std::size_t, D> stride{};
    stride[0] = 1;
    for (int k = 1; k < D; ++k)
        stride[static_cast<std::size_t>(k)] = stride[static_cast<std::size_t>(k - 1)] *
                                              static_cast<std::size_t>(g.axis_nodes[static_cast<std::size_t>(k - 1)]);

    g.row_offset.reserve(g.interior.size() + 1);
    g.row_offset.push_back(0);

    std::array<int, D> ni{};
    for (int node : g.interior) {
        // decode lattice index of this node
        std::size_t rem = static_cast<std::size_t>(node);
        for (int k = D - 1; k >= 0; --k) {
            ni[static_cast<std::size_t>(k)] = static_cast<int>(rem / stride[static_cast<std::size_t>(k)]);
            rem %= stride[static_cast<std::size_t>(k)];
        }

        std::size_t row_start = g.neighbor_node.size();
        double row_sum = 0;

        std::array<int, D> off{};
        for (int k = 0; k < D; ++k) off[static_cast<std::size_t>(k)] = -window;
        while (true) {
            bool zero = true;
            long long r2 = 0;
            bool inside = true;
            std::size_t jn = static_cast<std::size_t>(node);
            for (int k = 0; k < D; ++k) {
                int o = off[static_cast<std::size_t>(k)];
                if (o != 0) zero = false;
                r2 += static_cast<long long>(o) * o;
                int jk = ni[static_cast<std::size_t>(k)] + o;
                if (jk < 0 || jk >= g.axis_nodes[static_cast<std::size_t>(k)]) {
                    inside = false;
                    break;
                }
                jn = static_cast<std::size_t>(static_cast<long long>(jn) +
                                              static_cast<long long>(o) * static_cast<long long>(stride[static_cast<std::size_t>(k)]));
            }
            if (inside && !zero) {
                double q = h * std::sqrt(static_cast<double>(r2));
                if (q < cutoff) {
                    double frac = partial_volume(q, h, spec.horizon);
                    if (frac > 0) {
                        bool cut = false;
                        if (spec.exclude_notch_bonds) {
                            for (const auto& notch : spec.notches)
                                if (detail::bond_crosses(g.position[static_cast<std::size_t>(node)],
                                                         g.position[jn], notch)) {
                                    cut = true;
                                    break;
                                }
                        }
                        if (!cut) {
                            g.neighbor_node.push_back(static_cast<int>(jn));
                            double w = frac * g.cell_volume;
                            g.neighbor_weight.push_back(w);
                            row_sum += w;
                        }
                    }
                }
            }
            // advance the offset odometer
            int k = 0;
            for (; k < D; ++k) {
                if (++off[static_cast<std::size_t>(k)] <= window) break;
                off[static_cast<std::size_t>(k)] = -window;
            }
            if (k == D) break;
        }

        if (row_sum > ball) {
            double scale = ball / row_sum;
            for (std::size_t s = row_start; s < g.neighbor_weight.size(); ++s)
                g.neighbor_weight[s] *= scale;
        }
        g.row_offset.push_back(g.neighbor_node.size());
    }
    return g;
}

} // namespace cohesive
