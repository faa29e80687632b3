// Generic projection of polygonal knots and links to crossing diagrams.
#include <algorithm>
#include <bit>
#include <cmath>
#include <vector>

#include "qsec/knot.hpp"
#include "qsec/rng.hpp"

namespace qsec::knotmodel {

namespace {

struct FlatEdge {
    int component, index;
    double ax, ay, bx, by;  // projected endpoints
    double az, bz;          // depths along the projection direction
};

struct RawCrossing {
    int i, j;        // indices into the flat edge list
    double s, t;     // fractions along edge i and edge j
    double px, py;   // projected crossing point
};

bool edges_adjacent(const FlatEdge& a, const FlatEdge& b, int edges_in_component, bool closed) {
    if (a.component != b.component) return false;
    if (a.index == b.index) return true;
    int lo = std::min(a.index, b.index), hi = std::max(a.index, b.index);
    if (hi - lo == 1) return true;
    return closed && lo == 0 && hi == edges_in_component - 1;
}

// One projection attempt. Returns false when the projection is non-generic
// (a degeneracy that a jittered direction will resolve).
bool try_project(const std::vector<const PLKnot*>& comps, const Vec3& w, double len_tol,
                 std::vector<RawCrossing>& out, std::vector<FlatEdge>& edges) {
    int least = 0;
    for (int c = 1; c < 3; ++c)
        if (std::abs(w[c]) < std::abs(w[least])) least = c;
    Vec3 axis{least == 0 ? 1.0 : 0.0, least == 1 ? 1.0 : 0.0, least == 2 ? 1.0 : 0.0};
    Vec3 u = normalized(cross(w, axis));
    Vec3 v = cross(w, u);

    edges.clear();
    for (int c = 0; c < static_cast<int>(comps.size()); ++c) {
        const PLKnot& k = *comps[c];
        for (int i = 0; i < k.edge_count(); ++i) {
            geom::Segment s = k.edge(i);
            edges.push_back({c, i, dot(s.a, u), dot(s.a, v), dot(s.b, u), dot(s.b, v),
                             dot(s.a, w), dot(s.b, w)});
        }
    }
    for (const FlatEdge& e : edges) {
        double dx = e.bx - e.ax, dy = e.by - e.ay;
        if (std::hypot(dx, dy) <= len_tol) return false;  // edge parallel to direction
    }

    out.clear();
    int n = static_cast<int>(edges.size());
    for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j) {
            const FlatEdge &a = edges[i], &b = edges[j];
            bool closed = comps[a.component]->topology == Topology::closed;
            if (edges_adjacent(a, b, comps[a.component]->edge_count(), closed)) continue;
            double d1x = a.bx - a.ax, d1y = a.by - a.ay;
            double d2x = b.bx - b.ax, d2y = b.by - b.ay;
            double denom = d1x * d2y - d1y * d2x;
            double l1 = std::hypot(d1x, d1y), l2 = std::hypot(d2x, d2y);
            double ex = b.ax - a.ax, ey = b.ay - a.ay;
            if (std::abs(denom) <= 1e-12 * l1 * l2) {
                // Parallel in projection: reject only if they nearly overlap.
                double off = std::abs(ex * d1y - ey * d1x) / l1;
                double s0 = (ex * d1x + ey * d1y) / (l1 * l1);
                double s1 = s0 + (d2x * d1x + d2y * d1y) / (l1 * l1);
                if (off <= len_tol && std::max(0.0, std::min(s0, s1)) <=
                                          std::min(1.0, std::max(s0, s1)))
                    return false;
                continue;
            }
            double s = (ex * d2y - ey * d2x) / denom;
            double t = (ex * d1y - ey * d1x) / denom;
            double pad_s = len_tol / l1, pad_t = len_tol / l2;
            bool s_in = s > pad_s && s < 1.0 - pad_s;
            bool t_in = t > pad_t && t < 1.0 - pad_t;
            bool s_near = s >= -pad_s && s <= 1.0 + pad_s;
            bool t_near = t >= -pad_t && t <= 1.0 + pad_t;
            if (s_in && t_in) {
                double z1 = a.az + s * (a.bz - a.az);
                double z2 = b.az + t * (b.bz - b.az);
                if (std::abs(z1 - z2) <= len_tol) return false;  // grazing depths
                out.push_back({i, j, s, t, a.ax + s * d1x, a.ay + s * d1y});
            } else if (s_near && t_near) {
                return false;  // crossing at or beyond an endpoint: too close to call
            }
        }
    }
    for (size_t i = 0; i < out.size(); ++i)
        for (size_t j = i + 1; j < out.size(); ++j)
            if (std::hypot(out[i].px - out[j].px, out[i].py - out[j].py) <= len_tol)
                return false;  // triple point
    return true;
}

KnotDiagram project_impl(const std::vector<const PLKnot*>& comps, const Vec3& direction,
                         bool inter_component_only) {
    double diag = 0.0;
    for (const PLKnot* k : comps) diag = std::max(diag, bounding_box(*k).diagonal());
    double len_tol = 1e-9 * diag;
    if (norm(direction) <= 0.0)
        throw Error(ErrorCode::NonGenericProjection, "zero projection direction");
    Vec3 base = normalized(direction);

    for (int attempt = 0; attempt < 48; ++attempt) {
        Vec3 w = base;
        if (attempt > 0) {
            Rng rng(mix64(0xD1A6'0000u + attempt,
                          std::bit_cast<std::uint64_t>(base.x),
                          std::bit_cast<std::uint64_t>(base.y)));
            double scale = 0.005 * attempt;
            w = normalized(base + Vec3{scale * rng.symmetric(), scale * rng.symmetric(),
                                       scale * rng.symmetric()});
        }
        std::vector<RawCrossing> raw;
        std::vector<FlatEdge> edges;
        if (!try_project(comps, w, len_tol, raw, edges)) continue;

        KnotDiagram d;
        d.topology = comps.size() == 1 ? comps[0]->topology : Topology::closed;
        d.direction = w;
        for (const RawCrossing& rc : raw) {
            const FlatEdge &a = edges[rc.i], &b = edges[rc.j];
            if (inter_component_only && a.component == b.component) continue;
            double z1 = a.az + rc.s * (a.bz - a.az);
            double z2 = b.az + rc.t * (b.bz - b.az);
            bool a_over = z1 > z2;
            const FlatEdge& over = a_over ? a : b;
            const FlatEdge& under = a_over ? b : a;
            double so = a_over ? rc.s : rc.t;
            double su = a_over ? rc.t : rc.s;
            double ox = over.bx - over.ax, oy = over.by - over.ay;
            double ux = under.bx - under.ax, uy = under.by - under.ay;
            Crossing c;
            c.over_param = over.index + so;
            c.under_param = under.index + su;
            c.sign = (ox * uy - oy * ux) > 0 ? 1 : -1;
            c.over_component = over.component;
            c.under_component = under.component;
            d.crossings.push_back(c);
        }
        std::sort(d.crossings.begin(), d.crossings.end(), [](const Crossing& x, const Crossing& y) {
            if (x.over_component != y.over_component) return x.over_component < y.over_component;
            if (x.over_param != y.over_param) return x.over_param < y.over_param;
            return x.under_param < y.under_param;
        });
        return d;
    }
    throw Error(ErrorCode::NonGenericProjection, "projection retry budget exhausted");
}

}  // namespace

KnotDiagram project_to_diagram(const PLKnot& k, const Vec3& direction) {
    return project_impl({&k}, direction, false);
}

KnotDiagram project_link_to_diagram(const PLLink& link, const Vec3& direction) {
    std::vector<const PLKnot*> comps;
    for (const PLKnot& k : link.components) comps.push_back(&k);
    if (comps.empty()) throw Error(ErrorCode::InvalidKnot, "empty link");
    return project_impl(comps, direction, true);
}

}  // namespace qsec::knotmodel
