// Convex-hull extremal structure of a polygonal knot, and opening a closed
// knot at an extremal vertex into an equivalent open arc.
#include <algorithm>
#include <cmath>
#include <vector>

#include "qsec/knot.hpp"

namespace qsec::knotmodel {

namespace {

struct Face {
    int a, b, c;
    Vec3 n;      // unit outward normal
    double off;  // plane offset: dot(n, x) = off on the face plane
    bool alive = true;
};

double face_dist(const Face& f, const Vec3& p) { return dot(f.n, p) - f.off; }

Face make_face(const std::vector<Vec3>& pts, int a, int b, int c, const Vec3& interior) {
    Face f{a, b, c, {}, 0.0, true};
    Vec3 n = cross(pts[b] - pts[a], pts[c] - pts[a]);
    double ln = norm(n);
    if (ln > 0.0) n = n / ln;
    f.n = n;
    f.off = dot(n, pts[a]);
    if (dot(n, interior) - f.off > 0.0) {  // flip to point away from the interior
        std::swap(f.b, f.c);
        f.n = -1.0 * f.n;
        f.off = -f.off;
    }
    return f;
}

std::vector<Face> incremental_hull(const std::vector<Vec3>& pts, int i0, int i1, int i2, int i3,
                                   double band) {
    Vec3 interior = 0.25 * (pts[i0] + pts[i1] + pts[i2] + pts[i3]);
    std::vector<Face> faces;
    faces.push_back(make_face(pts, i0, i1, i2, interior));
    faces.push_back(make_face(pts, i0, i1, i3, interior));
    faces.push_back(make_face(pts, i0, i2, i3, interior));
    faces.push_back(make_face(pts, i1, i2, i3, interior));

    int n = static_cast<int>(pts.size());
    for (int q = 0; q < n; ++q) {
        if (q == i0 || q == i1 || q == i2 || q == i3) continue;
        std::vector<int> visible;
        for (int f = 0; f < static_cast<int>(faces.size()); ++f)
            if (faces[f].alive && face_dist(faces[f], pts[q]) > band) visible.push_back(f);
        if (visible.empty()) continue;

        // Horizon: directed edges of visible faces whose reverse is not visible.
        std::vector<std::pair<int, int>> edges;
        for (int f : visible) {
            edges.push_back({faces[f].a, faces[f].b});
            edges.push_back({faces[f].b, faces[f].c});
            edges.push_back({faces[f].c, faces[f].a});
        }
        auto internal = [&](int u, int v) {
            return std::find(edges.begin(), edges.end(), std::make_pair(v, u)) != edges.end();
        };
        for (int f : visible) faces[f].alive = false;
        for (auto [u, v] : edges)
            if (!internal(u, v)) faces.push_back(make_face(pts, u, v, q, interior));
    }

    std::vector<Face> live;
    for (const Face& f : faces)
        if (f.alive) live.push_back(f);
    return live;
}

// 2D convex hull (monotone chain) of projected points; returns hull indices.
std::vector<int> hull_2d(const std::vector<std::pair<double, double>>& pt) {
    int n = static_cast<int>(pt.size());
    std::vector<int> order(n);
    for (int i = 0; i < n; ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&](int a, int b) { return pt[a] < pt[b]; });
    auto turn = [&](int o, int a, int b) {
        return (pt[a].first - pt[o].first) * (pt[b].second - pt[o].second) -
               (pt[a].second - pt[o].second) * (pt[b].first - pt[o].first);
    };
    std::vector<int> h(2 * n);
    int k = 0;
    for (int idx = 0; idx < n; ++idx) {
        int i = order[idx];
        while (k >= 2 && turn(h[k - 2], h[k - 1], i) <= 0) --k;
        h[k++] = i;
    }
    for (int idx = n - 2, lower = k + 1; idx >= 0; --idx) {
        int i = order[idx];
        while (k >= lower && turn(h[k - 2], h[k - 1], i) <= 0) --k;
        h[k++] = i;
    }
    h.resize(k - 1);
    return h;
}

double point_segment_distance_2d(std::pair<double, double> p, std::pair<double, double> a,
                                 std::pair<double, double> b) {
    double dx = b.first - a.first, dy = b.second - a.second;
    double len2 = dx * dx + dy * dy;
    double t = len2 > 0 ? ((p.first - a.first) * dx + (p.second - a.second) * dy) / len2 : 0.0;
    t = std::clamp(t, 0.0, 1.0);
    double ex = a.first + t * dx - p.first, ey = a.second + t * dy - p.second;
    return std::sqrt(ex * ex + ey * ey);
}

HullExtremalSet planar_extremal(const PLKnot& k, const Vec3& normal, double band) {
    // A planar knot contributes a single extremal component only when every
    // vertex lies on the boundary of the planar hull; otherwise the extremal
    // structure is not usable.
    int least = 0;
    for (int c = 1; c < 3; ++c)
        if (std::abs(normal[c]) < std::abs(normal[least])) least = c;
    Vec3 axis{least == 0 ? 1.0 : 0.0, least == 1 ? 1.0 : 0.0, least == 2 ? 1.0 : 0.0};
    Vec3 u = normalized(cross(normal, axis));
    Vec3 v = cross(normal, u);

    int n = k.vertex_count();
    std::vector<std::pair<double, double>> flat(n);
    for (int i = 0; i < n; ++i) flat[i] = {dot(k.vertices[i], u), dot(k.vertices[i], v)};
    std::vector<int> h = hull_2d(flat);
    if (static_cast<int>(h.size()) < 3)
        throw Error(ErrorCode::DegenerateHull, "planar knot is collinear");
    for (int i = 0; i < n; ++i) {
        double best = 1e300;
        for (int j = 0; j < static_cast<int>(h.size()); ++j)
            best = std::min(best, point_segment_distance_2d(
                                      flat[i], flat[h[j]], flat[h[(j + 1) % h.size()]]));
        if (best > band)
            throw Error(ErrorCode::DegenerateHull, "planar knot has a non-extremal vertex");
    }

    HullExtremalSet out;
    out.vertex_on_hull.assign(n, true);
    out.edge_on_hull.assign(k.edge_count(), true);
    ExtremalComponent comp;
    for (int i = 0; i < n; ++i) comp.vertex_ids.push_back(i);
    comp.representative_vertex = 0;
    comp.outward_normal = normal;
    out.components.push_back(std::move(comp));
    return out;
}

}  // namespace

HullExtremalSet convex_hull_extremal(const PLKnot& k, double rel_tol) {
    const std::vector<Vec3>& p = k.vertices;
    int n = k.vertex_count();
    double band = knot_tolerance(k, rel_tol).length();

    // Initial extreme tetrahedron.
    int i0 = 0;
    for (int i = 1; i < n; ++i) {
        const Vec3 &a = p[i], &b = p[i0];
        if (std::tie(a.x, a.y, a.z) < std::tie(b.x, b.y, b.z)) i0 = i;
    }
    int i1 = -1;
    double best = band;
    for (int i = 0; i < n; ++i)
        if (double d = dist(p[i], p[i0]); d > best) {
            best = d;
            i1 = i;
        }
    if (i1 < 0) throw Error(ErrorCode::DegenerateHull, "all vertices coincide");
    geom::Line l01 = geom::Line::through(p[i0], p[i1]);
    int i2 = -1;
    best = band;
    for (int i = 0; i < n; ++i)
        if (double d = norm(cross(l01.dir, p[i] - p[i0])); d > best) {
            best = d;
            i2 = i;
        }
    if (i2 < 0) throw Error(ErrorCode::DegenerateHull, "knot vertices are collinear");
    Vec3 pn = normalized(cross(p[i1] - p[i0], p[i2] - p[i0]));
    int i3 = -1;
    best = band;
    for (int i = 0; i < n; ++i)
        if (double d = std::abs(dot(pn, p[i] - p[i0])); d > best) {
            best = d;
            i3 = i;
        }
    if (i3 < 0) return planar_extremal(k, pn, band);

    std::vector<Face> faces = incremental_hull(p, i0, i1, i2, i3, band);

    HullExtremalSet out;
    out.vertex_on_hull.assign(n, false);
    for (int i = 0; i < n; ++i)
        for (const Face& f : faces)
            if (face_dist(f, p[i]) >= -band) {
                out.vertex_on_hull[i] = true;
                break;
            }
    int e = k.edge_count();
    out.edge_on_hull.assign(e, false);
    for (int i = 0; i < e; ++i) {
        geom::Segment s = k.edge(i);
        for (const Face& f : faces)
            if (face_dist(f, s.a) >= -band && face_dist(f, s.b) >= -band) {
                out.edge_on_hull[i] = true;
                break;
            }
    }

    // Group marked vertices into maximal runs joined by marked edges.  A
    // marked edge always has both endpoints marked, so runs are well formed.
    bool closed = k.topology == Topology::closed;
    auto prev_edge_marked = [&](int v) -> bool {
        if (v == 0) return closed && out.edge_on_hull[e - 1];
        return out.edge_on_hull[v - 1];
    };
    bool all_edges = std::all_of(out.edge_on_hull.begin(), out.edge_on_hull.end(),
                                 [](bool b) { return b; });
    std::vector<std::vector<int>> runs;
    if (closed && all_edges) {
        std::vector<int> whole(n);
        for (int i = 0; i < n; ++i) whole[i] = i;
        runs.push_back(std::move(whole));
    } else {
        for (int v = 0; v < n; ++v) {
            if (!out.vertex_on_hull[v] || prev_edge_marked(v)) continue;
            std::vector<int> run{v};
            int cur = v;
            while (true) {
                int edge = cur;  // edge cur -> cur+1
                if (edge >= e || !out.edge_on_hull[edge]) break;
                cur = (cur + 1) % n;
                run.push_back(cur);
            }
            runs.push_back(std::move(run));
        }
    }

    Vec3 centroid{0, 0, 0};
    for (const Vec3& q : p) centroid = centroid + q;
    centroid = (1.0 / n) * centroid;

    for (std::vector<int>& run : runs) {
        ExtremalComponent comp;
        comp.vertex_ids = run;
        // Representative: a run vertex admitting a τ-supporting plane, trying
        // candidates from farthest-from-centroid inward.
        std::vector<int> cand = run;
        std::sort(cand.begin(), cand.end(), [&](int a, int b) {
            double da = dist(p[a], centroid), db = dist(p[b], centroid);
            if (da != db) return da > db;
            return a < b;
        });
        bool found = false;
        for (int v : cand) {
            Vec3 nsum{0, 0, 0};
            for (const Face& f : faces)
                if (face_dist(f, p[v]) >= -band) nsum = nsum + f.n;
            if (norm(nsum) <= 1e-12) continue;
            Vec3 nh = normalized(nsum);
            double worst = 0.0;
            for (int w = 0; w < n; ++w)
                if (w != v) worst = std::max(worst, dot(nh, p[w] - p[v]));
            if (worst <= 2.0 * band) {
                comp.representative_vertex = v;
                comp.outward_normal = nh;
                found = true;
                break;
            }
        }
        if (!found)
            throw Error(ErrorCode::GenericityFailure,
                        "no supported extremal vertex in hull component");
        out.components.push_back(std::move(comp));
    }
    return out;
}

PLKnot open_at_extremal(const PLKnot& k, const HullExtremalSet& hull, int component_index) {
    if (k.topology != Topology::closed)
        throw Error(ErrorCode::InvalidKnot, "only closed knots can be opened");
    if (component_index < 0 || component_index >= hull.count())
        throw Error(ErrorCode::InvalidKnot, "extremal component index out of range");
    const ExtremalComponent& comp = hull.components[component_index];
    int n = k.vertex_count();
    int v = comp.representative_vertex;
    Vec3 pvt = k.vertices[v];
    Vec3 nh = comp.outward_normal;
    Vec3 to_next = k.vertices[(v + 1) % n] - pvt;
    Vec3 to_prev = k.vertices[(v + n - 1) % n] - pvt;

    double rho = std::min(norm(to_next), norm(to_prev)) / 8.0;
    double lift = rho / 4.0;

    auto tangential = [&](const Vec3& d) {
        Vec3 t = d - dot(d, nh) * nh;
        double ln = norm(t);
        if (ln <= 1e-9 * norm(d))
            throw Error(ErrorCode::GenericityFailure,
                        "edge at extremal vertex is parallel to the outward normal");
        return t / ln;
    };
    Vec3 tf = tangential(to_next);
    Vec3 tb = tangential(to_prev);
    if (norm(tf - tb) <= 1e-6)
        throw Error(ErrorCode::GenericityFailure, "extremal vertex edges fold back on themselves");

    // Both new endpoints sit strictly outside the hull (lifted along the
    // outward normal), so the endpoint chord cannot re-enter the knot.
    PLKnot out;
    out.topology = Topology::open;
    out.vertices.push_back(pvt + lift * nh + rho * tf);
    for (int i = 1; i < n; ++i) out.vertices.push_back(k.vertices[(v + i) % n]);
    out.vertices.push_back(pvt + lift * nh + rho * tb);

    try {
        validate(out);
    } catch (const Error&) {
        throw Error(ErrorCode::GenericityFailure, "opening the knot produced self-contact");
    }
    return out;
}

}  // namespace qsec::knotmodel
