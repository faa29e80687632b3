// Quadrisecant-based evaluation of the second Conway coefficient, with
// deterministic perturbation retries, crossing-change surgery, and bounds.
#include "qsec/invariant.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdio>
#include <limits>

#include "qsec/error.hpp"
#include "qsec/gauss.hpp"
#include "qsec/rng.hpp"

namespace qsec::invariant {

using knotmodel::Crossing;
using knotmodel::PLKnot;
using knotmodel::PLLink;

namespace {

bool retryable(ErrorCode c) {
    // Degeneracies that a general-position nudge removes. Everything else
    // (invalid input, non-integral sums, parse problems) must surface.
    return c == ErrorCode::GenericityFailure || c == ErrorCode::NonTransverse ||
           c == ErrorCode::DegenerateHull;
}

template <typename Fn>
auto with_retries(const PLKnot& k, const EvalOptions& opt, Fn&& fn) {
    for (int attempt = 0;; ++attempt) {
        try {
            if (attempt == 0) return fn(k, attempt);
            PLKnot nudged = knotmodel::perturb(k, mix64(opt.seed, attempt), opt.perturb_rel);
            return fn(nudged, attempt);
        } catch (const Error& e) {
            if (!retryable(e.code()) || attempt >= opt.max_attempts) throw;
        }
    }
}

// Surgery description shared by crossing swaps and the type-two evaluation:
// replace the open interior of one edge span with a detour through `apex`.
struct Detour {
    int edge = 0;
    double frac = 0.0;            // crossing position within the edge
    std::array<Vec3, 3> points;   // entry, apex, exit along the under strand
};

Detour make_detour(const PLKnot& k, const Crossing& c, const Vec3& direction,
                   double spread_cap = std::numeric_limits<double>::infinity()) {
    int edge = static_cast<int>(c.under_param);
    double frac = c.under_param - edge;
    double spread = std::min(0.4 * std::min(frac, 1.0 - frac), spread_cap);
    geom::Segment s = k.edge(edge);
    Vec3 under = k.at(c.under_param);
    Vec3 over = k.at(c.over_param);
    Vec3 d = normalized(direction);
    double gap = dot(over - under, d);
    // Entry, apex and exit are pushed off the plane spanned by the edge and
    // the projection direction by small unequal amounts. Without the
    // offsets every detour edge lies in that plane, so the flanking
    // sub-edges' lines intersect exactly and every four-line classification
    // touching both of them degenerates. The offsets are small fractions of
    // the footprint half-width, so in projection the detour stays a sliver
    // around the original edge and the only strand it crosses is the over
    // strand, next to the apex where the detour runs at twice the gap.
    Vec3 side = normalized(cross(s.b - s.a, d));
    double width = spread * dist(s.a, s.b);
    Vec3 entry = s.at(frac - spread) + d * (0.05 * gap) + side * (0.05 * width);
    Vec3 exit = s.at(frac + spread) + d * (0.08 * gap) - side * (0.08 * width);
    Vec3 apex = under + d * (2.0 * gap) + side * (0.03 * width);
    return Detour{edge, frac, {entry, apex, exit}};
}

// Inserts detours into a copy of the knot, deepest position first so earlier
// indices stay valid; detours must be pairwise disjoint along the knot.
PLKnot apply_detours(const PLKnot& k, std::vector<Detour> detours) {
    std::sort(detours.begin(), detours.end(), [](const Detour& a, const Detour& b) {
        return a.edge != b.edge ? a.edge > b.edge : a.frac > b.frac;
    });
    PLKnot out = k;
    for (const Detour& d : detours)
        out.vertices.insert(out.vertices.begin() + d.edge + 1, d.points.begin(), d.points.end());
    return out;
}

// Collects the closed component running forward from knot parameter `from`
// to `to` (cyclically), with exact points at both cut parameters.
PLKnot arc_component(const PLKnot& k, double from, double to) {
    int e = k.edge_count();
    PLKnot comp;
    comp.topology = knotmodel::Topology::closed;
    comp.vertices.push_back(k.at(from));
    double span = to - from;
    if (span <= 0.0) span += e;
    int v = static_cast<int>(std::floor(from)) + 1;
    for (; v - from < span; ++v) {
        double p = v - from;
        if (p <= 1e-12 || span - p <= 1e-12) continue;  // coincides with a cut point
        comp.vertices.push_back(k.vertices[v % k.vertex_count()]);
    }
    comp.vertices.push_back(k.at(to));
    return comp;
}

double link_clearance(const PLKnot& a, const PLKnot& b) {
    double best = std::numeric_limits<double>::infinity();
    for (int i = 0; i < a.edge_count(); ++i)
        for (int j = 0; j < b.edge_count(); ++j)
            best = std::min(best, geom::segment_distance(a.edge(i), b.edge(j)));
    return best;
}

}  // namespace

LongEvaluation nu2_long(const PLKnot& k, const EvalOptions& opt) {
    if (k.topology != knotmodel::Topology::open)
        throw Error(ErrorCode::InvalidKnot, "long evaluation expects an open knot");
    knotmodel::validate(k, opt.tolerance_rel);
    return with_retries(k, opt, [&](const PLKnot& knot, int attempt) {
        geom::Tolerance tol = knotmodel::knot_tolerance(knot, opt.tolerance_rel);
        std::vector<quad::Quadrisecant> all =
            quad::enumerate_quadrisecants(knot, tol, opt.threads);
        LongEvaluation ev;
        ev.total_quadrisecants = all.size();
        ev.attempts_used = attempt;
        for (const quad::Quadrisecant& q : all) {
            if (!quad::is_counted_class(q)) continue;
            int s = quad::sign_epsilon(q.points, q.tangents, tol);
            ev.counted.push_back({q, s});
            ev.value += s;
        }
        return ev;
    });
}

ClosedEvaluation c2_closed(const PLKnot& k, const EvalOptions& opt) {
    if (k.topology != knotmodel::Topology::closed)
        throw Error(ErrorCode::InvalidKnot, "closed evaluation expects a closed knot");
    knotmodel::validate(k, opt.tolerance_rel);
    return with_retries(k, opt, [&](const PLKnot& knot, int attempt) {
        geom::Tolerance tol = knotmodel::knot_tolerance(knot, opt.tolerance_rel);
        knotmodel::HullExtremalSet hull = knotmodel::convex_hull_extremal(knot, opt.tolerance_rel);
        std::vector<quad::Quadrisecant> all =
            quad::enumerate_quadrisecants(knot, tol, opt.threads);
        ClosedEvaluation ev;
        ev.total_quadrisecants = all.size();
        ev.extremal_count = hull.count();
        ev.attempts_used = attempt;
        for (const quad::Quadrisecant& q : all) {
            auto rooting = quad::alternating_rooting(q, knot);
            if (!rooting) continue;
            int s = quad::rooted_sign(q, *rooting, tol);
            int n_l = quad::middle_extremal_count(*rooting, hull, knot);
            ev.alternating.push_back({q, s, n_l});
            ev.raw_sum += static_cast<long long>(s) * n_l;
        }
        if (ev.extremal_count <= 0)
            throw Error(ErrorCode::DegenerateHull, "no extremal components to divide by");
        if (ev.raw_sum % ev.extremal_count != 0) {
            char what[96];
            std::snprintf(what, sizeof what, "weighted sum %lld not divisible by %d", ev.raw_sum,
                          ev.extremal_count);
            throw Error(ErrorCode::NonIntegralSum, what);
        }
        ev.value = static_cast<int>(ev.raw_sum / ev.extremal_count);
        return ev;
    });
}

int nu2(const PLKnot& k, const EvalOptions& opt) {
    return k.topology == knotmodel::Topology::open ? nu2_long(k, opt).value
                                                   : c2_closed(k, opt).value;
}

BoundCheck check_stick_bound(int edge_count, int c2) {
    long long e = edge_count;
    long long choose4 = e < 4 ? 0 : e * (e - 1) * (e - 2) * (e - 3) / 24;
    BoundCheck b;
    b.bound = 2 * choose4;  // |c2| <= 2 * C(e,4)
    b.needed = std::llabs(c2);
    b.holds = b.needed <= b.bound;
    return b;
}

BoundCheck check_polynomial_bound(int degree, int c2) {
    long long d = 2 * static_cast<long long>(degree);
    BoundCheck b;
    b.bound = d * d * d * d;
    b.needed = std::llabs(c2);
    b.holds = b.needed <= b.bound;
    return b;
}

PLKnot swap_crossing(const PLKnot& k, const Crossing& c, const Vec3& direction) {
    PLKnot out = apply_detours(k, {make_detour(k, c, direction)});
    try {
        knotmodel::validate(out);
    } catch (const Error&) {
        throw Error(ErrorCode::GenericityFailure, "crossing detour collides with the knot");
    }
    return out;
}

PLLink oriented_resolution(const PLKnot& k, const Crossing& c) {
    if (k.topology != knotmodel::Topology::closed)
        throw Error(ErrorCode::InvalidKnot, "resolution expects a closed knot");
    auto cut_spread = [&](double param) {
        double frac = param - std::floor(param);
        return 0.4 * std::min(frac, 1.0 - frac);
    };
    double du = cut_spread(c.under_param);
    double dv = cut_spread(c.over_param);
    PLLink link;
    link.components.push_back(arc_component(k, c.under_param + du, c.over_param - dv));
    link.components.push_back(arc_component(k, c.over_param + dv, c.under_param - du));
    for (const PLKnot& comp : link.components) {
        try {
            knotmodel::validate(comp);
        } catch (const Error&) {
            throw Error(ErrorCode::GenericityFailure, "smoothing connector collides with the knot");
        }
    }
    geom::Tolerance tol = knotmodel::knot_tolerance(k);
    if (link_clearance(link.components[0], link.components[1]) <= tol.length())
        throw Error(ErrorCode::GenericityFailure, "smoothed components touch");
    return link;
}

CrossingBall crossing_ball(const PLKnot& k, const Crossing& c, const Vec3& direction) {
    Detour d = make_detour(k, c, direction);
    Vec3 under = k.at(c.under_param);
    Vec3 over = k.at(c.over_param);
    CrossingBall ball;
    ball.center = (under + over) * 0.5;
    double r = 0.0;
    for (const Vec3& p : d.points) r = std::max(r, dist(p, ball.center));
    r = std::max(r, dist(over, ball.center));
    ball.radius = 1.25 * r;
    return ball;
}

bool no_common_transversal(const CrossingBall& a, const CrossingBall& b, const CrossingBall& c) {
    const CrossingBall* balls[3] = {&a, &b, &c};
    for (int t = 0; t < 3; ++t) {
        const CrossingBall& bi = *balls[(t + 1) % 3];
        const CrossingBall& bj = *balls[(t + 2) % 3];
        const CrossingBall& bk = *balls[t];
        Vec3 w = bj.center - bi.center;
        double ww = dot(w, w);
        if (ww <= 0.0) continue;
        double s = dot(bk.center - bi.center, w) / ww;
        double d = dist(bk.center, bi.center + w * s);
        // Any line through the first two balls deviates from their center
        // line by at most the interpolated/extrapolated radii at parameter s.
        double slack = bk.radius + std::abs(1.0 - s) * bi.radius + std::abs(s) * bj.radius;
        if (d > slack) return true;
    }
    return false;
}

DerivativeCheck crossing_change_derivative(const PLKnot& k, const Crossing& c,
                                           const Vec3& direction, const EvalOptions& opt) {
    PLKnot swapped = swap_crossing(k, c, direction);
    int original_value = nu2(k, opt);
    int swapped_value = nu2(swapped, opt);
    PLLink resolved = oriented_resolution(k, c);
    knotmodel::KnotDiagram d = knotmodel::project_link_to_diagram(resolved, direction);
    DerivativeCheck out;
    out.resolution_linking = gauss::linking_number(d);
    out.plus_value = c.sign > 0 ? original_value : swapped_value;
    out.minus_value = c.sign > 0 ? swapped_value : original_value;
    return out;
}

long long type_two_alternating_sum(const PLKnot& k, const std::array<Crossing, 3>& picks,
                                   const Vec3& direction, const EvalOptions& opt) {
    // Detours sharing an edge must not interleave: cap each spread below
    // half the gap to its nearest neighbour on that edge.
    std::array<double, 3> caps;
    caps.fill(std::numeric_limits<double>::infinity());
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) {
            if (i == j) continue;
            if (static_cast<int>(picks[i].under_param) != static_cast<int>(picks[j].under_param))
                continue;
            double separation = std::abs(picks[i].under_param - picks[j].under_param);
            caps[i] = std::min(caps[i], 0.45 * separation);
        }
    std::array<Detour, 3> detours = {make_detour(k, picks[0], direction, caps[0]),
                                     make_detour(k, picks[1], direction, caps[1]),
                                     make_detour(k, picks[2], direction, caps[2])};
    long long sum = 0;
    for (int mask = 0; mask < 8; ++mask) {
        std::vector<Detour> chosen;
        for (int i = 0; i < 3; ++i)
            if (mask & (1 << i)) chosen.push_back(detours[i]);
        PLKnot variant = apply_detours(k, std::move(chosen));
        try {
            knotmodel::validate(variant);
        } catch (const Error&) {
            throw Error(ErrorCode::GenericityFailure, "crossing detour collides with the knot");
        }
        int parity = (std::popcount(static_cast<unsigned>(mask)) % 2 == 0) ? 1 : -1;
        sum += parity * nu2(variant, opt);
    }
    return sum;
}

}  // namespace qsec::invariant
