#include "qsec/geom.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <optional>

namespace qsec::geom {

namespace {

// Dimensionless conditioning floors (the data-scaled tolerance handles
// lengths; these guard pure direction arithmetic on unit vectors).
constexpr double kParallelTol = 1e-9;
constexpr double kDirTripleTol = 1e-9;

[[noreturn]] void fail(ErrorCode code, const std::string& msg) { throw Error(code, msg); }

}  // namespace

int orient3(const Vec3& a, const Vec3& b, const Vec3& c, const Vec3& d, double eps) {
    double v = triple(b - a, c - a, d - a);
    if (std::abs(v) <= eps) return 0;
    return v > 0 ? 1 : -1;
}

double signed_line_distance(const Line& a, const Line& b) {
    Vec3 n = cross(a.dir, b.dir);
    double nn = norm(n);
    if (nn == 0.0) return norm(cross(b.base - a.base, a.dir));  // parallel: plain distance
    return triple(a.dir, b.dir, b.base - a.base) / nn;
}

// The squared distance is convex in (s,t) over the unit box, so clamped
// coordinate descent converges to the minimum; a fixed iteration count keeps
// it deterministic.
double segment_distance(const Segment& sa, const Segment& sb) {
    Vec3 u = sa.delta(), v = sb.delta(), w = sa.a - sb.a;
    double a = dot(u, u), b = dot(u, v), c = dot(v, v), d = dot(u, w), e = dot(v, w);
    double D = a * c - b * b;
    double s = 0.0, t = 0.0;
    if (D > 1e-14 * a * c) {
        s = std::clamp((b * e - c * d) / D, 0.0, 1.0);
        t = std::clamp((a * e - b * d) / D, 0.0, 1.0);
    }
    for (int it = 0; it < 25; ++it) {
        t = c > 0 ? std::clamp((b * s + e) / c, 0.0, 1.0) : 0.0;
        s = a > 0 ? std::clamp((b * t - d) / a, 0.0, 1.0) : 0.0;
    }
    return dist(sa.at(s), sb.at(t));
}

bool closest_params(const Line& a, const Line& b, double& ta, double& tb) {
    Vec3 w0 = a.base - b.base;
    double B = dot(a.dir, b.dir);
    double den = 1.0 - B * B;  // dirs are unit
    if (den < 1e-16) return false;
    double d = dot(a.dir, w0), e = dot(b.dir, w0);
    ta = (B * e - d) / den;
    tb = (e - B * d) / den;
    return true;
}

double CanonicalVariety::eval(const Vec3& p) const {
    switch (kind) {
        case TripleCase::disjoint: return (p.x + p.z - 1.0) * p.y - p.x * p.z;
        case TripleCase::one_intersection: return p.z * (p.x - p.y);
        case TripleCase::chain: return p.z * p.x;
    }
    return 0.0;
}

TripleClassification classify_three_lines(const Line& l1, const Line& l2, const Line& l3,
                                          const Tolerance& tol) {
    const Line* lines[3] = {&l1, &l2, &l3};

    // Pairwise relations: parallel is disallowed, intersecting is recorded.
    bool meets[3][3] = {};
    Vec3 meet_pt[3][3];
    int meet_count = 0;
    for (int i = 0; i < 3; ++i) {
        for (int j = i + 1; j < 3; ++j) {
            Vec3 cr = cross(lines[i]->dir, lines[j]->dir);
            if (norm(cr) <= kParallelTol)
                fail(ErrorCode::DegenerateConfiguration, "parallel line pair in triple");
            if (std::abs(signed_line_distance(*lines[i], *lines[j])) <= tol.length()) {
                double ti, tj;
                if (!closest_params(*lines[i], *lines[j], ti, tj))
                    fail(ErrorCode::DegenerateConfiguration, "unresolvable near-parallel pair");
                meets[i][j] = meets[j][i] = true;
                meet_pt[i][j] = meet_pt[j][i] =
                    (lines[i]->at(ti) + lines[j]->at(tj)) * 0.5;
                ++meet_count;
            }
        }
    }

    TripleClassification cls;
    if (meet_count == 0) {
        cls.kind = TripleCase::disjoint;
        cls.slot = {0, 1, 2};
        return cls;
    }
    if (meet_count == 1) {
        cls.kind = TripleCase::one_intersection;
        for (int i = 0; i < 3; ++i)
            for (int j = i + 1; j < 3; ++j)
                if (meets[i][j]) {
                    int k = 3 - i - j;
                    cls.slot = {i, j, k};
                    cls.meet01 = meet_pt[i][j];
                }
        return cls;
    }
    if (meet_count == 2) {
        // The middle line is the one participating in both intersections.
        int mid = -1;
        for (int i = 0; i < 3; ++i) {
            int deg = 0;
            for (int j = 0; j < 3; ++j)
                if (j != i && meets[i][j]) ++deg;
            if (deg == 2) mid = i;
        }
        if (mid < 0) fail(ErrorCode::DegenerateConfiguration, "inconsistent intersection pattern");
        int ends[2], n = 0;
        for (int i = 0; i < 3; ++i)
            if (i != mid) ends[n++] = i;
        cls.kind = TripleCase::chain;
        cls.slot = {ends[0], mid, ends[1]};
        cls.meet01 = meet_pt[ends[0]][mid];
        cls.meet12 = meet_pt[mid][ends[1]];
        if (dist(cls.meet01, cls.meet12) <= tol.length())
            fail(ErrorCode::DegenerateConfiguration, "chain intersections coincide");
        return cls;
    }
    fail(ErrorCode::DegenerateConfiguration, "three mutually intersecting lines");
}

AffineMap normalize_three_lines(const Line& l1, const Line& l2, const Line& l3,
                                const TripleClassification& cls, const Tolerance& tol) {
    const Line* input[3] = {&l1, &l2, &l3};
    const Line* L[3] = {input[cls.slot[0]], input[cls.slot[1]], input[cls.slot[2]]};

    Vec3 d0 = L[0]->dir, d1 = L[1]->dir, d2 = L[2]->dir;
    Mat3 V = Mat3::from_columns(d0, d1, d2);
    if (std::abs(V.det()) <= kDirTripleTol)
        fail(ErrorCode::DegenerateConfiguration, "direction triple nearly dependent");
    Mat3 Vinv = V.inverse();

    // The canonical direction images e1,e2,e3 leave one scale per line free:
    // A = diag(lam) * Vinv. Base-point constraints fix the scales (and the
    // translation); free scales are set to 1 for determinism.
    Vec3 lam{1, 1, 1};
    Vec3 trans;

    switch (cls.kind) {
        case TripleCase::disjoint: {
            Vec3 a = Vinv * L[0]->base;
            Vec3 b = Vinv * L[1]->base;
            Vec3 c = Vinv * L[2]->base;
            double den3 = b.z - a.z;  // vanishes iff lines 0,1 coplanar
            double den1 = c.x - b.x;  // vanishes iff lines 1,2 coplanar
            double den2 = c.y - a.y;  // vanishes iff lines 0,2 coplanar
            double floor_ = tol.rel * (1.0 + norm(a) + norm(b) + norm(c));
            if (std::abs(den1) <= floor_ || std::abs(den2) <= floor_ || std::abs(den3) <= floor_)
                fail(ErrorCode::DegenerateConfiguration, "skew triple too close to coplanar pair");
            lam = {1.0 / den1, 1.0 / den2, 1.0 / den3};
            trans = {-lam.x * b.x, -lam.y * a.y, -lam.z * a.z};
            break;
        }
        case TripleCase::one_intersection: {
            Vec3 c = Vinv * (L[2]->base - cls.meet01);
            double floor_ = tol.rel * (1.0 + norm(c));
            if (std::abs(c.x) <= floor_ || std::abs(c.y) <= floor_)
                fail(ErrorCode::DegenerateConfiguration,
                     "third line in special position relative to the meeting pair");
            lam = {1.0 / c.x, 1.0 / c.y, 1.0};
            break;
        }
        case TripleCase::chain: {
            double s = dot(cls.meet12 - cls.meet01, d1);
            if (std::abs(s) <= tol.length())
                fail(ErrorCode::DegenerateConfiguration, "chain intersections coincide");
            lam = {1.0, 1.0 / s, 1.0};
            break;
        }
    }

    AffineMap T;
    for (int r = 0; r < 3; ++r)
        for (int col = 0; col < 3; ++col) T.a.m[r][col] = lam[r] * Vinv.m[r][col];

    if (cls.kind == TripleCase::disjoint) {
        T.b = trans;
    } else {
        T.b = -(T.a * cls.meet01);
    }
    return T;
}

TripleFrame make_triple_frame(const Line& l1, const Line& l2, const Line& l3,
                              const Tolerance& tol) {
    TripleFrame f;
    f.cls = classify_three_lines(l1, l2, l3, tol);
    f.to_canonical = normalize_three_lines(l1, l2, l3, f.cls, tol);
    f.from_canonical = f.to_canonical.inverse();
    return f;
}

namespace {

// Solutions of the canonical variety along the canonical image of l4,
// as parameters along the (unit) canonical direction.
std::vector<double> variety_roots(const TripleFrame& frame, const Vec3& q, const Vec3& d,
                                  const Tolerance& tol) {
    std::vector<double> roots;
    double qscale = 1.0 + norm(q);

    auto plane_factor_roots = [&](const Vec3& n, double k) {
        double v = dot(n, d);
        double w = dot(n, q) + k;
        if (std::abs(v) <= 1e-12) {
            if (std::abs(w) <= 1e-9 * qscale)
                fail(ErrorCode::InfiniteFamily, "fourth line lies in a transversal plane");
            return;  // parallel to the plane, no finite hit
        }
        roots.push_back(-w / v);
    };

    switch (frame.cls.kind) {
        case TripleCase::disjoint: {
            // (x+z-1)y - xz along q + t d.
            double A = (d.x + d.z) * d.y - d.x * d.z;
            double B = (q.x + q.z - 1.0) * d.y + (d.x + d.z) * q.y - q.x * d.z - d.x * q.z;
            double C = (q.x + q.z - 1.0) * q.y - q.x * q.z;
            double S = std::abs(A) + std::abs(B) + std::abs(C);
            if (S <= 1e-13 * (1.0 + qscale * qscale))
                fail(ErrorCode::InfiniteFamily, "fourth line lies inside the transversal quadric");
            if (std::abs(A) <= 1e-13 * S) {
                if (std::abs(B) > 1e-13 * S) roots.push_back(-C / B);
                return roots;
            }
            double disc = B * B - 4.0 * A * C;
            // Two tangency signals: disc lost to cancellation relative to the
            // terms that formed it, or the root separation sqrt(disc)/A falling
            // below parameter resolution (covers exact tangency where B and C
            // both vanish and the relative scale degenerates).
            double disc_scale = B * B + std::abs(4.0 * A * C);
            double sep_tol = std::max(tol.rel, 1e-13) * (1.0 + std::abs(B / (2.0 * A)));
            double tangency = std::max(std::max(tol.rel * tol.rel, 1e-13) * disc_scale,
                                       A * A * sep_tol * sep_tol);
            if (std::abs(disc) <= tangency)
                fail(ErrorCode::TangencyAmbiguity, "fourth line tangent to the transversal quadric");
            if (disc < 0.0) return roots;
            double sq = std::sqrt(disc);
            double qq = -0.5 * (B + (B >= 0 ? sq : -sq));
            roots.push_back(qq / A);
            if (std::abs(qq) > 0.0) roots.push_back(C / qq);
            return roots;
        }
        case TripleCase::one_intersection:
            plane_factor_roots({0, 0, 1}, 0.0);   // plane z = 0
            plane_factor_roots({1, -1, 0}, 0.0);  // plane x = y
            return roots;
        case TripleCase::chain:
            plane_factor_roots({0, 0, 1}, 0.0);  // plane z = 0
            plane_factor_roots({1, 0, 0}, 0.0);  // plane x = 0
            return roots;
    }
    return roots;
}

// Witness line through a canonical-variety point p: the unique line through p
// meeting canonical lines 0 and 1, expressed in canonical coordinates.
// nullopt means the point sits at a ruling limit of the quadric, where the
// "transversal" is the parallel limit line that misses one of the first two
// lines entirely: not a transversal, dropped without error.
std::optional<Line> witness_through(const TripleFrame& frame, const Vec3& p,
                                    const Tolerance& tol) {
    double pscale = 1.0 + norm(p);
    switch (frame.cls.kind) {
        case TripleCase::disjoint: {
            // Feet on (t,0,0) and (0,t,1) run to infinity at the ruling
            // limits z -> 1 and z -> 0.
            if (std::abs(1.0 - p.z) <= tol.rel * pscale || std::abs(p.z) <= tol.rel * pscale)
                return std::nullopt;
            Vec3 foot1{p.x / (1.0 - p.z), 0.0, 0.0};
            Vec3 foot2{0.0, p.y / p.z, 1.0};
            return Line::through(foot1, foot2);
        }
        case TripleCase::one_intersection: {
            // Plane z=0: all witnesses pass through (1,1,0), where line 2
            // punctures the plane of lines 0,1. Plane x=y: through the origin.
            Vec3 apex = std::abs(p.z) <= std::abs(p.x - p.y) ? Vec3{1, 1, 0} : Vec3{0, 0, 0};
            if (dist(p, apex) <= tol.rel * pscale)
                fail(ErrorCode::InfiniteFamily, "fourth line through a witness pencil apex");
            return Line::through(apex, p);
        }
        case TripleCase::chain: {
            Vec3 apex = std::abs(p.z) <= std::abs(p.x) ? Vec3{0, 1, 0} : Vec3{0, 0, 0};
            if (dist(p, apex) <= tol.rel * pscale)
                fail(ErrorCode::InfiniteFamily, "fourth line through a witness pencil apex");
            return Line::through(apex, p);
        }
    }
    fail(ErrorCode::DegenerateConfiguration, "unreachable");
}

// Signed distance from the line through `pa` with unit direction `dw` to
// line l; the zero set is "the moving line meets l".
std::optional<double> line_residual(const Vec3& pa, const Vec3& dw, const Line& l) {
    Vec3 n = cross(dw, l.dir);
    double nn = norm(n);
    if (nn < 1e-6) return std::nullopt;
    return dot(l.base - pa, n) / nn;
}

// Newton-polishes a reconstructed witness directly against the world lines.
// The canonical frame of a nearly degenerate triple is ill-conditioned, so a
// witness mapped back from it can drift far beyond roundoff even though the
// transversal itself is a well-conditioned root; two hit parameters are free
// variables and the signed distances to the two non-anchor lines are driven
// to zero. Returns the best line encountered, the input included, so a
// witness already at roundoff passes through untouched.
Line polish_transversal(const Line& w, const std::array<Line, 4>& lines, double target) {
    std::array<double, 4> hit_t;
    std::array<Vec3, 4> hit_p;
    std::array<double, 4> transversality;
    for (int i = 0; i < 4; ++i) {
        double tw, ti;
        if (!closest_params(w, lines[i], tw, ti)) return w;
        hit_t[i] = ti;
        hit_p[i] = lines[i].at(ti);
        transversality[i] = norm(cross(w.dir, lines[i].dir));
    }
    // Anchor the parameterization on the two most transverse hits with a
    // usable separation; the other two supply the residuals.
    int a = 0;
    for (int i = 1; i < 4; ++i)
        if (transversality[i] > transversality[a]) a = i;
    int b = -1;
    for (int i = 0; i < 4; ++i) {
        if (i == a || dist(hit_p[i], hit_p[a]) < 1e-6 * (1.0 + norm(hit_p[a]))) continue;
        if (b < 0 || transversality[i] > transversality[b]) b = i;
    }
    if (b < 0) return w;
    int c = -1, e = -1;
    for (int i = 0; i < 4; ++i)
        if (i != a && i != b) (c < 0 ? c : e) = i;

    auto eval = [&](double sa, double sb, double& r0, double& r1) -> bool {
        Vec3 pa = lines[a].at(sa);
        Vec3 dw = lines[b].at(sb) - pa;
        double len = norm(dw);
        if (len < 1e-12) return false;
        dw = dw * (1.0 / len);
        auto v0 = line_residual(pa, dw, lines[c]);
        auto v1 = line_residual(pa, dw, lines[e]);
        if (!v0 || !v1) return false;
        r0 = *v0;
        r1 = *v1;
        return true;
    };

    // Worst perpendicular miss over all four lines: the certification metric.
    auto miss = [&](const Line& cand) {
        double worst = 0.0;
        for (const Line& l : lines) {
            Vec3 n = cross(cand.dir, l.dir);
            double nn = norm(n);
            double r = nn > 1e-9 ? std::abs(dot(l.base - cand.base, n)) / nn
                                 : norm(cross(l.base - cand.base, cand.dir));
            worst = std::max(worst, r);
        }
        return worst;
    };
    auto feet_line = [&](double sa, double sb) -> std::optional<Line> {
        Vec3 pa = lines[a].at(sa);
        Vec3 dw = lines[b].at(sb) - pa;
        double len = norm(dw);
        if (len < 1e-12) return std::nullopt;
        return Line{pa, dw * (1.0 / len)};
    };

    // Track the best line seen by the full four-line miss, starting from the
    // unpolished witness itself: a reconstruction can already be at roundoff,
    // and re-anchoring it through two feet only adds noise that a distant hit
    // amplifies, so the polish must never hand back more miss than it was given.
    Line best_line = w;
    double best_miss = miss(w);
    auto consider = [&](double xa, double xb) {
        if (std::optional<Line> cand = feet_line(xa, xb)) {
            double m = miss(*cand);
            if (m < best_miss) {
                best_miss = m;
                best_line = *cand;
            }
        }
    };

    double sa = hit_t[a], sb = hit_t[b];
    double r0, r1;
    if (!eval(sa, sb, r0, r1)) return best_line;
    consider(sa, sb);
    double cur = std::max(std::abs(r0), std::abs(r1));
    for (int iter = 0; iter < 24 && best_miss > 0.01 * target; ++iter) {
        double ha = 1e-7 * (1.0 + std::abs(sa)), hb = 1e-7 * (1.0 + std::abs(sb));
        double a0, a1, b0, b1;
        if (!eval(sa + ha, sb, a0, a1) || !eval(sa, sb + hb, b0, b1)) break;
        double j00 = (a0 - r0) / ha, j01 = (b0 - r0) / hb;
        double j10 = (a1 - r1) / ha, j11 = (b1 - r1) / hb;
        double det = j00 * j11 - j01 * j10;
        if (std::abs(det) < 1e-14) break;
        sa -= (j11 * r0 - j01 * r1) / det;
        sb -= (j00 * r1 - j10 * r0) / det;
        if (!eval(sa, sb, r0, r1)) break;
        consider(sa, sb);
        double m = std::max(std::abs(r0), std::abs(r1));
        if (m < cur)
            cur = m;
        else if (iter > 3)
            break;  // stalled
    }
    return best_line;
}

}  // namespace

std::vector<Transversal> transversals_with_frame(const TripleFrame& frame,
                                                 const std::array<Line, 4>& lines,
                                                 const Tolerance& tol) {
    Vec3 q = frame.to_canonical.apply(lines[3].base);
    Vec3 d = normalized(frame.to_canonical.apply_vector(lines[3].dir));

    std::vector<Transversal> out;
    for (double t : variety_roots(frame, q, d, tol)) {
        Vec3 p = q + d * t;
        if (norm(p) > 1e12) continue;  // running off toward a ruling limit
        std::optional<Line> wc = witness_through(frame, p, tol);
        if (!wc) continue;

        Line w{frame.from_canonical.apply(wc->base),
               normalized(frame.from_canonical.apply_vector(wc->dir))};
        w = polish_transversal(w, lines, tol.length());

        Transversal tr;
        tr.line = w;
        bool ok = true;
        for (int i = 0; i < 4 && ok; ++i) {
            double tw, ti;
            if (!closest_params(w, lines[i], tw, ti)) {
                // Witness parallel to a target line: the hit ran off to
                // infinity, so this is no four-point transversal. Coincident
                // parallels are a sliding family instead and are an error.
                if (norm(cross(lines[i].base - w.base, w.dir)) <= tol.length())
                    fail(ErrorCode::InfiniteFamily, "witness slides along a target line");
                ok = false;
                break;
            }
            // Certify the witness by its perpendicular distance to the
            // target line. That quantity is lever-free: the hit parameter
            // itself can carry absolute error growing with its distance
            // from the witness anchors, but a hit that fuzzy is only ever
            // compared against ranges on the same distance scale, so the
            // residual is the right thing to hold to tolerance.
            Vec3 normal = cross(w.dir, lines[i].dir);
            double nn = norm(normal);
            double residual = nn > 1e-9
                                  ? std::abs(dot(lines[i].base - w.base, normal)) / nn
                                  : norm(cross(lines[i].base - w.base, w.dir));
            if (residual > tol.length()) {
                char what[96];
                std::snprintf(what, sizeof what, "witness misses line %d by %.3e", i, residual);
                fail(ErrorCode::DegenerateConfiguration, what);
            }
            tr.t[i] = ti;
            tr.point[i] = lines[i].at(ti);
        }
        if (!ok) continue;

        // A plane-pair double point can yield the same witness twice.
        bool dup = false;
        for (const auto& other : out) {
            if (norm(cross(other.line.dir, tr.line.dir)) <= kParallelTol &&
                dist(other.point[3], tr.point[3]) <= 10.0 * tol.length())
                dup = true;
        }
        if (!dup) out.push_back(tr);
    }
    if (out.size() > 2) fail(ErrorCode::DegenerateConfiguration, "more than two witnesses survived");
    return out;
}

namespace {

// One frame-and-probe pass with the slots rotated so that line `shift` leads
// the frame; hits are mapped back to the caller's slot order.
std::vector<Transversal> transversals_shifted(const std::array<Line, 4>& lines, int shift,
                                              const Tolerance& tol) {
    std::array<Line, 4> rot;
    for (int i = 0; i < 4; ++i) rot[i] = lines[(i + shift) % 4];
    TripleFrame frame = make_triple_frame(rot[0], rot[1], rot[2], tol);
    std::vector<Transversal> found = transversals_with_frame(frame, rot, tol);
    for (Transversal& tr : found) {
        Transversal back;
        back.line = tr.line;
        for (int i = 0; i < 4; ++i) {
            back.t[(i + shift) % 4] = tr.t[i];
            back.point[(i + shift) % 4] = tr.point[i];
        }
        tr = back;
    }
    return found;
}

// The conditioning of the canonical frame depends on which line leads it: a
// bad leader can hand the polish a witness too coarse to certify even though
// the transversals are genuine and another ordering recovers them cleanly.
// Try the cyclic rotations from `first_shift` on, accepting the first that
// certifies and rethrowing only when every remaining rotation has failed.
std::vector<Transversal> transversals_rescued(const std::array<Line, 4>& lines, int first_shift,
                                              const Tolerance& tol) {
    for (int shift = first_shift;; ++shift) {
        try {
            return transversals_shifted(lines, shift, tol);
        } catch (const Error& err) {
            if (err.code() != ErrorCode::DegenerateConfiguration || shift >= 3) throw;
        }
    }
}

}  // namespace

std::vector<Transversal> transversals_of_four_lines(const Line& l1, const Line& l2,
                                                    const Line& l3, const Line& l4,
                                                    const Tolerance& tol) {
    return transversals_rescued({l1, l2, l3, l4}, 0, tol);
}

std::vector<SegmentTransversal> candidates_with_frame(const TripleFrame& frame,
                                                      const std::array<Segment, 4>& segs,
                                                      const Tolerance& tol) {
    std::array<Line, 4> lines;
    for (int i = 0; i < 4; ++i) {
        if (segs[i].length() <= tol.length())
            fail(ErrorCode::DegenerateConfiguration, "degenerate segment");
        lines[i] = segs[i].line();
    }

    // The caller's frame leads with lines[0]; when it cannot certify its
    // witnesses, rotate the slot order so another line leads before giving up.
    std::vector<Transversal> found;
    try {
        found = transversals_with_frame(frame, lines, tol);
    } catch (const Error& err) {
        if (err.code() != ErrorCode::DegenerateConfiguration) throw;
        found = transversals_rescued(lines, 1, tol);
    }

    std::vector<SegmentTransversal> out;
    for (const Transversal& tr : found) {
        SegmentTransversal st;
        st.line = tr.line;
        for (int i = 0; i < 4; ++i) {
            double len = segs[i].length();
            double u = tr.t[i] / len;
            double pad = tol.length() / len;
            HitZone zone;
            if (u > pad && u < 1.0 - pad)
                zone = HitZone::interior;
            else if (u >= -pad && u <= pad)
                zone = HitZone::near_start;
            else if (u >= 1.0 - pad && u <= 1.0 + pad)
                zone = HitZone::near_end;
            else
                zone = HitZone::outside;
            st.u[i] = u;
            st.point[i] = tr.point[i];
            st.zone[i] = zone;
        }
        out.push_back(st);
    }
    return out;
}

std::vector<SegmentTransversal> transversal_candidates(const Segment& s1, const Segment& s2,
                                                       const Segment& s3, const Segment& s4,
                                                       const Tolerance& tol) {
    TripleFrame frame = make_triple_frame(s1.line(), s2.line(), s3.line(), tol);
    return candidates_with_frame(frame, {s1, s2, s3, s4}, tol);
}

std::vector<SegmentTransversal> transversals_of_four_segments(const Segment& s1, const Segment& s2,
                                                              const Segment& s3, const Segment& s4,
                                                              const Tolerance& tol) {
    std::vector<SegmentTransversal> out;
    for (const auto& cand : transversal_candidates(s1, s2, s3, s4, tol)) {
        bool outside = false, near_end = false;
        for (HitZone z : cand.zone) {
            if (z == HitZone::outside) outside = true;
            if (z == HitZone::near_start || z == HitZone::near_end) near_end = true;
        }
        if (outside) continue;
        if (near_end)
            fail(ErrorCode::TangencyAmbiguity, "transversal hits a segment endpoint");
        out.push_back(cand);
    }
    return out;
}

}  // namespace qsec::geom
