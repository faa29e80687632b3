#include "qsec/quadrisecant.hpp"

#include <algorithm>
#include <cmath>
#include <thread>

namespace qsec::quad {

namespace {

using geom::Line;
using geom::Segment;
using geom::Tolerance;
using knotmodel::PLKnot;
using knotmodel::Topology;

// Sign calibration of the transversality determinant, fixed once so that the
// standard right-handed long trefoil totals +1. Both computation routes and
// the curve tracer inherit it through this single definition.
constexpr int kEpsilonCalibration = 1;

// Minimum distance from a full line to a segment (used to certify that a
// candidate quadrisecant misses every edge outside its quadruple).
double line_segment_distance(const Line& l, const Segment& s) {
    Line sl = s.line();
    double tl, ts;
    if (!geom::closest_params(l, sl, tl, ts)) {
        return norm(cross(l.dir, s.a - l.base));  // parallel: constant distance
    }
    double u = std::clamp(ts / s.length(), 0.0, 1.0);
    return norm(cross(l.dir, s.at(u) - l.base));
}

struct EdgeContext {
    const PLKnot* k;
    std::vector<Segment> segs;
    std::vector<Line> lines;
    int e = 0;
    bool closed = false;

    bool adjacent(int i, int j) const {
        int lo = std::min(i, j), hi = std::max(i, j);
        if (hi - lo == 1) return true;
        return closed && lo == 0 && hi == e - 1;
    }
    // Vertex index at the start/end of an edge.
    int start_vertex(int edge) const { return edge; }
    int end_vertex(int edge) const { return (edge + 1) % k->vertex_count(); }
};

[[noreturn]] void genericity(const char* what, const std::array<int, 4>& ids) {
    throw Error(ErrorCode::GenericityFailure,
                std::string(what) + " at edges (" + std::to_string(ids[0]) + "," +
                    std::to_string(ids[1]) + "," + std::to_string(ids[2]) + "," +
                    std::to_string(ids[3]) + ")");
}

// Probes one quadruple of edges against a frame built from the first three.
// Appends accepted quadrisecants; throws GenericityFailure for anything that
// a retry with a perturbed knot is expected to resolve.
void probe_quadruple(const EdgeContext& ctx, const geom::TripleFrame& frame,
                     const std::array<int, 4>& ids, const Tolerance& tol,
                     std::vector<Quadrisecant>& out) {
    std::array<Segment, 4> segs{ctx.segs[ids[0]], ctx.segs[ids[1]], ctx.segs[ids[2]],
                                ctx.segs[ids[3]]};
    std::vector<geom::SegmentTransversal> cands;
    try {
        cands = geom::candidates_with_frame(frame, segs, tol);
    } catch (const Error& err) {
        switch (err.code()) {
            case ErrorCode::DegenerateConfiguration:
            case ErrorCode::TangencyAmbiguity:
            case ErrorCode::InfiniteFamily:
                genericity(err.what(), ids);
            default:
                throw;
        }
    }

    for (const auto& cand : cands) {
        bool outside = false;
        for (int i = 0; i < 4; ++i) outside |= cand.zone[i] == geom::HitZone::outside;
        if (outside) continue;

        // Near-vertex hits: a hit shared pairwise at a vertex between two
        // edges of this quadruple is a line through that vertex meeting the
        // knot in only three points: not a quadrisecant, dropped silently.
        // Any other near-vertex hit is a genuine non-generic incidence.
        std::vector<int> near_vertex;
        for (int i = 0; i < 4; ++i) {
            if (cand.zone[i] == geom::HitZone::near_start)
                near_vertex.push_back(ctx.start_vertex(ids[i]));
            else if (cand.zone[i] == geom::HitZone::near_end)
                near_vertex.push_back(ctx.end_vertex(ids[i]));
        }
        if (!near_vertex.empty()) {
            std::sort(near_vertex.begin(), near_vertex.end());
            bool paired = near_vertex.size() % 2 == 0;
            for (size_t i = 0; paired && i + 1 < near_vertex.size(); i += 2)
                paired = near_vertex[i] == near_vertex[i + 1];
            if (paired) continue;
            genericity("secant through a knot vertex", ids);
        }

        // All four hits strictly interior: certify the line meets nothing else.
        for (int g = 0; g < ctx.e; ++g) {
            if (g == ids[0] || g == ids[1] || g == ids[2] || g == ids[3]) continue;
            if (line_segment_distance(cand.line, ctx.segs[g]) <= tol.length())
                genericity("five or more collinear intersections", ids);
        }

        Quadrisecant q;
        q.edges = ids;
        for (int i = 0; i < 4; ++i) {
            q.params[i] = ids[i] + cand.u[i];
            q.points[i] = cand.point[i];
            q.tangents[i] = normalized(ctx.segs[ids[i]].delta());
        }
        q.line = cand.line;
        if (dot(q.line.dir, q.points[1] - q.points[0]) < 0.0) q.line.dir = -1.0 * q.line.dir;
        std::array<int, 4> rank{0, 1, 2, 3};
        std::array<double, 4> along;
        for (int i = 0; i < 4; ++i) along[i] = dot(q.line.dir, q.points[i] - q.line.base);
        std::sort(rank.begin(), rank.end(), [&](int i, int j) { return along[i] < along[j]; });
        q.order_on_line = rank;
        out.push_back(q);
    }
}

struct ChunkError {
    std::uint64_t index;
    ErrorCode code;
    std::string message;
};

void run_chunk(const EdgeContext& ctx, const Tolerance& tol, int a_begin, int a_end,
               std::vector<Quadrisecant>& out, std::optional<ChunkError>& err) {
    int e = ctx.e;
    auto quad_index = [e](int a, int b, int c, int d) {
        return ((static_cast<std::uint64_t>(a) * e + b) * e + c) * e + d;
    };
    for (int a = a_begin; a < a_end; ++a) {
        for (int b = a + 1; b < e; ++b) {
            for (int c = b + 1; c < e; ++c) {
                geom::TripleFrame frame;
                bool have_frame = false;
                for (int d = c + 1; d < e; ++d) {
                    std::array<int, 4> ids{a, b, c, d};
                    try {
                        if (!have_frame) {
                            frame = geom::make_triple_frame(ctx.lines[a], ctx.lines[b],
                                                            ctx.lines[c], tol);
                            have_frame = true;
                        }
                        // Every transversal of a chain triple passes through
                        // one of the two common points, so it meets the knot
                        // in at most three distinct points: skip the triple.
                        if (frame.cls.kind == geom::TripleCase::chain) break;
                        probe_quadruple(ctx, frame, ids, tol, out);
                    } catch (const Error& caught) {
                        ErrorCode code = caught.code();
                        if (code == ErrorCode::DegenerateConfiguration ||
                            code == ErrorCode::TangencyAmbiguity ||
                            code == ErrorCode::InfiniteFamily)
                            code = ErrorCode::GenericityFailure;
                        if (!err) err = ChunkError{quad_index(a, b, c, d), code, caught.what()};
                        return;
                    }
                }
            }
        }
    }
}

}  // namespace

std::vector<Quadrisecant> enumerate_quadrisecants(const PLKnot& k, const Tolerance& tol,
                                                  int threads) {
    EdgeContext ctx;
    ctx.k = &k;
    ctx.e = k.edge_count();
    ctx.closed = k.topology == Topology::closed;
    for (int i = 0; i < ctx.e; ++i) {
        ctx.segs.push_back(k.edge(i));
        ctx.lines.push_back(ctx.segs.back().line());
    }
    if (ctx.e < 4) return {};

    int t = std::clamp(threads, 1, ctx.e);
    std::vector<std::vector<Quadrisecant>> results(t);
    std::vector<std::optional<ChunkError>> errors(t);

    if (t == 1) {
        run_chunk(ctx, tol, 0, ctx.e, results[0], errors[0]);
    } else {
        std::vector<std::thread> pool;
        int chunk = (ctx.e + t - 1) / t;
        for (int w = 0; w < t; ++w) {
            int lo = w * chunk, hi = std::min(ctx.e, (w + 1) * chunk);
            pool.emplace_back([&, w, lo, hi] { run_chunk(ctx, tol, lo, hi, results[w], errors[w]); });
        }
        for (auto& th : pool) th.join();
    }

    // Deterministic error selection: the failing quadruple with the smallest
    // lexicographic index wins, independent of the thread split.
    const ChunkError* first = nullptr;
    for (const auto& err : errors)
        if (err && (!first || err->index < first->index)) first = &*err;
    if (first) throw Error(first->code, first->message);

    std::vector<Quadrisecant> out;
    for (auto& r : results)
        for (auto& q : r) out.push_back(std::move(q));
    return out;
}

std::array<int, 4> line_order_type(const Quadrisecant& q) { return q.order_on_line; }

bool is_counted_class(const Quadrisecant& q) {
    return q.order_on_line == std::array<int, 4>{2, 0, 3, 1};
}

bool is_alternating(const Quadrisecant& q) {
    Vec3 m = 0.5 * (q.points[q.order_on_line[1]] + q.points[q.order_on_line[2]]);
    std::array<int, 4> side;
    for (int i = 0; i < 4; ++i) side[i] = dot(q.line.dir, q.points[i] - m) > 0 ? 1 : -1;
    return side[0] != side[1] && side[1] != side[2] && side[2] != side[3];
}

int sign_epsilon(const std::array<Vec3, 4>& x, const std::array<Vec3, 4>& d,
                 const geom::Tolerance& tol) {
    Vec3 v = x[1] - x[0];
    double e11 = dist(x[2], x[1]) * triple(v, d[0], d[2]);
    double e12 = dist(x[2], x[0]) * triple(v, d[1], d[2]);
    double e21 = dist(x[3], x[1]) * triple(v, d[3], d[0]);
    double e22 = dist(x[3], x[0]) * triple(v, d[1], d[3]);
    double det = e11 * e22 - e12 * e21;
    double scale = std::max(std::abs(e11 * e22), std::abs(e12 * e21));
    if (scale <= 0.0 || std::abs(det) <= tol.rel * scale)
        throw Error(ErrorCode::NonTransverse, "transversality determinant too close to zero");
    return kEpsilonCalibration * (det > 0 ? 1 : -1);
}

std::optional<AlternatingRooting> alternating_rooting(const Quadrisecant& q, const PLKnot& k) {
    if (!is_alternating(q)) return std::nullopt;
    int a = q.order_on_line[1], b = q.order_on_line[2];
    // Alternation forces the two middle points to be cyclically adjacent
    // along the knot; root so the arc rooted[3] -> rooted[0] is the middle arc.
    int tail, head;
    if ((a + 1) % 4 == b) {
        tail = a;
        head = b;
    } else if ((b + 1) % 4 == a) {
        tail = b;
        head = a;
    } else {
        throw Error(ErrorCode::DegenerateConfiguration,
                    "alternating quadrisecant with non-adjacent middle pair");
    }
    AlternatingRooting r;
    r.rooted = {head, (head + 1) % 4, (head + 2) % 4, tail};
    r.arc_begin = q.params[tail];
    r.arc_end = q.params[head];
    (void)k;
    return r;
}

int rooted_sign(const Quadrisecant& q, const AlternatingRooting& r, const geom::Tolerance& tol) {
    std::array<Vec3, 4> x, d;
    for (int i = 0; i < 4; ++i) {
        x[i] = q.points[r.rooted[i]];
        d[i] = q.tangents[r.rooted[i]];
    }
    return sign_epsilon(x, d, tol);
}

int middle_extremal_count(const AlternatingRooting& r, const knotmodel::HullExtremalSet& hull,
                          const PLKnot& k) {
    double e = k.edge_count();
    double span = std::fmod(r.arc_end - r.arc_begin + e, e);
    auto inside = [&](double t) {
        double off = std::fmod(t - r.arc_begin + e, e);
        return off > 0.0 && off < span;
    };
    int count = 0;
    for (const auto& comp : hull.components) {
        int in = 0;
        for (int v : comp.vertex_ids) in += inside(v) ? 1 : 0;
        if (in == static_cast<int>(comp.vertex_ids.size()))
            ++count;
        else if (in != 0)
            throw Error(ErrorCode::GenericityFailure,
                        "extremal component straddles a quadrisecant point");
    }
    return count;
}

}  // namespace qsec::quad
