// Quadrisecant enumeration: order types along the line, transversality signs,
// alternation/rooting, and determinism of the threaded search.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <algorithm>
#include <cmath>
#include <set>
#include <vector>

#include "doctest.h"
#include "qsec/quadrisecant.hpp"
#include "qsec/rng.hpp"

using namespace qsec;
using knotmodel::PLKnot;
using knotmodel::Topology;
using quad::Quadrisecant;

namespace {

// Four "rung" edges crossing the z-axis at chosen heights, joined by
// connector edges that stay clear of the axis. Each rung runs from
// (-1, a, h-s) to (1, -a, h+s), so its midpoint (0,0,h) sits exactly on the
// z-axis: the axis is a quadrisecant by construction, hitting rung i (knot
// edge 2i) at (0,0,h[i]). The offsets avoid arithmetic progressions (no
// three endpoint vertices collinear) and the slopes keep every rung
// direction triple linearly independent.
PLKnot ladder_knot(const std::array<double, 4>& h) {
    const std::array<double, 4> a = {0.3, -0.41, 0.77, -0.12};
    const std::array<double, 4> s = {0.017, -0.029, 0.041, -0.053};
    PLKnot k;
    k.topology = Topology::closed;
    for (int i = 0; i < 4; ++i) {
        k.vertices.push_back({-1.0, a[i], h[i] - s[i]});
        k.vertices.push_back({1.0, -a[i], h[i] + s[i]});
    }
    return k;
}

PLKnot cube_cycle() {
    PLKnot k;
    k.topology = Topology::closed;
    k.vertices = {{0, 0, 0}, {1, 0, 0}, {1, 1, 0}, {0, 1, 0},
                  {0, 1, 1}, {1, 1, 1}, {1, 0, 1}, {0, 0, 1}};
    return k;
}

int rank_position(const std::array<int, 4>& order, int knot_index) {
    for (int r = 0; r < 4; ++r)
        if (order[r] == knot_index) return r;
    return -1;
}

bool same_quadrisecant(const Quadrisecant& a, const Quadrisecant& b) {
    if (a.edges != b.edges || a.order_on_line != b.order_on_line) return false;
    for (int i = 0; i < 4; ++i) {
        if (a.params[i] != b.params[i]) return false;
        if (a.points[i].x != b.points[i].x || a.points[i].y != b.points[i].y ||
            a.points[i].z != b.points[i].z)
            return false;
    }
    return a.line.base.x == b.line.base.x && a.line.dir.x == b.line.dir.x &&
           a.line.dir.y == b.line.dir.y && a.line.dir.z == b.line.dir.z;
}

Vec3 random_unit(Rng& rng) {
    while (true) {
        Vec3 v{rng.symmetric(), rng.symmetric(), rng.symmetric()};
        double n = norm(v);
        if (n > 0.2 && n <= 1.0) return v * (1.0 / n);
    }
}

}  // namespace

TEST_CASE("enumeration finds a constructed quadrisecant with the counted order type") {
    // Heights chosen so ranks along +z visit the rungs as 3rd, 1st, 4th, 2nd
    // in knot order.
    PLKnot k = ladder_knot({2.0, 4.0, 1.0, 3.0});
    geom::Tolerance tol = knotmodel::knot_tolerance(k);
    auto qs = quad::enumerate_quadrisecants(k, tol);
    REQUIRE(!qs.empty());

    const Quadrisecant* axis = nullptr;
    for (const auto& q : qs)
        if (q.edges == std::array<int, 4>{0, 2, 4, 6}) axis = &q;
    REQUIRE(axis != nullptr);

    const std::array<double, 4> h = {2.0, 4.0, 1.0, 3.0};
    for (int i = 0; i < 4; ++i) {
        CHECK(dist(axis->points[i], Vec3{0.0, 0.0, h[i]}) < 1e-9);
        CHECK(axis->params[i] == doctest::Approx(2 * i + 0.5).epsilon(1e-9));
    }
    // Oriented so the second knot point (z=4) follows the first (z=2).
    CHECK(axis->line.dir.z > 0.99);
    CHECK(axis->order_on_line == std::array<int, 4>{2, 0, 3, 1});
    CHECK(quad::is_counted_class(*axis));
    CHECK(quad::is_alternating(*axis));

    // Sign by hand: v = (0,0,2); the 2x2 determinant works out to -0.0867.
    CHECK(quad::sign_epsilon(axis->points, axis->tangents, tol) == -1);
    CHECK(quad::rooted_sign(*axis, *quad::alternating_rooting(*axis, k), tol) == -1);

    // The two middle points along the line (z=2 and z=3) are knot hits 0 and
    // 3, adjacent as 3 -> 0; the middle arc runs from edge 6 forward to edge 0.
    auto rooting = quad::alternating_rooting(*axis, k);
    REQUIRE(rooting.has_value());
    CHECK(rooting->rooted == std::array<int, 4>{0, 1, 2, 3});
    CHECK(rooting->arc_begin == doctest::Approx(6.5).epsilon(1e-9));
    CHECK(rooting->arc_end == doctest::Approx(0.5).epsilon(1e-9));
}

TEST_CASE("mirror images keep the transversality sign") {
    PLKnot k = ladder_knot({2.0, 4.0, 1.0, 3.0});
    PLKnot m = k;
    for (auto& v : m.vertices) v.x = -v.x;
    geom::Tolerance tol = knotmodel::knot_tolerance(k);
    auto qk = quad::enumerate_quadrisecants(k, tol);
    auto qm = quad::enumerate_quadrisecants(m, tol);
    auto sign_of_axis = [&](const std::vector<Quadrisecant>& qs) {
        for (const auto& q : qs)
            if (q.edges == std::array<int, 4>{0, 2, 4, 6})
                return quad::sign_epsilon(q.points, q.tangents, tol);
        return 0;
    };
    CHECK(sign_of_axis(qk) == -1);
    CHECK(sign_of_axis(qm) == -1);
}

TEST_CASE("closed quadrilaterals have no quadrisecants") {
    PLKnot k;
    k.topology = Topology::closed;
    k.vertices = {{0, 0, 0}, {1, 0, 0.1}, {1, 1, 0}, {0, 1, 0.1}};
    geom::Tolerance tol = knotmodel::knot_tolerance(k);
    CHECK(quad::enumerate_quadrisecants(k, tol).empty());
}

TEST_CASE("enumeration is reproducible and independent of the thread split") {
    PLKnot base = cube_cycle();
    PLKnot k;
    std::vector<Quadrisecant> qs;
    bool found = false;
    for (std::uint64_t seed = 1; seed <= 10 && !found; ++seed) {
        k = knotmodel::perturb(base, seed, 5e-4);
        try {
            qs = quad::enumerate_quadrisecants(k, knotmodel::knot_tolerance(k));
            found = true;
        } catch (const Error& e) {
            CHECK(e.code() == ErrorCode::GenericityFailure);
        }
    }
    REQUIRE(found);

    geom::Tolerance tol = knotmodel::knot_tolerance(k);
    for (const auto& q : qs) {
        CHECK(q.edges[0] < q.edges[1]);
        CHECK(q.edges[1] < q.edges[2]);
        CHECK(q.edges[2] < q.edges[3]);
        for (int i = 0; i < 4; ++i) {
            // Hits lie on the knot and on the line.
            CHECK(dist(k.at(q.params[i]), q.points[i]) < 1e-7 * tol.length_scale);
            Vec3 rel = q.points[i] - q.line.base;
            Vec3 off = rel - q.line.dir * dot(rel, q.line.dir);
            CHECK(norm(off) < 1e-7 * tol.length_scale);
        }
        CHECK(rank_position(q.order_on_line, 1) > rank_position(q.order_on_line, 0));
    }

    auto again = quad::enumerate_quadrisecants(k, tol);
    auto split = quad::enumerate_quadrisecants(k, tol, 3);
    REQUIRE(again.size() == qs.size());
    REQUIRE(split.size() == qs.size());
    for (std::size_t i = 0; i < qs.size(); ++i) {
        CHECK(same_quadrisecant(qs[i], again[i]));
        CHECK(same_quadrisecant(qs[i], split[i]));
    }
}

TEST_CASE("degenerate inputs fail identically under any thread split") {
    // The raw cube cycle has exactly parallel edge pairs; some quadruple is
    // degenerate. Whichever split runs, the first failure in quadruple order
    // must be reported.
    PLKnot k = cube_cycle();
    geom::Tolerance tol = knotmodel::knot_tolerance(k);
    std::string serial_msg, split_msg;
    try {
        quad::enumerate_quadrisecants(k, tol);
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::GenericityFailure);
        serial_msg = e.what();
    }
    try {
        quad::enumerate_quadrisecants(k, tol, 4);
    } catch (const Error& e) {
        split_msg = e.what();
    }
    REQUIRE(!serial_msg.empty());
    CHECK(serial_msg == split_msg);
}

TEST_CASE("order types along a transversal realize exactly the twelve oriented classes") {
    // Build the expected set: permutations where the second knot point
    // follows the first along the oriented line.
    std::set<std::array<int, 4>> expected;
    std::array<int, 4> perm = {0, 1, 2, 3};
    do {
        if (rank_position(perm, 1) > rank_position(perm, 0)) expected.insert(perm);
    } while (std::next_permutation(perm.begin(), perm.end()));
    REQUIRE(expected.size() == 12);

    Rng rng(20250818);
    geom::Tolerance tol{1e-9, 1.0};
    std::set<std::array<int, 4>> observed;
    int skipped = 0, samples = 2500;
    for (int rep = 0; rep < samples; ++rep) {
        Vec3 base{rng.symmetric(), rng.symmetric(), rng.symmetric()};
        Vec3 dir = random_unit(rng);
        geom::Line axis{base, dir};

        // Four segments crossing the axis at shuffled stations.
        std::array<double, 4> station = {-1.5, -0.5, 0.5, 1.5};
        for (int i = 3; i > 0; --i)
            std::swap(station[i], station[rng.below(static_cast<std::uint64_t>(i + 1))]);
        std::array<geom::Segment, 4> segs;
        for (int i = 0; i < 4; ++i) {
            Vec3 p = axis.at(station[i] + 0.2 * rng.symmetric());
            Vec3 u = random_unit(rng);
            while (norm(cross(u, dir)) < 0.2) u = random_unit(rng);
            segs[i] = geom::Segment{p - u * rng.uniform(0.3, 1.0), p + u * rng.uniform(0.3, 1.0)};
        }

        std::vector<geom::SegmentTransversal> hits;
        try {
            hits = geom::transversals_of_four_segments(segs[0], segs[1], segs[2], segs[3], tol);
        } catch (const Error&) {
            ++skipped;
            continue;
        }
        for (const auto& t : hits) {
            std::array<double, 4> along;
            for (int i = 0; i < 4; ++i) along[i] = dot(t.line.dir, t.point[i] - t.line.base);
            double flip = along[1] > along[0] ? 1.0 : -1.0;
            std::array<int, 4> order = {0, 1, 2, 3};
            std::sort(order.begin(), order.end(),
                      [&](int i, int j) { return flip * along[i] < flip * along[j]; });
            CHECK(expected.count(order) == 1);
            observed.insert(order);
        }
    }
    CHECK(observed == expected);
    CHECK(observed.count({2, 0, 3, 1}) == 1);
    CHECK(skipped < samples / 4);
}

TEST_CASE("transversality sign is an affine invariant of the hit data") {
    Rng rng(77001);
    geom::Tolerance tol{1e-9, 1.0};
    int compared = 0;
    for (int rep = 0; rep < 600; ++rep) {
        // Collinear hit points with distinct stations, generic tangents.
        Vec3 b{rng.symmetric(), rng.symmetric(), rng.symmetric()};
        Vec3 w = random_unit(rng);
        std::array<double, 4> t;
        for (auto& v : t) v = rng.uniform(-2.0, 2.0);
        std::sort(t.begin(), t.end());
        if (t[1] - t[0] < 0.1 || t[2] - t[1] < 0.1 || t[3] - t[2] < 0.1) continue;
        std::array<Vec3, 4> x, d;
        for (int i = 0; i < 4; ++i) {
            x[i] = b + w * t[i];
            d[i] = random_unit(rng);
            while (norm(cross(d[i], w)) < 0.1) d[i] = random_unit(rng);
        }
        int eps;
        try {
            eps = quad::sign_epsilon(x, d, tol);
        } catch (const Error&) {
            continue;  // near-singular draw
        }

        // Random invertible affine map; half the time a reflection.
        Vec3 c0 = random_unit(rng), c1 = random_unit(rng), c2 = random_unit(rng);
        double det = dot(c0, cross(c1, c2));
        if (std::abs(det) < 0.2) continue;
        Vec3 shift{rng.symmetric(), rng.symmetric(), rng.symmetric()};
        auto lin = [&](const Vec3& v) { return c0 * v.x + c1 * v.y + c2 * v.z; };
        std::array<Vec3, 4> xm, dm, ds;
        for (int i = 0; i < 4; ++i) {
            xm[i] = lin(x[i]) + shift;
            dm[i] = lin(d[i]);
            ds[i] = d[i] * rng.uniform(0.1, 5.0);  // positive tangent rescale
        }
        CHECK(quad::sign_epsilon(xm, dm, tol) == eps);
        CHECK(quad::sign_epsilon(x, ds, tol) == eps);
        ++compared;
    }
    CHECK(compared > 200);
}

TEST_CASE("sign refuses a tangent parallel to the secant line") {
    std::array<Vec3, 4> x = {Vec3{0, 0, 0}, Vec3{0, 0, 1}, Vec3{0, 0, 2}, Vec3{0, 0, 3}};
    std::array<Vec3, 4> d = {Vec3{1, 0.2, 0}, Vec3{0, 0, 1}, Vec3{0, 1, 0.3}, Vec3{1, -1, 0}};
    geom::Tolerance tol{1e-9, 1.0};
    CHECK_THROWS_AS((void)quad::sign_epsilon(x, d, tol), Error);
}

TEST_CASE("alternation and rooting read the line geometry") {
    PLKnot k = ladder_knot({2.0, 4.0, 1.0, 3.0});  // only supplies the edge count

    auto make = [](const std::array<double, 4>& z, const std::array<int, 4>& order) {
        Quadrisecant q;
        q.line = geom::Line{{0, 0, 0}, {0, 0, 1}};
        q.edges = {0, 2, 4, 6};
        q.params = {0.5, 1.5, 2.5, 3.5};
        for (int i = 0; i < 4; ++i) {
            q.points[i] = Vec3{0, 0, z[i]};
            q.tangents[i] = Vec3{1, 0, 0};
        }
        q.order_on_line = order;
        return q;
    };

    // Knot order = height order: sides along the line read -,-,+,+.
    Quadrisecant staircase = make({1, 2, 3, 4}, {0, 1, 2, 3});
    CHECK(!quad::is_alternating(staircase));
    CHECK(!quad::is_counted_class(staircase));
    CHECK(!quad::alternating_rooting(staircase, k).has_value());

    // Order 0,2,1,3 along the line: alternating but not the counted class.
    Quadrisecant weave = make({1, 3, 2, 4}, {0, 2, 1, 3});
    CHECK(quad::is_alternating(weave));
    CHECK(!quad::is_counted_class(weave));
    auto rooting = quad::alternating_rooting(weave, k);
    REQUIRE(rooting.has_value());
    // Middle points along the line are knot hits 2 and 1, adjacent as 1 -> 2.
    CHECK(rooting->rooted == std::array<int, 4>{2, 3, 0, 1});
    CHECK(rooting->arc_begin == doctest::Approx(1.5));
    CHECK(rooting->arc_end == doctest::Approx(2.5));

    knotmodel::HullExtremalSet hull;
    hull.components.push_back({{2}, 2, Vec3{0, 0, 1}});        // inside the arc
    hull.components.push_back({{4, 5}, 4, Vec3{0, 0, 1}});     // outside
    CHECK(quad::middle_extremal_count(*rooting, hull, k) == 1);

    hull.components.push_back({{2, 3}, 2, Vec3{0, 0, 1}});     // straddles
    CHECK_THROWS_AS((void)quad::middle_extremal_count(*rooting, hull, k), Error);
}
