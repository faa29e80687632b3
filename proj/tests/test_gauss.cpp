// Degree-two crossing-pattern invariant: golden values, basepoint and
// projection independence, closures of open knots, and linking numbers.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>

#include "doctest.h"
#include "qsec/error.hpp"
#include "qsec/gauss.hpp"
#include "qsec/knot.hpp"
#include "support.hpp"

using namespace qsec;
using knotmodel::KnotDiagram;
using knotmodel::PLKnot;
using knotmodel::Topology;
namespace ts = testsupport;

TEST_CASE("golden knots have their known second coefficients") {
    CHECK(gauss::second_coefficient_of_knot(ts::trefoil_knot()) == 1);
    CHECK(gauss::second_coefficient_of_knot(ts::figure_eight_knot()) == -1);
    CHECK(gauss::second_coefficient_of_knot(ts::torus_knot_2_5()) == 3);
    CHECK(gauss::second_coefficient_of_knot(ts::torus_knot_2_7()) == 6);
    CHECK(gauss::second_coefficient_of_knot(ts::hexagonal_trefoil()) == 1);
    CHECK(gauss::second_coefficient_of_knot(ts::round_unknot()) == 0);
    CHECK(gauss::second_coefficient_of_knot(ts::wobbly_unknot()) == 0);
}

TEST_CASE("mirror image preserves the second coefficient") {
    CHECK(gauss::second_coefficient_of_knot(ts::mirror_x(ts::trefoil_knot())) == 1);
    CHECK(gauss::second_coefficient_of_knot(ts::mirror_x(ts::figure_eight_knot())) == -1);
    CHECK(gauss::second_coefficient_of_knot(ts::mirror_x(ts::hexagonal_trefoil())) == 1);
}

TEST_CASE("pattern count ignores the basepoint") {
    for (const PLKnot& k : {ts::trefoil_knot(), ts::figure_eight_knot(), ts::torus_knot_2_5()}) {
        double period = k.edge_count();
        KnotDiagram d = knotmodel::project_to_diagram(k, {0.23, -0.51, 0.83});
        int reference = gauss::second_coefficient(d, period);
        for (double base : {0.2, period / 3.0, 0.77 * period, period - 0.01, 1.6 * period})
            CHECK(gauss::second_coefficient(d, period, base) == reference);
    }
}

TEST_CASE("pattern count ignores the projection direction") {
    const PLKnot k = ts::figure_eight_knot();
    double period = k.edge_count();
    for (Vec3 dir : {Vec3{0, 0, 1}, Vec3{0.9, 0.1, 0.42}, Vec3{-0.2, 0.75, -0.63}}) {
        KnotDiagram d = knotmodel::project_to_diagram(k, dir);
        CHECK(gauss::second_coefficient(d, period) == -1);
    }
}

TEST_CASE("closing an open arc recovers the closed knot's invariant") {
    PLKnot arc = ts::sample_open([](double t) { return ts::torus_curve(t, 3); }, 60);
    PLKnot closed = gauss::close_with_return(arc);
    CHECK(closed.topology == Topology::closed);
    CHECK(closed.vertex_count() == arc.vertex_count() + 4);
    CHECK_NOTHROW(knotmodel::validate(closed));
    CHECK(gauss::second_coefficient_of_knot(arc) == 1);

    PLKnot arc8 = ts::sample_open(ts::figure_eight_curve, 80);
    CHECK(gauss::second_coefficient_of_knot(arc8) == -1);

    // Closed input passes through untouched.
    PLKnot already = ts::trefoil_knot();
    PLKnot same = gauss::close_with_return(already);
    CHECK(same.vertex_count() == already.vertex_count());
}

namespace {

// Concatenates two open arcs. Both arcs start and end at their easternmost
// point, so the second is rotated half a turn about z to face the first:
// the splice edge and the closure then live in the empty corridor between
// the two bounding boxes and cannot thread either tangle.
PLKnot connect_sum(const PLKnot& a, const PLKnot& b, double gap) {
    PLKnot faced = b;
    for (auto& v : faced.vertices) {
        v.x = -v.x;
        v.y = -v.y;
    }
    knotmodel::Box box_a = knotmodel::bounding_box(a);
    knotmodel::Box box_b = knotmodel::bounding_box(faced);
    double shift = box_a.hi.x - box_b.lo.x + gap;
    PLKnot joined;
    joined.topology = Topology::open;
    joined.vertices = a.vertices;
    for (const Vec3& v : faced.vertices) joined.vertices.push_back({v.x + shift, v.y, v.z});
    return joined;
}

}  // namespace

TEST_CASE("the invariant adds over connected sums") {
    PLKnot tre = ts::sample_open([](double t) { return ts::torus_curve(t, 3); }, 60);
    PLKnot fig = ts::sample_open(ts::figure_eight_curve, 80);

    CHECK(gauss::second_coefficient_of_knot(connect_sum(tre, tre, 4.0)) == 2);
    CHECK(gauss::second_coefficient_of_knot(connect_sum(tre, fig, 4.0)) == 0);
    CHECK(gauss::second_coefficient_of_knot(connect_sum(fig, fig, 4.0)) == -2);
}

TEST_CASE("linking numbers of two-component diagrams") {
    auto square = [](Vec3 c, Vec3 u, Vec3 w) {
        PLKnot k;
        k.topology = Topology::closed;
        k.vertices = {c + u + w, c - u + w, c - u - w, c + u - w};
        return k;
    };
    // One edge of the vertical square threads the horizontal one.
    PLKnot flat = square({0, 0, 0}, {1, 0, 0}, {0, 1, 0});
    PLKnot thread = square({1, 0, 0}, {1, 0, 0}, {0, 0, 1});
    knotmodel::PLLink hopf{{flat, thread}};
    KnotDiagram d = knotmodel::project_link_to_diagram(hopf, {0.31, 0.12, 0.94});
    int lk = gauss::linking_number(d);
    CHECK(std::abs(lk) == 1);

    // Reversing one component negates the linking number.
    PLKnot reversed = thread;
    std::reverse(reversed.vertices.begin(), reversed.vertices.end());
    knotmodel::PLLink flipped{{flat, reversed}};
    CHECK(gauss::linking_number(knotmodel::project_link_to_diagram(flipped, {0.31, 0.12, 0.94})) ==
          -lk);

    // Far-apart components are unlinked.
    PLKnot far_square = square({9, 9, 9}, {1, 0, 0}, {0, 0, 1});
    knotmodel::PLLink split{{flat, far_square}};
    CHECK(gauss::linking_number(knotmodel::project_link_to_diagram(split, {0.31, 0.12, 0.94})) == 0);

    // Self-crossings of a single component do not count.
    knotmodel::PLLink knotted{{ts::trefoil_knot(), far_square}};
    CHECK(gauss::linking_number(knotmodel::project_link_to_diagram(knotted, {0.31, 0.12, 0.94})) ==
          0);
}

TEST_CASE("an odd inter-component crossing count is rejected") {
    KnotDiagram d;
    d.topology = Topology::closed;
    knotmodel::Crossing c;
    c.over_param = 0.5;
    c.under_param = 1.5;
    c.sign = 1;
    c.over_component = 0;
    c.under_component = 1;
    d.crossings.push_back(c);
    CHECK_THROWS_AS(gauss::linking_number(d), Error);
}

TEST_CASE("closure rays that pierce the body are refused") {
    // An arc with a strand crossing directly above its end vertex: the edge
    // from (-1,0,2) to (1,0,2) passes through (0,0,2), on the upward exit ray
    // of the end vertex (0,0,1). close_with_return must refuse, not reroute.
    PLKnot k;
    k.topology = Topology::open;
    k.vertices = {{3.0, 2.0, 0.0}, {-1.0, 0.0, 2.0}, {1.0, 0.0, 2.0},
                  {2.0, -2.0, 3.0}, {0.0, 0.0, 1.0}};
    CHECK_NOTHROW(knotmodel::validate(k));
    bool threw = false;
    try {
        gauss::close_with_return(k);
    } catch (const Error& e) {
        threw = e.code() == ErrorCode::GenericityFailure;
    }
    CHECK(threw);
}
