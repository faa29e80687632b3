// Enumeration of quadrisecant lines of a polygonal knot, their order type
// along the line, and the transversality sign each one carries.
#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <vector>

#include "qsec/geom.hpp"
#include "qsec/knot.hpp"

namespace qsec::quad {

struct Quadrisecant {
    geom::Line line;               // oriented so the second knot point follows the first
    std::array<int, 4> edges;      // ascending edge indices
    std::array<double, 4> params;  // knot parameters (edge + fraction), same order
    std::array<Vec3, 4> points;    // hit points, same order
    std::array<Vec3, 4> tangents;  // unit edge directions at the hits, same order
    // order_on_line[r] = which of the four hits (0..3, knot order) sits at
    // rank r along the oriented line.
    std::array<int, 4> order_on_line;
};

// All lines meeting the knot in exactly four points, each strictly inside an
// edge. Throws GenericityFailure when the knot's quadruples are too close to
// a degenerate configuration (a secant through a vertex, five collinear
// intersections, tangent or infinite transversal families); callers perturb
// and retry. `threads` > 1 splits the outer loop; results and errors are
// independent of the split.
std::vector<Quadrisecant> enumerate_quadrisecants(const knotmodel::PLKnot& k,
                                                  const geom::Tolerance& tol, int threads = 1);

// Order type along the line as a permutation image: sigma[r] = knot rank
// (0..3) of the r-th point along the line. Convenience accessor over
// order_on_line.
std::array<int, 4> line_order_type(const Quadrisecant& q);

// Long-knot counting class: points appear along the line as 3rd, 1st, 4th,
// 2nd in knot order.
bool is_counted_class(const Quadrisecant& q);

// Closed-knot alternation: walking the knot, consecutive hits alternate sides
// of the midpoint of the two middle points along the line.
bool is_alternating(const Quadrisecant& q);

// Transversality sign of a quadrisecant with hits x[0..3] and knot tangents
// d[0..3], both in knot (or rooted) order. Invariant under every invertible
// affine map of space and under positive rescaling of the tangents. Throws
// NonTransverse when the defining determinant is too close to zero to call.
int sign_epsilon(const std::array<Vec3, 4>& x, const std::array<Vec3, 4>& d,
                 const geom::Tolerance& tol);

// Rooting of an alternating quadrisecant on a closed knot: the two middle
// points along the line are knot-adjacent; the arc from `arc_begin` forward
// to `arc_end` (knot parameters) is the middle component, and `rooted[k]` is
// the hit index (knot order) of the k-th rooted point, with rooted[3] ->
// rooted[0] spanning that arc.
struct AlternatingRooting {
    std::array<int, 4> rooted;
    double arc_begin = 0.0;
    double arc_end = 0.0;
};

// nullopt when the quadrisecant is not alternating.
std::optional<AlternatingRooting> alternating_rooting(const Quadrisecant& q,
                                                      const knotmodel::PLKnot& k);

// Signed contribution of one alternating quadrisecant: epsilon in rooted order.
int rooted_sign(const Quadrisecant& q, const AlternatingRooting& r, const geom::Tolerance& tol);

// Number of hull-extremal components lying wholly on the middle component
// arc (extremal components never straddle a quadrisecant hit, because hit
// points are strictly interior to the hull).
int middle_extremal_count(const AlternatingRooting& r, const knotmodel::HullExtremalSet& hull,
                          const knotmodel::PLKnot& k);

}  // namespace qsec::quad
