// Second Conway coefficient of a polygonal knot from its quadrisecants:
// the long-knot signed count, the closed-knot weighted alternating count,
// crossing-change surgery, and the geometric bound checks.
#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "qsec/knot.hpp"
#include "qsec/quadrisecant.hpp"

namespace qsec::invariant {

struct EvalOptions {
    std::uint64_t seed = 1;      // root seed for perturbation retries
    double perturb_rel = 1e-6;   // vertex displacement per retry, relative to the diagonal
    double tolerance_rel = 1e-9; // geometric tolerance, relative to the diagonal
    int max_attempts = 16;       // retries after the untouched first try
    int threads = 1;
};

// One quadrisecant's contribution to a long-knot evaluation.
struct CountedLine {
    quad::Quadrisecant q;
    int sign = 0;
};

struct LongEvaluation {
    int value = 0;
    std::vector<CountedLine> counted;    // the order-type-(3 1 4 2) lines
    std::size_t total_quadrisecants = 0;
    int attempts_used = 0;               // perturbation rounds consumed (0 = pristine input)
};

// Signed count of quadrisecants in the counting order type over a long
// (open) knot. Perturbs deterministically and retries on genericity
// failures; the reported value is for the successful geometry.
LongEvaluation nu2_long(const knotmodel::PLKnot& k, const EvalOptions& opt = {});

// One alternating quadrisecant's contribution to a closed-knot evaluation.
struct AlternatingLine {
    quad::Quadrisecant q;
    int sign = 0;
    int middle_extremals = 0;
};

struct ClosedEvaluation {
    int value = 0;
    long long raw_sum = 0;   // sum of middle_extremals * sign
    int extremal_count = 0;  // hull-boundary component count, the divisor
    std::vector<AlternatingLine> alternating;
    std::size_t total_quadrisecants = 0;
    int attempts_used = 0;
};

// Closed-knot evaluation: raw_sum over alternating quadrisecants divided by
// the hull-extremal component count. Throws NonIntegralSum if the division
// is not exact (never rounds). Hull and quadrisecants are computed on the
// same (possibly perturbed) geometry so the two structures stay consistent.
ClosedEvaluation c2_closed(const knotmodel::PLKnot& k, const EvalOptions& opt = {});

// Topology dispatch: nu2_long for open knots, c2_closed for closed ones.
int nu2(const knotmodel::PLKnot& k, const EvalOptions& opt = {});

struct BoundCheck {
    bool holds = false;
    long long bound = 0;   // the theorem's right-hand side
    long long needed = 0;  // the left-hand side derived from c2
};

// |c2| / 2 <= C(edges, 4), reported exactly (needed = |c2|, bound = 2*C(e,4)).
BoundCheck check_stick_bound(int edge_count, int c2);

// |c2| <= (2 * degree)^4 for knots sampled from degree-n polynomial curves.
BoundCheck check_polynomial_bound(int degree, int c2);

// Replaces the under strand of one diagram crossing by a detour lifted past
// the over strand, swapping the crossing. The rest of the knot is untouched.
// Throws GenericityFailure if the detour collides with the knot.
knotmodel::PLKnot swap_crossing(const knotmodel::PLKnot& k, const knotmodel::Crossing& c,
                                const Vec3& direction);

// Oriented smoothing of one crossing of a closed knot: the two-component
// link obtained by reconnecting the strands without crossing. Components
// inherit the knot's orientation. Throws GenericityFailure if the smoothing
// connectors collide with the knot.
knotmodel::PLLink oriented_resolution(const knotmodel::PLKnot& k, const knotmodel::Crossing& c);

// Ball around a crossing containing everything its strand surgery can touch.
struct CrossingBall {
    Vec3 center;
    double radius = 0.0;
};

CrossingBall crossing_ball(const knotmodel::PLKnot& k, const knotmodel::Crossing& c,
                           const Vec3& direction);

// Certifies that no single straight line can meet all three balls, by a
// conservative triangle-inequality bound. False means "could not certify".
bool no_common_transversal(const CrossingBall& a, const CrossingBall& b, const CrossingBall& c);

// Difference identity at one crossing: evaluates the invariant on both
// crossing versions and the linking number of the oriented resolution.
struct DerivativeCheck {
    int plus_value = 0;   // invariant of the version with the positive crossing
    int minus_value = 0;
    int resolution_linking = 0;
};

DerivativeCheck crossing_change_derivative(const knotmodel::PLKnot& k,
                                           const knotmodel::Crossing& c, const Vec3& direction,
                                           const EvalOptions& opt = {});

// Alternating sum of the invariant over all 8 resolutions of three crossing
// changes (degree-two finite-type identity; must vanish when no line meets
// all three surgery balls).
long long type_two_alternating_sum(const knotmodel::PLKnot& k,
                                   const std::array<knotmodel::Crossing, 3>& picks,
                                   const Vec3& direction, const EvalOptions& opt = {});

}  // namespace qsec::invariant
