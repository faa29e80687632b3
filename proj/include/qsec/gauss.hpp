// Second knot coefficient and linking number computed from crossing data of a
// projection diagram: an independent cross-check for the geometric counts.
#pragma once

#include "qsec/knot.hpp"

namespace qsec::gauss {

// Sums of sign(p)*sign(q) over interleaved crossing pairs (p before q along
// the strand from the basepoint), split by whether each crossing's first
// passage runs over or under. Building block for the degree-two count;
// exposed so tests and the calibration tool can inspect every bin.
struct PatternSums {
    long long uu = 0;  // p first under, q first under
    long long uo = 0;  // p first under, q first over
    long long ou = 0;  // p first over,  q first under
    long long oo = 0;  // p first over,  q first over
};

// Pattern sums of a knot diagram read from `basepoint` (a knot parameter;
// `period` is the parameter length of the full loop, i.e. the edge count).
// Both are ignored for open knots, which always read from the first vertex.
PatternSums degree2_sums(const knotmodel::KnotDiagram& d, double period, double basepoint = 0.0);

// The second coefficient of the knot's Conway polynomial, counted from the
// diagram: the interleaved-pair sum with p's first passage under and q's
// first passage over. Independent of basepoint, projection direction, and
// mirror image; 1 on trefoils, -1 on the figure eight, 0 on unknots.
int second_coefficient(const knotmodel::KnotDiagram& d, double period, double basepoint = 0.0);

// Second coefficient of a polygonal knot: projects along a deterministic
// spread of directions and requires every reading to agree (Disagreement
// otherwise). Open knots are first closed by an explicit return loop routed
// outside the bounding box, so the value is the invariant of the closure.
int second_coefficient_of_knot(const knotmodel::PLKnot& k);

// Closes an open knot with a polygonal return path: straight exit rays from
// both endpoints past the bounding box, joined well outside it. The rays
// realize the canonical straight-line closure of the open curve, so they are
// never rerouted; if one touches the knot body the input itself is
// non-generic and GenericityFailure is thrown. Closed input is returned
// unchanged.
knotmodel::PLKnot close_with_return(const knotmodel::PLKnot& k);

// Linking number of a link diagram: half the signed count of crossings
// between distinct components. Throws InvalidKnot if that count is odd
// (a closed two-component diagram always has an even one).
int linking_number(const knotmodel::KnotDiagram& d);

}  // namespace qsec::gauss
