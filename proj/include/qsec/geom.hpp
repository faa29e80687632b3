// Line geometry: orientation predicates, three-line normal forms, and common
// transversals of four lines or segments.
//
// The transversal machinery rests on a classical fact: the lines meeting all
// of three pairwise non-parallel lines sweep a degree-2 surface. After an
// affine change of coordinates moving the triple onto a fixed canonical
// triple, that surface has a closed-form equation, so the transversals of a
// fourth line are found by intersecting it with the surface (a quadratic in
// the line parameter: never more than two solutions) and reconstructing the
// witness line through each intersection point.
#pragma once

#include <array>
#include <vector>

#include "qsec/error.hpp"
#include "qsec/vec3.hpp"

namespace qsec::geom {

// Relative tolerance policy: a single dimensionless knob `rel`, scaled by the
// length scale of the data (bounding-box diagonal) where a length is compared.
struct Tolerance {
    double rel = 1e-9;
    double length_scale = 1.0;

    double length() const { return rel * length_scale; }
};

struct Line {
    Vec3 base;
    Vec3 dir;  // unit length by convention; constructors normalize

    static Line through(const Vec3& a, const Vec3& b) { return Line{a, normalized(b - a)}; }
    Vec3 at(double t) const { return base + dir * t; }
};

struct Segment {
    Vec3 a;
    Vec3 b;

    Vec3 at(double u) const { return a + (b - a) * u; }
    Vec3 delta() const { return b - a; }
    double length() const { return dist(a, b); }
    Line line() const { return Line::through(a, b); }
};

// Sign of det[b-a, c-a, d-a]: +1 / -1 for the two orientations of a
// tetrahedron, 0 when the four points are coplanar within eps (an absolute
// threshold on the determinant, i.e. a volume).
int orient3(const Vec3& a, const Vec3& b, const Vec3& c, const Vec3& d, double eps = 0.0);

enum class TripleCase {
    disjoint,          // three pairwise skew lines
    one_intersection,  // exactly one pair meets
    chain,             // the middle line meets both others; the outer pair is skew
};

struct TripleClassification {
    TripleCase kind = TripleCase::disjoint;
    // slot[k] = index (0..2) of the input line occupying canonical position k.
    // one_intersection: slots 0,1 intersect. chain: slot 1 is the middle line.
    std::array<int, 3> slot = {0, 1, 2};
    Vec3 meet01;  // intersection of slot-0/slot-1 lines (one_intersection, chain)
    Vec3 meet12;  // intersection of slot-1/slot-2 lines (chain)
};

// Classifies by which pairs of supporting lines intersect. Errors:
// DegenerateConfiguration for parallel pairs, linearly dependent direction
// triples, or three concurrent/coplanar lines.
TripleClassification classify_three_lines(const Line& l1, const Line& l2, const Line& l3,
                                          const Tolerance& tol);

// Affine map carrying the (re-slotted) triple onto its canonical model:
//   disjoint:         (t,0,0), (0,t,1), (1,1,t)
//   one_intersection: (t,0,0), (0,t,0), (1,1,t)
//   chain:            (t,0,0), (0,t,0), (0,1,t)
// Mapping lines onto lines leaves per-line scale freedoms; they are fixed
// deterministically (see .cpp) so equal inputs give equal maps.
AffineMap normalize_three_lines(const Line& l1, const Line& l2, const Line& l3,
                                const TripleClassification& cls, const Tolerance& tol);

// Transversal surfaces in canonical coordinates:
//   disjoint:          (x+z-1)·y = x·z        (doubly ruled quadric)
//   one_intersection:  z·(x-y) = 0            (plane pair)
//   chain:             z·x = 0                (plane pair)
struct CanonicalVariety {
    TripleCase kind;
    double eval(const Vec3& p) const;
};

struct Transversal {
    Line line;                    // world coordinates
    std::array<double, 4> t;      // hit parameter along each input line's direction
    std::array<Vec3, 4> point;    // hit point on each input line
};

// All common transversals of four lines (at most two for generic input).
// Each returned line is certified to pass within tolerance of all four
// inputs (perpendicular residual); hit parameters far from the witness
// anchors carry proportionally coarser absolute error, which only ever
// meets range checks on the same distance scale. Errors: InfiniteFamily
// when l4 lies inside the transversal surface of the first three;
// TangencyAmbiguity when l4 is tangent to the quadric within tolerance;
// DegenerateConfiguration propagated from classification or from
// uncertifiable witness reconstruction.
std::vector<Transversal> transversals_of_four_lines(const Line& l1, const Line& l2,
                                                    const Line& l3, const Line& l4,
                                                    const Tolerance& tol);

// Where a candidate hit parameter falls relative to a segment's [0,1] range.
enum class HitZone { interior, near_start, near_end, outside };

struct SegmentTransversal {
    Line line;
    std::array<double, 4> u;      // parameter in the segment's [0,1] scale
    std::array<Vec3, 4> point;
    std::array<HitZone, 4> zone;
};

// Raw candidate transversals of the segments' supporting lines, with each hit
// classified against its segment but nothing filtered or thrown for
// interiority. Used by callers that must make their own policy decisions
// (e.g. the knot enumerator, which silently drops candidates through a vertex
// shared by two of its own segments).
std::vector<SegmentTransversal> transversal_candidates(const Segment& s1, const Segment& s2,
                                                       const Segment& s3, const Segment& s4,
                                                       const Tolerance& tol);

// Transversals hitting all four segments strictly inside their parameter
// ranges. Errors: TangencyAmbiguity when a hit lands within tolerance of a
// segment endpoint; the rest as for transversals_of_four_lines.
std::vector<SegmentTransversal> transversals_of_four_segments(const Segment& s1, const Segment& s2,
                                                              const Segment& s3, const Segment& s4,
                                                              const Tolerance& tol);

// Reusable normalization of a line triple. Enumerating quadruples (a,b,c,d)
// with d in the inner loop classifies/normalizes (a,b,c) once and probes many
// fourth lines against the same canonical frame.
struct TripleFrame {
    TripleClassification cls;
    AffineMap to_canonical;
    AffineMap from_canonical;
};

TripleFrame make_triple_frame(const Line& l1, const Line& l2, const Line& l3,
                              const Tolerance& tol);

// Transversals of (frame's triple, l4); hit slots 0..2 refer to the lines the
// frame was built from, in their original order.
std::vector<Transversal> transversals_with_frame(const TripleFrame& frame,
                                                 const std::array<Line, 4>& lines,
                                                 const Tolerance& tol);

// Candidate variant against four segments; frame must come from the first
// three segments' supporting lines.
std::vector<SegmentTransversal> candidates_with_frame(const TripleFrame& frame,
                                                      const std::array<Segment, 4>& segs,
                                                      const Tolerance& tol);

// Signed distance between skew lines: det[a.dir, b.dir, b.base-a.base] scaled
// by |a.dir × b.dir|. Zero iff coplanar (within numerics); sign distinguishes
// the two sides one line can pass the other on.
double signed_line_distance(const Line& a, const Line& b);

// Closest distance between two segments (deterministic clamped descent).
double segment_distance(const Segment& sa, const Segment& sb);

// Closest-approach parameters (ta, tb) between two lines (undefined for
// parallel lines; returns false then).
bool closest_params(const Line& a, const Line& b, double& ta, double& tb);

}  // namespace qsec::geom
