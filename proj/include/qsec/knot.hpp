// Polygonal knot model: ingestion, validation, seeded perturbation, convex
// hull extremal structure, opening a closed knot at an extremal point,
// polynomial-knot sampling, and projection to a crossing diagram.
#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "qsec/error.hpp"
#include "qsec/geom.hpp"
#include "qsec/vec3.hpp"

namespace qsec::knotmodel {

enum class Topology { closed, open };

struct PLKnot {
    Topology topology = Topology::closed;
    std::vector<Vec3> vertices;

    int vertex_count() const { return static_cast<int>(vertices.size()); }
    int edge_count() const {
        int n = vertex_count();
        return topology == Topology::closed ? n : n - 1;
    }
    geom::Segment edge(int i) const {
        int n = vertex_count();
        return {vertices[i], vertices[(i + 1) % n]};
    }
    // Point at knot parameter p = edge index + fraction, cyclic for closed knots.
    Vec3 at(double p) const;
};

struct Box {
    Vec3 lo, hi;
    double diagonal() const { return dist(lo, hi); }
};

Box bounding_box(const PLKnot& k);

// Tolerance scaled to this knot's bounding box diagonal.
geom::Tolerance knot_tolerance(const PLKnot& k, double rel = 1e-9);

// Structural validation: >= 3 vertices (closed) or >= 2 (open), consecutive
// vertices distinct, and no two non-adjacent edges within tolerance of
// touching. Throws InvalidKnot.
void validate(const PLKnot& k, double rel_tol = 1e-9);

// Parse from JSON ({"topology": "closed"|"long", "vertices": [[x,y,z],...]})
// or CSV (one x,y,z row per vertex; optional header; topology from the
// argument). Open ("long") knots are moved by a similarity taking the
// endpoint chord to (1/2,1/2,0) -> (1/2,1/2,1); this is value-neutral for
// every quantity computed here. Throws ParseError / InvalidKnot.
PLKnot load_knot(const std::string& text, const std::string& format,
                 std::optional<Topology> topology_hint = std::nullopt);

// Deterministic perturbation: every coordinate of every vertex is displaced
// by magnitude * uniform[-1,1], where the offset depends only on (seed,
// vertex index, axis). Retries with derived seeds until cheap genericity
// checks pass (consecutive vertices distinct, no parallel edge pair, still a
// valid embedding); magnitude 0 performs the checks without displacement.
// Throws GenericityFailure when the retry budget is exhausted. The magnitude
// is relative to the bounding-box diagonal and must be < 1e-3.
PLKnot perturb(const PLKnot& k, std::uint64_t seed, double rel_magnitude);

// One connected run of hull-extremal vertices/edges along the knot.
struct ExtremalComponent {
    std::vector<int> vertex_ids;     // consecutive along the knot
    int representative_vertex = -1;  // anchor for opening
    Vec3 outward_normal;             // averaged supporting-plane normal there
};

struct HullExtremalSet {
    std::vector<ExtremalComponent> components;
    std::vector<bool> vertex_on_hull;  // size = vertex count
    std::vector<bool> edge_on_hull;    // size = edge count (closed knots)
    int count() const { return static_cast<int>(components.size()); }
};

// Marks vertices within tolerance of a supporting plane of the hull, edges
// whose endpoints share such a plane, and groups them into knot-order runs.
// A planar knot in convex position is its own hull boundary (one component);
// planar otherwise throws DegenerateHull.
HullExtremalSet convex_hull_extremal(const PLKnot& k, double rel_tol = 1e-9);

// Opens a closed knot at the representative vertex of the chosen extremal
// component: the vertex is replaced by two endpoints pulled slightly apart
// along their adjacent edges (projected into the supporting plane) and pushed
// outward along the supporting-plane normal, so both endpoints sit strictly
// outside the hull. Any line through an endpoint meets the rest of the knot
// on one side only, so no straight line can gain a new interior (mid-chord)
// intersection there.
PLKnot open_at_extremal(const PLKnot& k, const HullExtremalSet& hull, int component_index);

struct PolynomialKnot {
    int degree = 0;
    std::vector<double> x, y, z;  // coefficients, constant term first

    Vec3 eval(double t) const;
    Vec3 eval_d1(double t) const;
    Vec3 eval_d2(double t) const;
};

// Validates that each coordinate polynomial is monic in its own leading
// nonzero coefficient and that the declared degree matches the longest one.
// Throws ParseError.
PolynomialKnot parse_polynomial(const std::string& json_text);

// Window [-T, T] outside which each coordinate is dominated by its leading
// term (|leading| > 10 * |rest|), or the explicit override.
double polynomial_window(const PolynomialKnot& p);

// PL sampling over the window as an open knot, with steps sized so the
// tangent turns by at most 1/samples_per_radian per edge: the curved core is
// sampled densely, the nearly straight tails coarsely, and no two
// consecutive edges are close to collinear. The t = 0 point is always in
// the sample set. Throws InvalidKnot if the sampling self-intersects
// (resolution too coarse).
PLKnot sample_polynomial_knot(const PolynomialKnot& p, double samples_per_radian = 12.0,
                              std::optional<double> window = std::nullopt);

// ---- Projection diagrams ----

struct Crossing {
    double over_param = 0.0;   // knot parameter (edge + fraction) of the over strand
    double under_param = 0.0;
    int sign = 0;              // +1/-1, right-handed convention in the projection plane
    // For links: which component each strand belongs to (0 for plain knots).
    int over_component = 0;
    int under_component = 0;
};

struct KnotDiagram {
    Topology topology = Topology::closed;
    Vec3 direction;  // projection direction actually used (after any retry)
    std::vector<Crossing> crossings;
};

// Projects along `direction` (jittered deterministically on degeneracy: edges
// nearly parallel to the direction, crossings too close to each other or to
// vertices). Throws NonGenericProjection after the retry budget.
KnotDiagram project_to_diagram(const PLKnot& k, const Vec3& direction);

// Two closed curves; used for linking numbers of crossing-change resolutions.
struct PLLink {
    std::vector<PLKnot> components;
};

// Inter-component crossings only (self-crossings of each component are
// irrelevant for the linking number).
KnotDiagram project_link_to_diagram(const PLLink& link, const Vec3& direction);

}  // namespace qsec::knotmodel
