// Degree-two pattern counting on based Gauss sequences, plus diagram linking
// numbers and the geometric closure used to read open knots.
#include "qsec/gauss.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "qsec/error.hpp"
#include "qsec/rng.hpp"

namespace qsec::gauss {

using knotmodel::KnotDiagram;
using knotmodel::PLKnot;

namespace {

struct Passage {
    double pos;  // shifted knot parameter, used only for ordering
    int crossing;
    bool over;
};

}  // namespace

PatternSums degree2_sums(const KnotDiagram& d, double period, double basepoint) {
    const bool closed = d.topology == knotmodel::Topology::closed;
    if (closed && period <= 0.0) throw Error(ErrorCode::InvalidKnot, "closed diagram needs a period");

    std::vector<Passage> walk;
    walk.reserve(d.crossings.size() * 2);
    auto shifted = [&](double param) {
        if (!closed) return param;
        double s = std::fmod(param - basepoint, period);
        return s < 0.0 ? s + period : s;
    };
    for (int i = 0; i < static_cast<int>(d.crossings.size()); ++i) {
        walk.push_back({shifted(d.crossings[i].over_param), i, true});
        walk.push_back({shifted(d.crossings[i].under_param), i, false});
    }
    std::sort(walk.begin(), walk.end(),
              [](const Passage& a, const Passage& b) { return a.pos < b.pos; });

    const int n = static_cast<int>(d.crossings.size());
    std::vector<int> first(n, -1), second(n, -1);
    std::vector<bool> first_over(n, false);
    for (int s = 0; s < static_cast<int>(walk.size()); ++s) {
        if (first[walk[s].crossing] < 0) {
            first[walk[s].crossing] = s;
            first_over[walk[s].crossing] = walk[s].over;
        } else {
            second[walk[s].crossing] = s;
        }
    }

    PatternSums sums;
    for (int p = 0; p < n; ++p) {
        for (int q = 0; q < n; ++q) {
            if (p == q || first[p] > first[q]) continue;
            // Interleaved: q starts strictly inside p's span and ends outside.
            if (!(first[p] < first[q] && first[q] < second[p] && second[p] < second[q])) continue;
            long long w = d.crossings[p].sign * d.crossings[q].sign;
            if (!first_over[p] && first_over[q])
                sums.uo += w;
            else if (!first_over[p] && !first_over[q])
                sums.uu += w;
            else if (first_over[p] && !first_over[q])
                sums.ou += w;
            else
                sums.oo += w;
        }
    }
    return sums;
}

int second_coefficient(const KnotDiagram& d, double period, double basepoint) {
    return static_cast<int>(degree2_sums(d, period, basepoint).uo);
}

PLKnot close_with_return(const PLKnot& k) {
    if (k.topology == knotmodel::Topology::closed) return k;
    if (k.vertex_count() < 2) throw Error(ErrorCode::InvalidKnot, "nothing to close");

    // The open knot stands for the curve extended straight past each endpoint
    // away from the body; the return loop realizes exactly that closure. Its
    // outer pieces run at least a margin outside the bounding box and cannot
    // touch the knot, so the only possible contact is a body strand on an
    // endpoint's exit column — a non-generic input, not a routing accident.
    knotmodel::Box box = knotmodel::bounding_box(k);
    double diag = box.diagonal();
    if (diag <= 0.0) throw Error(ErrorCode::InvalidKnot, "degenerate bounding box");
    double m = 0.5 * diag;
    Vec3 center = (box.lo + box.hi) * 0.5;
    double reach = 0.5 * std::hypot(box.hi.x - box.lo.x, box.hi.y - box.lo.y) + m;
    const Vec3& start = k.vertices.front();
    const Vec3& end = k.vertices.back();

    PLKnot closed = k;
    closed.topology = knotmodel::Topology::closed;
    closed.vertices.push_back({end.x, end.y, box.hi.z + m});
    closed.vertices.push_back({center.x + reach, center.y, box.hi.z + m});
    closed.vertices.push_back({center.x + reach, center.y, box.lo.z - m});
    closed.vertices.push_back({start.x, start.y, box.lo.z - m});
    try {
        knotmodel::validate(closed);
    } catch (const Error&) {
        throw Error(ErrorCode::GenericityFailure, "a closure ray touches the knot body");
    }
    return closed;
}

int second_coefficient_of_knot(const PLKnot& k) {
    PLKnot closed = close_with_return(k);
    double period = closed.edge_count();

    Rng rng(0x9e3779b97f4a7c15ULL);
    bool have = false;
    int value = 0;
    for (int j = 0; j < 10; ++j) {
        Vec3 dir;
        do {
            dir = Vec3{rng.symmetric(), rng.symmetric(), rng.symmetric()};
        } while (norm(dir) < 0.2 || norm(dir) > 1.0);
        dir = dir * (1.0 / norm(dir));
        KnotDiagram dgm = knotmodel::project_to_diagram(closed, dir);
        int v = second_coefficient(dgm, period);
        if (have && v != value)
            throw Error(ErrorCode::Disagreement,
                        "projections disagree on the second coefficient");
        value = v;
        have = true;
    }
    return value;
}

int linking_number(const KnotDiagram& d) {
    long long total = 0;
    for (const auto& c : d.crossings) {
        if (c.over_component == c.under_component) continue;
        total += c.sign;
    }
    if (total % 2 != 0)
        throw Error(ErrorCode::InvalidKnot, "odd signed crossing sum between components");
    return static_cast<int>(total / 2);
}

}  // namespace qsec::gauss
