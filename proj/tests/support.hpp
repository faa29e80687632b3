// Shared test fixtures: trig-sampled golden knots and small helpers.
#pragma once

#include <cmath>
#include <functional>

#include "qsec/knot.hpp"
#include "qsec/rng.hpp"

namespace testsupport {

using qsec::Vec3;
using qsec::knotmodel::PLKnot;
using qsec::knotmodel::Topology;

inline PLKnot sample_closed(const std::function<Vec3(double)>& fn, int n) {
    PLKnot k;
    k.topology = Topology::closed;
    for (int i = 0; i < n; ++i) k.vertices.push_back(fn(2.0 * M_PI * i / n));
    return k;
}

// Arc over [0, 2*pi*(n-1)/n]: the closed sample cut open at angle zero.
inline PLKnot sample_open(const std::function<Vec3(double)>& fn, int n) {
    PLKnot k = sample_closed(fn, n);
    k.topology = Topology::open;
    return k;
}

// (2,strands) torus curve; strands = 3 gives the right-handed trefoil.
inline Vec3 torus_curve(double theta, int strands) {
    double r = 2.0 + std::cos(strands * theta);
    return {r * std::cos(2.0 * theta), r * std::sin(2.0 * theta), std::sin(strands * theta)};
}

inline Vec3 figure_eight_curve(double t) {
    double r = 2.0 + std::cos(2.0 * t);
    return {r * std::cos(3.0 * t), r * std::sin(3.0 * t), std::sin(4.0 * t)};
}

inline PLKnot trefoil_knot(int n = 60) {
    return sample_closed([](double t) { return torus_curve(t, 3); }, n);
}

inline PLKnot torus_knot_2_5(int n = 100) {
    return sample_closed([](double t) { return torus_curve(t, 5); }, n);
}

inline PLKnot torus_knot_2_7(int n = 140) {
    return sample_closed([](double t) { return torus_curve(t, 7); }, n);
}

inline PLKnot figure_eight_knot(int n = 80) {
    return sample_closed(figure_eight_curve, n);
}

// Minimal 6-stick trefoil (second Conway coefficient 1; a hexagonal knot is
// either an unknot or a trefoil, so that value certifies the type).
inline PLKnot hexagonal_trefoil() {
    PLKnot k;
    k.topology = Topology::closed;
    k.vertices = {Vec3{0.15, 1.40, 0.81},  Vec3{-2.36, -1.05, -0.81}, Vec3{1.14, -0.83, 0.81},
                  Vec3{0.27, 2.57, -0.81}, Vec3{-1.63, 0.81, 0.56},   Vec3{2.89, -0.61, -0.31}};
    return k;
}

inline PLKnot round_unknot(int n = 12) {
    return sample_closed(
        [](double t) { return Vec3{std::cos(t), std::sin(t), 0.12 * std::sin(2.0 * t)}; }, n);
}

inline PLKnot wobbly_unknot(int n = 40) {
    return sample_closed(
        [](double t) {
            return Vec3{(1.0 + 0.3 * std::cos(3.0 * t)) * std::cos(t),
                        (1.0 + 0.3 * std::cos(3.0 * t)) * std::sin(t), 0.4 * std::sin(5.0 * t)};
        },
        n);
}

inline PLKnot mirror_x(PLKnot k) {
    for (auto& v : k.vertices) v.x = -v.x;
    return k;
}

// Random embedded closed polygon with edge count in [min_edges, max_edges];
// resamples until validation passes, so results are deterministic per seed.
inline PLKnot random_closed_knot(qsec::Rng& rng, int min_edges, int max_edges) {
    for (;;) {
        int n = min_edges + static_cast<int>(rng.below(max_edges - min_edges + 1));
        PLKnot k;
        k.topology = Topology::closed;
        for (int i = 0; i < n; ++i)
            k.vertices.push_back({rng.uniform01(), rng.uniform01(), rng.uniform01()});
        try {
            qsec::knotmodel::validate(k);
            return k;
        } catch (const qsec::Error&) {
        }
    }
}

// Open arcs of the golden knots: the closed trig samples cut at angle zero.
inline PLKnot long_trefoil(int n = 60) {
    return sample_open([](double t) { return torus_curve(t, 3); }, n);
}

inline PLKnot long_figure_eight(int n = 80) {
    return sample_open(figure_eight_curve, n);
}

// Monotone helix: an unknotted long arc.
inline PLKnot long_unknot(int n = 40) {
    PLKnot k;
    k.topology = Topology::open;
    for (int i = 0; i < n; ++i) {
        double t = 8.0 * M_PI * i / (n - 1);
        k.vertices.push_back({std::cos(t), std::sin(t), 0.35 * t});
    }
    return k;
}

// Random rotation + uniform scaling in [scale_lo, scale_hi] + translation.
inline PLKnot rigid_motion(PLKnot k, qsec::Rng& rng, double scale_lo = 1.0,
                           double scale_hi = 1.0) {
    Vec3 axis;
    do {
        axis = {rng.symmetric(), rng.symmetric(), rng.symmetric()};
    } while (qsec::norm(axis) < 0.1 || qsec::norm(axis) > 1.0);
    axis = qsec::normalized(axis);
    double angle = rng.uniform(0.0, 2.0 * M_PI);
    double c = std::cos(angle), s = std::sin(angle);
    double scale = rng.uniform(scale_lo, scale_hi);
    Vec3 shift{rng.uniform(-3.0, 3.0), rng.uniform(-3.0, 3.0), rng.uniform(-3.0, 3.0)};
    for (auto& v : k.vertices) {
        Vec3 rotated = v * c + qsec::cross(axis, v) * s + axis * (qsec::dot(axis, v) * (1.0 - c));
        v = rotated * scale + shift;
    }
    return k;
}

}  // namespace testsupport
