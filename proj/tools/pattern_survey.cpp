// Dev harness: prints all four degree-two pattern sums for a family of knots
// with known second Conway coefficients, across projection directions and
// basepoints, so the counted pattern can be pinned against ground truth.
#include <cmath>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "qsec/gauss.hpp"
#include "qsec/knot.hpp"

using qsec::Vec3;
using qsec::knotmodel::PLKnot;
using qsec::knotmodel::Topology;

namespace {

PLKnot sample_closed(const std::function<Vec3(double)>& fn, int n) {
    PLKnot k;
    k.topology = Topology::closed;
    for (int i = 0; i < n; ++i) k.vertices.push_back(fn(2.0 * M_PI * i / n));
    return k;
}

Vec3 torus_curve(double theta, int strands) {
    double r = 2.0 + std::cos(strands * theta);
    return {r * std::cos(2.0 * theta), r * std::sin(2.0 * theta), std::sin(strands * theta)};
}

Vec3 figure_eight_curve(double t) {
    double r = 2.0 + std::cos(2.0 * t);
    return {r * std::cos(3.0 * t), r * std::sin(3.0 * t), std::sin(4.0 * t)};
}

void survey(const char* name, const PLKnot& k, int expected) {
    double period = k.edge_count();
    const std::vector<Vec3> dirs = {
        {0.0, 0.0, 1.0}, {0.31, -0.52, 0.8}, {0.9, 0.1, 0.42}, {-0.2, 0.75, -0.63}};
    std::printf("%-18s expected a2 = %d\n", name, expected);
    for (const Vec3& d : dirs) {
        auto dgm = qsec::knotmodel::project_to_diagram(k, d);
        for (double base : {0.0, period / 3.0, 0.77 * period}) {
            auto s = qsec::gauss::degree2_sums(dgm, period, base);
            std::printf("  dir(% .2f,% .2f,% .2f) base %7.3f  uu %3lld  uo %3lld  ou %3lld  oo %3lld\n",
                        d.x, d.y, d.z, base, s.uu, s.uo, s.ou, s.oo);
        }
    }
    std::printf("\n");
}

}  // namespace

int main() {
    auto trefoil = sample_closed([](double t) { return torus_curve(t, 3); }, 60);
    PLKnot mirror = trefoil;
    for (auto& v : mirror.vertices) v.x = -v.x;
    auto t25 = sample_closed([](double t) { return torus_curve(t, 5); }, 100);
    auto t27 = sample_closed([](double t) { return torus_curve(t, 7); }, 140);
    auto fig8 = sample_closed(figure_eight_curve, 80);
    auto circle = sample_closed(
        [](double t) { return Vec3{std::cos(t), std::sin(t), 0.12 * std::sin(2.0 * t)}; }, 12);
    auto wobble = sample_closed(
        [](double t) {
            return Vec3{(1.0 + 0.3 * std::cos(3.0 * t)) * std::cos(t),
                        (1.0 + 0.3 * std::cos(3.0 * t)) * std::sin(t), 0.4 * std::sin(5.0 * t)};
        },
        40);

    survey("trefoil", trefoil, 1);
    survey("mirror trefoil", mirror, 1);
    survey("torus(2,5)", t25, 3);
    survey("torus(2,7)", t27, 6);
    survey("figure eight", fig8, -1);
    survey("circle", circle, 0);
    survey("wobbly unknot", wobble, 0);
    return 0;
}
