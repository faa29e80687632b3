#include "qsec/knot.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "json.hpp"
#include "qsec/rng.hpp"

namespace qsec::knotmodel {

namespace {

using geom::segment_distance;

bool adjacent_edges(const PLKnot& k, int i, int j) {
    int e = k.edge_count();
    if (i == j) return true;
    int lo = std::min(i, j), hi = std::max(i, j);
    if (hi - lo == 1) return true;
    return k.topology == Topology::closed && lo == 0 && hi == e - 1;
}

}  // namespace

Vec3 PLKnot::at(double p) const {
    int e = edge_count();
    if (topology == Topology::closed) {
        p = std::fmod(p, static_cast<double>(e));
        if (p < 0) p += e;
    } else {
        p = std::clamp(p, 0.0, static_cast<double>(e));
    }
    int i = std::min(static_cast<int>(p), e - 1);
    return edge(i).at(p - i);
}

Box bounding_box(const PLKnot& k) {
    Box b{k.vertices.at(0), k.vertices.at(0)};
    for (const Vec3& v : k.vertices) {
        for (int c = 0; c < 3; ++c) {
            b.lo[c] = std::min(b.lo[c], v[c]);
            b.hi[c] = std::max(b.hi[c], v[c]);
        }
    }
    return b;
}

geom::Tolerance knot_tolerance(const PLKnot& k, double rel) {
    geom::Tolerance t;
    t.rel = rel;
    t.length_scale = std::max(bounding_box(k).diagonal(), 1e-300);
    return t;
}

void validate(const PLKnot& k, double rel_tol) {
    int n = k.vertex_count();
    int min_vertices = k.topology == Topology::closed ? 3 : 2;
    if (n < min_vertices) throw Error(ErrorCode::InvalidKnot, "too few vertices");

    geom::Tolerance tol = knot_tolerance(k, rel_tol);
    int e = k.edge_count();
    for (int i = 0; i < e; ++i) {
        if (k.edge(i).length() <= tol.length())
            throw Error(ErrorCode::InvalidKnot, "consecutive vertices coincide");
    }
    for (int i = 0; i < e; ++i) {
        for (int j = i + 1; j < e; ++j) {
            if (adjacent_edges(k, i, j)) continue;
            if (segment_distance(k.edge(i), k.edge(j)) <= tol.length())
                throw Error(ErrorCode::InvalidKnot, "non-adjacent edges touch");
        }
    }
}

namespace {

PLKnot normalize_open_knot(PLKnot k) {
    const Vec3 p0 = k.vertices.front();
    const Vec3 p1 = k.vertices.back();
    double chord = dist(p0, p1);
    if (chord <= knot_tolerance(k).length())
        throw Error(ErrorCode::InvalidKnot, "open knot endpoints coincide");

    Vec3 w = (p1 - p0) / chord;
    int least = 0;
    for (int c = 1; c < 3; ++c)
        if (std::abs(w[c]) < std::abs(w[least])) least = c;
    Vec3 axis{least == 0 ? 1.0 : 0.0, least == 1 ? 1.0 : 0.0, least == 2 ? 1.0 : 0.0};
    Vec3 u = normalized(cross(w, axis));
    Vec3 v = cross(w, u);

    for (Vec3& p : k.vertices) {
        Vec3 q = (p - p0) / chord;
        p = Vec3{0.5 + dot(q, u), 0.5 + dot(q, v), dot(q, w)};
    }
    return k;
}

}  // namespace

PLKnot load_knot(const std::string& text, const std::string& format,
                 std::optional<Topology> topology_hint) {
    PLKnot k;
    if (format == "json") {
        nlohmann::json j;
        try {
            j = nlohmann::json::parse(text);
        } catch (const nlohmann::json::exception& e) {
            throw Error(ErrorCode::ParseError, e.what());
        }
        if (j.contains("topology")) {
            std::string t = j["topology"].get<std::string>();
            if (t == "closed")
                k.topology = Topology::closed;
            else if (t == "long" || t == "open")
                k.topology = Topology::open;
            else
                throw Error(ErrorCode::ParseError, "unknown topology \"" + t + "\"");
        } else if (topology_hint) {
            k.topology = *topology_hint;
        } else {
            throw Error(ErrorCode::ParseError, "missing topology");
        }
        if (!j.contains("vertices") || !j["vertices"].is_array())
            throw Error(ErrorCode::ParseError, "missing vertices array");
        for (const auto& row : j["vertices"]) {
            if (!row.is_array() || row.size() != 3)
                throw Error(ErrorCode::ParseError, "vertex rows must be [x,y,z]");
            k.vertices.push_back({row[0].get<double>(), row[1].get<double>(), row[2].get<double>()});
        }
    } else if (format == "csv") {
        k.topology = topology_hint.value_or(Topology::closed);
        std::istringstream in(text);
        std::string line;
        bool first = true;
        while (std::getline(in, line)) {
            if (line.empty() || line == "\r") continue;
            std::istringstream row(line);
            std::string cell;
            std::vector<double> vals;
            bool numeric = true;
            while (std::getline(row, cell, ',')) {
                try {
                    size_t pos = 0;
                    vals.push_back(std::stod(cell, &pos));
                } catch (...) {
                    numeric = false;
                }
            }
            if (!numeric) {
                if (first) {  // header row
                    first = false;
                    continue;
                }
                throw Error(ErrorCode::ParseError, "non-numeric cell in CSV body");
            }
            if (vals.size() != 3) throw Error(ErrorCode::ParseError, "CSV rows must have 3 columns");
            k.vertices.push_back({vals[0], vals[1], vals[2]});
            first = false;
        }
    } else {
        throw Error(ErrorCode::ParseError, "unknown knot format \"" + format + "\"");
    }

    if (k.topology == Topology::open) k = normalize_open_knot(std::move(k));
    validate(k);
    return k;
}

PLKnot perturb(const PLKnot& k, std::uint64_t seed, double rel_magnitude) {
    if (rel_magnitude < 0.0 || rel_magnitude >= 1e-3)
        throw Error(ErrorCode::InvalidKnot, "perturbation magnitude must be in [0, 1e-3)");
    double mag = rel_magnitude * bounding_box(k).diagonal();

    const int budget = rel_magnitude == 0.0 ? 1 : 16;
    for (int attempt = 0; attempt < budget; ++attempt) {
        PLKnot out = k;
        if (mag > 0.0) {
            std::uint64_t s = mix64(seed, static_cast<std::uint64_t>(attempt));
            for (int i = 0; i < out.vertex_count(); ++i) {
                for (int c = 0; c < 3; ++c) {
                    std::uint64_t bits = mix64(s, static_cast<std::uint64_t>(i),
                                               static_cast<std::uint64_t>(c));
                    double offset = 2.0 * ((bits >> 11) * 0x1.0p-53) - 1.0;
                    out.vertices[i][c] += mag * offset;
                }
            }
        }

        try {
            validate(out);
        } catch (const Error&) {
            continue;
        }

        // Pairwise parallel edges break three-line classification downstream.
        bool parallel = false;
        int e = out.edge_count();
        std::vector<Vec3> dirs(e);
        for (int i = 0; i < e; ++i) dirs[i] = normalized(out.edge(i).delta());
        for (int i = 0; i < e && !parallel; ++i)
            for (int j = i + 1; j < e; ++j)
                if (norm(cross(dirs[i], dirs[j])) <= 1e-9) {
                    parallel = true;
                    break;
                }
        if (!parallel) return out;
    }
    throw Error(ErrorCode::GenericityFailure, "perturbation retry budget exhausted");
}

// ---- Polynomial knots ----

namespace {

double horner(const std::vector<double>& c, double t) {
    double v = 0.0;
    for (int i = static_cast<int>(c.size()) - 1; i >= 0; --i) v = v * t + c[i];
    return v;
}

double horner_d1(const std::vector<double>& c, double t) {
    double v = 0.0;
    for (int i = static_cast<int>(c.size()) - 1; i >= 1; --i) v = v * t + c[i] * i;
    return v;
}

double horner_d2(const std::vector<double>& c, double t) {
    double v = 0.0;
    for (int i = static_cast<int>(c.size()) - 1; i >= 2; --i) v = v * t + c[i] * i * (i - 1);
    return v;
}

}  // namespace

Vec3 PolynomialKnot::eval(double t) const { return {horner(x, t), horner(y, t), horner(z, t)}; }
Vec3 PolynomialKnot::eval_d1(double t) const {
    return {horner_d1(x, t), horner_d1(y, t), horner_d1(z, t)};
}
Vec3 PolynomialKnot::eval_d2(double t) const {
    return {horner_d2(x, t), horner_d2(y, t), horner_d2(z, t)};
}

PolynomialKnot parse_polynomial(const std::string& json_text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(json_text);
    } catch (const nlohmann::json::exception& e) {
        throw Error(ErrorCode::ParseError, e.what());
    }
    if (!j.contains("degree")) throw Error(ErrorCode::ParseError, "missing degree");
    PolynomialKnot p;
    p.degree = j["degree"].get<int>();
    if (p.degree < 1) throw Error(ErrorCode::ParseError, "degree must be >= 1");

    auto read_poly = [&](const char* name) {
        if (!j.contains(name)) throw Error(ErrorCode::ParseError, std::string("missing ") + name);
        std::vector<double> c = j[name].get<std::vector<double>>();
        if (static_cast<int>(c.size()) > p.degree + 1)
            throw Error(ErrorCode::ParseError, std::string(name) + " exceeds declared degree");
        c.resize(p.degree + 1, 0.0);
        int lead = -1;
        for (int i = p.degree; i >= 0; --i)
            if (c[i] != 0.0) {
                lead = i;
                break;
            }
        if (lead < 0) throw Error(ErrorCode::ParseError, std::string(name) + " is identically zero");
        if (std::abs(c[lead] - 1.0) > 1e-12)
            throw Error(ErrorCode::ParseError,
                        std::string(name) + " must be monic in its leading coefficient");
        return c;
    };
    p.x = read_poly("x");
    p.y = read_poly("y");
    p.z = read_poly("z");

    auto poly_degree = [&](const std::vector<double>& c) {
        for (int i = p.degree; i >= 0; --i)
            if (c[i] != 0.0) return i;
        return 0;
    };
    int maxdeg = std::max({poly_degree(p.x), poly_degree(p.y), poly_degree(p.z)});
    if (maxdeg != p.degree)
        throw Error(ErrorCode::ParseError, "declared degree exceeds every coordinate degree");
    return p;
}

double polynomial_window(const PolynomialKnot& p) {
    auto coord_window = [](const std::vector<double>& c) {
        int m = static_cast<int>(c.size()) - 1;
        while (m > 0 && c[m] == 0.0) --m;
        if (m == 0) return 1.0;
        // g(T) = T^m - 10 * sum |c_i| T^i must be positive from the window on.
        auto g = [&](double T) {
            double lead = std::pow(T, m);
            double rest = 0.0;
            for (int i = 0; i < m; ++i) rest += std::abs(c[i]) * std::pow(T, i);
            return lead - 10.0 * rest;
        };
        double T = 1.0;
        while (g(T) <= 0.0 && T < 1e9) T *= 1.25;
        double lo = T / 1.25, hi = T;
        if (g(lo) > 0.0) return lo;  // already positive at the floor
        for (int it = 0; it < 80; ++it) {
            double mid = 0.5 * (lo + hi);
            (g(mid) > 0.0 ? hi : lo) = mid;
        }
        return hi;
    };
    return std::max({1.0, coord_window(p.x), coord_window(p.y), coord_window(p.z)});
}

PLKnot sample_polynomial_knot(const PolynomialKnot& p, double samples_per_radian,
                              std::optional<double> window) {
    double T = window.value_or(polynomial_window(p));
    if (T <= 0.0) throw Error(ErrorCode::InvalidKnot, "window must be positive");
    if (samples_per_radian <= 0.0)
        throw Error(ErrorCode::InvalidKnot, "sampling resolution must be positive");
    double max_turn = 1.0 / samples_per_radian;

    // Steps are sized by how far the tangent direction turns across them, so
    // the curved core is sampled densely while each nearly straight tail
    // collapses to a handful of edges. A per-edge turn budget also keeps
    // consecutive edges decisively non-collinear, which every downstream
    // line classification needs.
    auto tangent = [&](double t) -> std::optional<Vec3> {
        Vec3 d = p.eval_d1(t);
        double n = norm(d);
        if (n < 1e-12) return std::nullopt;
        return d * (1.0 / n);
    };
    auto turn = [&](double a, double b) {
        double total = 0.0;
        std::optional<Vec3> prev = tangent(a);
        for (int i = 1; i <= 4; ++i) {
            std::optional<Vec3> cur = tangent(a + (b - a) * i / 4.0);
            if (!prev || !cur) return 1e9;  // stationary tangent: force refinement
            total += std::acos(std::clamp(dot(*prev, *cur), -1.0, 1.0));
            prev = cur;
        }
        return total;
    };

    std::vector<double> params{-T};
    const double h_min = T * 1e-7;
    double t = -T;
    double h = T / 512.0;
    while (t < T) {
        h = std::min(h, T - t);
        while (t + h < T && turn(t, t + h) < 0.5 * max_turn) h = std::min(2.0 * h, T - t);
        while (turn(t, t + h) > max_turn && h > h_min) h *= 0.5;
        t = (T - (t + h) < h_min) ? T : t + h;
        params.push_back(t);
    }
    auto at_zero = std::lower_bound(params.begin(), params.end(), 0.0);
    if (at_zero == params.end() || std::abs(*at_zero) > h_min) {
        if (at_zero != params.begin() && std::abs(*(at_zero - 1)) <= h_min) {
            // already effectively present
        } else {
            params.insert(at_zero, 0.0);  // keep the core anchor in the sample set
        }
    }

    PLKnot k;
    k.topology = Topology::open;
    k.vertices.reserve(params.size());
    for (double s : params) k.vertices.push_back(p.eval(s));
    validate(k);  // throws InvalidKnot when the resolution is too coarse
    return k;
}

}  // namespace qsec::knotmodel
