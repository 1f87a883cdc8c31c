// kjplus: planar arrangement of a generic immersed polyline
//
// find_double_points -> build_arrangement -> j_plus is the whole pipeline.
// The arrangement is built over the 4-valent graph whose nodes are the
// double points and whose edges are the arcs of the curve between them.
#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <limits>
#include <queue>
#include <sstream>
#include <string>
#include <vector>

#include "errors.hpp"
#include "geometry.hpp"
#include "polyline.hpp"

namespace kjplus {

struct DoublePoint {
    Point2 location;
    double param_a = 0.0;    ///< curve parameter of the first strand (segment index + fraction)
    double param_b = 0.0;    ///< curve parameter of the second strand, param_a < param_b
    double sin_angle = 0.0;  ///< |sin| of the crossing angle
    int index = 0;           ///< mean of the four incident face windings; set by build_arrangement
};

struct Face {
    int id = 0;
    int winding = 0;
    Point2 representative_point;
    bool is_unbounded = false;
};

struct Arrangement {
    PolylineCurve curve;
    std::vector<DoublePoint> double_points;
    std::vector<Face> faces;
    /// Faces around each double point, counterclockwise.
    std::vector<std::array<int, 4>> adjacency;

    const Face& unbounded_face() const {
        for (const Face& f : faces)
            if (f.is_unbounded) return f;
        throw numerical_error("arrangement has no unbounded face", "arrangement");
    }
};

struct DoublePointOptions {
    double relative_tolerance = 1e-9;  ///< dedup radius as a fraction of the curve diameter
    double min_sin_angle = 1e-4;       ///< transversality threshold
};

namespace detail {

inline std::string format_point(Point2 p) {
    std::ostringstream os;
    os.precision(10);
    os << "(" << p.x << ", " << p.y << ")";
    return os.str();
}

inline double cyclic_gap(double a, double b, double n) {
    double d = std::abs(a - b);
    return std::min(d, n - d);
}

/// Uniform bucket grid over segment bounding boxes; yields candidate segment pairs.
inline std::vector<std::uint64_t> candidate_pairs(const PolylineCurve& curve) {
    const std::size_t n = curve.size();
    auto [lo, hi] = curve.bounding_box();
    const double width = std::max(hi.x - lo.x, 1e-300);
    const double height = std::max(hi.y - lo.y, 1e-300);
    const auto cells_per_side =
        static_cast<std::size_t>(std::clamp(std::sqrt(static_cast<double>(n)), 1.0, 1024.0));
    const double cw = width / static_cast<double>(cells_per_side);
    const double ch = height / static_cast<double>(cells_per_side);
    auto cell_x = [&](double x) {
        return std::min(cells_per_side - 1, static_cast<std::size_t>(std::max(0.0, (x - lo.x) / cw)));
    };
    auto cell_y = [&](double y) {
        return std::min(cells_per_side - 1, static_cast<std::size_t>(std::max(0.0, (y - lo.y) / ch)));
    };

    std::vector<std::vector<std::uint32_t>> cells(cells_per_side * cells_per_side);
    for (std::size_t i = 0; i < n; ++i) {
        const Point2 a = curve.segment_start(i);
        const Point2 b = curve.segment_end(i);
        const std::size_t x0 = cell_x(std::min(a.x, b.x)), x1 = cell_x(std::max(a.x, b.x));
        const std::size_t y0 = cell_y(std::min(a.y, b.y)), y1 = cell_y(std::max(a.y, b.y));
        for (std::size_t cx = x0; cx <= x1; ++cx)
            for (std::size_t cy = y0; cy <= y1; ++cy) cells[cy * cells_per_side + cx].push_back(static_cast<std::uint32_t>(i));
    }

    std::vector<std::uint64_t> pairs;
    for (const auto& cell : cells) {
        for (std::size_t p = 0; p < cell.size(); ++p) {
            for (std::size_t q = p + 1; q < cell.size(); ++q) {
                std::uint64_t i = cell[p], j = cell[q];
                if (i > j) std::swap(i, j);
                if (j == i + 1 || (i == 0 && j == n - 1)) continue;  // neighbours share a vertex
                pairs.push_back((i << 32) | j);
            }
        }
    }
    std::sort(pairs.begin(), pairs.end());
    pairs.erase(std::unique(pairs.begin(), pairs.end()), pairs.end());
    return pairs;
}

} // namespace detail

/**
 * @brief All transverse self-intersections of a closed polyline.
 *
 * Crossings landing on a shared vertex are reported once. Throws
 * numerical_error for crossings with |sin(angle)| below the transversality
 * threshold and for overlapping collinear segments.
 */
inline std::vector<DoublePoint> find_double_points(const PolylineCurve& curve, const DoublePointOptions& opt = {}) {
    const std::size_t n = curve.size();
    const double tol = opt.relative_tolerance * curve.diameter();
    constexpr double param_slack = 1e-12;

    std::vector<DoublePoint> hits;
    for (std::uint64_t key : detail::candidate_pairs(curve)) {
        const std::size_t i = key >> 32;
        const std::size_t j = key & 0xffffffffu;
        const Point2 p = curve.segment_start(i);
        const Point2 r = curve.segment_vector(i);
        const Point2 q = curve.segment_start(j);
        const Point2 w = curve.segment_vector(j);
        const double denom = cross(r, w);
        const double scale = norm(r) * norm(w);
        if (std::abs(denom) <= 1e-14 * scale) {
            // Parallel. Only collinear overlap is a problem.
            if (std::abs(cross(q - p, r)) <= 1e-14 * norm(r) * std::max(norm(q - p), 1e-300)) {
                const double rr = dot(r, r);
                const double t0 = dot(q - p, r) / rr;
                const double t1 = dot(q + w - p, r) / rr;
                if (std::max(t0, t1) > 0.0 && std::min(t0, t1) < 1.0)
                    throw numerical_error("collinear overlapping segments " + std::to_string(i) + " and " +
                                              std::to_string(j) + " near " + detail::format_point(p),
                                          "find_double_points");
            }
            continue;
        }
        const double s = cross(q - p, w) / denom;
        const double u = cross(q - p, r) / denom;
        if (s < -param_slack || s > 1.0 + param_slack || u < -param_slack || u > 1.0 + param_slack) continue;

        DoublePoint dp;
        dp.location = p + std::clamp(s, 0.0, 1.0) * r;
        dp.param_a = static_cast<double>(i) + std::clamp(s, 0.0, 1.0 - 1e-15);
        dp.param_b = static_cast<double>(j) + std::clamp(u, 0.0, 1.0 - 1e-15);
        dp.sin_angle = std::abs(denom) / scale;
        if (dp.sin_angle < opt.min_sin_angle)
            throw numerical_error("near-tangential crossing (|sin angle| = " + std::to_string(dp.sin_angle) +
                                      ") at " + detail::format_point(dp.location) +
                                      "; the curve is close to a self-tangency or under-sampled",
                                  "find_double_points");
        hits.push_back(dp);
    }

    // A crossing through a vertex shows up once per adjacent segment.
    const auto nd = static_cast<double>(n);
    std::sort(hits.begin(), hits.end(), [](const DoublePoint& a, const DoublePoint& b) { return a.param_a < b.param_a; });
    std::vector<DoublePoint> out;
    for (const DoublePoint& h : hits) {
        bool duplicate = false;
        for (const DoublePoint& o : out) {
            if (norm(o.location - h.location) > tol) continue;
            const bool same = detail::cyclic_gap(o.param_a, h.param_a, nd) <= 1.0 &&
                              detail::cyclic_gap(o.param_b, h.param_b, nd) <= 1.0;
            const bool swapped = detail::cyclic_gap(o.param_a, h.param_b, nd) <= 1.0 &&
                                 detail::cyclic_gap(o.param_b, h.param_a, nd) <= 1.0;
            if (same || swapped) {
                duplicate = true;
                break;
            }
        }
        if (!duplicate) out.push_back(h);
    }
    return out;
}

/**
 * @brief Winding number of the curve around p by summing signed angle increments.
 *
 * Throws invalid_spec when p is within @p tol of the curve (default:
 * 1e-9 times the curve diameter).
 */
inline int winding_at(const PolylineCurve& curve, Point2 p, double tol = -1.0) {
    if (tol < 0.0) tol = 1e-9 * curve.diameter();
    double total = 0.0;
    for (std::size_t i = 0; i < curve.size(); ++i) {
        const Point2 a = curve.segment_start(i) - p;
        const Point2 b = curve.segment_end(i) - p;
        if (distance_to_segment({0.0, 0.0}, a, b) <= tol)
            throw invalid_spec("winding_at: point " + detail::format_point(p) + " lies on the curve");
        total += turning_angle(a, b);
    }
    const double turns = total / two_pi;
    const double rounded = std::round(turns);
    if (std::abs(turns - rounded) > 1e-6)
        throw numerical_error("winding sum is not an integer: " + std::to_string(turns), "winding_at");
    return static_cast<int>(rounded);
}

/// Whitney rotation number: total turning of the edge directions over 2 pi.
inline int rotation_number(const PolylineCurve& curve) {
    double total = 0.0;
    for (std::size_t i = 0; i < curve.size(); ++i) {
        const Point2 d0 = curve.segment_vector(i);
        const Point2 d1 = curve.segment_vector((i + 1) % curve.size());
        if (cross(d0, d1) == 0.0 && dot(d0, d1) < 0.0)
            throw numerical_error("curve reverses direction at vertex " + std::to_string((i + 1) % curve.size()),
                                  "rotation_number");
        total += turning_angle(d0, d1);
    }
    const double turns = total / two_pi;
    const double rounded = std::round(turns);
    if (std::abs(turns - rounded) >= 0.01)
        throw numerical_error("total turning is " + std::to_string(turns) + " turns; curve is under-sampled",
                              "rotation_number");
    return static_cast<int>(rounded);
}

namespace detail {

struct Arc {
    int from_node = -1;
    int to_node = -1;
    std::vector<Point2> points;      ///< from the start node to the end node, inclusive
    std::vector<std::size_t> hosts;  ///< polyline segment carrying each piece points[i] -> points[i+1]
};

inline Point2 left_normal(Point2 d) {
    const double len = norm(d);
    return {-d.y / len, d.x / len};
}

/// A point strictly inside the face lying to the left of the piece a -> b hosted by segment `host`.
inline Point2 point_left_of(const PolylineCurve& curve, Point2 a, Point2 b, std::size_t host) {
    const Point2 mid = 0.5 * (a + b);
    double clearance = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < curve.size(); ++i) {
        if (i == host) continue;
        clearance = std::min(clearance, distance_to_segment(mid, curve.segment_start(i), curve.segment_end(i)));
    }
    const double offset = 0.5 * std::min(clearance, 0.5 * norm(b - a));
    return mid + offset * left_normal(b - a);
}

} // namespace detail

/**
 * @brief Faces of the complement, their windings, and double-point indices.
 *
 * Windings are propagated combinatorially from the unbounded face (left
 * face = right face + 1 across every oriented arc), then cross-checked with
 * winding_at at a representative point inside each face. Throws
 * numerical_error on any inconsistency: Euler count, winding jump, or an
 * incident-winding pattern other than {m+1, m, m, m-1}.
 */
inline Arrangement build_arrangement(const PolylineCurve& curve, std::vector<DoublePoint> doubles) {
    const std::size_t n = curve.size();
    Arrangement arr{curve, std::move(doubles), {}, {}};
    auto& dps = arr.double_points;
    const int node_count = static_cast<int>(dps.size());

    if (node_count == 0) {
        // Simple closed curve: inside and outside.
        const double area = curve.signed_area();
        const int inside = area > 0.0 ? 1 : -1;
        std::size_t longest = 0;
        for (std::size_t i = 1; i < n; ++i)
            if (norm(curve.segment_vector(i)) > norm(curve.segment_vector(longest))) longest = i;
        Point2 a = curve.segment_start(longest), b = curve.segment_end(longest);
        if (inside < 0) std::swap(a, b);
        const Point2 rep_in = detail::point_left_of(curve, a, b, longest);
        const Point2 rep_out = detail::point_left_of(curve, b, a, longest);
        arr.faces.push_back({0, 0, rep_out, true});
        arr.faces.push_back({1, inside, rep_in, false});
        for (const Face& f : arr.faces)
            if (winding_at(curve, f.representative_point) != f.winding)
                throw numerical_error("simple curve winding check failed", "arrangement");
        return arr;
    }

    // Events along the curve: (parameter, node, strand).
    struct Event {
        double param;
        int node;
        int strand;
    };
    std::vector<Event> events;
    events.reserve(2 * dps.size());
    for (int d = 0; d < node_count; ++d) {
        events.push_back({dps[d].param_a, d, 0});
        events.push_back({dps[d].param_b, d, 1});
    }
    std::sort(events.begin(), events.end(), [](const Event& a, const Event& b) { return a.param < b.param; });

    const int arc_count = static_cast<int>(events.size());
    std::vector<detail::Arc> arcs(arc_count);
    // out_arc[node][strand]: arc leaving the node along that strand; in_arc likewise arriving.
    std::vector<std::array<int, 2>> out_arc(node_count), in_arc(node_count);
    std::vector<std::array<Point2, 2>> strand_dir(node_count);
    const auto nd = static_cast<double>(n);

    for (int e = 0; e < arc_count; ++e) {
        const Event& s = events[e];
        const Event& t = events[(e + 1) % arc_count];
        detail::Arc& arc = arcs[e];
        arc.from_node = s.node;
        arc.to_node = t.node;
        out_arc[s.node][s.strand] = e;
        in_arc[t.node][t.strand] = e;
        const auto host_s = static_cast<std::size_t>(s.param);
        strand_dir[s.node][s.strand] = curve.segment_vector(host_s);

        arc.points.push_back(dps[s.node].location);
        double end_param = t.param;
        if (e + 1 == arc_count) end_param += nd;  // wrap around the seam
        std::size_t host = host_s;
        for (auto m = static_cast<long>(std::floor(s.param)) + 1; static_cast<double>(m) <= end_param; ++m) {
            const Point2 v = curve[static_cast<std::size_t>(m) % n];
            if (static_cast<double>(m) == end_param) break;
            arc.hosts.push_back(host);
            arc.points.push_back(v);
            host = static_cast<std::size_t>(m) % n;
        }
        arc.hosts.push_back(host);
        arc.points.push_back(dps[t.node].location);
    }

    // Half-edge 2a runs along arc a, 2a+1 against it.
    const int he_count = 2 * arc_count;
    auto origin = [&](int h) { return (h & 1) == 0 ? arcs[h / 2].from_node : arcs[h / 2].to_node; };
    auto out_direction = [&](int h) {
        const detail::Arc& arc = arcs[h / 2];
        if ((h & 1) == 0) {
            for (int st = 0; st < 2; ++st)
                if (out_arc[arc.from_node][st] == h / 2) return strand_dir[arc.from_node][st];
        } else {
            for (int st = 0; st < 2; ++st)
                if (in_arc[arc.to_node][st] == h / 2) return -strand_dir[arc.to_node][st];
        }
        throw numerical_error("half-edge bookkeeping broken", "arrangement");
    };

    // Counterclockwise order of the four outgoing half-edges at each node.
    std::vector<std::array<int, 4>> around(node_count);
    for (int d = 0; d < node_count; ++d) {
        std::array<int, 4> hs{2 * out_arc[d][0], 2 * in_arc[d][0] + 1, 2 * out_arc[d][1], 2 * in_arc[d][1] + 1};
        std::array<double, 4> ang{};
        for (int i = 0; i < 4; ++i) ang[i] = arg(out_direction(hs[i]));
        std::array<int, 4> idx{0, 1, 2, 3};
        std::sort(idx.begin(), idx.end(), [&](int a, int b) { return ang[a] < ang[b]; });
        for (int i = 0; i < 4; ++i) around[d][i] = hs[idx[i]];
    }

    // next(h): at the head of h, the outgoing half-edge immediately clockwise of twin(h).
    std::vector<int> next(he_count);
    for (int h = 0; h < he_count; ++h) {
        const int twin = h ^ 1;
        const int v = origin(twin);
        const auto& ring = around[v];
        int pos = -1;
        for (int i = 0; i < 4; ++i)
            if (ring[i] == twin) pos = i;
        if (pos < 0) throw numerical_error("half-edge missing from its node ring", "arrangement");
        next[h] = ring[(pos + 3) % 4];
    }

    std::vector<int> face_of(he_count, -1);
    std::vector<std::vector<int>> face_edges;
    for (int h = 0; h < he_count; ++h) {
        if (face_of[h] >= 0) continue;
        const int f = static_cast<int>(face_edges.size());
        face_edges.emplace_back();
        int cur = h;
        while (face_of[cur] < 0) {
            face_of[cur] = f;
            face_edges[f].push_back(cur);
            cur = next[cur];
        }
        if (cur != h) throw numerical_error("face walk did not close", "arrangement");
    }
    const int face_count = static_cast<int>(face_edges.size());
    if (face_count != node_count + 2)
        throw numerical_error("Euler check failed: " + std::to_string(face_count) + " faces for " +
                                  std::to_string(node_count) + " double points",
                              "arrangement");

    // Orientation of each face boundary; only the outer one runs clockwise.
    auto piece = [&](int h, std::size_t i, Point2& a, Point2& b, std::size_t& host) {
        const detail::Arc& arc = arcs[h / 2];
        const std::size_t m = arc.points.size() - 1;
        if ((h & 1) == 0) {
            a = arc.points[i];
            b = arc.points[i + 1];
            host = arc.hosts[i];
        } else {
            a = arc.points[m - i];
            b = arc.points[m - i - 1];
            host = arc.hosts[m - i - 1];
        }
    };
    int unbounded = -1;
    for (int f = 0; f < face_count; ++f) {
        double area = 0.0;
        for (int h : face_edges[f]) {
            const std::size_t pieces = arcs[h / 2].points.size() - 1;
            for (std::size_t i = 0; i < pieces; ++i) {
                Point2 a, b;
                std::size_t host;
                piece(h, i, a, b, host);
                area += cross(a, b);
            }
        }
        if (area < 0.0) {
            if (unbounded >= 0) throw numerical_error("more than one clockwise face boundary", "arrangement");
            unbounded = f;
        }
    }
    if (unbounded < 0) throw numerical_error("no unbounded face found", "arrangement");

    // Left face of each forward arc winds once more than its right face.
    constexpr int unset = std::numeric_limits<int>::min();
    std::vector<int> winding(face_count, unset);
    winding[unbounded] = 0;
    std::queue<int> pending;
    pending.push(unbounded);
    std::vector<std::vector<int>> arcs_of_face(face_count);
    for (int a = 0; a < arc_count; ++a) {
        arcs_of_face[face_of[2 * a]].push_back(a);
        arcs_of_face[face_of[2 * a + 1]].push_back(a);
    }
    while (!pending.empty()) {
        const int f = pending.front();
        pending.pop();
        for (int a : arcs_of_face[f]) {
            const int left = face_of[2 * a];
            const int right = face_of[2 * a + 1];
            const int other = left == f ? right : left;
            const int expected = left == f ? winding[f] - 1 : winding[f] + 1;
            if (left == right) throw numerical_error("arc with the same face on both sides", "arrangement");
            if (winding[other] == unset) {
                winding[other] = expected;
                pending.push(other);
            } else if (winding[other] != expected) {
                throw numerical_error("inconsistent winding numbers across an arc", "arrangement");
            }
        }
    }

    arr.faces.resize(face_count);
    for (int f = 0; f < face_count; ++f) {
        if (winding[f] == unset) throw numerical_error("face not reached from the unbounded face", "arrangement");
        // Representative point beside the longest boundary piece.
        double best = -1.0;
        Point2 best_a, best_b;
        std::size_t best_host = 0;
        for (int h : face_edges[f]) {
            const std::size_t pieces = arcs[h / 2].points.size() - 1;
            for (std::size_t i = 0; i < pieces; ++i) {
                Point2 a, b;
                std::size_t host;
                piece(h, i, a, b, host);
                const double len = norm(b - a);
                if (len > best) {
                    best = len;
                    best_a = a;
                    best_b = b;
                    best_host = host;
                }
            }
        }
        Face& face = arr.faces[f];
        face.id = f;
        face.winding = winding[f];
        face.is_unbounded = f == unbounded;
        face.representative_point = detail::point_left_of(curve, best_a, best_b, best_host);
        const int direct = winding_at(curve, face.representative_point);
        if (direct != face.winding)
            throw numerical_error("face " + std::to_string(f) + ": propagated winding " + std::to_string(face.winding) +
                                      " but winding sum gives " + std::to_string(direct),
                                  "arrangement");
    }

    arr.adjacency.resize(node_count);
    for (int d = 0; d < node_count; ++d) {
        std::array<int, 4> w{};
        for (int i = 0; i < 4; ++i) {
            arr.adjacency[d][i] = face_of[around[d][i]];
            w[i] = winding[arr.adjacency[d][i]];
        }
        std::array<int, 4> sorted = w;
        std::sort(sorted.begin(), sorted.end());
        const int m = sorted[1];
        if (sorted[0] != m - 1 || sorted[2] != m || sorted[3] != m + 1)
            throw numerical_error("incident windings at double point " + detail::format_point(dps[d].location) +
                                      " are not of the form {m-1, m, m, m+1}",
                                  "arrangement");
        const int sum = w[0] + w[1] + w[2] + w[3];
        if (sum != 4 * m) throw numerical_error("double point index is not an integer", "arrangement");
        dps[d].index = m;
    }
    return arr;
}

inline Arrangement build_arrangement(const PolylineCurve& curve, const DoublePointOptions& opt = {}) {
    return build_arrangement(curve, find_double_points(curve, opt));
}

/// J+ = 1 + n - sum_faces w^2 + sum_double_points ind^2.
inline int j_plus(const Arrangement& arr) {
    long total = 1 + static_cast<long>(arr.double_points.size());
    for (const Face& f : arr.faces) total -= static_cast<long>(f.winding) * f.winding;
    for (const DoublePoint& d : arr.double_points) total += static_cast<long>(d.index) * d.index;
    if (total % 2 != 0) throw numerical_error("J+ came out odd: " + std::to_string(total), "j_plus");
    return static_cast<int>(total);
}

inline int j_plus(const PolylineCurve& curve) { return j_plus(build_arrangement(curve)); }

} // namespace kjplus
