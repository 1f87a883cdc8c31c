// kjplus: closed oriented polygonal curves
#pragma once

#include <algorithm>
#include <cstddef>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "errors.hpp"
#include "geometry.hpp"

namespace kjplus {

/**
 * @brief Closed polyline approximating an immersed curve S^1 -> C*.
 *
 * Vertices are read cyclically: segment i joins vertex i to vertex
 * (i + 1) mod n. Construction enforces at least three vertices, finite
 * coordinates, distinct consecutive vertices (including last -> first) and
 * no vertex exactly at the origin.
 */
class PolylineCurve {
public:
    explicit PolylineCurve(std::vector<Point2> vertices) : vertices_(std::move(vertices)) {
        if (vertices_.size() < 3)
            throw invalid_spec("polyline needs at least 3 vertices, got " +
                               std::to_string(vertices_.size()));
        for (std::size_t i = 0; i < vertices_.size(); ++i) {
            const Point2 v = vertices_[i];
            if (!is_finite(v)) throw invalid_spec("polyline vertex " + std::to_string(i) + " is not finite");
            if (v.x == 0.0 && v.y == 0.0)
                throw invalid_spec("polyline vertex " + std::to_string(i) + " lies at the origin");
            if (v == vertices_[(i + 1) % vertices_.size()])
                throw invalid_spec("polyline vertices " + std::to_string(i) + " and its successor coincide");
        }
    }

    std::size_t size() const noexcept { return vertices_.size(); }
    const Point2& operator[](std::size_t i) const { return vertices_[i]; }
    std::span<const Point2> vertices() const noexcept { return vertices_; }

    Point2 segment_start(std::size_t i) const { return vertices_[i]; }
    Point2 segment_end(std::size_t i) const { return vertices_[(i + 1) % vertices_.size()]; }
    Point2 segment_vector(std::size_t i) const { return segment_end(i) - segment_start(i); }

    /// Point at curve parameter s in [0, n): integer part picks the segment.
    Point2 at(double s) const {
        const auto n = static_cast<double>(size());
        s = s - n * std::floor(s / n);
        auto i = static_cast<std::size_t>(s);
        if (i >= size()) i = size() - 1;
        return segment_start(i) + (s - static_cast<double>(i)) * segment_vector(i);
    }

    /// Same trace, opposite orientation. Vertex 0 is kept as the start.
    PolylineCurve reversed() const {
        std::vector<Point2> v;
        v.reserve(size());
        v.push_back(vertices_.front());
        for (std::size_t i = size() - 1; i > 0; --i) v.push_back(vertices_[i]);
        return PolylineCurve(std::move(v));
    }

    /// Apply a map to every vertex (rigid motions, scalings, ...).
    template <typename Map>
    PolylineCurve transformed(Map&& map) const {
        std::vector<Point2> v;
        v.reserve(size());
        for (const Point2& p : vertices_) v.push_back(map(p));
        return PolylineCurve(std::move(v));
    }

    double min_radius() const {
        double r = norm(vertices_.front());
        for (const Point2& p : vertices_) r = std::min(r, norm(p));
        return r;
    }

    double max_radius() const {
        double r = 0.0;
        for (const Point2& p : vertices_) r = std::max(r, norm(p));
        return r;
    }

    /// Length of the bounding-box diagonal.
    double diameter() const {
        auto [lo, hi] = bounding_box();
        return norm(hi - lo);
    }

    std::pair<Point2, Point2> bounding_box() const {
        Point2 lo = vertices_.front();
        Point2 hi = lo;
        for (const Point2& p : vertices_) {
            lo = {std::min(lo.x, p.x), std::min(lo.y, p.y)};
            hi = {std::max(hi.x, p.x), std::max(hi.y, p.y)};
        }
        return {lo, hi};
    }

    /// Shoelace area; positive for a counterclockwise simple loop.
    double signed_area() const {
        double a = 0.0;
        for (std::size_t i = 0; i < size(); ++i) a += cross(segment_start(i), segment_end(i));
        return 0.5 * a;
    }

private:
    std::vector<Point2> vertices_;
};

} // namespace kjplus
