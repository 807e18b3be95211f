#pragma once

#include <algorithm>
#include <cmath>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "errors.hpp"

namespace wbasn {

struct Point {
    double x = 0.0;
    double y = 0.0;

    friend bool operator==(const Point&, const Point&) = default;
};

inline Point operator+(Point a, Point b) { return {a.x + b.x, a.y + b.y}; }
inline Point operator-(Point a, Point b) { return {a.x - b.x, a.y - b.y}; }
inline Point operator*(double s, Point p) { return {s * p.x, s * p.y}; }

inline bool is_finite(Point p) { return std::isfinite(p.x) && std::isfinite(p.y); }

inline double distance(Point a, Point b) { return std::hypot(a.x - b.x, a.y - b.y); }

struct Sink {
    int id = 0;
    Point position;

    friend bool operator==(const Sink&, const Sink&) = default;
};

// How the six boundary sinks are laid out.
//   PaperLiteral: coordinates exactly as tabulated, sinks 5 and 6 at y = 106.
//   Corrected:    sinks 5 and 6 moved to the far touchline (y = width),
//                 mirroring sinks 2 and 3.
enum class SinkPlacement { Corrected, PaperLiteral };

inline std::string_view to_string(SinkPlacement p) {
    return p == SinkPlacement::Corrected ? "corrected" : "paper-literal";
}

struct FieldConfig {
    double length = 106.0; // yards, goal line to goal line
    double width = 68.0;   // yards
    SinkPlacement placement = SinkPlacement::Corrected;
    std::vector<Sink> sinks;
};

inline bool on_boundary(Point p, const FieldConfig& f, double tol = 1e-9) {
    bool inside = p.x >= -tol && p.x <= f.length + tol && p.y >= -tol && p.y <= f.width + tol;
    bool edge = std::abs(p.x) <= tol || std::abs(p.x - f.length) <= tol || std::abs(p.y) <= tol ||
                std::abs(p.y - f.width) <= tol;
    return inside && edge;
}

// Throws ValidationError naming the first violated invariant.
inline void validate(const FieldConfig& f) {
    if (!(f.length > 0.0) || !std::isfinite(f.length)) throw ValidationError("field.length", "must be > 0");
    if (!(f.width > 0.0) || !std::isfinite(f.width)) throw ValidationError("field.width", "must be > 0");
    for (std::size_t i = 0; i < f.sinks.size(); ++i) {
        if (!is_finite(f.sinks[i].position)) throw ValidationError("field.sinks", "non-finite sink position");
        for (std::size_t j = i + 1; j < f.sinks.size(); ++j)
            if (f.sinks[i].id == f.sinks[j].id)
                throw ValidationError("field.sinks", "duplicate sink id " + std::to_string(f.sinks[i].id));
        if (f.placement == SinkPlacement::Corrected && !on_boundary(f.sinks[i].position, f))
            throw ValidationError("field.sinks", "sink " + std::to_string(f.sinks[i].id) + " is off the field boundary");
    }
}

// Six sinks scattered around the border. Literal placement reproduces the
// tabulated coordinates verbatim; corrected mode maps the y = 106 pair onto the
// far touchline and keeps the goal-line sinks centred for the configured pitch.
inline std::vector<Sink> six_sink_preset(SinkPlacement placement, double length = 106.0, double width = 68.0) {
    if (placement == SinkPlacement::PaperLiteral)
        return {
            {1, {0.0, 34.0}},  {2, {17.0, 0.0}},   {3, {51.0, 0.0}},
            {4, {106.0, 34.0}}, {5, {17.0, 106.0}}, {6, {51.0, 106.0}},
        };
    return {
        {1, {0.0, width / 2.0}},    {2, {17.0, 0.0}},   {3, {51.0, 0.0}},
        {4, {length, width / 2.0}}, {5, {17.0, width}}, {6, {51.0, width}},
    };
}

// One sink behind each goal, centred on the goal line.
inline std::vector<Sink> goal_sink_preset(double length, double width) {
    return {{1, {0.0, width / 2.0}}, {2, {length, width / 2.0}}};
}

struct NearestSink {
    int sink_id = 0;
    double distance = 0.0;
    Point position;
};

// Ties go to the lowest sink id.
inline NearestSink nearest_sink(Point p, const std::vector<Sink>& sinks) {
    if (sinks.empty()) throw EmptySinkSet();
    NearestSink best{sinks.front().id, distance(p, sinks.front().position), sinks.front().position};
    for (const auto& s : sinks) {
        double d = distance(p, s.position);
        if (d < best.distance || (d == best.distance && s.id < best.sink_id)) best = {s.id, d, s.position};
    }
    return best;
}

inline NearestSink nearest_sink(Point p, const FieldConfig& field) { return nearest_sink(p, field.sinks); }

inline Point clamp_to_field(Point p, const FieldConfig& field) {
    return {std::clamp(p.x, 0.0, field.length), std::clamp(p.y, 0.0, field.width)};
}

inline bool inside_field(Point p, const FieldConfig& field) {
    return p.x >= 0.0 && p.x <= field.length && p.y >= 0.0 && p.y <= field.width;
}

} // namespace wbasn
