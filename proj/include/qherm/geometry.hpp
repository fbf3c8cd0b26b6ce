// Points, hyperplanes and lines of PG(3,q^2) in the coordinate order
// (J, X, Y, Z): J is the homogenizing coordinate, J != 0 marks affine points.
// Points are kept normalized (first nonzero coordinate == 1), packed into a
// uint32 whose natural order equals lexicographic coordinate order.
#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "qherm/field.hpp"

namespace qherm {

using Coords = std::array<Fe, 4>;
using PackedPoint = std::uint32_t;

struct Point {
    Coords c{0, 0, 0, 0};
    friend bool operator==(const Point&, const Point&) = default;
};

struct Hyperplane {
    Coords c{0, 0, 0, 0}; // covector; P on H iff sum c[i]*P[i] == 0
    friend bool operator==(const Hyperplane&, const Hyperplane&) = default;
};

// Throws std::invalid_argument on the zero vector.
Point normalize_point(const Field& f, const Coords& raw);
Hyperplane normalize_hyperplane(const Field& f, const Coords& raw);

constexpr PackedPoint pack(const Coords& c) {
    return (static_cast<PackedPoint>(c[0]) << 24) | (static_cast<PackedPoint>(c[1]) << 16) |
           (static_cast<PackedPoint>(c[2]) << 8) | c[3];
}
inline PackedPoint pack(const Point& p) { return pack(p.c); }
constexpr Coords unpack(PackedPoint v) {
    return {static_cast<Fe>(v >> 24), static_cast<Fe>(v >> 16), static_cast<Fe>(v >> 8),
            static_cast<Fe>(v)};
}

bool incident(const Field& f, const Point& p, const Hyperplane& h);

std::uint64_t pg3_point_count(const Field& f); // (q^8-1)/(q^2-1)

// All normalized points (resp. hyperplanes) in ascending packed order; the
// first point is (0,0,0,1).
std::vector<Point> all_points(const Field& f);
std::vector<Hyperplane> all_hyperplanes(const Field& f);

struct Line {
    std::array<Point, 2> gen;      // the two spanning points it was built from
    std::vector<PackedPoint> pts;  // all q^2+1 points, sorted ascending
    // Lines are equal iff their point sets are; the two least points are a
    // canonical key since two distinct points span a unique line.
    std::pair<PackedPoint, PackedPoint> key() const { return {pts[0], pts[1]}; }
};

// Throws std::invalid_argument if p == r.
Line line_through(const Field& f, const Point& p, const Point& r);

// Distinguished elements of the construction.
inline Point point_p_inf() { return Point{{0, 0, 0, 1}}; } // vertex of the cone
inline Point point_m_inf() { return Point{{0, 1, 1, 0}}; }
inline Point origin() { return Point{{1, 0, 0, 0}}; }
inline Hyperplane plane_at_infinity() { return Hyperplane{{1, 0, 0, 0}}; } // J = 0
// l_inf: J = 0, X + Y = 0. m_inf: J = 0, Z = 0.
bool on_l_inf(const Point& p);
std::vector<PackedPoint> l_inf_points(const Field& f);

} // namespace qherm
