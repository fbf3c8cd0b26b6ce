#include "qherm/geometry.hpp"

#include <algorithm>
#include <stdexcept>

namespace qherm {

namespace {

Coords normalize_raw(const Field& f, const Coords& raw) {
    for (unsigned i = 0; i < 4; ++i) {
        if (raw[i] != 0) {
            if (raw[i] == 1) return raw;
            Fe s = f.inv(raw[i]);
            Coords out;
            for (unsigned j = 0; j < 4; ++j) out[j] = f.mul(s, raw[j]);
            return out;
        }
    }
    throw std::invalid_argument("normalize: zero vector is not a projective point");
}

} // namespace

Point normalize_point(const Field& f, const Coords& raw) { return Point{normalize_raw(f, raw)}; }

Hyperplane normalize_hyperplane(const Field& f, const Coords& raw) {
    return Hyperplane{normalize_raw(f, raw)};
}

bool incident(const Field& f, const Point& p, const Hyperplane& h) {
    Fe acc = 0;
    for (unsigned i = 0; i < 4; ++i) acc ^= f.mul(p.c[i], h.c[i]);
    return acc == 0;
}

std::uint64_t pg3_point_count(const Field& f) {
    std::uint64_t s = f.qq();
    return ((s * s + 1) * (s + 1)); // s^3 + s^2 + s + 1
}

std::vector<Point> all_points(const Field& f) {
    const unsigned s = f.qq();
    std::vector<Point> out;
    out.reserve(pg3_point_count(f));
    // Normalized points grouped by the position of the leading 1; within and
    // across groups this emission order is ascending packed order.
    out.push_back(Point{{0, 0, 0, 1}});
    for (unsigned z = 0; z < s; ++z) out.push_back(Point{{0, 0, 1, static_cast<Fe>(z)}});
    for (unsigned y = 0; y < s; ++y)
        for (unsigned z = 0; z < s; ++z)
            out.push_back(Point{{0, 1, static_cast<Fe>(y), static_cast<Fe>(z)}});
    for (unsigned x = 0; x < s; ++x)
        for (unsigned y = 0; y < s; ++y)
            for (unsigned z = 0; z < s; ++z)
                out.push_back(Point{{1, static_cast<Fe>(x), static_cast<Fe>(y), static_cast<Fe>(z)}});
    return out;
}

std::vector<Hyperplane> all_hyperplanes(const Field& f) {
    std::vector<Hyperplane> out;
    out.reserve(pg3_point_count(f));
    for (const Point& p : all_points(f)) out.push_back(Hyperplane{p.c});
    return out;
}

Line line_through(const Field& f, const Point& p, const Point& r) {
    if (p == r) throw std::invalid_argument("line_through: points must be distinct");
    Line ln;
    ln.gen = {p, r};
    ln.pts.reserve(f.qq() + 1);
    ln.pts.push_back(pack(p));
    for (unsigned a = 0; a < f.qq(); ++a) {
        Coords raw;
        for (unsigned i = 0; i < 4; ++i) raw[i] = f.mul(static_cast<Fe>(a), p.c[i]) ^ r.c[i];
        ln.pts.push_back(pack(normalize_point(f, raw)));
    }
    std::sort(ln.pts.begin(), ln.pts.end());
    return ln;
}

bool on_l_inf(const Point& p) { return p.c[0] == 0 && p.c[1] == p.c[2]; }

std::vector<PackedPoint> l_inf_points(const Field& f) {
    // (0,0,0,1) plus (0,1,1,z): the normalized solutions of J = 0, X+Y = 0.
    std::vector<PackedPoint> out;
    out.push_back(pack(point_p_inf()));
    for (unsigned z = 0; z < f.qq(); ++z) out.push_back(pack(Coords{0, 1, 1, static_cast<Fe>(z)}));
    std::sort(out.begin(), out.end());
    return out;
}

} // namespace qherm
