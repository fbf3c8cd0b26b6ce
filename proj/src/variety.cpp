#include "qherm/variety.hpp"

#include <algorithm>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <unordered_set>

#include "qherm/parallel.hpp"

namespace qherm {

void validate_params(const Field& f, VarietyParams p) {
    if (p.a == 0 || p.a >= f.qq()) throw std::invalid_argument("params: a must be in GF(q^2)*");
    if (p.b >= f.qq() || f.trace(p.b) == 0)
        throw std::invalid_argument("params: b must lie outside GF(q), i.e. trace(b) != 0");
}

std::vector<VarietyParams> all_valid_params(const Field& f) {
    std::vector<VarietyParams> out;
    for (unsigned a = 1; a < f.qq(); ++a)
        for (unsigned b = 0; b < f.qq(); ++b)
            if (f.trace(static_cast<Fe>(b)) != 0)
                out.push_back({static_cast<Fe>(a), static_cast<Fe>(b)});
    return out;
}

const char* set_label_name(SetLabel l) {
    switch (l) {
        case SetLabel::b_surface: return "b_surface";
        case SetLabel::cone: return "cone";
        case SetLabel::m_variety: return "m_variety";
        case SetLabel::hermitian: return "hermitian";
        default: return "generic";
    }
}

bool PointSet::contains(PackedPoint p) const {
    return std::binary_search(pts.begin(), pts.end(), p);
}

Fe eval_surface(const Field& f, VarietyParams p, const Coords& v) {
    const unsigned q = f.q();
    const Fe J = v[0], X = v[1], Y = v[2], Z = v[3];
    // Every monomial has total degree 2q, so the value scales by lambda^(2q)
    // under v -> lambda*v and the zero set is projectively well defined.
    Fe t1 = f.mul(f.pow(Z, q), f.pow(J, q));
    Fe t2 = f.mul(Z, f.pow(J, 2 * q - 1));
    Fe t3 = f.mul(f.frob(p.a), f.pow(X, 2 * q) ^ f.pow(Y, 2 * q));
    Fe t4 = f.mul(p.a, f.mul(static_cast<Fe>(f.sqr(X) ^ f.sqr(Y)), f.pow(J, 2 * q - 2)));
    Fe t5 = f.mul(f.trace(p.b),
                  f.mul(static_cast<Fe>(f.pow(X, q + 1) ^ f.pow(Y, q + 1)), f.pow(J, q - 1)));
    return static_cast<Fe>(t1 ^ t2 ^ t3 ^ t4 ^ t5);
}

Fe eval_surface_affine(const Field& f, VarietyParams p, Fe x, Fe y, Fe z) {
    const unsigned q = f.q();
    Fe t1 = static_cast<Fe>(f.frob(z) ^ z);
    Fe t3 = f.mul(f.frob(p.a), f.pow(x, 2 * q) ^ f.pow(y, 2 * q));
    Fe t4 = f.mul(p.a, static_cast<Fe>(f.sqr(x) ^ f.sqr(y)));
    Fe t5 = f.mul(f.trace(p.b), static_cast<Fe>(f.norm(x) ^ f.norm(y)));
    return static_cast<Fe>(t1 ^ t3 ^ t4 ^ t5);
}

PointSet build_b_surface(const Field& f, VarietyParams p) {
    validate_params(f, p);
    PointSet s;
    s.label = SetLabel::b_surface;
    s.params = p;
    for (const Point& pt : all_points(f))
        if (eval_surface(f, p, pt.c) == 0) s.pts.push_back(pack(pt));
    return s; // all_points is ascending, so pts is sorted
}

PointSet build_cone(const Field& f) {
    PointSet s;
    s.label = SetLabel::cone;
    s.pts.push_back(pack(point_p_inf()));
    for (unsigned y = 0; y < f.qq(); ++y) {
        if (f.norm(static_cast<Fe>(y)) != 1) continue; // need N(1) + N(y) == 0
        for (unsigned z = 0; z < f.qq(); ++z)
            s.pts.push_back(pack(Coords{0, 1, static_cast<Fe>(y), static_cast<Fe>(z)}));
    }
    std::sort(s.pts.begin(), s.pts.end());
    return s;
}

PointSet build_m_variety(const Field& f, VarietyParams p) {
    validate_params(f, p);
    PointSet s;
    s.label = SetLabel::m_variety;
    s.params = p;
    // Affine piece of the surface: J normalizes to 1.
    for (unsigned x = 0; x < f.qq(); ++x)
        for (unsigned y = 0; y < f.qq(); ++y)
            for (unsigned z = 0; z < f.qq(); ++z)
                if (eval_surface_affine(f, p, static_cast<Fe>(x), static_cast<Fe>(y),
                                        static_cast<Fe>(z)) == 0)
                    s.pts.push_back(pack(Coords{1, static_cast<Fe>(x), static_cast<Fe>(y),
                                                static_cast<Fe>(z)}));
    PointSet cone = build_cone(f);
    s.pts.insert(s.pts.end(), cone.pts.begin(), cone.pts.end());
    std::sort(s.pts.begin(), s.pts.end());
    return s;
}

PointSet build_hermitian(const Field& f) {
    PointSet s;
    s.label = SetLabel::hermitian;
    for (const Point& pt : all_points(f)) {
        Fe acc = 0;
        for (unsigned i = 0; i < 4; ++i) acc ^= f.norm(pt.c[i]);
        if (acc == 0) s.pts.push_back(pack(pt));
    }
    return s;
}

SpectrumReport hyperplane_spectrum(const Field& f, const PointSet& s, unsigned threads) {
    const std::size_t n = s.pts.size();
    // Structure-of-arrays copy of the set so each hyperplane reduces to a few
    // byte-map passes plus a zero count.
    std::vector<std::uint8_t> coord[4];
    for (auto& v : coord) v.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        Coords c = unpack(s.pts[i]);
        for (unsigned j = 0; j < 4; ++j) coord[j][i] = c[j];
    }
    std::vector<Hyperplane> hps = all_hyperplanes(f);
    unsigned t = resolve_threads(threads);
    std::vector<std::map<std::size_t, std::size_t>> partial(t ? t : 1);
    parallel_chunks(hps.size(), threads, [&](unsigned chunk, std::size_t lo, std::size_t hi) {
        std::vector<std::uint8_t> acc(n);
        auto& h_out = partial[chunk];
        for (std::size_t hidx = lo; hidx < hi; ++hidx) {
            const Coords& h = hps[hidx].c;
            bool first = true;
            for (unsigned j = 0; j < 4; ++j) {
                if (h[j] == 0) continue;
                if (first) {
                    kern::map_bytes(f.mul_map(h[j]), coord[j].data(), acc.data(), n);
                    first = false;
                } else {
                    kern::map_xor_bytes(f.mul_map(h[j]), coord[j].data(), acc.data(), n);
                }
            }
            ++h_out[kern::count_zero_bytes(acc.data(), n)];
        }
    });
    SpectrumReport rep;
    rep.set_size = n;
    for (auto& h_out : partial)
        for (auto [sz, cnt] : h_out) rep.hist[sz] += cnt;
    return rep;
}

QHReport check_two_intersection(const Field& f, const PointSet& s, unsigned threads) {
    const std::uint64_t q = f.q();
    QHReport r;
    r.size = s.pts.size();
    r.expected_size = static_cast<std::size_t>((q * q + 1) * (q * q * q + 1));
    r.small_size = static_cast<std::size_t>(q * q * q + 1);
    r.large_size = static_cast<std::size_t>(q * q * q + q * q + 1);
    r.size_ok = r.size == r.expected_size;
    r.spectrum = hyperplane_spectrum(f, s, threads);
    r.spectrum_ok = true;
    for (auto [sz, cnt] : r.spectrum.hist)
        if (sz != r.small_size && sz != r.large_size) r.spectrum_ok = false;
    r.ok = r.size_ok && r.spectrum_ok;
    return r;
}

std::string QHReport::to_text() const {
    std::ostringstream os;
    os << "size=" << size << " expected=" << expected_size << " spectrum={";
    bool sep = false;
    for (auto [sz, cnt] : spectrum.hist) {
        if (sep) os << ",";
        os << sz << ":" << cnt;
        sep = true;
    }
    os << "} two_intersection=" << (ok ? "true" : "false");
    return os.str();
}

std::vector<Line> lines_in_set_through(const Field& f, const PointSet& s, const Point& p) {
    const PackedPoint pp = pack(p);
    if (!s.contains(pp)) throw std::invalid_argument("lines_in_set_through: point not in set");
    std::vector<Line> out;
    std::vector<bool> covered(s.pts.size(), false);
    for (std::size_t i = 0; i < s.pts.size(); ++i) {
        if (covered[i] || s.pts[i] == pp) continue;
        Line ln = line_through(f, p, Point{unpack(s.pts[i])});
        bool inside = true;
        for (PackedPoint lp : ln.pts) {
            auto it = std::lower_bound(s.pts.begin(), s.pts.end(), lp);
            if (it != s.pts.end() && *it == lp) {
                // Any set point on this line spans the same line with p, so
                // it need not be revisited whether or not the line is kept.
                covered[static_cast<std::size_t>(it - s.pts.begin())] = true;
            } else {
                inside = false;
            }
        }
        if (inside) out.push_back(std::move(ln));
    }
    return out;
}

namespace {

// Rank over GF(q^2) of the span of pts; when the span is a plane (rank 3)
// also returns its covector.
struct SpanInfo {
    unsigned rank = 0;
    std::optional<Coords> plane;
};

SpanInfo span_of(const Field& f, const std::vector<PackedPoint>& pts) {
    std::vector<Coords> rows;
    for (PackedPoint pp : pts) {
        Coords v = unpack(pp);
        for (const Coords& r : rows) {
            // eliminate with the leading 1 of each stored row
            unsigned lead = 0;
            while (lead < 4 && r[lead] == 0) ++lead;
            if (lead < 4 && v[lead] != 0) {
                Fe c = v[lead];
                for (unsigned j = 0; j < 4; ++j) v[j] ^= f.mul(c, r[j]);
            }
        }
        unsigned lead = 0;
        while (lead < 4 && v[lead] == 0) ++lead;
        if (lead == 4) continue;
        Fe s = f.inv(v[lead]);
        for (unsigned j = 0; j < 4; ++j) v[j] = f.mul(s, v[j]);
        rows.push_back(v);
        std::sort(rows.begin(), rows.end(), [](const Coords& a, const Coords& b) {
            return pack(a) > pack(b); // larger packed value = earlier leading coordinate
        });
        if (rows.size() == 4) break;
    }
    SpanInfo info;
    info.rank = static_cast<unsigned>(rows.size());
    if (info.rank == 3) {
        // Reduce to RREF and read the covector off the free column.
        for (unsigned i = 0; i < 3; ++i) {
            unsigned lead = 0;
            while (rows[i][lead] == 0) ++lead;
            for (unsigned j = 0; j < 3; ++j) {
                if (j == i || rows[j][lead] == 0) continue;
                Fe c = rows[j][lead];
                for (unsigned t = 0; t < 4; ++t) rows[j][t] ^= f.mul(c, rows[i][t]);
            }
        }
        std::array<bool, 4> is_pivot{false, false, false, false};
        for (unsigned i = 0; i < 3; ++i) {
            unsigned lead = 0;
            while (rows[i][lead] == 0) ++lead;
            is_pivot[lead] = true;
        }
        unsigned free_col = 0;
        while (is_pivot[free_col]) ++free_col;
        Coords h{0, 0, 0, 0};
        h[free_col] = 1;
        for (unsigned i = 0; i < 3; ++i) {
            unsigned lead = 0;
            while (rows[i][lead] == 0) ++lead;
            h[lead] = rows[i][free_col]; // char 2: -x = x
        }
        info.plane = normalize_hyperplane(f, h).c;
    }
    return info;
}

} // namespace

LineCensus line_census(const Field& f, const PointSet& s, VarietyParams p) {
    validate_params(f, p);
    LineCensus cen;
    std::unordered_set<std::uint64_t> line_keys;
    const PackedPoint pinf = pack(point_p_inf());
    for (PackedPoint pp : s.pts) {
        Point pt{unpack(pp)};
        std::vector<Line> lines = lines_in_set_through(f, s, pt);
        for (const Line& ln : lines) {
            auto [k1, k2] = ln.key();
            line_keys.insert((static_cast<std::uint64_t>(k1) << 32) | k2);
        }
        if (pt.c[0] != 0) {
            ++cen.lines_per_affine_point[lines.size()];
            continue;
        }
        ++cen.lines_per_infinite_point[lines.size()];
        LineCensus::Pencil pc;
        pc.center = pp;
        pc.n_lines = lines.size();
        if (pp == pinf)
            pc.loc = LineCensus::Loc::p_inf;
        else if (on_l_inf(pt))
            pc.loc = LineCensus::Loc::l_inf_rest;
        else
            pc.loc = LineCensus::Loc::inf_rest;
        std::vector<PackedPoint> union_pts;
        for (const Line& ln : lines) {
            bool has_affine = false;
            for (PackedPoint lp : ln.pts) {
                if ((lp >> 24) != 0) has_affine = true;
                union_pts.push_back(lp);
            }
            ++(has_affine ? pc.n_affine_lines : pc.n_infinite_lines);
        }
        std::sort(union_pts.begin(), union_pts.end());
        union_pts.erase(std::unique(union_pts.begin(), union_pts.end()), union_pts.end());
        SpanInfo span = span_of(f, union_pts);
        pc.coplanar = span.rank <= 3;
        if (span.plane) pc.plane = *span.plane;

        if (pc.loc == LineCensus::Loc::p_inf && pc.n_lines >= 1) {
            pc.predicted_plane = plane_at_infinity().c;
        } else if (pc.loc == LineCensus::Loc::l_inf_rest) {
            // center is (0,1,1,w); w = 0 is the direction point of l_inf
            // itself, predicted plane X+Y=0; otherwise center ~ (0,m,m,1)
            // with m = w^-1 and the predicted plane is X+Y = J/(m^q tr b).
            Fe w = pt.c[3];
            if (w == 0) {
                pc.predicted_plane = normalize_hyperplane(f, Coords{0, 1, 1, 0}).c;
            } else {
                Fe m = f.inv(w);
                Fe cm = f.inv(f.mul(f.frob(m), f.trace(p.b)));
                pc.predicted_plane = normalize_hyperplane(f, Coords{cm, 1, 1, 0}).c;
            }
        }
        if (pc.predicted_plane) {
            if (span.plane) {
                pc.plane_matches = *span.plane == *pc.predicted_plane;
            } else if (pc.coplanar) {
                // span smaller than a plane: check containment instead
                Hyperplane hp{*pc.predicted_plane};
                pc.plane_matches = true;
                for (PackedPoint up : union_pts)
                    if (!incident(f, Point{unpack(up)}, hp)) pc.plane_matches = false;
            }
        }
        cen.pencils.push_back(std::move(pc));
    }
    cen.n_lines_total = line_keys.size();
    cen.all_infinite_pencils_ok = true;
    for (const auto& pc : cen.pencils) {
        bool ok = pc.coplanar && (!pc.predicted_plane || pc.plane_matches);
        if (!ok) cen.all_infinite_pencils_ok = false;
    }
    return cen;
}

std::string LineCensus::to_text() const {
    std::ostringstream os;
    os << "lines_total=" << n_lines_total << "\n";
    os << "affine_points:";
    for (auto [cnt, np] : lines_per_affine_point) os << " lines=" << cnt << " points=" << np << ";";
    os << "\ninfinite_points:";
    for (auto [cnt, np] : lines_per_infinite_point)
        os << " lines=" << cnt << " points=" << np << ";";
    os << "\npencils_ok=" << (all_infinite_pencils_ok ? "true" : "false");
    return os.str();
}

void write_point_set(std::ostream& os, const Field& f, const PointSet& s) {
    os << "# PG(3,q^2) q=" << f.q() << " modulus=" << f.modulus() << "\n";
    for (PackedPoint pp : s.pts) {
        Coords c = unpack(pp);
        os << static_cast<unsigned>(c[0]) << " " << static_cast<unsigned>(c[1]) << " "
           << static_cast<unsigned>(c[2]) << " " << static_cast<unsigned>(c[3]) << "\n";
    }
}

PointSet read_point_set(std::istream& is, const Field& f) {
    std::string header;
    if (!std::getline(is, header)) throw std::runtime_error("point set: empty input");
    unsigned q = 0, modulus = 0;
    if (std::sscanf(header.c_str(), "# PG(3,q^2) q=%u modulus=%u", &q, &modulus) != 2)
        throw std::runtime_error("point set: bad header");
    if (q != f.q() || modulus != f.modulus())
        throw std::runtime_error("point set: header does not match the active field");
    PointSet s;
    std::string line;
    while (std::getline(is, line)) {
        if (line.empty() || line[0] == '#') continue;
        std::istringstream ls(line);
        unsigned c0, c1, c2, c3;
        if (!(ls >> c0 >> c1 >> c2 >> c3)) throw std::runtime_error("point set: bad point line");
        if (c0 >= f.qq() || c1 >= f.qq() || c2 >= f.qq() || c3 >= f.qq())
            throw std::runtime_error("point set: coordinate out of range");
        Coords raw{static_cast<Fe>(c0), static_cast<Fe>(c1), static_cast<Fe>(c2),
                   static_cast<Fe>(c3)};
        Point pt = normalize_point(f, raw);
        if (pt.c != raw) throw std::runtime_error("point set: point not normalized");
        s.pts.push_back(pack(pt));
    }
    std::sort(s.pts.begin(), s.pts.end());
    s.pts.erase(std::unique(s.pts.begin(), s.pts.end()), s.pts.end());
    return s;
}

} // namespace qherm
