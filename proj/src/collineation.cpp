#include "qherm/collineation.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>
#include <unordered_set>

namespace qherm {

namespace {

Fe aut_apply(const Field& f, unsigned j, Fe x) {
    for (unsigned i = 0; i < j; ++i) x = f.sqr(x);
    return x;
}

} // namespace

CollKey coll_key(const Collineation& c) {
    CollKey k;
    std::copy(c.m.begin(), c.m.end(), k.begin());
    k[16] = c.aut;
    return k;
}

Fe det(const Field& f, const std::array<Fe, 16>& m) {
    // Gaussian elimination on a copy; determinant of the canonical scale.
    std::array<Fe, 16> a = m;
    Fe d = 1;
    for (unsigned col = 0; col < 4; ++col) {
        unsigned piv = col;
        while (piv < 4 && a[piv * 4 + col] == 0) ++piv;
        if (piv == 4) return 0;
        if (piv != col)
            for (unsigned j = 0; j < 4; ++j) std::swap(a[piv * 4 + j], a[col * 4 + j]);
        // char 2: row swap does not flip the sign
        d = f.mul(d, a[col * 4 + col]);
        Fe s = f.inv(a[col * 4 + col]);
        for (unsigned j = 0; j < 4; ++j) a[col * 4 + j] = f.mul(s, a[col * 4 + j]);
        for (unsigned r = col + 1; r < 4; ++r) {
            Fe c = a[r * 4 + col];
            if (c == 0) continue;
            for (unsigned j = 0; j < 4; ++j) a[r * 4 + j] ^= f.mul(c, a[col * 4 + j]);
        }
    }
    return d;
}

Collineation make_collineation(const Field& f, const std::array<Fe, 16>& raw, unsigned aut) {
    if (aut >= 2 * f.k()) throw std::invalid_argument("collineation: aut exponent out of range");
    for (Fe e : raw)
        if (e >= f.qq()) throw std::invalid_argument("collineation: entry outside the field");
    if (det(f, raw) == 0) throw std::invalid_argument("collineation: singular matrix");
    Collineation c;
    c.m = raw;
    c.aut = static_cast<std::uint8_t>(aut);
    for (Fe e : c.m) {
        if (e == 0) continue;
        if (e != 1) {
            Fe s = f.inv(e);
            for (Fe& x : c.m) x = f.mul(s, x);
        }
        break;
    }
    return c;
}

Collineation identity_collineation() {
    Collineation c;
    c.m = {1, 0, 0, 0, 0, 1, 0, 0, 0, 0, 1, 0, 0, 0, 0, 1};
    return c;
}

Point apply(const Field& f, const Collineation& c, const Point& p) {
    Coords v;
    for (unsigned i = 0; i < 4; ++i) v[i] = aut_apply(f, c.aut, p.c[i]);
    Coords out{0, 0, 0, 0};
    for (unsigned i = 0; i < 4; ++i) {
        if (v[i] == 0) continue;
        const Fe* row = &c.m[i * 4];
        for (unsigned j = 0; j < 4; ++j) out[j] ^= f.mul(v[i], row[j]);
    }
    return normalize_point(f, out);
}

Collineation compose(const Field& f, const Collineation& a, const Collineation& b) {
    // sigma_b(sigma_a(p) * Ma) * Mb == sigma_{a+b}(p) * sigma_b(Ma) * Mb
    std::array<Fe, 16> m{};
    std::array<Fe, 16> ma = a.m;
    for (Fe& e : ma) e = aut_apply(f, b.aut, e);
    for (unsigned i = 0; i < 4; ++i)
        for (unsigned t = 0; t < 4; ++t) {
            if (ma[i * 4 + t] == 0) continue;
            for (unsigned j = 0; j < 4; ++j) m[i * 4 + j] ^= f.mul(ma[i * 4 + t], b.m[t * 4 + j]);
        }
    return make_collineation(f, m, (a.aut + b.aut) % (2 * f.k()));
}

namespace {

std::array<Fe, 16> invert_matrix(const Field& f, const std::array<Fe, 16>& m) {
    std::array<Fe, 16> a = m;
    std::array<Fe, 16> r = {1, 0, 0, 0, 0, 1, 0, 0, 0, 0, 1, 0, 0, 0, 0, 1};
    for (unsigned col = 0; col < 4; ++col) {
        unsigned piv = col;
        while (piv < 4 && a[piv * 4 + col] == 0) ++piv;
        if (piv == 4) throw std::invalid_argument("invert_matrix: singular");
        if (piv != col)
            for (unsigned j = 0; j < 4; ++j) {
                std::swap(a[piv * 4 + j], a[col * 4 + j]);
                std::swap(r[piv * 4 + j], r[col * 4 + j]);
            }
        Fe s = f.inv(a[col * 4 + col]);
        for (unsigned j = 0; j < 4; ++j) {
            a[col * 4 + j] = f.mul(s, a[col * 4 + j]);
            r[col * 4 + j] = f.mul(s, r[col * 4 + j]);
        }
        for (unsigned row = 0; row < 4; ++row) {
            if (row == col) continue;
            Fe c = a[row * 4 + col];
            if (c == 0) continue;
            for (unsigned j = 0; j < 4; ++j) {
                a[row * 4 + j] ^= f.mul(c, a[col * 4 + j]);
                r[row * 4 + j] ^= f.mul(c, r[col * 4 + j]);
            }
        }
    }
    return r;
}

} // namespace

Collineation inverse(const Field& f, const Collineation& c) {
    // (M, j)^-1 = (sigma^-j(M^-1), -j): then compose(c, inverse(c)) = id.
    std::array<Fe, 16> mi = invert_matrix(f, c.m);
    unsigned twok = 2 * f.k();
    unsigned jinv = (twok - c.aut) % twok;
    for (Fe& e : mi) e = aut_apply(f, jinv, e);
    return make_collineation(f, mi, jinv);
}

Collineation conjugate(const Field& f, const Collineation& g, const Collineation& by) {
    return compose(f, compose(f, inverse(f, by), g), by);
}

PointSet image_of_set(const Field& f, const Collineation& c, const PointSet& s) {
    PointSet out;
    out.label = s.label;
    out.pts.reserve(s.pts.size());
    for (PackedPoint pp : s.pts) out.pts.push_back(pack(apply(f, c, Point{unpack(pp)})));
    std::sort(out.pts.begin(), out.pts.end());
    out.pts.erase(std::unique(out.pts.begin(), out.pts.end()), out.pts.end());
    if (out.pts.size() != s.pts.size())
        throw std::logic_error("image_of_set: collineation not injective on the set");
    return out;
}

bool stabilizes(const Field& f, const Collineation& c, const PointSet& s) {
    for (PackedPoint pp : s.pts)
        if (!s.contains(pack(apply(f, c, Point{unpack(pp)})))) return false;
    return true;
}

Collineation make_phi(const Field& f, Fe s) {
    if (s >= f.qq() || !f.in_subfield(s)) throw std::invalid_argument("make_phi: s outside GF(q)");
    std::array<Fe, 16> m = {1, 0, 0, s, 0, 1, 0, 0, 0, 0, 1, 0, 0, 0, 0, 1};
    return make_collineation(f, m, 0);
}

Collineation make_psi(const Field& f, VarietyParams p, Fe g1, Fe g2) {
    validate_params(f, p);
    if (g1 >= f.qq() || g2 >= f.qq()) throw std::invalid_argument("make_psi: entry outside the field");
    Fe tb = f.trace(p.b);
    Fe top = static_cast<Fe>(f.mul(p.a, static_cast<Fe>(f.sqr(g1) ^ f.sqr(g2))) ^
                             f.mul(p.b, static_cast<Fe>(f.norm(g1) ^ f.norm(g2))));
    std::array<Fe, 16> m = {1, g1, g2, top,
                            0, 1,  0,  f.mul(tb, f.frob(g1)),
                            0, 0,  1,  f.mul(tb, f.frob(g2)),
                            0, 0,  0,  1};
    return make_collineation(f, m, 0);
}

Collineation make_mu(const Field& f, Fe delta) {
    if (delta == 0 || delta >= f.qq() || !f.in_subfield(delta))
        throw std::invalid_argument("make_mu: delta outside GF(q)*");
    std::array<Fe, 16> m = {1, 0, 0, 0, 0, delta, 0, 0, 0, 0, delta, 0, 0, 0, 0, f.sqr(delta)};
    return make_collineation(f, m, 0);
}

Collineation make_tau(const Field& f, Fe e) {
    if (e >= f.qq() || !f.in_subfield(e)) throw std::invalid_argument("make_tau: e outside GF(q)");
    Fe e1 = static_cast<Fe>(e ^ 1);
    std::array<Fe, 16> m = {1, 0, 0, 0, 0, e1, e, 0, 0, e, e1, 0, 0, 0, 0, 1};
    return make_collineation(f, m, 0);
}

Collineation make_sigma(const Field& f, unsigned j) {
    if (j >= 2 * f.k()) throw std::invalid_argument("make_sigma: exponent out of range");
    Collineation c = identity_collineation();
    c.aut = static_cast<std::uint8_t>(j);
    return c;
}

Collineation make_translation(const Field& f, VarietyParams p, Fe g1, Fe g2, Fe s) {
    if (!f.in_subfield(s)) throw std::invalid_argument("make_translation: s outside GF(q)");
    Collineation c = make_psi(f, p, g1, g2);
    c.m[3] ^= s; // equals compose(make_psi, make_phi(s))
    return c;
}

ClosureResult generate_group(const Field& f, const std::vector<Collineation>& gens,
                             std::size_t cap) {
    struct KeyHash {
        std::size_t operator()(const CollKey& k) const {
            std::uint64_t h = 1469598103934665603ull;
            for (std::uint8_t b : k) {
                h ^= b;
                h *= 1099511628211ull;
            }
            return static_cast<std::size_t>(h);
        }
    };
    ClosureResult res;
    std::unordered_set<CollKey, KeyHash> seen;
    std::vector<Collineation> queue;
    auto push = [&](const Collineation& c) {
        if (seen.insert(coll_key(c)).second) queue.push_back(c);
    };
    push(identity_collineation());
    for (const Collineation& g : gens) push(g);
    for (std::size_t head = 0; head < queue.size(); ++head) {
        if (cap != 0 && seen.size() > cap) {
            res.capped = true;
            break;
        }
        Collineation cur = queue[head]; // copy: queue may reallocate
        for (const Collineation& g : gens) push(compose(f, cur, g));
    }
    res.elems = std::move(queue);
    std::sort(res.elems.begin(), res.elems.end(),
              [](const Collineation& a, const Collineation& b) { return coll_key(a) < coll_key(b); });
    return res;
}

bool check_sharp_transitivity(const Field& f, const std::vector<Collineation>& group,
                              const std::vector<PackedPoint>& domain) {
    if (group.size() != domain.size() || domain.empty()) return false;
    const Point base{unpack(domain[0])};
    std::vector<PackedPoint> images;
    images.reserve(group.size());
    for (const Collineation& g : group) images.push_back(pack(apply(f, g, base)));
    std::sort(images.begin(), images.end());
    if (std::adjacent_find(images.begin(), images.end()) != images.end()) return false;
    std::vector<PackedPoint> dom = domain;
    std::sort(dom.begin(), dom.end());
    return images == dom;
}

std::string to_line(const Collineation& c) {
    std::ostringstream os;
    for (Fe e : c.m) os << static_cast<unsigned>(e) << " ";
    os << static_cast<unsigned>(c.aut);
    return os.str();
}

Collineation from_line(const Field& f, const std::string& line) {
    std::istringstream is(line);
    std::array<Fe, 16> m;
    unsigned v;
    for (unsigned i = 0; i < 16; ++i) {
        if (!(is >> v) || v >= f.qq()) throw std::runtime_error("collineation line: bad entry");
        m[i] = static_cast<Fe>(v);
    }
    if (!(is >> v)) throw std::runtime_error("collineation line: missing aut exponent");
    return make_collineation(f, m, v);
}

} // namespace qherm
