#include "qherm/oarray.hpp"

#include <algorithm>
#include <istream>
#include <ostream>
#include <random>
#include <sstream>
#include <stdexcept>
#include <unordered_map>

#include "qherm/parallel.hpp"

namespace qherm {

std::vector<Collineation> build_elations(const Field& f, VarietyParams p) {
    validate_params(f, p);
    std::vector<Collineation> out;
    out.reserve(static_cast<std::size_t>(f.qq()) * f.qq());
    for (unsigned g1 = 0; g1 < f.qq(); ++g1)
        for (unsigned g2 = 0; g2 < f.qq(); ++g2) {
            // trace(g3) must equal tr(a(g1^2+g2^2)) + tr(b)(N(g1)+N(g2));
            // the coset representative with that trace is unique.
            Fe rhs = static_cast<Fe>(
                f.trace(f.mul(p.a, static_cast<Fe>(f.sqr(static_cast<Fe>(g1)) ^
                                                   f.sqr(static_cast<Fe>(g2))))) ^
                f.mul(f.trace(p.b), static_cast<Fe>(f.norm(static_cast<Fe>(g1)) ^
                                                    f.norm(static_cast<Fe>(g2)))));
            Fe g3 = f.coset_rep_with_trace(rhs);
            std::array<Fe, 16> m = {1, static_cast<Fe>(g1), static_cast<Fe>(g2), g3,
                                    0, 1, 0, 0,
                                    0, 0, 1, 0,
                                    0, 0, 0, 1};
            out.push_back(make_collineation(f, m, 0));
        }
    return out;
}

std::vector<std::array<Fe, 3>> build_domain_w0(const Field& f) {
    std::vector<Fe> zs = f.coset_reps();
    std::sort(zs.begin(), zs.end());
    std::vector<std::array<Fe, 3>> out;
    out.reserve(static_cast<std::size_t>(f.qq()) * f.qq() * zs.size());
    for (unsigned x = 0; x < f.qq(); ++x)
        for (unsigned y = 0; y < f.qq(); ++y)
            for (Fe z : zs) out.push_back({static_cast<Fe>(x), static_cast<Fe>(y), z});
    return out;
}

namespace {

Fe base_form(const Field& f, VarietyParams p, Fe x, Fe y, Fe z) {
    return static_cast<Fe>(
        f.trace(z) ^ f.trace(f.mul(p.a, static_cast<Fe>(f.sqr(x) ^ f.sqr(y)))) ^
        f.mul(f.trace(p.b), static_cast<Fe>(f.norm(x) ^ f.norm(y))));
}

} // namespace

Fe eval_form_matrix(const Field& f, VarietyParams p, const Collineation& g,
                    const std::array<Fe, 3>& w) {
    // Row vector (1,x,y,z) times the elation matrix; the first coordinate
    // stays 1 so the affine form applies directly to the image.
    Coords v{1, w[0], w[1], w[2]};
    Coords img{0, 0, 0, 0};
    for (unsigned i = 0; i < 4; ++i) {
        if (v[i] == 0) continue;
        for (unsigned j = 0; j < 4; ++j) img[j] ^= f.mul(v[i], g.m[i * 4 + j]);
    }
    if (img[0] != 1) throw std::invalid_argument("eval_form_matrix: map is not an affine elation");
    return base_form(f, p, img[1], img[2], img[3]);
}

Fe eval_form_closed(const Field& f, VarietyParams p, const std::array<Fe, 2>& g,
                    const std::array<Fe, 3>& w) {
    // Moving by the elation shifts the base value by tr(b)(tr(g1^q x) + tr(g2^q y)).
    Fe shift = f.mul(f.trace(p.b),
                     static_cast<Fe>(f.trace(f.mul(f.frob(g[0]), w[0])) ^
                                     f.trace(f.mul(f.frob(g[1]), w[1]))));
    return static_cast<Fe>(base_form(f, p, w[0], w[1], w[2]) ^ shift);
}

OrthogonalArray build_oa(const Field& f, VarietyParams p, unsigned threads) {
    validate_params(f, p);
    OrthogonalArray oa;
    const std::uint64_t q = f.q();
    oa.shape.runs = q * q * q * q * q;
    oa.shape.factors = static_cast<std::uint32_t>(q * q * q * q);
    oa.shape.levels = static_cast<std::uint32_t>(q);
    oa.shape.strength = 2;
    oa.shape.index = q * q * q;
    oa.params = p;
    oa.field_k = f.k();
    oa.modulus = f.modulus();
    oa.row_keys = build_domain_w0(f);
    const std::size_t n = oa.row_keys.size();
    if (n != oa.shape.runs) throw std::logic_error("build_oa: row domain size mismatch");

    oa.col_keys.reserve(oa.shape.factors);
    for (unsigned g1 = 0; g1 < f.qq(); ++g1)
        for (unsigned g2 = 0; g2 < f.qq(); ++g2)
            oa.col_keys.push_back({static_cast<Fe>(g1), static_cast<Fe>(g2)});

    // Row-independent precomputation: coordinates, their Frobenius images,
    // and the compacted base value of the form.
    std::vector<std::uint8_t> xs(n), ys(n), xq(n), yq(n), baserank(n);
    for (std::size_t i = 0; i < n; ++i) {
        const auto& w = oa.row_keys[i];
        xs[i] = w[0];
        ys[i] = w[1];
    }
    kern::map_bytes(f.frob_map(), xs.data(), xq.data(), n);
    kern::map_bytes(f.frob_map(), ys.data(), yq.data(), n);
    for (std::size_t i = 0; i < n; ++i) {
        const auto& w = oa.row_keys[i];
        baserank[i] = static_cast<std::uint8_t>(f.subfield_rank(base_form(f, p, w[0], w[1], w[2])));
    }

    // rank(tr(b) * s) as one linear byte map; inputs are always subfield
    // values, where the linear extension agrees with the true rank.
    kern::ByteMap rank_scale = [&] {
        std::uint8_t img[8] = {0};
        for (unsigned j = 0; j < 2 * f.k(); ++j)
            img[j] = f.rank_map()(f.mul(f.trace(p.b), static_cast<Fe>(1u << j)));
        return kern::ByteMap::from_basis(img);
    }();

    oa.data.assign(static_cast<std::size_t>(oa.shape.runs) * oa.shape.factors, 0);
    parallel_chunks(oa.col_keys.size(), threads, [&](unsigned, std::size_t lo, std::size_t hi) {
        std::vector<std::uint8_t> tmp(n);
        for (std::size_t cidx = lo; cidx < hi; ++cidx) {
            const auto [g1, g2] = oa.col_keys[cidx];
            std::uint8_t* col = oa.data.data() + cidx * n;
            // tmp = g1^q*x + g1*x^q + g2^q*y + g2*y^q  (= tr(g1^q x) + tr(g2^q y))
            kern::map_bytes(f.mul_map(f.frob(g1)), xs.data(), tmp.data(), n);
            kern::map_xor_bytes(f.mul_map(g1), xq.data(), tmp.data(), n);
            kern::map_xor_bytes(f.mul_map(f.frob(g2)), ys.data(), tmp.data(), n);
            kern::map_xor_bytes(f.mul_map(g2), yq.data(), tmp.data(), n);
            // col = baserank ^ rank(tr(b)*tmp); rank is linear so the xor of
            // compacted values equals the compacted value of the xor.
            std::copy(baserank.begin(), baserank.end(), col);
            kern::map_xor_bytes(rank_scale, tmp.data(), col, n);
        }
    });
    return oa;
}

namespace {

void check_pair(const OrthogonalArray& oa, std::uint32_t ca, std::uint32_t cb,
                std::vector<std::uint8_t>& keys, OAVerifyReport& rep) {
    const std::size_t n = oa.shape.runs;
    const unsigned v = oa.shape.levels;
    kern::fuse_shift_or(oa.data.data() + static_cast<std::size_t>(ca) * n,
                        oa.data.data() + static_cast<std::size_t>(cb) * n, 4, keys.data(), n);
    std::uint64_t hist[256] = {0};
    kern::histogram256(keys.data(), n, hist);
    for (unsigned sa = 0; sa < v; ++sa)
        for (unsigned sb = 0; sb < v; ++sb) {
            std::uint64_t cnt = hist[(sa << 4) | sb];
            if (cnt != rep.lambda) {
                ++rep.n_violations;
                if (rep.violations.size() < 64)
                    rep.violations.push_back({ca, cb, static_cast<std::uint8_t>(sa),
                                              static_cast<std::uint8_t>(sb), cnt});
            }
        }
    ++rep.pairs_checked;
}

OAVerifyReport verify_pairs(const OrthogonalArray& oa,
                            const std::vector<std::pair<std::uint32_t, std::uint32_t>>& pairs,
                            unsigned threads) {
    std::vector<OAVerifyReport> partial(resolve_threads(threads));
    for (auto& r : partial) r.lambda = oa.shape.index;
    parallel_chunks(pairs.size(), threads, [&](unsigned chunk, std::size_t lo, std::size_t hi) {
        std::vector<std::uint8_t> keys(oa.shape.runs);
        for (std::size_t i = lo; i < hi; ++i)
            check_pair(oa, pairs[i].first, pairs[i].second, keys, partial[chunk]);
    });
    OAVerifyReport rep;
    rep.lambda = oa.shape.index;
    for (const auto& p : partial) {
        rep.pairs_checked += p.pairs_checked;
        rep.n_violations += p.n_violations;
        for (const auto& v : p.violations)
            if (rep.violations.size() < 64) rep.violations.push_back(v);
    }
    rep.ok = rep.n_violations == 0;
    return rep;
}

} // namespace

OAVerifyReport verify_strength2_full(const OrthogonalArray& oa, unsigned threads) {
    std::vector<std::pair<std::uint32_t, std::uint32_t>> pairs;
    pairs.reserve(static_cast<std::size_t>(oa.shape.factors) * (oa.shape.factors - 1) / 2);
    for (std::uint32_t a = 0; a < oa.shape.factors; ++a)
        for (std::uint32_t b = a + 1; b < oa.shape.factors; ++b) pairs.push_back({a, b});
    return verify_pairs(oa, pairs, threads);
}

OAVerifyReport verify_strength2_sampled(const OrthogonalArray& oa, std::uint64_t n_pairs,
                                        std::uint64_t seed, unsigned threads) {
    std::mt19937_64 rng(seed);
    std::vector<std::pair<std::uint32_t, std::uint32_t>> pairs;
    pairs.reserve(n_pairs);
    const std::uint32_t k = oa.shape.factors;
    for (std::uint64_t i = 0; i < n_pairs; ++i) {
        // modulo draw: deterministic everywhere, bias < 2^-32 at our sizes
        std::uint32_t a = static_cast<std::uint32_t>(rng() % k);
        std::uint32_t b = static_cast<std::uint32_t>(rng() % (k - 1));
        if (b >= a) ++b;
        if (a > b) std::swap(a, b);
        pairs.push_back({a, b});
    }
    return verify_pairs(oa, pairs, threads);
}

bool check_simple(const OrthogonalArray& oa) {
    const std::uint64_t n = oa.shape.runs;
    std::unordered_map<std::uint64_t, std::vector<std::uint64_t>> buckets;
    buckets.reserve(n * 2);
    for (std::uint64_t r = 0; r < n; ++r) {
        std::uint64_t h = 1469598103934665603ull;
        for (std::uint32_t c = 0; c < oa.shape.factors; ++c) {
            h ^= oa.at(r, c);
            h *= 1099511628211ull;
        }
        auto& bucket = buckets[h];
        for (std::uint64_t other : bucket) {
            bool same = true;
            for (std::uint32_t c = 0; c < oa.shape.factors && same; ++c)
                same = oa.at(r, c) == oa.at(other, c);
            if (same) return false;
        }
        bucket.push_back(r);
    }
    return true;
}

std::string OAVerifyReport::to_text() const {
    std::ostringstream os;
    os << "pairs_checked=" << pairs_checked << " lambda=" << lambda
       << " violations=" << n_violations << " ok=" << (ok ? "true" : "false");
    return os.str();
}

void export_oa(std::ostream& os, const OrthogonalArray& oa) {
    os << oa.shape.runs << " " << oa.shape.factors << " " << oa.shape.levels << " "
       << oa.shape.strength << " " << oa.shape.index << "\n";
    os << "# q=" << oa.shape.levels << " a=" << static_cast<unsigned>(oa.params.a)
       << " b=" << static_cast<unsigned>(oa.params.b) << " modulus=" << oa.modulus << "\n";
    for (std::uint64_t r = 0; r < oa.shape.runs; ++r) {
        for (std::uint32_t c = 0; c < oa.shape.factors; ++c) {
            if (c) os << ' ';
            os << static_cast<unsigned>(oa.at(r, c));
        }
        os << '\n';
    }
}

OrthogonalArray import_oa(std::istream& is, const Field& f) {
    std::string line1, line2;
    if (!std::getline(is, line1) || !std::getline(is, line2))
        throw std::runtime_error("oa import: truncated header");
    OrthogonalArray oa;
    {
        std::istringstream ls(line1);
        unsigned t;
        if (!(ls >> oa.shape.runs >> oa.shape.factors >> oa.shape.levels >> t >> oa.shape.index) ||
            t != 2)
            throw std::runtime_error("oa import: bad shape line");
        oa.shape.strength = 2;
    }
    unsigned q = 0, a = 0, b = 0, modulus = 0;
    if (std::sscanf(line2.c_str(), "# q=%u a=%u b=%u modulus=%u", &q, &a, &b, &modulus) != 4)
        throw std::runtime_error("oa import: bad parameter line");
    if (q != f.q() || modulus != f.modulus())
        throw std::runtime_error("oa import: header does not match the active field");
    if (q != oa.shape.levels) throw std::runtime_error("oa import: level count != q");
    oa.params = {static_cast<Fe>(a), static_cast<Fe>(b)};
    validate_params(f, oa.params);
    oa.field_k = f.k();
    oa.modulus = modulus;
    oa.data.assign(static_cast<std::size_t>(oa.shape.runs) * oa.shape.factors, 0);
    for (std::uint64_t r = 0; r < oa.shape.runs; ++r) {
        for (std::uint32_t c = 0; c < oa.shape.factors; ++c) {
            unsigned sym;
            if (!(is >> sym) || sym >= oa.shape.levels)
                throw std::runtime_error("oa import: bad symbol");
            oa.data[static_cast<std::size_t>(c) * oa.shape.runs + r] =
                static_cast<std::uint8_t>(sym);
        }
    }
    // Row/column keys are a deterministic function of the field, so an
    // imported array regains them.
    oa.row_keys = build_domain_w0(f);
    oa.col_keys.clear();
    for (unsigned g1 = 0; g1 < f.qq(); ++g1)
        for (unsigned g2 = 0; g2 < f.qq(); ++g2)
            oa.col_keys.push_back({static_cast<Fe>(g1), static_cast<Fe>(g2)});
    if (oa.row_keys.size() != oa.shape.runs || oa.col_keys.size() != oa.shape.factors)
        throw std::runtime_error("oa import: shape does not match the field");
    return oa;
}

} // namespace qherm
