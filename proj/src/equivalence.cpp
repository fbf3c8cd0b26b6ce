#include "qherm/equivalence.hpp"

#include <algorithm>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace qherm {

namespace {

Fe aut_pow(const Field& f, Fe x, unsigned j) {
    for (unsigned i = 0; i < j; ++i) x = f.sqr(x);
    return x;
}

// The stabilizer-shaped block matrix: rows (1,0,0,0), (0,d,e,0),
// (0,l1*e,l2*d,0), (0,0,0,c).
std::array<Fe, 16> family_matrix(const Field& f, Fe d, Fe e, Fe l1, Fe l2, Fe c) {
    return {1, 0, 0, 0, 0, d, e, 0, 0, f.mul(l1, e), f.mul(l2, d), 0, 0, 0, 0, c};
}

// Solves the two scale conditions for a candidate (j, d, e, l1, l2):
// c = a_to*(d+e)^2 / a_from^sigma must be in GF(q)*, and
// u = b_to + c*b_from^sigma/(N(d)+N(e)) must be in GF(q).
// Returns the collineation when both hold.
std::optional<Collineation> try_candidate(const Field& f, VarietyParams from, VarietyParams to,
                                          unsigned j, Fe d, Fe e, Fe l1, Fe l2) {
    Fe sum = static_cast<Fe>(d ^ e);
    if (sum == 0) return std::nullopt;
    Fe den2 = f.sqr(sum);
    Fe denN = static_cast<Fe>(f.norm(d) ^ f.norm(e));
    if (denN == 0) return std::nullopt;
    Fe aj = aut_pow(f, from.a, j);
    Fe bj = aut_pow(f, from.b, j);
    Fe c = f.mul(f.mul(to.a, den2), f.inv(aj));
    if (c == 0 || !f.in_subfield(c)) return std::nullopt;
    Fe u = static_cast<Fe>(to.b ^ f.mul(f.mul(c, bj), f.inv(denN)));
    if (!f.in_subfield(u)) return std::nullopt;
    return make_collineation(f, family_matrix(f, d, e, l1, l2, c), j);
}

std::vector<Fe> norm_one_elements(const Field& f) { return f.solve_norm(1); }

} // namespace

bool verify_witness(const Field& f, const EquivalenceWitness& w) {
    PointSet src = build_m_variety(f, w.source);
    PointSet tgt = build_m_variety(f, w.target);
    try {
        return image_of_set(f, w.map, src).pts == tgt.pts;
    } catch (const std::logic_error&) {
        return false; // map not injective on the set: certainly not a witness
    }
}

EquivalenceWitness reduce_to_canonical(const Field& f, VarietyParams p) {
    validate_params(f, p);
    const Fe eps = f.epsilon();
    // b = b0 + eps*b1 over the basis {1, eps}; trace(eps) == 1 makes the
    // coefficients b1 = trace(b), b0 = b + eps*b1, both in GF(q).
    Fe b1 = f.trace(p.b);
    Fe b0 = static_cast<Fe>(p.b ^ f.mul(eps, b1));
    if (!f.in_subfield(b0) || b1 == 0) throw std::logic_error("reduce_to_canonical: bad split");
    Fe d = f.solve_norm(b1).front(); // least element of norm b1
    Fe a2 = f.mul(p.a, f.inv(f.sqr(d)));
    EquivalenceWitness w;
    w.source = p;
    w.target = {a2, eps};
    w.case_tag = "I";
    w.map = make_collineation(f, family_matrix(f, d, 0, 1, 1, 1), 0);
    if (!verify_witness(f, w)) throw std::logic_error("reduce_to_canonical: witness failed verification");
    return w;
}

std::optional<EquivalenceWitness> find_equivalence(const Field& f, VarietyParams from,
                                                   VarietyParams to) {
    validate_params(f, from);
    validate_params(f, to);
    const unsigned qq = f.qq();
    const std::vector<Fe> n1 = norm_one_elements(f);
    auto finish = [&](const Collineation& c, const char* tag) -> std::optional<EquivalenceWitness> {
        EquivalenceWitness w{from, to, tag, c};
        if (verify_witness(f, w)) return w;
        return std::nullopt;
    };
    for (unsigned j = 0; j < 2 * f.k(); ++j) {
        // case I: e = 0, lambda2 forced to 1, lambda1 immaterial
        for (unsigned d = 1; d < qq; ++d)
            if (auto c = try_candidate(f, from, to, j, static_cast<Fe>(d), 0, 1, 1))
                if (auto w = finish(*c, "I")) return w;
        // case II: d = 0, lambda1 forced to 1
        for (unsigned e = 1; e < qq; ++e)
            if (auto c = try_candidate(f, from, to, j, 0, static_cast<Fe>(e), 1, 1))
                if (auto w = finish(*c, "II")) return w;
        // case III: lambda1 = lambda2 = 1, d = alpha*e with alpha in GF(q)\{0,1}
        for (unsigned e = 1; e < qq; ++e)
            for (Fe alpha : f.subfield()) {
                if (alpha == 0 || alpha == 1) continue;
                Fe d = f.mul(alpha, static_cast<Fe>(e));
                if (auto c = try_candidate(f, from, to, j, d, static_cast<Fe>(e), 1, 1))
                    if (auto w = finish(*c, "III")) return w;
            }
        // case IV: lambda1, lambda2 norm-1, distinct, both != 1,
        // d/e = (1+lambda1)/(1+lambda2)
        for (unsigned e = 1; e < qq; ++e)
            for (Fe l1 : n1) {
                if (l1 == 1) continue;
                for (Fe l2 : n1) {
                    if (l2 == 1 || l2 == l1) continue;
                    Fe ratio = f.mul(static_cast<Fe>(1 ^ l1), f.inv(static_cast<Fe>(1 ^ l2)));
                    Fe d = f.mul(ratio, static_cast<Fe>(e));
                    if (auto c = try_candidate(f, from, to, j, d, static_cast<Fe>(e), l1, l2))
                        if (auto w = finish(*c, "IV")) return w;
                }
            }
    }
    return std::nullopt;
}

namespace {

// Closed-form witness between two canonical pairs (alpha, eps), (alpha2, eps).
std::optional<EquivalenceWitness> canonical_join(const Field& f, Fe alpha, Fe alpha2) {
    const Fe eps = f.epsilon();
    VarietyParams from{alpha, eps}, to{alpha2, eps};
    EquivalenceWitness w;
    w.source = from;
    w.target = to;
    if (alpha == alpha2) {
        w.case_tag = "I";
        w.map = identity_collineation();
        return w;
    }
    const unsigned q = f.q();
    Fe r = f.mul(alpha2, f.inv(alpha));
    if (f.norm(r) == 1) {
        // case I with c = N(d): solving d^(q-1) = r via discrete logs;
        // N(r) = 1 makes dlog(r) divisible by q-1.
        unsigned lr = f.dlog(r);
        if (lr % (q - 1) != 0) return std::nullopt;
        Fe d = f.pow(f.omega(), lr / (q - 1));
        Fe c = f.norm(d);
        w.case_tag = "I";
        w.map = make_collineation(f, family_matrix(f, d, 0, 1, 1, c), 0);
        if (!verify_witness(f, w)) return std::nullopt;
        return w;
    }
    // case IV: m^2 = r; for a norm-1 lambda1 != 1 solve
    // lambda2^2 + (1+N(m))tr(lambda1) lambda2 + 1 = 0, then d/e = beta =
    // (1+lambda1)/(1+lambda2) and e^(q-1) = m^2 (1+beta)^2 / (1+N(beta)).
    Fe m = f.sqrt(r);
    for (Fe l1 : norm_one_elements(f)) {
        if (l1 == 1) continue;
        Fe t = f.mul(static_cast<Fe>(1 ^ f.norm(m)), f.trace(l1));
        if (t == 0) continue;
        // substitute l2 = t*y: y^2 + y = 1/t^2
        Fe c0 = f.inv(f.sqr(t));
        Fe l2 = 0;
        bool found = false;
        for (unsigned y = 0; y < f.qq(); ++y) {
            if (static_cast<Fe>(f.sqr(static_cast<Fe>(y)) ^ y) != c0) continue;
            Fe cand = f.mul(t, static_cast<Fe>(y));
            if (f.norm(cand) == 1 && cand != 1 && cand != l1 && (!found || cand < l2)) {
                l2 = cand;
                found = true;
            }
        }
        if (!found) continue;
        Fe beta = f.mul(static_cast<Fe>(1 ^ l1), f.inv(static_cast<Fe>(1 ^ l2)));
        Fe nb1 = static_cast<Fe>(1 ^ f.norm(beta));
        if (nb1 == 0) continue;
        Fe wgt = f.mul(f.mul(f.sqr(m), f.sqr(static_cast<Fe>(1 ^ beta))), f.inv(nb1));
        if (wgt == 0 || f.norm(wgt) != 1) continue;
        unsigned lw = f.dlog(wgt);
        if (lw % (q - 1) != 0) continue;
        Fe e = f.pow(f.omega(), lw / (q - 1));
        Fe d = f.mul(beta, e);
        Fe c = static_cast<Fe>(f.norm(d) ^ f.norm(e));
        if (c == 0 || !f.in_subfield(c)) continue;
        w.case_tag = "IV";
        w.map = make_collineation(f, family_matrix(f, d, e, l1, l2, c), 0);
        if (verify_witness(f, w)) return w;
    }
    return std::nullopt;
}

} // namespace

std::optional<EquivalenceWitness> find_equivalence_fast(const Field& f, VarietyParams from,
                                                        VarietyParams to) {
    EquivalenceWitness w1 = reduce_to_canonical(f, from);
    EquivalenceWitness w2 = reduce_to_canonical(f, to);
    auto join = canonical_join(f, w1.target.a, w2.target.a);
    if (!join) return std::nullopt;
    EquivalenceWitness w;
    w.source = from;
    w.target = to;
    w.case_tag = "canonical-chain";
    w.map = compose(f, compose(f, w1.map, join->map), inverse(f, w2.map));
    if (!verify_witness(f, w)) return std::nullopt;
    return w;
}

std::size_t parameter_class_count(const Field& f) {
    std::vector<VarietyParams> params = all_valid_params(f);
    std::vector<Fe> canon;
    canon.reserve(params.size());
    for (VarietyParams p : params) canon.push_back(reduce_to_canonical(f, p).target.a);
    std::vector<Fe> reps = canon;
    std::sort(reps.begin(), reps.end());
    reps.erase(std::unique(reps.begin(), reps.end()), reps.end());
    // union-find over the canonical representatives
    std::map<Fe, Fe> parent;
    for (Fe r : reps) parent[r] = r;
    auto find_root = [&](Fe x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    };
    const Fe eps = f.epsilon();
    for (std::size_t i = 0; i < reps.size(); ++i)
        for (std::size_t j = i + 1; j < reps.size(); ++j) {
            Fe ri = find_root(reps[i]), rj = find_root(reps[j]);
            if (ri == rj) continue;
            if (find_equivalence(f, {reps[i], eps}, {reps[j], eps})) parent[ri] = rj;
        }
    std::size_t classes = 0;
    for (Fe r : reps)
        if (find_root(r) == r) ++classes;
    return classes;
}

std::vector<Collineation> stabilizer_generators(const Field& f, VarietyParams p, bool semilinear) {
    validate_params(f, p);
    std::vector<Collineation> gens;
    for (Fe s : f.subfield()) gens.push_back(make_phi(f, s));
    for (unsigned j = 0; j < 2 * f.k(); ++j) {
        Fe e = static_cast<Fe>(1u << j);
        gens.push_back(make_psi(f, p, e, 0));
        gens.push_back(make_psi(f, p, 0, e));
    }
    for (Fe e : f.subfield()) gens.push_back(make_tau(f, e));
    for (Fe d : f.subfield())
        if (d != 0) gens.push_back(make_mu(f, d));
    if (semilinear) {
        // sigma (x -> x^4, order k) stabilizes the canonical variety; its
        // conjugate by any witness onto M(a,b) stabilizes M(a,b).
        Collineation sigma = make_sigma(f, 2 % (2 * f.k()));
        auto beta = find_equivalence(f, {1, f.epsilon()}, p);
        if (!beta)
            throw std::runtime_error("stabilizer_generators: no witness from the canonical pair");
        gens.push_back(conjugate(f, sigma, beta->map));
    }
    return gens;
}

void write_witness(std::ostream& os, const EquivalenceWitness& w) {
    os << static_cast<unsigned>(w.source.a) << " " << static_cast<unsigned>(w.source.b) << " "
       << static_cast<unsigned>(w.target.a) << " " << static_cast<unsigned>(w.target.b) << " "
       << w.case_tag << "\n"
       << to_line(w.map) << "\n";
}

EquivalenceWitness read_witness(std::istream& is, const Field& f) {
    std::string header, map_line;
    if (!std::getline(is, header) || !std::getline(is, map_line))
        throw std::runtime_error("witness: truncated input");
    std::istringstream hs(header);
    unsigned sa, sb, ta, tb;
    std::string tag;
    if (!(hs >> sa >> sb >> ta >> tb >> tag)) throw std::runtime_error("witness: bad header line");
    EquivalenceWitness w;
    w.source = {static_cast<Fe>(sa), static_cast<Fe>(sb)};
    w.target = {static_cast<Fe>(ta), static_cast<Fe>(tb)};
    w.case_tag = tag;
    w.map = from_line(f, map_line);
    validate_params(f, w.source);
    validate_params(f, w.target);
    return w;
}

} // namespace qherm
