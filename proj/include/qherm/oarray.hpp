// Orthogonal array OA(q^5, q^4, q, 2) generated by evaluating the variety's
// affine membership form over a fixed transversal of affine points (rows)
// under a family of q^4 elation matrices (columns). Symbols are the q
// subfield values compacted to 0..q-1.
#pragma once

#include <cstdint>
#include <iosfwd>
#include <vector>

#include "qherm/collineation.hpp"

namespace qherm {

struct OAShape {
    std::uint64_t runs = 0;    // N = q^5
    std::uint32_t factors = 0; // k = q^4
    std::uint32_t levels = 0;  // v = q
    std::uint32_t strength = 2;
    std::uint64_t index = 0;   // lambda = q^3
};

struct OrthogonalArray {
    OAShape shape;
    VarietyParams params;
    unsigned field_k = 0;
    unsigned modulus = 0;
    // Column-major symbol storage: entry(r,c) = data[c*runs + r], value < q.
    std::vector<std::uint8_t> data;
    std::vector<std::array<Fe, 3>> row_keys;  // W0 triples (x,y,z), lex order
    std::vector<std::array<Fe, 2>> col_keys;  // elation parameters (g1,g2), lex order
    std::uint8_t at(std::uint64_t r, std::uint32_t c) const { return data[c * shape.runs + r]; }
};

// The q^4 elations: translation matrices whose (0,3) entry is the unique
// trace-coset representative making the map stabilize the variety.
std::vector<Collineation> build_elations(const Field& f, VarietyParams p);
// Row domain W0: x,y over GF(q^2), z over the trace coset representatives C,
// in lexicographic encoding order; q^5 triples starting at (0,0,0).
std::vector<std::array<Fe, 3>> build_domain_w0(const Field& f);

// Membership form F(1,x,y,z) = tr(z) + tr(a(x^2+y^2)) + tr(b)(N(x)+N(y)),
// evaluated after moving the point by the elation: once by literal matrix
// action, once by the expanded closed form. Both must agree everywhere.
Fe eval_form_matrix(const Field& f, VarietyParams p, const Collineation& g,
                    const std::array<Fe, 3>& w);
Fe eval_form_closed(const Field& f, VarietyParams p, const std::array<Fe, 2>& g,
                    const std::array<Fe, 3>& w);

OrthogonalArray build_oa(const Field& f, VarietyParams p, unsigned threads = 0);

struct OAViolation {
    std::uint32_t col_a = 0, col_b = 0;
    std::uint8_t sym_a = 0, sym_b = 0;
    std::uint64_t count = 0; // observed count != lambda
};
struct OAVerifyReport {
    bool ok = false;
    std::uint64_t pairs_checked = 0;
    std::uint64_t lambda = 0;
    std::uint64_t n_violations = 0;
    std::vector<OAViolation> violations; // first 64 in scan order
    std::string to_text() const;
};
// Full strength-2 check: every unordered column pair, every symbol pair
// occurs exactly lambda times.
OAVerifyReport verify_strength2_full(const OrthogonalArray& oa, unsigned threads = 0);
// Same per-pair check on n_pairs pseudo-random column pairs drawn from seed
// (mt19937_64; sampling is reproducible across platforms).
OAVerifyReport verify_strength2_sampled(const OrthogonalArray& oa, std::uint64_t n_pairs,
                                        std::uint64_t seed, unsigned threads = 0);
bool check_simple(const OrthogonalArray& oa); // no two identical rows

// Line 1: "N k v t lambda"; line 2: "# q=<q> a=<enc> b=<enc> modulus=<bits>";
// then N rows of k space-separated symbols in [0,v).
void export_oa(std::ostream& os, const OrthogonalArray& oa);
OrthogonalArray import_oa(std::istream& is, const Field& f); // header must match the field

} // namespace qherm
