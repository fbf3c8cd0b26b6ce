// Semilinear collineations of PG(3,q^2): an invertible 4x4 matrix over
// GF(q^2) plus a field-automorphism exponent. A collineation acts on row
// vectors as v -> normalize(sigma(v) * M) with sigma = (x -> x^(2^aut))
// applied first. Matrices are canonically scaled (first nonzero entry in
// row-major order is 1) so equal maps compare equal entrywise.
#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "qherm/variety.hpp"

namespace qherm {

struct Collineation {
    std::array<Fe, 16> m{}; // row-major
    std::uint8_t aut = 0;   // 0 <= aut < 2k
    friend bool operator==(const Collineation&, const Collineation&) = default;
};

// 17-byte identity key (matrix then aut); total order for deterministic output.
using CollKey = std::array<std::uint8_t, 17>;
CollKey coll_key(const Collineation& c);

// Canonicalizes the scale; throws std::invalid_argument if the matrix is
// singular or the exponent is out of range.
Collineation make_collineation(const Field& f, const std::array<Fe, 16>& raw, unsigned aut);
Collineation identity_collineation();

Point apply(const Field& f, const Collineation& c, const Point& p);
// compose(a, b) acts as "a first, then b":
// apply(compose(a,b), p) == apply(b, apply(a, p)) for all p.
Collineation compose(const Field& f, const Collineation& a, const Collineation& b);
Collineation inverse(const Field& f, const Collineation& c);
// by^-1 then g then by.
Collineation conjugate(const Field& f, const Collineation& g, const Collineation& by);

PointSet image_of_set(const Field& f, const Collineation& c, const PointSet& s);
bool stabilizes(const Field& f, const Collineation& c, const PointSet& s);

Fe det(const Field& f, const std::array<Fe, 16>& m);

// Generator families of the variety stabilizer. Domain checks throw
// std::invalid_argument.
Collineation make_phi(const Field& f, Fe s);                        // s in GF(q); adds s*J to Z
Collineation make_psi(const Field& f, VarietyParams p, Fe g1, Fe g2); // affine translations
Collineation make_mu(const Field& f, Fe delta);                     // delta in GF(q)*; diag(1,d,d,d^2)
Collineation make_tau(const Field& f, Fe e);                        // e in GF(q); swaps into X+Y block
Collineation make_sigma(const Field& f, unsigned j);                // identity matrix, aut = j
// psi composed with phi: the (0,3) entry gains +s. The q^5 maps
// {make_translation(g1,g2,s)} form the sharply transitive family on the
// affine points of the variety.
Collineation make_translation(const Field& f, VarietyParams p, Fe g1, Fe g2, Fe s);

struct ClosureResult {
    std::vector<Collineation> elems; // sorted by coll_key
    bool capped = false;             // hit the cap before closing
};
// Breadth-first closure under right-composition by the generators. The result
// is generator-order independent (sorted); cap = 0 means no cap.
ClosureResult generate_group(const Field& f, const std::vector<Collineation>& gens,
                             std::size_t cap = 0);

// True iff |group| == |domain| and the images of domain[0] under the group
// are pairwise distinct and exactly the domain (for a group acting on the
// domain this is equivalent to the action being sharply transitive).
bool check_sharp_transitivity(const Field& f, const std::vector<Collineation>& group,
                              const std::vector<PackedPoint>& domain);

// One line of 17 decimal integers: 16 matrix entries row-major, then aut.
std::string to_line(const Collineation& c);
Collineation from_line(const Field& f, const std::string& line);

} // namespace qherm
