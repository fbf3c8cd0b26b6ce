// Constructive projective equivalence between members of the variety family.
// Two parameter pairs are equivalent iff some semilinear collineation maps
// one point set onto the other; the searches below return an explicit
// witness map, always verified against the actual point sets.
#pragma once

#include <iosfwd>
#include <optional>

#include "qherm/collineation.hpp"

namespace qherm {

struct EquivalenceWitness {
    VarietyParams source;
    VarietyParams target;
    std::string case_tag; // "I".."IV" for direct search, "canonical-chain" otherwise
    Collineation map;     // image_of_set(map, M(source)) == M(target)
};

// Maps (a,b) to the canonical pair (a', epsilon) with a diagonal witness:
// write b = b0 + epsilon*b1 over GF(q), pick the least d with N(d) = b1;
// then diag(1,d,d,1) sends M(a,b) to M(a/d^2, epsilon). Verified on
// construction (throws std::logic_error if the image check fails).
EquivalenceWitness reduce_to_canonical(const Field& f, VarietyParams p);

// Deterministic first-hit search over the stabilizer-normalized family:
// automorphism exponents ascending, cases I..IV, matrix entries in encoding
// order; the two scale parameters are solved per candidate rather than
// enumerated. Every hit is verified by mapping the full point set. Returns
// nullopt only if no member of the family works (which would contradict the
// one-orbit structure of the family; callers treat it as a failure).
std::optional<EquivalenceWitness> find_equivalence(const Field& f, VarietyParams from,
                                                   VarietyParams to);

// Constructive fast path: reduce both sides to canonical pairs, join the
// canonical pairs by a closed-form case I/III/IV solution, and chain the
// three maps. Cross-checked against find_equivalence in the tests.
std::optional<EquivalenceWitness> find_equivalence_fast(const Field& f, VarietyParams from,
                                                        VarietyParams to);

bool verify_witness(const Field& f, const EquivalenceWitness& w);

// Generating set of the variety stabilizer: phi_s over GF(q), psi over a
// basis of GF(q^2) in each slot, tau_e over GF(q), mu_d over GF(q)*. With
// semilinear set, appends sigma^beta where sigma is the exponent-2
// automorphism collineation and beta witnesses M(1,epsilon) -> M(a,b).
// Lives here rather than in the collineation module because beta comes from
// find_equivalence.
std::vector<Collineation> stabilizer_generators(const Field& f, VarietyParams p, bool semilinear);

// Number of projective-equivalence classes among all valid (a,b): reduces
// every pair to canonical form, then joins canonical representatives
// pairwise with find_equivalence.
std::size_t parameter_class_count(const Field& f);

// line 1: "<src a> <src b> <tgt a> <tgt b> <case tag>", line 2: the map in
// collineation line format.
void write_witness(std::ostream& os, const EquivalenceWitness& w);
EquivalenceWitness read_witness(std::istream& is, const Field& f);

} // namespace qherm
