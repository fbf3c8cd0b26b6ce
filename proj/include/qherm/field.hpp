// Arithmetic for the quadratic extension pair GF(q) inside GF(q^2), q = 2^k,
// k = 1..4. Elements are stored as polynomial-basis bit patterns (uint8), so
// addition is XOR; everything else is table-driven.
#pragma once

#include <cstdint>
#include <vector>

#include "qherm/kernels.hpp"

namespace qherm {

using Fe = std::uint8_t; // field element, bit-pattern encoding, value < q^2

class Field {
public:
    // Throws std::invalid_argument unless 1 <= k <= 4. Construction verifies
    // that the built-in modulus really is primitive (the exp table must cycle
    // through all q^2-1 nonzero patterns), so a corrupted table cannot yield
    // a silently wrong field.
    explicit Field(unsigned k);

    unsigned k() const { return k_; }
    unsigned q() const { return q_; }
    unsigned qq() const { return qq_; }
    // Modulus bit pattern of degree 2k, e.g. 7 = t^2+t+1 for k=1. The table
    // holds the lexicographically least primitive irreducible per degree.
    unsigned modulus() const { return modulus_; }

    // Distinguished elements. omega is the residue class of t, primitive by
    // the modulus choice. eta is the least element with trace 1; epsilon is
    // the least primitive element with trace 1 (used as the canonical second
    // parameter of the variety family).
    Fe omega() const { return 2; }
    Fe eta() const { return eta_; }
    Fe epsilon() const { return epsilon_; }

    Fe add(Fe a, Fe b) const { return a ^ b; }
    Fe mul(Fe a, Fe b) const { return mul_[(static_cast<unsigned>(a) << twok_) | b]; }
    Fe inv(Fe a) const; // throws std::domain_error on 0
    Fe pow(Fe a, std::uint64_t e) const;
    Fe sqr(Fe a) const { return sqr_[a]; }
    Fe frob(Fe a) const { return frob_[a]; } // a^q, the involution of the pair
    Fe trace(Fe a) const { return trace_[a]; } // a + a^q, lands in GF(q)
    Fe norm(Fe a) const { return norm_[a]; }   // a^(q+1), lands in GF(q)
    bool in_subfield(Fe a) const { return frob_[a] == a; }

    // All x with trace(x) == beta, sorted by encoding; exactly q of them.
    // Throws std::invalid_argument if beta is outside GF(q).
    std::vector<Fe> solve_trace(Fe beta) const;
    // All x with norm(x) == beta, sorted; q+1 solutions for beta in GF(q)*,
    // just {0} for beta == 0. Throws if beta is outside GF(q).
    std::vector<Fe> solve_norm(Fe beta) const;

    // Trace coset representatives C = { s*eta : s in GF(q) }, ordered by the
    // encoding of s; trace restricted to C is a bijection onto GF(q).
    const std::vector<Fe>& coset_reps() const { return coset_reps_; }
    Fe coset_rep_with_trace(Fe s) const; // the unique c in C with trace(c)==s

    // GF(q) as a sorted list plus the rank bijection GF(q) <-> [0, q) used to
    // compact subfield symbols. Rank is GF(2)-linear in the encoding.
    const std::vector<Fe>& subfield() const { return subfield_; }
    unsigned subfield_rank(Fe a) const; // throws if a is not in GF(q)
    Fe subfield_element(unsigned r) const;

    std::uint64_t mult_order(Fe a) const; // throws on 0
    bool is_primitive(Fe a) const;
    unsigned dlog(Fe a) const; // discrete log base omega; throws on 0
    Fe sqrt(Fe a) const { return pow(a, qq_ >> 1); } // squaring is bijective

    // Bulk-kernel views. mul_map(c) is x -> c*x; rank_map is a GF(2)-linear
    // extension of subfield_rank to the whole byte range (only ever applied
    // to subfield values by callers, but linear everywhere so the nibble
    // decomposition is valid).
    const kern::ByteMap& mul_map(Fe c) const { return mul_maps_[c]; }
    const kern::ByteMap& frob_map() const { return frob_map_; }
    const kern::ByteMap& trace_map() const { return trace_map_; }
    const kern::ByteMap& rank_map() const { return rank_map_; }

private:
    unsigned k_, q_, qq_, twok_, modulus_;
    Fe eta_ = 0, epsilon_ = 0;
    std::vector<Fe> mul_, inv_, sqr_, frob_, trace_, norm_;
    std::vector<Fe> exp_;          // exp_[i] = omega^i, i in [0, qq-1)
    std::vector<std::uint16_t> log_; // log_[exp_[i]] = i; log_[0] unused
    std::vector<Fe> subfield_;
    std::vector<std::uint8_t> rank_; // 0xff marks non-subfield encodings
    std::vector<Fe> coset_reps_;
    std::vector<kern::ByteMap> mul_maps_;
    kern::ByteMap frob_map_, trace_map_, rank_map_;
};

} // namespace qherm
