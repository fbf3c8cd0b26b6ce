#include "qherm/field.hpp"

#include <algorithm>
#include <stdexcept>

namespace qherm {

namespace {

// Lexicographically least primitive irreducible polynomial of degree 2k over
// GF(2), as a bit pattern. Verified again at construction time, so a typo
// here fails loudly instead of producing a wrong field.
constexpr unsigned kModulus[5] = {0, 0x7, 0x13, 0x43, 0x11d};

// Carry-less multiply mod the degree-2k modulus, no tables. Used only to
// bootstrap the exp table.
Fe slow_mul(unsigned a, unsigned b, unsigned modulus, unsigned deg) {
    unsigned r = 0;
    while (b) {
        if (b & 1) r ^= a;
        b >>= 1;
        a <<= 1;
        if (a >> deg & 1) a ^= modulus;
    }
    return static_cast<Fe>(r);
}

} // namespace

Field::Field(unsigned k) {
    if (k < 1 || k > 4) throw std::invalid_argument("Field: k must be in [1,4]");
    k_ = k;
    q_ = 1u << k;
    twok_ = 2 * k;
    qq_ = 1u << twok_;
    modulus_ = kModulus[k];

    // exp/log by repeated multiplication with t. If the cycle visits all
    // qq-1 nonzero patterns before returning to 1, every nonzero element is
    // a power of t: that single fact proves the quotient ring is a field
    // (hence the modulus irreducible) and that t is primitive.
    exp_.assign(qq_ - 1, 0);
    log_.assign(qq_, 0);
    Fe x = 1;
    for (unsigned i = 0; i < qq_ - 1; ++i) {
        if (x == 1 && i != 0) throw std::logic_error("Field: modulus table entry is not primitive");
        exp_[i] = x;
        log_[x] = static_cast<std::uint16_t>(i);
        x = slow_mul(x, 2, modulus_, twok_);
    }
    if (x != 1) throw std::logic_error("Field: modulus table entry is not primitive");

    mul_.assign(qq_ << twok_, 0);
    for (unsigned a = 1; a < qq_; ++a)
        for (unsigned b = 1; b < qq_; ++b) {
            unsigned e = (log_[a] + log_[b]) % (qq_ - 1);
            mul_[(a << twok_) | b] = exp_[e];
        }

    inv_.assign(qq_, 0);
    for (unsigned a = 1; a < qq_; ++a) inv_[a] = exp_[(qq_ - 1 - log_[a]) % (qq_ - 1)];

    sqr_.assign(qq_, 0);
    frob_.assign(qq_, 0);
    trace_.assign(qq_, 0);
    norm_.assign(qq_, 0);
    for (unsigned a = 0; a < qq_; ++a) {
        Fe s = mul(static_cast<Fe>(a), static_cast<Fe>(a));
        sqr_[a] = s;
        Fe f = static_cast<Fe>(a);
        for (unsigned i = 0; i < k_; ++i) f = mul(f, f); // a^(2^k) = a^q
        frob_[a] = f;
        trace_[a] = static_cast<Fe>(a ^ f);
        norm_[a] = mul(static_cast<Fe>(a), f);
    }

    subfield_.clear();
    rank_.assign(qq_, 0xff);
    for (unsigned a = 0; a < qq_; ++a)
        if (frob_[a] == a) subfield_.push_back(static_cast<Fe>(a));
    // Already sorted by encoding; the i-th smallest element of a GF(2)-linear
    // subspace is the XOR of its echelon basis vectors selected by bits of i,
    // so rank (= index) is GF(2)-linear on the subfield.
    for (unsigned i = 0; i < subfield_.size(); ++i) rank_[subfield_[i]] = static_cast<std::uint8_t>(i);
    if (subfield_.size() != q_) throw std::logic_error("Field: subfield size mismatch");

    for (unsigned a = 0; a < qq_; ++a)
        if (trace_[a] == 1) {
            eta_ = static_cast<Fe>(a);
            break;
        }
    epsilon_ = 0;
    for (unsigned a = 2; a < qq_; ++a)
        if (trace_[a] == 1 && is_primitive(static_cast<Fe>(a))) {
            epsilon_ = static_cast<Fe>(a);
            break;
        }
    if (eta_ == 0 || epsilon_ == 0) throw std::logic_error("Field: no trace-1 element found");

    coset_reps_.clear();
    for (Fe s : subfield_) coset_reps_.push_back(mul(s, eta_));

    mul_maps_.resize(qq_);
    for (unsigned c = 0; c < qq_; ++c) {
        std::uint8_t img[8] = {0};
        for (unsigned j = 0; j < twok_; ++j) img[j] = mul(static_cast<Fe>(c), static_cast<Fe>(1u << j));
        mul_maps_[c] = kern::ByteMap::from_basis(img);
    }
    {
        std::uint8_t img[8] = {0};
        for (unsigned j = 0; j < twok_; ++j) img[j] = frob_[1u << j];
        frob_map_ = kern::ByteMap::from_basis(img);
        for (unsigned j = 0; j < twok_; ++j) img[j] = trace_[1u << j];
        trace_map_ = kern::ByteMap::from_basis(img);
    }
    {
        // Linear extension of subfield_rank: reduce each basis byte against
        // the echelon basis subfield_[1<<j] (distinct leading bits), collect
        // the selected ranks, drop any residue outside the subfield span.
        std::uint8_t img[8] = {0};
        for (unsigned t = 0; t < twok_; ++t) {
            unsigned x = 1u << t, r = 0;
            for (int j = static_cast<int>(k_) - 1; j >= 0; --j) {
                unsigned bas = subfield_[1u << j];
                unsigned lead = 1u << (31 - __builtin_clz(bas));
                if (x & lead) {
                    x ^= bas;
                    r |= 1u << j;
                }
            }
            img[t] = static_cast<std::uint8_t>(r);
        }
        rank_map_ = kern::ByteMap::from_basis(img);
        for (unsigned i = 0; i < q_; ++i)
            if (rank_map_(subfield_[i]) != i) throw std::logic_error("Field: rank map extension mismatch");
    }
}

Fe Field::inv(Fe a) const {
    if (a == 0) throw std::domain_error("Field::inv: zero has no inverse");
    return inv_[a];
}

Fe Field::pow(Fe a, std::uint64_t e) const {
    if (a == 0) return e == 0 ? 1 : 0;
    std::uint64_t le = (static_cast<std::uint64_t>(log_[a]) * (e % (qq_ - 1))) % (qq_ - 1);
    return exp_[le];
}

std::vector<Fe> Field::solve_trace(Fe beta) const {
    if (beta >= qq_ || !in_subfield(beta)) throw std::invalid_argument("solve_trace: beta outside GF(q)");
    std::vector<Fe> out;
    for (unsigned x = 0; x < qq_; ++x)
        if (trace_[x] == beta) out.push_back(static_cast<Fe>(x));
    return out;
}

std::vector<Fe> Field::solve_norm(Fe beta) const {
    if (beta >= qq_ || !in_subfield(beta)) throw std::invalid_argument("solve_norm: beta outside GF(q)");
    std::vector<Fe> out;
    for (unsigned x = 0; x < qq_; ++x)
        if (norm_[x] == beta) out.push_back(static_cast<Fe>(x));
    return out;
}

Fe Field::coset_rep_with_trace(Fe s) const {
    if (s >= qq_ || !in_subfield(s)) throw std::invalid_argument("coset_rep_with_trace: s outside GF(q)");
    return mul(s, eta_); // trace(s*eta) = s*trace(eta) = s for s in GF(q)
}

unsigned Field::subfield_rank(Fe a) const {
    if (a >= qq_ || rank_[a] == 0xff) throw std::invalid_argument("subfield_rank: element outside GF(q)");
    return rank_[a];
}

Fe Field::subfield_element(unsigned r) const {
    if (r >= q_) throw std::invalid_argument("subfield_element: rank out of range");
    return subfield_[r];
}

std::uint64_t Field::mult_order(Fe a) const {
    if (a == 0) throw std::domain_error("mult_order: zero");
    unsigned n = qq_ - 1;
    unsigned l = log_[a];
    // order = n / gcd(n, log a)
    unsigned x = n, y = l;
    while (y) {
        unsigned t = x % y;
        x = y;
        y = t;
    }
    return n / x;
}

bool Field::is_primitive(Fe a) const { return a != 0 && mult_order(a) == qq_ - 1; }

unsigned Field::dlog(Fe a) const {
    if (a == 0) throw std::domain_error("dlog: zero");
    return log_[a];
}

} // namespace qherm
