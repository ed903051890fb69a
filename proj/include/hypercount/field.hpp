#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "hypercount/errors.hpp"

namespace hypercount {

// Element of F_q, stored as its canonical integer encoding sum(coeffs[i] * p^i).
// The encoding doubles as the index into the field's element list and as the
// total order used for hashing and deterministic iteration.
struct FqElem {
    uint32_t v = 0;
    auto operator<=>(const FqElem&) const = default;
};

// Fully tabulated finite field F_q, q = p^r with p an odd prime, built for
// desk-scale q (default cap 3000). Immutable after construction; every
// operation is a pure read, so a FieldCtx can be shared across threads.
class FieldCtx {
public:
    static constexpr int kDefaultSizeCap = 3000;

    // Deterministic construction: lexicographically least monic irreducible
    // modulus (coefficients compared low-degree first) and the least-encoded
    // multiplicative generator.
    static FieldCtx build(int p, int r, int size_cap = kDefaultSizeCap);

    int p() const { return p_; }
    int r() const { return r_; }
    uint32_t q() const { return q_; }

    // Monic modulus of degree r: r+1 coefficients, low degree first.
    const std::vector<int>& modulus() const { return modulus_; }
    FqElem generator() const { return generator_; }

    FqElem zero() const { return FqElem{0}; }
    FqElem one() const { return FqElem{1}; }

    // Embedding of an integer via the prime subfield (reduces mod p; negatives
    // map to p - |n| mod p).
    FqElem from_int(long long n) const;
    FqElem from_coeffs(const std::vector<int>& coeffs) const;
    std::vector<int> coeffs(FqElem x) const;

    FqElem add(FqElem x, FqElem y) const;
    FqElem sub(FqElem x, FqElem y) const { return add(x, neg(y)); }
    FqElem neg(FqElem x) const;
    FqElem mul(FqElem x, FqElem y) const;
    FqElem inv(FqElem x) const;
    FqElem div(FqElem x, FqElem y) const { return mul(x, inv(y)); }
    FqElem pow(FqElem x, long long e) const;

    // Discrete log with respect to the canonical generator; errors on 0.
    uint32_t dlog(FqElem x) const;
    // g^k for 0 <= k < q-1.
    FqElem exp(uint32_t k) const { return exp_table_[k % (q_ - 1)]; }

    // F_p-valued trace x + x^p + ... + x^(p^(r-1)).
    int trace(FqElem x) const { return trace_table_[x.v]; }

    // Quadratic character: 0 at zero, +1 on squares, -1 on non-squares.
    int quad_char(FqElem x) const;

    // Canonical square root: generator^(dlog/2) when dlog is even, 0 for 0,
    // nullopt for non-squares.
    std::optional<FqElem> sqrt(FqElem x) const;

    FqElem frobenius(FqElem x) const { return pow(x, p_); }

    bool is_zero(FqElem x) const { return x.v == 0; }

    std::string to_string(FqElem x) const;
    std::string modulus_string() const;

private:
    FieldCtx() = default;

    int p_ = 0;
    int r_ = 0;
    uint32_t q_ = 0;
    std::vector<int> modulus_;
    FqElem generator_{0};
    std::vector<FqElem> exp_table_;      // exp_table_[k] = g^k, k in [0, q-1)
    std::vector<uint32_t> dlog_table_;   // dlog_table_[x.v], x != 0
    std::vector<int> trace_table_;
    std::vector<uint32_t> add_table_;    // q*q entries when q <= kTableCap
    std::vector<uint32_t> mul_table_;
    static constexpr uint32_t kTableCap = 256;

    FqElem add_slow(FqElem x, FqElem y) const;
    FqElem mul_slow(FqElem x, FqElem y) const;
};

bool is_prime(long long n);

} // namespace hypercount
