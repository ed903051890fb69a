#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "hypercount/field.hpp"

namespace hypercount {

// Exact rational with int64 numerator/denominator, always normalized with
// den > 0. Used for the floor/fractional-part bookkeeping where rounding
// errors are not an option.
struct Rat {
    long long num = 0;
    long long den = 1;

    static Rat of(long long n, long long d);
    Rat operator+(const Rat& o) const;
    Rat operator-(const Rat& o) const;
    Rat operator*(const Rat& o) const;
    bool operator==(const Rat&) const = default;
    long long floor() const;
    // fractional part in [0, 1)
    Rat frac() const;
    std::string str() const;
};

// Element of Z_q = Z_p[t]/(modulus), each coordinate stored mod p^M.
struct ZqElem {
    std::vector<uint64_t> c;
    bool operator==(const ZqElem&) const = default;
};

// A Q_p value: mantissa in Z_q times p^valuation. known_digits tracks how many
// base-p digits of the mantissa are certified after fixed-point shifts.
struct QpValue {
    ZqElem mantissa;
    int valuation = 0;
    int known_digits = 0;
};

struct RecognizedRational {
    long long num = 0;
    long long den = 1;
    QpValue raw;
    bool operator==(const RecognizedRational& o) const {
        return num == o.num && den == o.den;
    }
    std::string str() const {
        return den == 1 ? std::to_string(num) : std::to_string(num) + "/" + std::to_string(den);
    }
};

enum class PadicIdentityId {
    floor_lemma_d,
    floor_lemma_l,
    gamma_product_neg,
    gamma_product_pos,
    gross_koblitz_unit,
};

struct PadicIdentityParams {
    int d = 0; // floor_lemma_d divisor
    int l = 0; // floor_lemma_l multiplier
    int t = 0; // gamma_product block size
    long long j = 0;
    int i = 0;
};

// Closed-form values of 2G2[1/4,3/4; 0,1/2 | t]: +-1 at t = 1 by q mod 8,
// phi(2)(phi(1+a) + phi(1-a)) when (t-1)/t = a^2, and 0 otherwise. Needs only
// field arithmetic.
int g_closed_form(const FieldCtx& F, FqElem t);

// Truncated arithmetic in the unramified extension Z_q at precision p^M,
// Morita's gamma function over a checkpointed product sweep, Teichmuller
// lifts, and the p-adic hypergeometric sum. Immutable after init; all
// evaluations are pure.
class PadicCtx {
public:
    // Working-precision exponent. The default rule picks the smallest M that
    // certifies recognition of the value magnitudes the theorems produce
    // (|q * value| bounded by the Hasse bound, plus the fixed-point slack of
    // the hypergeometric accumulator), keeping the p^(M+4) stability re-check
    // affordable. Explicit M >= 2 overrides.
    static PadicCtx init(const FieldCtx& F, std::optional<int> M = std::nullopt);
    static int auto_precision(const FieldCtx& F);

    const FieldCtx& field() const { return *F_; }
    int M() const { return M_; }
    uint64_t p_power() const { return N_; } // p^M
    const std::vector<uint64_t>& lifted_modulus() const { return mod_; }

    // A fresh context over the same field at precision M + extra.
    PadicCtx with_extra_precision(int extra) const;

    // ---- scalar layer (Z_p residues mod p^M) ----

    // Morita gamma at the rational num/den (p must not divide den), evaluated
    // at the integer lift of num/den mod p^M via the defining product.
    uint64_t gamma_res(long long num, long long den) const;
    uint64_t gamma_res(const Rat& x) const { return gamma_res(x.num, x.den); }
    ZqElem gamma_p(long long num, long long den) const; // constant embedding

    uint64_t inv_mod(uint64_t a) const;
    long long balanced(uint64_t a, int digits) const;

    // ---- Z_q layer ----

    ZqElem zq_zero() const;
    ZqElem zq_one() const;
    ZqElem zq_const(uint64_t a) const;
    ZqElem zq_add(const ZqElem& a, const ZqElem& b) const;
    ZqElem zq_sub(const ZqElem& a, const ZqElem& b) const;
    ZqElem zq_mul(const ZqElem& a, const ZqElem& b) const;
    ZqElem zq_scale(const ZqElem& a, uint64_t s) const;
    ZqElem zq_pow(ZqElem base, unsigned long long e) const;
    bool zq_equal_mod(const ZqElem& a, const ZqElem& b, int digits) const;

    // Teichmuller lift: the unique (q-1)-th root of unity congruent to x mod p.
    ZqElem teichmuller(FqElem x) const;

    // ---- hypergeometric evaluation ----

    // McCarthy's nGn sum for rational parameter lists, recognized as a small
    // rational. bound < 0 selects the default 4q.
    RecognizedRational ngn(const std::vector<Rat>& upper, const std::vector<Rat>& lower,
                           FqElem t, long long bound = -1) const;

    int g_closed_form(FqElem t) const;

    static std::vector<Rat> g_upper() { return {Rat::of(1, 4), Rat::of(3, 4)}; }
    static std::vector<Rat> g_lower() { return {Rat::of(0, 1), Rat::of(1, 2)}; }
    static std::vector<Rat> half_upper() { return {Rat::of(1, 2), Rat::of(1, 2)}; }
    static std::vector<Rat> half_lower() { return {Rat::of(1, 4), Rat::of(3, 4)}; }

    RecognizedRational recognize(const QpValue& v, long long bound) const;

    bool identity_holds(PadicIdentityId id, const PadicIdentityParams& params) const;

private:
    PadicCtx() = default;

    const FieldCtx* F_ = nullptr;
    int M_ = 0;
    uint64_t N_ = 0; // p^M
    std::vector<uint64_t> mod_; // lifted modulus, r+1 coefficients
    std::vector<ZqElem> teich_; // per element encoding, index 0 unused

    // gamma sweep artifacts
    uint64_t ck_stride_ = 1;
    std::vector<uint64_t> ck_mont_; // montgomery prefix products at i * stride
    std::unordered_map<uint64_t, uint64_t> gamma_by_scaled_; // key u = x * 4(q-1)
    long long frac_den_ = 1; // 4(q-1)

    uint64_t mulmod(uint64_t a, uint64_t b) const {
        return static_cast<uint64_t>(static_cast<unsigned __int128>(a) * b % N_);
    }
    uint64_t addmod(uint64_t a, uint64_t b) const {
        uint64_t s = a + b;
        if (s >= N_ || s < a) s -= N_;
        return s;
    }
    uint64_t submod(uint64_t a, uint64_t b) const { return a >= b ? a - b : a + (N_ - b); }
    uint64_t powmod(uint64_t a, unsigned long long e) const;
    uint64_t lift_of(long long num, long long den) const;
    uint64_t gamma_at_lift(uint64_t n) const; // checkpoint walk
    void build_gamma_tables();
    QpValue normalize(ZqElem mantissa, int valuation, int known) const;
};

} // namespace hypercount
