#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "hypercount/field.hpp"
#include "hypercount/padic.hpp"

namespace hypercount {

// Coefficients of a y^2 + b x^2 + c xy = d + e x^2 y^2 + f x^3 y, all nonzero.
struct CurveParams {
    FqElem a, b, c, d, e, f;
};

// y^2 - beta x^2 + alpha xy = k^2 (1 + ell (y^2 + alpha xy) x^2) with ell and
// (alpha^2 + 4 beta)/ell non-squares.
struct EdwardsParams {
    FqElem alpha, beta, k, ell;
};

// y^2 = x^3 + h x^2 + g x with h, g nonzero.
struct EllipticParams {
    FqElem h, g;
};

enum class GPath { fast, padic, both };

enum class Family { mt1, mt6, cor_1_4, cor_1_5, cor_1_6, cor_2 };

const char* family_name(Family f);
std::optional<Family> family_from_name(const std::string& name);

struct CountResult {
    long long count = 0;
    std::vector<std::pair<std::string, long long>> terms;
};

void validate_curve(const FieldCtx& F, const CurveParams& cp);
bool af_eq_ce(const FieldCtx& F, const CurveParams& cp);
FqElem discriminant(const FieldCtx& F, const CurveParams& cp); // c^2 - 4ab

// chi4(x) + conj(chi4)(x) for the canonical order-4 character, in {-2, 0, 2}.
// Requires q = 1 mod 4 and x != 0. conj_choice swaps chi4 for its inverse.
int chi4_pair(const FieldCtx& F, FqElem x, bool conj_choice = false);

// Exhaustive O(q^2) count of affine points; the oracle everything else is
// measured against.
long long brute_count(const FieldCtx& F, const CurveParams& cp);

// Character-sum formula for af = ce, c^2 - 4ab != 0. The G values come from
// the closed form, the p-adic sum, or both (cross-checked per term).
CountResult mt1_count(const FieldCtx& F, const CurveParams& cp, GPath g_path = GPath::fast,
                      const PadicCtx* P = nullptr);

// p-adic formula for af = ce, c^2 = 4ab.
CountResult mt6_count(const FieldCtx& F, const PadicCtx& P, const CurveParams& cp);

// Closed forms specialized from the two formulas above.
long long cor_1_4_count(const FieldCtx& F, const CurveParams& cp);
long long cor_1_6_count(const FieldCtx& F, const CurveParams& cp);

CurveParams edwards_to_curve(const FieldCtx& F, const EdwardsParams& ep);
void validate_edwards(const FieldCtx& F, const EdwardsParams& ep);
// Point count of the generalized twisted Edwards curve via its G-value form.
long long cor_1_5_count(const FieldCtx& F, const EdwardsParams& ep);

long long ec_affine_count(const FieldCtx& F, const EllipticParams& ep);
long long trace_of_frobenius(const FieldCtx& F, const EllipticParams& ep);

// q phi(-hg) 2G2[1/2,1/2; 1/4,3/4 | 4g/h^2], an exact integer.
long long trace_formula_value(const FieldCtx& F, const PadicCtx& P, const EllipticParams& ep);

// trace_of_frobenius equals trace_formula_value, checked exactly.
bool bs1_trace_check(const FieldCtx& F, const PadicCtx& P, const EllipticParams& ep);

// The two-trace expression for degenerate-discriminant curves with c^2 g = h^2 d e.
long long cor2_formula_value(const FieldCtx& F, const CurveParams& cp, const EllipticParams& ep);

// Brute count of the curve against the two-trace expression.
bool cor2_check(const FieldCtx& F, const CurveParams& cp, const EllipticParams& ep);

struct SampledParams {
    CurveParams curve;
    std::optional<EdwardsParams> edwards;
    std::optional<EllipticParams> elliptic;
};

// Deterministic constructive sampler; algebraic constraints are solved for,
// only unit/square-class conditions are rejection-sampled. Throws
// Unsatisfiable when the field admits no tuple for the family.
std::vector<SampledParams> sample_params(const FieldCtx& F, Family family, uint64_t seed,
                                         int count);

} // namespace hypercount
