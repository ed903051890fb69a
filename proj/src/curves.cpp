#include "hypercount/curves.hpp"

#include <cmath>

namespace hypercount {

namespace {

struct SplitMix {
    uint64_t s;
    explicit SplitMix(uint64_t seed) : s(seed) {}
    uint64_t next() {
        s += 0x9e3779b97f4a7c15ull;
        uint64_t z = s;
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
        return z ^ (z >> 31);
    }
    FqElem nonzero(const FieldCtx& F) {
        return FqElem{static_cast<uint32_t>(1 + next() % (F.q() - 1))};
    }
};

int g_eval(const FieldCtx& F, FqElem t, GPath path, const PadicCtx* P) {
    if (path == GPath::fast) return g_closed_form(F, t);
    if (P == nullptr)
        throw Error(ErrorCode::BadParams, "p-adic G path requested without a padic context");
    auto rec = P->ngn(PadicCtx::g_upper(), PadicCtx::g_lower(), t);
    if (rec.den != 1)
        throw Error(ErrorCode::RecognitionFailure, "G value recognized with denominator != 1");
    if (path == GPath::both && rec.num != g_closed_form(F, t))
        throw Error(ErrorCode::RecognitionFailure,
                    "closed form and p-adic G evaluation disagree at t=" + F.to_string(t));
    return static_cast<int>(rec.num);
}

// q * 2G2[1/2,1/2; 1/4,3/4 | t], an integer by the trace connection.
long long q_times_half_g2(const FieldCtx& F, const PadicCtx& P, FqElem t) {
    auto rec = P.ngn(PadicCtx::half_upper(), PadicCtx::half_lower(), t);
    if (rec.den == 0 || F.q() % rec.den != 0)
        throw Error(ErrorCode::RecognitionFailure,
                    "q * G2 not an integer (denominator " + std::to_string(rec.den) + ")");
    return rec.num * (static_cast<long long>(F.q()) / rec.den);
}

} // namespace

const char* family_name(Family f) {
    switch (f) {
        case Family::mt1: return "mt1";
        case Family::mt6: return "mt6";
        case Family::cor_1_4: return "cor_1_4";
        case Family::cor_1_5: return "cor_1_5";
        case Family::cor_1_6: return "cor_1_6";
        case Family::cor_2: return "cor_2";
    }
    return "?";
}

std::optional<Family> family_from_name(const std::string& name) {
    for (Family f : {Family::mt1, Family::mt6, Family::cor_1_4, Family::cor_1_5,
                     Family::cor_1_6, Family::cor_2})
        if (name == family_name(f)) return f;
    return std::nullopt;
}

void validate_curve(const FieldCtx& F, const CurveParams& cp) {
    for (FqElem x : {cp.a, cp.b, cp.c, cp.d, cp.e, cp.f})
        if (F.is_zero(x))
            throw Error(ErrorCode::PreconditionViolated, "curve coefficients must be nonzero");
}

bool af_eq_ce(const FieldCtx& F, const CurveParams& cp) {
    return F.mul(cp.a, cp.f) == F.mul(cp.c, cp.e);
}

FqElem discriminant(const FieldCtx& F, const CurveParams& cp) {
    return F.sub(F.mul(cp.c, cp.c), F.mul(F.from_int(4), F.mul(cp.a, cp.b)));
}

int chi4_pair(const FieldCtx& F, FqElem x, bool conj_choice) {
    if (F.q() % 4 != 1)
        throw Error(ErrorCode::PreconditionViolated, "chi4 needs q = 1 mod 4");
    uint32_t d = F.dlog(x) % 4;
    if (conj_choice) d = (4 - d) % 4;
    switch (d) {
        case 0: return 2;
        case 2: return -2;
        default: return 0;
    }
}

long long brute_count(const FieldCtx& F, const CurveParams& cp) {
    validate_curve(F, cp);
    long long count = 0;
    for (uint32_t xv = 0; xv < F.q(); ++xv) {
        FqElem x{xv};
        FqElem x2 = F.mul(x, x);
        FqElem x3 = F.mul(x2, x);
        FqElem bx2 = F.mul(cp.b, x2);
        FqElem cx = F.mul(cp.c, x);
        FqElem ex2 = F.mul(cp.e, x2);
        FqElem fx3 = F.mul(cp.f, x3);
        for (uint32_t yv = 0; yv < F.q(); ++yv) {
            FqElem y{yv};
            FqElem y2 = F.mul(y, y);
            FqElem lhs = F.add(F.add(F.mul(cp.a, y2), bx2), F.mul(cx, y));
            FqElem rhs = F.add(F.add(cp.d, F.mul(ex2, y2)), F.mul(fx3, y));
            if (lhs == rhs) ++count;
        }
    }
    return count;
}

CountResult mt6_count(const FieldCtx& F, const PadicCtx& P, const CurveParams& cp) {
    validate_curve(F, cp);
    if (!af_eq_ce(F, cp))
        throw Error(ErrorCode::PreconditionViolated, "mt6 needs af = ce");
    if (!F.is_zero(discriminant(F, cp)))
        throw Error(ErrorCode::PreconditionViolated, "mt6 needs c^2 = 4ab");
    const long long q = F.q();
    FqElem c2 = F.mul(cp.c, cp.c);
    FqElem de4 = F.mul(F.from_int(4), F.mul(cp.d, cp.e));
    int phi_ad = F.quad_char(F.mul(cp.a, cp.d));
    int phi_ae = F.quad_char(F.mul(cp.a, cp.e));
    bool delta = F.mul(cp.a, cp.b) == F.mul(cp.d, cp.e);

    long long qg1 = q_times_half_g2(F, P, F.div(de4, c2));
    long long qg2 = q_times_half_g2(F, P, F.div(c2, de4));

    long long base = q - 1;
    long long term_g1 = -phi_ad * qg1;
    long long term_g2 = -qg2;
    long long delta_term = ((delta ? q : 0) - 1) * (1 + phi_ae);
    CountResult out;
    out.count = base + term_g1 + term_g2 + delta_term;
    out.terms = {{"base", base},
                 {"g2_4de_over_c2", term_g1},
                 {"g2_c2_over_4de", term_g2},
                 {"delta_term", delta_term}};
    return out;
}

CountResult mt1_count(const FieldCtx& F, const CurveParams& cp, GPath g_path, const PadicCtx* P) {
    validate_curve(F, cp);
    if (!af_eq_ce(F, cp))
        throw Error(ErrorCode::PreconditionViolated, "mt1 needs af = ce");
    FqElem disc = discriminant(F, cp);
    if (F.is_zero(disc))
        throw Error(ErrorCode::PreconditionViolated, "mt1 needs c^2 - 4ab != 0");

    const long long q = F.q();
    FqElem ab = F.mul(cp.a, cp.b);
    FqElem de = F.mul(cp.d, cp.e);
    FqElem disc2 = F.mul(disc, disc);
    FqElem sixteen_de = F.mul(F.from_int(16), de);
    FqElem four_ab = F.mul(F.from_int(4), ab);
    FqElem y0 = F.div(F.mul(cp.c, cp.c), four_ab); // u_y vanishes here and at y = 1

    int phi_bd = F.quad_char(F.mul(cp.b, cp.d));
    int phi_ad = F.quad_char(F.mul(cp.a, cp.d));
    int phi_ae = F.quad_char(F.mul(cp.a, cp.e));
    int phi_abde_disc = F.quad_char(F.mul(F.mul(ab, de), disc));
    int phi_disc = F.quad_char(disc);

    long long i2 = 0;
    if (q % 4 == 1)
        i2 = F.quad_char(F.mul(F.mul(cp.a, cp.e), disc)) * chi4_pair(F, F.div(de, ab));

    auto u_of = [&](FqElem y) {
        FqElem c2_4aby = F.sub(F.mul(cp.c, cp.c), F.mul(four_ab, y));
        return F.div(F.mul(sixteen_de, F.mul(F.sub(F.one(), y), c2_4aby)), disc2);
    };

    long long phi_sum = 0;
    long long x_sum = 0;
    for (uint32_t yv = 0; yv < F.q(); ++yv) {
        FqElem y{yv};
        FqElem u = u_of(y);
        FqElem arg = F.mul(F.mul(y, F.sub(y, F.one())), F.add(F.one(), u));
        phi_sum += F.quad_char(arg);
        if (y == F.one() || y == y0) continue;
        int phi_y = F.quad_char(y);
        if (phi_y == 0) continue;
        x_sum += phi_y * g_eval(F, F.neg(F.inv(u)), g_path, P);
    }

    bool delta = ab == de;
    long long delta_term = delta ? q * (1 + phi_ae) : 0;

    CountResult out;
    long long base = q - 2;
    long long phi_disc_sum = phi_disc * phi_sum;
    long long x_term = phi_ad * x_sum;
    out.count = base + phi_bd + phi_ad - phi_ae + phi_abde_disc + i2 + phi_disc_sum +
                delta_term + x_term;
    out.terms = {{"base", base},
                 {"phi_bd", phi_bd},
                 {"phi_ad", phi_ad},
                 {"minus_phi_ae", -phi_ae},
                 {"phi_abde_disc", phi_abde_disc},
                 {"i2", i2},
                 {"phi_disc_sum", phi_disc_sum},
                 {"delta_term", delta_term},
                 {"x_sum", x_term}};
    return out;
}

long long cor_1_4_count(const FieldCtx& F, const CurveParams& cp) {
    validate_curve(F, cp);
    FqElem ab = F.mul(cp.a, cp.b);
    bool c2_neg4ab = F.mul(cp.c, cp.c) == F.neg(F.mul(F.from_int(4), ab));
    if (!af_eq_ce(F, cp) || !c2_neg4ab || ab != F.mul(cp.d, cp.e))
        throw Error(ErrorCode::PreconditionViolated,
                    "cor_1_4 needs af = ce, c^2 = -4ab, ab = de");
    const long long q = F.q();
    int phi_ad = F.quad_char(F.mul(cp.a, cp.d));
    if (q % 4 == 1) return 2 * q - 2 + (q - 1) * phi_ad;
    return 2 * q - 2 - (q - 1) * phi_ad;
}

long long cor_1_6_count(const FieldCtx& F, const CurveParams& cp) {
    validate_curve(F, cp);
    const long long q = F.q();
    if (q % 4 != 1)
        throw Error(ErrorCode::PreconditionViolated, "cor_1_6 needs q = 1 mod 4");
    FqElem ab = F.mul(cp.a, cp.b);
    if (!af_eq_ce(F, cp) || !F.is_zero(discriminant(F, cp)) || ab != F.mul(cp.d, cp.e))
        throw Error(ErrorCode::PreconditionViolated,
                    "cor_1_6 needs af = ce, c^2 = 4ab, ab = de");
    int phi_ad = F.quad_char(F.mul(cp.a, cp.d));
    if (q % 8 == 1) return 2 * q - 3 + (q - 2) * phi_ad;
    return 2 * q - 1 + q * phi_ad;
}

CurveParams edwards_to_curve(const FieldCtx& F, const EdwardsParams& ep) {
    FqElem k2 = F.mul(ep.k, ep.k);
    CurveParams cp;
    cp.a = F.one();
    cp.b = F.neg(ep.beta);
    cp.c = ep.alpha;
    cp.d = k2;
    cp.e = F.mul(k2, ep.ell);
    cp.f = F.mul(F.mul(k2, ep.ell), ep.alpha);
    return cp;
}

void validate_edwards(const FieldCtx& F, const EdwardsParams& ep) {
    for (FqElem x : {ep.alpha, ep.beta, ep.k, ep.ell})
        if (F.is_zero(x))
            throw Error(ErrorCode::PreconditionViolated, "edwards parameters must be nonzero");
    FqElem delta = F.add(F.mul(ep.alpha, ep.alpha), F.mul(F.from_int(4), ep.beta));
    if (F.is_zero(delta))
        throw Error(ErrorCode::PreconditionViolated, "edwards needs alpha^2 + 4 beta != 0");
    if (F.quad_char(ep.ell) != -1 || F.quad_char(F.div(delta, ep.ell)) != -1)
        throw Error(ErrorCode::PreconditionViolated,
                    "edwards needs ell and delta/ell to be non-squares");
}

long long cor_1_5_count(const FieldCtx& F, const EdwardsParams& ep) {
    validate_edwards(F, ep);
    const long long q = F.q();
    FqElem delta = F.add(F.mul(ep.alpha, ep.alpha), F.mul(F.from_int(4), ep.beta));
    FqElem delta2 = F.mul(delta, delta);
    FqElem k4ell16 = F.mul(F.from_int(16),
                           F.mul(F.mul(F.mul(ep.k, ep.k), F.mul(ep.k, ep.k)), ep.ell));
    FqElem beta4 = F.mul(F.from_int(4), ep.beta);
    FqElem y_excl = F.neg(F.div(F.mul(ep.alpha, ep.alpha), beta4));

    auto v_of = [&](FqElem y) {
        FqElem a2_4by = F.add(F.mul(ep.alpha, ep.alpha), F.mul(beta4, y));
        return F.div(F.mul(k4ell16, F.mul(F.sub(F.one(), y), a2_4by)), delta2);
    };

    long long g_sum = 0, phi_sum = 0;
    for (uint32_t yv = 0; yv < F.q(); ++yv) {
        FqElem y{yv};
        FqElem v = v_of(y);
        phi_sum += F.quad_char(F.mul(F.mul(y, F.sub(y, F.one())), F.add(F.one(), v)));
        if (y == F.one() || y == y_excl) continue;
        int phi_y = F.quad_char(y);
        if (phi_y == 0) continue;
        g_sum += phi_y * g_closed_form(F, F.neg(F.inv(v)));
    }

    long long j2 = q;
    if (q % 4 == 1)
        j2 -= chi4_pair(F, F.neg(F.div(ep.ell, ep.beta)));
    return g_sum + phi_sum + j2;
}

long long ec_affine_count(const FieldCtx& F, const EllipticParams& ep) {
    if (F.is_zero(ep.h) || F.is_zero(ep.g))
        throw Error(ErrorCode::PreconditionViolated, "elliptic family needs h, g != 0");
    long long count = 0;
    for (uint32_t xv = 0; xv < F.q(); ++xv) {
        FqElem x{xv};
        FqElem rhs = F.mul(x, F.add(F.mul(x, F.add(x, ep.h)), ep.g));
        for (uint32_t yv = 0; yv < F.q(); ++yv) {
            FqElem y{yv};
            if (F.mul(y, y) == rhs) ++count;
        }
    }
    return count;
}

long long trace_of_frobenius(const FieldCtx& F, const EllipticParams& ep) {
    long long points = ec_affine_count(F, ep) + 1; // point at infinity
    long long a = static_cast<long long>(F.q()) + 1 - points;
    if (a * a > 4 * static_cast<long long>(F.q()))
        throw Error(ErrorCode::BadParams, "Hasse bound violated (internal bug)");
    return a;
}

long long trace_formula_value(const FieldCtx& F, const PadicCtx& P, const EllipticParams& ep) {
    if (F.is_zero(ep.h) || F.is_zero(ep.g))
        throw Error(ErrorCode::PreconditionViolated, "elliptic family needs h, g != 0");
    FqElem arg = F.div(F.mul(F.from_int(4), ep.g), F.mul(ep.h, ep.h));
    int phi = F.quad_char(F.neg(F.mul(ep.h, ep.g)));
    return phi * q_times_half_g2(F, P, arg);
}

bool bs1_trace_check(const FieldCtx& F, const PadicCtx& P, const EllipticParams& ep) {
    return trace_of_frobenius(F, ep) == trace_formula_value(F, P, ep);
}

long long cor2_formula_value(const FieldCtx& F, const CurveParams& cp, const EllipticParams& ep) {
    validate_curve(F, cp);
    if (!af_eq_ce(F, cp) || !F.is_zero(discriminant(F, cp)))
        throw Error(ErrorCode::PreconditionViolated, "cor_2 needs af = ce and c^2 = 4ab");
    FqElem de = F.mul(cp.d, cp.e);
    FqElem c2g = F.mul(F.mul(cp.c, cp.c), ep.g);
    FqElem h2de = F.mul(F.mul(ep.h, ep.h), de);
    if (c2g != h2de)
        throw Error(ErrorCode::PreconditionViolated, "cor_2 needs c^2 g = h^2 d e");
    const long long q = F.q();
    long long aq1 = trace_of_frobenius(F, ep);
    EllipticParams twin{F.div(F.from_int(4), ep.h), F.inv(ep.g)};
    long long aq2 = trace_of_frobenius(F, twin);
    int phi_aeh = F.quad_char(F.neg(F.mul(F.mul(cp.a, cp.e), ep.h)));
    int phi_hg = F.quad_char(F.neg(F.mul(ep.h, ep.g)));
    int phi_ae = F.quad_char(F.mul(cp.a, cp.e));
    bool delta = F.mul(cp.a, cp.b) == de;
    return q - 1 - phi_aeh * aq1 - phi_hg * aq2 + ((delta ? q : 0) - 1) * (1 + phi_ae);
}

bool cor2_check(const FieldCtx& F, const CurveParams& cp, const EllipticParams& ep) {
    return brute_count(F, cp) == cor2_formula_value(F, cp, ep);
}

std::vector<SampledParams> sample_params(const FieldCtx& F, Family family, uint64_t seed,
                                         int count) {
    const long long q = F.q();
    if (family == Family::cor_1_6 && q % 4 != 1)
        throw Error(ErrorCode::Unsatisfiable,
                    "cor_1_6 needs q = 1 mod 4, q=" + std::to_string(q));
    if (q < 5 && family == Family::cor_1_5)
        throw Error(ErrorCode::Unsatisfiable, "cor_1_5 has no valid tuple at q=3");

    SplitMix rng(seed * 0x9e3779b97f4a7c15ull + static_cast<uint64_t>(family) + 1);
    std::vector<SampledParams> out;
    out.reserve(count);
    FqElem four = F.from_int(4);

    while (static_cast<int>(out.size()) < count) {
        SampledParams item;
        CurveParams& cp = item.curve;
        switch (family) {
            case Family::mt1: {
                cp.a = rng.nonzero(F);
                cp.b = rng.nonzero(F);
                cp.d = rng.nonzero(F);
                cp.e = rng.nonzero(F);
                cp.c = rng.nonzero(F); // reject only the thin set c^2 = 4ab
                if (F.mul(cp.c, cp.c) == F.mul(four, F.mul(cp.a, cp.b))) continue;
                cp.f = F.div(F.mul(cp.c, cp.e), cp.a);
                break;
            }
            case Family::mt6: {
                cp.a = rng.nonzero(F);
                FqElem s = rng.nonzero(F);
                cp.c = F.mul(F.from_int(2), s);
                cp.b = F.div(F.mul(s, s), cp.a);
                cp.d = rng.nonzero(F);
                cp.e = rng.nonzero(F);
                cp.f = F.div(F.mul(cp.c, cp.e), cp.a);
                break;
            }
            case Family::cor_1_4: {
                cp.a = rng.nonzero(F);
                cp.d = rng.nonzero(F);
                FqElem s = rng.nonzero(F);
                cp.c = F.mul(F.from_int(2), s);
                cp.b = F.neg(F.div(F.mul(s, s), cp.a));
                cp.e = F.div(F.mul(cp.a, cp.b), cp.d);
                cp.f = F.div(F.mul(cp.c, cp.e), cp.a);
                break;
            }
            case Family::cor_1_6: {
                cp.a = rng.nonzero(F);
                cp.d = rng.nonzero(F);
                FqElem s = rng.nonzero(F);
                cp.c = F.mul(F.from_int(2), s);
                cp.b = F.div(F.mul(s, s), cp.a);
                cp.e = F.div(F.mul(cp.a, cp.b), cp.d);
                cp.f = F.div(F.mul(cp.c, cp.e), cp.a);
                break;
            }
            case Family::cor_1_5: {
                EdwardsParams ep;
                ep.alpha = rng.nonzero(F);
                // delta = w^2 for w outside {0, alpha, -alpha} keeps beta nonzero
                FqElem w = rng.nonzero(F);
                if (w == ep.alpha || w == F.neg(ep.alpha)) continue;
                FqElem beta4 = F.sub(F.mul(w, w), F.mul(ep.alpha, ep.alpha));
                ep.beta = F.div(beta4, four);
                // ell drawn from non-squares
                FqElem ell = rng.nonzero(F);
                if (F.quad_char(ell) != -1) continue;
                ep.ell = ell;
                ep.k = rng.nonzero(F);
                validate_edwards(F, ep);
                item.edwards = ep;
                cp = edwards_to_curve(F, ep);
                break;
            }
            case Family::cor_2: {
                cp.a = rng.nonzero(F);
                FqElem s = rng.nonzero(F);
                cp.c = F.mul(F.from_int(2), s);
                cp.b = F.div(F.mul(s, s), cp.a);
                cp.d = rng.nonzero(F);
                cp.e = rng.nonzero(F);
                cp.f = F.div(F.mul(cp.c, cp.e), cp.a);
                EllipticParams ep;
                ep.h = rng.nonzero(F);
                ep.g = F.div(F.mul(F.mul(ep.h, ep.h), F.mul(cp.d, cp.e)),
                             F.mul(cp.c, cp.c));
                item.elliptic = ep;
                break;
            }
        }
        out.push_back(std::move(item));
    }
    return out;
}

} // namespace hypercount
