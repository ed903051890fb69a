#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "hypercount/curves.hpp"

using namespace hypercount;

namespace {

CurveParams params_from_ints(const FieldCtx& F, long long a, long long b, long long c,
                             long long d, long long e, long long f) {
    return CurveParams{F.from_int(a), F.from_int(b), F.from_int(c),
                       F.from_int(d), F.from_int(e), F.from_int(f)};
}

// the printed example family a=d=1, b=e=-1, c=2, f=-2
CurveParams example_1(const FieldCtx& F) { return params_from_ints(F, 1, -1, 2, 1, -1, -2); }
// a=e=1, b=d=-1, c=f=2
CurveParams example_1p(const FieldCtx& F) { return params_from_ints(F, 1, -1, 2, -1, 1, 2); }
// a=b=d=e=1, c=f=2
CurveParams example_2(const FieldCtx& F) { return params_from_ints(F, 1, 1, 2, 1, 1, 2); }

} // namespace

TEST_CASE("brute count on the printed examples") {
    auto F5 = FieldCtx::build(5, 1);
    CHECK(brute_count(F5, example_1(F5)) == 12); // 3(q-1) at q = 1 mod 4
    auto F7 = FieldCtx::build(7, 1);
    CHECK(brute_count(F7, example_1(F7)) == 6); // q-1 at q = 3 mod 4

    // q = 3, all-ones curve: independent 9-iteration loop as the oracle
    auto F3 = FieldCtx::build(3, 1);
    long long direct = 0;
    for (int x = 0; x < 3; ++x)
        for (int y = 0; y < 3; ++y) {
            int lhs = (y * y + x * x + x * y) % 3;
            int rhs = (1 + x * x * y * y + x * x * x * y) % 3;
            if (lhs == rhs) ++direct;
        }
    CurveParams ones = params_from_ints(F3, 1, 1, 1, 1, 1, 1);
    CHECK(brute_count(F3, ones) == direct);

    CurveParams zero_coeff = params_from_ints(F5, 1, 0, 2, 1, -1, -2);
    CHECK_THROWS_AS(brute_count(F5, zero_coeff), Error);
}

TEST_CASE("mt1 formula equals brute force") {
    auto F13 = FieldCtx::build(13, 1);
    CHECK(mt1_count(F13, example_1(F13)).count == 36); // 3(q-1)
    CHECK(brute_count(F13, example_1(F13)) == 36);

    auto F11 = FieldCtx::build(11, 1);
    CHECK(mt1_count(F11, example_1p(F11)).count == 30); // 3(q-1) at q = 3 mod 4
    CHECK(brute_count(F11, example_1p(F11)) == 30);

    for (auto [p, r] : {std::pair{5, 1}, {7, 1}, {3, 2}, {13, 1}, {3, 3}, {7, 2}}) {
        auto F = FieldCtx::build(p, r);
        auto tuples = sample_params(F, Family::mt1, 1, 50);
        for (const auto& t : tuples)
            CHECK(mt1_count(F, t.curve).count == brute_count(F, t.curve));
    }

    auto F5 = FieldCtx::build(5, 1);
    CHECK_THROWS_AS(mt1_count(F5, example_2(F5)), Error); // c^2 = 4ab here
}

TEST_CASE("mt1 p-adic and closed-form G paths agree") {
    for (auto [p, r] : {std::pair{5, 1}, {3, 2}}) {
        auto F = FieldCtx::build(p, r);
        auto P = PadicCtx::init(F);
        auto tuples = sample_params(F, Family::mt1, 7, 10);
        for (const auto& t : tuples) {
            auto both = mt1_count(F, t.curve, GPath::both, &P);
            CHECK(both.count == brute_count(F, t.curve));
        }
    }
}

TEST_CASE("chi4 choice does not change the I2 term") {
    for (auto [p, r] : {std::pair{5, 1}, {13, 1}, {3, 2}}) {
        auto F = FieldCtx::build(p, r);
        for (uint32_t v = 1; v < F.q(); ++v) {
            CHECK(chi4_pair(F, FqElem{v}, false) == chi4_pair(F, FqElem{v}, true));
        }
    }
}

TEST_CASE("mt6 formula equals brute force") {
    auto F17 = FieldCtx::build(17, 1);
    auto P17 = PadicCtx::init(F17);
    CHECK(mt6_count(F17, P17, example_2(F17)).count == 46); // 3q-5 at q = 1 mod 8
    CHECK(brute_count(F17, example_2(F17)) == 46);

    auto F13 = FieldCtx::build(13, 1);
    auto P13 = PadicCtx::init(F13);
    CHECK(mt6_count(F13, P13, example_2(F13)).count == 38); // 3q-1 at q = 5 mod 8
    CHECK(brute_count(F13, example_2(F13)) == 38);

    for (auto [p, r] : {std::pair{5, 1}, {7, 1}, {3, 2}, {3, 3}, {7, 2}}) {
        auto F = FieldCtx::build(p, r);
        auto P = PadicCtx::init(F);
        auto tuples = sample_params(F, Family::mt6, 3, 50);
        for (const auto& t : tuples)
            CHECK(mt6_count(F, P, t.curve).count == brute_count(F, t.curve));
    }

    auto F5 = FieldCtx::build(5, 1);
    auto P5 = PadicCtx::init(F5);
    CHECK_THROWS_AS(mt6_count(F5, P5, example_1(F5)), Error); // disc != 0 here
}

TEST_CASE("corollary closed forms, general evaluators and brute force coincide") {
    SUBCASE("cor_1_4") {
        auto F5 = FieldCtx::build(5, 1);
        CHECK(cor_1_4_count(F5, example_1(F5)) == 12); // ad = 1 is a square
        for (auto [p, r] : {std::pair{5, 1}, {7, 1}, {3, 2}, {13, 1}}) {
            auto F = FieldCtx::build(p, r);
            auto tuples = sample_params(F, Family::cor_1_4, 11, 20);
            for (const auto& t : tuples) {
                long long closed = cor_1_4_count(F, t.curve);
                CHECK(closed == brute_count(F, t.curve));
                CHECK(closed == mt1_count(F, t.curve).count);
            }
        }
    }
    SUBCASE("cor_1_6") {
        auto F17 = FieldCtx::build(17, 1);
        CHECK(cor_1_6_count(F17, example_2(F17)) == 46);
        for (auto [p, r] : {std::pair{5, 1}, {13, 1}, {3, 2}}) {
            auto F = FieldCtx::build(p, r);
            auto P = PadicCtx::init(F);
            auto tuples = sample_params(F, Family::cor_1_6, 13, 20);
            for (const auto& t : tuples) {
                long long closed = cor_1_6_count(F, t.curve);
                CHECK(closed == brute_count(F, t.curve));
                CHECK(closed == mt6_count(F, P, t.curve).count);
            }
        }
        auto F7 = FieldCtx::build(7, 1);
        CHECK_THROWS_AS(sample_params(F7, Family::cor_1_6, 1, 5), Error);
    }
    SUBCASE("cor_1_5") {
        for (auto [p, r] : {std::pair{7, 1}, {5, 1}, {13, 1}, {3, 2}}) {
            auto F = FieldCtx::build(p, r);
            auto tuples = sample_params(F, Family::cor_1_5, 17, 20);
            for (const auto& t : tuples) {
                REQUIRE(t.edwards.has_value());
                const auto& ep = *t.edwards;
                // non-square conditions hold by construction
                CHECK(F.quad_char(ep.ell) == -1);
                FqElem delta = F.add(F.mul(ep.alpha, ep.alpha), F.mul(F.from_int(4), ep.beta));
                CHECK(F.quad_char(F.div(delta, ep.ell)) == -1);
                long long closed = cor_1_5_count(F, ep);
                CHECK(closed == brute_count(F, t.curve));
                CHECK(closed == mt1_count(F, t.curve).count);
            }
        }
    }
}

TEST_CASE("elliptic counts and the trace of frobenius") {
    auto F5 = FieldCtx::build(5, 1);
    EllipticParams e11{F5.one(), F5.one()};
    long long direct = 0;
    for (int x = 0; x < 5; ++x)
        for (int y = 0; y < 5; ++y)
            if ((y * y) % 5 == (x * x * x + x * x + x) % 5) ++direct;
    CHECK(ec_affine_count(F5, e11) == direct);
    CHECK(trace_of_frobenius(F5, e11) == 5 + 1 - (direct + 1));

    CHECK_THROWS_AS(ec_affine_count(F5, EllipticParams{F5.zero(), F5.one()}), Error);
    CHECK_THROWS_AS(ec_affine_count(F5, EllipticParams{F5.one(), F5.zero()}), Error);

    for (auto [p, r] : {std::pair{13, 1}, {3, 2}, {5, 2}}) {
        auto F = FieldCtx::build(p, r);
        SUBCASE("hasse bound") {}
        for (uint32_t hv = 1; hv < F.q(); hv += 2)
            for (uint32_t gv = 1; gv < F.q(); gv += 3) {
                long long a = trace_of_frobenius(F, EllipticParams{FqElem{hv}, FqElem{gv}});
                CHECK(a * a <= 4 * static_cast<long long>(F.q()));
            }
    }
}

TEST_CASE("trace formula against the p-adic half parameter list") {
    for (auto [p, r] : {std::pair{5, 1}, {3, 2}, {13, 1}, {5, 2}}) {
        auto F = FieldCtx::build(p, r);
        auto P = PadicCtx::init(F);
        uint64_t s = 12345;
        auto rnd = [&]() {
            s += 0x9e3779b97f4a7c15ull;
            uint64_t z = s;
            z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
            z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
            return z ^ (z >> 31);
        };
        for (int it = 0; it < 20; ++it) {
            EllipticParams ep{FqElem{static_cast<uint32_t>(1 + rnd() % (F.q() - 1))},
                              FqElem{static_cast<uint32_t>(1 + rnd() % (F.q() - 1))}};
            CHECK(bs1_trace_check(F, P, ep));
        }
    }
    // 4g = h^2 puts the argument at 1, linking to the hypergeometric value there
    for (auto [p, r] : {std::pair{5, 1}, {13, 1}}) {
        auto F = FieldCtx::build(p, r);
        auto P = PadicCtx::init(F);
        auto rec = P.ngn(PadicCtx::half_upper(), PadicCtx::half_lower(), F.one());
        long long qv = rec.num * (static_cast<long long>(F.q()) / rec.den);
        for (uint32_t hv = 1; hv < F.q(); ++hv) {
            FqElem h{hv};
            FqElem g = F.div(F.mul(h, h), F.from_int(4));
            CHECK(bs1_trace_check(F, P, EllipticParams{h, g}));
            int phi = F.quad_char(F.neg(F.mul(h, g)));
            CHECK(trace_of_frobenius(F, EllipticParams{h, g}) == phi * qv);
        }
    }
}

TEST_CASE("two-trace expression for degenerate discriminant curves") {
    auto F17 = FieldCtx::build(17, 1);
    CurveParams cp = example_2(F17);
    FqElem h = F17.from_int(2);
    // g := h^2 de / c^2 makes the precondition hold by construction
    FqElem g = F17.div(F17.mul(F17.mul(h, h), F17.mul(cp.d, cp.e)), F17.mul(cp.c, cp.c));
    CHECK(cor2_check(F17, cp, EllipticParams{h, g}));

    for (auto [p, r] : {std::pair{5, 1}, {13, 1}, {5, 2}, {3, 2}}) {
        auto F = FieldCtx::build(p, r);
        auto tuples = sample_params(F, Family::cor_2, 19, 20);
        for (const auto& t : tuples) {
            REQUIRE(t.elliptic.has_value());
            CHECK(cor2_check(F, t.curve, *t.elliptic));
        }
    }
}

TEST_CASE("sampler determinism and postconditions") {
    auto F13 = FieldCtx::build(13, 1);
    auto a = sample_params(F13, Family::mt1, 1, 5);
    auto b = sample_params(F13, Family::mt1, 1, 5);
    REQUIRE(a.size() == b.size());
    for (size_t i = 0; i < a.size(); ++i) {
        CHECK(a[i].curve.a == b[i].curve.a);
        CHECK(a[i].curve.f == b[i].curve.f);
    }
    auto c = sample_params(F13, Family::mt1, 2, 5);
    bool any_diff = false;
    for (size_t i = 0; i < a.size(); ++i)
        if (!(a[i].curve.a == c[i].curve.a) || !(a[i].curve.c == c[i].curve.c)) any_diff = true;
    CHECK(any_diff);

    auto F3 = FieldCtx::build(3, 1);
    CHECK_THROWS_AS(sample_params(F3, Family::cor_1_5, 1, 1), Error); // no valid tuple at q=3
    CHECK(sample_params(F3, Family::mt1, 1, 5).size() == 5);

    for (const auto& t : sample_params(F13, Family::mt1, 1, 20)) {
        CHECK(af_eq_ce(F13, t.curve));
        CHECK_FALSE(F13.is_zero(discriminant(F13, t.curve)));
    }
    for (const auto& t : sample_params(F13, Family::mt6, 1, 20)) {
        CHECK(af_eq_ce(F13, t.curve));
        CHECK(F13.is_zero(discriminant(F13, t.curve)));
    }
    for (const auto& t : sample_params(F13, Family::cor_1_4, 1, 20)) {
        CHECK(F13.mul(t.curve.c, t.curve.c) ==
              F13.neg(F13.mul(F13.from_int(4), F13.mul(t.curve.a, t.curve.b))));
        CHECK(F13.mul(t.curve.a, t.curve.b) == F13.mul(t.curve.d, t.curve.e));
    }
    for (const auto& t : sample_params(F13, Family::cor_2, 1, 20)) {
        REQUIRE(t.elliptic.has_value());
        CHECK(F13.mul(F13.mul(t.curve.c, t.curve.c), t.elliptic->g) ==
              F13.mul(F13.mul(t.elliptic->h, t.elliptic->h), F13.mul(t.curve.d, t.curve.e)));
    }
}
