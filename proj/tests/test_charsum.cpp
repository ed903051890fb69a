#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <complex>

#include "hypercount/charsum.hpp"

using namespace hypercount;

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
};

} // namespace

TEST_CASE("character evaluation basics") {
    auto F = FieldCtx::build(13, 1);
    CharSumCtx C(F);
    for (int j : {0, 1, 5, 11}) {
        CHECK(C.char_eval(j, F.zero()).is_exact());
        CHECK(C.char_eval(j, F.zero()).value() == std::complex<double>(0, 0));
        CHECK(std::abs(C.char_eval(j, F.one()).value() - std::complex<double>(1, 0)) < 1e-12);
    }
    // chi_{(q-1)/2} agrees with the quadratic character everywhere
    int half = (static_cast<int>(F.q()) - 1) / 2;
    for (uint32_t v = 0; v < F.q(); ++v) {
        FqElem x{v};
        auto val = C.char_eval(half, x);
        CHECK(val.is_exact());
        CHECK(val.rat().re == F.quad_char(x));
        CHECK(val.rat().im == 0);
    }
}

TEST_CASE("character orders") {
    auto F = FieldCtx::build(13, 1);
    CharSumCtx C(F);
    CHECK(C.char_order(0) == 1);
    CHECK(C.char_order(6) == 2);
    CHECK(C.char_order(3) == 4);
    CHECK(C.char_order(1) == 12);
    CHECK(MultChar{3}.order(F) == 4);
}

TEST_CASE("gauss sums") {
    for (auto [p, r] : {std::pair{5, 1}, {3, 2}, {13, 1}}) {
        auto F = FieldCtx::build(p, r);
        CharSumCtx C(F);
        auto ge = C.gauss_sum(0);
        CHECK(ge.is_exact());
        CHECK(ge.rat() == GaussianRat{-1, 0, 1});
        for (int j = 1; j < static_cast<int>(F.q()) - 1; ++j) {
            double mag2 = std::norm(C.gauss_sum(j).value());
            CHECK(std::abs(mag2 - F.q()) < C.tolerance());
        }
    }
    // q = 5: g(phi)^2 = 5 since phi(-1) = 1 for q = 1 mod 4
    auto F5 = FieldCtx::build(5, 1);
    CharSumCtx C5(F5);
    auto g = C5.gauss_sum(2).value();
    CHECK(std::abs(g * g - std::complex<double>(5, 0)) < C5.tolerance());
}

TEST_CASE("jacobi sum closed values") {
    for (auto [p, r] : {std::pair{5, 1}, {3, 2}, {13, 1}, {7, 1}}) {
        auto F = FieldCtx::build(p, r);
        CharSumCtx C(F);
        int half = (static_cast<int>(F.q()) - 1) / 2;
        auto jee = C.jacobi_sum(0, 0);
        CHECK(jee.is_exact());
        CHECK(jee.rat() == GaussianRat{static_cast<long long>(F.q()) - 2, 0, 1});
        auto jpe = C.jacobi_sum(half, 0);
        CHECK(jpe.rat() == GaussianRat{-1, 0, 1});
        int phi_m1 = F.quad_char(F.neg(F.one()));
        auto jpp = C.jacobi_sum(half, half);
        CHECK(jpp.rat() == GaussianRat{-phi_m1, 0, 1});
    }
}

TEST_CASE("binomial coefficients") {
    auto F = FieldCtx::build(3, 2);
    CharSumCtx C(F);
    long long q = F.q();
    int half = static_cast<int>(q - 1) / 2;
    auto b1 = C.binom(half, 0); // (phi choose eps) = -1/q
    CHECK(b1.is_exact());
    CHECK(b1.rat() == GaussianRat{-1, 0, q});
    auto b2 = C.binom(0, 0); // (eps choose eps) = (q-2)/q
    CHECK(b2.rat() == GaussianRat{q - 2, 0, q});

    // random characters: engine value vs. an independent double loop
    SplitMix rng(5);
    for (int iter = 0; iter < 30; ++iter) {
        int j1 = static_cast<int>(rng.next() % (q - 1));
        int j2 = static_cast<int>(rng.next() % (q - 1));
        std::complex<double> direct = 0;
        for (uint32_t v = 0; v < F.q(); ++v) {
            FqElem x{v};
            direct += C.char_eval(j1, x).value() *
                      C.char_eval(-j2, F.sub(F.one(), x)).value();
        }
        direct *= C.char_eval(j2, F.neg(F.one())).value() / static_cast<double>(q);
        CHECK(std::abs(C.binom(j1, j2).value() - direct) < C.tolerance());
    }
}

TEST_CASE("orthogonality is exact on the gaussian path") {
    auto F = FieldCtx::build(13, 1);
    CharSumCtx C(F);
    for (int j : {0, 3, 6, 9}) {
        SumValue s = SumValue::exact(0);
        for (uint32_t v = 0; v < F.q(); ++v) s = s + C.char_eval(j, FqElem{v});
        REQUIRE(s.is_exact());
        CHECK(s.rat() == GaussianRat{j == 0 ? 12 : 0, 0, 1});
    }
}

TEST_CASE("orthogonality relations") {
    for (auto [p, r] : {std::pair{5, 1}, {3, 2}, {13, 1}}) {
        auto F = FieldCtx::build(p, r);
        CharSumCtx C(F);
        int qm1 = static_cast<int>(F.q()) - 1;
        // sum over x of chi(x)
        for (int j = 0; j < qm1; ++j) {
            std::complex<double> s = 0;
            for (uint32_t v = 0; v < F.q(); ++v) s += C.char_eval(j, FqElem{v}).value();
            double expect = (j == 0) ? qm1 : 0.0;
            CHECK(std::abs(s - expect) < C.tolerance());
        }
        // sum over chi of chi(x)
        for (uint32_t v = 1; v < F.q(); ++v) {
            std::complex<double> s = 0;
            for (int j = 0; j < qm1; ++j) s += C.char_eval(j, FqElem{v}).value();
            double expect = (v == 1) ? qm1 : 0.0;
            CHECK(std::abs(s - expect) < C.tolerance());
        }
    }
}

TEST_CASE("greene 2F1: both evaluation routes agree") {
    auto F = FieldCtx::build(13, 1);
    CharSumCtx C(F);
    int half = 6;
    CHECK(C.greene_2f1(half, half, half, F.zero(), F21Method::charsum).value() ==
          std::complex<double>(0, 0));
    CHECK(std::abs(C.greene_2f1(half, half, half, F.zero(), F21Method::binomsum).value()) <
          C.tolerance());

    auto a = C.greene_2f1(half, half, half, F.from_int(2), F21Method::charsum);
    auto b = C.greene_2f1(half, half, half, F.from_int(2), F21Method::binomsum);
    CHECK(std::abs(a.value() - b.value()) < C.tolerance());

    for (auto [p, r] : {std::pair{3, 2}, {13, 1}}) {
        auto Fq = FieldCtx::build(p, r);
        CharSumCtx Cq(Fq);
        int qm1 = static_cast<int>(Fq.q()) - 1;
        SplitMix rng(17);
        for (int iter = 0; iter < 200; ++iter) {
            int ja = static_cast<int>(rng.next() % qm1);
            int jb = static_cast<int>(rng.next() % qm1);
            int jc = static_cast<int>(rng.next() % qm1);
            FqElem x{static_cast<uint32_t>(rng.next() % Fq.q())};
            auto u = Cq.greene_2f1(ja, jb, jc, x, F21Method::charsum);
            auto v = Cq.greene_2f1(ja, jb, jc, x, F21Method::binomsum);
            CHECK(std::abs(u.value() - v.value()) < Cq.tolerance());
        }
    }
}

TEST_CASE("exact gaussian path agrees with the complex path") {
    auto F = FieldCtx::build(13, 1);
    CharSumCtx C(F);
    // characters of order dividing 4: indices 0, 3, 6, 9
    for (int j1 : {0, 3, 6, 9}) {
        for (int j2 : {0, 3, 6, 9}) {
            auto ex = C.jacobi_sum(j1, j2);
            CHECK(ex.is_exact());
            std::complex<double> direct = 0;
            for (uint32_t v = 0; v < F.q(); ++v) {
                FqElem x{v};
                if (x.v == 0) continue;
                auto y = F.sub(F.one(), x);
                if (y.v == 0) continue;
                direct += std::polar(1.0, 2 * std::numbers::pi *
                                              (static_cast<double>(j1) * F.dlog(x) +
                                               static_cast<double>(j2) * F.dlog(y)) /
                                              12.0);
            }
            CHECK(std::abs(ex.value() - direct) < C.tolerance());
        }
    }
    for (int ja : {3, 6, 9})
        for (int jb : {0, 3, 6})
            for (uint32_t xv = 0; xv < F.q(); ++xv) {
                auto ex = C.greene_2f1(ja, jb, 9, FqElem{xv}, F21Method::charsum);
                CHECK(ex.is_exact());
                auto ap = C.greene_2f1(ja, jb, 9, FqElem{xv}, F21Method::binomsum);
                CHECK(std::abs(ex.value() - ap.value()) < C.tolerance());
            }
}

TEST_CASE("identity suite") {
    SUBCASE("theta expansion") {
        auto F = FieldCtx::build(3, 2);
        CharSumCtx C(F);
        for (uint32_t v = 1; v < F.q(); ++v) {
            IdentityParams prm;
            prm.alpha = FqElem{v};
            CHECK(C.identity_defect(IdentityId::theta_expansion, prm) < C.tolerance());
        }
    }
    SUBCASE("gauss reflection, all characters at q = 9") {
        auto F = FieldCtx::build(3, 2);
        CharSumCtx C(F);
        for (int j = 0; j < 8; ++j) {
            IdentityParams prm;
            prm.j_a = j;
            CHECK(C.identity_defect(IdentityId::gauss_reflection, prm) < C.tolerance());
        }
    }
    SUBCASE("jacobi-gauss relation including the delta correction") {
        auto F = FieldCtx::build(13, 1);
        CharSumCtx C(F);
        for (int j1 = 0; j1 < 12; ++j1)
            for (int j2 = 0; j2 < 12; ++j2) {
                IdentityParams prm;
                prm.j_a = j1;
                prm.j_b = j2;
                CHECK(C.identity_defect(IdentityId::jacobi_gauss, prm) < C.tolerance());
            }
    }
    SUBCASE("davenport-hasse") {
        auto F = FieldCtx::build(13, 1);
        CharSumCtx C(F);
        IdentityParams prm;
        prm.m = 2;
        prm.j_a = 1;
        CHECK(C.identity_defect(IdentityId::davenport_hasse, prm) < C.tolerance());
        for (int m : {2, 3, 4, 6})
            for (int j = 0; j < 12; ++j) {
                IdentityParams p2;
                p2.m = m;
                p2.j_a = j;
                CHECK(C.identity_defect(IdentityId::davenport_hasse, p2) < C.tolerance());
            }
        IdentityParams bad;
        bad.m = 5; // 5 does not divide 12
        CHECK_THROWS_AS(C.identity_defect(IdentityId::davenport_hasse, bad), Error);
    }
    SUBCASE("helversen-pasotto with trivial characters hits the delta term") {
        auto F = FieldCtx::build(5, 1);
        CharSumCtx C(F);
        IdentityParams prm; // A = B = C = D = eps, so delta(ABCD) = 1
        CHECK(C.identity_defect(IdentityId::hp_four_gauss, prm) < C.tolerance());
        // and the defect against the rhs WITHOUT the correction is large
        std::complex<double> lhs = 0;
        for (int j = 0; j < 4; ++j) {
            auto g = [&](int k) { return C.gauss_sum(k).value(); };
            lhs += g(j) * g(-j) * g(j) * g(-j);
        }
        lhs /= 4.0;
        std::complex<double> bare = C.gauss_sum(0).value() * C.gauss_sum(0).value() *
                                    C.gauss_sum(0).value() * C.gauss_sum(0).value() /
                                    C.gauss_sum(0).value();
        CHECK(std::abs(lhs - bare) > 1.0);
    }
    SUBCASE("transformation 4.4(iv) on random data, including x = 1") {
        for (auto [p, r] : {std::pair{13, 1}, {3, 2}}) {
            auto F = FieldCtx::build(p, r);
            CharSumCtx C(F);
            int qm1 = static_cast<int>(F.q()) - 1;
            SplitMix rng(23);
            for (int iter = 0; iter < 100; ++iter) {
                IdentityParams prm;
                prm.j_a = static_cast<int>(rng.next() % qm1);
                prm.j_b = static_cast<int>(rng.next() % qm1);
                prm.j_c = static_cast<int>(rng.next() % qm1);
                prm.x = FqElem{static_cast<uint32_t>(rng.next() % F.q())};
                CHECK(C.identity_defect(IdentityId::transform_4_4_iv, prm) < C.tolerance());
            }
            IdentityParams at_one;
            at_one.j_a = 1;
            at_one.j_b = 2;
            at_one.j_c = 3;
            at_one.x = F.one();
            CHECK(C.identity_defect(IdentityId::transform_4_4_iv, at_one) < C.tolerance());
        }
    }
}

TEST_CASE("prop1 character sum structure") {
    auto F5 = FieldCtx::build(5, 1);
    CharSumCtx C5(F5);
    // q(q-1) phi(-1) G(1) = 20 * 1 * (-1) = -20 at q = 5
    CHECK(std::abs(C5.prop1_lhs(F5.one()).value() - std::complex<double>(-20, 0)) <
          C5.tolerance());
    CHECK_THROWS_AS(C5.prop1_lhs(F5.zero()), Error);

    // q = 7: vanishes whenever (t-1)/t is a non-square for t = 1/x
    auto F7 = FieldCtx::build(7, 1);
    CharSumCtx C7(F7);
    int zero_count = 0;
    for (uint32_t v = 1; v < 7; ++v) {
        FqElem x{v};
        FqElem t = F7.inv(x);
        if (t.v == 1) continue;
        FqElem s = F7.div(F7.sub(t, F7.one()), t);
        if (F7.quad_char(s) == -1) {
            ++zero_count;
            CHECK(std::abs(C7.prop1_lhs(x).value()) < C7.tolerance());
        }
    }
    CHECK(zero_count > 0);

    // q = 9: |prop1_lhs| is always an integer multiple of q(q-1) in {0,1,2}
    auto F9 = FieldCtx::build(3, 2);
    CharSumCtx C9(F9);
    for (uint32_t v = 1; v < 9; ++v) {
        double mag = std::abs(C9.prop1_lhs(FqElem{v}).value());
        double scaled = mag / (9.0 * 8.0);
        double nearest = std::round(scaled);
        CHECK(std::abs(scaled - nearest) < 1e-6);
        CHECK(nearest <= 2.0);
    }
}
