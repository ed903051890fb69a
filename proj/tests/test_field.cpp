#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <set>

#include "hypercount/field.hpp"

using namespace hypercount;

namespace {

// Deterministic generator for property blocks.
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
    FqElem elem(const FieldCtx& F) { return FqElem{static_cast<uint32_t>(next() % F.q())}; }
};

} // namespace

TEST_CASE("construction picks deterministic generator and modulus") {
    auto F5 = FieldCtx::build(5, 1);
    CHECK(F5.q() == 5);
    CHECK(F5.generator().v == 2); // least primitive root mod 5

    auto F9 = FieldCtx::build(3, 2);
    CHECK(F9.q() == 9);
    // lexicographically least monic irreducible over F_3 is t^2 + 1
    CHECK(F9.modulus() == std::vector<int>{1, 0, 1});

    CHECK_THROWS_WITH_AS(FieldCtx::build(2, 3), doctest::Contains("odd prime"), Error);
    CHECK_THROWS_AS(FieldCtx::build(9, 1), Error);   // composite
    CHECK_THROWS_AS(FieldCtx::build(3011, 1), Error); // over the size cap
}

TEST_CASE("generator and dlog tables satisfy the field invariants") {
    for (auto [p, r] : {std::pair{5, 1}, {3, 2}, {13, 1}, {3, 3}, {5, 2}}) {
        auto F = FieldCtx::build(p, r);
        auto g = F.generator();
        CHECK(F.pow(g, F.q() - 1) == F.one());
        for (uint32_t k = 1; k < F.q() - 1; ++k) CHECK(F.pow(g, k) != F.one());
        for (uint32_t v = 1; v < F.q(); ++v) {
            FqElem x{v};
            CHECK(F.pow(g, F.dlog(x)) == x);
        }
    }
}

TEST_CASE("arithmetic examples") {
    auto F5 = FieldCtx::build(5, 1);
    CHECK(F5.add(FqElem{2}, FqElem{4}) == FqElem{1});
    CHECK(F5.inv(FqElem{2}) == FqElem{3});
    CHECK_THROWS_AS(F5.inv(F5.zero()), Error);

    auto F9 = FieldCtx::build(3, 2);
    FqElem t = F9.from_coeffs({0, 1});
    CHECK(F9.mul(t, t) == F9.from_int(2)); // t^2 = -1 = 2 mod 3
}

TEST_CASE("dlog examples") {
    auto F5 = FieldCtx::build(5, 1);
    CHECK(F5.dlog(FqElem{4}) == 2); // 2^2 = 4
    CHECK(F5.dlog(FqElem{1}) == 0);
    CHECK_THROWS_AS(F5.dlog(F5.zero()), Error);
}

TEST_CASE("trace examples and properties") {
    auto F5 = FieldCtx::build(5, 1);
    CHECK(F5.trace(FqElem{3}) == 3); // identity map when r = 1

    auto F9 = FieldCtx::build(3, 2);
    CHECK(F9.trace(F9.one()) == 2); // r * 1 = 2 mod 3
    FqElem t = F9.from_coeffs({0, 1});
    CHECK(F9.trace(t) == 0); // t + t^3 = t - t

    for (auto [p, r] : {std::pair{3, 2}, {5, 2}, {3, 3}}) {
        auto F = FieldCtx::build(p, r);
        SplitMix rng(7);
        for (int i = 0; i < 200; ++i) {
            auto x = rng.elem(F), y = rng.elem(F);
            CHECK(F.trace(F.add(x, y)) == (F.trace(x) + F.trace(y)) % p);
        }
        // surjectivity onto F_p
        std::set<int> seen;
        for (uint32_t v = 0; v < F.q(); ++v) seen.insert(F.trace(FqElem{v}));
        CHECK(static_cast<int>(seen.size()) == p);
    }
}

TEST_CASE("quadratic character") {
    auto F5 = FieldCtx::build(5, 1);
    CHECK(F5.quad_char(F5.zero()) == 0);
    CHECK(F5.quad_char(FqElem{4}) == 1);
    CHECK(F5.quad_char(FqElem{2}) == -1); // squares mod 5 are {1, 4}

    for (auto [p, r] : {std::pair{5, 1}, {3, 2}, {13, 1}, {5, 2}}) {
        auto F = FieldCtx::build(p, r);
        int squares = 0;
        for (uint32_t v = 1; v < F.q(); ++v)
            if (F.quad_char(FqElem{v}) == 1) ++squares;
        CHECK(squares == static_cast<int>(F.q() - 1) / 2);
        SplitMix rng(11);
        for (int i = 0; i < 200; ++i) {
            auto x = rng.elem(F), y = rng.elem(F);
            if (F.is_zero(x) || F.is_zero(y)) continue;
            CHECK(F.quad_char(F.mul(x, y)) == F.quad_char(x) * F.quad_char(y));
        }
    }
}

TEST_CASE("square roots") {
    auto F5 = FieldCtx::build(5, 1);
    CHECK(F5.sqrt(FqElem{4}).value() == FqElem{2}); // generator^(dlog/2) = 2^1
    CHECK_FALSE(F5.sqrt(FqElem{2}).has_value());
    CHECK(F5.sqrt(F5.zero()).value() == F5.zero());

    for (auto [p, r] : {std::pair{13, 1}, {3, 2}, {7, 2}}) {
        auto F = FieldCtx::build(p, r);
        for (uint32_t v = 0; v < F.q(); ++v) {
            FqElem x{v};
            auto s = F.sqrt(x);
            if (s) CHECK(F.mul(*s, *s) == x);
            else CHECK(F.quad_char(x) == -1);
        }
    }
}

TEST_CASE("field axioms on random triples") {
    for (auto [p, r] : {std::pair{13, 1}, {3, 2}, {5, 2}, {3, 3}}) {
        auto F = FieldCtx::build(p, r);
        SplitMix rng(42);
        for (int i = 0; i < 1000; ++i) {
            auto x = rng.elem(F), y = rng.elem(F), z = rng.elem(F);
            CHECK(F.add(F.add(x, y), z) == F.add(x, F.add(y, z)));
            CHECK(F.mul(F.mul(x, y), z) == F.mul(x, F.mul(y, z)));
            CHECK(F.add(x, y) == F.add(y, x));
            CHECK(F.mul(x, y) == F.mul(y, x));
            CHECK(F.mul(x, F.add(y, z)) == F.add(F.mul(x, y), F.mul(x, z)));
            CHECK(F.add(x, F.neg(x)) == F.zero());
            if (!F.is_zero(x)) CHECK(F.mul(x, F.inv(x)) == F.one());
        }
    }
}

TEST_CASE("frobenius is a field automorphism fixing exactly F_p") {
    for (auto [p, r] : {std::pair{3, 2}, {5, 2}, {3, 3}}) {
        auto F = FieldCtx::build(p, r);
        SplitMix rng(3);
        for (int i = 0; i < 300; ++i) {
            auto x = rng.elem(F), y = rng.elem(F);
            CHECK(F.frobenius(F.add(x, y)) == F.add(F.frobenius(x), F.frobenius(y)));
            CHECK(F.frobenius(F.mul(x, y)) == F.mul(F.frobenius(x), F.frobenius(y)));
        }
        int fixed = 0;
        for (uint32_t v = 0; v < F.q(); ++v)
            if (F.frobenius(FqElem{v}) == FqElem{v}) ++fixed;
        CHECK(fixed == p);
        // the fixed elements are exactly the constant-coefficient ones
        for (uint32_t v = 0; v < static_cast<uint32_t>(p); ++v)
            CHECK(F.frobenius(FqElem{v}) == FqElem{v});
    }
}

TEST_CASE("pow uses exponent mod q-1 on nonzero base") {
    auto F = FieldCtx::build(7, 1);
    for (uint32_t v = 1; v < 7; ++v) {
        CHECK(F.pow(FqElem{v}, 6) == F.one());
        CHECK(F.pow(FqElem{v}, -1) == F.inv(FqElem{v}));
        CHECK(F.pow(FqElem{v}, 13) == F.pow(FqElem{v}, 1));
    }
    CHECK(F.pow(F.zero(), 5) == F.zero());
    CHECK(F.pow(F.zero(), 0) == F.one());
}
