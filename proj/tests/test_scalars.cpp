#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "engine/scalars.hpp"

using namespace scalars;

namespace {

std::vector<RootOfUnity> all_roots_up_to(long dmax, Characteristic ch) {
    std::vector<RootOfUnity> out;
    for (long d = 1; d <= dmax; ++d) {
        if (ch.p != 0 && d % ch.p == 0) continue;
        for (long k = 0; k < d; ++k)
            if (gcd_long(k, d) == 1 || d == 1) out.push_back(zeta(d, k, ch));
    }
    return out;
}

}  // namespace

TEST_CASE("roots of unity are stored reduced") {
    CHECK(zeta(6, 2) == zeta(3, 1));
    CHECK(zeta(4, 2) == zeta(2, 1));
    CHECK(zeta(12, 0) == one_root());
    CHECK(zeta(5, 7) == zeta(5, 2));
    CHECK(zeta(6, 1).order() == 6);
}

TEST_CASE("group laws for orders up to 12") {
    auto roots = all_roots_up_to(12, Characteristic());
    for (const auto& a : roots) {
        CHECK(mul(a, inv(a)) == one_root());
        CHECK(mul(a, one_root()) == a);
        CHECK(pow(a, a.order()) == one_root());
        for (const auto& b : roots) {
            CHECK(mul(a, b) == mul(b, a));
            for (const auto& c : roots)
                CHECK(mul(mul(a, b), c) == mul(a, mul(b, c)));
        }
    }
}

TEST_CASE("characteristic guards") {
    CHECK_THROWS(Characteristic(4));
    CHECK_THROWS(zeta(3, 1, Characteristic(3)));
    CHECK_THROWS(zeta(6, 1, Characteristic(2)));
    CHECK_THROWS(zeta(10, 3, Characteristic(5)));
    CHECK(zeta(5, 1, Characteristic(3)).order() == 5);
    CHECK(neg_one(Characteristic(2)) == one_root());
    CHECK(neg_one(Characteristic(3)) == zeta(2, 1));
}

TEST_CASE("scalar literals round trip") {
    CHECK(to_string(one_root()) == "1");
    CHECK(to_string(zeta(2, 1)) == "-1");
    CHECK(to_string(zeta(6, 5)) == "zeta(6,5)");
    for (const auto& a : all_roots_up_to(12, Characteristic()))
        CHECK(parse_root(to_string(a)) == a);
    CHECK(parse_root("zeta(6,2)") == zeta(3, 1));
    CHECK_THROWS(parse_root("zeta(6)"));
    CHECK_THROWS(parse_root("q"));
}

TEST_CASE("q-numbers match embedded power sums") {
    for (int p : {0, 2, 3, 5}) {
        Characteristic ch(p);
        for (const auto& q : all_roots_up_to(12, ch)) {
            SplittingField F(ch, q.order());
            for (long m = 0; m <= 12; ++m) {
                FieldElement s = fe_zero(F);
                for (long i = 0; i < m; ++i) s = add(s, embed(pow(q, i, ch), F));
                CHECK(q_number_is_zero(m, q, ch) == s.is_zero());
            }
        }
    }
}

TEST_CASE("height is one past the last non-vanishing factorial") {
    for (int p : {0, 2, 3, 5}) {
        Characteristic ch(p);
        for (const auto& q : all_roots_up_to(12, ch)) {
            auto h = height(q, ch);
            if (!h.has_value()) {
                CHECK(p == 0);
                CHECK(q.is_one());
                CHECK(q_factorial_nonzero(50, q, ch));
                continue;
            }
            CHECK(q_factorial_nonzero(*h - 1, q, ch));
            CHECK_FALSE(q_factorial_nonzero(*h, q, ch));
        }
    }
}

TEST_CASE("field arithmetic in characteristic zero") {
    SplittingField F(Characteristic(), 12);
    CHECK(F.degree == 4);  // phi(12)
    FieldElement z = embed(zeta(12, 1), F);
    FieldElement acc = fe_one(F);
    for (int i = 0; i < 12; ++i) acc = mul(acc, z);
    CHECK(acc == fe_one(F));
    // zeta_12^6 = -1, zeta_12^4 = zeta_3
    CHECK(embed(zeta(2, 1), F) == mul(mul(embed(zeta(12, 1), F), embed(zeta(12, 1), F)),
                                      embed(zeta(12, 4), F)));
    CHECK(as_root_of_unity(z).has_value());
    CHECK(*as_root_of_unity(z) == zeta(12, 1));
    CHECK_FALSE(as_root_of_unity(add(z, fe_one(F))).has_value());
    for (long j = 0; j < 12; ++j) {
        FieldElement e = embed(zeta(12, j), F);
        CHECK(mul(e, inverse(e)) == fe_one(F));
    }
    FieldElement mixed = add(z, fe_from_int(F, 3));
    CHECK(mul(mixed, inverse(mixed)) == fe_one(F));
}

TEST_CASE("field arithmetic in characteristic p") {
    for (int p : {2, 3, 5, 7}) {
        for (long n : {1L, 3L, 4L, 5L, 6L, 12L}) {
            if (n % p == 0) continue;
            Characteristic ch(p);
            SplittingField F(ch, n);
            FieldElement z = embed(zeta(n, 1, ch), F);
            FieldElement acc = fe_one(F);
            for (long i = 1; i <= n; ++i) {
                acc = mul(acc, z);
                if (i < n && n > 1) CHECK_FALSE(acc == fe_one(F));
            }
            CHECK(acc == fe_one(F));
            CHECK(mul(z, inverse(z)) == fe_one(F));
            // embedding is multiplicative
            for (long a = 0; a < n; ++a)
                for (long b = 0; b < n; ++b)
                    CHECK(mul(embed(zeta(n, a, ch), F), embed(zeta(n, b, ch), F)) ==
                          embed(zeta(n, a + b, ch), F));
        }
    }
}

TEST_CASE("char p splitting field has degree ord_N(p)") {
    // 2 has order 4 mod 5, order 2 mod 3.
    CHECK(SplittingField(Characteristic(2), 5).degree == 4);
    CHECK(SplittingField(Characteristic(2), 3).degree == 2);
    CHECK(SplittingField(Characteristic(3), 5).degree == 4);
    CHECK(SplittingField(Characteristic(5), 4).degree == 1);  // 5 = 1 mod 4
    CHECK(SplittingField(Characteristic(7), 12).degree == 2);
    CHECK_THROWS(SplittingField(Characteristic(3), 6));
}

TEST_CASE("embed requires the order to divide the conductor") {
    SplittingField F(Characteristic(), 6);
    CHECK_THROWS(embed(zeta(4, 1), F));
    CHECK(as_root_of_unity(embed(zeta(3, 2), F)).has_value());
}
