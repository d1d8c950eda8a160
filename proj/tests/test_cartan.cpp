#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <set>

#include "engine/cartan.hpp"

using namespace cartan;
using groups::FiniteGroup;
using scalars::Characteristic;
using scalars::one_root;
using scalars::RootOfUnity;
using scalars::zeta;

namespace {

Root rt(std::initializer_list<long> v) { return Root(v); }

Matrix a2() { return {{2, -1}, {-1, 2}}; }
Matrix b3() { return {{2, -1, 0}, {-1, 2, -1}, {0, -2, 2}}; }
Matrix c3() { return {{2, -1, 0}, {-1, 2, -2}, {0, -1, 2}}; }
Matrix a3() { return {{2, -1, 0}, {-1, 2, -1}, {0, -1, 2}}; }
Matrix f4() { return {{2, -1, 0, 0}, {-1, 2, -1, 0}, {0, -2, 2, -1}, {0, 0, -1, 2}}; }

AbstractSeed standard_seed(const Matrix& a) {
    AbstractSeed s;
    s.theta = (int)a.size();
    s.matrices = {a};
    s.reflections = {std::vector<int>(a.size(), 0)};
    return s;
}

AbstractSeed two_point_seed() {
    AbstractSeed s;
    s.theta = 3;
    s.matrices = {{{2, -1, 0}, {-1, 2, -1}, {0, -2, 2}},
                  {{2, -1, 0}, {-2, 2, -1}, {0, -2, 2}}};
    s.reflections = {{0, 0, 1}, {1, 1, 0}};
    return s;
}

std::set<Root> to_set(const std::vector<Root>& v) { return {v.begin(), v.end()}; }

groups::LinearCharacter pick_char(const groups::Subgroup& H, Characteristic ch,
                                  const std::vector<std::pair<int, RootOfUnity>>& want) {
    for (const auto& chi : groups::linear_characters(H, ch)) {
        bool ok = true;
        for (const auto& [g, v] : want)
            if (!(chi(g) == v)) {
                ok = false;
                break;
            }
        if (ok) return chi;
    }
    throw std::runtime_error("pick_char: no matching character");
}

}  // namespace

TEST_CASE("generalized Cartan matrix validation") {
    CHECK_NOTHROW(check_gcm(a2()));
    CHECK_THROWS(check_gcm(Matrix{{1, -1}, {-1, 2}}));
    CHECK_THROWS(check_gcm(Matrix{{2, 1}, {-1, 2}}));
    CHECK_THROWS(check_gcm(Matrix{{2, 0}, {-1, 2}}));
    CHECK_THROWS(check_gcm(Matrix{{2, -1}, {-1}}));
    CHECK(is_indecomposable(a2()));
    CHECK(!is_indecomposable(Matrix{{2, 0}, {0, 2}}));
    CHECK(is_indecomposable(f4()));
}

TEST_CASE("Kac trichotomy on standard examples") {
    CHECK(classify_gcm(a2()) == GCMType::Fin);
    CHECK(classify_gcm(Matrix{{2, -2}, {-2, 2}}) == GCMType::Aff);
    CHECK(classify_gcm(Matrix{{2, -1}, {-5, 2}}) == GCMType::Ind);
    CHECK(classify_gcm(Matrix{{2, -4}, {-1, 2}}) == GCMType::Aff);
    CHECK(classify_gcm(Matrix{{2, -3}, {-3, 2}}) == GCMType::Ind);
    CHECK(classify_gcm(Matrix{{2, -1, -1}, {-1, 2, -1}, {-1, -1, 2}}) == GCMType::Aff);
    CHECK(classify_gcm(b3()) == GCMType::Fin);
    CHECK(classify_gcm(c3()) == GCMType::Fin);
    CHECK(classify_gcm(f4()) == GCMType::Fin);
    CHECK(classify_gcm(Matrix{{2}}) == GCMType::Fin);
    // the affine companion of the two-point graph
    CHECK(classify_gcm(Matrix{{2, -1, 0}, {-2, 2, -1}, {0, -2, 2}}) == GCMType::Aff);
    CHECK_THROWS(classify_gcm(Matrix{{2, 0}, {0, 2}}));
}

TEST_CASE("trichotomy is invariant under transpose") {
    std::vector<Matrix> samples = {
        a2(), b3(), c3(), f4(),
        {{2, -2}, {-2, 2}},
        {{2, -4}, {-1, 2}},
        {{2, -1, -2}, {-1, 2, -1}, {-1, -1, 2}},  // non-symmetrizable cycle
        {{2, -1, 0}, {-2, 2, -1}, {0, -2, 2}},
    };
    for (const Matrix& a : samples) {
        int n = (int)a.size();
        Matrix t((size_t)n, std::vector<long>((size_t)n));
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) t[(size_t)j][(size_t)i] = a[(size_t)i][(size_t)j];
        CHECK(classify_gcm(a) == classify_gcm(t));
    }
}

TEST_CASE("rank two trichotomy closed form") {
    for (long p = 1; p <= 4; ++p)
        for (long q = 1; q <= 4; ++q) {
            Matrix a = {{2, -p}, {-q, 2}};
            GCMType t = classify_gcm(a);
            if (p * q <= 3)
                CHECK(t == GCMType::Fin);
            else if (p * q == 4)
                CHECK(t == GCMType::Aff);
            else
                CHECK(t == GCMType::Ind);
        }
}

TEST_CASE("finite type naming distinguishes the classical families") {
    CHECK(finite_type_name(a2())->to_string() == "A2");
    CHECK(finite_type_name(a3())->to_string() == "A3");
    CHECK(finite_type_name(b3())->to_string() == "B3");
    CHECK(finite_type_name(c3())->to_string() == "C3");
    CHECK(finite_type_name(f4())->to_string() == "F4");
    CHECK(finite_type_name(Matrix{{2, -1}, {-2, 2}})->to_string() == "B2");
    CHECK(finite_type_name(Matrix{{2, -2}, {-1, 2}})->to_string() == "B2");
    CHECK(finite_type_name(Matrix{{2, -1}, {-3, 2}})->to_string() == "G2");
    CHECK(finite_type_name(Matrix{{2, -3}, {-1, 2}})->to_string() == "G2");
    // D4 in a scrambled labeling
    Matrix d4 = {{2, -1, 0, 0}, {-1, 2, -1, -1}, {0, -1, 2, 0}, {0, -1, 0, 2}};
    CHECK(finite_type_name(d4)->to_string() == "D4");
    Matrix e6 = {{2, -1, 0, 0, 0, 0},  {-1, 2, -1, 0, 0, 0}, {0, -1, 2, -1, 0, -1},
                 {0, 0, -1, 2, -1, 0}, {0, 0, 0, -1, 2, 0},  {0, 0, -1, 0, 0, 2}};
    CHECK(finite_type_name(e6)->to_string() == "E6");
    CHECK(!finite_type_name(Matrix{{2, -2}, {-2, 2}}).has_value());
    CHECK(is_finite_type(Matrix{{2, -1, 0}, {-1, 2, 0}, {0, 0, 2}}));
    CHECK(!is_finite_type(Matrix{{2, -2, 0}, {-2, 2, 0}, {0, 0, 2}}));
}

TEST_CASE("simple reflection matrices") {
    // alpha_2 maps to alpha_1 + alpha_2; determinant is -1
    Matrix s = simple_reflection_matrix(a2(), 0);
    CHECK(s == Matrix{{-1, 1}, {0, 1}});
    CHECK(s[0][0] * s[1][1] - s[0][1] * s[1][0] == -1);
    // isolated vertex gives a sign flip in one coordinate
    Matrix iso = {{2, 0}, {0, 2}};
    CHECK(simple_reflection_matrix(iso, 1) == Matrix{{1, 0}, {0, -1}});
    CHECK(simple_reflection_matrix(b3(), 2) == Matrix{{1, 0, 0}, {0, 1, 0}, {0, 2, -1}});
}

TEST_CASE("abstract exploration of a standard rank-two graph") {
    SemiCartanGraph C = explore(standard_seed(a2()));
    CHECK(C.complete);
    CHECK(C.is_finite);
    CHECK(C.is_cartan_graph);
    CHECK(C.is_standard);
    CHECK(C.indecomposable);
    CHECK(C.roots[0].size() == 6);
    CHECK(to_set(C.positive_roots(0)) ==
          std::set<Root>{rt({1, 0}), rt({0, 1}), rt({1, 1})});
    std::vector<int> w = longest_word(C, 0);
    CHECK(w == std::vector<int>{0, 1, 0});
    std::vector<Root> betas = beta_sequence(C, 0, w);
    CHECK(betas == std::vector<Root>{rt({1, 0}), rt({1, 1}), rt({0, 1})});
    CHECK(weyl_orbits(C, 0).size() == 1);
    CHECK(finite_type_witness(C) == 0);
}

TEST_CASE("abstract exploration flags an affine graph as infinite") {
    SemiCartanGraph C = explore(standard_seed(Matrix{{2, -2}, {-2, 2}}),
                                ExploreCaps{16, 200, 8});
    CHECK(C.complete);
    CHECK(!C.is_finite);
    CHECK(!C.diagnostics.empty());
}

TEST_CASE("the two-point rank-three graph") {
    SemiCartanGraph C = explore(two_point_seed());
    REQUIRE(C.complete);
    CHECK(C.is_finite);
    CHECK(C.is_cartan_graph);
    CHECK(!C.is_standard);
    CHECK(C.indecomposable);

    std::set<Root> expected_x = {
        rt({1, 0, 0}), rt({0, 1, 0}), rt({0, 0, 1}), rt({1, 1, 0}), rt({0, 1, 1}),
        rt({1, 1, 1}), rt({0, 1, 2}), rt({1, 1, 2}), rt({1, 2, 2}), rt({1, 2, 3}),
        rt({1, 2, 4}), rt({1, 3, 4}), rt({2, 3, 4})};
    std::set<Root> expected_y = {
        rt({1, 0, 0}), rt({0, 1, 0}), rt({0, 0, 1}), rt({1, 1, 0}), rt({0, 1, 1}),
        rt({1, 2, 0}), rt({1, 1, 1}), rt({0, 1, 2}), rt({1, 2, 1}), rt({1, 1, 2}),
        rt({1, 2, 2}), rt({1, 3, 2}), rt({2, 3, 2})};
    CHECK(to_set(C.positive_roots(0)) == expected_x);
    CHECK(to_set(C.positive_roots(1)) == expected_y);

    std::vector<int> w = longest_word(C, 0);
    CHECK(w.size() == 13);
    beta_sequence(C, 0, w);

    // only X carries a finite-type matrix; Y's is affine
    CHECK(finite_type_witness(C) == 0);
    CHECK(classify_gcm(C.objects[1].cartan) == GCMType::Aff);

    // orbit sizes on positive roots are 6, 4, 3 with the expected members
    std::vector<std::vector<Root>> orbits = weyl_orbits(C, 0);
    REQUIRE(orbits.size() == 3);
    std::multiset<size_t> sizes;
    for (const auto& orb : orbits) {
        size_t pos = 0;
        std::set<Root> os(orb.begin(), orb.end());
        for (const Root& r : orb)
            if (*std::min_element(r.begin(), r.end()) >= 0) ++pos;
        if (os.count(rt({1, 0, 0}))) CHECK(pos == 6);
        if (os.count(rt({0, 0, 1}))) CHECK(pos == 4);
        if (os.count(rt({0, 1, 2}))) CHECK(pos == 3);
        sizes.insert(pos);
    }
    CHECK(sizes == std::multiset<size_t>{3, 4, 6});

    CHECK(rank3_catalog_match(C) == "case4");
}

TEST_CASE("rank-three catalog on standard graphs") {
    CHECK(rank3_catalog_match(explore(standard_seed(a3()))) == "A3-point-present");
    CHECK(rank3_catalog_match(explore(standard_seed(b3()))) == "std-B3");
    SemiCartanGraph cc = explore(standard_seed(c3()));
    CHECK(rank3_catalog_match(cc) == "std-C3");
    CHECK(cc.positive_roots(0).size() == 9);
    CHECK(longest_word(cc, 0).size() == 9);
    CHECK_THROWS(rank3_catalog_match(explore(standard_seed(a2()))));
}

TEST_CASE("standard F4 exploration") {
    SemiCartanGraph C = explore(standard_seed(f4()));
    CHECK(C.is_finite);
    CHECK(C.is_cartan_graph);
    CHECK(C.positive_roots(0).size() == 24);
    std::vector<int> w = longest_word(C, 0);
    CHECK(w.size() == 24);
    std::vector<Root> betas = beta_sequence(C, 0, w);
    CHECK(std::find(betas.begin(), betas.end(), rt({2, 3, 4, 2})) != betas.end());
}

TEST_CASE("group-backed exploration of rank-two tuples") {
    Characteristic ch;
    auto G = std::make_shared<FiniteGroup>(groups::direct_product(
        groups::make_gamma_quotient(2, 2, 2), groups::make_cyclic(2, "c")));
    int a = G->generator("a"), c = G->generator("c");
    ydmod::YDModule V =
        ydmod::induce(*G, a, pick_char(groups::centralizer(*G, a), ch,
                                       {{a, zeta(2, 1)}, {c, zeta(2, 1)}}));
    ydmod::YDModule W =
        ydmod::induce(*G, c, pick_char(groups::centralizer(*G, c), ch,
                                       {{a, one_root()}, {c, zeta(2, 1)}}));
    ydmod::YDTuple T = ydmod::make_tuple(*G, {V, W}, ch);
    SemiCartanGraph C = explore(T);
    CHECK(C.complete);
    CHECK(C.is_finite);
    CHECK(C.is_cartan_graph);
    CHECK(C.admits_all_reflections);
    CHECK(C.objects[0].cartan == Matrix{{2, -2}, {-1, 2}});
    CHECK(C.positive_roots(0).size() == 4);
    CHECK(finite_type_name(C.objects[(size_t)finite_type_witness(C)].cartan).has_value());
    for (size_t x = 0; x < C.objects.size(); ++x) {
        std::vector<int> w = longest_word(C, (int)x);
        CHECK(w.size() == 4);
    }
}

TEST_CASE("group-backed exploration of a non-standard graph") {
    Characteristic ch;
    auto G = std::make_shared<FiniteGroup>(groups::direct_product(
        groups::make_gamma_quotient(2, 2, 2), groups::make_cyclic(6, "c")));
    int a = G->generator("a"), c = G->generator("c");
    ydmod::YDModule V =
        ydmod::induce(*G, a, pick_char(groups::centralizer(*G, a), ch,
                                       {{a, zeta(2, 1)}, {c, zeta(3, 1)}}));
    ydmod::YDModule W =
        ydmod::induce(*G, c, pick_char(groups::centralizer(*G, c), ch,
                                       {{a, one_root()}, {c, zeta(2, 1)}}));
    CHECK(ydmod::classify_pair(V, W, ch).tag == "wp2");
    ydmod::YDTuple T = ydmod::make_tuple(*G, {V, W}, ch);
    SemiCartanGraph C = explore(T);
    CHECK(C.complete);
    CHECK(C.is_finite);
    CHECK(C.is_cartan_graph);
    CHECK(!C.is_standard);
    int witness = finite_type_witness(C);
    CHECK(classify_gcm(C.objects[(size_t)witness].cartan) == GCMType::Fin);
    // every object carries the same number of positive roots
    size_t count = C.positive_roots(0).size();
    for (size_t x = 1; x < C.objects.size(); ++x)
        CHECK(C.positive_roots((int)x).size() == count);
}

TEST_CASE("caps surface as inconclusive exploration") {
    SemiCartanGraph C = explore(standard_seed(Matrix{{2, -2}, {-2, 2}}),
                                ExploreCaps{4, 50, 8});
    CHECK(!C.is_finite);
    CHECK(!C.is_cartan_graph);
    CHECK_THROWS(longest_word(C, 0));
    CHECK_THROWS(finite_type_witness(C));
}
