#include <catch2/catch_amalgamated.hpp>

#include "opcat/gract.hpp"

#include <random>

using namespace opcat;

static AssBasisElem elem_of(int d, int t, std::vector<int> images,
                            std::vector<std::vector<int>> ord) {
    return AssBasisElem(FiniteMap(d, t, std::move(images)), FibreOrder(std::move(ord)));
}

TEST_CASE("identity acts as identity") {
    FunctorValueMap m = value_matrix(3, FreeGroupHom::identity(2));
    CHECK(m.matrix == SparseMat::identity(static_cast<int>(hom_space(OperadId::AssU, 3, 2)->dim())));
}

TEST_CASE("unit insertion kills nonempty fibres") {
    // e_1: F_1 -> F_2 skipping target generator 1
    FreeGroupHom e1 = FreeGroupHom::insert_unit(1, 1);
    AssBasisElem hit = elem_of(2, 2, {1, 1}, {{1, 2}, {}});
    CHECK(act(e1, hit).empty());
    AssBasisElem miss = elem_of(2, 2, {2, 2}, {{}, {2, 1}});
    SparseVec img = act(e1, miss);
    REQUIRE(img.size() == 1);
    // lands on the order (2,1) of the unique fibre of 2 -> 1
    auto h21 = hom_space(OperadId::AssU, 2, 1);
    CHECK(img[0].first == h21->index_of(elem_of(2, 1, {1, 1}, {{2, 1}})));
    CHECK(img[0].second == rat(1));
}

TEST_CASE("inversion reverses a fibre with sign") {
    FreeGroupHom c1 = FreeGroupHom::invert(1, 1);
    AssBasisElem x = elem_of(3, 1, {1, 1, 1}, {{2, 3, 1}});
    SparseVec img = act(c1, x);
    REQUIRE(img.size() == 1);
    auto h31 = hom_space(OperadId::AssU, 3, 1);
    CHECK(img[0].first == h31->index_of(elem_of(3, 1, {1, 1, 1}, {{1, 3, 2}})));
    CHECK(img[0].second == rat(-1)); // (-1)^3
}

TEST_CASE("multiplication concatenates fibres in order") {
    // x_1 -> x_1 x_2 : Cat Ass^u(3,2) -> Cat Ass^u(3,1)
    FreeGroupHom mu = FreeGroupHom::mult(1, 1);
    AssBasisElem x = elem_of(3, 2, {2, 1, 1}, {{3, 2}, {1}});
    SparseVec img = act(mu, x);
    REQUIRE(img.size() == 1);
    auto h31 = hom_space(OperadId::AssU, 3, 1);
    CHECK(img[0].first == h31->index_of(elem_of(3, 1, {1, 1, 1}, {{3, 2, 1}})));
}

TEST_CASE("fold is the shuffle coproduct") {
    FreeGroupHom fo = FreeGroupHom::fold(1, 1);
    AssBasisElem x = elem_of(2, 1, {1, 1}, {{2, 1}});
    SparseVec img = act(fo, x);
    // 2^2 = 4 ordered splits of the fibre (2,1)
    CHECK(img.size() == 4);
    auto h22 = hom_space(OperadId::AssU, 2, 2);
    // letter 2 to slot 1, letter 1 to slot 2 and vice versa
    CHECK(sv_get(img, static_cast<int>(h22->index_of(elem_of(2, 2, {2, 1}, {{2}, {1}})))) ==
          rat(1));
    CHECK(sv_get(img, static_cast<int>(h22->index_of(elem_of(2, 2, {1, 2}, {{1}, {2}})))) ==
          rat(1));
}

TEST_CASE("rank one values give the abelianization dual") {
    // at d = 1, the matrix of phi is the exponent-sum matrix
    FreeGroupHom phi;
    phi.source_rank = 2;
    phi.target_rank = 2;
    phi.words = {GroupWord{{1, 2, -1}}, GroupWord{{-2, -2, 1}}};
    FunctorValueMap m = value_matrix(1, phi);
    // row j, column i = exponent sum of i in w_j
    CHECK(m.matrix.at(0, 0) == rat(0));  // w_1: 1 + 2 - 1
    CHECK(m.matrix.at(0, 1) == rat(1));
    CHECK(m.matrix.at(1, 0) == rat(1));
    CHECK(m.matrix.at(1, 1) == rat(-2));
}

static FreeGroupHom random_hom(std::mt19937_64& rng, int s, int t, int maxlen) {
    FreeGroupHom h;
    h.source_rank = s;
    h.target_rank = t;
    for (int j = 0; j < s; ++j) {
        GroupWord w;
        int len = static_cast<int>(rng() % (maxlen + 1));
        for (int k = 0; k < len && t > 0; ++k) {
            int l = 1 + static_cast<int>(rng() % t);
            if (rng() % 2) l = -l;
            w.letters.push_back(l);
        }
        h.words.push_back(std::move(w));
    }
    return h;
}

TEST_CASE("contravariant functoriality on random homs") {
    std::mt19937_64 rng(99);
    for (int trial = 0; trial < 12; ++trial) {
        int u = 1 + static_cast<int>(rng() % 2);
        int s = 1 + static_cast<int>(rng() % 2);
        int t = 1 + static_cast<int>(rng() % 2);
        FreeGroupHom phi = random_hom(rng, s, t, 2);
        FreeGroupHom psi = random_hom(rng, u, s, 2);
        int d = 2 + static_cast<int>(rng() % 2);
        FunctorValueMap mphi = value_matrix(d, phi);
        FunctorValueMap mpsi = value_matrix(d, psi);
        FunctorValueMap mcomp = value_matrix(d, phi * psi);
        CHECK(mcomp.matrix == mpsi.matrix * mphi.matrix);
    }
}

TEST_CASE("free reduction invariance") {
    // inserting x x^{-1} into a word does not change the action
    FreeGroupHom plain;
    plain.source_rank = 1;
    plain.target_rank = 2;
    plain.words = {GroupWord{{1, 2}}};
    FreeGroupHom padded;
    padded.source_rank = 1;
    padded.target_rank = 2;
    padded.words = {GroupWord{{1, -2, 2, 2}}};
    for (int d = 1; d <= 3; ++d)
        CHECK(value_matrix(d, plain).matrix == value_matrix(d, padded).matrix);

    CHECK(freely_reduce(GroupWord{{1, -2, 2, 2}}) == GroupWord{{1, 2}});
}

TEST_CASE("text round trip") {
    FreeGroupHom h;
    h.source_rank = 2;
    h.target_rank = 2;
    h.words = {GroupWord{{1, -2, 1}}, GroupWord{{}}};
    FreeGroupHom back = FreeGroupHom::from_text(h.to_text());
    CHECK(back == h);
    CHECK(h.to_text() == "2 2 ; 1 -2 1 ;");
}

TEST_CASE("action commutes with the right Lie action") {
    CHECK(right_lie_compatibility_check(2, 2, 2)); // permutations only
    CHECK(right_lie_compatibility_check(2, 1, 2)); // bracket vs fold etc.
    CHECK(right_lie_compatibility_check(3, 2, 2));
}

TEST_CASE("polynomial degree of Cat Ass^u(d,-)") {
    // every basis element of Cat Ass^u(d,t), t > d, misses some target letter,
    // so the images of the unit insertions span everything
    int d = 2, t = 3;
    auto hs = hom_space(OperadId::AssU, d, t);
    Echelon span(static_cast<int>(hs->dim()));
    for (int i = 1; i <= t; ++i) {
        FunctorValueMap m = value_matrix(d, FreeGroupHom::kill(t - 1, i));
        for (int c = 0; c < m.matrix.cols(); ++c) {
            SparseVec col;
            for (int r = 0; r < m.matrix.rows(); ++r) {
                Rational v = m.matrix.at(r, c);
                if (!is_zero(v)) col.emplace_back(r, v);
            }
            span.insert(std::move(col));
        }
    }
    CHECK(span.rank() == hs->dim());
}
