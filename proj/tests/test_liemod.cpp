#include <catch2/catch_amalgamated.hpp>

#include "opcat/liemod.hpp"

using namespace opcat;

TEST_CASE("symmetric group modules validate") {
    CHECK(validate(symmetric_group_module(regular_rep(3))).empty());
    CHECK(validate(symmetric_group_module(sign_rep(2))).empty());
    CHECK(validate(symmetric_group_module(trivial_rep(0))).empty());
}

TEST_CASE("forced antisymmetry violation is reported") {
    // dims (0,1,2) with alpha_1 not antisymmetrized
    LieModule m;
    m.N = 2;
    m.dims = {0, 1, 2};
    m.transpositions.resize(3);
    m.transpositions[2].push_back([] {
        SparseMat s(2, 2);
        s.add(0, 1, rat(1));
        s.add(1, 0, rat(1));
        return s;
    }());
    m.alpha.resize(2);
    m.alpha[1] = [] {
        SparseMat a(1, 2);
        a.add(0, 0, rat(1)); // kills neither summand correctly
        return a;
    }();
    auto bad = validate(m);
    bool found = false;
    for (auto& s : bad)
        if (s.find("antisymmetry") != std::string::npos) found = true;
    CHECK(found);
}

TEST_CASE("lie algebra modules") {
    LieAlgebra ab1 = LieAlgebra::abelian(1);
    LieModule m1 = lie_algebra_module(ab1, 3);
    CHECK(m1.dims == std::vector<int>{1, 1, 1, 1});
    for (int n = 1; n < 3; ++n) CHECK(m1.alpha_matrix(n).is_zero_matrix());
    CHECK(validate(m1).empty());

    LieAlgebra sl2 = LieAlgebra::sl2();
    CHECK(sl2.jacobi_ok());
    LieModule msl2 = lie_algebra_module(sl2, 2);
    CHECK(msl2.dims == std::vector<int>{1, 3, 9});
    CHECK(rank(msl2.alpha_matrix(1)) == 3); // the bracket of sl2 is surjective
    CHECK(validate(lie_algebra_module(sl2, 3)).empty());

    LieAlgebra heis = LieAlgebra::heisenberg();
    CHECK(heis.jacobi_ok());
    CHECK(validate(lie_algebra_module(heis, 3)).empty());
}

TEST_CASE("representable modules") {
    LieModule p1 = representable_module(1, 3);
    CHECK(p1.dims == std::vector<int>{0, 1, 0, 0});

    LieModule p2 = representable_module(2, 3);
    CHECK(p2.dims == std::vector<int>{0, 1, 2, 0});
    // alpha_1 kills the trivial summand of k[S_2] and is nonzero on the sign part
    SparseMat a = p2.alpha_matrix(1);
    SparseVec triv{{0, rat(1)}, {1, rat(1)}};
    SparseVec sgn{{0, rat(1)}, {1, rat(-1)}};
    CHECK(a.apply(triv).empty());
    CHECK_FALSE(a.apply(sgn).empty());

    LieModule p3 = representable_module(3, 3);
    CHECK(p3.dims == std::vector<int>{0, 2, 6, 6});

    CHECK(validate(p2).empty());
    CHECK(validate(p3).empty());
    CHECK(validate(representable_module(4, 4)).empty());
}

TEST_CASE("module hom spaces and the non-split extension") {
    // E: dims (0,1,1), s_1 = -1 on E(2), alpha an isomorphism
    LieModule E;
    E.N = 2;
    E.complete = true;
    E.dims = {0, 1, 1};
    E.transpositions.resize(3);
    E.transpositions[2].push_back([] {
        SparseMat s(1, 1);
        s.add(0, 0, rat(-1));
        return s;
    }());
    E.alpha.resize(2);
    E.alpha[1] = SparseMat::identity(1);
    E.name = "E";
    CHECK(validate(E).empty());

    LieModule sgn2 = symmetric_group_module(sign_rep(2));
    LieModule triv2 = symmetric_group_module(trivial_rep(2));
    LieModule k1 = symmetric_group_module(regular_rep(1));

    // the extension 0 -> k(1) -> E -> k_sgn(2) -> 0 does not split
    CHECK(module_hom_space(sgn2, E).dim == 0);
    CHECK(module_hom_space(k1, E).dim == 1);

    // P_2 = E (+) k_triv(2): an isomorphism of modules exists
    LieModule p2 = representable_module(2, 2);
    LieModule sum = direct_sum(E, triv2);
    ModuleHomSpace homs = module_hom_space(p2, sum);
    bool found_iso = false;
    for (auto& cand : homs.basis) {
        bool ok = true;
        for (int n = 1; n <= 2; ++n)
            if (rank(cand[n]) != p2.dim(n)) ok = false;
        if (ok) found_iso = true;
    }
    if (!found_iso && homs.dim >= 2) {
        // try the sum of the basis maps
        std::vector<SparseMat> cand;
        for (int n = 0; n <= 2; ++n) {
            SparseMat acc(sum.dim(n), p2.dim(n));
            for (auto& b : homs.basis) acc = acc + b[n];
            cand.push_back(acc);
        }
        bool ok = true;
        for (int n = 1; n <= 2; ++n)
            if (rank(cand[n]) != p2.dim(n)) ok = false;
        found_iso = ok;
    }
    CHECK(found_iso);

    // Yoneda: Hom(P_m, F) has the dimension of F(m)
    CHECK(module_hom_space(p2, p2).dim == 2);
    CHECK(module_hom_space(p2, sgn2).dim == 1);
    CHECK(module_hom_space(p2, k1).dim == 1);
}

TEST_CASE("convolution with the unit is the identity") {
    LieModule unit = symmetric_group_module(trivial_rep(0), "k");
    LieModule p2 = representable_module(2, 2);
    LieModule conv = convolution(p2, unit);
    REQUIRE(conv.N >= 2);
    for (int n = 0; n <= 2; ++n) CHECK(conv.dim(n) == p2.dim(n));
    for (int n = 2; n <= 2; ++n)
        for (int k = 1; k < n; ++k) CHECK(conv.transposition(n, k) == p2.transposition(n, k));
    CHECK(conv.alpha_matrix(1) == p2.alpha_matrix(1));
}

TEST_CASE("convolution of group algebras") {
    LieModule a = symmetric_group_module(regular_rep(1));
    LieModule b = symmetric_group_module(regular_rep(2));
    LieModule c = convolution(a, b);
    CHECK(c.N == 3);
    CHECK(c.dim(3) == 6);
    CHECK(c.dim(2) == 0);
    // regular character: trace 6 at the identity, 0 elsewhere
    for (auto& p : all_perms(3)) {
        SparseMat mp = c.perm_matrix(3, p);
        Rational tr(0);
        for (int i = 0; i < 6; ++i) tr += mp.at(i, i);
        CHECK(tr == (p.is_identity() ? rat(6) : rat(0)));
    }
    CHECK(validate(c).empty());
}

TEST_CASE("convolution of projectives") {
    LieModule p1 = representable_module(1, 1);
    LieModule conv = convolution(p1, p1);
    CHECK(conv.dim(2) == 2);
    CHECK(conv.dim(1) == 0);
    CHECK(validate(conv).empty());
}

TEST_CASE("projective convolution quotient") {
    // (1,1): at arity 2 an isomorphism, at arity 1 zero on the 1-dim space
    ProjConvQuotient q = convolution_projective_quotient(1, 1, 2);
    CHECK(q.maps[2].rows() == 2);
    CHECK(rank(q.maps[2]) == 2);
    CHECK(q.maps[1].cols() == 1);
    CHECK(q.maps[1].is_zero_matrix());

    // (0,k): the identity
    ProjConvQuotient q0 = convolution_projective_quotient(0, 2, 2);
    for (int t = 0; t <= 2; ++t) {
        CHECK(q0.maps[t].rows() == q0.maps[t].cols());
        CHECK(rank(q0.maps[t]) == q0.maps[t].rows());
    }

    // (2,1): kernel dimensions match the count of mixing components
    ProjConvQuotient q21 = convolution_projective_quotient(2, 1, 3);
    for (int t = 1; t <= 3; ++t) {
        auto src = hom_space(OperadId::Lie, 3, t);
        int mixing = 0;
        for (std::int64_t j = 0; j < src->dim(); ++j) {
            AssBasisElem e = src->elem(j);
            bool mixed = false;
            for (auto& w : e.ord.seq) {
                bool lo = false, hi = false;
                for (int l : w) (l <= 2 ? lo : hi) = true;
                if (lo && hi) mixed = true;
            }
            if (mixed) ++mixing;
        }
        CHECK(kernel_basis(q21.maps[t]).dim() == mixing);
        CHECK(rank(q21.maps[t]) == q21.conv.dim(t)); // surjective
    }

    // compatibility with the module structure: the quotient is a module map
    LieModule p3 = representable_module(3, 3);
    for (int t = 1; t < 3; ++t) {
        CHECK(q21.maps[t] * p3.alpha_matrix(t) == q21.conv.alpha_matrix(t) * q21.maps[t + 1]);
        for (int k = 1; k < t + 1; ++k)
            CHECK(q21.maps[t + 1] * p3.transposition(t + 1, k) ==
                  q21.conv.transposition(t + 1, k) * q21.maps[t + 1]);
    }
}
