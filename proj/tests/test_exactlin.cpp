#include <catch2/catch_amalgamated.hpp>

#include "opcat/smat.hpp"

#include <random>

using namespace opcat;

TEST_CASE("rank basics") {
    CHECK(rank(SparseMat(0, 0)) == 0);
    CHECK(rank(SparseMat::identity(5)) == 5);

    // [[1,2],[2,4]] has rank 1 (second row is twice the first).
    SparseMat m(2, 2);
    m.add(0, 0, rat(1));
    m.add(0, 1, rat(2));
    m.add(1, 0, rat(2));
    m.add(1, 1, rat(4));
    CHECK(rank(m) == 1);
}

TEST_CASE("kernel basics") {
    CHECK(kernel_basis(SparseMat::identity(3)).dim() == 0);
    CHECK(kernel_basis(SparseMat(3, 3)).dim() == 3);

    SparseMat m(1, 2);
    m.add(0, 0, rat(1));
    m.add(0, 1, rat(1));
    Subspace k = kernel_basis(m);
    REQUIRE(k.dim() == 1);
    CHECK(k.contains(SparseVec{{0, rat(1)}, {1, rat(-1)}}));
    CHECK_FALSE(k.contains(SparseVec{{0, rat(1)}, {1, rat(1)}}));
}

TEST_CASE("quotient map") {
    // Trivial relations: the quotient is an isomorphism.
    SparseMat q0 = quotient_map(4, Subspace(4));
    CHECK(q0.rows() == 4);
    CHECK(rank(q0) == 4);

    // Full relations: the quotient is the zero space.
    Subspace full(3);
    for (int i = 0; i < 3; ++i) full.basis.insert(SparseVec{{i, rat(1)}});
    CHECK(quotient_map(3, full).rows() == 0);

    Subspace rel(2);
    rel.basis.insert(SparseVec{{0, rat(1)}, {1, rat(-1)}});
    SparseMat q = quotient_map(2, rel);
    REQUIRE(q.rows() == 1);
    CHECK(q.apply(SparseVec{{0, rat(1)}, {1, rat(-1)}}).empty());
    CHECK_FALSE(q.apply(SparseVec{{0, rat(1)}, {1, rat(1)}}).empty());
}

TEST_CASE("subspace equality") {
    Subspace a(3), b(3);
    a.basis.insert(SparseVec{{0, rat(1)}});
    b.basis.insert(SparseVec{{0, rat(2)}});
    CHECK(subspaces_equal(a, b));

    Subspace c(3);
    c.basis.insert(SparseVec{{1, rat(1)}});
    CHECK_FALSE(subspaces_equal(a, c));

    Subspace d(3), e(3);
    d.basis.insert(SparseVec{{0, rat(1)}});
    d.basis.insert(SparseVec{{1, rat(1)}});
    e.basis.insert(SparseVec{{0, rat(1)}, {1, rat(1)}});
    e.basis.insert(SparseVec{{0, rat(1)}, {1, rat(-1)}});
    CHECK(subspaces_equal(d, e));
}

static SparseMat random_sparse(std::mt19937_64& rng, int rows, int cols) {
    SparseMat m(rows, cols);
    std::uniform_int_distribution<int> val(-3, 3);
    std::uniform_int_distribution<int> fill(0, 3);
    for (int r = 0; r < rows; ++r)
        for (int c = 0; c < cols; ++c)
            if (fill(rng) == 0) m.add(r, c, rat(val(rng)));
    return m;
}

TEST_CASE("rank-nullity and associativity properties") {
    std::mt19937_64 rng(20240901);
    for (int trial = 0; trial < 40; ++trial) {
        int rows = 1 + static_cast<int>(rng() % 6);
        int cols = 1 + static_cast<int>(rng() % 6);
        SparseMat m = random_sparse(rng, rows, cols);
        CHECK(rank(m) + kernel_basis(m).dim() == m.cols());

        // quotient_map composed with inclusion of the relations is zero
        Subspace rel = kernel_basis(m);
        SparseMat q = quotient_map(m.cols(), rel);
        for (auto& row : rel.basis.rows()) CHECK(q.apply(row).empty());
    }
    for (int trial = 0; trial < 25; ++trial) {
        int a = 1 + static_cast<int>(rng() % 4), b = 1 + static_cast<int>(rng() % 4);
        int c = 1 + static_cast<int>(rng() % 4), d = 1 + static_cast<int>(rng() % 4);
        SparseMat x = random_sparse(rng, a, b);
        SparseMat y = random_sparse(rng, b, c);
        SparseMat z = random_sparse(rng, c, d);
        CHECK((x * y) * z == x * (y * z));
    }
}

TEST_CASE("tracked echelon solves coordinates") {
    // Express (5,1) in terms of (1,1) and (2,0).
    TrackedEchelon te(2);
    te.insert(SparseVec{{0, rat(1)}, {1, rat(1)}}, 0);
    te.insert(SparseVec{{0, rat(2)}}, 1);
    SparseVec coords;
    REQUIRE(te.solve(SparseVec{{0, rat(5)}, {1, rat(1)}}, coords));
    CHECK(sv_get(coords, 0) == rat(1));
    CHECK(sv_get(coords, 1) == rat(2));
    CHECK_FALSE(te.solve(SparseVec{{2, rat(1)}}, coords));
}
