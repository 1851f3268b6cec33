#include <catch2/catch_amalgamated.hpp>

#include "opcat/operads.hpp"

using namespace opcat;

static WordSum word(std::initializer_list<int> w) {
    WordSum s;
    word_add(s, AssWord(w), rat(1));
    return s;
}

TEST_CASE("expand_bracket") {
    // [x1,x2] = x1x2 - x2x1
    WordSum b = expand_bracket(BracketTree::node(BracketTree::leaf(1), BracketTree::leaf(2)));
    CHECK(b == word_sum(word({1, 2}), word_scale(word({2, 1}), rat(-1))));

    // antisymmetry
    WordSum br = expand_bracket(BracketTree::node(BracketTree::leaf(2), BracketTree::leaf(1)));
    CHECK(word_sum(b, br).empty());

    // Jacobi: [[1,2],3] + [[2,3],1] + [[3,1],2] = 0
    auto nd = [](int a, int b, int c) {
        return expand_bracket(BracketTree::node(
            BracketTree::node(BracketTree::leaf(a), BracketTree::leaf(b)), BracketTree::leaf(c)));
    };
    CHECK(word_sum(word_sum(nd(1, 2, 3), nd(2, 3, 1)), nd(3, 1, 2)).empty());

    CHECK_THROWS(expand_bracket(BracketTree::node(BracketTree::leaf(1), BracketTree::leaf(1))));
}

TEST_CASE("lie_basis dimensions") {
    CHECK(lie_basis(0).empty());
    CHECK(lie_basis(1).size() == 1);
    CHECK(lie_basis(2).size() == 1);
    CHECK(lie_basis(3).size() == 2);

    // dim span(lie_basis(n)) = (n-1)! inside the n!-dim multilinear span
    for (int n = 1; n <= 6; ++n) {
        LieSpan span(n);
        CHECK(BigInt(span.dim()) == factorial(n - 1));
    }
}

TEST_CASE("operad_compose on words") {
    // outer x1x2 with inners (x1, x1x2) -> x1x2x3
    WordSum out = operad_compose_words(word({1, 2}), {word({1}), word({1, 2})});
    CHECK(out == word({1, 2, 3}));

    // identity inners keep the bracket
    WordSum bracket = left_normed_expansion({1, 2});
    CHECK(operad_compose_words(bracket, {word({1}), word({1})}) == bracket);

    // [x1,x2] o ([x1,x2], x1) = [[x1,x2],x3]
    WordSum out2 = operad_compose_words(bracket, {bracket, word({1})});
    CHECK(out2 == left_normed_expansion({1, 2, 3}));
}

TEST_CASE("lie subspace closed under composition") {
    LieSpan span4(4);
    WordSum b2 = left_normed_expansion({1, 2});
    WordSum b3 = left_normed_expansion({1, 3, 2});
    WordSum got = operad_compose_words(b2, {b3, word({1})});
    CHECK(span4.contains(got));
    CHECK_FALSE(span4.contains(word({1, 2, 3, 4})));
}

TEST_CASE("operad compose associativity (small property test)") {
    // ((a o b) o c) = (a o (b o c)) exercised through nested substitution
    WordSum a = word({2, 1});
    WordSum b = left_normed_expansion({1, 2});
    WordSum c = word({1, 2});
    // compose a(b, id) then substitute c into slot 1
    WordSum ab = operad_compose_words(a, {b, word({1})});
    WordSum left = operad_compose_words(ab, {c, word({1}), word({1})});
    // substitute first in b, then in a
    WordSum bc = operad_compose_words(b, {c, word({1})});
    WordSum right = operad_compose_words(a, {bc, word({1})});
    CHECK(left == right);
}

TEST_CASE("suspension_sign_action") {
    CHECK(suspension_sign_action(Perm::identity(3), {1, 2}) == rat(1));
    CHECK(suspension_sign_action(Perm({1, 3, 2}), {1, 2}) == rat(-1));
    CHECK(suspension_sign_action(Perm({2, 3, 1}), {3}) == rat(1));
    CHECK_THROWS(suspension_sign_action(Perm({2, 1}), {1, 1}));
}
