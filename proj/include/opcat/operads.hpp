#pragma once

// Arity spaces and composition for the operads in play: the unit operad I,
// Lie, Com, unital Com and unital Ass. Lie elements are always carried as
// linear combinations of multilinear associative words (faithful in
// characteristic zero), so every identity is certified by linear algebra.

#include "opcat/combinat.hpp"
#include "opcat/rational.hpp"
#include "opcat/smat.hpp"

#include <map>
#include <memory>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

namespace opcat {

enum class OperadId { Unit, Lie, Com, ComU, AssU };

inline const char* operad_name(OperadId id) {
    switch (id) {
        case OperadId::Unit: return "unit";
        case OperadId::Lie: return "lie";
        case OperadId::Com: return "com";
        case OperadId::ComU: return "comu";
        case OperadId::AssU: return "assu";
    }
    return "?";
}

inline bool operad_reduced(OperadId id) {
    return id == OperadId::Lie || id == OperadId::Com || id == OperadId::Unit;
}

// A multilinear word: each letter of the arity appears exactly once.
using AssWord = std::vector<int>;

// Linear combination of multilinear words of one fixed arity.
using WordSum = std::map<AssWord, Rational>;

inline void word_add(WordSum& s, const AssWord& w, const Rational& c) {
    if (is_zero(c)) return;
    auto [it, fresh] = s.emplace(w, c);
    if (!fresh) {
        it->second += c;
        if (is_zero(it->second)) s.erase(it);
    }
}

inline WordSum word_scale(const WordSum& s, const Rational& c) {
    WordSum out;
    for (auto& [w, v] : s) word_add(out, w, v * c);
    return out;
}

inline WordSum word_sum(const WordSum& a, const WordSum& b) {
    WordSum out = a;
    for (auto& [w, v] : b) word_add(out, w, v);
    return out;
}

// Concatenation product, extended bilinearly.
inline WordSum word_concat(const WordSum& a, const WordSum& b) {
    WordSum out;
    for (auto& [wa, ca] : a)
        for (auto& [wb, cb] : b) {
            AssWord w = wa;
            w.insert(w.end(), wb.begin(), wb.end());
            word_add(out, w, ca * cb);
        }
    return out;
}

// Binary bracket expression on distinct letters.
struct BracketTree {
    // leaf when letter > 0; otherwise internal node
    int letter = 0;
    std::unique_ptr<BracketTree> left, right;

    static BracketTree leaf(int l) {
        BracketTree t;
        t.letter = l;
        return t;
    }
    static BracketTree node(BracketTree a, BracketTree b) {
        BracketTree t;
        t.left = std::make_unique<BracketTree>(std::move(a));
        t.right = std::make_unique<BracketTree>(std::move(b));
        return t;
    }
    bool is_leaf() const { return letter > 0; }

    void letters(std::vector<int>& out) const {
        if (is_leaf()) out.push_back(letter);
        else {
            left->letters(out);
            right->letters(out);
        }
    }
};

// Full commutator expansion of a bracket expression; rejects repeated letters.
inline WordSum expand_bracket(const BracketTree& t) {
    {
        std::vector<int> ls;
        t.letters(ls);
        std::vector<int> sorted = ls;
        std::sort(sorted.begin(), sorted.end());
        if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
            throw std::invalid_argument("expand_bracket: repeated letter");
    }
    if (t.is_leaf()) {
        WordSum s;
        word_add(s, AssWord{t.letter}, Rational(1));
        return s;
    }
    WordSum l = expand_bracket(*t.left);
    WordSum r = expand_bracket(*t.right);
    return word_sum(word_concat(l, r), word_scale(word_concat(r, l), Rational(-1)));
}

// Left-normed bracket [[...[x_{w0}, x_{w1}], ...], x_{wk}] on the given letters.
inline WordSum left_normed_expansion(const std::vector<int>& word) {
    if (word.empty()) throw std::invalid_argument("empty bracket word");
    BracketTree t = BracketTree::leaf(word[0]);
    for (std::size_t i = 1; i < word.size(); ++i)
        t = BracketTree::node(std::move(t), BracketTree::leaf(word[i]));
    return expand_bracket(t);
}

// The (n-1)! left-normed generators [x_1, x_{s(2)}, ..., x_{s(n)}] of Lie(n),
// as bracket words; s runs lexicographically over permutations of {2..n}.
inline std::vector<std::vector<int>> lie_basis_words(int n) {
    std::vector<std::vector<int>> out;
    if (n <= 0) return out;
    if (n == 1) {
        out.push_back({1});
        return out;
    }
    std::vector<int> rest(n - 1);
    std::iota(rest.begin(), rest.end(), 2);
    do {
        std::vector<int> w{1};
        w.insert(w.end(), rest.begin(), rest.end());
        out.push_back(std::move(w));
    } while (std::next_permutation(rest.begin(), rest.end()));
    return out;
}

inline std::vector<WordSum> lie_basis(int n) {
    std::vector<WordSum> out;
    for (auto& w : lie_basis_words(n)) out.push_back(left_normed_expansion(w));
    return out;
}

// Index of a multilinear word of arity n among all n! words (lexicographic).
inline int word_index(const AssWord& w) {
    int n = static_cast<int>(w.size());
    std::vector<bool> used(n + 1, false);
    long long idx = 0;
    for (int i = 0; i < n; ++i) {
        int smaller = 0;
        for (int v = 1; v < w[i]; ++v)
            if (!used[v]) ++smaller;
        used[w[i]] = true;
        long long f = 1;
        for (int j = 2; j <= n - 1 - i; ++j) f *= j;
        idx += smaller * f;
    }
    return static_cast<int>(idx);
}

inline SparseVec word_sum_to_vec(const WordSum& s) {
    SparseVec v;
    for (auto& [w, c] : s) v.emplace_back(word_index(w), c);
    sv_normalize(v);
    return v;
}

// Echelon of the expansions of the left-normed basis inside the n!-dim
// multilinear span; solves membership / coordinates in Lie(n).
class LieSpan {
public:
    explicit LieSpan(int n) : n_(n), ech_(0) {
        auto basis = lie_basis(n);
        for (int j = 0; j < static_cast<int>(basis.size()); ++j)
            ech_.insert(word_sum_to_vec(basis[j]), j);
    }

    int arity() const { return n_; }
    int dim() const { return ech_.rank(); }

    bool coords(const WordSum& s, SparseVec& out) const {
        return ech_.solve(word_sum_to_vec(s), out);
    }
    bool contains(const WordSum& s) const {
        SparseVec tmp;
        return coords(s, tmp);
    }

private:
    int n_;
    TrackedEchelon ech_;
};

// Operadic substitution of multilinear words: the letters of the i-th inner
// block are shifted by the sum of the earlier inner arities.
inline WordSum operad_compose_words(const WordSum& outer,
                                    const std::vector<WordSum>& inners) {
    std::vector<int> arities;
    for (auto& inn : inners) {
        if (inn.empty()) return {};
        arities.push_back(static_cast<int>(inn.begin()->first.size()));
    }
    std::vector<int> offset(arities.size() + 1, 0);
    for (std::size_t i = 0; i < arities.size(); ++i) offset[i + 1] = offset[i] + arities[i];

    WordSum out;
    for (auto& [w, cw] : outer) {
        if (w.size() != inners.size())
            throw std::invalid_argument("operad_compose: arity mismatch");
        // distribute over the choice of a word from each inner sum
        std::vector<WordSum::const_iterator> its;
        for (auto& inn : inners) its.push_back(inn.begin());
        while (true) {
            AssWord word;
            Rational c = cw;
            for (int slot : w) {
                const AssWord& piece = its[slot - 1]->first;
                for (int letter : piece) word.push_back(offset[slot - 1] + letter);
                c *= its[slot - 1]->second;
            }
            word_add(out, word, c);
            int k = static_cast<int>(inners.size()) - 1;
            while (k >= 0 && std::next(its[k]) == inners[k].end()) {
                its[k] = inners[k].begin();
                --k;
            }
            if (k < 0) break;
            ++its[k];
        }
    }
    return out;
}

// Sign twist of the operadic suspension: p must permute positions within the
// given consecutive blocks; the result is the product of the block signs.
inline Rational suspension_sign_action(const Perm& p, const std::vector<int>& fibre_sizes) {
    int offset = 0;
    Rational sign(1);
    for (int sz : fibre_sizes) {
        std::vector<int> images;
        for (int i = 1; i <= sz; ++i) {
            int img = p(offset + i);
            if (img <= offset || img > offset + sz)
                throw std::invalid_argument("suspension_sign_action: permutation crosses fibres");
            images.push_back(img - offset);
        }
        sign *= perm_sign(Perm(images));
        offset += sz;
    }
    return sign;
}

} // namespace opcat
