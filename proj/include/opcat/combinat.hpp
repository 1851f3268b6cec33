#pragma once

// Enumeration and indexing of permutations, functions, surjections, fibre
// orderings, shuffles and ordered partitions. Everything is 1-based and all
// enumeration orders are deterministic (lexicographic), so basis indices are
// reproducible across runs.

#include "opcat/rational.hpp"

#include <algorithm>
#include <cassert>
#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <vector>

namespace opcat {

struct Perm {
    // images[i-1] = image of i; a bijection of {1..n}.
    std::vector<int> images;

    Perm() = default;
    explicit Perm(std::vector<int> im) : images(std::move(im)) {}

    static Perm identity(int n) {
        Perm p;
        p.images.resize(n);
        std::iota(p.images.begin(), p.images.end(), 1);
        return p;
    }

    // Adjacent transposition (k, k+1) in S_n, 1 <= k < n.
    static Perm transposition(int n, int k) {
        Perm p = identity(n);
        std::swap(p.images[k - 1], p.images[k]);
        return p;
    }

    int degree() const { return static_cast<int>(images.size()); }
    int operator()(int i) const { return images[i - 1]; }

    bool is_identity() const {
        for (int i = 1; i <= degree(); ++i)
            if ((*this)(i) != i) return false;
        return true;
    }

    Perm inverse() const {
        Perm p;
        p.images.resize(images.size());
        for (int i = 1; i <= degree(); ++i) p.images[(*this)(i)-1] = i;
        return p;
    }

    // (a * b)(i) = a(b(i)): apply b first.
    friend Perm operator*(const Perm& a, const Perm& b) {
        assert(a.degree() == b.degree());
        Perm p;
        p.images.resize(a.images.size());
        for (int i = 1; i <= a.degree(); ++i) p.images[i - 1] = a(b(i));
        return p;
    }

    bool operator==(const Perm& o) const { return images == o.images; }
    bool operator<(const Perm& o) const { return images < o.images; }
};

inline std::vector<Perm> all_perms(int n) {
    std::vector<int> im(n);
    std::iota(im.begin(), im.end(), 1);
    std::vector<Perm> out;
    do out.emplace_back(im);
    while (std::next_permutation(im.begin(), im.end()));
    return out;
}

inline int perm_sign_int(const Perm& p) {
    int n = p.degree();
    std::vector<bool> seen(n + 1, false);
    int sign = 1;
    for (int i = 1; i <= n; ++i) {
        if (seen[i]) continue;
        int len = 0;
        for (int j = i; !seen[j]; j = p(j)) { seen[j] = true; ++len; }
        if (len % 2 == 0) sign = -sign;
    }
    return sign;
}

inline Rational perm_sign(const Perm& p) { return Rational(perm_sign_int(p)); }

// Sign of the sequence `images` read as a permutation of its sorted copy.
// The entries must be distinct but need not be 1..n.
inline int sequence_sign(const std::vector<int>& images) {
    int n = static_cast<int>(images.size());
    std::vector<int> sorted = images;
    std::sort(sorted.begin(), sorted.end());
    std::vector<int> rel(n);
    for (int i = 0; i < n; ++i)
        rel[i] = static_cast<int>(std::lower_bound(sorted.begin(), sorted.end(), images[i]) -
                                  sorted.begin()) + 1;
    return perm_sign_int(Perm(rel));
}

// Word in adjacent transpositions (k, k+1); composing left-to-right as
// "apply later entries first" reproduces p: p = t[0] * t[1] * ... * t[last].
inline std::vector<int> adjacent_transposition_word(const Perm& p) {
    std::vector<int> w;
    std::vector<int> im = p.images;
    int n = static_cast<int>(im.size());
    // Bubble-sort im to the identity, recording swaps; the swaps applied in
    // reverse order rebuild p from the identity.
    for (bool moved = true; moved;) {
        moved = false;
        for (int k = 0; k + 1 < n; ++k) {
            if (im[k] > im[k + 1]) {
                std::swap(im[k], im[k + 1]);
                w.push_back(k + 1);
                moved = true;
            }
        }
    }
    std::reverse(w.begin(), w.end());
    return w;
}

struct FiniteMap {
    int domain_size = 0;
    int codomain_size = 0;
    std::vector<int> images; // images[i-1] in 1..codomain_size

    FiniteMap() = default;
    FiniteMap(int m, int n, std::vector<int> im)
        : domain_size(m), codomain_size(n), images(std::move(im)) {
        assert(static_cast<int>(images.size()) == m);
    }

    int operator()(int i) const { return images[i - 1]; }

    std::vector<int> fibre(int j) const {
        std::vector<int> out;
        for (int i = 1; i <= domain_size; ++i)
            if ((*this)(i) == j) out.push_back(i);
        return out;
    }

    std::vector<int> fibre_sizes() const {
        std::vector<int> out(codomain_size, 0);
        for (int i = 1; i <= domain_size; ++i) ++out[(*this)(i)-1];
        return out;
    }

    bool is_surjective() const {
        std::vector<bool> hit(codomain_size, false);
        for (int v : images) hit[v - 1] = true;
        return std::all_of(hit.begin(), hit.end(), [](bool b) { return b; });
    }

    // g . f : apply f first.
    friend FiniteMap operator*(const FiniteMap& g, const FiniteMap& f) {
        assert(f.codomain_size == g.domain_size);
        std::vector<int> im(f.domain_size);
        for (int i = 1; i <= f.domain_size; ++i) im[i - 1] = g(f(i));
        return FiniteMap(f.domain_size, g.codomain_size, std::move(im));
    }

    bool operator==(const FiniteMap& o) const {
        return domain_size == o.domain_size && codomain_size == o.codomain_size &&
               images == o.images;
    }
    bool operator<(const FiniteMap& o) const { return images < o.images; }
};

// All n^m functions m -> n in lexicographic order on image lists.
inline std::vector<FiniteMap> enumerate_functions(int m, int n) {
    if (m < 0 || n < 0) throw std::invalid_argument("negative arity");
    std::vector<FiniteMap> out;
    if (m == 0) {
        out.emplace_back(0, n, std::vector<int>{});
        return out;
    }
    if (n == 0) return out; // no functions from a nonempty set to the empty set
    std::vector<int> im(m, 1);
    while (true) {
        out.emplace_back(m, n, im);
        int k = m - 1;
        while (k >= 0 && im[k] == n) im[k--] = 1;
        if (k < 0) break;
        ++im[k];
    }
    return out;
}

inline std::vector<FiniteMap> enumerate_surjections(int m, int n) {
    std::vector<FiniteMap> out;
    if (m < n) return out;
    for (auto& f : enumerate_functions(m, n))
        if (f.is_surjective()) out.push_back(f);
    return out;
}

inline std::int64_t count_functions(int m, int n) {
    std::int64_t c = 1;
    for (int i = 0; i < m; ++i) c *= n;
    return m == 0 ? 1 : c;
}

// For each codomain point, the fibre listed in a chosen total order.
struct FibreOrder {
    std::vector<std::vector<int>> seq; // seq[j-1] = f^{-1}(j) in order

    FibreOrder() = default;
    explicit FibreOrder(std::vector<std::vector<int>> s) : seq(std::move(s)) {}

    static FibreOrder increasing(const FiniteMap& f) {
        std::vector<std::vector<int>> s(f.codomain_size);
        for (int j = 1; j <= f.codomain_size; ++j) s[j - 1] = f.fibre(j);
        return FibreOrder(std::move(s));
    }

    bool consistent_with(const FiniteMap& f) const {
        if (static_cast<int>(seq.size()) != f.codomain_size) return false;
        std::vector<bool> seen(f.domain_size + 1, false);
        int total = 0;
        for (int j = 1; j <= f.codomain_size; ++j) {
            for (int x : seq[j - 1]) {
                if (x < 1 || x > f.domain_size || seen[x] || f(x) != j) return false;
                seen[x] = true;
                ++total;
            }
        }
        return total == f.domain_size;
    }

    // All domain elements, fibre 1 first, each fibre in its order.
    std::vector<int> concatenation() const {
        std::vector<int> out;
        for (auto& s : seq) out.insert(out.end(), s.begin(), s.end());
        return out;
    }

    bool operator==(const FibreOrder& o) const { return seq == o.seq; }
    bool operator<(const FibreOrder& o) const { return seq < o.seq; }
};

// All (p,q)-shuffles of {1..p+q}: permutations increasing on {1..p} and on
// {p+1..p+q}; count C(p+q, p).
inline std::vector<Perm> shuffles(int p, int q) {
    int n = p + q;
    std::vector<Perm> out;
    std::vector<int> positions(p);
    // Choose the images of 1..p among 1..n (increasing); the rest go to p+1..p+q.
    std::vector<bool> chosen(n + 1, false);
    std::vector<int> comb(p);
    std::iota(comb.begin(), comb.end(), 1);
    while (true) {
        std::fill(chosen.begin(), chosen.end(), false);
        Perm s;
        s.images.resize(n);
        for (int i = 0; i < p; ++i) { s.images[i] = comb[i]; chosen[comb[i]] = true; }
        int next = 0;
        for (int v = 1; v <= n; ++v)
            if (!chosen[v]) s.images[p + next++] = v;
        out.push_back(std::move(s));
        if (p == 0) break;
        int k = p - 1;
        while (k >= 0 && comb[k] == n - (p - 1 - k)) --k;
        if (k < 0) break;
        ++comb[k];
        for (int j = k + 1; j < p; ++j) comb[j] = comb[j - 1] + 1;
    }
    return out;
}

struct FibreSplit {
    std::vector<int> first;  // carries the fibre's first element
    std::vector<int> second; // nonempty complement
    Rational unshuffle_sign; // sign sorting (first ++ second) back into the fibre order
};

// All unordered partitions of an ordered fibre into two nonempty blocks with
// induced orders. Fibres of size < 2 admit no split.
inline std::vector<FibreSplit> fibre_splits(const std::vector<int>& fibre) {
    int k = static_cast<int>(fibre.size());
    std::vector<FibreSplit> out;
    if (k < 2) return out;
    // The block containing fibre[0] is A; choose any nonempty subset of the
    // remaining positions for B.
    for (std::uint32_t mask = 1; mask < (1u << (k - 1)); ++mask) {
        FibreSplit s;
        std::vector<int> order_positions;
        for (int i = 0; i < k; ++i) {
            bool in_b = i > 0 && (mask >> (i - 1)) & 1u;
            (in_b ? s.second : s.first).push_back(fibre[i]);
        }
        for (int i = 0; i < k; ++i) {
            bool in_b = i > 0 && (mask >> (i - 1)) & 1u;
            if (!in_b) order_positions.push_back(i + 1);
        }
        for (int i = 1; i < k; ++i)
            if ((mask >> (i - 1)) & 1u) order_positions.push_back(i + 1);
        s.unshuffle_sign = Rational(sequence_sign(order_positions));
        out.push_back(std::move(s));
    }
    return out;
}

// Weak compositions of m into t parts, lexicographic on the part lists.
inline std::vector<std::vector<int>> compositions(int m, int t) {
    std::vector<std::vector<int>> out;
    std::vector<int> cur;
    auto rec = [&](auto&& self, int rest, int parts) -> void {
        if (parts == 0) {
            if (rest == 0) out.push_back(cur);
            return;
        }
        for (int v = 0; v <= rest; ++v) {
            cur.push_back(v);
            self(self, rest - v, parts - 1);
            cur.pop_back();
        }
    };
    rec(rec, m, t);
    return out;
}

} // namespace opcat
