#pragma once

// The contravariant action of free-group homomorphisms on Cat Ass^u(d, -).
//
// A basis element of Cat Ass^u(d,t) is read as a t-tuple of words (fibre i in
// its order). A homomorphism phi: F_s -> F_t, given by the images w_1..w_s of
// the generators, acts by the Hopf word calculus: the word sitting at target
// letter i is distributed over all occurrences of +-i among w_1..w_s as
// ordered subsequences (iterated shuffle coproduct), a negative occurrence
// receives the antipode (reverse the piece, sign (-1)^length), a letter with
// no occurrences kills every element whose fibre there is nonempty (counit),
// and each source slot concatenates its pieces in word order.
//
// Words are not freely reduced before acting; invariance under free reduction
// is a tested consequence, not an assumption.

#include "opcat/propcat.hpp"

#include <sstream>
#include <string>
#include <vector>

namespace opcat {

struct GroupWord {
    std::vector<int> letters; // signed, nonzero; |letter| <= ambient rank

    bool operator==(const GroupWord& o) const { return letters == o.letters; }
};

// Cancel adjacent x x^{-1} pairs until stable.
inline GroupWord freely_reduce(GroupWord w) {
    std::vector<int> out;
    for (int l : w.letters) {
        if (!out.empty() && out.back() == -l)
            out.pop_back();
        else
            out.push_back(l);
    }
    return GroupWord{std::move(out)};
}

struct FreeGroupHom {
    int source_rank = 0;
    int target_rank = 0;
    std::vector<GroupWord> words; // images of the source generators, in F_target

    void check() const {
        if (static_cast<int>(words.size()) != source_rank)
            throw std::invalid_argument("FreeGroupHom: wrong number of words");
        for (auto& w : words)
            for (int l : w.letters)
                if (l == 0 || l > target_rank || l < -target_rank)
                    throw std::invalid_argument("FreeGroupHom: letter out of range");
    }

    static FreeGroupHom identity(int t) {
        FreeGroupHom h;
        h.source_rank = h.target_rank = t;
        for (int j = 1; j <= t; ++j) h.words.push_back(GroupWord{{j}});
        return h;
    }

    // generator j of the source maps to x_{p(j)}
    static FreeGroupHom from_perm(const Perm& p) {
        FreeGroupHom h;
        h.source_rank = h.target_rank = p.degree();
        for (int j = 1; j <= p.degree(); ++j) h.words.push_back(GroupWord{{p(j)}});
        return h;
    }

    // F_{t+1} ->> F_t killing generator i (1 <= i <= t+1)
    static FreeGroupHom kill(int t, int i) {
        FreeGroupHom h;
        h.source_rank = t + 1;
        h.target_rank = t;
        for (int j = 1; j <= t + 1; ++j) {
            if (j == i) h.words.push_back(GroupWord{{}});
            else h.words.push_back(GroupWord{{j < i ? j : j - 1}});
        }
        return h;
    }

    // F_t -> F_{t+1} skipping generator i of the target (the unit insertion)
    static FreeGroupHom insert_unit(int t, int i) {
        FreeGroupHom h;
        h.source_rank = t;
        h.target_rank = t + 1;
        for (int j = 1; j <= t; ++j) h.words.push_back(GroupWord{{j < i ? j : j + 1}});
        return h;
    }

    // F_t -> F_t inverting generator i
    static FreeGroupHom invert(int t, int i) {
        FreeGroupHom h;
        h.source_rank = h.target_rank = t;
        for (int j = 1; j <= t; ++j) h.words.push_back(GroupWord{{j == i ? -j : j}});
        return h;
    }

    // F_t -> F_{t+1} sending x_i to x_i x_{i+1} (multiplication at slot i)
    static FreeGroupHom mult(int t, int i) {
        FreeGroupHom h;
        h.source_rank = t;
        h.target_rank = t + 1;
        for (int j = 1; j <= t; ++j) {
            if (j < i) h.words.push_back(GroupWord{{j}});
            else if (j == i) h.words.push_back(GroupWord{{i, i + 1}});
            else h.words.push_back(GroupWord{{j + 1}});
        }
        return h;
    }

    // F_{t+1} -> F_t folding x_i and x_{i+1} to x_i
    static FreeGroupHom fold(int t, int i) {
        FreeGroupHom h;
        h.source_rank = t + 1;
        h.target_rank = t;
        for (int j = 1; j <= t + 1; ++j) {
            if (j <= i) h.words.push_back(GroupWord{{j}});
            else if (j == i + 1) h.words.push_back(GroupWord{{i}});
            else h.words.push_back(GroupWord{{j - 1}});
        }
        return h;
    }

    // phi . psi : apply psi first (psi: F_u -> F_s, phi: F_s -> F_t)
    friend FreeGroupHom operator*(const FreeGroupHom& phi, const FreeGroupHom& psi) {
        if (phi.source_rank != psi.target_rank)
            throw std::invalid_argument("FreeGroupHom composition mismatch");
        FreeGroupHom out;
        out.source_rank = psi.source_rank;
        out.target_rank = phi.target_rank;
        for (auto& w : psi.words) {
            GroupWord img;
            for (int l : w.letters) {
                const GroupWord& repl = phi.words[std::abs(l) - 1];
                if (l > 0)
                    img.letters.insert(img.letters.end(), repl.letters.begin(),
                                       repl.letters.end());
                else
                    for (auto it = repl.letters.rbegin(); it != repl.letters.rend(); ++it)
                        img.letters.push_back(-*it);
            }
            out.words.push_back(std::move(img));
        }
        return out;
    }

    bool operator==(const FreeGroupHom& o) const {
        return source_rank == o.source_rank && target_rank == o.target_rank && words == o.words;
    }

    // text format: "s t ; w_1 ; ... ; w_s", words as signed whitespace-split letters
    std::string to_text() const {
        std::ostringstream os;
        os << source_rank << ' ' << target_rank;
        for (auto& w : words) {
            os << " ;";
            for (int l : w.letters) os << ' ' << l;
        }
        return os.str();
    }

    static FreeGroupHom from_text(const std::string& text) {
        FreeGroupHom h;
        std::istringstream is(text);
        std::string tok;
        if (!(is >> h.source_rank >> h.target_rank))
            throw std::invalid_argument("FreeGroupHom: bad header");
        GroupWord cur;
        bool started = false;
        while (is >> tok) {
            if (tok == ";") {
                if (started) h.words.push_back(cur);
                cur.letters.clear();
                started = true;
            } else {
                cur.letters.push_back(std::stoi(tok));
            }
        }
        if (started) h.words.push_back(cur);
        h.check();
        return h;
    }
};

namespace detail {

struct Occurrence {
    int slot;     // source generator index j (1-based)
    int position; // position within w_j (0-based)
    bool negative;
};

} // namespace detail

// act(phi, x): linear combination in Cat Ass^u(d, source_rank).
inline SparseVec act(const FreeGroupHom& phi, const AssBasisElem& x) {
    if (x.f.codomain_size != phi.target_rank)
        throw std::invalid_argument("act: rank mismatch");
    int d = x.f.domain_size;
    int t = phi.target_rank;
    int s = phi.source_rank;
    auto target_space = hom_space(OperadId::AssU, d, s);

    // occurrences of each target letter across the words
    std::vector<std::vector<detail::Occurrence>> occ(t + 1);
    for (int j = 1; j <= s; ++j) {
        const auto& ls = phi.words[j - 1].letters;
        for (int p = 0; p < static_cast<int>(ls.size()); ++p)
            occ[std::abs(ls[p])].push_back({j, p, ls[p] < 0});
    }
    for (int i = 1; i <= t; ++i)
        if (occ[i].empty() && !x.ord.seq[i - 1].empty()) return {}; // counit kills

    // one bucket of assigned domain letters per (slot, position)
    std::vector<std::vector<std::vector<int>>> buckets(s + 1);
    for (int j = 1; j <= s; ++j)
        buckets[j].assign(phi.words[j - 1].letters.size(), {});

    SparseVec out;
    // distribute the fibres letter-position by letter-position
    auto emit = [&]() {
        std::vector<std::vector<int>> seq(s);
        Rational coeff(1);
        for (int j = 1; j <= s; ++j) {
            const auto& ls = phi.words[j - 1].letters;
            for (int p = 0; p < static_cast<int>(ls.size()); ++p) {
                const auto& piece = buckets[j][p];
                if (ls[p] < 0) {
                    if (piece.size() % 2 == 1) coeff = -coeff;
                    for (auto it = piece.rbegin(); it != piece.rend(); ++it)
                        seq[j - 1].push_back(*it);
                } else {
                    for (int v : piece) seq[j - 1].push_back(v);
                }
            }
        }
        std::vector<int> images(d);
        for (int j = 1; j <= s; ++j)
            for (int v : seq[j - 1]) images[v - 1] = j;
        AssBasisElem e(FiniteMap(d, s, std::move(images)), FibreOrder(std::move(seq)));
        out.emplace_back(target_space->index_of(e), coeff);
    };

    // recursion over target letters; within a letter, over its fibre sequence
    auto rec = [&](auto&& self, int letter, std::size_t pos) -> void {
        if (letter > t) {
            emit();
            return;
        }
        const auto& fibre = x.ord.seq[letter - 1];
        if (pos == fibre.size()) {
            self(self, letter + 1, 0);
            return;
        }
        for (const auto& o : occ[letter]) {
            buckets[o.slot][o.position].push_back(fibre[pos]);
            self(self, letter, pos + 1);
            buckets[o.slot][o.position].pop_back();
        }
    };
    rec(rec, 1, 0);
    sv_normalize(out);
    return out;
}

inline SparseVec act(const FreeGroupHom& phi, const SparseVec& x, int d) {
    SparseVec out;
    auto src_space = hom_space(OperadId::AssU, d, phi.target_rank);
    for (auto& [i, c] : x) {
        SparseVec img = act(phi, src_space->elem(i));
        sv_axpy(out, c, img);
    }
    return out;
}

struct FunctorValueMap {
    int d = 0;
    FreeGroupHom phi;
    SparseMat matrix; // Cat Ass^u(d, target_rank) -> Cat Ass^u(d, source_rank)
};

inline FunctorValueMap value_matrix(int d, const FreeGroupHom& phi) {
    auto src = hom_space(OperadId::AssU, d, phi.target_rank);
    auto dst = hom_space(OperadId::AssU, d, phi.source_rank);
    FunctorValueMap out;
    out.d = d;
    out.phi = phi;
    out.matrix = SparseMat(static_cast<int>(dst->dim()), static_cast<int>(src->dim()));
    for (std::int64_t j = 0; j < src->dim(); ++j)
        for (auto& [r, c] : act(phi, src->elem(j)))
            out.matrix.add(static_cast<int>(r), static_cast<int>(j), c);
    return out;
}

// The generating homomorphisms with source and target ranks <= max_rank.
inline std::vector<FreeGroupHom> generating_homs(int max_rank) {
    std::vector<FreeGroupHom> out;
    for (int t = 2; t <= max_rank; ++t)
        for (int k = 1; k < t; ++k)
            out.push_back(FreeGroupHom::from_perm(Perm::transposition(t, k)));
    for (int t = 0; t + 1 <= max_rank; ++t)
        for (int i = 1; i <= t + 1; ++i) {
            out.push_back(FreeGroupHom::kill(t, i));
            out.push_back(FreeGroupHom::insert_unit(t, i));
        }
    for (int t = 1; t <= max_rank; ++t)
        for (int i = 1; i <= t; ++i) out.push_back(FreeGroupHom::invert(t, i));
    for (int t = 1; t + 1 <= max_rank; ++t)
        for (int i = 1; i <= t; ++i) {
            out.push_back(FreeGroupHom::mult(t, i));
            out.push_back(FreeGroupHom::fold(t, i));
        }
    return out;
}

// act(phi, -) commutes with right composition by every Cat Lie(d,e) basis
// morphism, for every generating phi with ranks <= max_rank.
inline bool right_lie_compatibility_check(int d, int e, int max_rank) {
    auto lie = hom_space(OperadId::Lie, d, e);
    for (const auto& phi : generating_homs(max_rank)) {
        int t = phi.target_rank, s = phi.source_rank;
        auto assu_et = hom_space(OperadId::AssU, e, t);
        auto assu_dt = hom_space(OperadId::AssU, d, t);
        auto assu_es = hom_space(OperadId::AssU, e, s);
        auto assu_ds = hom_space(OperadId::AssU, d, s);
        for (std::int64_t b = 0; b < lie->dim(); ++b) {
            SparseVec bexp = lie_elem_expansion(lie->elem(b), *hom_space(OperadId::AssU, d, e));
            for (std::int64_t i = 0; i < assu_et->dim(); ++i) {
                SparseVec x{{static_cast<int>(i), rat(1)}};
                // act then compose with b
                SparseVec a1 = act(phi, assu_et->elem(i));
                SparseVec r1 = compose_linear(*assu_ds, *assu_es, *hom_space(OperadId::AssU, d, e),
                                              a1, bexp);
                // compose with b then act
                SparseVec c1 = compose_linear(*assu_dt, *assu_et, *hom_space(OperadId::AssU, d, e),
                                              x, bexp);
                SparseVec r2 = act(phi, c1, d);
                sv_axpy(r1, rat(-1), r2);
                if (!r1.empty()) return false;
            }
        }
    }
    return true;
}

} // namespace opcat
