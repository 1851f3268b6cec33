#pragma once

// Hom-spaces Cat O(m,n) with enumerated bases and composition, for
// O in {I, Lie, Com, Com^u, Ass^u}. A basis element of Cat Ass^u(m,n) is a
// pair (f, Ord(f)): a function f: m -> n together with a total order on each
// fibre. Lie morphisms are pairs (surjection, left-normed word per fibre) and
// are always expanded into Ass^u coordinates before any computation.
//
// Composite fibre ordering: in g . f (f first), the fibre of the composite
// over k lists the middle points of g's fibre in Ord(g) order, each replaced
// by its f-fibre in Ord(f) order.

#include "opcat/combinat.hpp"
#include "opcat/operads.hpp"
#include "opcat/rational.hpp"
#include "opcat/smat.hpp"

#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <stdexcept>
#include <tuple>
#include <vector>

namespace opcat {

struct AssBasisElem {
    FiniteMap f;
    FibreOrder ord;

    AssBasisElem() = default;
    AssBasisElem(FiniteMap fm, FibreOrder o) : f(std::move(fm)), ord(std::move(o)) {}

    static AssBasisElem canonical(FiniteMap fm) {
        FibreOrder o = FibreOrder::increasing(fm);
        return AssBasisElem(std::move(fm), std::move(o));
    }

    static AssBasisElem from_perm(const Perm& p) {
        FiniteMap fm(p.degree(), p.degree(), p.images);
        return canonical(std::move(fm));
    }

    bool operator==(const AssBasisElem& o) const { return f == o.f && ord == o.ord; }
    bool operator<(const AssBasisElem& o) const {
        if (!(f == o.f)) return f < o.f;
        return ord < o.ord;
    }
};

// g . f with the Ord(g)-major / Ord(f)-minor composite ordering.
inline AssBasisElem compose_basis(const AssBasisElem& g, const AssBasisElem& f) {
    if (f.f.codomain_size != g.f.domain_size)
        throw std::invalid_argument("compose_basis: object mismatch");
    FiniteMap cf = g.f * f.f;
    std::vector<std::vector<int>> seq(g.f.codomain_size);
    for (int k = 1; k <= g.f.codomain_size; ++k)
        for (int y : g.ord.seq[k - 1])
            for (int x : f.ord.seq[y - 1]) seq[k - 1].push_back(x);
    return AssBasisElem(std::move(cf), FibreOrder(std::move(seq)));
}

namespace detail {

inline std::int64_t function_rank(const FiniteMap& f) {
    std::int64_t r = 0;
    for (int i = 0; i < f.domain_size; ++i) r = r * f.codomain_size + (f.images[i] - 1);
    return r;
}

inline FiniteMap function_unrank(int m, int n, std::int64_t r) {
    std::vector<int> im(m);
    for (int i = m - 1; i >= 0; --i) {
        im[i] = static_cast<int>(r % n) + 1;
        r /= n;
    }
    return FiniteMap(m, n, std::move(im));
}

// Lexicographic rank of `seq` among the orderings of its underlying set.
inline std::int64_t order_rank(const std::vector<int>& seq) {
    int k = static_cast<int>(seq.size());
    std::vector<int> pool(seq);
    std::sort(pool.begin(), pool.end());
    std::vector<bool> used(k, false);
    std::int64_t rank = 0;
    for (int i = 0; i < k; ++i) {
        int smaller = 0;
        for (int j = 0; j < k; ++j) {
            if (used[j]) continue;
            if (pool[j] < seq[i]) ++smaller;
            if (pool[j] == seq[i]) { used[j] = true; break; }
        }
        std::int64_t f = 1;
        for (int j = 2; j <= k - 1 - i; ++j) f *= j;
        rank += smaller * f;
    }
    return rank;
}

inline std::vector<int> order_unrank(std::vector<int> pool, std::int64_t rank) {
    std::sort(pool.begin(), pool.end());
    std::vector<int> out;
    int k = static_cast<int>(pool.size());
    for (int i = k; i >= 1; --i) {
        std::int64_t f = 1;
        for (int j = 2; j <= i - 1; ++j) f *= j;
        int pos = static_cast<int>(rank / f);
        rank %= f;
        out.push_back(pool[pos]);
        pool.erase(pool.begin() + pos);
    }
    return out;
}

} // namespace detail

// A hom-space Cat O(m,n) with deterministic enumerated basis.
class HomSpace {
public:
    HomSpace(OperadId op, int m, int n) : op_(op), m_(m), n_(n) { build(); }

    OperadId operad() const { return op_; }
    int source() const { return m_; }
    int target() const { return n_; }
    std::int64_t dim() const { return dim_; }

    AssBasisElem elem(std::int64_t i) const {
        if (i < 0 || i >= dim_) throw std::out_of_range("HomSpace::elem");
        if (!basis_.empty()) return basis_[static_cast<std::size_t>(i)];
        return decode_assu(i);
    }

    std::int64_t index_of(const AssBasisElem& e) const {
        if (op_ == OperadId::AssU) {
            std::int64_t fr = detail::function_rank(e.f);
            std::int64_t idx = offsets_[static_cast<std::size_t>(fr)];
            // mixed radix over fibres, fibre 1 most significant
            std::int64_t inner = 0;
            for (int j = 1; j <= n_; ++j) {
                const auto& seq = e.ord.seq[j - 1];
                std::int64_t fj = 1;
                for (int t = 2; t <= static_cast<int>(seq.size()); ++t) fj *= t;
                inner = inner * fj + detail::order_rank(seq);
            }
            return idx + inner;
        }
        if (op_ == OperadId::ComU) return detail::function_rank(e.f);
        auto it = index_.find(key(e));
        if (it == index_.end()) throw std::invalid_argument("HomSpace::index_of: not a basis element");
        return it->second;
    }

    bool try_index_of(const AssBasisElem& e, std::int64_t& out) const {
        if (op_ == OperadId::AssU || op_ == OperadId::ComU) {
            out = index_of(e);
            return true;
        }
        auto it = index_.find(key(e));
        if (it == index_.end()) return false;
        out = it->second;
        return true;
    }

private:
    static std::vector<int> key(const AssBasisElem& e) {
        std::vector<int> k = e.f.images;
        k.push_back(-1);
        for (auto& s : e.ord.seq) {
            k.insert(k.end(), s.begin(), s.end());
            k.push_back(-1);
        }
        return k;
    }

    void build() {
        switch (op_) {
            case OperadId::AssU: {
                // dim = rising factorial; perfect index via per-function offsets
                std::int64_t total_functions = 1;
                for (int i = 0; i < m_; ++i) total_functions *= n_;
                offsets_.resize(static_cast<std::size_t>(total_functions) + 1, 0);
                std::int64_t acc = 0;
                for (std::int64_t fr = 0; fr < total_functions; ++fr) {
                    offsets_[static_cast<std::size_t>(fr)] = acc;
                    FiniteMap f = detail::function_unrank(m_, n_, fr);
                    std::int64_t block = 1;
                    for (int sz : f.fibre_sizes())
                        for (int t = 2; t <= sz; ++t) block *= t;
                    acc += block;
                }
                offsets_[static_cast<std::size_t>(total_functions)] = acc;
                dim_ = acc;
                break;
            }
            case OperadId::ComU: {
                for (auto& f : enumerate_functions(m_, n_))
                    basis_.push_back(AssBasisElem::canonical(f));
                dim_ = static_cast<std::int64_t>(basis_.size());
                break;
            }
            case OperadId::Com: {
                for (auto& f : enumerate_surjections(m_, n_))
                    basis_.push_back(AssBasisElem::canonical(f));
                dim_ = static_cast<std::int64_t>(basis_.size());
                finish_map();
                break;
            }
            case OperadId::Unit: {
                if (m_ == n_)
                    for (auto& p : all_perms(m_)) basis_.push_back(AssBasisElem::from_perm(p));
                dim_ = static_cast<std::int64_t>(basis_.size());
                finish_map();
                break;
            }
            case OperadId::Lie: {
                for (auto& g : enumerate_surjections(m_, n_)) {
                    // per fibre: words starting at the fibre minimum
                    std::vector<std::vector<std::vector<int>>> choices(n_);
                    for (int j = 1; j <= n_; ++j) {
                        auto fib = g.fibre(j);
                        std::vector<int> rest(fib.begin() + 1, fib.end());
                        std::sort(rest.begin(), rest.end());
                        do {
                            std::vector<int> w{fib.front()};
                            w.insert(w.end(), rest.begin(), rest.end());
                            choices[j - 1].push_back(w);
                        } while (std::next_permutation(rest.begin(), rest.end()));
                    }
                    std::vector<std::size_t> pick(n_, 0);
                    while (true) {
                        std::vector<std::vector<int>> seq(n_);
                        for (int j = 0; j < n_; ++j) seq[j] = choices[j][pick[j]];
                        basis_.emplace_back(g, FibreOrder(std::move(seq)));
                        int k = n_ - 1;
                        while (k >= 0 && pick[k] + 1 == choices[k].size()) pick[k--] = 0;
                        if (k < 0) break;
                        ++pick[k];
                    }
                }
                dim_ = static_cast<std::int64_t>(basis_.size());
                finish_map();
                break;
            }
        }
    }

    void finish_map() {
        for (std::int64_t i = 0; i < dim_; ++i)
            index_[key(basis_[static_cast<std::size_t>(i)])] = i;
    }

    AssBasisElem decode_assu(std::int64_t idx) const {
        auto it = std::upper_bound(offsets_.begin(), offsets_.end() - 1, idx);
        std::int64_t fr = static_cast<std::int64_t>(it - offsets_.begin()) - 1;
        FiniteMap f = detail::function_unrank(m_, n_, fr);
        std::int64_t inner = idx - offsets_[static_cast<std::size_t>(fr)];
        auto sizes = f.fibre_sizes();
        std::vector<std::int64_t> radix(n_, 1);
        for (int j = 0; j < n_; ++j)
            for (int t = 2; t <= sizes[j]; ++t) radix[j] *= t;
        std::vector<std::int64_t> digit(n_, 0);
        for (int j = n_ - 1; j >= 0; --j) {
            digit[j] = inner % radix[j];
            inner /= radix[j];
        }
        std::vector<std::vector<int>> seq(n_);
        for (int j = 1; j <= n_; ++j) seq[j - 1] = detail::order_unrank(f.fibre(j), digit[j - 1]);
        return AssBasisElem(std::move(f), FibreOrder(std::move(seq)));
    }

    OperadId op_;
    int m_, n_;
    std::int64_t dim_ = 0;
    std::vector<AssBasisElem> basis_;           // materialized except for Ass^u with m>0
    std::map<std::vector<int>, std::int64_t> index_;
    std::vector<std::int64_t> offsets_;          // Ass^u: per-function offsets
};

using HomSpacePtr = std::shared_ptr<const HomSpace>;

inline HomSpacePtr hom_space(OperadId op, int m, int n) {
    static std::map<std::tuple<OperadId, int, int>, HomSpacePtr> cache;
    static std::mutex mu;
    std::lock_guard<std::mutex> lock(mu);
    auto k = std::make_tuple(op, m, n);
    auto it = cache.find(k);
    if (it != cache.end()) return it->second;
    auto sp = std::make_shared<const HomSpace>(op, m, n);
    cache.emplace(k, sp);
    return sp;
}

// Dimension without materializing the basis (used for the large tables).
inline BigInt hom_dim_formula(OperadId op, int m, int n) {
    switch (op) {
        case OperadId::AssU: return rising_factorial(n, m);
        case OperadId::ComU: {
            BigInt c = 1;
            for (int i = 0; i < m; ++i) c *= n;
            return m == 0 ? BigInt(1) : c;
        }
        case OperadId::Com: {
            BigInt total = 0;
            for (int k = 0; k <= n; ++k) {
                BigInt pw = 1;
                for (int i = 0; i < m; ++i) pw *= (n - k);
                if (m == 0) pw = 1;
                BigInt term = binomial(n, k) * pw;
                total += (k % 2 == 0) ? term : -term;
            }
            return total;
        }
        case OperadId::Unit: return m == n ? factorial(m) : BigInt(0);
        case OperadId::Lie: {
            BigInt total = 0;
            for (auto& g : enumerate_surjections(m, n)) {
                BigInt w = 1;
                for (int sz : g.fibre_sizes()) w *= factorial(sz - 1);
                total += w;
            }
            return total;
        }
    }
    return 0;
}

// --- linear elements -------------------------------------------------------

// Elements of Cat Ass^u(m,n) are SparseVecs in the basis of hom_space(AssU,m,n).

inline SparseVec compose_linear(const HomSpace& target, const HomSpace& gs, const HomSpace& fs,
                                const SparseVec& g, const SparseVec& f) {
    SparseVec out;
    for (auto& [gi, gc] : g)
        for (auto& [fi, fc] : f) {
            AssBasisElem e = compose_basis(gs.elem(gi), fs.elem(fi));
            out.emplace_back(target.index_of(e), gc * fc);
        }
    sv_normalize(out);
    return out;
}

// The Ass^u expansion of a Lie basis element (surjection + left-normed words).
inline SparseVec lie_elem_expansion(const AssBasisElem& le, const HomSpace& assu_target) {
    int n = le.f.codomain_size;
    // expand each fibre word; combine fibrewise choices
    std::vector<WordSum> fib(n);
    for (int j = 1; j <= n; ++j) fib[j - 1] = left_normed_expansion(le.ord.seq[j - 1]);
    SparseVec out;
    std::vector<WordSum::const_iterator> its;
    for (auto& w : fib) its.push_back(w.begin());
    if (n == 0) {
        out.emplace_back(assu_target.index_of(le), Rational(1));
        return out;
    }
    while (true) {
        std::vector<std::vector<int>> seq(n);
        Rational c(1);
        for (int j = 0; j < n; ++j) {
            seq[j] = its[j]->first;
            c *= its[j]->second;
        }
        AssBasisElem e(le.f, FibreOrder(std::move(seq)));
        out.emplace_back(assu_target.index_of(e), c);
        int k = n - 1;
        while (k >= 0 && std::next(its[k]) == fib[k].end()) {
            its[k] = fib[k].begin();
            --k;
        }
        if (k < 0) break;
        ++its[k];
    }
    sv_normalize(out);
    return out;
}

// Inclusion matrix Cat Lie(m,n) -> Cat Ass^u(m,n); column j is the expansion
// of the j-th Lie basis morphism.
inline SparseMat catlie_subspace(int m, int n) {
    auto lie = hom_space(OperadId::Lie, m, n);
    auto assu = hom_space(OperadId::AssU, m, n);
    SparseMat inc(static_cast<int>(assu->dim()), static_cast<int>(lie->dim()));
    for (std::int64_t j = 0; j < lie->dim(); ++j)
        for (auto& [r, c] : lie_elem_expansion(lie->elem(j), *assu))
            inc.add(static_cast<int>(r), static_cast<int>(j), c);
    return inc;
}

// Solver expressing Ass^u(m,n) vectors in the Lie basis (when they lie in it).
class LieCoords {
public:
    LieCoords(int m, int n) : lie_(hom_space(OperadId::Lie, m, n)) {
        auto assu = hom_space(OperadId::AssU, m, n);
        ech_ = std::make_unique<TrackedEchelon>(static_cast<int>(assu->dim()));
        for (std::int64_t j = 0; j < lie_->dim(); ++j)
            ech_->insert(lie_elem_expansion(lie_->elem(j), *assu), static_cast<int>(j));
    }

    bool solve(const SparseVec& assu_vec, SparseVec& lie_coords) const {
        return ech_->solve(assu_vec, lie_coords);
    }
    bool contains(const SparseVec& assu_vec) const {
        SparseVec tmp;
        return solve(assu_vec, tmp);
    }
    const HomSpace& lie_space() const { return *lie_; }

private:
    HomSpacePtr lie_;
    std::unique_ptr<TrackedEchelon> ech_;
};

inline const LieCoords& lie_coords(int m, int n) {
    static std::map<std::pair<int, int>, std::unique_ptr<LieCoords>> cache;
    static std::mutex mu;
    std::lock_guard<std::mutex> lock(mu);
    auto key = std::make_pair(m, n);
    auto it = cache.find(key);
    if (it == cache.end())
        it = cache.emplace(key, std::make_unique<LieCoords>(m, n)).first;
    return *it->second;
}

// --- free-orbit decomposition ---------------------------------------------

// The right S_m-action on the (f, Ord) basis of Cat Ass^u(m,n) is free; the
// orbit of x is determined by its fibre-size composition. rep(c) is the
// block function with increasing orders, and every x factors uniquely as
// rep(c) . sigma.
struct OrbitDecomp {
    std::vector<int> comp; // fibre sizes, a weak composition of m into n parts
    Perm sigma;
};

inline AssBasisElem orbit_rep(const std::vector<int>& comp) {
    int n = static_cast<int>(comp.size());
    int m = 0;
    for (int v : comp) m += v;
    std::vector<int> im(m);
    int pos = 0;
    for (int j = 1; j <= n; ++j)
        for (int t = 0; t < comp[j - 1]; ++t) im[pos++] = j;
    return AssBasisElem::canonical(FiniteMap(m, n, std::move(im)));
}

inline OrbitDecomp orbit_decompose(const AssBasisElem& x) {
    OrbitDecomp d;
    d.comp = x.f.fibre_sizes();
    std::vector<int> concat = x.ord.concatenation();
    // sigma^{-1} has image list `concat`; invert it
    int m = x.f.domain_size;
    std::vector<int> images(m);
    for (int p = 1; p <= m; ++p) images[concat[p - 1] - 1] = p;
    d.sigma = Perm(std::move(images));
    return d;
}

// --- the PBW comparison map -------------------------------------------------

// One middle-arity / composition summand of (Cat Com^u x_Sigma Cat Lie)(m,n):
// the coinvariants of Cat Lie(m,t) under the Young subgroup of the middle
// composition acting by post-composition.
struct PbwSummand {
    int t = 0;
    std::vector<int> comp;   // composition of t into n parts (the Com^u orbit)
    SparseMat quotient;      // Cat Lie(m,t) -> coinvariants
    std::int64_t offset = 0; // position in the PBW source basis
};

struct PbwSlice {
    int m = 0, n = 0;
    std::vector<PbwSummand> summands;
    std::int64_t source_dim = 0;
    SparseMat map; // source -> Cat Ass^u(m,n)
};

// Matrix of post-composition by a permutation on Cat Lie(m,t), in the Lie basis.
inline SparseMat lie_postcompose_perm(int m, int t, const Perm& p) {
    auto lie = hom_space(OperadId::Lie, m, t);
    auto assu = hom_space(OperadId::AssU, m, t);
    const LieCoords& lc = lie_coords(m, t);
    SparseMat out(static_cast<int>(lie->dim()), static_cast<int>(lie->dim()));
    SparseVec pv{{hom_space(OperadId::AssU, t, t)->index_of(AssBasisElem::from_perm(p)), rat(1)}};
    for (std::int64_t j = 0; j < lie->dim(); ++j) {
        SparseVec emb = lie_elem_expansion(lie->elem(j), *assu);
        SparseVec comp = compose_linear(*assu, *hom_space(OperadId::AssU, t, t),
                                        *assu, pv, emb);
        SparseVec coords;
        if (!lc.solve(comp, coords))
            throw std::logic_error("Lie subspace not closed under post-composition");
        for (auto& [i, c] : coords) out.add(static_cast<int>(i), static_cast<int>(j), c);
    }
    return out;
}

inline PbwSlice pbw_slice(int m, int n) {
    PbwSlice slice;
    slice.m = m;
    slice.n = n;
    auto assu = hom_space(OperadId::AssU, m, n);
    std::int64_t offset = 0;
    std::vector<SparseVec> cols;

    for (int t = 0; t <= m; ++t) {
        auto lie = hom_space(OperadId::Lie, m, t);
        if (lie->dim() == 0) continue;
        auto assu_mt = hom_space(OperadId::AssU, m, t);
        auto assu_tn = hom_space(OperadId::AssU, t, n);
        for (auto& comp : compositions(t, n)) {
            // Young subgroup generators for this composition
            std::vector<Perm> gens;
            int base = 0;
            for (int part : comp) {
                for (int k = 1; k < part; ++k) gens.push_back(Perm::transposition(t, base + k));
                base += part;
            }
            Subspace rel(static_cast<int>(lie->dim()));
            for (auto& g : gens) {
                SparseMat act = lie_postcompose_perm(m, t, g);
                for (std::int64_t j = 0; j < lie->dim(); ++j) {
                    SparseVec v = act.apply(SparseVec{{static_cast<int>(j), rat(1)}});
                    sv_axpy(v, rat(-1), SparseVec{{static_cast<int>(j), rat(1)}});
                    rel.basis.insert(std::move(v));
                }
            }
            SparseMat q = quotient_map(static_cast<int>(lie->dim()), rel);
            if (q.rows() == 0) continue;

            // the symmetrized Com^u element for this composition: the block
            // function with each fibre averaged over all of its orders
            AssBasisElem rep = orbit_rep(comp);
            SparseVec iota;
            {
                std::vector<std::vector<std::vector<int>>> orders(n);
                for (int j = 1; j <= n; ++j) {
                    auto fib = rep.f.fibre(j);
                    std::sort(fib.begin(), fib.end());
                    do orders[j - 1].push_back(fib);
                    while (std::next_permutation(fib.begin(), fib.end()));
                }
                Rational coeff(1);
                for (auto& o : orders) coeff /= Rational(static_cast<long long>(o.size()));
                std::vector<std::size_t> pick(n, 0);
                while (true) {
                    std::vector<std::vector<int>> seq(n);
                    for (int j = 0; j < n; ++j) seq[j] = orders[j][pick[j]];
                    iota.emplace_back(assu_tn->index_of(AssBasisElem(rep.f, FibreOrder(seq))),
                                      coeff);
                    int k = n - 1;
                    while (k >= 0 && pick[k] + 1 == orders[k].size()) pick[k--] = 0;
                    if (k < 0) break;
                    ++pick[k];
                }
                sv_normalize(iota);
            }

            // section of the quotient: unit vectors at the free columns
            std::vector<int> free_cols = rel.basis.free_columns();
            PbwSummand s;
            s.t = t;
            s.comp = comp;
            s.quotient = q;
            s.offset = offset;
            for (int fc : free_cols) {
                SparseVec lie_emb = lie_elem_expansion(lie->elem(fc), *assu_mt);
                SparseVec col = compose_linear(*assu, *assu_tn, *assu_mt, iota, lie_emb);
                cols.push_back(std::move(col));
                ++offset;
            }
            slice.summands.push_back(std::move(s));
        }
    }
    slice.source_dim = offset;
    SparseMat mat(static_cast<int>(assu->dim()), static_cast<int>(offset));
    for (std::int64_t j = 0; j < offset; ++j)
        for (auto& [r, c] : cols[static_cast<std::size_t>(j)])
            mat.add(static_cast<int>(r), static_cast<int>(j), c);
    slice.map = std::move(mat);
    return slice;
}

// PBW at category level: the map is a linear isomorphism on the slice.
inline bool pbw_check(int m, int n) {
    PbwSlice s = pbw_slice(m, n);
    auto assu = hom_space(OperadId::AssU, m, n);
    if (s.source_dim != assu->dim()) return false;
    return rank(s.map) == assu->dim();
}

// --- generic bimodule tensor (small instances) ------------------------------

// (B1 x_Sigma B2)(m,n) = (+)_t B1(t,n) (x)_{S_t} B2(m,t), computed as a
// quotient of the free sum by the middle-action relations. Action matrices
// are supplied per middle arity (one per adjacent transposition of S_t);
// sign-twisted variants just pass twisted matrices.
struct BimoduleTensorSlice {
    std::vector<std::int64_t> summand_dims; // per middle arity t
    std::int64_t free_dim = 0;
    SparseMat projection; // free sum -> coinvariant basis
    std::int64_t dim() const { return projection.rows(); }
};

inline BimoduleTensorSlice bimodule_tensor(
    int t_max,
    const std::function<std::int64_t(int)>& dim_left,   // t -> dim B1(t,n)
    const std::function<std::int64_t(int)>& dim_right,  // t -> dim B2(m,t)
    const std::function<SparseMat(int, int)>& left_act, // (t,k) -> right action of s_k on B1(t,n)
    const std::function<SparseMat(int, int)>& right_act // (t,k) -> left action of s_k on B2(m,t)
) {
    BimoduleTensorSlice out;
    std::vector<std::int64_t> offsets;
    std::int64_t total = 0;
    for (int t = 0; t <= t_max; ++t) {
        offsets.push_back(total);
        std::int64_t d = dim_left(t) * dim_right(t);
        out.summand_dims.push_back(d);
        total += d;
    }
    out.free_dim = total;
    Subspace rel(static_cast<int>(total));
    for (int t = 0; t <= t_max; ++t) {
        std::int64_t dl = dim_left(t), dr = dim_right(t);
        if (dl == 0 || dr == 0) continue;
        for (int k = 1; k < t; ++k) {
            SparseMat la = left_act(t, k);
            SparseMat ra = right_act(t, k);
            for (std::int64_t a = 0; a < dl; ++a)
                for (std::int64_t b = 0; b < dr; ++b) {
                    // (a.s_k) (x) b - a (x) (s_k.b)
                    SparseVec v;
                    for (auto& [a2, c] : la.apply(SparseVec{{static_cast<int>(a), rat(1)}}))
                        v.emplace_back(offsets[t] + a2 * dr + b, c);
                    for (auto& [b2, c] : ra.apply(SparseVec{{static_cast<int>(b), rat(1)}}))
                        v.emplace_back(offsets[t] + a * dr + b2, -c);
                    sv_normalize(v);
                    rel.basis.insert(std::move(v));
                }
        }
    }
    out.projection = quotient_map(static_cast<int>(total), rel);
    return out;
}

} // namespace opcat
