#pragma once

// Left Cat Lie-modules, presented by an underlying symmetric-group
// representation in each arity together with the action of the bracket
// generators alpha_n in Cat Lie(n+1, n). alpha_n merges the LAST two inputs;
// every other morphism is reached through permutations, and validation
// compares independent generator factorizations of the same basis morphism.

#include "opcat/propcat.hpp"

#include <cstdint>
#include <functional>
#include <limits>
#include <optional>
#include <string>
#include <vector>

namespace opcat {

struct LieModule {
    int N = 0;            // values are given for arities 0..N
    bool complete = true; // true when the module is zero above N
    std::vector<int> dims;
    // transpositions[n][k-1] = action of s_k = (k,k+1) on M(n), for 1 <= k < n
    std::vector<std::vector<SparseMat>> transpositions;
    // alpha[n] = action of alpha_n : M(n+1) -> M(n), for 1 <= n < N
    std::vector<SparseMat> alpha;
    std::string name;

    int dim(int n) const { return (n >= 0 && n <= N) ? dims[n] : 0; }

    const SparseMat& transposition(int n, int k) const { return transpositions[n][k - 1]; }

    SparseMat perm_matrix(int n, const Perm& p) const {
        SparseMat m = SparseMat::identity(dims[n]);
        for (int k : adjacent_transposition_word(p)) m = m * transposition(n, k);
        return m;
    }

    SparseMat alpha_matrix(int n) const {
        if (n < 1 || n >= N || dims[n + 1] == 0) return SparseMat(dim(n), dim(n + 1));
        return alpha[n];
    }

    int min_support() const {
        for (int n = 0; n <= N; ++n)
            if (dims[n] > 0) return n;
        return N + 1;
    }
};

// --- standard symmetric group representations -------------------------------

struct SymRep {
    int d = 0;
    int dim = 0;
    std::vector<SparseMat> transpositions; // s_1 .. s_{d-1}
};

inline SymRep regular_rep(int d) {
    SymRep r;
    r.d = d;
    auto perms = all_perms(d);
    r.dim = static_cast<int>(perms.size());
    std::map<std::vector<int>, int> idx;
    for (int i = 0; i < r.dim; ++i) idx[perms[i].images] = i;
    for (int k = 1; k < d; ++k) {
        SparseMat m(r.dim, r.dim);
        Perm sk = Perm::transposition(d, k);
        for (int i = 0; i < r.dim; ++i) m.add(idx[(sk * perms[i]).images], i, rat(1));
        r.transpositions.push_back(std::move(m));
    }
    return r;
}

inline SymRep trivial_rep(int d) {
    SymRep r;
    r.d = d;
    r.dim = 1;
    for (int k = 1; k < d; ++k) r.transpositions.push_back(SparseMat::identity(1));
    return r;
}

inline SymRep sign_rep(int d) {
    SymRep r;
    r.d = d;
    r.dim = 1;
    for (int k = 1; k < d; ++k) {
        SparseMat m(1, 1);
        m.add(0, 0, rat(-1));
        r.transpositions.push_back(std::move(m));
    }
    return r;
}

// A module supported in a single arity; all alpha maps vanish.
inline LieModule symmetric_group_module(const SymRep& rep, std::string name = {}) {
    LieModule m;
    m.N = rep.d;
    m.complete = true;
    m.dims.assign(rep.d + 1, 0);
    m.dims[rep.d] = rep.dim;
    m.transpositions.resize(rep.d + 1);
    m.transpositions[rep.d] = rep.transpositions;
    m.alpha.resize(std::max(1, rep.d), SparseMat());
    for (int n = 1; n < rep.d; ++n) m.alpha[n] = SparseMat(m.dims[n], m.dims[n + 1]);
    m.name = name.empty() ? ("k[S_" + std::to_string(rep.d) + "]") : std::move(name);
    return m;
}

// --- Cat Lie generator matrices on a module ---------------------------------

struct CatLieGen {
    bool is_alpha = false;
    Perm sigma;     // when !is_alpha: a permutation at some arity
    int alpha_arity = 0; // when is_alpha: alpha_{alpha_arity}
};

// A composite is listed outermost-first: steps[0] is applied last.
using Factorization = std::vector<CatLieGen>;

// merge_j at arity z+1 -> z written through alpha_z and permutations:
// merge_j = rho . alpha_z . tau.
inline void append_merge(Factorization& out, int z, int j) {
    if (j == z) {
        out.push_back({true, Perm(), z});
        return;
    }
    Perm tau = Perm::identity(z + 1);
    for (int l = 1; l <= z + 1; ++l) {
        if (l < j) tau.images[l - 1] = l;
        else if (l == j) tau.images[l - 1] = z;
        else if (l == j + 1) tau.images[l - 1] = z + 1;
        else tau.images[l - 1] = l - 2;
    }
    Perm rho = Perm::identity(z);
    for (int l = 1; l <= z; ++l) {
        if (l < j) rho.images[l - 1] = l;
        else if (l == z) rho.images[l - 1] = j;
        else rho.images[l - 1] = l + 1;
    }
    out.push_back({false, rho, 0});
    out.push_back({true, Perm(), z});
    out.push_back({false, tau, 0});
}

enum class FactorRoute { LeftBlocksFirst, RightBlocksFirst };

// Writes a Lie basis morphism (surjection with left-normed fibre words) as a
// composite of permutations and alpha generators.
inline Factorization factorize_catlie_basis(const AssBasisElem& b,
                                            FactorRoute route = FactorRoute::LeftBlocksFirst) {
    int m = b.f.domain_size;
    int n = b.f.codomain_size;
    OrbitDecomp od = orbit_decompose(b);

    Factorization out;
    // rep(comp) is the block surjection with consecutive increasing fibres;
    // collapse its blocks by repeated merges.
    std::vector<int> comp = od.comp;
    std::vector<int> order(n);
    std::iota(order.begin(), order.end(), 0);
    if (route == FactorRoute::RightBlocksFirst) std::reverse(order.begin(), order.end());

    // shape[i] = current size of block i
    std::vector<int> shape = comp;
    int arity = m;
    Factorization merges;
    for (int bi : order) {
        while (shape[bi] > 1) {
            int pos = 1;
            for (int l = 0; l < bi; ++l) pos += shape[l];
            append_merge(merges, arity - 1, pos);
            --shape[bi];
            --arity;
        }
    }
    // merges currently lists the first-applied merge first; composites are
    // outermost-first, so reverse.
    std::reverse(merges.begin(), merges.end());
    out = std::move(merges);
    if (!od.sigma.is_identity()) out.push_back({false, od.sigma, 0});
    return out;
}

// Ass^u expansion of a generator as a linear element.
inline SparseVec gen_expansion(const CatLieGen& g, int& src, int& dst) {
    if (g.is_alpha) {
        int z = g.alpha_arity;
        src = z + 1;
        dst = z;
        auto hs = hom_space(OperadId::AssU, z + 1, z);
        std::vector<int> im(z + 1);
        for (int l = 1; l <= z + 1; ++l) im[l - 1] = std::min(l, z);
        FiniteMap mu(z + 1, z, im);
        std::vector<std::vector<int>> seq1(z), seq2(z);
        for (int j = 1; j < z; ++j) seq1[j - 1] = seq2[j - 1] = {j};
        seq1[z - 1] = {z, z + 1};
        seq2[z - 1] = {z + 1, z};
        SparseVec v;
        v.emplace_back(hs->index_of(AssBasisElem(mu, FibreOrder(seq1))), rat(1));
        v.emplace_back(hs->index_of(AssBasisElem(mu, FibreOrder(seq2))), rat(-1));
        sv_normalize(v);
        return v;
    }
    src = dst = g.sigma.degree();
    auto hs = hom_space(OperadId::AssU, src, dst);
    return SparseVec{{static_cast<int>(hs->index_of(AssBasisElem::from_perm(g.sigma))), rat(1)}};
}

// Compose a factorization in Ass^u coordinates; for verifying factorizations.
inline SparseVec factorization_expansion(const Factorization& steps, int m) {
    int cur = m;
    auto id = hom_space(OperadId::AssU, m, m);
    SparseVec v{{static_cast<int>(id->index_of(AssBasisElem::from_perm(Perm::identity(m)))),
                 rat(1)}};
    for (auto it = steps.rbegin(); it != steps.rend(); ++it) {
        int src = 0, dst = 0;
        SparseVec g = gen_expansion(*it, src, dst);
        if (src != cur) throw std::logic_error("factorization arity mismatch");
        v = compose_linear(*hom_space(OperadId::AssU, m, dst), *hom_space(OperadId::AssU, src, dst),
                           *hom_space(OperadId::AssU, m, cur), g, v);
        cur = dst;
    }
    return v;
}

// Matrix of a factorized morphism on a module: M(steps[0]) ... M(steps[last]).
inline SparseMat factorization_matrix(const LieModule& mod, const Factorization& steps, int m) {
    int cur = m;
    SparseMat acc = SparseMat::identity(mod.dim(m));
    for (auto it = steps.rbegin(); it != steps.rend(); ++it) {
        SparseMat g;
        if (it->is_alpha) {
            g = mod.alpha_matrix(it->alpha_arity);
            cur = it->alpha_arity;
        } else {
            g = mod.perm_matrix(cur, it->sigma);
        }
        acc = g * acc;
    }
    return acc;
}

// Matrix of a Lie basis morphism via its canonical factorization.
inline SparseMat basis_morphism_matrix(const LieModule& mod, const AssBasisElem& b,
                                       FactorRoute route = FactorRoute::LeftBlocksFirst) {
    return factorization_matrix(mod, factorize_catlie_basis(b, route), b.f.domain_size);
}

// Matrix of an arbitrary element of Cat Lie(m,n) given by Lie-basis coords.
inline SparseMat lie_element_matrix(const LieModule& mod, int m, int n, const SparseVec& coords) {
    auto lie = hom_space(OperadId::Lie, m, n);
    SparseMat acc(mod.dim(n), mod.dim(m));
    for (auto& [i, c] : coords)
        acc = acc + basis_morphism_matrix(mod, lie->elem(i)).scaled(c);
    return acc;
}

// --- validation --------------------------------------------------------------

inline std::vector<std::string> validate(const LieModule& mod, int pair_arity_cap = -1) {
    std::vector<std::string> bad;
    int cap = pair_arity_cap < 0 ? mod.N : pair_arity_cap;

    // symmetric group relations
    for (int n = 2; n <= mod.N; ++n) {
        if (mod.dims[n] == 0) continue;
        SparseMat id = SparseMat::identity(mod.dims[n]);
        for (int k = 1; k < n; ++k) {
            if (!(mod.transposition(n, k) * mod.transposition(n, k) == id))
                bad.push_back("involution fails: s_" + std::to_string(k) + " at arity " +
                              std::to_string(n));
            if (k + 1 < n) {
                SparseMat a = mod.transposition(n, k), b = mod.transposition(n, k + 1);
                if (!(a * b * a == b * a * b))
                    bad.push_back("braid fails at arity " + std::to_string(n) + ", k=" +
                                  std::to_string(k));
            }
            for (int l = k + 2; l < n; ++l)
                if (!(mod.transposition(n, k) * mod.transposition(n, l) ==
                      mod.transposition(n, l) * mod.transposition(n, k)))
                    bad.push_back("distant transpositions do not commute at arity " +
                                  std::to_string(n));
        }
    }

    // antisymmetry: alpha_n . (swap of the last two inputs) = -alpha_n
    for (int n = 1; n < mod.N; ++n) {
        if (mod.dims[n + 1] == 0) continue;
        SparseMat a = mod.alpha_matrix(n);
        SparseMat swapped = a * mod.perm_matrix(n + 1, Perm::transposition(n + 1, n));
        if (!(swapped == a.scaled(rat(-1))))
            bad.push_back("antisymmetry fails for alpha_" + std::to_string(n));
    }

    // two independent factorizations of every basis morphism agree
    for (int m = 1; m <= cap; ++m)
        for (int n = 1; n <= m; ++n) {
            if (mod.dim(m) == 0) continue;
            auto lie = hom_space(OperadId::Lie, m, n);
            for (std::int64_t i = 0; i < lie->dim(); ++i) {
                AssBasisElem b = lie->elem(i);
                SparseMat ma = basis_morphism_matrix(mod, b, FactorRoute::LeftBlocksFirst);
                SparseMat mb = basis_morphism_matrix(mod, b, FactorRoute::RightBlocksFirst);
                if (!(ma == mb))
                    bad.push_back("factorization routes disagree on a basis morphism of (" +
                                  std::to_string(m) + "," + std::to_string(n) + ")");
            }
        }

    // composites expand correctly: M(lambda) M(mu) = sum c_nu M(nu)
    for (int m = 1; m <= cap; ++m)
        for (int t = 1; t <= m; ++t)
            for (int u = 1; u <= t; ++u) {
                if (mod.dim(m) == 0) continue;
                auto lie_tu = hom_space(OperadId::Lie, t, u);
                auto lie_mt = hom_space(OperadId::Lie, m, t);
                if (lie_tu->dim() == 0 || lie_mt->dim() == 0) continue;
                auto assu_tu = hom_space(OperadId::AssU, t, u);
                auto assu_mt = hom_space(OperadId::AssU, m, t);
                auto assu_mu = hom_space(OperadId::AssU, m, u);
                const LieCoords& lc = lie_coords(m, u);
                for (std::int64_t a = 0; a < lie_tu->dim(); ++a)
                    for (std::int64_t b = 0; b < lie_mt->dim(); ++b) {
                        SparseVec ea = lie_elem_expansion(lie_tu->elem(a), *assu_tu);
                        SparseVec eb = lie_elem_expansion(lie_mt->elem(b), *assu_mt);
                        SparseVec comp = compose_linear(*assu_mu, *assu_tu, *assu_mt, ea, eb);
                        SparseVec coords;
                        if (!lc.solve(comp, coords)) {
                            bad.push_back("composite not in the Lie subspace (bug)");
                            continue;
                        }
                        SparseMat lhs = basis_morphism_matrix(mod, lie_tu->elem(a)) *
                                        basis_morphism_matrix(mod, lie_mt->elem(b));
                        SparseMat rhs = lie_element_matrix(mod, m, u, coords);
                        if (!(lhs == rhs))
                            bad.push_back("composite relation fails on (" + std::to_string(m) +
                                          "->" + std::to_string(t) + "->" + std::to_string(u) +
                                          ")");
                    }
            }
    return bad;
}

// --- module constructors ------------------------------------------------------

struct LieAlgebra {
    int dim = 0;
    // bracket[i][j] = coordinates of [e_i, e_j], 0-based
    std::vector<std::vector<SparseVec>> bracket;

    SparseVec apply_bracket(int i, int j) const { return bracket[i][j]; }

    bool jacobi_ok() const {
        for (int i = 0; i < dim; ++i)
            for (int j = 0; j < dim; ++j) {
                SparseVec anti = bracket[i][j];
                sv_axpy(anti, rat(1), bracket[j][i]);
                if (!anti.empty()) return false;
            }
        auto brk = [&](const SparseVec& v, int k) {
            SparseVec out;
            for (auto& [i, c] : v) sv_axpy(out, c, bracket[i][k]);
            return out;
        };
        for (int i = 0; i < dim; ++i)
            for (int j = 0; j < dim; ++j)
                for (int k = 0; k < dim; ++k) {
                    // [[i,j],k] + [[j,k],i] + [[k,i],j] = 0
                    SparseVec s = brk(bracket[i][j], k);
                    SparseVec t = brk(bracket[j][k], i);
                    SparseVec u = brk(bracket[k][i], j);
                    sv_axpy(s, rat(1), t);
                    sv_axpy(s, rat(1), u);
                    if (!s.empty()) return false;
                }
        return true;
    }

    static LieAlgebra abelian(int r) {
        LieAlgebra g;
        g.dim = r;
        g.bracket.assign(r, std::vector<SparseVec>(r));
        return g;
    }

    // basis e, f, h with [h,e]=2e, [h,f]=-2f, [e,f]=h  (e=0, f=1, h=2)
    static LieAlgebra sl2() {
        LieAlgebra g;
        g.dim = 3;
        g.bracket.assign(3, std::vector<SparseVec>(3));
        auto set = [&](int i, int j, SparseVec v) {
            g.bracket[i][j] = v;
            sv_scale(v, rat(-1));
            g.bracket[j][i] = v;
        };
        set(2, 0, SparseVec{{0, rat(2)}});
        set(2, 1, SparseVec{{1, rat(-2)}});
        set(0, 1, SparseVec{{2, rat(1)}});
        return g;
    }

    // basis x, y, z with [x,y] = z central
    static LieAlgebra heisenberg() {
        LieAlgebra g;
        g.dim = 3;
        g.bracket.assign(3, std::vector<SparseVec>(3));
        g.bracket[0][1] = SparseVec{{2, rat(1)}};
        g.bracket[1][0] = SparseVec{{2, rat(-1)}};
        return g;
    }
};

// modul g with M(n) = g^{(x) n}, place permutations, bracket on the last two slots.
inline LieModule lie_algebra_module(const LieAlgebra& g, int N, std::string name = {}) {
    if (!g.jacobi_ok()) throw std::invalid_argument("lie_algebra_module: Jacobi fails");
    int r = g.dim;
    LieModule m;
    m.N = N;
    m.complete = false; // genuinely supported in all arities
    m.dims.resize(N + 1);
    auto pw = [&](int n) {
        int p = 1;
        for (int i = 0; i < n; ++i) p *= r;
        return p;
    };
    for (int n = 0; n <= N; ++n) m.dims[n] = pw(n);
    m.transpositions.resize(N + 1);
    // index of (i_1..i_n), 0-based digits, i_1 most significant
    for (int n = 2; n <= N; ++n) {
        for (int k = 1; k < n; ++k) {
            SparseMat mat(m.dims[n], m.dims[n]);
            for (int idx = 0; idx < m.dims[n]; ++idx) {
                std::vector<int> dig(n);
                int v = idx;
                for (int p = n - 1; p >= 0; --p) { dig[p] = v % r; v /= r; }
                std::swap(dig[k - 1], dig[k]);
                int out = 0;
                for (int p = 0; p < n; ++p) out = out * r + dig[p];
                mat.add(out, idx, rat(1));
            }
            m.transpositions[n].push_back(std::move(mat));
        }
    }
    m.alpha.resize(std::max(1, N));
    for (int n = 1; n < N; ++n) {
        SparseMat a(m.dims[n], m.dims[n + 1]);
        for (int idx = 0; idx < m.dims[n + 1]; ++idx) {
            std::vector<int> dig(n + 1);
            int v = idx;
            for (int p = n; p >= 0; --p) { dig[p] = v % r; v /= r; }
            SparseVec br = g.apply_bracket(dig[n - 1], dig[n]);
            for (auto& [b, c] : br) {
                int out = 0;
                for (int p = 0; p < n - 1; ++p) out = out * r + dig[p];
                out = out * r + b;
                a.add(out, idx, c);
            }
        }
        m.alpha[n] = std::move(a);
    }
    m.name = name.empty() ? "g-module" : std::move(name);
    return m;
}

// P_n = Cat Lie(n, -), truncated at arity N; morphisms act by post-composition.
inline LieModule representable_module(int n, int N, std::string name = {}) {
    LieModule m;
    m.N = N;
    m.complete = N >= n; // Cat Lie(n,t) = 0 for t > n
    m.dims.resize(N + 1, 0);
    for (int t = 0; t <= N; ++t)
        m.dims[t] = static_cast<int>(hom_space(OperadId::Lie, n, t)->dim());
    m.transpositions.resize(N + 1);
    for (int t = 2; t <= std::min(N, n); ++t)
        for (int k = 1; k < t; ++k)
            m.transpositions[t].push_back(lie_postcompose_perm(n, t, Perm::transposition(t, k)));
    m.alpha.resize(std::max(1, N));
    for (int t = 1; t < N; ++t) {
        auto lie_src = hom_space(OperadId::Lie, n, t + 1);
        auto lie_dst = hom_space(OperadId::Lie, n, t);
        SparseMat a(static_cast<int>(lie_dst->dim()), static_cast<int>(lie_src->dim()));
        if (lie_src->dim() > 0 && lie_dst->dim() > 0) {
            auto assu_src = hom_space(OperadId::AssU, n, t + 1);
            auto assu_dst = hom_space(OperadId::AssU, n, t);
            const LieCoords& lc = lie_coords(n, t);
            CatLieGen alpha_gen{true, Perm(), t};
            int src = 0, dst = 0;
            SparseVec alpha_exp = gen_expansion(alpha_gen, src, dst);
            for (std::int64_t j = 0; j < lie_src->dim(); ++j) {
                SparseVec emb = lie_elem_expansion(lie_src->elem(j), *assu_src);
                SparseVec comp = compose_linear(*assu_dst, *hom_space(OperadId::AssU, t + 1, t),
                                                *assu_src, alpha_exp, emb);
                SparseVec coords;
                if (!lc.solve(comp, coords))
                    throw std::logic_error("representable_module: composite escaped Lie subspace");
                for (auto& [i, c] : coords) a.add(static_cast<int>(i), static_cast<int>(j), c);
            }
        }
        m.alpha[t] = std::move(a);
    }
    m.name = name.empty() ? ("P_" + std::to_string(n)) : std::move(name);
    return m;
}

inline LieModule direct_sum(const LieModule& a, const LieModule& b) {
    LieModule m;
    m.N = std::min(a.N, b.N);
    if (a.complete && b.complete) m.N = std::max(a.N, b.N);
    m.complete = a.complete && b.complete;
    m.dims.resize(m.N + 1);
    for (int n = 0; n <= m.N; ++n) m.dims[n] = a.dim(n) + b.dim(n);
    auto block = [](const SparseMat& x, const SparseMat& y) {
        SparseMat out(x.rows() + y.rows(), x.cols() + y.cols());
        for (int r = 0; r < x.rows(); ++r)
            for (auto& [c, v] : x.row(r)) out.add(r, c, v);
        for (int r = 0; r < y.rows(); ++r)
            for (auto& [c, v] : y.row(r)) out.add(x.rows() + r, x.cols() + c, v);
        return out;
    };
    m.transpositions.resize(m.N + 1);
    for (int n = 2; n <= m.N; ++n)
        for (int k = 1; k < n; ++k) {
            SparseMat xa = n <= a.N && a.dims[n] > 0 ? a.transposition(n, k)
                                                     : SparseMat(a.dim(n), a.dim(n));
            SparseMat xb = n <= b.N && b.dims[n] > 0 ? b.transposition(n, k)
                                                     : SparseMat(b.dim(n), b.dim(n));
            m.transpositions[n].push_back(block(xa, xb));
        }
    m.alpha.resize(std::max(1, m.N));
    for (int n = 1; n < m.N; ++n) m.alpha[n] = block(a.alpha_matrix(n), b.alpha_matrix(n));
    m.name = a.name + " (+) " + b.name;
    return m;
}

// --- module homomorphisms ----------------------------------------------------

// Basis of Hom(A, B) in the category of Cat Lie-modules, computed as the
// solution space of the equivariance and alpha-compatibility equations.
struct ModuleHomSpace {
    int dim = 0;
    // each solution: per arity n, a matrix B.dim(n) x A.dim(n)
    std::vector<std::vector<SparseMat>> basis;
};

inline ModuleHomSpace module_hom_space(const LieModule& A, const LieModule& B) {
    int N = std::min(A.N, B.N);
    // unknown layout: theta_n stacked as vec (row-major), arity by arity
    std::vector<int> offset(N + 2, 0);
    for (int n = 0; n <= N; ++n) offset[n + 1] = offset[n] + B.dim(n) * A.dim(n);
    int total = offset[N + 1];

    Subspace constraints(total);
    auto unk = [&](int n, int r, int c) { return offset[n] + r * A.dim(n) + c; };

    // equivariance: theta_n A(s_k) = B(s_k) theta_n
    for (int n = 2; n <= N; ++n)
        for (int k = 1; k < n; ++k) {
            if (A.dim(n) == 0 || B.dim(n) == 0) continue;
            const SparseMat& as = A.transposition(n, k);
            const SparseMat& bs = B.transposition(n, k);
            for (int r = 0; r < B.dim(n); ++r)
                for (int c = 0; c < A.dim(n); ++c) {
                    SparseVec eq;
                    for (int j = 0; j < A.dim(n); ++j) {
                        Rational v = as.at(j, c);
                        if (!is_zero(v)) eq.emplace_back(unk(n, r, j), v);
                    }
                    for (int j = 0; j < B.dim(n); ++j) {
                        Rational v = bs.at(r, j);
                        if (!is_zero(v)) eq.emplace_back(unk(n, j, c), -v);
                    }
                    sv_normalize(eq);
                    constraints.basis.insert(std::move(eq));
                }
        }
    // alpha compatibility: theta_n A(alpha_n) = B(alpha_n) theta_{n+1}
    for (int n = 1; n < N; ++n) {
        SparseMat aa = A.alpha_matrix(n);
        SparseMat ba = B.alpha_matrix(n);
        for (int r = 0; r < B.dim(n); ++r)
            for (int c = 0; c < A.dim(n + 1); ++c) {
                SparseVec eq;
                for (int j = 0; j < A.dim(n); ++j) {
                    Rational v = aa.at(j, c);
                    if (!is_zero(v)) eq.emplace_back(unk(n, r, j), v);
                }
                for (int j = 0; j < B.dim(n + 1); ++j) {
                    Rational v = ba.at(r, j);
                    if (!is_zero(v)) eq.emplace_back(unk(n + 1, j, c), -v);
                }
                sv_normalize(eq);
                constraints.basis.insert(std::move(eq));
            }
    }

    // solution space = kernel of the constraint matrix
    SparseMat cmat(constraints.basis.rank(), total);
    {
        int r = 0;
        for (auto& row : constraints.basis.rows()) cmat.set_row(r++, row);
    }
    Subspace ker = kernel_basis(cmat);
    ModuleHomSpace out;
    out.dim = ker.dim();
    for (auto& sol : ker.basis.rows()) {
        std::vector<SparseMat> mats;
        for (int n = 0; n <= N; ++n) {
            SparseMat t(B.dim(n), A.dim(n));
            for (auto& [i, v] : sol)
                if (i >= offset[n] && i < offset[n + 1]) {
                    int loc = i - offset[n];
                    t.add(loc / std::max(1, A.dim(n)), loc % std::max(1, A.dim(n)), v);
                }
            mats.push_back(std::move(t));
        }
        out.basis.push_back(std::move(mats));
    }
    return out;
}

// --- convolution product ------------------------------------------------------

// (F (.) G)(n) = (+)_{X u Y = n} F(X) (x) G(Y), with basis triples
// (subset X, F-basis, G-basis); subsets enumerated by increasing bitmask.
struct ConvLayout {
    // per arity n: list of (mask, offset); the block for mask has size
    // F.dim(|X|) * G.dim(n - |X|)
    std::vector<std::vector<std::pair<std::uint32_t, int>>> blocks;
    std::vector<int> dims;
};

inline std::vector<int> mask_to_set(std::uint32_t mask, int n) {
    std::vector<int> out;
    for (int i = 1; i <= n; ++i)
        if ((mask >> (i - 1)) & 1u) out.push_back(i);
    return out;
}

// position of sigma(x) within sigma(X), as a permutation of {1..|X|}
inline Perm induced_perm(const std::vector<int>& X, const Perm& sigma) {
    std::vector<int> img;
    for (int x : X) img.push_back(sigma(x));
    std::vector<int> sorted = img;
    std::sort(sorted.begin(), sorted.end());
    std::vector<int> rel;
    for (int v : img)
        rel.push_back(static_cast<int>(std::lower_bound(sorted.begin(), sorted.end(), v) -
                                       sorted.begin()) + 1);
    return Perm(rel);
}

inline LieModule convolution(const LieModule& F, const LieModule& G,
                             ConvLayout* layout_out = nullptr) {
    LieModule m;
    if (F.complete && G.complete) {
        m.N = F.N + G.N;
        m.complete = true;
    } else {
        // a value (F.G)(n) needs every F(a), G(n-a) with a <= n
        m.N = std::min(F.complete ? std::numeric_limits<int>::max() : F.N,
                       G.complete ? std::numeric_limits<int>::max() : G.N);
        m.complete = false;
    }
    m.dims.resize(m.N + 1, 0);

    ConvLayout layout;
    layout.blocks.resize(m.N + 1);
    for (int n = 0; n <= m.N; ++n) {
        int off = 0;
        for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
            int a = __builtin_popcount(mask);
            int d = F.dim(a) * G.dim(n - a);
            if (d > 0) layout.blocks[n].emplace_back(mask, off);
            off += d;
        }
        m.dims[n] = off;
    }

    auto block_offset = [&](int n, std::uint32_t mask) -> int {
        for (auto& [mk, of] : layout.blocks[n])
            if (mk == mask) return of;
        return -1;
    };

    m.transpositions.resize(m.N + 1);
    for (int n = 2; n <= m.N; ++n) {
        for (int k = 1; k < n; ++k) {
            SparseMat mat(m.dims[n], m.dims[n]);
            Perm sk = Perm::transposition(n, k);
            for (auto& [mask, off] : layout.blocks[n]) {
                std::vector<int> X = mask_to_set(mask, n);
                int a = static_cast<int>(X.size());
                std::uint32_t nmask = 0;
                for (int x : X) nmask |= 1u << (sk(x) - 1);
                std::vector<int> Y;
                for (int i = 1; i <= n; ++i)
                    if (!((mask >> (i - 1)) & 1u)) Y.push_back(i);
                int noff = block_offset(n, nmask);
                SparseMat fpT = (a >= 2 ? F.perm_matrix(a, induced_perm(X, sk))
                                        : SparseMat::identity(F.dim(a)))
                                    .transpose();
                SparseMat gpT = ((n - a) >= 2 ? G.perm_matrix(n - a, induced_perm(Y, sk))
                                              : SparseMat::identity(G.dim(n - a)))
                                    .transpose();
                int dg = G.dim(n - a);
                for (int u = 0; u < F.dim(a); ++u)
                    for (int v = 0; v < dg; ++v)
                        for (auto& [u2, cu] : fpT.row(u))
                            for (auto& [v2, cv] : gpT.row(v))
                                mat.add(noff + u2 * dg + v2, off + u * dg + v, cu * cv);
            }
            m.transpositions[n].push_back(std::move(mat));
        }
    }

    m.alpha.resize(std::max(1, m.N));
    for (int n = 1; n < m.N; ++n) {
        SparseMat a(m.dims[n], m.dims[n + 1]);
        for (auto& [mask, off] : layout.blocks[n + 1]) {
            std::vector<int> X = mask_to_set(mask, n + 1);
            int p = static_cast<int>(X.size());
            bool n_in = (mask >> (n - 1)) & 1u;
            bool n1_in = (mask >> n) & 1u;
            int dg = G.dim(n + 1 - p);
            if (n_in != n1_in) continue; // split pair acts by zero
            if (n_in) {
                // both in X: apply F's alpha on the last two slots of X
                std::uint32_t nmask = mask & ~(1u << n); // drop n+1
                int noff = block_offset(n, nmask);
                if (noff < 0 || p < 2) continue;
                SparseMat faT = F.alpha_matrix(p - 1).transpose();
                for (int u = 0; u < F.dim(p); ++u)
                    for (int v = 0; v < dg; ++v)
                        for (auto& [u2, cu] : faT.row(u))
                            a.add(noff + u2 * dg + v, off + u * dg + v, cu);
            } else {
                // both in Y: apply G's alpha
                int q = n + 1 - p;
                int noff = block_offset(n, mask);
                if (noff < 0 || q < 2) continue;
                SparseMat gaT = G.alpha_matrix(q - 1).transpose();
                int dg2 = G.dim(q - 1);
                for (int u = 0; u < F.dim(p); ++u)
                    for (int v = 0; v < G.dim(q); ++v)
                        for (auto& [v2, cv] : gaT.row(v))
                            a.add(noff + u * dg2 + v2, off + u * G.dim(q) + v, cv);
            }
        }
        m.alpha[n] = std::move(a);
    }
    m.name = F.name + " (.) " + G.name;
    if (layout_out) *layout_out = layout;
    return m;
}

// The canonical surjection P_{m+n} ->> P_m (.) P_n: a basis morphism of
// Cat Lie(m+n, t) maps to zero when some fibre mixes letters of the two
// blocks, and otherwise splits into its two pure parts.
struct ProjConvQuotient {
    int m = 0, n = 0;
    LieModule conv; // P_m (.) P_n
    ConvLayout layout;
    std::vector<SparseMat> maps; // per arity t: Cat Lie(m+n, t) -> conv.dims[t]
};

inline ProjConvQuotient convolution_projective_quotient(int m, int n, int N) {
    ProjConvQuotient out;
    out.m = m;
    out.n = n;
    LieModule Pm = representable_module(m, N);
    LieModule Pn = representable_module(n, N);
    out.conv = convolution(Pm, Pn, &out.layout);
    int cap = std::min(N, out.conv.N);
    out.maps.resize(cap + 1);
    for (int t = 0; t <= cap; ++t) {
        auto src = hom_space(OperadId::Lie, m + n, t);
        SparseMat mat(out.conv.dim(t), static_cast<int>(src->dim()));
        for (std::int64_t j = 0; j < src->dim(); ++j) {
            AssBasisElem b = src->elem(j);
            bool mixed = false;
            std::vector<int> X, Y; // outputs carried by the two blocks
            for (int i = 1; i <= t && !mixed; ++i) {
                const auto& w = b.ord.seq[i - 1];
                bool has_lo = false, has_hi = false;
                for (int l : w) (l <= m ? has_lo : has_hi) = true;
                if (has_lo && has_hi) mixed = true;
                else if (has_lo) X.push_back(i);
                else Y.push_back(i);
            }
            if (mixed) continue;
            auto rank_in = [](const std::vector<int>& set, int v) {
                return static_cast<int>(std::lower_bound(set.begin(), set.end(), v) - set.begin()) +
                       1;
            };
            // pure parts, outputs and letters relabelled
            std::vector<std::vector<int>> aseq(X.size()), bseq(Y.size());
            std::vector<int> aim(m), bim(n);
            for (int i = 1; i <= t; ++i) {
                const auto& w = b.ord.seq[i - 1];
                if (w.empty()) continue;
                if (w.front() <= m) {
                    int pos = rank_in(X, i);
                    for (int l : w) {
                        aseq[pos - 1].push_back(l);
                        aim[l - 1] = pos;
                    }
                } else {
                    int pos = rank_in(Y, i);
                    for (int l : w) {
                        bseq[pos - 1].push_back(l - m);
                        bim[l - m - 1] = pos;
                    }
                }
            }
            AssBasisElem ae(FiniteMap(m, static_cast<int>(X.size()), aim),
                            FibreOrder(std::move(aseq)));
            AssBasisElem be(FiniteMap(n, static_cast<int>(Y.size()), bim),
                            FibreOrder(std::move(bseq)));
            std::int64_t u = hom_space(OperadId::Lie, m, static_cast<int>(X.size()))->index_of(ae);
            std::int64_t v = hom_space(OperadId::Lie, n, static_cast<int>(Y.size()))->index_of(be);
            std::uint32_t mask = 0;
            for (int x : X) mask |= 1u << (x - 1);
            int off = -1;
            for (auto& [mk, of] : out.layout.blocks[t])
                if (mk == mask) { off = of; break; }
            if (off < 0) throw std::logic_error("convolution_projective_quotient: missing block");
            int dg = Pn.dim(static_cast<int>(Y.size()));
            mat.add(off + static_cast<int>(u) * dg + static_cast<int>(v), static_cast<int>(j),
                    rat(1));
        }
        out.maps[t] = std::move(mat);
    }
    return out;
}

} // namespace opcat
