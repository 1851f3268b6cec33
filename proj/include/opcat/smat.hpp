#pragma once

// Sparse exact linear algebra over Q: matrices, reduced echelon forms,
// rank / kernel / quotient constructions and subspace algebra.
//
// Conventions: matrices act on column vectors; compose(g, f) means
// "apply f first", i.e. the matrix product g * f.

#include "opcat/rational.hpp"

#include <algorithm>
#include <cassert>
#include <map>
#include <stdexcept>
#include <utility>
#include <vector>

namespace opcat {

// Sorted-by-index list of nonzero coordinates.
using SparseVec = std::vector<std::pair<int, Rational>>;

inline void sv_normalize(SparseVec& v) {
    std::sort(v.begin(), v.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
    SparseVec out;
    out.reserve(v.size());
    for (auto& [i, c] : v) {
        if (!out.empty() && out.back().first == i)
            out.back().second += c;
        else
            out.emplace_back(i, c);
    }
    out.erase(std::remove_if(out.begin(), out.end(),
                             [](const auto& p) { return is_zero(p.second); }),
              out.end());
    v = std::move(out);
}

// v += c * w (both sorted).
inline void sv_axpy(SparseVec& v, const Rational& c, const SparseVec& w) {
    if (is_zero(c) || w.empty()) return;
    SparseVec out;
    out.reserve(v.size() + w.size());
    std::size_t i = 0, j = 0;
    while (i < v.size() || j < w.size()) {
        if (j == w.size() || (i < v.size() && v[i].first < w[j].first)) {
            out.push_back(v[i++]);
        } else if (i == v.size() || w[j].first < v[i].first) {
            out.emplace_back(w[j].first, c * w[j].second);
            ++j;
        } else {
            Rational s = v[i].second + c * w[j].second;
            if (!is_zero(s)) out.emplace_back(v[i].first, std::move(s));
            ++i;
            ++j;
        }
    }
    v = std::move(out);
}

inline Rational sv_get(const SparseVec& v, int idx) {
    auto it = std::lower_bound(v.begin(), v.end(), idx,
                               [](const auto& p, int k) { return p.first < k; });
    if (it != v.end() && it->first == idx) return it->second;
    return Rational(0);
}

inline void sv_scale(SparseVec& v, const Rational& c) {
    if (is_zero(c)) { v.clear(); return; }
    for (auto& p : v) p.second *= c;
}

class SparseMat {
public:
    SparseMat() : rows_(0), cols_(0) {}
    SparseMat(int rows, int cols) : rows_(rows), cols_(cols), data_(rows) {
        if (rows < 0 || cols < 0) throw std::invalid_argument("negative matrix dimension");
    }

    static SparseMat identity(int n) {
        SparseMat m(n, n);
        for (int i = 0; i < n; ++i) m.data_[i].emplace_back(i, Rational(1));
        return m;
    }

    int rows() const { return rows_; }
    int cols() const { return cols_; }

    void add(int r, int c, const Rational& v) {
        assert(r >= 0 && r < rows_ && c >= 0 && c < cols_);
        if (is_zero(v)) return;
        data_[r].emplace_back(c, v);
        dirty_ = true;
    }

    void set_row(int r, SparseVec v) {
        sv_normalize(v);
        data_[r] = std::move(v);
    }

    const SparseVec& row(int r) const {
        if (dirty_) const_cast<SparseMat*>(this)->flush();
        return data_[r];
    }

    Rational at(int r, int c) const { return sv_get(row(r), c); }

    std::size_t nnz() const {
        if (dirty_) const_cast<SparseMat*>(this)->flush();
        std::size_t n = 0;
        for (auto& r : data_) n += r.size();
        return n;
    }

    // y = this * x
    SparseVec apply(const SparseVec& x) const {
        SparseVec y;
        for (int r = 0; r < rows_; ++r) {
            Rational acc(0);
            const SparseVec& rw = row(r);
            std::size_t i = 0, j = 0;
            while (i < rw.size() && j < x.size()) {
                if (rw[i].first < x[j].first) ++i;
                else if (x[j].first < rw[i].first) ++j;
                else { acc += rw[i].second * x[j].second; ++i; ++j; }
            }
            if (!is_zero(acc)) y.emplace_back(r, std::move(acc));
        }
        return y;
    }

    SparseMat transpose() const {
        SparseMat t(cols_, rows_);
        for (int r = 0; r < rows_; ++r)
            for (auto& [c, v] : row(r)) t.data_[c].emplace_back(r, v);
        for (auto& rw : t.data_)
            std::sort(rw.begin(), rw.end(),
                      [](const auto& a, const auto& b) { return a.first < b.first; });
        return t;
    }

    friend SparseMat operator*(const SparseMat& a, const SparseMat& b) {
        if (a.cols_ != b.rows_) throw std::invalid_argument("matrix product shape mismatch");
        SparseMat c(a.rows_, b.cols_);
        for (int r = 0; r < a.rows_; ++r) {
            SparseVec acc;
            for (auto& [k, av] : a.row(r)) sv_axpy(acc, av, b.row(k));
            c.data_[r] = std::move(acc);
        }
        return c;
    }

    friend SparseMat operator+(const SparseMat& a, const SparseMat& b) {
        if (a.rows_ != b.rows_ || a.cols_ != b.cols_)
            throw std::invalid_argument("matrix sum shape mismatch");
        SparseMat c = a;
        c.flush();
        for (int r = 0; r < b.rows_; ++r) sv_axpy(c.data_[r], Rational(1), b.row(r));
        return c;
    }

    friend SparseMat operator-(const SparseMat& a, const SparseMat& b) {
        if (a.rows_ != b.rows_ || a.cols_ != b.cols_)
            throw std::invalid_argument("matrix difference shape mismatch");
        SparseMat c = a;
        c.flush();
        for (int r = 0; r < b.rows_; ++r) sv_axpy(c.data_[r], Rational(-1), b.row(r));
        return c;
    }

    SparseMat scaled(const Rational& c) const {
        SparseMat m = *this;
        m.flush();
        for (auto& rw : m.data_) sv_scale(rw, c);
        return m;
    }

    bool operator==(const SparseMat& o) const {
        if (rows_ != o.rows_ || cols_ != o.cols_) return false;
        for (int r = 0; r < rows_; ++r)
            if (row(r) != o.row(r)) return false;
        return true;
    }

    bool is_zero_matrix() const {
        for (int r = 0; r < rows_; ++r)
            if (!row(r).empty()) return false;
        return true;
    }

private:
    void flush() {
        for (auto& rw : data_) sv_normalize(rw);
        dirty_ = false;
    }

    int rows_, cols_;
    std::vector<SparseVec> data_;
    bool dirty_ = false;
};

// Incrementally maintained reduced row echelon basis (pivot entries 1,
// pivot columns cleared in all other rows). A row inserted into the
// echelon only ever interacts with rows sharing a column, so matrices
// that decompose into independent column blocks eliminate blockwise.
class Echelon {
public:
    explicit Echelon(int ambient = 0) : ambient_(ambient) {}

    int ambient_dim() const { return ambient_; }
    int rank() const { return static_cast<int>(rows_.size()); }

    // Reduces v against the current basis; returns the residual.
    SparseVec reduce(SparseVec v) const {
        sv_normalize(v);
        SparseVec out;
        while (!v.empty()) {
            auto it = pivot_row_.find(v.front().first);
            if (it == pivot_row_.end()) {
                out.push_back(v.front());
                v.erase(v.begin());
            } else {
                sv_axpy(v, -v.front().second, rows_[it->second]);
            }
        }
        sv_normalize(out);
        return out;
    }

    bool contains(const SparseVec& v) const { return reduce(v).empty(); }

    // Inserts v; returns true when the rank grew.
    bool insert(SparseVec v) {
        v = reduce(std::move(v));
        if (v.empty()) return false;
        int p = v.front().first;
        sv_scale(v, Rational(1) / v.front().second);
        // Clear column p from existing rows to keep the form reduced.
        for (auto& [piv, ri] : pivot_row_) {
            (void)piv;
            Rational c = sv_get(rows_[ri], p);
            if (!is_zero(c)) sv_axpy(rows_[ri], -c, v);
        }
        pivot_row_[p] = static_cast<int>(rows_.size());
        rows_.push_back(std::move(v));
        return true;
    }

    const std::map<int, int>& pivots() const { return pivot_row_; }
    const SparseVec& row_for_pivot(int pivot_col) const { return rows_[pivot_row_.at(pivot_col)]; }
    const std::vector<SparseVec>& rows() const { return rows_; }

    std::vector<int> free_columns() const {
        std::vector<int> out;
        for (int c = 0; c < ambient_; ++c)
            if (!pivot_row_.count(c)) out.push_back(c);
        return out;
    }

private:
    int ambient_;
    std::vector<SparseVec> rows_;
    std::map<int, int> pivot_row_;
};

// Echelon that also tracks, for each inserted vector, the combination of
// original generators it came from; used to express elements in a chosen
// spanning set (e.g. rewriting an associative word in the Lie basis).
class TrackedEchelon {
public:
    explicit TrackedEchelon(int ambient = 0) : ambient_(ambient) {}

    int rank() const { return static_cast<int>(rows_.size()); }

    void insert(SparseVec v, int generator_index) {
        SparseVec comb{{generator_index, Rational(1)}};
        reduce_inplace(v, comb);
        if (v.empty()) return;
        sv_normalize(v);
        Rational inv = Rational(1) / v.front().second;
        sv_scale(v, inv);
        sv_scale(comb, inv);
        pivot_row_[v.front().first] = static_cast<int>(rows_.size());
        rows_.push_back(std::move(v));
        combs_.push_back(std::move(comb));
    }

    // If v lies in the span, returns true and writes the coordinates on the
    // original generators into coords.
    bool solve(SparseVec v, SparseVec& coords) const {
        SparseVec comb;
        reduce_inplace(v, comb);
        if (!v.empty()) return false;
        sv_scale(comb, Rational(-1));
        sv_normalize(comb);
        coords = std::move(comb);
        return true;
    }

private:
    void reduce_inplace(SparseVec& v, SparseVec& comb) const {
        sv_normalize(v);
        SparseVec rest;
        while (!v.empty()) {
            auto it = pivot_row_.find(v.front().first);
            if (it == pivot_row_.end()) {
                rest.push_back(v.front());
                v.erase(v.begin());
            } else {
                Rational c = v.front().second;
                sv_axpy(v, -c, rows_[it->second]);
                sv_axpy(comb, -c, combs_[it->second]);
            }
        }
        v = std::move(rest);
        sv_normalize(v);
    }

    int ambient_;
    std::vector<SparseVec> rows_;
    std::vector<SparseVec> combs_;
    std::map<int, int> pivot_row_;
};

struct Subspace {
    int ambient_dim = 0;
    Echelon basis;

    Subspace() : basis(0) {}
    explicit Subspace(int ambient) : ambient_dim(ambient), basis(ambient) {}

    int dim() const { return basis.rank(); }
    bool contains(const SparseVec& v) const { return basis.contains(v); }
};

inline Subspace span_of(int ambient, const std::vector<SparseVec>& gens) {
    Subspace s(ambient);
    for (auto v : gens) s.basis.insert(std::move(v));
    return s;
}

inline int rank(const SparseMat& m) {
    Echelon e(m.cols());
    for (int r = 0; r < m.rows(); ++r) e.insert(m.row(r));
    return e.rank();
}

inline Subspace kernel_basis(const SparseMat& m) {
    Echelon e(m.cols());
    for (int r = 0; r < m.rows(); ++r) e.insert(m.row(r));
    Subspace ker(m.cols());
    for (int c : e.free_columns()) {
        SparseVec v{{c, Rational(1)}};
        for (auto& [p, ri] : e.pivots()) {
            Rational coeff = sv_get(e.rows()[ri], c);
            if (!is_zero(coeff)) v.emplace_back(p, -coeff);
        }
        sv_normalize(v);
        ker.basis.insert(std::move(v));
    }
    return ker;
}

// Surjection with kernel exactly `relations`; codomain dimension
// ambient - dim(relations). Rows read off the canonical representatives
// of the reduced echelon form.
inline SparseMat quotient_map(int ambient_dim, const Subspace& relations) {
    if (relations.ambient_dim != ambient_dim)
        throw std::invalid_argument("quotient_map: ambient dimension mismatch");
    std::vector<int> free_cols = relations.basis.free_columns();
    SparseMat q(static_cast<int>(free_cols.size()), ambient_dim);
    for (int out = 0; out < static_cast<int>(free_cols.size()); ++out) {
        int c = free_cols[out];
        SparseVec row{{c, Rational(1)}};
        for (auto& [p, ri] : relations.basis.pivots()) {
            Rational coeff = sv_get(relations.basis.rows()[ri], c);
            if (!is_zero(coeff)) row.emplace_back(p, -coeff);
        }
        sv_normalize(row);
        q.set_row(out, std::move(row));
    }
    return q;
}

inline bool subspaces_equal(const Subspace& a, const Subspace& b) {
    if (a.ambient_dim != b.ambient_dim)
        throw std::invalid_argument("subspaces_equal: ambient dimension mismatch");
    if (a.dim() != b.dim()) return false;
    for (auto& row : a.basis.rows())
        if (!b.contains(row)) return false;
    return true;
}

} // namespace opcat
