#pragma once

#include <algorithm>
#include <map>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "tldimer/alpha_poly.hpp"
#include "tldimer/rational.hpp"

namespace tldimer {

// Sparse matrix in row-major sorted coordinate form. Entries are unique,
// in-bounds and nonzero; this makes operator== a valid equality test.
// Instantiated with Rational or AlphaPoly.
template <class T>
class SparseMat {
public:
    struct Entry {
        int row;
        int col;
        T val;
        friend bool operator==(const Entry& a, const Entry& b) {
            return a.row == b.row && a.col == b.col && a.val == b.val;
        }
    };

    SparseMat() = default;
    SparseMat(int nrows, int ncols) : nrows_(nrows), ncols_(ncols) {
        if (nrows < 0 || ncols < 0) throw std::invalid_argument("negative matrix dimension");
    }

    static SparseMat identity(int n) {
        SparseMat m(n, n);
        m.entries_.reserve(n);
        for (int i = 0; i < n; ++i) m.entries_.push_back({i, i, T(1)});
        return m;
    }
    static SparseMat zero(int r, int c) { return SparseMat(r, c); }

    int nrows() const { return nrows_; }
    int ncols() const { return ncols_; }
    const std::vector<Entry>& entries() const { return entries_; }
    bool is_zero() const { return entries_.empty(); }

    T get(int r, int c) const {
        auto it = std::lower_bound(entries_.begin(), entries_.end(), std::make_pair(r, c),
                                   [](const Entry& e, const std::pair<int, int>& k) {
                                       return std::make_pair(e.row, e.col) < k;
                                   });
        if (it != entries_.end() && it->row == r && it->col == c) return it->val;
        return T(0);
    }

    SparseMat transpose() const {
        Builder b(ncols_, nrows_);
        for (const auto& e : entries_) b.add(e.col, e.row, e.val);
        return b.build();
    }

    T trace() const {
        T acc(0);
        for (const auto& e : entries_)
            if (e.row == e.col) acc += e.val;
        return acc;
    }

    // y = M x on dense vectors
    std::vector<T> apply(const std::vector<T>& x) const {
        if (static_cast<int>(x.size()) != ncols_) throw std::invalid_argument("apply: size mismatch");
        std::vector<T> y(nrows_, T(0));
        for (const auto& e : entries_) y[e.row] += e.val * x[e.col];
        return y;
    }

    friend bool operator==(const SparseMat& a, const SparseMat& b) {
        return a.nrows_ == b.nrows_ && a.ncols_ == b.ncols_ && a.entries_ == b.entries_;
    }
    friend bool operator!=(const SparseMat& a, const SparseMat& b) { return !(a == b); }

    // Accumulating builder; duplicate coordinates sum, zeros are dropped.
    class Builder {
    public:
        Builder(int nrows, int ncols) : nrows_(nrows), ncols_(ncols) {}
        void add(int r, int c, T v) {
            if (r < 0 || r >= nrows_ || c < 0 || c >= ncols_)
                throw std::out_of_range("matrix entry (" + std::to_string(r) + "," +
                                        std::to_string(c) + ") out of bounds");
            if (scalar_is_zero(v)) return;
            auto [it, inserted] = acc_.try_emplace({r, c}, v);
            if (!inserted) {
                it->second += v;
                if (scalar_is_zero(it->second)) acc_.erase(it);
            }
        }
        SparseMat build() {
            SparseMat m(nrows_, ncols_);
            m.entries_.reserve(acc_.size());
            for (auto& [rc, v] : acc_) m.entries_.push_back({rc.first, rc.second, std::move(v)});
            return m;
        }

    private:
        int nrows_, ncols_;
        std::map<std::pair<int, int>, T> acc_;
    };

private:
    int nrows_ = 0, ncols_ = 0;
    std::vector<Entry> entries_;
};

template <class T>
SparseMat<T> mat_mul(const SparseMat<T>& a, const SparseMat<T>& b) {
    if (a.ncols() != b.nrows())
        throw std::invalid_argument("mat_mul: dimension mismatch (" + std::to_string(a.nrows()) +
                                    "x" + std::to_string(a.ncols()) + ") * (" +
                                    std::to_string(b.nrows()) + "x" + std::to_string(b.ncols()) +
                                    ")");
    // row start offsets of b (entries are row-major sorted)
    std::vector<int> bstart(b.nrows() + 1, 0);
    {
        const auto& be = b.entries();
        int idx = 0;
        for (int r = 0; r <= b.nrows(); ++r) {
            while (idx < static_cast<int>(be.size()) && be[idx].row < r) ++idx;
            bstart[r] = idx;
        }
    }
    typename SparseMat<T>::Builder out(a.nrows(), b.ncols());
    const auto& ae = a.entries();
    const auto& be = b.entries();
    std::size_t i = 0;
    while (i < ae.size()) {
        int row = ae[i].row;
        std::map<int, T> acc;
        for (; i < ae.size() && ae[i].row == row; ++i) {
            int j = ae[i].col;
            for (int k = bstart[j]; k < bstart[j + 1]; ++k) {
                auto [it, inserted] = acc.try_emplace(be[k].col, ae[i].val * be[k].val);
                if (!inserted) it->second += ae[i].val * be[k].val;
            }
        }
        for (auto& [col, v] : acc) out.add(row, col, std::move(v));
    }
    return out.build();
}

template <class T>
SparseMat<T> mat_add(const SparseMat<T>& a, const SparseMat<T>& b) {
    if (a.nrows() != b.nrows() || a.ncols() != b.ncols())
        throw std::invalid_argument("mat_add: shape mismatch");
    typename SparseMat<T>::Builder out(a.nrows(), a.ncols());
    for (const auto& e : a.entries()) out.add(e.row, e.col, e.val);
    for (const auto& e : b.entries()) out.add(e.row, e.col, e.val);
    return out.build();
}

template <class T>
SparseMat<T> mat_sub(const SparseMat<T>& a, const SparseMat<T>& b) {
    if (a.nrows() != b.nrows() || a.ncols() != b.ncols())
        throw std::invalid_argument("mat_sub: shape mismatch");
    typename SparseMat<T>::Builder out(a.nrows(), a.ncols());
    for (const auto& e : a.entries()) out.add(e.row, e.col, e.val);
    for (const auto& e : b.entries()) out.add(e.row, e.col, T(0) - e.val);
    return out.build();
}

template <class T>
SparseMat<T> mat_scale(const SparseMat<T>& a, const T& s) {
    typename SparseMat<T>::Builder out(a.nrows(), a.ncols());
    for (const auto& e : a.entries()) out.add(e.row, e.col, e.val * s);
    return out.build();
}

// horizontal concatenation
template <class T>
SparseMat<T> stack_columns(const std::vector<SparseMat<T>>& ms) {
    if (ms.empty()) throw std::invalid_argument("stack_columns: empty list");
    int nrows = ms[0].nrows();
    int ncols = 0;
    for (const auto& m : ms) {
        if (m.nrows() != nrows)
            throw std::invalid_argument("stack_columns: row-count mismatch (" +
                                        std::to_string(m.nrows()) + " vs " +
                                        std::to_string(nrows) + ")");
        ncols += m.ncols();
    }
    typename SparseMat<T>::Builder out(nrows, ncols);
    int off = 0;
    for (const auto& m : ms) {
        for (const auto& e : m.entries()) out.add(e.row, e.col + off, e.val);
        off += m.ncols();
    }
    return out.build();
}

// Submatrix selection through index maps (full index -> block index, -1 drops).
// With strict_cols set, an entry whose column is selected but whose row is not
// is an error: the matrix does not map the selected column space into the
// selected row space.
template <class T>
SparseMat<T> select_block(const SparseMat<T>& m, const std::vector<int>& row_map, int new_rows,
                          const std::vector<int>& col_map, int new_cols, bool strict_cols) {
    typename SparseMat<T>::Builder out(new_rows, new_cols);
    for (const auto& e : m.entries()) {
        int c = col_map[e.col];
        if (c < 0) continue;
        int r = row_map[e.row];
        if (r < 0) {
            if (strict_cols)
                throw std::domain_error("select_block: entry (" + std::to_string(e.row) + "," +
                                        std::to_string(e.col) + ") leaves the selected row space");
            continue;
        }
        out.add(r, c, e.val);
    }
    return out.build();
}

}  // namespace tldimer
