#pragma once

#include <vector>

#include "tldimer/rational.hpp"
#include "tldimer/sparse.hpp"

namespace tldimer {

struct KernelImage {
    int rank = 0;
    std::vector<std::vector<Rational>> kernel_basis;  // dense columns, ncols(input) long
    std::vector<int> pivot_columns;
};

// Exact rank, pivot columns and a kernel basis over the rationals.
//
// Each row is first scaled to integers (the lcm of its denominators); row
// scaling leaves rank and kernel unchanged. Elimination is then fraction-free:
// the Bareiss update p*A[i][j] - A[i][c]*A[r][j], divided exactly by the
// previous pivot, keeps every intermediate entry a minor of the scaled input.
// Pivot choice is the first nonzero in column order, so the result does not
// depend on any numeric heuristics.
inline KernelImage rank_kernel(const SparseMat<Rational>& m) {
    const int R = m.nrows(), C = m.ncols();
    std::vector<std::vector<Int>> w(R, std::vector<Int>(C, Int(0)));
    {
        std::vector<Int> row_lcm(R, Int(1));
        for (const auto& e : m.entries()) {
            Int l;
            mpz_lcm(l.get_mpz_t(), row_lcm[e.row].get_mpz_t(), e.val.get_den().get_mpz_t());
            row_lcm[e.row] = l;
        }
        for (const auto& e : m.entries())
            w[e.row][e.col] = e.val.get_num() * (row_lcm[e.row] / e.val.get_den());
    }

    KernelImage out;
    Int prev(1);
    int r = 0;
    for (int c = 0; c < C && r < R; ++c) {
        int pr = -1;
        for (int i = r; i < R; ++i)
            if (w[i][c] != 0) {
                pr = i;
                break;
            }
        if (pr < 0) continue;
        if (pr != r) std::swap(w[pr], w[r]);
        for (int i = r + 1; i < R; ++i) {
            Int t;
            for (int j = c + 1; j < C; ++j) {
                t = w[r][c] * w[i][j] - w[i][c] * w[r][j];
                mpz_divexact(w[i][j].get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
            }
            w[i][c] = 0;
        }
        prev = w[r][c];
        out.pivot_columns.push_back(c);
        ++r;
    }
    out.rank = r;

    std::vector<bool> is_pivot(C, false);
    for (int c : out.pivot_columns) is_pivot[c] = true;
    for (int f = 0; f < C; ++f) {
        if (is_pivot[f]) continue;
        std::vector<Rational> x(C, Rational(0));
        x[f] = 1;
        for (int i = out.rank - 1; i >= 0; --i) {
            int p = out.pivot_columns[i];
            Rational s(0);
            for (int j = p + 1; j < C; ++j)
                if (sgn(x[j]) != 0 && w[i][j] != 0) s += Rational(w[i][j]) * x[j];
            if (sgn(s) != 0) {
                x[p] = -s / Rational(w[i][p]);
            }
        }
        out.kernel_basis.push_back(std::move(x));
    }
    return out;
}

inline int rank_of(const SparseMat<Rational>& m) { return rank_kernel(m).rank; }

inline SparseMat<Rational> kernel_matrix(const KernelImage& ki, int ncols_of_input) {
    typename SparseMat<Rational>::Builder b(ncols_of_input, static_cast<int>(ki.kernel_basis.size()));
    for (int k = 0; k < static_cast<int>(ki.kernel_basis.size()); ++k)
        for (int i = 0; i < ncols_of_input; ++i) b.add(i, k, ki.kernel_basis[k][i]);
    return b.build();
}

}  // namespace tldimer
