#pragma once

#include <cstdint>
#include <map>
#include <queue>
#include <stdexcept>
#include <string>
#include <vector>

#include "tldimer/alpha_poly.hpp"
#include "tldimer/rational.hpp"
#include "tldimer/sparse.hpp"
#include "tldimer/spin_chain.hpp"

namespace tldimer {

struct LatticeShape {
    int rows;  // M
    int cols;  // N

    void validate() const {
        if (rows < 1 || cols < 1) throw std::invalid_argument("lattice shape must be >= 1x1");
    }
};

inline SparseMat<AlphaPoly> lift_to_poly(const SparseMat<Rational>& m) {
    typename SparseMat<AlphaPoly>::Builder b(m.nrows(), m.ncols());
    for (const auto& e : m.entries()) {
        if (e.val.get_den() != 1)
            throw std::invalid_argument("lift_to_poly: non-integer entry " + e.val.get_str());
        b.add(e.row, e.col, AlphaPoly(e.val.get_num()));
    }
    return b.build();
}

// V1: the full spin flip, a permutation matrix.
inline SparseMat<AlphaPoly> build_V1(int N) {
    return lift_to_poly(spin_reversal(N));
}

// V3 = prod_j (I + alpha sigma^-_j sigma^-_{j+1}); the factors commute and
// square to the identity plus a nilpotent, so the product expands exactly.
inline SparseMat<AlphaPoly> build_V3(int N) {
    if (N < 1 || N > 24) throw std::invalid_argument("build_V3: N out of range");
    SparseMat<AlphaPoly> acc = SparseMat<AlphaPoly>::identity(1 << N);
    for (int j = 1; j <= N - 1; ++j) {
        typename SparseMat<AlphaPoly>::Builder b(1 << N, 1 << N);
        std::uint64_t b0 = 1ull << (j - 1), b1 = 1ull << j;
        for (std::uint64_t s = 0; s < (1ull << N); ++s) {
            b.add(static_cast<int>(s), static_cast<int>(s), AlphaPoly(1));
            if (!(s & b0) && !(s & b1))
                b.add(static_cast<int>(s | b0 | b1), static_cast<int>(s), AlphaPoly::alpha());
        }
        acc = mat_mul(b.build(), acc);
    }
    return acc;
}

// raising twin of V3: prod_j (I + alpha sigma^+_j sigma^+_{j+1})
inline SparseMat<AlphaPoly> build_V3_raising(int N) {
    return build_V3(N).transpose();
}

struct TransferOperator {
    int N;
    SparseMat<AlphaPoly> matrix;  // V3 * V1
};

inline TransferOperator build_T(int N) {
    return {N, mat_mul(build_V3(N), build_V1(N))};
}

// T^2 in the form without the reflection operator. Asserted against T*T.
inline SparseMat<AlphaPoly> build_T2(int N) {
    auto t = build_T(N).matrix;
    auto t2 = mat_mul(t, t);
    auto product_form = mat_mul(build_V3(N), build_V3_raising(N));
    if (t2 != product_form)
        throw std::logic_error("squared transfer matrix disagrees with its +/- product form");
    return t2;
}

// two_v eigenvalue of a basis state under the variation index
inline int variation_two_v(int N, std::uint64_t s) {
    int acc = 0;
    for (int j = 1; j <= N; ++j) {
        int z = (s >> (j - 1)) & 1 ? -1 : 1;
        acc += (j % 2 == 0) ? z : -z;
    }
    return acc;
}

// The variation index (1/2) sum_j (-1)^j sigma^z_j, diagonal on the canonical
// basis.
inline SparseMat<Rational> variation_index(int N) {
    typename SparseMat<Rational>::Builder b(1 << N, 1 << N);
    for (std::uint64_t s = 0; s < (1ull << N); ++s)
        b.add(static_cast<int>(s), static_cast<int>(s), Rational(variation_two_v(N, s)) / 2);
    return b.build();
}

// doubled variation index as a polynomial matrix, for identities against T
inline SparseMat<AlphaPoly> variation_index_doubled(int N) {
    typename SparseMat<AlphaPoly>::Builder b(1 << N, 1 << N);
    for (std::uint64_t s = 0; s < (1ull << N); ++s)
        b.add(static_cast<int>(s), static_cast<int>(s), AlphaPoly(variation_two_v(N, s)));
    return b.build();
}

// partition of the canonical basis by variation-index eigenvalue, keyed by 2v
inline std::map<int, std::vector<std::uint64_t>> sector_split(int N) {
    std::map<int, std::vector<std::uint64_t>> out;
    for (std::uint64_t s = 0; s < (1ull << N); ++s) out[variation_two_v(N, s)].push_back(s);
    return out;
}

inline std::vector<std::uint64_t> dimer_sector_basis(int N, int two_v) {
    std::vector<std::uint64_t> out;
    for (std::uint64_t s = 0; s < (1ull << N); ++s)
        if (variation_two_v(N, s) == two_v) out.push_back(s);
    return out;
}

template <class T>
SparseMat<T> dimer_sector_block(const SparseMat<T>& m, int N, int two_v_target, int two_v_source) {
    auto tb = dimer_sector_basis(N, two_v_target);
    auto sb = dimer_sector_basis(N, two_v_source);
    std::vector<int> rmap(1ll << N, -1), cmap(1ll << N, -1);
    for (int i = 0; i < static_cast<int>(tb.size()); ++i) rmap[tb[i]] = i;
    for (int i = 0; i < static_cast<int>(sb.size()); ++i) cmap[sb[i]] = i;
    return select_block(m, rmap, static_cast<int>(tb.size()), cmap, static_cast<int>(sb.size()),
                        /*strict_cols=*/true);
}

// Connectivity of a sector under the elementary two-site raising/lowering
// moves: breadth-first search from the first state.
inline bool orbit_check(int N, int two_v) {
    auto basis = dimer_sector_basis(N, two_v);
    if (basis.empty()) throw std::invalid_argument("orbit_check: empty sector");
    std::map<std::uint64_t, int> index;
    for (int i = 0; i < static_cast<int>(basis.size()); ++i) index.emplace(basis[i], i);
    std::vector<bool> seen(basis.size(), false);
    std::queue<std::uint64_t> q;
    q.push(basis[0]);
    seen[0] = true;
    std::size_t reached = 1;
    while (!q.empty()) {
        std::uint64_t s = q.front();
        q.pop();
        for (int j = 1; j <= N - 1; ++j) {
            std::uint64_t b0 = 1ull << (j - 1), b1 = 1ull << j;
            std::uint64_t t;
            if (!(s & b0) && !(s & b1))
                t = s | b0 | b1;  // lower both
            else if ((s & b0) && (s & b1))
                t = s & ~(b0 | b1);  // raise both
            else
                continue;
            int i = index.at(t);
            if (!seen[i]) {
                seen[i] = true;
                ++reached;
                q.push(t);
            }
        }
    }
    return reached == basis.size();
}

// Exhaustive backtracking over perfect matchings of the MxN cylinder; weight
// alpha per horizontal dimer. Columns 1 and N are not adjacent. Rows M and 1
// are adjacent; for M = 2 this doubles the vertical adjacency and both
// parallel edges count as distinct placements (the convention forced by
// agreement with the transfer-matrix trace). For M = 1 the wrap edge would be
// a self-loop and is dropped.
inline AlphaPoly enumerate_coverings(const LatticeShape& shape, long site_guard = 36) {
    shape.validate();
    const int M = shape.rows, N = shape.cols;
    if (static_cast<long>(M) * N > site_guard)
        throw std::domain_error("enumerate_coverings: M*N exceeds the enumeration guard of " +
                                std::to_string(site_guard) + " sites");
    if ((M * N) % 2 != 0) return AlphaPoly();

    const int S = M * N;
    auto site = [&](int i, int j) { return (j - 1) * N + (i - 1); };  // i col, j row
    // neighbour lists; horizontal moves flagged
    std::vector<std::vector<std::pair<int, bool>>> adj(S);
    for (int j = 1; j <= M; ++j)
        for (int i = 1; i + 1 <= N; ++i) {
            adj[site(i, j)].push_back({site(i + 1, j), true});
            adj[site(i + 1, j)].push_back({site(i, j), true});
        }
    for (int i = 1; i <= N; ++i) {
        for (int j = 1; j + 1 <= M; ++j) {
            adj[site(i, j)].push_back({site(i, j + 1), false});
            adj[site(i, j + 1)].push_back({site(i, j), false});
        }
        if (M >= 2) {  // wrap edge, distinct from the direct one when M == 2
            adj[site(i, M)].push_back({site(i, 1), false});
            adj[site(i, 1)].push_back({site(i, M), false});
        }
    }
    std::vector<Int> by_h(S / 2 + 1, Int(0));
    std::vector<bool> used(S, false);
    auto rec = [&](auto&& self, int h) -> void {
        int a = -1;
        for (int s = 0; s < S; ++s)
            if (!used[s]) {
                a = s;
                break;
            }
        if (a < 0) {
            by_h[h] += 1;
            return;
        }
        used[a] = true;
        for (auto [b, horizontal] : adj[a]) {
            if (used[b]) continue;
            used[b] = true;
            self(self, h + (horizontal ? 1 : 0));
            used[b] = false;
        }
        used[a] = false;
    };
    rec(rec, 0);
    return AlphaPoly::from_coeffs(std::move(by_h));
}

// Tr T^M computed on the full space.
inline AlphaPoly partition_trace_full(const LatticeShape& shape, int n_guard = 12) {
    shape.validate();
    if (shape.cols > n_guard)
        throw std::domain_error("partition_trace: N exceeds the transfer-matrix guard of " +
                                std::to_string(n_guard));
    auto t = build_T(shape.cols).matrix;
    SparseMat<AlphaPoly> power = SparseMat<AlphaPoly>::identity(t.nrows());
    for (int k = 0; k < shape.rows; ++k) power = mat_mul(power, t);
    return power.trace();
}

// Tr T^M accumulated sector by sector. For even M the squared transfer
// matrix preserves each sector and the sector blocks are powered directly;
// for odd M only the v = 0 sector can contribute diagonal entries, since T
// maps the sector at v to the one at -v.
inline AlphaPoly partition_trace_sectors(const LatticeShape& shape, int n_guard = 12) {
    shape.validate();
    const int M = shape.rows, N = shape.cols;
    if (N > n_guard)
        throw std::domain_error("partition_trace: N exceeds the transfer-matrix guard of " +
                                std::to_string(n_guard));
    if (M % 2 == 0) {
        auto t2 = build_T2(N);
        AlphaPoly acc;
        for (const auto& [two_v, states] : sector_split(N)) {
            auto block = dimer_sector_block(t2, N, two_v, two_v);
            SparseMat<AlphaPoly> power = SparseMat<AlphaPoly>::identity(block.nrows());
            for (int k = 0; k < M / 2; ++k) power = mat_mul(power, block);
            acc += power.trace();
        }
        return acc;
    }
    if (N % 2 != 0) return AlphaPoly();  // no v=0 sector; T^M has empty diagonal
    auto t = build_T(N).matrix;
    auto block = dimer_sector_block(t, N, 0, 0);
    SparseMat<AlphaPoly> power = SparseMat<AlphaPoly>::identity(block.nrows());
    for (int k = 0; k < M; ++k) power = mat_mul(power, block);
    return power.trace();
}

// Cylinder partition function as an exact polynomial in alpha, with the
// full-space and sector-decomposed routes compared internally.
inline AlphaPoly partition_trace(const LatticeShape& shape, int n_guard = 12) {
    AlphaPoly full = partition_trace_full(shape, n_guard);
    AlphaPoly sectors = partition_trace_sectors(shape, n_guard);
    if (full != sectors)
        throw std::logic_error("partition trace: sector decomposition disagrees with full trace");
    return full;
}

}  // namespace tldimer
