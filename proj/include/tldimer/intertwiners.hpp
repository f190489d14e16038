#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "tldimer/link_state.hpp"
#include "tldimer/rational.hpp"
#include "tldimer/sparse.hpp"
#include "tldimer/spin_chain.hpp"

namespace tldimer {

struct IntertwinerMatrix {
    SparseMat<Rational> matrix;
    std::string source;
    std::string target;
};

// J = sum_j (-1)^{j-1} sigma^-_j sigma^-_{j+1} on the full spin space of n-1
// sites; lowers the magnetisation by two units and commutes with the chain
// representation.
inline SparseMat<Rational> J_full(int n) {
    if (n < 2) throw std::invalid_argument("J_full: n must be >= 2");
    const int sites = n - 1;
    return detail::spin_operator(sites, [&](std::uint64_t s, SpinVector& img) {
        for (int j = 1; j + 1 <= sites; ++j) {
            std::uint64_t b0 = 1ull << (j - 1), b1 = 1ull << j;
            if (!(s & b0) && !(s & b1))
                add_term(img, s | b0 | b1, Rational(j % 2 == 1 ? 1 : -1));
        }
    });
}

// Sector block of J from magnetisation v to v-2. An empty target sector
// yields the 0-row matrix.
inline IntertwinerMatrix J_matrix(int n, int two_v) {
    SectorLabel src{n, two_v};
    src.validate();
    std::string sname = "E(" + std::to_string(n) + "," + std::to_string(two_v) + ")";
    std::string tname = "E(" + std::to_string(n) + "," + std::to_string(two_v - 4) + ")";
    int ncols = static_cast<int>(sector_basis(src).size());
    if (std::abs(two_v - 4) > n - 1)
        return {SparseMat<Rational>::zero(0, ncols), sname, tname};
    SectorLabel dst{n, two_v - 4};
    return {sector_block(J_full(n), dst, src), sname, tname};
}

namespace detail {

// column vector prod_{(i,j) in arcs} (sigma^-_{i-1} + sigma^-_j) |u>,
// optionally times one extra lowering operator; 1-based node indices with
// sigma^-_0 = sigma^-_n = 0, spin sites 1..n-1
inline SpinVector arc_lowering_vector(int n, const std::vector<std::pair<int, int>>& arcs,
                                      int extra_site = -1) {
    const int sites = n - 1;
    SpinVector v;
    v.emplace(0, Rational(1));
    auto apply_lowering_sum = [&](std::initializer_list<int> terms) {
        SpinVector next;
        for (const auto& [s, coeff] : v) {
            for (int site : terms) {
                if (site < 1 || site > sites) continue;
                std::uint64_t bit = 1ull << (site - 1);
                if (!(s & bit)) add_term(next, s | bit, coeff);
            }
        }
        v = std::move(next);
    };
    for (const auto& [i, j] : arcs) apply_lowering_sum({i - 1, j});
    if (extra_site >= 0) apply_lowering_sum({extra_site});
    return v;
}

}  // namespace detail

// Matrix of the link-to-spin map from the composite module with d = 2v+1
// (columns: B^{2v+1} then the wavy layer B^{2v+3}) to the magnetisation
// sector at v. Every half-arc contributes one lowering unit; the wavy defect
// contributes through the site just to its left. For 2v+1 = n the wavy layer
// is empty and the source is the standard module.
inline IntertwinerMatrix h_matrix(int n, int two_v) {
    if (two_v < -1) throw std::invalid_argument("h_matrix: two_v must be >= -1");
    const int d = two_v + 1;
    if (d > n || (n - d) % 2 != 0)
        throw std::invalid_argument("h_matrix: invalid sector two_v=" + std::to_string(two_v) +
                                    " for n=" + std::to_string(n));
    SectorLabel dst{n, two_v};
    dst.validate();
    auto dst_map = sector_index_map(dst);
    int nrows = static_cast<int>(sector_basis(dst).size());

    std::vector<LinkState> basis = (d <= n - 2) ? module_basis({n, d, ModuleKind::Composite})
                                                : link_basis(n, d);
    typename SparseMat<Rational>::Builder b(nrows, static_cast<int>(basis.size()));
    for (int col = 0; col < static_cast<int>(basis.size()); ++col) {
        const LinkState& w = basis[col];
        // wavy defect at 1-based node a lowers through site a-1 = 0-based index
        int extra = w.has_wavy() ? w.wavy() : -1;
        auto arcs1 = w.arcs();
        for (auto& [i, j] : arcs1) {
            ++i;
            ++j;
        }
        SpinVector vec = detail::arc_lowering_vector(n, arcs1, extra);
        for (const auto& [s, coeff] : vec) {
            int r = dst_map[s];
            if (r < 0) throw std::logic_error("h column leaves the target sector");
            b.add(r, col, coeff);
        }
    }
    std::string sname = (d <= n - 2 ? "W(" : "V(") + std::to_string(n) + "," + std::to_string(d) + ")";
    return {b.build(), sname, "E(" + std::to_string(n) + "," + std::to_string(two_v) + ")"};
}

inline int h_vk_max_k(int n, int two_v) { return (n - 1 - two_v) / 4; }

// Composed intertwiner J^k h_{v+2k} from the composite module with
// d = 2v+4k+1 into the sector at v. Non-vanishing on the standard-module
// columns is guaranteed for v >= 0, and for v = -1/2 when k >= 1; the k = 0
// map at v = -1/2 is still well-defined and vanishes there.
inline IntertwinerMatrix h_vk_matrix(int n, int two_v, int k) {
    if (two_v < -1) throw std::invalid_argument("h_vk_matrix: sector out of range");
    if (k < 0 || k > h_vk_max_k(n, two_v))
        throw std::invalid_argument("h_vk_matrix: k=" + std::to_string(k) + " out of range 0.." +
                                    std::to_string(h_vk_max_k(n, two_v)));
    auto h = h_matrix(n, two_v + 4 * k);
    SparseMat<Rational> m = h.matrix;
    for (int step = 0; step < k; ++step) {
        int cur_two_v = two_v + 4 * (k - step);
        m = mat_mul(J_matrix(n, cur_two_v).matrix, m);
    }
    return {m, h.source, "E(" + std::to_string(n) + "," + std::to_string(two_v) + ")"};
}

// restriction of the composed intertwiner to the standard-module columns
inline SparseMat<Rational> h_vk_restricted(int n, int two_v, int k) {
    auto full = h_vk_matrix(n, two_v, k);
    int d = two_v + 4 * k + 1;
    int vcols = static_cast<int>(link_basis(n, d).size());
    std::vector<int> cmap(full.matrix.ncols(), -1);
    for (int c = 0; c < vcols; ++c) cmap[c] = c;
    std::vector<int> rmap(full.matrix.nrows());
    for (int r = 0; r < full.matrix.nrows(); ++r) rmap[r] = r;
    return select_block(full.matrix, rmap, full.matrix.nrows(), cmap, vcols, false);
}

struct IntertwineReport {
    bool pass = true;
    int generator = 0;  // first violating generator (1-based)
    int row = -1, col = -1;
};

// Verifies target(e_j) A = A source(e_j) for every generator; on failure
// reports the first differing entry.
inline IntertwineReport check_intertwine(const SparseMat<Rational>& A,
                                         const std::vector<SparseMat<Rational>>& source_gens,
                                         const std::vector<SparseMat<Rational>>& target_gens) {
    if (source_gens.size() != target_gens.size())
        throw std::invalid_argument("check_intertwine: generator count mismatch");
    for (std::size_t idx = 0; idx < source_gens.size(); ++idx) {
        auto lhs = mat_mul(target_gens[idx], A);
        auto rhs = mat_mul(A, source_gens[idx]);
        if (lhs != rhs) {
            IntertwineReport rep;
            rep.pass = false;
            rep.generator = static_cast<int>(idx) + 1;
            auto diff = mat_sub(lhs, rhs);
            rep.row = diff.entries().front().row;
            rep.col = diff.entries().front().col;
            return rep;
        }
    }
    return {};
}

// The matrix element of the composed intertwiner between the nested-arc
// basis state (p nested arcs, then d defects) and the bra with p up, p+2k
// down and d-2k-1 up spins; equals k! for admissible parameters.
inline Rational matrix_element_factorial(int n, int two_v, int k) {
    // the bra needs d-2k-1 = 2(v+k) trailing up spins, so v+k must not be negative
    if (two_v < -1 || k < 0 || two_v + 2 * k < 0)
        throw std::invalid_argument("matrix_element_factorial: invalid (two_v, k)");
    const int d = two_v + 4 * k + 1;
    if (d > n || (n - d) % 2 != 0)
        throw std::invalid_argument("matrix_element_factorial: d = 2v+4k+1 must be <= n with n-d even");
    const int p = (n - d) / 2;
    std::vector<int> partner(n);
    for (int i = 0; i < n; ++i) partner[i] = i;
    for (int a = 0; a < p; ++a) {  // nested arcs (a, 2p-1-a), 0-based
        partner[a] = 2 * p - 1 - a;
        partner[2 * p - 1 - a] = a;
    }
    LinkState w(n, std::move(partner));
    auto basis = link_basis(n, d);
    int col = -1;
    for (int i = 0; i < static_cast<int>(basis.size()); ++i)
        if (basis[i] == w) {
            col = i;
            break;
        }
    if (col < 0) throw std::logic_error("nested-arc state not found in basis");
    auto hvk = h_vk_matrix(n, two_v, k);
    // bra: p up, p+2k down, d-2k-1 up (total n-1 sites)
    std::uint64_t bra = ((p + 2 * k) >= 64 ? 0 : ((1ull << (p + 2 * k)) - 1)) << p;
    auto dst = sector_basis(SectorLabel{n, two_v});
    int row = -1;
    for (int i = 0; i < static_cast<int>(dst.size()); ++i)
        if (dst[i] == bra) {
            row = i;
            break;
        }
    if (row < 0) throw std::logic_error("bra state not found in target sector");
    return hvk.matrix.get(row, col);
}

// h_v applied to the arc-insertion image of the state whose 2v+5 leftmost
// nodes are defects and whose remaining nodes are simply paired; returns the
// resulting spin vector on the full space (n even, v >= 1/2, 2v+5 <= n).
inline SpinVector h_after_g_probe(int n, int two_v) {
    if (n % 2 != 0 || two_v < 1 || two_v + 5 > n)
        throw std::invalid_argument("h_after_g_probe: need n even, two_v >= 1, 2v+5 <= n");
    const int dtop = two_v + 5;  // defect count of the probe state
    std::vector<int> partner(n);
    for (int i = 0; i < n; ++i) partner[i] = i;
    for (int a = dtop; a + 1 < n; a += 2) {
        partner[a] = a + 1;
        partner[a + 1] = a;
    }
    LinkState w(n, std::move(partner));
    auto g = g_map(n, two_v + 3);  // V^{2v+5} -> V^{2v+3}
    auto src = link_basis(n, dtop);
    int col = -1;
    for (int i = 0; i < static_cast<int>(src.size()); ++i)
        if (src[i] == w) col = i;
    if (col < 0) throw std::logic_error("probe state not found");
    auto h = h_matrix(n, two_v);  // on W(n, 2v+1): lower layer then wavy layer
    int lower = static_cast<int>(link_basis(n, two_v + 1).size());
    SpinVector out;
    auto dst = sector_basis(SectorLabel{n, two_v});
    for (const auto& e : g.entries()) {
        if (e.col != col) continue;
        // row e.row of g's output lives in the wavy layer of W(n, 2v+1)
        int hcol = lower + e.row;
        for (const auto& he : h.matrix.entries()) {
            if (he.col != hcol) continue;
            add_term(out, dst[he.row], he.val * e.val);
        }
    }
    return out;
}

}  // namespace tldimer
