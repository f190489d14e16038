#pragma once

#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "tldimer/rational.hpp"
#include "tldimer/sparse.hpp"

namespace tldimer {

// Spin basis states of n_sites spin-1/2 sites are bitmasks: bit (j-1) set
// means site j is spin-down, so the all-up state is 0 and the popcount is the
// number of applied lowering operators.
struct SpinBasisState {
    int n_sites;
    std::uint64_t bits;
};

using SpinVector = std::map<std::uint64_t, Rational>;

inline void add_term(SpinVector& v, std::uint64_t s, const Rational& c) {
    if (sgn(c) == 0) return;
    auto [it, inserted] = v.try_emplace(s, c);
    if (!inserted) {
        it->second += c;
        if (sgn(it->second) == 0) v.erase(it);
    }
}

inline std::string arrow_string(int n_sites, std::uint64_t bits) {
    std::string s;
    for (int j = 0; j < n_sites; ++j) s += (bits >> j) & 1 ? "v" : "^";
    return s;
}

// parse "^v^..." or unicode arrows
inline std::uint64_t parse_arrows(const std::string& s) {
    std::uint64_t bits = 0;
    int site = 0;
    for (std::size_t i = 0; i < s.size(); ++site) {
        if (s.compare(i, 3, "↑") == 0) {
            i += 3;
        } else if (s.compare(i, 3, "↓") == 0) {
            bits |= 1ull << site;
            i += 3;
        } else if (s[i] == '^') {
            ++i;
        } else if (s[i] == 'v') {
            bits |= 1ull << site;
            ++i;
        } else {
            throw std::invalid_argument("bad arrow string: '" + s + "'");
        }
    }
    return bits;
}

enum class Sigma { plus, minus, z, x };

// Pauli operator at a 1-based site applied to a basis state. Sites 0 and
// n_sites+1 are legal for the ladder operators and give zero, matching the
// open-boundary convention.
inline SpinVector apply_sigma(Sigma kind, int site, int n_sites, std::uint64_t s) {
    SpinVector out;
    if (kind == Sigma::plus || kind == Sigma::minus) {
        if (site < 0 || site > n_sites + 1)
            throw std::invalid_argument("sigma site out of extended range");
        if (site == 0 || site == n_sites + 1) return out;
    } else {
        if (site < 1 || site > n_sites) throw std::invalid_argument("sigma site out of range");
    }
    std::uint64_t bit = 1ull << (site - 1);
    switch (kind) {
        case Sigma::minus:  // up -> down
            if (!(s & bit)) add_term(out, s | bit, Rational(1));
            break;
        case Sigma::plus:  // down -> up
            if (s & bit) add_term(out, s & ~bit, Rational(1));
            break;
        case Sigma::z:
            add_term(out, s, Rational((s & bit) ? -1 : 1));
            break;
        case Sigma::x:
            add_term(out, s ^ bit, Rational(1));
            break;
    }
    return out;
}

namespace detail {

// generic sparse operator on 2^n_sites built from a per-basis-state image
template <class Fn>
SparseMat<Rational> spin_operator(int n_sites, Fn&& image_of) {
    if (n_sites < 0 || n_sites > 30) throw std::invalid_argument("spin space too large");
    const std::int64_t dim = 1ll << n_sites;
    typename SparseMat<Rational>::Builder b(static_cast<int>(dim), static_cast<int>(dim));
    for (std::int64_t s = 0; s < dim; ++s) {
        SpinVector img;
        image_of(static_cast<std::uint64_t>(s), img);
        for (const auto& [t, v] : img) b.add(static_cast<int>(t), static_cast<int>(s), v);
    }
    return b.build();
}

}  // namespace detail

// Generator image under the dimer representation on n-1 spin sites:
// sigma^-_{j-1} sigma^+_j + sigma^+_j sigma^-_{j+1} with the out-of-range
// ladder operators set to zero.
inline SparseMat<Rational> tau_generator(int n, int j) {
    if (n < 2) throw std::invalid_argument("tau_generator: n must be >= 2");
    if (j < 1 || j > n - 1) throw std::invalid_argument("tau_generator: j out of range");
    const int sites = n - 1;
    return detail::spin_operator(sites, [&](std::uint64_t s, SpinVector& img) {
        // sigma^-_{j-1} sigma^+_j : site j down, site j-1 up
        if (j - 1 >= 1) {
            std::uint64_t bj = 1ull << (j - 1), bl = 1ull << (j - 2);
            if ((s & bj) && !(s & bl)) add_term(img, (s & ~bj) | bl, Rational(1));
        }
        // sigma^+_j sigma^-_{j+1} : site j+1 up -> down, site j down -> up
        if (j + 1 <= sites) {
            std::uint64_t bj = 1ull << (j - 1), br = 1ull << j;
            if ((s & bj) && !(s & br)) add_term(img, (s & ~bj) | br, Rational(1));
        }
    });
}

// Parity-split twin of tau: pure lowering on odd generators, pure raising on
// even ones. Related to tau by conjugation with the odd-site spin flip.
inline SparseMat<Rational> tau_bar_generator(int n, int j) {
    if (n < 2) throw std::invalid_argument("tau_bar_generator: n must be >= 2");
    if (j < 1 || j > n - 1) throw std::invalid_argument("tau_bar_generator: j out of range");
    const int sites = n - 1;
    const bool lowering = (j % 2 == 1);
    return detail::spin_operator(sites, [&](std::uint64_t s, SpinVector& img) {
        for (int a : {j - 1, j}) {  // terms sigma_a sigma_{a+1}
            if (a < 1 || a + 1 > sites) continue;
            std::uint64_t b0 = 1ull << (a - 1), b1 = 1ull << a;
            if (lowering) {
                if (!(s & b0) && !(s & b1)) add_term(img, s | b0 | b1, Rational(1));
            } else {
                if ((s & b0) && (s & b1)) add_term(img, s & ~(b0 | b1), Rational(1));
            }
        }
    });
}

// U: sigma^x over the odd sites; an involution with U tau_bar U^{-1} = tau.
inline SparseMat<Rational> odd_site_flip(int n) {
    const int sites = n - 1;
    std::uint64_t mask = 0;
    for (int j = 1; j <= sites; j += 2) mask |= 1ull << (j - 1);
    return detail::spin_operator(sites,
                                 [&](std::uint64_t s, SpinVector& img) { add_term(img, s ^ mask, Rational(1)); });
}

// full spin reversal on n_sites sites
inline SparseMat<Rational> spin_reversal(int n_sites) {
    std::uint64_t mask = (n_sites == 0) ? 0 : ((1ull << n_sites) - 1);
    return detail::spin_operator(n_sites,
                                 [&](std::uint64_t s, SpinVector& img) { add_term(img, s ^ mask, Rational(1)); });
}

inline SparseMat<Rational> sz_matrix(int n) {
    const int sites = n - 1;
    return detail::spin_operator(sites, [&](std::uint64_t s, SpinVector& img) {
        int down = __builtin_popcountll(s);
        add_term(img, s, Rational(sites - 2 * down) / 2);
    });
}

// H = - sum_j tau(e_j): a Heisenberg hopping chain with no boundary field.
inline SparseMat<Rational> hamiltonian(int n) {
    if (n < 2) throw std::invalid_argument("hamiltonian: n must be >= 2");
    const int sites = n - 1;
    return detail::spin_operator(sites, [&](std::uint64_t s, SpinVector& img) {
        for (int j = 1; j + 1 <= sites; ++j) {
            std::uint64_t b0 = 1ull << (j - 1), b1 = 1ull << j;
            bool d0 = s & b0, d1 = s & b1;
            if (d0 != d1) add_term(img, s ^ (b0 | b1), Rational(-1));
        }
    });
}

// Magnetisation sector of n-1 sites; v is carried as the integer 2v.
struct SectorLabel {
    int n;
    int two_v;

    void validate() const {
        int sites = n - 1;
        if (n < 1) throw std::invalid_argument("sector: n must be >= 1");
        if (std::abs(two_v) > sites || ((two_v - sites) % 2) != 0)
            throw std::invalid_argument("sector: invalid two_v=" + std::to_string(two_v) +
                                        " for n=" + std::to_string(n));
    }
    int down_count() const { return (n - 1 - two_v) / 2; }
};

// states with fixed down-spin count, ascending bitmask order
inline std::vector<std::uint64_t> sector_basis(const SectorLabel& label) {
    label.validate();
    const int sites = label.n - 1;
    const int p = label.down_count();
    std::vector<std::uint64_t> out;
    for (std::uint64_t s = 0; s < (1ull << sites); ++s)
        if (__builtin_popcountll(s) == p) out.push_back(s);
    return out;
}

inline std::vector<int> sector_index_map(const SectorLabel& label) {
    const int sites = label.n - 1;
    std::vector<int> map(1ll << sites, -1);
    auto basis = sector_basis(label);
    for (int i = 0; i < static_cast<int>(basis.size()); ++i) map[basis[i]] = i;
    return map;
}

// Block of m between two magnetisation sectors; every entry with a column in
// the source sector must have its row in the target sector.
inline SparseMat<Rational> sector_block(const SparseMat<Rational>& m, const SectorLabel& target,
                                        const SectorLabel& source) {
    auto rmap = sector_index_map(target);
    auto cmap = sector_index_map(source);
    int nr = static_cast<int>(sector_basis(target).size());
    int nc = static_cast<int>(sector_basis(source).size());
    return select_block(m, rmap, nr, cmap, nc, /*strict_cols=*/true);
}

// Diagonal block on one sector, after validating that m is block-diagonal
// with respect to magnetisation everywhere.
inline SparseMat<Rational> sector_restrict(const SparseMat<Rational>& m, const SectorLabel& label) {
    for (const auto& e : m.entries()) {
        if (__builtin_popcountll(static_cast<std::uint64_t>(e.row)) !=
            __builtin_popcountll(static_cast<std::uint64_t>(e.col)))
            throw std::domain_error("sector_restrict: entry (" + std::to_string(e.row) + "," +
                                    std::to_string(e.col) + ") mixes magnetisation sectors");
    }
    return sector_block(m, label, label);
}

inline SparseMat<Rational> tau_sector_generator(int n, int two_v, int j) {
    return sector_block(tau_generator(n, j), SectorLabel{n, two_v}, SectorLabel{n, two_v});
}

struct CheckReport {
    bool pass = true;
    std::string detail;
};

// Verifies that the sector representation at -v is carried to the transpose
// of the one at +v by the spin-reversal permutation, generator by generator.
inline CheckReport contragredient_check(int n, int two_v) {
    SectorLabel pos{n, std::abs(two_v)}, neg{n, -std::abs(two_v)};
    pos.validate();
    auto bpos = sector_basis(pos);
    auto bneg = sector_basis(neg);
    const int sites = n - 1;
    std::uint64_t mask = (sites == 0) ? 0 : ((1ull << sites) - 1);
    // P: E^{-v} -> E^{v}, column s |-> row (s ^ mask)
    std::vector<int> pos_index(1ll << sites, -1);
    for (int i = 0; i < static_cast<int>(bpos.size()); ++i) pos_index[bpos[i]] = i;
    typename SparseMat<Rational>::Builder pb(static_cast<int>(bpos.size()),
                                             static_cast<int>(bneg.size()));
    for (int c = 0; c < static_cast<int>(bneg.size()); ++c)
        pb.add(pos_index[bneg[c] ^ mask], c, Rational(1));
    SparseMat<Rational> P = pb.build();
    for (int j = 1; j <= n - 1; ++j) {
        auto lhs = mat_mul(P, tau_sector_generator(n, -std::abs(two_v), j));
        auto rhs = mat_mul(tau_sector_generator(n, std::abs(two_v), j).transpose(), P);
        if (lhs != rhs)
            return {false, "contragredience fails at generator " + std::to_string(j) +
                               " (n=" + std::to_string(n) + ", two_v=" + std::to_string(two_v) + ")"};
    }
    return {};
}

}  // namespace tldimer
