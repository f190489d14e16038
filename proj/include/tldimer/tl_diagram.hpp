#pragma once

#include <algorithm>
#include <stdexcept>
#include <string>
#include <vector>

#include "tldimer/rational.hpp"

namespace tldimer {

// A connectivity: non-crossing pairwise connection of the 2n boundary nodes
// of a rectangle, n on the bottom edge and n on the top.
//
// Boundary labels run counterclockwise: bottom nodes 1..n left to right get
// labels 0..n-1, then top nodes n..1 right to left get labels n..2n-1 (so the
// top node t has label 2n-t). In this circular order, planarity is exactly
// the non-crossing chord condition.
class Connectivity {
public:
    static int bottom_label(int n, int i) { return i - 1; }          // i in 1..n
    static int top_label(int n, int t) { return 2 * n - t; }         // t in 1..n

    static Connectivity identity(int n) {
        require_n(n);
        std::vector<int> p(2 * n);
        for (int i = 1; i <= n; ++i) {
            p[bottom_label(n, i)] = top_label(n, i);
            p[top_label(n, i)] = bottom_label(n, i);
        }
        return Connectivity(n, std::move(p));
    }

    // e_j: bottom j -- bottom j+1, top j -- top j+1, verticals elsewhere
    static Connectivity generator(int n, int j) {
        require_n(n);
        if (j < 1 || j > n - 1)
            throw std::invalid_argument("generator index " + std::to_string(j) +
                                        " out of range 1.." + std::to_string(n - 1));
        std::vector<int> p(2 * n);
        for (int i = 1; i <= n; ++i) {
            p[bottom_label(n, i)] = top_label(n, i);
            p[top_label(n, i)] = bottom_label(n, i);
        }
        p[bottom_label(n, j)] = bottom_label(n, j + 1);
        p[bottom_label(n, j + 1)] = bottom_label(n, j);
        p[top_label(n, j)] = top_label(n, j + 1);
        p[top_label(n, j + 1)] = top_label(n, j);
        return Connectivity(n, std::move(p));
    }

    static Connectivity from_pairing(int n, std::vector<int> pairing) {
        Connectivity c(n, std::move(pairing));
        c.validate();
        return c;
    }

    int n() const { return n_; }
    int partner(int label) const { return pair_[label]; }
    const std::vector<int>& pairing() const { return pair_; }

    bool is_planar() const {
        const int m = 2 * n_;
        for (int a = 0; a < m; ++a) {
            int b = pair_[a];
            if (b <= a) continue;
            for (int c = a + 1; c < b; ++c) {
                int d = pair_[c];
                if (d < a || d > b) return false;  // chord (c,d) crosses (a,b)
            }
        }
        return true;
    }

    void validate() const {
        if (static_cast<int>(pair_.size()) != 2 * n_)
            throw std::invalid_argument("pairing size != 2n");
        for (int a = 0; a < 2 * n_; ++a) {
            if (pair_[a] < 0 || pair_[a] >= 2 * n_ || pair_[a] == a || pair_[pair_[a]] != a)
                throw std::invalid_argument("pairing is not a fixed-point-free involution");
        }
        if (!is_planar()) throw std::invalid_argument("pairing is not planar");
    }

    friend bool operator==(const Connectivity& a, const Connectivity& b) {
        return a.n_ == b.n_ && a.pair_ == b.pair_;
    }
    friend bool operator!=(const Connectivity& a, const Connectivity& b) { return !(a == b); }
    friend bool operator<(const Connectivity& a, const Connectivity& b) {
        if (a.n_ != b.n_) return a.n_ < b.n_;
        return a.pair_ < b.pair_;
    }

    // "n=3; (1,t1)(2,t2)(3,t3)" -- sorted pair list, top nodes prefixed t
    std::string text() const {
        auto key = [this](int label) {  // bottoms before tops, nodes ascending
            return label < n_ ? std::make_pair(0, label + 1)
                              : std::make_pair(1, 2 * n_ - label);
        };
        auto name = [this](int label) {
            if (label < n_) return std::to_string(label + 1);
            return "t" + std::to_string(2 * n_ - label);
        };
        std::vector<std::pair<int, int>> pairs;
        for (int a = 0; a < 2 * n_; ++a) {
            int b = pair_[a];
            if (b < a) continue;
            if (key(a) < key(b))
                pairs.emplace_back(a, b);
            else
                pairs.emplace_back(b, a);
        }
        std::sort(pairs.begin(), pairs.end(),
                  [&](const auto& x, const auto& y) { return key(x.first) < key(y.first); });
        std::string out = "n=" + std::to_string(n_) + ";";
        for (auto [a, b] : pairs) out += " (" + name(a) + "," + name(b) + ")";
        return out;
    }

    // Inverse of text(); accepts bottom nodes as plain numbers, top as t<k>.
    static Connectivity from_text(const std::string& s) {
        auto bad = [&] { throw std::invalid_argument("bad connectivity text: '" + s + "'"); };
        auto pos = s.find("n=");
        if (pos == std::string::npos) bad();
        std::size_t i = pos + 2, start = i;
        while (i < s.size() && isdigit(static_cast<unsigned char>(s[i]))) ++i;
        if (i == start) bad();
        int n = std::stoi(s.substr(start, i - start));
        std::vector<int> p(2 * n, -1);
        auto read_node = [&](std::size_t& k) {
            bool top = false;
            if (s[k] == 't') {
                top = true;
                ++k;
            }
            std::size_t st = k;
            while (k < s.size() && isdigit(static_cast<unsigned char>(s[k]))) ++k;
            if (k == st) bad();
            int node = std::stoi(s.substr(st, k - st));
            if (node < 1 || node > n) bad();
            return top ? top_label(n, node) : bottom_label(n, node);
        };
        while ((i = s.find('(', i)) != std::string::npos) {
            ++i;
            int a = read_node(i);
            if (i >= s.size() || s[i] != ',') bad();
            ++i;
            int b = read_node(i);
            if (i >= s.size() || s[i] != ')') bad();
            ++i;
            if (p[a] != -1 || p[b] != -1 || a == b) bad();
            p[a] = b;
            p[b] = a;
        }
        return from_pairing(n, std::move(p));
    }

private:
    Connectivity(int n, std::vector<int> p) : n_(n), pair_(std::move(p)) {}
    static void require_n(int n) {
        if (n < 1) throw std::invalid_argument("n must be >= 1");
    }
    int n_;
    std::vector<int> pair_;
};

struct ComposeResult {
    Connectivity conn;
    int loops;
};

// Product c1*c2: c1 drawn under c2, the top edge of c1 glued to the bottom
// edge of c2. Returns the resulting connectivity and the number of closed
// loops removed.
inline ComposeResult compose(const Connectivity& c1, const Connectivity& c2) {
    if (c1.n() != c2.n())
        throw std::invalid_argument("compose: size mismatch " + std::to_string(c1.n()) + " vs " +
                                    std::to_string(c2.n()));
    const int n = c1.n();
    // glue point t in 1..n joins c1's top node t to c2's bottom node t
    std::vector<bool> seen(n + 1, false);

    // Walks from an external slot to the other end of its strand.
    // diagram 1 external labels: < n (bottom); diagram 2 external: >= n (top).
    auto trace = [&](int diagram, int label) {
        int d = diagram, l = label;
        while (true) {
            int q = (d == 1) ? c1.partner(l) : c2.partner(l);
            if (d == 1 && q < n) return std::pair<int, int>(1, q);
            if (d == 2 && q >= n) return std::pair<int, int>(2, q);
            int t = (d == 1) ? 2 * n - q : q + 1;  // glue point
            seen[t] = true;
            if (d == 1) {
                d = 2;
                l = Connectivity::bottom_label(n, t);
            } else {
                d = 1;
                l = Connectivity::top_label(n, t);
            }
        }
    };

    // External labels keep their meaning in the result: c1 bottoms are the
    // result's bottoms, c2 tops are the result's tops.
    std::vector<int> p(2 * n, -1);
    for (int i = 1; i <= n; ++i) {
        int a = Connectivity::bottom_label(n, i);
        if (p[a] != -1) continue;
        auto [d, q] = trace(1, a);
        (void)d;
        p[a] = q;
        p[q] = a;
    }
    for (int t = 1; t <= n; ++t) {
        int a = Connectivity::top_label(n, t);
        if (p[a] != -1) continue;
        auto [d, q] = trace(2, a);
        (void)d;
        p[a] = q;
        p[q] = a;
    }

    int loops = 0;
    for (int t0 = 1; t0 <= n; ++t0) {
        if (seen[t0]) continue;
        ++loops;
        int t = t0;
        do {
            seen[t] = true;
            int q1 = c1.partner(Connectivity::top_label(n, t));  // interior: q1 >= n
            int t1 = 2 * n - q1;
            seen[t1] = true;
            int q2 = c2.partner(Connectivity::bottom_label(n, t1));  // interior: q2 < n
            t = q2 + 1;
        } while (t != t0);
    }
    return {Connectivity::from_pairing(n, std::move(p)), loops};
}

// Single-term tangle: coefficient 0 encodes the zero element.
struct ScaledConnectivity {
    Connectivity conn;
    Rational coeff;
    bool is_zero() const { return sgn(coeff) == 0; }
};

struct BetaContext {
    Rational beta;
};

// Left-to-right product of generators e_{w[0]} e_{w[1]} ... with coefficient
// beta^(total closed loops). The empty word is the identity.
inline ScaledConnectivity eval_word(int n, const std::vector<int>& word, const BetaContext& ctx) {
    Connectivity acc = Connectivity::identity(n);
    long loops = 0;
    const bool beta_zero = (sgn(ctx.beta) == 0);
    for (int j : word) {
        auto [next, l] = compose(acc, Connectivity::generator(n, j));
        loops += l;
        acc = next;
        if (beta_zero && loops > 0) return {Connectivity::identity(n), Rational(0)};
    }
    return {acc, pow_rational(ctx.beta, static_cast<unsigned long>(loops))};
}

// All non-crossing perfect matchings of the 2n boundary nodes, in
// lexicographic pairing order. Guarded: the count is Catalan(n).
inline std::vector<Connectivity> enumerate_connectivities(int n) {
    if (n < 1) throw std::invalid_argument("n must be >= 1");
    if (n > 10)
        throw std::domain_error("enumerate_connectivities: n > 10 exceeds the enumeration limit");
    std::vector<Connectivity> out;
    std::vector<int> pairing(2 * n, -1);
    std::vector<int> pts(2 * n);
    for (int i = 0; i < 2 * n; ++i) pts[i] = i;

    // Pair the first point of a region with a point at odd offset; the chord
    // splits the region into two independent sub-regions.
    auto rec = [&](auto&& self, std::vector<std::vector<int>> regions) -> void {
        while (!regions.empty() && regions.back().empty()) regions.pop_back();
        if (regions.empty()) {
            out.push_back(Connectivity::from_pairing(n, pairing));
            return;
        }
        std::vector<int> avail = std::move(regions.back());
        regions.pop_back();
        int a = avail[0];
        for (std::size_t k = 1; k < avail.size(); k += 2) {
            int b = avail[k];
            pairing[a] = b;
            pairing[b] = a;
            auto regs = regions;
            regs.emplace_back(avail.begin() + 1, avail.begin() + k);
            regs.emplace_back(avail.begin() + k + 1, avail.end());
            self(self, std::move(regs));
        }
    };
    rec(rec, {pts});
    std::sort(out.begin(), out.end());
    return out;
}

}  // namespace tldimer
