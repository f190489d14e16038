#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "tldimer/rational.hpp"
#include "tldimer/sparse.hpp"
#include "tldimer/tl_diagram.hpp"

namespace tldimer {

// A link state: n nodes on a line, some joined pairwise by non-crossing
// half-arcs, the rest carrying vertical defects that no arc may overarch.
// The marker on the rightmost defect ("wavy") distinguishes upper-layer
// states of composite modules. Nodes are 0-based internally.
class LinkState {
public:
    LinkState(int n, std::vector<int> partner, int wavy = -1)
        : n_(n), partner_(std::move(partner)), wavy_(wavy) {
        validate();
    }

    static LinkState all_defects(int n) {
        std::vector<int> p(n);
        for (int i = 0; i < n; ++i) p[i] = i;
        return LinkState(n, std::move(p));
    }

    // '(' opens an arc, ')' closes one, '|' is a defect, '~' the wavy defect
    static LinkState from_pattern(const std::string& s) {
        int n = static_cast<int>(s.size());
        std::vector<int> p(n, -1);
        std::vector<int> stack;
        int wavy = -1;
        for (int i = 0; i < n; ++i) {
            switch (s[i]) {
                case '(': stack.push_back(i); break;
                case ')':
                    if (stack.empty()) throw std::invalid_argument("unbalanced ')' in '" + s + "'");
                    p[i] = stack.back();
                    p[stack.back()] = i;
                    stack.pop_back();
                    break;
                case '~': wavy = i; [[fallthrough]];
                case '|': p[i] = i; break;
                default: throw std::invalid_argument("bad link-state char in '" + s + "'");
            }
        }
        if (!stack.empty()) throw std::invalid_argument("unclosed '(' in '" + s + "'");
        return LinkState(n, std::move(p), wavy);
    }

    std::string pattern() const {
        std::string s(n_, '?');
        for (int i = 0; i < n_; ++i) {
            if (partner_[i] == i)
                s[i] = (i == wavy_) ? '~' : '|';
            else
                s[i] = (partner_[i] > i) ? '(' : ')';
        }
        return s;
    }

    int n() const { return n_; }
    const std::vector<int>& partner() const { return partner_; }
    int partner(int i) const { return partner_[i]; }
    bool is_defect(int i) const { return partner_[i] == i; }
    bool has_wavy() const { return wavy_ >= 0; }
    int wavy() const { return wavy_; }

    int defect_count() const {
        int d = 0;
        for (int i = 0; i < n_; ++i) d += (partner_[i] == i);
        return d;
    }
    std::vector<int> defect_positions() const {
        std::vector<int> out;
        for (int i = 0; i < n_; ++i)
            if (partner_[i] == i) out.push_back(i);
        return out;
    }
    // (left, right) endpoints, ascending in the left endpoint
    std::vector<std::pair<int, int>> arcs() const {
        std::vector<std::pair<int, int>> out;
        for (int i = 0; i < n_; ++i)
            if (partner_[i] > i) out.emplace_back(i, partner_[i]);
        return out;
    }

    LinkState with_wavy_on_rightmost() const {
        int w = -1;
        for (int i = n_ - 1; i >= 0; --i)
            if (partner_[i] == i) {
                w = i;
                break;
            }
        if (w < 0) throw std::logic_error("with_wavy_on_rightmost: state has no defect");
        return LinkState(n_, partner_, w);
    }
    LinkState without_wavy() const { return LinkState(n_, partner_, -1); }

    friend bool operator==(const LinkState& a, const LinkState& b) {
        return a.n_ == b.n_ && a.partner_ == b.partner_ && a.wavy_ == b.wavy_;
    }
    friend bool operator<(const LinkState& a, const LinkState& b) {
        if (a.n_ != b.n_) return a.n_ < b.n_;
        if (a.partner_ != b.partner_) return a.partner_ < b.partner_;
        return a.wavy_ < b.wavy_;
    }

private:
    void validate() const {
        if (static_cast<int>(partner_.size()) != n_ || n_ < 1)
            throw std::invalid_argument("bad link state size");
        for (int i = 0; i < n_; ++i) {
            if (partner_[i] < 0 || partner_[i] >= n_ || partner_[partner_[i]] != i)
                throw std::invalid_argument("link-state pairing is not an involution");
        }
        for (int i = 0; i < n_; ++i) {
            int j = partner_[i];
            if (j <= i) continue;
            for (int k = i + 1; k < j; ++k)
                if (partner_[k] <= i || partner_[k] > j || partner_[k] == k)
                    throw std::invalid_argument(
                        "link state has a crossing or a defect under an arc");
        }
        if (wavy_ >= 0) {
            if (wavy_ >= n_ || partner_[wavy_] != wavy_)
                throw std::invalid_argument("wavy marker is not on a defect");
            for (int k = wavy_ + 1; k < n_; ++k)
                if (partner_[k] == k)
                    throw std::invalid_argument("wavy marker is not on the rightmost defect");
        }
    }

    int n_;
    std::vector<int> partner_;
    int wavy_;
};

using LinkVector = std::map<LinkState, Rational>;

inline void add_term(LinkVector& v, const LinkState& s, const Rational& c) {
    if (sgn(c) == 0) return;
    auto [it, inserted] = v.try_emplace(s, c);
    if (!inserted) {
        it->second += c;
        if (sgn(it->second) == 0) v.erase(it);
    }
}

// B_n^d in lexicographic partner-array order.
inline std::vector<LinkState> link_basis(int n, int d) {
    if (n < 1 || d < 0 || d > n || (n - d) % 2 != 0)
        throw std::invalid_argument("link_basis: invalid (n,d)=(" + std::to_string(n) + "," +
                                    std::to_string(d) + "): need 0 <= d <= n, n-d even");
    std::vector<LinkState> out;
    std::string s(n, '?');
    // defects are only legal at depth 0, so scanning left to right with a
    // depth counter enumerates exactly the valid patterns
    auto rec = [&](auto&& self, int pos, int depth, int defects_left) -> void {
        if (pos == n) {
            if (depth == 0 && defects_left == 0) out.push_back(LinkState::from_pattern(s));
            return;
        }
        int remaining = n - pos;
        if (depth + defects_left > remaining) return;
        s[pos] = '(';
        self(self, pos + 1, depth + 1, defects_left);
        if (depth > 0) {
            s[pos] = ')';
            self(self, pos + 1, depth - 1, defects_left);
        }
        if (depth == 0 && defects_left > 0) {
            s[pos] = '|';
            self(self, pos + 1, depth, defects_left - 1);
        }
    };
    rec(rec, 0, 0, d);
    std::sort(out.begin(), out.end());
    return out;
}

namespace detail {

// Outcome of gluing a link state above a connectivity and reading the bottom.
struct GlueOutcome {
    std::vector<int> partner;        // resulting bottom pairing (0-based)
    int loops = 0;                   // closed loops removed
    std::vector<std::pair<int, int>> annihilated;  // pairs of w-defect nodes joined by a strand
    bool wavy_annihilated = false;
};

inline GlueOutcome glue(const Connectivity& c, const LinkState& w) {
    if (c.n() != w.n())
        throw std::invalid_argument("action: size mismatch " + std::to_string(c.n()) + " vs " +
                                    std::to_string(w.n()));
    const int n = c.n();
    GlueOutcome out;
    out.partner.assign(n, -1);
    std::vector<bool> visited(n, false);  // w nodes passed through

    // from c's boundary label, walk the strand upward through w until it
    // exits at a bottom node or stops on a w defect
    auto advance = [&](int label) {
        while (label >= n) {
            int t = 2 * n - label;  // w node, 1-based
            int t0 = t - 1;
            visited[t0] = true;
            if (w.is_defect(t0)) return ~t0;  // encodes "stopped at defect t0"
            int t1 = w.partner(t0);
            visited[t1] = true;
            label = c.partner(Connectivity::top_label(n, t1 + 1));
        }
        return label;  // bottom label
    };

    for (int i = 0; i < n; ++i) {
        if (out.partner[i] != -1) continue;
        int res = advance(c.partner(Connectivity::bottom_label(n, i + 1)));
        if (res >= 0) {
            out.partner[i] = res;
            out.partner[res] = i;
        } else {
            out.partner[i] = i;  // defect survives at bottom node i
        }
    }
    for (int t0 = 0; t0 < n; ++t0) {
        if (!w.is_defect(t0) || visited[t0]) continue;
        visited[t0] = true;
        int res = advance(c.partner(Connectivity::top_label(n, t0 + 1)));
        if (res >= 0) throw std::logic_error("defect strand reached an already-paired bottom");
        int t1 = ~res;
        out.annihilated.emplace_back(t0, t1);
        if (w.has_wavy() && (t0 == w.wavy() || t1 == w.wavy())) out.wavy_annihilated = true;
    }
    for (int t0 = 0; t0 < n; ++t0) {
        if (visited[t0]) continue;
        ++out.loops;
        int cur = t0;
        do {
            visited[cur] = true;
            int t1 = w.partner(cur);
            visited[t1] = true;
            int label = c.partner(Connectivity::top_label(n, t1 + 1));
            if (label < n) throw std::logic_error("loop walk left the interior");
            cur = 2 * n - label - 1;
        } while (cur != t0);
    }
    return out;
}

inline Rational loop_weight(const Rational& beta, int loops) {
    if (loops == 0) return Rational(1);
    return pow_rational(beta, static_cast<unsigned long>(loops));
}

}  // namespace detail

// Standard action of a connectivity on a defect-marked link state: closed
// loops contribute a factor beta each; any decrease of the defect number
// gives zero.
inline LinkVector standard_act(const Connectivity& c, const LinkState& w, const BetaContext& ctx) {
    if (w.has_wavy())
        throw std::invalid_argument("standard_act: state carries a wavy marker");
    LinkVector out;
    auto g = detail::glue(c, w);
    if (!g.annihilated.empty()) return out;
    Rational coeff = detail::loop_weight(ctx.beta, g.loops);
    add_term(out, LinkState(w.n(), std::move(g.partner)), coeff);
    return out;
}

// Composite-module action. Lower-layer states (no wavy marker) follow the
// standard action. For an upper-layer state the defect number may drop by
// exactly two provided the wavy defect is one of the annihilated pair, in
// which case the image lands in the lower layer; a surviving image keeps the
// wavy marker on its rightmost defect.
inline LinkVector composite_act(const Connectivity& c, const LinkState& w, const BetaContext& ctx) {
    if (!w.has_wavy()) return standard_act(c, w, ctx);
    LinkVector out;
    auto g = detail::glue(c, w);
    Rational coeff = detail::loop_weight(ctx.beta, g.loops);
    if (g.annihilated.empty()) {
        LinkState img(w.n(), std::move(g.partner));
        add_term(out, img.with_wavy_on_rightmost(), coeff);
    } else if (g.annihilated.size() == 1 && g.wavy_annihilated) {
        add_term(out, LinkState(w.n(), std::move(g.partner)), coeff);
    }
    return out;
}

enum class ModuleKind { Standard, Composite };

struct ModuleLabel {
    int n;
    int d;
    ModuleKind kind;

    void validate() const {
        if (n < 1 || d < 0 || d > n || (n - d) % 2 != 0)
            throw std::invalid_argument("module label: invalid (n,d)");
        if (kind == ModuleKind::Composite && d > n - 2)
            throw std::invalid_argument("module label: composite requires d <= n-2");
    }
};

// Basis of the module: B_n^d for standard; B_n^d then the wavy-marked
// B_n^{d+2} for composite.
inline std::vector<LinkState> module_basis(const ModuleLabel& label) {
    label.validate();
    std::vector<LinkState> out = link_basis(label.n, label.d);
    if (label.kind == ModuleKind::Composite) {
        for (const auto& w : link_basis(label.n, label.d + 2))
            out.push_back(w.with_wavy_on_rightmost());
    }
    return out;
}

// Matrix of e_j on the module basis.
inline SparseMat<Rational> rep_matrix(const ModuleLabel& label, int j, const BetaContext& ctx) {
    auto basis = module_basis(label);
    std::map<LinkState, int> index;
    for (int i = 0; i < static_cast<int>(basis.size()); ++i) index.emplace(basis[i], i);
    Connectivity e = Connectivity::generator(label.n, j);
    typename SparseMat<Rational>::Builder b(static_cast<int>(basis.size()),
                                            static_cast<int>(basis.size()));
    for (int col = 0; col < static_cast<int>(basis.size()); ++col) {
        LinkVector img = (label.kind == ModuleKind::Standard) ? standard_act(e, basis[col], ctx)
                                                              : composite_act(e, basis[col], ctx);
        for (const auto& [s, v] : img) {
            auto it = index.find(s);
            if (it == index.end()) throw std::logic_error("action left the module basis");
            b.add(it->second, col, v);
        }
    }
    return b.build();
}

inline std::vector<SparseMat<Rational>> rep_generators(const ModuleLabel& label,
                                                       const BetaContext& ctx) {
    std::vector<SparseMat<Rational>> out;
    for (int j = 1; j <= label.n - 1; ++j) out.push_back(rep_matrix(label, j, ctx));
    return out;
}

// Alternating sum over the states with a single arc at (2k+1, 2k+2) and
// defects elsewhere; every generator annihilates it under the standard
// action at beta = 0.
inline LinkVector y_state(int n) {
    if (n < 2 || n % 2 != 0) throw std::invalid_argument("y_state: n must be even and >= 2");
    LinkVector out;
    for (int k = 0; 2 * k + 1 < n; ++k) {
        std::vector<int> p(n);
        for (int i = 0; i < n; ++i) p[i] = i;
        p[2 * k] = 2 * k + 1;
        p[2 * k + 1] = 2 * k;
        add_term(out, LinkState(n, std::move(p)), Rational(k % 2 == 0 ? 1 : -1));
    }
    return out;
}

// Matrix of the arc-insertion intertwiner from span B_n^{d+2} to span B_n^d
// (beta = 0, n even): each column is the alternating sum of the states
// obtained by capping the (2k+1)-th and (2k+2)-th defects with an arc.
inline SparseMat<Rational> g_map(int n, int d) {
    if (n < 2 || n % 2 != 0) throw std::invalid_argument("g_map: n must be even");
    if (d < 0 || d > n - 2 || d % 2 != 0)
        throw std::invalid_argument("g_map: d must be even with 0 <= d <= n-2");
    auto src = link_basis(n, d + 2);
    auto dst = link_basis(n, d);
    std::map<LinkState, int> index;
    for (int i = 0; i < static_cast<int>(dst.size()); ++i) index.emplace(dst[i], i);
    typename SparseMat<Rational>::Builder b(static_cast<int>(dst.size()),
                                            static_cast<int>(src.size()));
    for (int col = 0; col < static_cast<int>(src.size()); ++col) {
        auto defects = src[col].defect_positions();  // d+2 of them
        for (int k = 0; 2 * k + 1 < static_cast<int>(defects.size()); ++k) {
            std::vector<int> p = src[col].partner();
            p[defects[2 * k]] = defects[2 * k + 1];
            p[defects[2 * k + 1]] = defects[2 * k];
            LinkState capped(n, std::move(p));
            b.add(index.at(capped), col, Rational(k % 2 == 0 ? 1 : -1));
        }
    }
    return b.build();
}

// Bijection between the composite basis of W_n^{d-2} and the basis of
// V_{n+1}^{d-1}: lower-layer states gain a defect at the extra node, wavy
// defects become arcs ending there. Index i of the composite basis maps to
// entry [i] of the result.
inline std::vector<int> restriction_iso(int n, int d) {
    if (n < 2 || n % 2 != 0 || d < 2 || d > n || d % 2 != 0)
        throw std::invalid_argument("restriction_iso: need n even, d even, 2 <= d <= n");
    auto wbasis = module_basis({n, d - 2, ModuleKind::Composite});
    auto vbasis = link_basis(n + 1, d - 1);
    std::map<LinkState, int> index;
    for (int i = 0; i < static_cast<int>(vbasis.size()); ++i) index.emplace(vbasis[i], i);
    std::vector<int> out;
    out.reserve(wbasis.size());
    for (const auto& w : wbasis) {
        std::vector<int> p = w.partner();
        p.push_back(n);
        if (w.has_wavy()) {
            p[w.wavy()] = n;
            p[n] = w.wavy();
        }
        out.push_back(index.at(LinkState(n + 1, std::move(p))));
    }
    return out;
}

inline SparseMat<Rational> restriction_iso_matrix(int n, int d) {
    auto sigma = restriction_iso(n, d);
    int rows = static_cast<int>(link_basis(n + 1, d - 1).size());
    typename SparseMat<Rational>::Builder b(rows, static_cast<int>(sigma.size()));
    for (int i = 0; i < static_cast<int>(sigma.size()); ++i) b.add(sigma[i], i, Rational(1));
    return b.build();
}

}  // namespace tldimer
