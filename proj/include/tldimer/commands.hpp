#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "tldimer/dimer.hpp"
#include "tldimer/intertwiners.hpp"
#include "tldimer/link_state.hpp"
#include "tldimer/parallel.hpp"
#include "tldimer/rank.hpp"
#include "tldimer/report.hpp"
#include "tldimer/spin_chain.hpp"
#include "tldimer/structure.hpp"
#include "tldimer/tl_diagram.hpp"

namespace tldimer {

// ---------------------------------------------------------------- dims ----

struct DimsTable {
    int n;
    bool enumerated;                 // counted from explicit bases (n <= 10)
    std::map<int, Int> sector_panel;  // keyed by two_v >= 0
    std::map<int, Int> standard_panel;  // keyed by d
};

inline DimsTable dims_table(int n) {
    if (n < 1 || n > 20) throw std::domain_error("dims: n must be in 1..20");
    DimsTable t{n, n <= 10, {}, {}};
    for (int two_v = (n - 1) % 2; two_v <= n - 1; two_v += 2)
        t.sector_panel[two_v] = t.enumerated
                                    ? Int(static_cast<long>(sector_basis({n, two_v}).size()))
                                    : sector_dim(n, two_v);
    for (int d = n % 2; d <= n; d += 2)
        t.standard_panel[d] =
            t.enumerated ? Int(static_cast<long>(link_basis(n, d).size())) : standard_dim(n, d);
    return t;
}

inline Report cmd_dims(int n) {
    Report rep;
    rep.command = "dims";
    rep.params["n"] = std::to_string(n);
    Stopwatch sw;
    auto t = dims_table(n);
    for (const auto& [two_v, dim] : t.sector_panel)
        rep.add("sector_dim two_v=" + std::to_string(two_v), sector_dim(n, two_v).get_str(),
                dim.get_str());
    for (const auto& [d, dim] : t.standard_panel)
        rep.add("standard_dim d=" + std::to_string(d), standard_dim(n, d).get_str(),
                dim.get_str());
    rep.elapsed_ms = sw.ms();
    return rep;
}

// ------------------------------------------------------- relation checks ----

namespace detail {

// first failing relation of the defining set, or empty string
inline std::string tl_relation_witness(const std::vector<SparseMat<Rational>>& gens,
                                       const Rational& beta) {
    const int m = static_cast<int>(gens.size());
    for (int j = 0; j < m; ++j) {
        if (mat_mul(gens[j], gens[j]) != mat_scale(gens[j], beta))
            return "square relation fails at j=" + std::to_string(j + 1);
        for (int i : {j - 1, j + 1}) {
            if (i < 0 || i >= m) continue;
            if (mat_mul(mat_mul(gens[j], gens[i]), gens[j]) != gens[j])
                return "braid relation fails at j=" + std::to_string(j + 1) +
                       ", i=" + std::to_string(i + 1);
        }
        for (int i = j + 2; i < m; ++i)
            if (mat_mul(gens[i], gens[j]) != mat_mul(gens[j], gens[i]))
                return "commutation fails at (" + std::to_string(i + 1) + "," +
                       std::to_string(j + 1) + ")";
    }
    return {};
}

}  // namespace detail

// Defining relations for the link-state representations, standard and
// composite, at the given fugacities.
inline Report cmd_verify_tl_relations(int max_n, const std::vector<Rational>& betas) {
    Report rep;
    rep.command = "verify tl-relations";
    rep.params["n"] = std::to_string(max_n);
    Stopwatch sw;
    for (const auto& beta : betas) {
        BetaContext ctx{beta};
        for (int n = 2; n <= max_n; ++n) {
            for (int d = n % 2; d <= n; d += 2) {
                for (auto kind : {ModuleKind::Standard, ModuleKind::Composite}) {
                    if (kind == ModuleKind::Composite && d > n - 2) continue;
                    ModuleLabel label{n, d, kind};
                    auto witness = detail::tl_relation_witness(rep_generators(label, ctx), beta);
                    std::string name = std::string(kind == ModuleKind::Standard ? "rho" : "pi") +
                                       "(n=" + std::to_string(n) + ",d=" + std::to_string(d) +
                                       ") beta=" + rational_str(beta);
                    rep.add_flag(name, witness.empty(), witness);
                }
            }
        }
    }
    rep.elapsed_ms = sw.ms();
    return rep;
}

// Defining relations for the dimer representation and its parity twin on the
// full spin space, one check per relation family and generator.
inline Report cmd_verify_tau(int n) {
    Report rep;
    rep.command = "verify tau";
    rep.params["n"] = std::to_string(n);
    Stopwatch sw;
    for (bool twin : {false, true}) {
        std::string prefix = twin ? "tau_bar" : "tau";
        std::vector<SparseMat<Rational>> gens;
        for (int j = 1; j <= n - 1; ++j)
            gens.push_back(twin ? tau_bar_generator(n, j) : tau_generator(n, j));
        for (int j = 0; j < n - 1; ++j) {
            rep.add_flag(prefix + " square j=" + std::to_string(j + 1),
                         mat_mul(gens[j], gens[j]).is_zero());
            bool braid = true;
            for (int i : {j - 1, j + 1}) {
                if (i < 0 || i >= n - 1) continue;
                braid = braid && (mat_mul(mat_mul(gens[j], gens[i]), gens[j]) == gens[j]);
            }
            rep.add_flag(prefix + " braid j=" + std::to_string(j + 1), braid);
            bool comm = true;
            for (int i = 0; i < n - 1; ++i) {
                if (std::abs(i - j) <= 1) continue;
                comm = comm && (mat_mul(gens[i], gens[j]) == mat_mul(gens[j], gens[i]));
            }
            rep.add_flag(prefix + " commute j=" + std::to_string(j + 1), comm);
        }
    }
    rep.elapsed_ms = sw.ms();
    return rep;
}

// Transfer-matrix algebra and the trace/enumeration cross-check.
inline Report cmd_verify_dimer(int rows, int cols, int n_guard = 12, long site_guard = 36) {
    Report rep;
    rep.command = "verify dimer";
    rep.params["rows"] = std::to_string(rows);
    rep.params["cols"] = std::to_string(cols);
    Stopwatch sw;
    LatticeShape shape{rows, cols};
    auto traced = partition_trace_full(shape, n_guard);
    auto sectors = partition_trace_sectors(shape, n_guard);
    auto enumerated = enumerate_coverings(shape, site_guard);
    rep.add("trace equals enumeration", poly_to_json(enumerated), poly_to_json(traced));
    rep.add("sector trace equals full trace", poly_to_json(traced), poly_to_json(sectors));

    const int N = cols;
    auto t = build_T(N).matrix;
    rep.add_flag("T symmetric", t == t.transpose());
    auto v2 = variation_index_doubled(N);
    rep.add_flag("variation index anticommutes with T",
                 mat_add(mat_mul(v2, t), mat_mul(t, v2)).is_zero());
    auto t2 = build_T2(N);
    rep.add_flag("variation index commutes with T^2",
                 mat_sub(mat_mul(v2, t2), mat_mul(t2, v2)).is_zero());
    bool orbits = true;
    for (int two_v = -N; two_v <= N; two_v += 2)
        if (!dimer_sector_basis(N, two_v).empty()) orbits = orbits && orbit_check(N, two_v);
    rep.add_flag("sectors are single orbits", orbits);
    rep.elapsed_ms = sw.ms();
    return rep;
}

// Every intertwiner family against every generator in all admissible
// sectors; optionally collects the matrices themselves for export.
inline Report cmd_verify_intertwiners(int n, std::optional<int> only_two_v = std::nullopt,
                                      nlohmann::json* matrices_out = nullptr) {
    Report rep;
    rep.command = "verify intertwiners";
    rep.params["n"] = std::to_string(n);
    if (only_two_v) rep.params["two_v"] = std::to_string(*only_two_v);
    Stopwatch sw;
    BetaContext beta0{Rational(0)};
    auto tau_gens = [&](int two_v) {
        std::vector<SparseMat<Rational>> out;
        for (int j = 1; j <= n - 1; ++j) out.push_back(tau_sector_generator(n, two_v, j));
        return out;
    };
    auto record = [&](const std::string& key, const IntertwinerMatrix& m) {
        if (!matrices_out) return;
        auto j = matrix_to_json(m.matrix);
        j["source"] = m.source;
        j["target"] = m.target;
        (*matrices_out)[key] = std::move(j);
    };
    for (int two_v = -(n - 1); two_v <= n - 1; two_v += 2) {
        if (only_two_v && two_v != *only_two_v) continue;
        auto J = J_matrix(n, two_v);
        if (J.matrix.nrows() > 0) {
            auto r = check_intertwine(J.matrix, tau_gens(two_v), tau_gens(two_v - 4));
            rep.add_flag("J intertwines two_v=" + std::to_string(two_v), r.pass,
                         r.pass ? "" : "generator " + std::to_string(r.generator));
            record("J two_v=" + std::to_string(two_v), J);
        }
        if (two_v >= -1) {
            int d = two_v + 1;
            ModuleLabel label{n, d, d <= n - 2 ? ModuleKind::Composite : ModuleKind::Standard};
            auto h = h_matrix(n, two_v);
            auto r = check_intertwine(h.matrix, rep_generators(label, beta0), tau_gens(two_v));
            rep.add_flag("h intertwines two_v=" + std::to_string(two_v), r.pass,
                         r.pass ? "" : "generator " + std::to_string(r.generator));
            record("h two_v=" + std::to_string(two_v), h);
            for (int k = 0; k <= h_vk_max_k(n, two_v); ++k) {
                if (two_v + 2 * k < 0) continue;
                rep.add("matrix element k=" + std::to_string(k) +
                            " two_v=" + std::to_string(two_v),
                        factorial(k).get_str(),
                        matrix_element_factorial(n, two_v, k).get_num().get_str());
            }
        }
    }
    if (n % 2 == 0 && !only_two_v) {
        for (int d = 0; d + 2 <= n; d += 2) {
            auto g = g_map(n, d);
            auto r = check_intertwine(g, rep_generators({n, d + 2, ModuleKind::Standard}, beta0),
                                      rep_generators({n, d, ModuleKind::Standard}, beta0));
            rep.add_flag("g intertwines d=" + std::to_string(d), r.pass);
            rep.add("rank of g d=" + std::to_string(d), irr_dim(n, d + 2).get_str(),
                    Int(rank_of(g)).get_str());
            record("g d=" + std::to_string(d),
                   {g, "V(" + std::to_string(n) + "," + std::to_string(d + 2) + ")",
                    "V(" + std::to_string(n) + "," + std::to_string(d) + ")"});
        }
    }
    rep.elapsed_ms = sw.ms();
    return rep;
}

// Rank certificates for the module-structure theorem at one size.
inline Report cmd_verify_theorem(int n, int max_threads, std::vector<RankCertificate>* certs_out,
                                 int bound_odd = 11, int bound_even = 10) {
    Report rep;
    rep.command = "verify theorem";
    rep.params["n"] = std::to_string(n);
    Stopwatch sw;
    if (n % 2 == 1 && n > bound_odd)
        throw std::domain_error("verify theorem: odd n bounded by " + std::to_string(bound_odd));
    if (n % 2 == 0 && n > bound_even)
        throw std::domain_error("verify theorem: even n bounded by " + std::to_string(bound_even));
    std::vector<int> sectors;
    for (int two_v = (n - 1) % 2; two_v <= n - 1; two_v += 2) sectors.push_back(two_v);
    std::function<RankCertificate(int)> run = [&](int idx) {
        int two_v = sectors[idx];
        return n % 2 == 1 ? theorem_certificate_odd_sector(n, two_v)
                          : theorem_certificate_even_sector(n, two_v);
    };
    auto certs = parallel_map<RankCertificate>(static_cast<int>(sectors.size()), run, max_threads);
    for (const auto& cert : certs) {
        std::string witness;
        for (const auto& f : cert.facts)
            if (!f.ok())
                witness += f.name + ": predicted " + f.predicted.get_str() + ", computed " +
                           f.computed.get_str() + "; ";
        rep.add_flag("certificate n=" + std::to_string(cert.n) +
                         " two_v=" + std::to_string(cert.two_v),
                     cert.pass(), witness);
    }
    if (certs_out) *certs_out = std::move(certs);
    rep.elapsed_ms = sw.ms();
    return rep;
}

// Partition function with optional evaluation point and brute-force oracle.
inline Report cmd_partition(int rows, int cols, std::optional<Rational> alpha, bool want_poly,
                            bool oracle, int n_guard = 12, long site_guard = 36) {
    Report rep;
    rep.command = "partition";
    rep.params["rows"] = std::to_string(rows);
    rep.params["cols"] = std::to_string(cols);
    if (alpha) rep.params["alpha"] = rational_str(*alpha);
    Stopwatch sw;
    auto z = partition_trace({rows, cols}, n_guard);
    if (want_poly || !alpha) rep.add_info("Z(alpha)", poly_to_json(z), z.str("alpha"));
    rep.add_info("covering count Z(1)", z.eval(Rational(1)).get_num().get_str());
    if (alpha) rep.add_info("Z(" + rational_str(*alpha) + ")", rational_str(z.eval(*alpha)));
    if (oracle) {
        auto enumerated = enumerate_coverings({rows, cols}, site_guard);
        rep.add("oracle equality", poly_to_json(enumerated), poly_to_json(z));
    }
    rep.elapsed_ms = sw.ms();
    return rep;
}

}  // namespace tldimer
