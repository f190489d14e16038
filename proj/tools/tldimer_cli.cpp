#include <CLI11.hpp>

#include <iostream>
#include <optional>
#include <string>

#include "tldimer/commands.hpp"
#include "tldimer/tldimer.hpp"

using namespace tldimer;

namespace {

struct GlobalOpts {
    bool json = false;
    bool stable = false;
    int max_threads = default_max_threads();
    int bound_n = 0;  // 0 = per-command defaults
};

int emit(const Report& rep, const GlobalOpts& g) {
    if (g.json)
        std::cout << rep.to_json(g.stable).dump(2) << "\n";
    else
        rep.print_text(std::cout);
    return rep.all_pass() ? 0 : 1;
}

int emit_with_certificates(const Report& rep, const std::vector<RankCertificate>& certs,
                           const GlobalOpts& g) {
    if (g.json) {
        auto j = rep.to_json(g.stable);
        j["certificates"] = nlohmann::json::array();
        for (const auto& c : certs) j["certificates"].push_back(certificate_to_json(c));
        std::cout << j.dump(2) << "\n";
    } else {
        rep.print_text(std::cout);
    }
    return rep.all_pass() ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{
        "Exact Temperley-Lieb diagram algebra, dimer transfer matrices and "
        "module-structure rank certificates"};
    app.require_subcommand(1);

    GlobalOpts g;
    app.add_flag("--json", g.json, "emit a JSON report");
    app.add_flag("--stable", g.stable, "strip timing/version fields for golden-file comparison");
    app.add_option("--max-threads", g.max_threads,
                   "parallel workers (default: TLDIMER_MAX_THREADS or hardware)");
    app.add_option("--bound-n", g.bound_n, "override the built-in size guards");

    // dims
    int dims_n = 8;
    auto* dims = app.add_subcommand("dims", "dimension tables of sectors and standard modules");
    dims->fallthrough();
    dims->add_option("--n", dims_n, "number of algebra sites")->required();

    // verify
    auto* verify = app.add_subcommand("verify", "run a verification suite");
    verify->fallthrough();
    std::string suite;
    verify->add_option("suite", suite, "tl-relations | tau | dimer | intertwiners | theorem | all")
        ->required();
    int v_n = 0, v_rows = 4, v_cols = 4;
    verify->add_option("--n", v_n, "number of algebra sites");
    verify->add_option("--rows", v_rows, "lattice rows (dimer suite)");
    verify->add_option("--cols", v_cols, "lattice columns (dimer suite)");
    int v_two_v_raw = INT32_MIN;
    verify->add_option("--two-v", v_two_v_raw, "restrict to one sector (doubled magnetisation)");
    bool v_matrices = false;
    verify->add_flag("--matrices", v_matrices,
                     "embed the checked intertwiner matrices in the JSON report");

    // partition
    auto* partition = app.add_subcommand("partition", "cylinder partition function");
    partition->fallthrough();
    int p_rows = 0, p_cols = 0;
    std::string p_alpha;
    bool p_poly = false, p_oracle = false;
    partition->add_option("--rows", p_rows, "lattice rows M")->required();
    partition->add_option("--cols", p_cols, "lattice columns N")->required();
    partition->add_option("--alpha", p_alpha, "evaluation point, integer or p/q");
    partition->add_flag("--poly", p_poly, "print the polynomial even when --alpha is given");
    partition->add_flag("--oracle", p_oracle, "cross-check against brute-force enumeration");

    // enumerate
    auto* enumerate = app.add_subcommand("enumerate", "list basic objects");
    enumerate->fallthrough();
    std::string what;
    enumerate->add_option("what", what, "connectivities | link-basis | coverings")->required();
    int e_n = 0, e_d = 0, e_rows = 0, e_cols = 0;
    enumerate->add_option("--n", e_n, "number of sites");
    enumerate->add_option("--d", e_d, "defect count (link-basis)");
    enumerate->add_option("--rows", e_rows, "lattice rows (coverings)");
    enumerate->add_option("--cols", e_cols, "lattice columns (coverings)");

    CLI11_PARSE(app, argc, argv);

    const int n_guard = g.bound_n > 0 ? g.bound_n : 12;
    const long site_guard = g.bound_n > 0 ? static_cast<long>(g.bound_n) * g.bound_n : 36;

    try {
        if (*dims) return emit(cmd_dims(dims_n), g);

        if (*verify) {
            std::optional<int> v_two_v;
            if (v_two_v_raw != INT32_MIN) v_two_v = v_two_v_raw;
            const std::vector<Rational> betas{Rational(0), Rational(1), Rational(2),
                                              Rational(-3, 2)};
            if (suite == "tl-relations") {
                return emit(cmd_verify_tl_relations(v_n > 0 ? v_n : 8, betas), g);
            } else if (suite == "tau") {
                return emit(cmd_verify_tau(v_n > 0 ? v_n : 10), g);
            } else if (suite == "dimer") {
                return emit(cmd_verify_dimer(v_rows, v_cols, n_guard, site_guard), g);
            } else if (suite == "intertwiners") {
                nlohmann::json matrices;
                auto rep = cmd_verify_intertwiners(v_n > 0 ? v_n : 8, v_two_v,
                                                   v_matrices ? &matrices : nullptr);
                if (g.json) {
                    auto j = rep.to_json(g.stable);
                    if (v_matrices) j["matrices"] = matrices;
                    std::cout << j.dump(2) << "\n";
                    return rep.all_pass() ? 0 : 1;
                }
                return emit(rep, g);
            } else if (suite == "theorem") {
                std::vector<RankCertificate> certs;
                int bound_odd = g.bound_n > 0 ? g.bound_n : 11;
                int bound_even = g.bound_n > 0 ? g.bound_n : 10;
                auto rep = cmd_verify_theorem(v_n > 0 ? v_n : 9, g.max_threads, &certs, bound_odd,
                                              bound_even);
                return emit_with_certificates(rep, certs, g);
            } else if (suite == "all") {
                Report all;
                all.command = "verify all";
                Stopwatch sw;
                for (Report r :
                     {cmd_verify_tl_relations(6, betas), cmd_verify_tau(v_n > 0 ? v_n : 10),
                      cmd_verify_dimer(v_rows, v_cols, n_guard, site_guard),
                      cmd_verify_intertwiners(v_n > 0 ? v_n : 8, v_two_v)}) {
                    for (auto& c : r.checks) {
                        c.name = r.command.substr(7) + ": " + c.name;
                        all.checks.push_back(std::move(c));
                    }
                }
                for (int nn : {8, 9}) {
                    std::vector<RankCertificate> certs;
                    auto r = cmd_verify_theorem(nn, g.max_threads, &certs);
                    for (auto& c : r.checks) {
                        c.name = "theorem: " + c.name;
                        all.checks.push_back(std::move(c));
                    }
                }
                all.elapsed_ms = sw.ms();
                return emit(all, g);
            }
            std::cerr << "unknown suite '" << suite << "'\n";
            return 2;
        }

        if (*partition) {
            std::optional<Rational> alpha;
            if (!p_alpha.empty()) alpha = parse_rational(p_alpha);
            return emit(cmd_partition(p_rows, p_cols, alpha, p_poly, p_oracle, n_guard, site_guard),
                        g);
        }

        if (*enumerate) {
            Report rep;
            rep.command = "enumerate " + what;
            Stopwatch sw;
            if (what == "connectivities") {
                if (e_n < 1) throw std::domain_error("enumerate connectivities: --n required");
                auto all = enumerate_connectivities(e_n);
                nlohmann::json items = nlohmann::json::array();
                for (const auto& c : all) items.push_back(c.text());
                rep.params["n"] = std::to_string(e_n);
                rep.add_info("count", static_cast<long>(all.size()));
                rep.add_info("items", items);
            } else if (what == "link-basis") {
                if (e_n < 1) throw std::domain_error("enumerate link-basis: --n and --d required");
                auto basis = link_basis(e_n, e_d);
                nlohmann::json items = nlohmann::json::array();
                for (const auto& w : basis) items.push_back(w.pattern());
                rep.params["n"] = std::to_string(e_n);
                rep.params["d"] = std::to_string(e_d);
                rep.add_info("count", static_cast<long>(basis.size()));
                rep.add_info("items", items);
            } else if (what == "coverings") {
                if (e_rows < 1 || e_cols < 1)
                    throw std::domain_error("enumerate coverings: --rows and --cols required");
                auto z = enumerate_coverings({e_rows, e_cols}, site_guard);
                rep.params["rows"] = std::to_string(e_rows);
                rep.params["cols"] = std::to_string(e_cols);
                rep.add_info("Z(alpha)", poly_to_json(z), z.str("alpha"));
                rep.add_info("covering count Z(1)", z.eval(Rational(1)).get_num().get_str());
            } else {
                std::cerr << "unknown enumeration '" << what << "'\n";
                return 2;
            }
            rep.elapsed_ms = sw.ms();
            return emit(rep, g);
        }
    } catch (const std::domain_error& e) {
        std::cerr << "guard: " << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "usage: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
