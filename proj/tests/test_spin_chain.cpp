#include <catch2/catch_amalgamated.hpp>

#include "tldimer/rational.hpp"
#include "tldimer/spin_chain.hpp"

using namespace tldimer;

namespace {

bool is_zero_vec(const SpinVector& v) { return v.empty(); }

bool single(const SpinVector& v, std::uint64_t s, long c) {
    return v.size() == 1 && v.begin()->first == s && v.begin()->second == c;
}

int column_entry_count(const SparseMat<Rational>& m, int col) {
    int count = 0;
    for (const auto& e : m.entries())
        if (e.col == col) ++count;
    return count;
}

}  // namespace

TEST_CASE("pauli operators on basis states") {
    // sites read left to right; bit j-1 set = site j down
    std::uint64_t uu = parse_arrows("^^");
    CHECK(single(apply_sigma(Sigma::minus, 1, 2, uu), parse_arrows("v^"), 1));
    CHECK(is_zero_vec(apply_sigma(Sigma::minus, 0, 2, uu)));
    CHECK(is_zero_vec(apply_sigma(Sigma::minus, 3, 2, uu)));
    CHECK(is_zero_vec(apply_sigma(Sigma::plus, 2, 2, uu)));
    CHECK(single(apply_sigma(Sigma::x, 2, 2, uu), parse_arrows("^v"), 1));
    CHECK(single(apply_sigma(Sigma::z, 1, 2, parse_arrows("v^")), parse_arrows("v^"), -1));
    CHECK_THROWS_AS(apply_sigma(Sigma::z, 0, 2, uu), std::invalid_argument);
    CHECK_THROWS_AS(apply_sigma(Sigma::minus, 4, 2, uu), std::invalid_argument);
    CHECK(arrow_string(3, parse_arrows("^vv")) == "^vv");
}

TEST_CASE("chain generator acts by neighbour exchange") {
    // n = 3: two spin sites
    auto e1 = tau_generator(3, 1);
    int down_up = static_cast<int>(parse_arrows("v^"));
    int up_down = static_cast<int>(parse_arrows("^v"));
    CHECK(e1.get(up_down, down_up) == 1);
    CHECK(column_entry_count(e1, down_up) == 1);
    CHECK(column_entry_count(e1, up_down) == 0);  // boundary term vanishes
    CHECK_THROWS_AS(tau_generator(5, 5), std::invalid_argument);
    CHECK_THROWS_AS(tau_generator(5, 0), std::invalid_argument);
}

TEST_CASE("defining relations for the chain representation") {
    for (int n = 2; n <= 8; ++n) {
        std::vector<SparseMat<Rational>> gens;
        for (int j = 1; j <= n - 1; ++j) gens.push_back(tau_generator(n, j));
        for (int j = 0; j < n - 1; ++j) {
            CHECK(mat_mul(gens[j], gens[j]).is_zero());
            if (j + 1 < n - 1) {
                CHECK(mat_mul(mat_mul(gens[j], gens[j + 1]), gens[j]) == gens[j]);
                CHECK(mat_mul(mat_mul(gens[j + 1], gens[j]), gens[j + 1]) == gens[j + 1]);
            }
            for (int i = j + 2; i < n - 1; ++i)
                CHECK(mat_mul(gens[i], gens[j]) == mat_mul(gens[j], gens[i]));
        }
    }
}

TEST_CASE("defining relations per sector at larger sizes") {
    for (int n : {13, 14}) {
        for (int two_v : {(n - 1) % 2, n - 3}) {
            std::vector<SparseMat<Rational>> gens;
            for (int j = 1; j <= n - 1; ++j) gens.push_back(tau_sector_generator(n, two_v, j));
            for (int j : {0, (n - 1) / 2, n - 2}) {
                CHECK(mat_mul(gens[j], gens[j]).is_zero());
                if (j + 1 < n - 1)
                    CHECK(mat_mul(mat_mul(gens[j], gens[j + 1]), gens[j]) == gens[j]);
            }
        }
    }
}

TEST_CASE("parity-split twin representation") {
    SECTION("conjugation by the odd-site flip") {
        for (int n = 2; n <= 8; ++n) {
            auto u = odd_site_flip(n);
            CHECK(mat_mul(u, u) == SparseMat<Rational>::identity(1 << (n - 1)));
            for (int j = 1; j <= n - 1; ++j) {
                // U tau_bar(e_j) U^{-1} = tau(e_j)
                auto lhs = mat_mul(mat_mul(u, tau_bar_generator(n, j)), u);
                CHECK(lhs == tau_generator(n, j));
            }
        }
    }
    SECTION("defining relations hold for the twin") {
        for (int n = 2; n <= 8; ++n) {
            std::vector<SparseMat<Rational>> gens;
            for (int j = 1; j <= n - 1; ++j) gens.push_back(tau_bar_generator(n, j));
            for (int j = 0; j < n - 1; ++j) {
                CHECK(mat_mul(gens[j], gens[j]).is_zero());
                if (j + 1 < n - 1) {
                    CHECK(mat_mul(mat_mul(gens[j], gens[j + 1]), gens[j]) == gens[j]);
                    CHECK(mat_mul(mat_mul(gens[j + 1], gens[j]), gens[j + 1]) == gens[j + 1]);
                }
                for (int i = j + 2; i < n - 1; ++i)
                    CHECK(mat_mul(gens[i], gens[j]) == mat_mul(gens[j], gens[i]));
            }
        }
    }
    SECTION("single-site chain is annihilated") {
        CHECK(tau_bar_generator(2, 1).is_zero());
        CHECK(tau_generator(2, 1).is_zero());
    }
}

TEST_CASE("magnetisation sectors") {
    SECTION("quoted dimensions") {
        CHECK(sector_basis({8, 1}).size() == 35);
        CHECK(sector_basis({9, 0}).size() == 70);
    }
    SECTION("extreme sector is the all-up state") {
        for (int n : {3, 6, 9}) {
            auto b = sector_basis({n, n - 1});
            REQUIRE(b.size() == 1);
            CHECK(b[0] == 0);
        }
    }
    SECTION("sector dimensions sum to the space dimension and pair up") {
        for (int n = 2; n <= 10; ++n) {
            std::size_t total = 0;
            for (int two_v = -(n - 1); two_v <= n - 1; two_v += 2) {
                auto b = sector_basis({n, two_v});
                total += b.size();
                CHECK(b.size() == sector_basis({n, -two_v}).size());
                for (std::size_t i = 1; i < b.size(); ++i) CHECK(b[i - 1] < b[i]);
            }
            CHECK(total == (1ull << (n - 1)));
        }
    }
    SECTION("invalid sectors are rejected") {
        CHECK_THROWS_AS(sector_basis({8, 2}), std::invalid_argument);
        CHECK_THROWS_AS(sector_basis({8, 9}), std::invalid_argument);
    }
}

TEST_CASE("generators are block diagonal across sectors") {
    for (int n = 2; n <= 9; ++n) {
        for (int j = 1; j <= n - 1; ++j) {
            auto g = tau_generator(n, j);
            for (int two_v = -(n - 1); two_v <= n - 1; two_v += 2) {
                // sector_restrict validates block-diagonality of the whole matrix
                CHECK_NOTHROW(sector_restrict(g, {n, two_v}));
            }
        }
    }
    // a single lowering operator mixes sectors and is rejected with a witness
    auto bad = detail::spin_operator(3, [](std::uint64_t s, SpinVector& img) {
        if (!(s & 1)) add_term(img, s | 1, Rational(1));
    });
    CHECK_THROWS_AS(sector_restrict(bad, {4, 1}), std::domain_error);
}

TEST_CASE("hamiltonian") {
    SECTION("empty chain") { CHECK(hamiltonian(2).is_zero()); }
    SECTION("equals minus the sum of generators") {
        for (int n = 2; n <= 9; ++n) {
            SparseMat<Rational> sum(1 << (n - 1), 1 << (n - 1));
            for (int j = 1; j <= n - 1; ++j) sum = mat_add(sum, tau_generator(n, j));
            CHECK(hamiltonian(n) == mat_scale(sum, Rational(-1)));
        }
    }
    SECTION("symmetric and commutes with the magnetisation") {
        for (int n = 2; n <= 10; ++n) {
            auto h = hamiltonian(n);
            CHECK(h == h.transpose());
            auto sz = sz_matrix(n);
            CHECK(mat_mul(h, sz) == mat_mul(sz, h));
        }
    }
    SECTION("every generator commutes with the magnetisation") {
        for (int n = 2; n <= 10; ++n) {
            auto sz = sz_matrix(n);
            for (int j = 1; j <= n - 1; ++j) {
                auto g = tau_generator(n, j);
                CHECK(mat_mul(g, sz) == mat_mul(sz, g));
            }
        }
    }
}

TEST_CASE("contragredience between opposite sectors") {
    CHECK(contragredient_check(6, 1).pass);
    CHECK(contragredient_check(7, 0).pass);  // self-paired sector
    CHECK(contragredient_check(4, 3).pass);  // one-dimensional sectors
    for (int n = 2; n <= 8; ++n)
        for (int two_v = (n - 1) % 2; two_v <= n - 1; two_v += 2)
            CHECK(contragredient_check(n, two_v).pass);
}
