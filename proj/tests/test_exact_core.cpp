#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "tldimer/alpha_poly.hpp"
#include "tldimer/rank.hpp"
#include "tldimer/rational.hpp"
#include "tldimer/sparse.hpp"

using namespace tldimer;

namespace {

SparseMat<Rational> from_rows(const std::vector<std::vector<long>>& rows) {
    int r = static_cast<int>(rows.size());
    int c = rows.empty() ? 0 : static_cast<int>(rows[0].size());
    SparseMat<Rational>::Builder b(r, c);
    for (int i = 0; i < r; ++i)
        for (int j = 0; j < c; ++j) b.add(i, j, Rational(rows[i][j]));
    return b.build();
}

SparseMat<Rational> random_int_matrix(std::mt19937& rng, int r, int c) {
    std::uniform_int_distribution<int> val(-4, 4);
    SparseMat<Rational>::Builder b(r, c);
    for (int i = 0; i < r; ++i)
        for (int j = 0; j < c; ++j) b.add(i, j, Rational(val(rng)));
    return b.build();
}

bool in_lowest_terms(const Rational& x) {
    if (sgn(x.get_den()) <= 0) return false;
    Int g;
    mpz_gcd(g.get_mpz_t(), x.get_num().get_mpz_t(), x.get_den().get_mpz_t());
    return g == 1 || sgn(x.get_num()) == 0;
}

}  // namespace

TEST_CASE("rational parsing and canonical form") {
    CHECK(rational_str(parse_rational("6/4")) == "3/2");
    CHECK(rational_str(parse_rational("-6/4")) == "-3/2");
    CHECK(rational_str(parse_rational("5")) == "5");
    CHECK(rational_str(parse_rational("0/7")) == "0");
    CHECK(rational_str(Rational(1) / Rational(2) + Rational(1) / Rational(2)) == "1");
    CHECK_THROWS_AS(parse_rational("1/0"), std::invalid_argument);
    CHECK_THROWS_AS(parse_rational("a"), std::invalid_argument);
    CHECK_THROWS_AS(parse_rational("1/"), std::invalid_argument);
    CHECK_THROWS_AS(parse_rational(""), std::invalid_argument);
    CHECK_THROWS_AS(parse_rational("1/-2"), std::invalid_argument);
}

TEST_CASE("binomials") {
    CHECK(binomial(8, 3) == 56);
    CHECK(binomial(3, 5) == 0);
    CHECK(binomial(5, -1) == 0);
    CHECK(factorial(0) == 1);
    CHECK(factorial(5) == 120);
}

TEST_CASE("alpha polynomials") {
    AlphaPoly one_plus_a = AlphaPoly(1) + AlphaPoly::alpha();
    AlphaPoly one_minus_a = AlphaPoly(1) - AlphaPoly::alpha();
    CHECK(one_plus_a.eval(Rational(1)) == 2);
    CHECK(AlphaPoly().eval(parse_rational("5/3")) == 0);
    AlphaPoly prod = one_plus_a * one_minus_a;
    CHECK(prod == AlphaPoly::from_coeffs({Int(1), Int(0), Int(-1)}));
    CHECK(prod.str() == "1 - a^2");
    CHECK(AlphaPoly().is_zero());
    CHECK(AlphaPoly::from_coeffs({Int(0), Int(0)}).is_zero());
    CHECK((one_plus_a - one_plus_a).is_zero());
    CHECK(one_plus_a.coeff_strings() == std::vector<std::string>{"1", "1"});
}

TEST_CASE("alpha polynomial ring axioms on random triples") {
    std::mt19937 rng(7001);
    std::uniform_int_distribution<int> deg(0, 4), coeff(-5, 5);
    auto random_poly = [&] {
        std::vector<Int> c(deg(rng) + 1);
        for (auto& x : c) x = coeff(rng);
        return AlphaPoly::from_coeffs(std::move(c));
    };
    for (int trial = 0; trial < 60; ++trial) {
        AlphaPoly a = random_poly(), b = random_poly(), c = random_poly();
        CHECK((a * b) * c == a * (b * c));
        CHECK((a + b) + c == a + (b + c));
        CHECK(a * (b + c) == a * b + a * c);
        CHECK(a * b == b * a);
    }
}

TEST_CASE("matrix multiplication") {
    auto id4 = SparseMat<Rational>::identity(4);
    CHECK(mat_mul(id4, id4) == id4);

    auto a = from_rows({{1, 2}, {2, 4}});
    auto v = from_rows({{2}, {-1}});
    CHECK(mat_mul(a, v).is_zero());

    CHECK_THROWS_AS(mat_mul(a, id4), std::invalid_argument);
}

TEST_CASE("rank and kernel basics") {
    auto ki = rank_kernel(SparseMat<Rational>::identity(5));
    CHECK(ki.rank == 5);
    CHECK(ki.kernel_basis.empty());

    auto kz = rank_kernel(SparseMat<Rational>::zero(3, 7));
    CHECK(kz.rank == 0);
    CHECK(kz.kernel_basis.size() == 7);

    auto a = from_rows({{1, 2}, {2, 4}});
    auto ka = rank_kernel(a);
    REQUIRE(ka.rank == 1);
    REQUIRE(ka.kernel_basis.size() == 1);
    // kernel spanned by (2,-1) up to scale
    const auto& k = ka.kernel_basis[0];
    CHECK(k[0] * Rational(-1) == k[1] * Rational(2));
    CHECK(sgn(k[0]) != 0);
    CHECK(ka.pivot_columns == std::vector<int>{0});
}

TEST_CASE("stack_columns") {
    auto id2 = SparseMat<Rational>::identity(2);
    CHECK(stack_columns<Rational>({id2}) == id2);

    auto col1 = from_rows({{1}, {0}});
    auto col2 = from_rows({{0}, {1}});
    CHECK(stack_columns<Rational>({col1, col2}) == id2);

    auto bad = from_rows({{1, 2, 3}});
    CHECK_THROWS_AS(stack_columns<Rational>({id2, bad}), std::invalid_argument);
}

TEST_CASE("rank-nullity and exact kernel on random matrices") {
    std::mt19937 rng(7002);
    std::uniform_int_distribution<int> dim(1, 7);
    for (int trial = 0; trial < 40; ++trial) {
        int r = dim(rng), c = dim(rng);
        auto m = random_int_matrix(rng, r, c);
        auto ki = rank_kernel(m);
        CHECK(ki.rank + static_cast<int>(ki.kernel_basis.size()) == c);
        for (const auto& k : ki.kernel_basis) {
            auto y = m.apply(k);
            for (const auto& v : y) CHECK(sgn(v) == 0);
            for (const auto& v : k) CHECK(in_lowest_terms(v));
        }
        // subadditivity of rank under column stacking
        auto m2 = random_int_matrix(rng, r, dim(rng));
        int rs = rank_of(stack_columns<Rational>({m, m2}));
        CHECK(rs <= ki.rank + rank_of(m2));
        CHECK(rs >= std::max(ki.rank, rank_of(m2)));
    }
}

TEST_CASE("stacked rank equality iff column spaces intersect trivially") {
    // disjoint column spaces: rank adds up
    auto a = from_rows({{1, 0}, {0, 1}, {0, 0}});
    auto b = from_rows({{0}, {0}, {1}});
    CHECK(rank_of(stack_columns<Rational>({a, b})) == rank_of(a) + rank_of(b));
    // overlapping column spaces: strict inequality
    auto c = from_rows({{1}, {1}, {0}});
    CHECK(rank_of(stack_columns<Rational>({a, c})) < rank_of(a) + rank_of(c));
}

TEST_CASE("sparse invariants preserved by arithmetic") {
    std::mt19937 rng(7003);
    for (int trial = 0; trial < 20; ++trial) {
        auto a = random_int_matrix(rng, 5, 4);
        auto b = random_int_matrix(rng, 4, 6);
        auto p = mat_mul(a, b);
        const auto& es = p.entries();
        for (std::size_t i = 0; i < es.size(); ++i) {
            CHECK(sgn(es[i].val) != 0);
            CHECK(es[i].row >= 0);
            CHECK(es[i].row < p.nrows());
            CHECK(es[i].col >= 0);
            CHECK(es[i].col < p.ncols());
            if (i > 0)
                CHECK(std::make_pair(es[i - 1].row, es[i - 1].col) <
                      std::make_pair(es[i].row, es[i].col));
            CHECK(in_lowest_terms(es[i].val));
        }
        CHECK(p.transpose().transpose() == p);
    }
}

TEST_CASE("select_block strictness") {
    auto a = from_rows({{1, 0}, {1, 1}});
    std::vector<int> keep_first{0, -1}, keep_all{0, 1};
    CHECK_THROWS_AS(select_block(a, keep_first, 1, keep_all, 2, true), std::domain_error);
    auto blk = select_block(a, keep_all, 2, keep_first, 1, true);
    CHECK(blk.nrows() == 2);
    CHECK(blk.ncols() == 1);
}
