#include <catch2/catch_amalgamated.hpp>

#include "quiverforge/matrix.hpp"

using namespace quiverforge;

namespace {

ExactMatrix random_matrix(Rng& rng, std::size_t rows, std::size_t cols) {
    ExactMatrix m(rows, cols);
    for (std::size_t i = 0; i < rows; ++i)
        for (std::size_t j = 0; j < cols; ++j) m(i, j) = rng.small_rational(4, 3);
    return m;
}

}  // namespace

TEST_CASE("rref on the identity") {
    auto rr = rref(ExactMatrix::identity(2));
    CHECK(rr.reduced == ExactMatrix::identity(2));
    CHECK(rr.rank == 2);
    CHECK(rr.pivots == std::vector<std::size_t>{0, 1});
}

TEST_CASE("rref on the zero matrix") {
    ExactMatrix z(3, 3);
    auto rr = rref(z);
    CHECK(rr.reduced == z);
    CHECK(rr.rank == 0);
    CHECK(rr.pivots.empty());
}

TEST_CASE("rref detects a rank-one matrix") {
    // [[1,2],[2,4]]: second row is twice the first
    auto m = ExactMatrix::from_rows({{1, 2}, {2, 4}});
    auto rr = rref(m);
    CHECK(rr.rank == 1);
    CHECK(rr.reduced == ExactMatrix::from_rows({{1, 2}, {0, 0}}));
}

TEST_CASE("nullspace of the identity is empty") {
    CHECK(nullspace(ExactMatrix::identity(3)).empty());
}

TEST_CASE("nullspace of a zero map is everything") {
    CHECK(nullspace(ExactMatrix(2, 3)).size() == 3);
}

TEST_CASE("nullspace of a single equation") {
    // x + y = 0 has basis (1, -1) up to scale
    auto basis = nullspace(ExactMatrix::from_rows({{1, 1}}));
    REQUIRE(basis.size() == 1);
    CHECK(basis[0][0] == -basis[0][1]);
    CHECK(basis[0][0] != 0);
}

TEST_CASE("solve on easy systems") {
    Vec rhs{Rational(1), Rational(2)};
    auto x = solve(ExactMatrix::identity(2), rhs);
    REQUIRE(x.has_value());
    CHECK(*x == rhs);

    auto y = solve(ExactMatrix::from_rows({{1, 1}}), Vec{Rational(2)});
    REQUIRE(y.has_value());
    CHECK((*y)[0] + (*y)[1] == 2);

    CHECK(!solve(ExactMatrix::from_rows({{1}, {1}}), Vec{Rational(0), Rational(1)}).has_value());

    CHECK_THROWS_AS(solve(ExactMatrix::identity(2), Vec{Rational(1)}), std::invalid_argument);
}

TEST_CASE("rank equals rank of the transpose on random matrices") {
    Rng rng(17);
    for (int trial = 0; trial < 25; ++trial) {
        auto m = random_matrix(rng, 1 + rng.range(0, 4), 1 + rng.range(0, 4));
        CHECK(rank(m) == rank(m.transpose()));
    }
}

TEST_CASE("matrix times nullspace vector is exactly zero") {
    Rng rng(99);
    for (int trial = 0; trial < 25; ++trial) {
        auto m = random_matrix(rng, 1 + rng.range(0, 3), 1 + rng.range(0, 4));
        for (const auto& v : nullspace(m)) CHECK(is_zero_vec(m.apply(v)));
    }
}

TEST_CASE("rref is idempotent") {
    Rng rng(5);
    for (int trial = 0; trial < 25; ++trial) {
        auto m = random_matrix(rng, 1 + rng.range(0, 3), 1 + rng.range(0, 3));
        auto once = rref(m).reduced;
        CHECK(rref(once).reduced == once);
    }
}

TEST_CASE("row space reduction and membership") {
    RowSpace rs(3);
    CHECK(rs.insert(Vec{Rational(1), Rational(2), Rational(0)}));
    CHECK(rs.insert(Vec{Rational(0), Rational(1), Rational(1)}));
    CHECK(!rs.insert(Vec{Rational(1), Rational(3), Rational(1)}));  // sum of the two
    CHECK(rs.dim() == 2);
    CHECK(rs.contains(Vec{Rational(2), Rational(5), Rational(1)}));
    CHECK(!rs.contains(Vec{Rational(0), Rational(0), Rational(1)}));
}

TEST_CASE("quotient space coordinates") {
    RowSpace rs(3);
    rs.insert(Vec{Rational(1), Rational(1), Rational(0)});
    QuotientSpace q(rs);
    CHECK(q.dim() == 2);
    // class of (1,0,0) equals minus the class of (0,1,0)
    Vec a = q.coords(unit_vec(3, 0));
    Vec b = q.coords(unit_vec(3, 1));
    CHECK(a == scaled(b, Rational(-1)));
    CHECK(is_zero_vec(q.coords(Vec{Rational(1), Rational(1), Rational(0)})));
}

TEST_CASE("coords_in_span recovers coefficients") {
    std::vector<Vec> span{{Rational(1), Rational(0), Rational(1)},
                          {Rational(0), Rational(1), Rational(1)}};
    auto c = coords_in_span(span, Vec{Rational(2), Rational(3), Rational(5)});
    REQUIRE(c.has_value());
    CHECK((*c)[0] == 2);
    CHECK((*c)[1] == 3);
    CHECK(!coords_in_span(span, Vec{Rational(1), Rational(0), Rational(0)}).has_value());
}
