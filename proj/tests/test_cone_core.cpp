#include <doctest.h>

#include <random>

#include "coposolve/cone_core.hpp"
#include "coposolve/p_copositivity.hpp"
#include "oracles.hpp"

using namespace coposolve;

TEST_SUITE("cone_core") {

TEST_CASE("symmetric matrix construction") {
    const SymMatrix B(2, {1.0, 0.5 + 1e-10, 0.5, 2.0});
    CHECK(B(0, 1) == B(1, 0));
    CHECK(B.max_asymmetry() == doctest::Approx(1e-10).epsilon(1e-3));
    CHECK_THROWS_AS(SymMatrix(2, {1.0, 0.5, 0.6, 1.0}), Error);
    CHECK_THROWS_AS(SymMatrix(0, {}), Error);
    CHECK_THROWS_AS(SymMatrix(2, {1.0, 2.0, 3.0}), Error);
    CHECK(SymMatrix::identity(3)(2, 2) == 1.0);
}

TEST_CASE("cone vectors") {
    CHECK_THROWS_AS(ConeVector({1.0, -0.1}), Error);
    const ConeVector z{0.0, 0.0};
    CHECK_FALSE(z.nontrivial());
    const ConeVector c{0.0, 2.0};
    CHECK(c.nontrivial());
    CHECK_FALSE(c.strictly_positive());
    CHECK(c.on_simplex() == ConeVector{0.0, 1.0});
}

TEST_CASE("quadratic form values") {
    CHECK(quadratic_form(SymMatrix::identity(2), std::vector<double>{1, 1}).value == 2.0);
    CHECK(quadratic_form(SymMatrix{{1, -2}, {-2, 1}}, std::vector<double>{1, 1}).value == -2.0);
    CHECK(quadratic_form(b_epsilon(1.0), std::vector<double>{1, 1, 1}).value == 5.0);
    CHECK_THROWS_AS(quadratic_form(SymMatrix::identity(2), std::vector<double>{1, 1, 1}), Error);
}

TEST_CASE("p-form values") {
    const ConeVector one2{1, 1};
    CHECK(p_form(SymMatrix::identity(2), ConeVector{1, 1}, one2, 4).value == 2.0);
    CHECK(p_form(SymMatrix::identity(2), ConeVector{2, 0}, one2, 4).value == 8.0);
    const SymMatrix B0{{1, -1, -1}, {-1, 1, 1}, {-1, 1, 1}};
    CHECK(p_form(B0, ConeVector{3, 2, 2}, ConeVector{1, 1, 1}, 4).value == doctest::Approx(-1.0).epsilon(1e-14));
    CHECK_THROWS_AS(p_form(SymMatrix::identity(2), one2, one2, 2.0), Error);
    CHECK_THROWS_AS(p_form(SymMatrix::identity(2), ConeVector{1, 1, 1}, one2, 4), Error);
}

TEST_CASE("principal submatrix and negative parts") {
    const std::vector<std::size_t> s23{1, 2};
    CHECK(principal_submatrix(b_epsilon(0.1), s23) == SymMatrix{{1, 1}, {1, 1}});
    const std::vector<std::size_t> all{0, 1, 2};
    CHECK(principal_submatrix(b_epsilon(0.1), all) == b_epsilon(0.1));
    const std::vector<std::size_t> s2{1};
    CHECK(principal_submatrix(SymMatrix::identity(3), s2) == SymMatrix{{1}});
    CHECK_THROWS_AS(principal_submatrix(SymMatrix::identity(3), std::vector<std::size_t>{}), Error);
    CHECK_THROWS_AS(principal_submatrix(SymMatrix::identity(3), std::vector<std::size_t>{3}), Error);

    const SymMatrix P{{1, -0.4, -0.4}, {-0.4, 1, 0.5}, {-0.4, 0.5, 1}};
    const auto neg = negative_part_row_sums(P);
    CHECK(neg[0] == doctest::Approx(-0.8));
    CHECK(neg[1] == doctest::Approx(-0.4));
    CHECK(neg[2] == doctest::Approx(-0.4));
    for (double v : negative_part_row_sums(SymMatrix::identity(4))) CHECK(v == 0.0);
    const auto ne = negative_part_row_sums(b_epsilon(0.1));
    CHECK(ne[0] == doctest::Approx(-1.8));
    CHECK(ne[1] == doctest::Approx(-0.9));
    CHECK(ne[2] == doctest::Approx(-0.9));
}

TEST_CASE("homogeneity, linearity and gradients over random samples") {
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> T(0.1, 5.0);
    for (int trial = 0; trial < 300; ++trial) {
        const std::size_t n = 2 + std::size_t(trial % 5);
        const auto B = oracle::random_symmetric(n, rng);
        auto c = oracle::random_simplex_point(n, rng);
        const double t = T(rng);
        std::vector<double> tc(c);
        for (double& v : tc) v *= t;

        const double q = quadratic_form(B, c).value;
        CHECK(quadratic_form(B, tc).value == doctest::Approx(t * t * q).epsilon(1e-12).scale(1.0));

        const double p = trial % 2 == 0 ? 4.0 : 3.0;
        const ConeVector mu(oracle::random_simplex_point(n, rng));
        const ConeVector nu(oracle::random_simplex_point(n, rng));
        const double f = p_form(B, ConeVector(c), mu, p).value;
        CHECK(f == doctest::Approx(oracle::plain_p_form(B, c, mu.values(), p)).epsilon(1e-12).scale(1.0));
        CHECK(p_form(B, ConeVector(tc), mu, p).value ==
              doctest::Approx(std::pow(t, p - 1) * f).epsilon(1e-12).scale(1.0));

        std::vector<double> mix(n);
        for (std::size_t i = 0; i < n; ++i) mix[i] = 2.0 * mu[i] + 3.0 * nu[i];
        CHECK(p_form(B, ConeVector(c), ConeVector(mix), p).value ==
              doctest::Approx(2.0 * f + 3.0 * p_form(B, ConeVector(c), nu, p).value).epsilon(1e-12).scale(1.0));

        const auto grad = *quadratic_form(B, c).gradient;
        const auto fq = [&](const std::vector<double>& x) { return oracle::plain_quadratic(B, x); };
        for (std::size_t i = 0; i < n; ++i)
            CHECK(grad[i] == doctest::Approx(oracle::central_difference(fq, c, i, 1e-5)).epsilon(1e-6).scale(1.0));

        const auto pg = *p_form(B, ConeVector(c), mu, p, true).gradient;
        const auto fp = [&](const std::vector<double>& x) { return oracle::plain_p_form(B, x, mu.values(), p); };
        for (std::size_t i = 0; i < n; ++i)
            CHECK(pg[i] == doctest::Approx(oracle::central_difference(fp, c, i, 1e-6)).epsilon(1e-6).scale(1.0));
    }
}

TEST_CASE("diagonal scaling covariance at p = 4") {
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> M(0.2, 2.0);
    for (int trial = 0; trial < 200; ++trial) {
        const std::size_t n = 2 + std::size_t(trial % 4);
        const auto B = oracle::random_symmetric(n, rng);
        std::vector<double> mu(n), d = oracle::random_simplex_point(n, rng), c(n), e(n * n);
        for (double& v : mu) v = M(rng);
        for (std::size_t i = 0; i < n; ++i) {
            c[i] = d[i] / mu[i];
            for (std::size_t j = 0; j < n; ++j) e[i * n + j] = mu[i] * mu[i] * B(i, j) * mu[j] * mu[j];
        }
        const SymMatrix Bt(n, e);
        const double lhs = p_form(Bt, ConeVector(c), ConeVector(std::vector<double>(n, 1.0)), 4).value;
        const double rhs = p_form(B, ConeVector(d), ConeVector(mu), 4).value;
        CHECK(lhs == doctest::Approx(rhs).epsilon(1e-10).scale(1.0));
    }
}

}
