#include <doctest.h>

#include <algorithm>
#include <numeric>
#include <random>

#include "coposolve/copositivity.hpp"
#include "coposolve/p_copositivity.hpp"
#include "oracles.hpp"

using namespace coposolve;

namespace {

SymMatrix permuted(const SymMatrix& B, const std::vector<std::size_t>& perm) {
    const std::size_t n = B.size();
    std::vector<double> e(n * n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) e[i * n + j] = B(perm[i], perm[j]);
    return SymMatrix(n, e);
}

}  // namespace

TEST_SUITE("copositivity") {

TEST_CASE("simplex minimum examples") {
    auto m = simplex_min_quadratic(SymMatrix::identity(2));
    CHECK(m.min_value == doctest::Approx(0.5));
    CHECK(m.argmin == ConeVector{0.5, 0.5});
    m = simplex_min_quadratic(SymMatrix{{1, -2}, {-2, 1}});
    CHECK(m.min_value == doctest::Approx(-0.5));
    CHECK(m.argmin == ConeVector{0.5, 0.5});
    m = simplex_min_quadratic(SymMatrix{{1, -1}, {-1, 1}});
    CHECK(std::abs(m.min_value) < 1e-15);
    CHECK(m.argmin[0] == doctest::Approx(0.5));
    CHECK_THROWS_AS(simplex_min_quadratic(SymMatrix::identity(17)), Error);
}

TEST_CASE("flat faces fall back to the grid") {
    const SymMatrix B0{{1, -1, -1}, {-1, 1, 1}, {-1, 1, 1}};
    const auto m = simplex_min_quadratic(B0);
    CHECK(m.min_value == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(oracle::grid_min_quadratic(B0, 64) >= m.min_value - 1e-12);
}

TEST_CASE("classification examples") {
    auto v = classify_copositivity(SymMatrix{{1, -1}, {-1, 1}});
    CHECK(v.kind == CopositivityKind::CopositiveNotStrict);
    CHECK(v.boundary_case);
    CHECK(v.witness[0] == doctest::Approx(0.5));
    CHECK(v.method == CopositivityMethod::ClosedForm2);

    v = classify_copositivity(b_epsilon(0.1));
    CHECK(v.kind == CopositivityKind::StrictlyCopositive);
    CHECK(v.method == CopositivityMethod::ClosedForm3);

    v = classify_copositivity(SymMatrix{{1, -2}, {-2, 1}});
    CHECK(v.kind == CopositivityKind::NotCopositive);
    CHECK(v.min_value == doctest::Approx(-0.5));
    CHECK(v.witness == ConeVector{0.5, 0.5});

    v = classify_copositivity(SymMatrix::identity(5));
    CHECK(v.method == CopositivityMethod::FaceEnumeration);
    CHECK(v.min_value == doctest::Approx(0.2));
    CHECK_THROWS_AS(Tolerance(0.0), Error);
    CHECK_THROWS_AS(Tolerance(1e-3), Error);
}

TEST_CASE("closed-form tests") {
    CHECK_FALSE(strict_copositivity_closed_form(SymMatrix{{1, -1}, {-1, 1}}).strictly_copositive);
    CHECK(strict_copositivity_closed_form(SymMatrix::identity(2)).strictly_copositive);
    const auto r = strict_copositivity_closed_form(b_epsilon(0.25));
    CHECK(r.strictly_copositive);
    REQUIRE(r.diagnostic);
    CHECK(*r.diagnostic == doctest::Approx(1.0).epsilon(1e-12));
    CHECK_FALSE(strict_copositivity_closed_form(SymMatrix{{-1, 0}, {0, 1}}).strictly_copositive);
    CHECK_THROWS_AS(strict_copositivity_closed_form(SymMatrix::identity(4)), Error);
}

TEST_CASE("definiteness") {
    CHECK(check_psd(SymMatrix::identity(3)) == Definiteness::PositiveDefinite);
    CHECK(check_psd(SymMatrix{{1, -1}, {-1, 1}}) == Definiteness::PositiveSemidefinite);
    CHECK(check_psd(SymMatrix{{1, -2}, {-2, 1}}) == Definiteness::Indefinite);
}

TEST_CASE("boundary positivity") {
    CHECK_FALSE(boundary_positive(SymMatrix{{1, -1, -1}, {-1, 1, 1}, {-1, 1, 1}}));
    CHECK(boundary_positive(b_epsilon(0.1)));
    CHECK(boundary_positive(SymMatrix::identity(3)));
    CHECK_THROWS_AS(boundary_positive(SymMatrix{{1}}), Error);
}

TEST_CASE("oracle agrees with closed forms and the grid") {
    std::mt19937_64 rng(2024);
    int compared = 0;
    for (int trial = 0; trial < 4000; ++trial) {
        const std::size_t n = trial % 2 == 0 ? 2 : 3;
        const auto B = oracle::random_symmetric(n, rng);
        const auto v = classify_copositivity(B);
        if (std::abs(v.min_value) > 1e-9) {
            ++compared;
            CHECK((v.kind == CopositivityKind::StrictlyCopositive) ==
                  strict_copositivity_closed_form(B).strictly_copositive);
        }
        CHECK(quadratic_form(B, v.witness.components()).value == doctest::Approx(v.min_value).epsilon(1e-10).scale(1.0));
        CHECK(std::abs(v.witness.sum() - 1.0) < 1e-12);
        CHECK(oracle::grid_min_quadratic(B, 48) >= v.min_value - 1e-12);
    }
    CHECK(compared > 3900);
}

TEST_CASE("larger random matrices against a dense grid") {
    std::mt19937_64 rng(77);
    for (int trial = 0; trial < 60; ++trial) {
        const std::size_t n = 4 + std::size_t(trial % 2);
        const auto B = oracle::random_symmetric(n, rng);
        const auto m = simplex_min_quadratic(B);
        CHECK(oracle::grid_min_quadratic(B, 24) >= m.min_value - 1e-12);
    }
}

TEST_CASE("psd plus nonnegative is never reported as not copositive") {
    std::mt19937_64 rng(9);
    std::normal_distribution<double> G;
    std::uniform_real_distribution<double> U(0.0, 1.0);
    for (int trial = 0; trial < 300; ++trial) {
        const std::size_t n = 2 + std::size_t(trial % 5);
        std::vector<double> V(n * n), e(n * n, 0.0);
        for (double& v : V) v = G(rng);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) {
                for (std::size_t k = 0; k < n; ++k) e[i * n + j] += V[i * n + k] * V[j * n + k];
            }
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = i; j < n; ++j) {
                const double add = U(rng);
                e[i * n + j] += add;
                if (i != j) e[j * n + i] += add;
            }
        CHECK(classify_copositivity(SymMatrix(n, e)).kind != CopositivityKind::NotCopositive);
    }
}

TEST_CASE("permutation invariance") {
    std::mt19937_64 rng(31);
    for (int trial = 0; trial < 200; ++trial) {
        const std::size_t n = 2 + std::size_t(trial % 5);
        const auto B = oracle::random_symmetric(n, rng);
        std::vector<std::size_t> perm(n);
        std::iota(perm.begin(), perm.end(), 0);
        std::shuffle(perm.begin(), perm.end(), rng);
        const auto a = classify_copositivity(B), b = classify_copositivity(permuted(B, perm));
        CHECK(a.kind == b.kind);
        CHECK(a.min_value == doctest::Approx(b.min_value).epsilon(1e-10).scale(1.0));
    }
}

TEST_CASE("definiteness implies copositivity") {
    std::mt19937_64 rng(41);
    for (int trial = 0; trial < 500; ++trial) {
        const std::size_t n = 2 + std::size_t(trial % 4);
        const auto B = oracle::random_symmetric(n, rng);
        const auto d = check_psd(B);
        const auto k = classify_copositivity(B).kind;
        if (d == Definiteness::PositiveDefinite) CHECK(k == CopositivityKind::StrictlyCopositive);
        if (d == Definiteness::PositiveSemidefinite) CHECK(k != CopositivityKind::NotCopositive);
    }
}

}
