#include <doctest.h>

#include <random>

#include "coposolve/solvability.hpp"
#include "oracles.hpp"

using namespace coposolve;

namespace {

const SymMatrix kDominant{{1, -0.4, -0.4}, {-0.4, 1, 0.5}, {-0.4, 0.5, 1}};

}  // namespace

TEST_SUITE("solvability") {

TEST_CASE("problem parameters") {
    CHECK_NOTHROW(ProblemParams(3, 4.0));
    CHECK_NOTHROW(ProblemParams(2, 100.0));
    CHECK_THROWS_AS(ProblemParams(3, 6.0), Error);
    CHECK_THROWS_AS(ProblemParams(3, 2.0), Error);
    CHECK_THROWS_AS(ProblemParams(0, 4.0), Error);
    CHECK(ProblemParams(3, 4.0).weighted_range());
    CHECK_FALSE(ProblemParams(3, 4.5).weighted_range());
    CHECK(ProblemParams(4, 3.0).weighted_range());
    CHECK_FALSE(ProblemParams(4, 3.01).weighted_range());
}

TEST_CASE("constant solutions") {
    auto s = constant_solution(SymMatrix{{1, -1}, {-1, 1}}, 4);
    REQUIRE(s);
    CHECK(s->u[0] == doctest::Approx(1.0));
    CHECK(s->u[1] == doctest::Approx(1.0));
    CHECK(s->residual < 1e-10);

    s = constant_solution(SymMatrix{{0, 5}, {5, 1}}, 4);
    REQUIRE(s);
    CHECK(s->u == ConeVector{1, 0});

    CHECK_FALSE(constant_solution(SymMatrix::identity(2), 4));

    s = constant_solution(SymMatrix{{1, -1, -1}, {-1, 1, 1}, {-1, 1, 1}}, 3);
    REQUIRE(s);
    CHECK(s->residual < 1e-10);
    CHECK(s->c[0] == doctest::Approx(1.0));
    CHECK(s->c[1] + s->c[2] == doctest::Approx(1.0));
}

TEST_CASE("verdict examples") {
    auto v = classify_solvability(SymMatrix::identity(2), ProblemParams(3, 4));
    CHECK(v.kind == SolvabilityKind::NoNontrivial);
    CHECK(v.reason == SolvabilityReason::TwoComponentCriterion);
    CHECK(std::holds_alternative<MuCertificate>(v.certificate));

    v = classify_solvability(SymMatrix{{1, -1}, {-1, 1}}, ProblemParams(3, 4));
    CHECK(v.kind == SolvabilityKind::ExistsNontrivial);
    CHECK(v.reason == SolvabilityReason::ConstantSolution);

    v = classify_solvability(SymMatrix{{0, 5}, {5, 1}}, ProblemParams(3, 4));
    CHECK(v.reason == SolvabilityReason::ZeroDiagonal);

    v = classify_solvability(SymMatrix{{1, -2}, {-2, 1}}, ProblemParams(3, 4));
    CHECK(v.kind == SolvabilityKind::ExistsNontrivial);
    CHECK(v.reason == SolvabilityReason::NotStrictlyCopositive);

    v = classify_solvability(b_epsilon(0.1), ProblemParams(2, 4));
    CHECK(v.kind == SolvabilityKind::NoNontrivial);
    CHECK(v.reason == SolvabilityReason::LowDimensionStrictCopositivity);

    v = classify_solvability(kDominant, ProblemParams(3, 4));
    CHECK(v.kind == SolvabilityKind::NoNontrivial);
    CHECK(v.reason == SolvabilityReason::DominantDiagonalCriterion);

    CHECK_THROWS_AS(classify_solvability(SymMatrix{{-1, 0}, {0, 1}}, ProblemParams(3, 4)), Error);
}

TEST_CASE("weighted criteria and the open gap for b_epsilon") {
    // a weight exists for eps = 0.1, none for eps = 0.001
    auto v = classify_solvability(b_epsilon(0.1), ProblemParams(3, 4));
    CHECK(v.kind == SolvabilityKind::NoNontrivial);
    CHECK(v.reason == SolvabilityReason::WeightedCopositivityCertificate);

    v = classify_solvability(b_epsilon(0.001), ProblemParams(3, 4));
    CHECK(v.kind == SolvabilityKind::Unknown);
    CHECK(v.reason == SolvabilityReason::OpenGap);
    CHECK(v.search.has_value());
    CHECK_FALSE(v.note.empty());

    // above (2N-2)/(N-2) no weighted criterion applies
    v = classify_solvability(SymMatrix::identity(2), ProblemParams(3, 5));
    CHECK(v.kind == SolvabilityKind::Unknown);
}

TEST_CASE("two-component completeness") {
    std::mt19937_64 rng(101);
    for (int trial = 0; trial < 400; ++trial) {
        const auto B = oracle::random_symmetric(2, rng);
        for (int N : {1, 2, 3}) {
            const auto v = classify_solvability(B, ProblemParams(N, 4));
            CHECK(v.kind != SolvabilityKind::Unknown);
            if (v.kind == SolvabilityKind::ExistsNontrivial && v.reason == SolvabilityReason::ConstantSolution) {
                const auto& cs = std::get<ConstantSolution>(v.certificate);
                CHECK(constant_residual(B, cs.u, 4) < 1e-10);
            }
        }
    }
}

TEST_CASE("low-dimension completeness") {
    std::mt19937_64 rng(202);
    std::uniform_real_distribution<double> P(2.05, 4.0);
    for (int trial = 0; trial < 300; ++trial) {
        const std::size_t n = 1 + std::size_t(trial % 6);
        const auto B = oracle::random_symmetric(n, rng);
        const auto v = classify_solvability(B, ProblemParams(1 + trial % 2, P(rng)));
        CHECK(v.kind != SolvabilityKind::Unknown);
    }
}

TEST_CASE("raising off-diagonal entries keeps low-dimension nonexistence") {
    std::mt19937_64 rng(303);
    std::uniform_real_distribution<double> up(0.0, 1.0);
    for (int trial = 0; trial < 300; ++trial) {
        const std::size_t n = 2 + std::size_t(trial % 4);
        const auto B = oracle::random_symmetric(n, rng);
        const auto v = classify_solvability(B, ProblemParams(2, 4));
        if (v.reason != SolvabilityReason::LowDimensionStrictCopositivity) continue;
        auto rows = B.to_rows();
        const std::size_t i = trial % n, j = (trial + 1) % n;
        const double add = up(rng);
        rows[i][j] += add;
        rows[j][i] += add;
        CHECK(classify_solvability(SymMatrix::from_rows(rows), ProblemParams(2, 4)).kind != SolvabilityKind::ExistsNontrivial);
    }
}

}
