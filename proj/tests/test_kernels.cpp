#include <doctest.h>

#include <random>

#include "coposolve/kernels.hpp"
#include "coposolve/p_copositivity.hpp"
#include "coposolve/simplex_tools.hpp"
#include "oracles.hpp"

using namespace coposolve;
using kernels::Execution;

TEST_SUITE("kernels") {

TEST_CASE("face enumeration is identical serially and in parallel") {
    std::mt19937_64 rng(1);
    for (int trial = 0; trial < 20; ++trial) {
        const auto B = oracle::random_symmetric(3 + std::size_t(trial % 6), rng);
        const auto a = kernels::face_candidates(B, Execution::Serial);
        const auto b = kernels::face_candidates(B, Execution::Parallel);
        REQUIRE(a.size() == b.size());
        for (std::size_t k = 0; k < a.size(); ++k) {
            CHECK(a[k].status == b[k].status);
            CHECK(a[k].value == b[k].value);
            CHECK(a[k].point == b[k].point);
        }
    }
}

TEST_CASE("grid scans are identical serially and in parallel") {
    const auto B = b_epsilon(0.05);
    const std::vector<double> mu{1.0, 0.8, 0.85};
    const auto a = kernels::scan_p_form_grid(B, mu, 4, 48, 16, Execution::Serial);
    const auto b = kernels::scan_p_form_grid(B, mu, 4, 48, 16, Execution::Parallel);
    CHECK(a.points == b.points);
    CHECK(a.points == std::uint64_t(kernels::grid_point_count(3, 48)));
    REQUIRE(a.best_form.size() == b.best_form.size());
    for (std::size_t k = 0; k < a.best_form.size(); ++k) {
        CHECK(a.best_form[k].value == b.best_form[k].value);
        CHECK(a.best_form[k].counts == b.best_form[k].counts);
        CHECK(a.best_ratio[k].counts == b.best_ratio[k].counts);
    }
    CHECK(a.best_form.front().value ==
          doctest::Approx(oracle::grid_min_p_form(B, mu, 4, 48)).epsilon(1e-12).scale(1.0));

    const auto pts = sample_simplex(3, 500, 7);
    const auto la = kernels::scan_p_form_points(B, mu, 4, pts, 8, Execution::Serial);
    const auto lb = kernels::scan_p_form_points(B, mu, 4, pts, 8, Execution::Parallel);
    CHECK(la.best_form == lb.best_form);
    CHECK(la.form_values == lb.form_values);
}

TEST_CASE("grid point count") {
    CHECK(kernels::grid_point_count(3, 64) == 2145.0);
    CHECK(kernels::grid_point_count(2, 10) == 11.0);
}

TEST_CASE("simplex projection and descent") {
    const auto p = project_to_simplex(std::vector<double>{0.5, 0.5, 0.5});
    for (double v : p) CHECK(v == doctest::Approx(1.0 / 3.0));
    const auto q = project_to_simplex(std::vector<double>{2.0, 0.0});
    CHECK(q[0] == 1.0);
    CHECK(q[1] == 0.0);

    // minimize sum c_i^2 from a vertex
    const SimplexObjective f = [](std::span<const double> c, std::span<double> g) {
        double s = 0.0;
        for (std::size_t i = 0; i < c.size(); ++i) {
            s += c[i] * c[i];
            g[i] = 2 * c[i];
        }
        return s;
    };
    const auto m = minimize_on_simplex(f, {1.0, 0.0, 0.0, 0.0});
    CHECK(m.value == doctest::Approx(0.25).epsilon(1e-9));

    const auto s = sample_simplex(4, 100, 3);
    CHECK(s == sample_simplex(4, 100, 3));
    for (std::size_t k = 0; k < 100; ++k) {
        double t = 0.0;
        for (std::size_t i = 0; i < 4; ++i) t += s[k * 4 + i];
        CHECK(t == doctest::Approx(1.0));
    }
}

}
