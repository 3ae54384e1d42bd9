#include "coposolve/lp.hpp"

#include <cmath>
#include <limits>

#include "coposolve/errors.hpp"

namespace coposolve::lp {

Solution maximize(const Problem& problem, int max_pivots) {
    const std::size_t m = problem.A.size();
    const std::size_t n = problem.c.size();
    if (problem.b.size() != m) throw Error(ErrorKind::Dimension, "lp: row count mismatch");
    for (const auto& row : problem.A)
        if (row.size() != n) throw Error(ErrorKind::Dimension, "lp: column count mismatch");
    for (double v : problem.b)
        if (v < 0.0) throw Error(ErrorKind::Parameter, "lp: right-hand side must be nonnegative");

    constexpr double eps = 1e-12;
    const std::size_t cols = n + m + 1;  // structural, slack, rhs
    std::vector<double> T((m + 1) * cols, 0.0);
    auto at = [&](std::size_t r, std::size_t c) -> double& { return T[r * cols + c]; };
    for (std::size_t r = 0; r < m; ++r) {
        for (std::size_t j = 0; j < n; ++j) at(r, j) = problem.A[r][j];
        at(r, n + r) = 1.0;
        at(r, cols - 1) = problem.b[r];
    }
    // objective row holds reduced costs -c
    for (std::size_t j = 0; j < n; ++j) at(m, j) = -problem.c[j];
    std::vector<std::size_t> basis(m);
    for (std::size_t r = 0; r < m; ++r) basis[r] = n + r;

    Solution out;
    for (;;) {
        if (out.pivots >= max_pivots) {
            out.status = Status::IterationLimit;
            break;
        }
        std::size_t enter = cols;
        for (std::size_t j = 0; j + 1 < cols; ++j)
            if (at(m, j) < -eps) {
                enter = j;
                break;
            }
        if (enter == cols) break;

        std::size_t leave = m;
        double best_ratio = std::numeric_limits<double>::infinity();
        for (std::size_t r = 0; r < m; ++r) {
            const double a = at(r, enter);
            if (a <= eps) continue;
            const double ratio = at(r, cols - 1) / a;
            if (ratio < best_ratio - eps || (std::abs(ratio - best_ratio) <= eps && leave < m && basis[r] < basis[leave])) {
                best_ratio = ratio;
                leave = r;
            }
        }
        if (leave == m) {
            out.status = Status::Unbounded;
            return out;
        }

        const double pivot = at(leave, enter);
        for (std::size_t j = 0; j < cols; ++j) at(leave, j) /= pivot;
        for (std::size_t r = 0; r <= m; ++r) {
            if (r == leave) continue;
            const double factor = at(r, enter);
            if (factor == 0.0) continue;
            for (std::size_t j = 0; j < cols; ++j) at(r, j) -= factor * at(leave, j);
        }
        basis[leave] = enter;
        ++out.pivots;
    }

    out.x.assign(n, 0.0);
    for (std::size_t r = 0; r < m; ++r)
        if (basis[r] < n) out.x[basis[r]] = std::max(at(r, cols - 1), 0.0);
    double obj = 0.0;
    for (std::size_t j = 0; j < n; ++j) obj += problem.c[j] * out.x[j];
    out.objective = obj;
    return out;
}

}  // namespace coposolve::lp
