#pragma once

#include <vector>

namespace coposolve::lp {

/// maximize c.x  subject to  A x <= b, x >= 0, with b >= 0 (the origin is
/// feasible, so no phase one is needed). Dense tableau, Bland's rule.
struct Problem {
    std::vector<std::vector<double>> A;
    std::vector<double> b;
    std::vector<double> c;
};

enum class Status { Optimal, Unbounded, IterationLimit };

struct Solution {
    Status status = Status::Optimal;
    std::vector<double> x;
    double objective = 0.0;
    int pivots = 0;
};

Solution maximize(const Problem& problem, int max_pivots = 100000);

}  // namespace coposolve::lp
