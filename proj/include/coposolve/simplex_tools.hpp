#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

namespace coposolve {

/// Euclidean projection onto the standard simplex {c >= 0, sum c = 1}.
std::vector<double> project_to_simplex(std::span<const double> x);

/// Objective on the simplex: returns the value and writes the gradient.
using SimplexObjective = std::function<double(std::span<const double> c, std::span<double> grad)>;

struct LocalMinimum {
    std::vector<double> point;
    double value = 0.0;
    int iterations = 0;
};

struct DescentOptions {
    int max_iterations = 400;
    double step_tolerance = 1e-12;  // stop once a projected step moves less than this (max-norm)
    double armijo = 1e-4;
};

/// Projected-gradient descent with Armijo backtracking. Infinite gradient
/// components (singular exponents at the boundary) are clipped to a large
/// finite value so the projection still sees their sign.
LocalMinimum minimize_on_simplex(const SimplexObjective& f, std::vector<double> start,
                                 const DescentOptions& options = {});

/// Deterministic Dirichlet(1,...,1) samples (row-major, n per point).
std::vector<double> sample_simplex(std::size_t n, std::size_t count, std::uint64_t seed);

}  // namespace coposolve
