#include "coposolve/simplex_tools.hpp"

#include <algorithm>
#include <cmath>
#include <random>

namespace coposolve {

std::vector<double> project_to_simplex(std::span<const double> x) {
    const std::size_t n = x.size();
    std::vector<double> s(x.begin(), x.end());
    std::sort(s.begin(), s.end(), std::greater<>());
    double cumulative = 0.0, theta = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
        cumulative += s[k];
        const double t = (cumulative - 1.0) / double(k + 1);
        if (s[k] - t > 0.0) theta = t;
    }
    std::vector<double> out(n);
    double total = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        out[i] = std::max(x[i] - theta, 0.0);
        total += out[i];
    }
    for (double& v : out) v /= total;
    return out;
}

LocalMinimum minimize_on_simplex(const SimplexObjective& f, std::vector<double> start,
                                 const DescentOptions& options) {
    const std::size_t n = start.size();
    std::vector<double> x = project_to_simplex(start);
    std::vector<double> g(n), trial_g(n);
    double fx = f(x, g);
    double step = 1.0;
    LocalMinimum out;

    auto sanitize = [](std::vector<double>& grad) {
        double finite_max = 1.0;
        for (double v : grad)
            if (std::isfinite(v)) finite_max = std::max(finite_max, std::abs(v));
        for (double& v : grad)
            if (!std::isfinite(v)) v = std::copysign(1e6 * finite_max, v);
    };
    sanitize(g);

    int it = 0;
    for (; it < options.max_iterations; ++it) {
        bool accepted = false;
        std::vector<double> trial(n), moved(n);
        double ftrial = 0.0;
        double move = 0.0;
        for (int backtrack = 0; backtrack < 60; ++backtrack) {
            for (std::size_t i = 0; i < n; ++i) moved[i] = x[i] - step * g[i];
            trial = project_to_simplex(moved);
            double decrease = 0.0;
            move = 0.0;
            for (std::size_t i = 0; i < n; ++i) {
                decrease += g[i] * (trial[i] - x[i]);
                move = std::max(move, std::abs(trial[i] - x[i]));
            }
            if (move < options.step_tolerance) break;
            ftrial = f(trial, trial_g);
            if (ftrial <= fx + options.armijo * decrease) {
                accepted = true;
                break;
            }
            step *= 0.5;
        }
        if (!accepted) break;
        x.swap(trial);
        g.swap(trial_g);
        sanitize(g);
        fx = ftrial;
        step *= 2.0;
        if (move < options.step_tolerance) break;
    }
    out.point = std::move(x);
    out.value = fx;
    out.iterations = it;
    return out;
}

std::vector<double> sample_simplex(std::size_t n, std::size_t count, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::exponential_distribution<double> expo(1.0);
    std::vector<double> out(n * count);
    for (std::size_t k = 0; k < count; ++k) {
        double total = 0.0;
        for (std::size_t i = 0; i < n; ++i) total += out[k * n + i] = expo(rng);
        for (std::size_t i = 0; i < n; ++i) out[k * n + i] /= total;
    }
    return out;
}

}  // namespace coposolve
