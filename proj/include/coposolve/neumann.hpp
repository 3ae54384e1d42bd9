#pragma once

#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "coposolve/cone_core.hpp"
#include "coposolve/kernels.hpp"
#include "coposolve/solvability.hpp"

namespace coposolve {

/// Uniform grid on the box [0, L]^dim with points_per_side nodes per axis.
class Grid {
public:
    Grid(int dim, double extent, int points_per_side);

    int dim() const noexcept { return dim_; }
    double extent() const noexcept { return extent_; }
    int points_per_side() const noexcept { return m_; }
    double spacing() const noexcept { return extent_ / (m_ - 1); }
    std::size_t nodes() const noexcept { return dim_ == 1 ? std::size_t(m_) : std::size_t(m_) * std::size_t(m_); }
    double volume() const noexcept { return dim_ == 1 ? extent_ : extent_ * extent_; }

    /// x coordinate of a node (nodes are ordered x fastest).
    double x(std::size_t node) const noexcept;
    double y(std::size_t node) const noexcept;
    /// Trapezoidal quadrature weight of a node.
    double weight(std::size_t node) const noexcept;
    kernels::BoxShape box() const noexcept;

    friend bool operator==(const Grid&, const Grid&) = default;

private:
    int dim_;
    double extent_;
    int m_;
};

/// n scalar fields on a grid, stored component-major.
class FieldTuple {
public:
    FieldTuple() = default;
    FieldTuple(std::size_t components, std::size_t nodes, double value = 0.0);
    FieldTuple(std::size_t components, std::vector<double> values);

    std::size_t components() const noexcept { return n_; }
    std::size_t nodes() const noexcept { return n_ == 0 ? 0 : v_.size() / n_; }
    std::span<double> component(std::size_t i) noexcept { return {v_.data() + i * nodes(), nodes()}; }
    std::span<const double> component(std::size_t i) const noexcept { return {v_.data() + i * nodes(), nodes()}; }
    std::vector<double>& values() noexcept { return v_; }
    const std::vector<double>& values() const noexcept { return v_; }

    double min() const noexcept;
    double max_abs() const noexcept;
    bool nonnegative(double tol) const noexcept { return min() >= -tol; }

    friend bool operator==(const FieldTuple&, const FieldTuple&) = default;

private:
    std::size_t n_ = 0;
    std::vector<double> v_;
};

struct EnergyReport {
    double energy = 0.0;
    double dirichlet = 0.0;  // int |grad u|^2 + |u^-|^2
    double phi = 0.0;        // (1/p) int sum_ij b_ij (u_i^+)^{p/2} (u_j^+)^{p/2}
    double residual_inf = 0.0;
    std::vector<double> identity_defects;  // int sum_j b_ij u_j^{p/2} u_i^{p/2-1}, per component
};

/// Discrete energy, residual and integral identities. The energy uses edge
/// differences and trapezoidal weights, so its gradient is exactly the
/// weighted residual W r.
EnergyReport energy(const SymMatrix& B, const FieldTuple& u, double p, const Grid& grid,
                    kernels::Execution exec = kernels::Execution::Parallel);

/// Discrete Euler-Lagrange residual -Lap_h u + u^- - f(u).
std::vector<double> residual(const SymMatrix& B, const FieldTuple& u, double p, const Grid& grid,
                             kernels::Execution exec = kernels::Execution::Parallel);

/// Interior d with b(d^{p/2}) < 0 and min d_i >= 1e-4 max d_i.
ConeVector find_direction_d(const SymMatrix& B, double p);

/// Disjoint bump profiles phi_1..phi_n (strips along x), 0 <= phi_i <= 1.
std::vector<std::vector<double>> bump_profiles(std::size_t n, const Grid& grid);

/// h_{c,t}(x) = (1 - t) c + t (c_1 phi_1(x), ..., c_n phi_n(x)).
FieldTuple homotopy_seed(const ConeVector& c, const std::vector<std::vector<double>>& bumps, double t);

struct ThetaSeed {
    FieldTuple field;
    std::string provenance;
    double amplitude = 0.0;
};

/// Starting fields sampled from the boundary map: bumps, constants along d,
/// homotopy mixtures at t in {1/4, 1/2, 3/4} and face homotopies, interleaved.
std::vector<ThetaSeed> theta_seeds(const SymMatrix& B, const ConeVector& d, double p, const Grid& grid,
                                   std::size_t count);

enum class SolutionClass { Constant, Nonconstant };

struct NeumannSolution {
    FieldTuple field;
    EnergyReport report;
    SolutionClass classification = SolutionClass::Nonconstant;
    std::string seed_provenance;
};

struct TrivialOnly {
    std::size_t seeds = 0;
};

struct NeumannInconclusive {
    FieldTuple best_iterate;
    EnergyReport report;
    std::string seed_provenance;
    std::size_t seeds = 0;
};

using NeumannOutcome = std::variant<NeumannSolution, TrivialOnly, NeumannInconclusive>;

struct SolverConfig {
    double residual_tol = 1e-8;
    double negativity_tol = 1e-10;
    double nontriviality = 1e-4;  // relative to the seed amplitude
    std::size_t seed_count = 8;
    int max_iterations = 300;
    kernels::Execution exec = kernels::Execution::Parallel;
};

NeumannOutcome mountain_pass_solve(const SymMatrix& B, const ProblemParams& params, const Grid& grid,
                                   const SolverConfig& config = {});

struct PolishResult {
    FieldTuple field;
    double residual_inf = 0.0;
    int iterations = 0;
};

/// Damped Levenberg-Marquardt on the weighted residual merit followed by
/// Newton iterations on the Euler-Lagrange system.
PolishResult newton_polish(const SymMatrix& B, double p, const Grid& grid, FieldTuple u, const SolverConfig& config = {});

/// Multilinear interpolation onto a grid of the same box.
FieldTuple prolongate(const FieldTuple& u, const Grid& from, const Grid& to);

/// Even reflection across the faces: `copies` periods of length 2L per axis.
std::pair<FieldTuple, Grid> reflect_tile(const FieldTuple& u, const Grid& grid, int copies);

/// Header `x[,y],u1,...,un`, one row per node, %.17g.
void write_csv(std::ostream& out, const FieldTuple& u, const Grid& grid);

std::string_view to_string(SolutionClass c);

}  // namespace coposolve
