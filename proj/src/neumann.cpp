#include "coposolve/neumann.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <ostream>

#include <Eigen/Sparse>
#include <Eigen/SparseCholesky>
#include <Eigen/SparseLU>

#include "coposolve/copositivity.hpp"
#include "coposolve/summation.hpp"

namespace coposolve {
namespace {

using SpMat = Eigen::SparseMatrix<double>;
using Vec = Eigen::VectorXd;

constexpr double kGapFraction = 0.2;
constexpr int kMinBumpNodes = 4;
constexpr double kNewtonSwitch = 1e-7;

std::string format_g(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.6g", v);
    return buf;
}

std::vector<double> node_weights(const Grid& grid, std::size_t n) {
    const std::size_t N = grid.nodes();
    std::vector<double> w(n * N);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t k = 0; k < N; ++k) w[i * N + k] = grid.weight(k);
    return w;
}

double merit_of(const std::vector<double>& r, const std::vector<double>& w) {
    CompensatedSum s;
    for (std::size_t k = 0; k < r.size(); ++k) s += w[k] * r[k] * r[k];
    return 0.5 * s.value();
}

double inf_norm(const std::vector<double>& v) {
    double m = 0.0;
    for (double x : v) m = std::max(m, std::abs(x));
    return m;
}

/// Jacobian of the residual; W J is the Hessian of the discrete energy.
SpMat jacobian(const SymMatrix& B, double p, const Grid& grid, const std::vector<double>& u) {
    const std::size_t n = B.size(), N = grid.nodes();
    const int m = grid.points_per_side();
    const double h = grid.spacing(), inv_h2 = 1.0 / (h * h);
    const double a = 0.5 * p - 1.0, b = 0.5 * p;
    std::vector<Eigen::Triplet<double>> trip;
    trip.reserve(n * N * (2 * grid.dim() + 1 + n));
    std::vector<double> pa(n), pb(n), db(n);

    for (std::size_t k = 0; k < N; ++k) {
        for (std::size_t j = 0; j < n; ++j) {
            const double v = u[j * N + k];
            pa[j] = cone_power(v, a);
            pb[j] = cone_power(v, b);
            db[j] = v > 0.0 ? b * cone_power(v, b - 1.0) : 0.0;
        }
        const int ix = grid.dim() == 1 ? int(k) : int(k % std::size_t(m));
        const int iy = grid.dim() == 1 ? 0 : int(k / std::size_t(m));
        for (std::size_t i = 0; i < n; ++i) {
            const auto row = Eigen::Index(i * N + k);
            const auto base = i * N;
            auto axis = [&](std::size_t lo, std::size_t hi) {
                trip.emplace_back(row, row, 2.0 * inv_h2);
                trip.emplace_back(row, Eigen::Index(base + lo), -inv_h2);
                trip.emplace_back(row, Eigen::Index(base + hi), -inv_h2);
            };
            axis(ix > 0 ? k - 1 : k + 1, ix < m - 1 ? k + 1 : k - 1);
            if (grid.dim() == 2) {
                const auto s = std::size_t(m);
                axis(iy > 0 ? k - s : k + s, iy < m - 1 ? k + s : k - s);
            }
            const double c = u[i * N + k];
            // slope of min(u, 0) taken from the left at u == 0
            if (c <= 0.0) trip.emplace_back(row, row, 1.0);
            if (c > 0.0) {
                double s = 0.0;
                for (std::size_t j = 0; j < n; ++j) s += B(i, j) * pb[j];
                const double da = a == 1.0 ? 1.0 : a * std::pow(c, a - 1.0);
                trip.emplace_back(row, row, -da * s);
                for (std::size_t j = 0; j < n; ++j)
                    if (db[j] != 0.0) trip.emplace_back(row, Eigen::Index(j * N + k), -pa[i] * B(i, j) * db[j]);
            }
        }
    }
    SpMat J(Eigen::Index(n * N), Eigen::Index(n * N));
    J.setFromTriplets(trip.begin(), trip.end());
    return J;
}

enum class IterStatus { Converged, Collapsed, Stalled };

struct IterResult {
    std::vector<double> u;
    double residual_inf = 0.0;
    int iterations = 0;
    IterStatus status = IterStatus::Stalled;
};

/// Levenberg-Marquardt on the merit 1/2 r'Wr; once the residual is small,
/// plain Newton steps with backtracking, falling back to a damped step when
/// the Jacobian is singular (a component that vanished identically).
IterResult iterate(const SymMatrix& B, double p, const Grid& grid, std::vector<double> u, double collapse_below,
                   double target, int max_iterations, kernels::Execution exec) {
    const std::size_t n = B.size();
    const auto w = node_weights(grid, n);
    const auto box = grid.box();
    std::vector<double> r(u.size()), trial(u.size()), r_trial(u.size());
    kernels::neumann_residual(B, p, box, u, r, exec);
    double merit = merit_of(r, w);
    IterResult out;
    out.status = IterStatus::Stalled;

    auto try_point = [&](const Vec& delta, double alpha) {
        for (std::size_t k = 0; k < u.size(); ++k) trial[k] = u[k] + alpha * delta(Eigen::Index(k));
        kernels::neumann_residual(B, p, box, trial, r_trial, exec);
        return merit_of(r_trial, w);
    };
    auto accept = [&](double m_trial) {
        u.swap(trial);
        r.swap(r_trial);
        merit = m_trial;
    };

    double lambda = 1e-2, nu = 2.0;
    int it = 0;
    for (; it < max_iterations; ++it) {
        if (inf_norm(r) < target) {
            out.status = IterStatus::Converged;
            break;
        }
        if (inf_norm(u) < collapse_below) {
            out.status = IterStatus::Collapsed;
            break;
        }
        const SpMat J = jacobian(B, p, grid, u);
        const Eigen::Map<const Vec> rv(r.data(), Eigen::Index(r.size()));

        if (inf_norm(r) < kNewtonSwitch) {
            Eigen::SparseLU<SpMat> lu;
            lu.compute(J);
            if (lu.info() == Eigen::Success) {
                const Vec delta = lu.solve(-rv);
                bool moved = false;
                if (lu.info() == Eigen::Success && delta.allFinite())
                    for (double alpha = 1.0; alpha > 1e-4 && !moved; alpha *= 0.5) {
                        const double m_trial = try_point(delta, alpha);
                        if (m_trial < merit) {
                            accept(m_trial);
                            moved = true;
                        }
                    }
                if (moved) continue;
            }
        }

        const Eigen::Map<const Vec> wv(w.data(), Eigen::Index(w.size()));
        const SpMat WJ = wv.asDiagonal() * J;
        const SpMat G = SpMat(J.transpose()) * WJ;
        const Vec g = J.transpose() * (wv.cwiseProduct(rv));
        const Vec D = G.diagonal().cwiseMax(1e-300);
        bool accepted = false;
        while (!accepted && lambda <= 1e16) {
            SpMat A = G;
            for (Eigen::Index k = 0; k < A.rows(); ++k) A.coeffRef(k, k) += lambda * D(k);
            Eigen::SimplicialLDLT<SpMat> ldlt(A);
            if (ldlt.info() == Eigen::Success) {
                const Vec delta = ldlt.solve(-g);
                const double m_trial = try_point(delta, 1.0);
                const double predicted = 0.5 * delta.dot(lambda * D.cwiseProduct(delta) - g);
                const double rho = predicted > 0.0 ? (merit - m_trial) / predicted : -1.0;
                if (rho > 0.0 && std::isfinite(m_trial)) {
                    accept(m_trial);
                    lambda *= std::max(1.0 / 3.0, 1.0 - std::pow(2.0 * rho - 1.0, 3));
                    nu = 2.0;
                    accepted = true;
                    continue;
                }
            }
            lambda *= nu;
            nu *= 2.0;
        }
        if (!accepted) break;
    }

    out.residual_inf = inf_norm(r);
    out.iterations = it;
    if (out.status == IterStatus::Stalled && out.residual_inf < target) out.status = IterStatus::Converged;
    if (inf_norm(u) < collapse_below) out.status = IterStatus::Collapsed;
    out.u = std::move(u);
    return out;
}

bool lex_less(const FieldTuple& a, const FieldTuple& b) {
    return std::lexicographical_compare(a.values().begin(), a.values().end(), b.values().begin(), b.values().end());
}

SolutionClass classify_field(const FieldTuple& u) {
    double spread = 0.0;
    for (std::size_t i = 0; i < u.components(); ++i) {
        const auto c = u.component(i);
        const auto [lo, hi] = std::minmax_element(c.begin(), c.end());
        spread = std::max(spread, *hi - *lo);
    }
    return spread <= 1e-9 * std::max(1.0, u.max_abs()) ? SolutionClass::Constant : SolutionClass::Nonconstant;
}

}  // namespace

Grid::Grid(int dim, double extent, int points_per_side) : dim_(dim), extent_(extent), m_(points_per_side) {
    if (dim != 1 && dim != 2) throw Error(ErrorKind::Parameter, "grid dimension must be 1 or 2");
    if (!(extent > 0.0) || !std::isfinite(extent)) throw Error(ErrorKind::Parameter, "box extent must be positive");
    if (points_per_side < 17) throw Error(ErrorKind::Parameter, "grid needs at least 17 points per side");
}

double Grid::x(std::size_t node) const noexcept {
    const auto ix = dim_ == 1 ? node : node % std::size_t(m_);
    return double(ix) * spacing();
}

double Grid::y(std::size_t node) const noexcept {
    return dim_ == 1 ? 0.0 : double(node / std::size_t(m_)) * spacing();
}

double Grid::weight(std::size_t node) const noexcept {
    const double h = spacing();
    auto axis = [&](std::size_t i) { return i == 0 || i == std::size_t(m_ - 1) ? 0.5 * h : h; };
    if (dim_ == 1) return axis(node);
    return axis(node % std::size_t(m_)) * axis(node / std::size_t(m_));
}

kernels::BoxShape Grid::box() const noexcept { return kernels::BoxShape{dim_, m_, spacing()}; }

FieldTuple::FieldTuple(std::size_t components, std::size_t nodes, double value)
    : n_(components), v_(components * nodes, value) {}

FieldTuple::FieldTuple(std::size_t components, std::vector<double> values) : n_(components), v_(std::move(values)) {
    if (components == 0 || v_.size() % components != 0)
        throw Error(ErrorKind::Dimension, "field storage is not a whole number of components");
    for (double x : v_)
        if (!std::isfinite(x)) throw Error(ErrorKind::Parameter, "field values must be finite");
}

double FieldTuple::min() const noexcept {
    return v_.empty() ? 0.0 : *std::min_element(v_.begin(), v_.end());
}

double FieldTuple::max_abs() const noexcept { return inf_norm(v_); }

std::vector<double> residual(const SymMatrix& B, const FieldTuple& u, double p, const Grid& grid,
                             kernels::Execution exec) {
    if (u.components() != B.size() || u.nodes() != grid.nodes())
        throw Error(ErrorKind::Dimension, "field shape does not match matrix and grid");
    std::vector<double> r(u.values().size());
    kernels::neumann_residual(B, p, grid.box(), u.values(), r, exec);
    return r;
}

EnergyReport energy(const SymMatrix& B, const FieldTuple& u, double p, const Grid& grid, kernels::Execution exec) {
    if (!(p > 2.0)) throw Error(ErrorKind::Parameter, "p must exceed 2");
    const auto r = residual(B, u, p, grid, exec);
    const std::size_t n = B.size(), N = grid.nodes();
    const int m = grid.points_per_side();
    const double h = grid.spacing();
    const double a = 0.5 * p - 1.0, b = 0.5 * p;

    CompensatedSum grad, neg, phi;
    std::vector<CompensatedSum> ident(n);
    auto edge_weight = [&](int i) { return i == 0 || i == m - 1 ? 0.5 * h : h; };
    for (std::size_t i = 0; i < n; ++i) {
        const auto c = u.component(i);
        if (grid.dim() == 1) {
            for (int k = 0; k + 1 < m; ++k) {
                const double d = c[std::size_t(k + 1)] - c[std::size_t(k)];
                grad += d * d / h;
            }
        } else {
            const auto s = std::size_t(m);
            for (int iy = 0; iy < m; ++iy)
                for (int ix = 0; ix + 1 < m; ++ix) {
                    const std::size_t k = std::size_t(iy) * s + std::size_t(ix);
                    const double dx = c[k + 1] - c[k];
                    grad += edge_weight(iy) * dx * dx / h;
                    const std::size_t t = std::size_t(ix) * s + std::size_t(iy);  // transposed edge along y
                    const double dy = c[t + s] - c[t];
                    grad += edge_weight(iy) * dy * dy / h;
                }
        }
        for (std::size_t k = 0; k < N; ++k) {
            const double v = std::min(c[k], 0.0);
            neg += grid.weight(k) * v * v;
        }
    }
    std::vector<double> pa(n), pb(n);
    for (std::size_t k = 0; k < N; ++k) {
        for (std::size_t j = 0; j < n; ++j) {
            const double v = u.component(j)[k];
            pa[j] = cone_power(v, a);
            pb[j] = cone_power(v, b);
        }
        const double wk = grid.weight(k);
        for (std::size_t i = 0; i < n; ++i) {
            CompensatedSum s;
            for (std::size_t j = 0; j < n; ++j) s += B(i, j) * pb[j];
            phi += wk * pb[i] * s.value();
            ident[i] += wk * pa[i] * s.value();
        }
    }

    EnergyReport rep;
    rep.dirichlet = grad.value() + neg.value();
    rep.phi = phi.value() / p;
    rep.energy = 0.5 * rep.dirichlet - rep.phi;
    rep.residual_inf = inf_norm(r);
    for (auto& s : ident) rep.identity_defects.push_back(s.value());
    return rep;
}

ConeVector find_direction_d(const SymMatrix& B, double p) {
    if (!(p > 2.0)) throw Error(ErrorKind::Parameter, "p must exceed 2");
    if (constant_solution(B, p))
        throw NotApplicableError(NotApplicableError::Reason::ConstantSolutionExists,
                                 "a constant solution exists; no interior direction is needed");
    const auto minimum = simplex_min_quadratic(B);
    if (!(minimum.min_value < 0.0))
        throw NotApplicableError(NotApplicableError::Reason::StrictlyCopositive,
                                 "the quadratic form is nonnegative on the cone");

    const std::size_t n = B.size();
    const double t_min = 2e-4 * double(n);
    std::optional<std::vector<double>> fallback;
    for (double t = 0.5; t >= t_min; t *= 0.5) {
        std::vector<double> c(n);
        for (std::size_t i = 0; i < n; ++i) c[i] = (1.0 - t) * minimum.argmin[i] + t / double(n);
        const double v = quadratic_form(B, c).value;
        if (v <= 0.5 * minimum.min_value) {
            fallback = c;
            break;
        }
        if (v < 0.0 && !fallback) fallback = c;
    }
    if (!fallback)
        throw NotApplicableError(NotApplicableError::Reason::NoRobustInteriorDirection,
                                 "no interior point with a negative quadratic form was found");
    std::vector<double> d(n);
    for (std::size_t i = 0; i < n; ++i) d[i] = std::pow((*fallback)[i], 2.0 / p);
    return ConeVector(d).max_normalized();
}

std::vector<std::vector<double>> bump_profiles(std::size_t n, const Grid& grid) {
    if (n == 0) throw Error(ErrorKind::Parameter, "need at least one component");
    const double L = grid.extent();
    const double width = n == 1 ? L : (1.0 - kGapFraction) * L / double(n);
    const double gap = n == 1 ? 0.0 : kGapFraction * L / double(n - 1);
    if (width / grid.spacing() < kMinBumpNodes)
        throw Error(ErrorKind::Capacity, "grid too coarse for " + std::to_string(n) + " disjoint bumps");

    std::vector<std::vector<double>> out(n, std::vector<double>(grid.nodes(), 0.0));
    for (std::size_t i = 0; i < n; ++i) {
        const double lo = double(i) * (width + gap);
        for (std::size_t k = 0; k < grid.nodes(); ++k) {
            const double x = grid.x(k) - lo;
            if (x < 0.0 || x >= width) continue;
            double v;
            if (i == 0) {
                v = std::cos(0.5 * std::numbers::pi * x / width);
            } else if (i == n - 1) {
                v = x <= 0.0 ? 0.0 : std::cos(0.5 * std::numbers::pi * (width - x) / width);
            } else {
                v = x <= 0.0 ? 0.0 : std::cos(std::numbers::pi * (x - 0.5 * width) / width);
            }
            out[i][k] = v * v;
        }
    }
    // the last strip ends at the wall, where x - lo == width
    if (n > 1) {
        const double lo = double(n - 1) * (width + gap);
        for (std::size_t k = 0; k < grid.nodes(); ++k)
            if (grid.x(k) - lo >= width) out[n - 1][k] = 1.0;
    }
    return out;
}

FieldTuple homotopy_seed(const ConeVector& c, const std::vector<std::vector<double>>& bumps, double t) {
    const std::size_t n = c.size();
    if (bumps.size() != n) throw Error(ErrorKind::Dimension, "one bump per component is required");
    if (!(t >= 0.0 && t <= 1.0)) throw Error(ErrorKind::Parameter, "homotopy parameter must lie in [0, 1]");
    const std::size_t N = bumps.front().size();
    FieldTuple u(n, N);
    for (std::size_t i = 0; i < n; ++i) {
        auto ui = u.component(i);
        for (std::size_t k = 0; k < N; ++k) ui[k] = (1.0 - t) * c[i] + t * c[i] * bumps[i][k];
    }
    return u;
}

std::vector<ThetaSeed> theta_seeds(const SymMatrix& B, const ConeVector& d, double p, const Grid& grid,
                                   std::size_t count) {
    const std::size_t n = B.size();
    if (d.size() != n) throw Error(ErrorKind::Dimension, "direction length does not match matrix dimension");
    if (!d.strictly_positive()) throw Error(ErrorKind::Parameter, "direction must be interior");
    if (count < n + 2) throw Error(ErrorKind::Parameter, "need at least n + 2 seeds");
    const auto bumps = bump_profiles(n, grid);
    const ConeVector dn = d.max_normalized();

    // E(s psi) = s^2 A / 2 - s^p Phi peaks at s^{p-2} = A / (p Phi)
    const auto rep = energy(B, homotopy_seed(dn, bumps, 1.0), p, grid, kernels::Execution::Serial);
    const double scale = rep.phi > 0.0 ? std::pow(rep.dirichlet / (p * rep.phi), 1.0 / (p - 2.0)) : 1.0;
    auto scaled = [&](double s) {
        std::vector<double> c(dn.values());
        for (double& v : c) v *= s;
        return ConeVector(c);
    };

    std::vector<std::vector<ThetaSeed>> families(4);
    for (double f : {1.0, 0.5, 2.0}) {
        families[0].push_back({homotopy_seed(scaled(f * scale), bumps, 1.0), "bump, amplitude " + format_g(f * scale),
                               f * scale});
        families[1].push_back({homotopy_seed(scaled(f * scale), bumps, 0.0),
                               "constant, lambda " + format_g(f * scale) + " times d", f * scale});
    }
    for (double t : {0.5, 0.25, 0.75})
        families[2].push_back({homotopy_seed(scaled(scale), bumps, t), "homotopy, t = " + format_g(t), scale});
    for (std::size_t i = 0; i < n; ++i) {
        std::vector<double> c(scaled(scale).values());
        c[i] = 0.0;
        families[3].push_back({homotopy_seed(ConeVector(c), bumps, 0.5),
                               "face homotopy, component " + std::to_string(i + 1) + " zero, t = 0.5", scale});
    }

    std::vector<ThetaSeed> out;
    for (std::size_t round = 0; out.size() < count; ++round) {
        bool any = false;
        for (auto& fam : families)
            if (round < fam.size() && out.size() < count) {
                out.push_back(fam[round]);
                any = true;
            }
        if (!any) break;
    }
    for (int k = 3; out.size() < count; ++k) {
        const double f = 1.0 + 0.5 * k;
        out.push_back({homotopy_seed(scaled(f * scale), bumps, 1.0), "bump, amplitude " + format_g(f * scale),
                       f * scale});
    }
    for (auto& s : out) s.amplitude = std::max(s.field.max_abs(), 1e-300);
    return out;
}

PolishResult newton_polish(const SymMatrix& B, double p, const Grid& grid, FieldTuple u, const SolverConfig& config) {
    if (u.components() != B.size() || u.nodes() != grid.nodes())
        throw Error(ErrorKind::Dimension, "field shape does not match matrix and grid");
    auto res = iterate(B, p, grid, std::move(u.values()), 0.0, 1e-3 * config.residual_tol, config.max_iterations,
                       config.exec);
    return PolishResult{FieldTuple(B.size(), std::move(res.u)), res.residual_inf, res.iterations};
}

NeumannOutcome mountain_pass_solve(const SymMatrix& B, const ProblemParams& params, const Grid& grid,
                                   const SolverConfig& config) {
    const std::size_t n = B.size();
    const double p = params.p();
    for (std::size_t i = 0; i < n; ++i)
        if (B(i, i) < 0.0) throw Error(ErrorKind::Precondition, "negative diagonal entry");
    ProblemParams(grid.dim(), p);

    if (auto cs = constant_solution(B, p)) {
        FieldTuple u(n, grid.nodes());
        for (std::size_t i = 0; i < n; ++i) std::fill(u.component(i).begin(), u.component(i).end(), cs->u[i]);
        NeumannSolution sol;
        sol.report = energy(B, u, p, grid, config.exec);
        sol.field = std::move(u);
        sol.classification = SolutionClass::Constant;
        sol.seed_provenance = "constant solution from the kernel of a principal submatrix";
        return sol;
    }

    ConeVector d;
    try {
        d = find_direction_d(B, p);
    } catch (const NotApplicableError&) {
        d = ConeVector(std::vector<double>(n, 1.0));
    }
    const auto seeds = theta_seeds(B, d, p, grid, std::max(config.seed_count, n + 2));

    std::vector<IterResult> runs(seeds.size());
    const auto inner = kernels::Execution::Serial;
    const int max_it = config.max_iterations;
    const double target = 1e-3 * config.residual_tol;
    if (config.exec == kernels::Execution::Parallel) {
#pragma omp parallel for schedule(dynamic, 1)
        for (long s = 0; s < long(seeds.size()); ++s) {
            const auto& seed = seeds[std::size_t(s)];
            runs[std::size_t(s)] = iterate(B, p, grid, seed.field.values(), config.nontriviality * seed.amplitude,
                                           target, max_it, inner);
        }
    } else {
        for (std::size_t s = 0; s < seeds.size(); ++s)
            runs[s] = iterate(B, p, grid, seeds[s].field.values(), config.nontriviality * seeds[s].amplitude, target,
                              max_it, inner);
    }

    std::optional<NeumannSolution> best;
    std::optional<std::size_t> best_failed;
    std::size_t collapsed = 0;
    for (std::size_t s = 0; s < runs.size(); ++s) {
        auto& run = runs[s];
        const double threshold = config.nontriviality * seeds[s].amplitude;
        if (run.status == IterStatus::Collapsed ||
            (run.status == IterStatus::Converged && inf_norm(run.u) <= threshold)) {
            ++collapsed;
            continue;
        }
        FieldTuple u(n, run.u);
        if (run.status == IterStatus::Converged && u.nonnegative(config.negativity_tol)) {
            for (double& v : u.values()) v = std::max(v, 0.0);
            auto rep = energy(B, u, p, grid, config.exec);
            if (rep.residual_inf < config.residual_tol) {
                NeumannSolution cand{std::move(u), std::move(rep), SolutionClass::Nonconstant, seeds[s].provenance};
                cand.classification = classify_field(cand.field);
                auto key = [](const NeumannSolution& x) { return std::make_pair(x.report.residual_inf, x.report.energy); };
                if (!best || key(cand) < key(*best) || (key(cand) == key(*best) && lex_less(cand.field, best->field)))
                    best = std::move(cand);
                continue;
            }
        }
        if (!best_failed || run.residual_inf < runs[*best_failed].residual_inf) best_failed = s;
    }
    if (best) return std::move(*best);
    if (!best_failed) return TrivialOnly{collapsed};
    NeumannInconclusive inc;
    inc.best_iterate = FieldTuple(n, runs[*best_failed].u);
    inc.report = energy(B, inc.best_iterate, p, grid, config.exec);
    inc.seed_provenance = seeds[*best_failed].provenance;
    inc.seeds = seeds.size();
    return inc;
}

FieldTuple prolongate(const FieldTuple& u, const Grid& from, const Grid& to) {
    if (from.dim() != to.dim() || from.extent() != to.extent())
        throw Error(ErrorKind::Parameter, "prolongation needs grids on the same box");
    if (u.nodes() != from.nodes()) throw Error(ErrorKind::Dimension, "field does not live on the source grid");
    const int m = from.points_per_side();
    const double h = from.spacing();
    auto locate = [&](double x) {
        const double s = x / h;
        const int i0 = std::clamp(int(std::floor(s)), 0, m - 2);
        return std::make_pair(i0, std::clamp(s - i0, 0.0, 1.0));
    };
    FieldTuple out(u.components(), to.nodes());
    for (std::size_t i = 0; i < u.components(); ++i) {
        const auto src = u.component(i);
        auto dst = out.component(i);
        for (std::size_t k = 0; k < to.nodes(); ++k) {
            const auto [ix, tx] = locate(to.x(k));
            if (to.dim() == 1) {
                dst[k] = tx == 0.0 ? src[std::size_t(ix)] : (1.0 - tx) * src[std::size_t(ix)] + tx * src[std::size_t(ix + 1)];
                continue;
            }
            const auto [iy, ty] = locate(to.y(k));
            const auto s = std::size_t(m);
            const std::size_t k00 = std::size_t(iy) * s + std::size_t(ix);
            dst[k] = (1.0 - ty) * ((1.0 - tx) * src[k00] + tx * src[k00 + 1]) +
                     ty * ((1.0 - tx) * src[k00 + s] + tx * src[k00 + s + 1]);
        }
    }
    return out;
}

std::pair<FieldTuple, Grid> reflect_tile(const FieldTuple& u, const Grid& grid, int copies) {
    if (copies < 1) throw Error(ErrorKind::Parameter, "copies must be at least 1");
    if (u.nodes() != grid.nodes()) throw Error(ErrorKind::Dimension, "field does not live on the grid");
    const int m = grid.points_per_side();
    const int period = 2 * (m - 1);
    const Grid big(grid.dim(), 2.0 * copies * grid.extent(), copies * period + 1);
    const int M = big.points_per_side();
    auto fold = [&](int k) {
        const int j = k % period;
        return std::size_t(j < m ? j : period - j);
    };
    FieldTuple out(u.components(), big.nodes());
    for (std::size_t i = 0; i < u.components(); ++i) {
        const auto src = u.component(i);
        auto dst = out.component(i);
        for (std::size_t k = 0; k < big.nodes(); ++k) {
            if (grid.dim() == 1) {
                dst[k] = src[fold(int(k))];
            } else {
                const int ix = int(k % std::size_t(M)), iy = int(k / std::size_t(M));
                dst[k] = src[fold(iy) * std::size_t(m) + fold(ix)];
            }
        }
    }
    return {std::move(out), big};
}

void write_csv(std::ostream& out, const FieldTuple& u, const Grid& grid) {
    out << (grid.dim() == 1 ? "x" : "x,y");
    for (std::size_t i = 0; i < u.components(); ++i) out << ",u" << i + 1;
    out << '\n';
    char buf[40];
    auto put = [&](double v) {
        std::snprintf(buf, sizeof buf, "%.17g", v);
        out << buf;
    };
    for (std::size_t k = 0; k < grid.nodes(); ++k) {
        put(grid.x(k));
        if (grid.dim() == 2) {
            out << ',';
            put(grid.y(k));
        }
        for (std::size_t i = 0; i < u.components(); ++i) {
            out << ',';
            put(u.component(i)[k]);
        }
        out << '\n';
    }
}

std::string_view to_string(SolutionClass c) {
    return c == SolutionClass::Constant ? "Constant" : "Nonconstant";
}

}  // namespace coposolve
