#include "coposolve/p_copositivity.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "coposolve/copositivity.hpp"
#include "coposolve/kernels.hpp"
#include "coposolve/lp.hpp"
#include "coposolve/summation.hpp"

namespace coposolve {
namespace {

constexpr std::size_t kMaxViolators = 8;
constexpr double kDistinctPoint = 1e-6;

double max_distance(std::span<const double> a, std::span<const double> b) {
    double d = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) d = std::max(d, std::abs(a[i] - b[i]));
    return d;
}

bool point_less(const LocalMinimum& a, const LocalMinimum& b) {
    if (a.value != b.value) return a.value < b.value;
    return std::lexicographical_compare(a.point.begin(), a.point.end(), b.point.begin(), b.point.end());
}

/// Certification requires the estimated minimum to clear rounding noise.
double certify_floor(const SymMatrix& B) { return 1e-12 * std::max(1.0, B.max_abs_entry()); }

struct StageResult {
    LocalMinimum form_min;
    LocalMinimum ratio_min;
    std::vector<LocalMinimum> local_minima;  // sorted, from the form descents
    VerificationInfo info;
};

std::vector<std::vector<double>> structural_points(std::size_t n) {
    std::vector<std::vector<double>> pts;
    for (std::size_t i = 0; i < n; ++i) {
        std::vector<double> v(n, 0.0);
        v[i] = 1.0;
        pts.push_back(std::move(v));
    }
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) {
            std::vector<double> v(n, 0.0);
            v[i] = v[j] = 0.5;
            pts.push_back(std::move(v));
        }
    return pts;
}

std::vector<LocalMinimum> run_descents(const SimplexObjective& f, const std::vector<std::vector<double>>& starts,
                                       const DescentOptions& opts) {
    std::vector<LocalMinimum> out(starts.size());
#pragma omp parallel for schedule(dynamic, 1)
    for (long s = 0; s < long(starts.size()); ++s) out[std::size_t(s)] = minimize_on_simplex(f, starts[std::size_t(s)], opts);
    return out;
}

StageResult verify_stage(const SymMatrix& B, const ConeVector& mu, double p, int resolution,
                         const VerifyOptions& opt) {
    const std::size_t n = B.size();
    const std::size_t keep = std::size_t(std::max(opt.multistarts, 1));
    std::vector<std::vector<double>> form_starts, ratio_starts;
    StageResult out;
    out.info.grid_resolution = resolution;
    out.info.local_tolerance = opt.descent.step_tolerance;

    const double full = kernels::grid_point_count(n, resolution);
    if (full <= opt.max_grid_points) {
        const auto scan = kernels::scan_p_form_grid(B, mu.components(), p, resolution, keep, kernels::Execution::Parallel);
        auto to_point = [&](const kernels::GridPoint& g) {
            std::vector<double> v(n);
            for (std::size_t i = 0; i < n; ++i) v[i] = double(g.counts[i]) / resolution;
            return v;
        };
        for (const auto& g : scan.best_form) form_starts.push_back(to_point(g));
        for (const auto& g : scan.best_ratio) ratio_starts.push_back(to_point(g));
        out.info.grid_points = scan.points;
    } else {
        const auto count = std::size_t(opt.max_grid_points);
        auto pts = sample_simplex(n, count, opt.seed + std::uint64_t(resolution));
        const auto scan = kernels::scan_p_form_points(B, mu.components(), p, pts, keep, kernels::Execution::Parallel);
        auto at = [&](std::size_t k) { return std::vector<double>(pts.begin() + long(k * n), pts.begin() + long((k + 1) * n)); };
        for (std::size_t k : scan.best_form) form_starts.push_back(at(k));
        for (std::size_t k : scan.best_ratio) ratio_starts.push_back(at(k));
        out.info.grid_points = count;
        out.info.sampled = true;
    }
    for (auto& s : structural_points(n)) {
        form_starts.push_back(s);
        ratio_starts.push_back(std::move(s));
    }
    out.info.multistart_count = int(form_starts.size());

    const SimplexObjective form = [&](std::span<const double> c, std::span<double> grad) {
        const auto v = p_form(B, ConeVector(std::vector<double>(c.begin(), c.end())), mu, p, true);
        std::copy(v.gradient->begin(), v.gradient->end(), grad.begin());
        return v.value;
    };
    const SimplexObjective ratio = [&](std::span<const double> c, std::span<double> grad) {
        const auto v = p_form(B, ConeVector(std::vector<double>(c.begin(), c.end())), mu, p, true);
        CompensatedSum q_sum;
        for (std::size_t i = 0; i < n; ++i) q_sum += mu[i] * c[i];
        const double q = q_sum.value();
        const double scale = std::pow(q, -(p - 1.0));
        const double g = v.value * scale;
        for (std::size_t i = 0; i < n; ++i) grad[i] = (*v.gradient)[i] * scale - (p - 1.0) * g / q * mu[i];
        return g;
    };

    // Starting points are candidates too: the descent only ever lowers them.
    auto evaluate_starts = [&](const SimplexObjective& f, const std::vector<std::vector<double>>& starts) {
        std::vector<LocalMinimum> mins = run_descents(f, starts, opt.descent);
        std::vector<double> dummy(n);
        for (const auto& s : starts) mins.push_back(LocalMinimum{s, f(s, dummy), 0});
        std::sort(mins.begin(), mins.end(), point_less);
        return mins;
    };
    auto form_mins = evaluate_starts(form, form_starts);
    auto ratio_mins = evaluate_starts(ratio, ratio_starts);
    out.form_min = form_mins.front();
    out.ratio_min = ratio_mins.front();
    out.local_minima = std::move(form_mins);
    return out;
}

}  // namespace

MuVerification verify_mu(const SymMatrix& B, const ConeVector& mu_in, double p, int resolution,
                         const VerifyOptions& options) {
    const std::size_t n = B.size();
    if (mu_in.size() != n) throw Error(ErrorKind::Dimension, "weight length does not match matrix dimension");
    if (!mu_in.strictly_positive()) throw Error(ErrorKind::Parameter, "weight must have strictly positive components");
    if (!(p > 2.0)) throw Error(ErrorKind::Parameter, "p must exceed 2");
    if (resolution < 16) throw Error(ErrorKind::Parameter, "verification resolution must be at least 16");

    const ConeVector mu = mu_in.max_normalized();
    const double floor = certify_floor(B);

    auto violation = [&](const StageResult& st) {
        MuViolation v;
        v.mu = mu;
        v.point = ConeVector(st.form_min.point);
        v.value = st.form_min.value;
        v.verification = st.info;
        for (const auto& m : st.local_minima) {
            if (m.value > floor || v.violators.size() >= kMaxViolators) break;
            const bool dup = std::any_of(v.violators.begin(), v.violators.end(), [&](const ConeVector& c) {
                return max_distance(c.components(), m.point) < kDistinctPoint;
            });
            if (!dup) v.violators.emplace_back(m.point);
        }
        return v;
    };

    StageResult stage = verify_stage(B, mu, p, resolution, options);
    if (!(stage.form_min.value > floor)) return violation(stage);

    LocalMinimum form_min = stage.form_min, ratio_min = stage.ratio_min;
    if (options.refine) {
        StageResult fine = verify_stage(B, mu, p, 4 * resolution, options);
        if (!(fine.form_min.value > floor)) return violation(fine);
        if (point_less(fine.form_min, form_min)) form_min = fine.form_min;
        if (point_less(fine.ratio_min, ratio_min)) ratio_min = fine.ratio_min;
        stage.info = fine.info;
    }
    MuCertificate cert;
    cert.mu = mu;
    cert.min_on_simplex = form_min.value;
    cert.worst_point = ConeVector(form_min.point);
    cert.kappa = ratio_min.value;
    cert.verification = stage.info;
    if (!(cert.kappa > 0.0)) return violation(stage);
    return cert;
}

MarginLp solve_margin_lp(const SymMatrix& B, double p, const std::vector<ConeVector>& points, double mu_floor) {
    const std::size_t n = B.size();
    if (points.empty()) throw Error(ErrorKind::Parameter, "margin LP needs at least one point");
    const double a = 0.5 * p - 1.0, b = 0.5 * p;

    // F[c][i] = c_i^a (B c^b)_i, so f_mu(c) = sum_i mu_i F[c][i]
    std::vector<std::vector<double>> F(points.size(), std::vector<double>(n));
    for (std::size_t k = 0; k < points.size(); ++k) {
        const auto& c = points[k];
        if (c.size() != n) throw Error(ErrorKind::Dimension, "point length does not match matrix dimension");
        for (std::size_t i = 0; i < n; ++i) {
            CompensatedSum s;
            for (std::size_t j = 0; j < n; ++j) s += B(i, j) * cone_power(c[j], b);
            F[k][i] = cone_power(c[i], a) * s.value();
        }
    }
    double abs_sum = 0.0;
    for (double v : B.entries()) abs_sum += std::abs(v);
    const double shift = 2.0 * abs_sum + 1.0;  // t = z - shift with z >= 0

    MarginLp best;
    bool have = false;
    for (std::size_t unit = 0; unit < n; ++unit) {
        // variables: y_i (i != unit) with mu_i = mu_floor + y_i, then z
        lp::Problem prob;
        const std::size_t nv = n;  // n - 1 weights + z
        prob.c.assign(nv, 0.0);
        prob.c[nv - 1] = 1.0;
        for (std::size_t k = 0; k < points.size(); ++k) {
            std::vector<double> row(nv, 0.0);
            double rhs = shift + F[k][unit];
            std::size_t col = 0;
            for (std::size_t i = 0; i < n; ++i) {
                if (i == unit) continue;
                row[col++] = -F[k][i];
                rhs += mu_floor * F[k][i];
            }
            row[nv - 1] = 1.0;
            prob.A.push_back(std::move(row));
            prob.b.push_back(std::max(rhs, 0.0));
        }
        for (std::size_t col = 0; col + 1 < nv; ++col) {
            std::vector<double> row(nv, 0.0);
            row[col] = 1.0;
            prob.A.push_back(std::move(row));
            prob.b.push_back(1.0 - mu_floor);
        }
        const auto sol = lp::maximize(prob);
        if (sol.status != lp::Status::Optimal) continue;

        std::vector<double> mu(n);
        std::size_t col = 0;
        for (std::size_t i = 0; i < n; ++i)
            mu[i] = i == unit ? 1.0 : std::clamp(mu_floor + sol.x[col++], mu_floor, 1.0);
        const ConeVector weight(mu);
        double margin = 0.0;
        for (std::size_t k = 0; k < points.size(); ++k) {
            CompensatedSum s;
            for (std::size_t i = 0; i < n; ++i) s += mu[i] * F[k][i];
            margin = k == 0 ? s.value() : std::min(margin, s.value());
        }
        if (!have || margin > best.margin) {
            best = MarginLp{weight, margin};
            have = true;
        }
    }
    if (!have) throw Error(ErrorKind::InternalConsistency, "margin LP failed for every normalization");
    return best;
}

MuSearchOutcome find_mu(const SymMatrix& B, double p, const MuSearchBudget& budget) {
    const std::size_t n = B.size();
    if (!(p > 2.0)) throw Error(ErrorKind::Parameter, "p must exceed 2");
    if (n > kMaxOracleDimension)
        throw Error(ErrorKind::Capacity, "weight search supports n <= 16, got n = " + std::to_string(n));

    std::vector<ConeVector> A;
    for (std::size_t i = 0; i < n; ++i) {
        std::vector<double> e(n, 0.0);
        e[i] = 1.0;
        A.emplace_back(std::move(e));
    }
    A.emplace_back(std::vector<double>(n, 1.0 / double(n)));

    VerifyOptions vopt;
    vopt.seed = budget.seed;
    MuSearchInconclusive last;
    for (int it = 1; it <= budget.max_iterations; ++it) {
        const MarginLp lp = solve_margin_lp(B, p, A, budget.mu_floor);
        if (lp.margin <= budget.lp_margin_tol) return MuSearchFailure{A, lp.mu, lp.margin, it};

        auto verdict = verify_mu(B, lp.mu, p, budget.resolution, vopt);
        if (auto* cert = std::get_if<MuCertificate>(&verdict)) return std::move(*cert);
        const auto& viol = std::get<MuViolation>(verdict);

        std::size_t added = 0;
        auto consider = [&](const ConeVector& c) {
            const bool dup = std::any_of(A.begin(), A.end(), [&](const ConeVector& a) {
                return max_distance(a.components(), c.components()) < 1e-12;
            });
            if (!dup) {
                A.push_back(c.on_simplex());
                ++added;
            }
        };
        consider(viol.point);
        for (const auto& c : viol.violators) consider(c);

        last = MuSearchInconclusive{A, lp.mu, lp.margin, viol.value, it};
        if (added == 0) break;
    }
    last.adversarial_set = A;
    return last;
}

ConeVector constructive_mu_n2(const SymMatrix& B, double p) {
    if (B.size() != 2) throw Error(ErrorKind::Parameter, "constructive weight is defined for n = 2");
    if (!(p > 2.0)) throw Error(ErrorKind::Parameter, "p must exceed 2");
    if (!strict_copositivity_closed_form(B).strictly_copositive)
        throw Error(ErrorKind::Precondition, "matrix is not strictly copositive");
    return ConeVector{std::pow(B(0, 0), -1.0 / p), std::pow(B(1, 1), -1.0 / p)};
}

std::optional<double> sufficient_condition(const SymMatrix& B) {
    const auto neg = negative_part_row_sums(B);
    double kappa0 = 0.0;
    for (std::size_t i = 0; i < B.size(); ++i) {
        if (!(B(i, i) > 0.0)) return std::nullopt;
        const double row = B(i, i) + neg[i];
        kappa0 = i == 0 ? row : std::min(kappa0, row);
    }
    if (!(kappa0 > 0.0)) return std::nullopt;
    return kappa0;
}

SymMatrix b_epsilon(double eps) {
    if (!(eps > 0.0)) throw Error(ErrorKind::Parameter, "eps must be positive");
    const double off = -1.0 + eps;
    return SymMatrix{{1.0, off, off}, {off, 1.0, 1.0}, {off, 1.0, 1.0}};
}

double b_epsilon_limit_form(const ConeVector& c) {
    if (c.size() != 3) throw Error(ErrorKind::Parameter, "the limit form is defined on three components");
    const double c1 = c[0], c2 = c[1], c3 = c[2];
    CompensatedSum s;
    s += c1 * c1 * c1 - c1 * c2 * c2 - c1 * c3 * c3;
    s += -c1 * c1 * c2 + c2 * c2 * c2 + c2 * c3 * c3;
    s += -c1 * c1 * c3 + c2 * c2 * c3 + c3 * c3 * c3;
    return s.value();
}

}  // namespace coposolve
