#include "coposolve/solvability.hpp"

#include <algorithm>
#include <bit>
#include <cmath>

#include <Eigen/SVD>

#include "coposolve/summation.hpp"

namespace coposolve {
namespace {

constexpr double kThresholdTol = 1e-12;
constexpr double kKernelTol = 1e-12;

}  // namespace

ProblemParams::ProblemParams(int N, double p) : N_(N), p_(p) {
    if (N < 1) throw Error(ErrorKind::Parameter, "space dimension N must be at least 1");
    if (!std::isfinite(p) || !(p > 2.0)) throw Error(ErrorKind::Parameter, "p must exceed 2");
    // p < 2N/(N-2), cross-multiplied
    if (N >= 3 && !(p * (N - 2) < 2.0 * N - kThresholdTol))
        throw Error(ErrorKind::Parameter, "p must be subcritical: p < 2N/(N-2) = " + std::to_string(2.0 * N / (N - 2)));
}

bool ProblemParams::weighted_range() const noexcept {
    if (N_ <= 2) return true;
    return p_ * (N_ - 2) <= 2.0 * N_ - 2.0 + kThresholdTol;
}

double constant_residual(const SymMatrix& B, const ConeVector& u, double p) {
    const std::size_t n = B.size();
    if (u.size() != n) throw Error(ErrorKind::Dimension, "field length does not match matrix dimension");
    double worst = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        CompensatedSum s;
        for (std::size_t j = 0; j < n; ++j) s += B(i, j) * cone_power(u[j], 0.5 * p);
        worst = std::max(worst, std::abs(cone_power(u[i], 0.5 * p - 1.0) * s.value()));
    }
    return worst;
}

std::optional<ConstantSolution> constant_solution(const SymMatrix& B, double p) {
    const std::size_t n = B.size();
    if (!(p > 2.0)) throw Error(ErrorKind::Parameter, "p must exceed 2");
    if (n > kMaxOracleDimension)
        throw Error(ErrorKind::Capacity, "constant-solution search supports n <= 16, got n = " + std::to_string(n));

    std::vector<unsigned long> masks;
    for (unsigned long m = 1; m < (1ul << n); ++m) masks.push_back(m);
    std::stable_sort(masks.begin(), masks.end(),
                     [](unsigned long a, unsigned long b) { return std::popcount(a) < std::popcount(b); });

    for (unsigned long mask : masks) {
        const auto S = support_indices(mask);
        const auto k = Eigen::Index(S.size());
        Eigen::MatrixXd M(k, k);
        double scale = 0.0;
        for (Eigen::Index a = 0; a < k; ++a)
            for (Eigen::Index b = 0; b < k; ++b) {
                M(a, b) = B(S[std::size_t(a)], S[std::size_t(b)]);
                scale = std::max(scale, std::abs(M(a, b)));
            }
        Eigen::JacobiSVD<Eigen::MatrixXd> svd(M, Eigen::ComputeFullV);
        const auto& sv = svd.singularValues();
        const double cut = kKernelTol * std::max(1.0, scale);
        if (sv(k - 1) > cut) continue;
        if (k >= 2 && sv(k - 2) <= cut) continue;  // a smaller support carries the solution

        Eigen::VectorXd v = svd.matrixV().col(k - 1);
        if (v.sum() < 0.0) v = -v;
        if (!(v.minCoeff() > 0.0)) continue;
        v /= v.maxCoeff();

        std::vector<double> c(n, 0.0), u(n, 0.0);
        for (Eigen::Index a = 0; a < k; ++a) {
            c[S[std::size_t(a)]] = v(a);
            u[S[std::size_t(a)]] = std::pow(v(a), 2.0 / p);
        }
        ConstantSolution sol{ConeVector(u), ConeVector(c), S, 0.0};
        sol.residual = constant_residual(B, sol.u, p);
        return sol;
    }
    return std::nullopt;
}

SolvabilityVerdict classify_solvability(const SymMatrix& B, const ProblemParams& params, const MuSearchBudget& budget,
                                        Tolerance tol) {
    const std::size_t n = B.size();
    for (std::size_t i = 0; i < n; ++i)
        if (B(i, i) < 0.0)
            throw Error(ErrorKind::Precondition, "negative diagonal entry b_" + std::to_string(i + 1) +
                                                     std::to_string(i + 1) + " is outside the standing assumptions");
    const double p = params.p();
    const int N = params.N();
    SolvabilityVerdict v;

    if (auto sol = constant_solution(B, p)) {
        v.kind = SolvabilityKind::ExistsNontrivial;
        v.reason = sol->support.size() == 1 && B(sol->support[0], sol->support[0]) == 0.0
                       ? SolvabilityReason::ZeroDiagonal
                       : SolvabilityReason::ConstantSolution;
        v.certificate = std::move(*sol);
        return v;
    }

    const auto cop = classify_copositivity(B, tol);
    v.boundary = cop.boundary_case;
    v.copositivity_min = cop.min_value;
    const bool strict = cop.kind == CopositivityKind::StrictlyCopositive || (cop.boundary_case && cop.min_value > 0.0);
    if (!strict) {
        v.kind = SolvabilityKind::ExistsNontrivial;
        v.reason = SolvabilityReason::NotStrictlyCopositive;
        v.certificate = CopositivityWitness{cop.witness, cop.min_value};
        return v;
    }

    if (N <= 2 && p <= 4.0 + kThresholdTol) {
        v.kind = SolvabilityKind::NoNontrivial;
        v.reason = SolvabilityReason::LowDimensionStrictCopositivity;
        v.certificate = CopositivityWitness{cop.witness, cop.min_value};
        return v;
    }

    if (!params.weighted_range()) {
        v.note = "p exceeds (2N-2)/(N-2): no weighted-copositivity criterion applies in this range";
        return v;
    }

    if (n == 2) {
        const ConeVector mu = constructive_mu_n2(B, p);
        auto check = verify_mu(B, mu, p, budget.resolution);
        if (auto* cert = std::get_if<MuCertificate>(&check)) {
            v.kind = SolvabilityKind::NoNontrivial;
            v.reason = SolvabilityReason::TwoComponentCriterion;
            v.certificate = std::move(*cert);
            return v;
        }
        throw Error(ErrorKind::InternalConsistency, "constructive two-component weight failed verification");
    }

    if (auto kappa0 = sufficient_condition(B)) {
        v.kind = SolvabilityKind::NoNontrivial;
        v.reason = SolvabilityReason::DominantDiagonalCriterion;
        v.certificate = DominantDiagonal{*kappa0};
        return v;
    }

    auto search = find_mu(B, p, budget);
    if (auto* cert = std::get_if<MuCertificate>(&search)) {
        v.kind = SolvabilityKind::NoNontrivial;
        v.reason = SolvabilityReason::WeightedCopositivityCertificate;
        v.certificate = *cert;
        v.search = std::move(search);
        return v;
    }
    v.search = std::move(search);
    v.note = "strictly copositive without a verified weight; strict copositivity is conjectured to suffice "
             "for nonexistence when N = 3, as it does for N <= 2";
    return v;
}

std::string_view to_string(SolvabilityKind kind) {
    switch (kind) {
        case SolvabilityKind::ExistsNontrivial: return "ExistsNontrivial";
        case SolvabilityKind::NoNontrivial: return "NoNontrivial";
        case SolvabilityKind::Unknown: return "Unknown";
    }
    return "?";
}

std::string_view to_string(SolvabilityReason reason) {
    switch (reason) {
        case SolvabilityReason::ConstantSolution: return "ConstantSolution";
        case SolvabilityReason::ZeroDiagonal: return "ZeroDiagonal";
        case SolvabilityReason::NotStrictlyCopositive: return "NotStrictlyCopositive";
        case SolvabilityReason::LowDimensionStrictCopositivity: return "LowDimensionStrictCopositivity";
        case SolvabilityReason::TwoComponentCriterion: return "TwoComponentCriterion";
        case SolvabilityReason::DominantDiagonalCriterion: return "DominantDiagonalCriterion";
        case SolvabilityReason::WeightedCopositivityCertificate: return "WeightedCopositivityCertificate";
        case SolvabilityReason::OpenGap: return "OpenGap";
    }
    return "?";
}

}  // namespace coposolve
