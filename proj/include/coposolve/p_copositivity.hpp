#pragma once

#include <cstdint>
#include <optional>
#include <variant>
#include <vector>

#include "coposolve/cone_core.hpp"
#include "coposolve/simplex_tools.hpp"

namespace coposolve {

/// How a weight was checked: grid resolution of the final pass, number of
/// local descents, their step tolerance, and whether the grid had to be
/// replaced by random samples because it was too large.
struct VerificationInfo {
    int grid_resolution = 0;
    int multistart_count = 0;
    double local_tolerance = 0.0;
    std::uint64_t grid_points = 0;
    bool sampled = false;

    friend bool operator==(const VerificationInfo&, const VerificationInfo&) = default;
};

/// Weight mu (max component 1) under which the degree-(p-1) form is positive
/// on the cone, with kappa = min over the simplex of f_mu(c) / (mu.c)^{p-1}.
struct MuCertificate {
    ConeVector mu;
    double kappa = 0.0;
    double min_on_simplex = 0.0;
    ConeVector worst_point;
    VerificationInfo verification;

    friend bool operator==(const MuCertificate&, const MuCertificate&) = default;
};

/// A simplex point where f_mu is not positive, plus every other distinct
/// nonpositive local minimum found on the way.
struct MuViolation {
    ConeVector mu;
    ConeVector point;
    double value = 0.0;
    std::vector<ConeVector> violators;
    VerificationInfo verification;
};

using MuVerification = std::variant<MuCertificate, MuViolation>;

struct VerifyOptions {
    int multistarts = 32;
    bool refine = true;  // repeat once at 4x the resolution before certifying
    double max_grid_points = 2e5;
    std::uint64_t seed = 0;
    DescentOptions descent{};
};

MuVerification verify_mu(const SymMatrix& B, const ConeVector& mu, double p, int resolution,
                         const VerifyOptions& options = {});

struct MuSearchBudget {
    int max_iterations = 50;
    double lp_margin_tol = 1e-7;
    int resolution = 64;
    std::uint64_t seed = 0;
    double mu_floor = 1e-6;
};

/// The finitely-cut LP already blocks every weight: best_margin is
/// min over adversarial_set of f_mu for the LP's best mu.
struct MuSearchFailure {
    std::vector<ConeVector> adversarial_set;
    ConeVector mu;
    double best_margin = 0.0;
    int iterations = 0;
};

/// Budget exhausted without a certificate or a blocking LP.
struct MuSearchInconclusive {
    std::vector<ConeVector> adversarial_set;
    ConeVector mu;
    double lp_margin = 0.0;
    double verified_min = 0.0;
    int iterations = 0;
};

using MuSearchOutcome = std::variant<MuCertificate, MuSearchFailure, MuSearchInconclusive>;

/// Cutting-plane search for a weight certifying strict (p-1)-copositivity.
MuSearchOutcome find_mu(const SymMatrix& B, double p, const MuSearchBudget& budget = {});

struct MarginLp {
    ConeVector mu;   // max component 1, all components >= mu_floor
    double margin = 0.0;  // min over the point set of f_mu
};

/// maximize t s.t. f_mu(c) >= t for every c in `points`, mu_floor <= mu_i <= 1,
/// max_i mu_i = 1 (one LP per choice of the unit component).
MarginLp solve_margin_lp(const SymMatrix& B, double p, const std::vector<ConeVector>& points,
                         double mu_floor = 1e-6);

/// mu = (b_11^{-1/p}, b_22^{-1/p}) for a strictly copositive 2 x 2 matrix.
ConeVector constructive_mu_n2(const SymMatrix& B, double p);

/// kappa0 = min_i (b_ii + sum_{j != i} min{b_ij, 0}) when every b_ii > 0 and
/// kappa0 > 0; the unit weight then satisfies f_1(c) >= kappa0 sum c_i^{p-1}.
std::optional<double> sufficient_condition(const SymMatrix& B);

/// Unit diagonal, b_12 = b_13 = -1 + eps, b_23 = 1: strictly copositive for
/// every eps > 0, but without a cubic weight once eps is small.
SymMatrix b_epsilon(double eps);

/// f_mu(c) for the eps -> 0 limit of b_epsilon with mu = (1, 1, 1), p = 4,
/// written out as the explicit cubic polynomial.
double b_epsilon_limit_form(const ConeVector& c);

}  // namespace coposolve
