#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "coposolve/cone_core.hpp"
#include "coposolve/copositivity.hpp"
#include "coposolve/p_copositivity.hpp"

namespace coposolve {

/// Space dimension N and nonlinearity degree p of
///   -Lap u_i = sum_j b_ij u_j^{p/2} u_i^{p/2-1}   on R^N.
class ProblemParams {
public:
    ProblemParams(int N, double p);

    int N() const noexcept { return N_; }
    double p() const noexcept { return p_; }

    /// p <= (2N-2)/(N-2) for N >= 3, always true for N <= 2.
    bool weighted_range() const noexcept;

private:
    int N_;
    double p_;
};

/// Constant solution u_i = c_i^{2/p} from c > 0 on `support` with B_S c_S = 0.
struct ConstantSolution {
    ConeVector u;
    ConeVector c;
    std::vector<std::size_t> support;
    double residual = 0.0;  // max_i |sum_j b_ij u_j^{p/2} u_i^{p/2-1}|
};

/// Smallest-support constant solution, or none.
std::optional<ConstantSolution> constant_solution(const SymMatrix& B, double p);

/// max_i |sum_j b_ij u_j^{p/2} u_i^{p/2-1}| for a constant field u.
double constant_residual(const SymMatrix& B, const ConeVector& u, double p);

enum class SolvabilityKind { ExistsNontrivial, NoNontrivial, Unknown };

enum class SolvabilityReason {
    ConstantSolution,
    ZeroDiagonal,
    NotStrictlyCopositive,
    LowDimensionStrictCopositivity,
    TwoComponentCriterion,
    DominantDiagonalCriterion,
    WeightedCopositivityCertificate,
    OpenGap,
};

/// Simplex point with its quadratic-form value, certifying the sign of b.
struct CopositivityWitness {
    ConeVector witness;
    double min_value = 0.0;

    friend bool operator==(const CopositivityWitness&, const CopositivityWitness&) = default;
};

struct DominantDiagonal {
    double kappa0 = 0.0;

    friend bool operator==(const DominantDiagonal&, const DominantDiagonal&) = default;
};

using SolvabilityCertificate =
    std::variant<std::monostate, ConstantSolution, CopositivityWitness, DominantDiagonal, MuCertificate>;

struct SolvabilityVerdict {
    SolvabilityKind kind = SolvabilityKind::Unknown;
    SolvabilityReason reason = SolvabilityReason::OpenGap;
    SolvabilityCertificate certificate;
    bool boundary = false;  // oracle minimum fell in the copositivity dead-band
    double copositivity_min = 0.0;
    std::optional<MuSearchOutcome> search;  // weight search, when one ran
    std::string note;
};

SolvabilityVerdict classify_solvability(const SymMatrix& B, const ProblemParams& params,
                                        const MuSearchBudget& budget = {}, Tolerance tol = Tolerance{});

std::string_view to_string(SolvabilityKind kind);
std::string_view to_string(SolvabilityReason reason);

}  // namespace coposolve
