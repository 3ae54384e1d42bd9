#include "coposolve/copositivity.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include <Eigen/Eigenvalues>

namespace coposolve {

Tolerance::Tolerance(double tol) : tol_(tol) {
    if (!(tol > 0.0 && tol < 1e-3)) throw Error(ErrorKind::Parameter, "tolerance must lie in (0, 1e-3)");
}

SimplexMinimum simplex_min_quadratic(const SymMatrix& B, kernels::Execution exec) {
    const std::size_t n = B.size();
    if (n > kMaxOracleDimension)
        throw Error(ErrorKind::Capacity, "face enumeration supports n <= 16, got n = " + std::to_string(n));

    const auto candidates = kernels::face_candidates(B, exec);
    const kernels::FaceCandidate* best = nullptr;
    bool grid_assisted = false;
    for (const auto& cand : candidates) {
        using S = kernels::FaceCandidate::Status;
        if (cand.status == S::GridAssisted || cand.status == S::FlatSkipped) grid_assisted = true;
        if (!cand.usable()) continue;
        if (best == nullptr || cand.value < best->value ||
            (cand.value == best->value &&
             std::lexicographical_compare(cand.point.begin(), cand.point.end(), best->point.begin(), best->point.end())))
            best = &cand;
    }
    // vertices are always usable, so best is set
    return SimplexMinimum{best->value, ConeVector(best->point), grid_assisted};
}

ClosedFormResult strict_copositivity_closed_form(const SymMatrix& B) {
    const std::size_t n = B.size();
    if (n != 2 && n != 3)
        throw Error(ErrorKind::Capacity, "closed-form test is available for n = 2 and n = 3 only");
    for (std::size_t i = 0; i < n; ++i)
        if (B(i, i) < 0.0) return {false, std::nullopt};

    if (n == 2) {
        const bool ok = B(0, 0) > 0.0 && B(1, 1) > 0.0 && B(0, 1) > -std::sqrt(B(0, 0) * B(1, 1));
        return {ok, std::nullopt};
    }

    const double s1 = std::sqrt(B(0, 0)), s2 = std::sqrt(B(1, 1)), s3 = std::sqrt(B(2, 2));
    const double a12 = B(0, 1) + s1 * s2;
    const double a13 = B(0, 2) + s1 * s3;
    const double a23 = B(1, 2) + s2 * s3;
    const bool diagonal = B(0, 0) > 0.0 && B(1, 1) > 0.0 && B(2, 2) > 0.0;
    const bool pairs = a12 > 0.0 && a13 > 0.0 && a23 > 0.0;
    if (!diagonal || !pairs) return {false, std::nullopt};
    const double diagnostic = s1 * s2 * s3 + B(0, 1) * s3 + B(0, 2) * s2 + B(1, 2) * s1 +
                              std::sqrt(2.0 * a12 * a13 * a23);
    return {diagnostic > 0.0, diagnostic};
}

CopositivityVerdict classify_copositivity(const SymMatrix& B, Tolerance tol) {
    const auto minimum = simplex_min_quadratic(B);
    CopositivityVerdict v;
    v.witness = minimum.argmin;
    v.min_value = minimum.min_value;
    v.grid_assisted = minimum.grid_assisted;
    v.method = CopositivityMethod::FaceEnumeration;

    const double t = tol.value();
    if (v.min_value < -t) {
        v.kind = CopositivityKind::NotCopositive;
    } else if (v.min_value > t) {
        v.kind = CopositivityKind::StrictlyCopositive;
    } else {
        v.kind = CopositivityKind::CopositiveNotStrict;
        v.boundary_case = true;
    }

    const std::size_t n = B.size();
    if (n == 2 || n == 3) {
        const bool closed = strict_copositivity_closed_form(B).strictly_copositive;
        if (!v.boundary_case && closed != (v.kind == CopositivityKind::StrictlyCopositive))
            throw Error(ErrorKind::InternalConsistency,
                        "closed-form and face-enumeration copositivity disagree (min " + std::to_string(v.min_value) +
                            ")");
        v.method = n == 2 ? CopositivityMethod::ClosedForm2 : CopositivityMethod::ClosedForm3;
    }
    return v;
}

Definiteness check_psd(const SymMatrix& B, Tolerance tol) {
    const auto n = Eigen::Index(B.size());
    Eigen::MatrixXd M(n, n);
    for (Eigen::Index i = 0; i < n; ++i)
        for (Eigen::Index j = 0; j < n; ++j) M(i, j) = B(std::size_t(i), std::size_t(j));
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(M, Eigen::EigenvaluesOnly);
    const double lmin = es.eigenvalues().minCoeff();
    if (lmin > tol.value()) return Definiteness::PositiveDefinite;
    if (std::abs(lmin) <= tol.value()) return Definiteness::PositiveSemidefinite;
    return Definiteness::Indefinite;
}

bool boundary_positive(const SymMatrix& B, Tolerance tol) {
    const std::size_t n = B.size();
    if (n < 2) throw Error(ErrorKind::Parameter, "boundary positivity needs n >= 2");
    // Every proper face lies in one of the n maximal ones.
    for (std::size_t drop = 0; drop < n; ++drop) {
        std::vector<std::size_t> keep;
        for (std::size_t i = 0; i < n; ++i)
            if (i != drop) keep.push_back(i);
        if (simplex_min_quadratic(principal_submatrix(B, keep)).min_value <= tol.value()) return false;
    }
    return true;
}

std::string_view to_string(CopositivityKind kind) {
    switch (kind) {
        case CopositivityKind::NotCopositive: return "NotCopositive";
        case CopositivityKind::CopositiveNotStrict: return "CopositiveNotStrict";
        case CopositivityKind::StrictlyCopositive: return "StrictlyCopositive";
    }
    return "?";
}

std::string_view to_string(CopositivityMethod method) {
    switch (method) {
        case CopositivityMethod::ClosedForm2: return "ClosedForm2";
        case CopositivityMethod::ClosedForm3: return "ClosedForm3";
        case CopositivityMethod::FaceEnumeration: return "FaceEnumeration";
    }
    return "?";
}

std::string_view to_string(Definiteness d) {
    switch (d) {
        case Definiteness::PositiveDefinite: return "PositiveDefinite";
        case Definiteness::PositiveSemidefinite: return "PositiveSemidefinite";
        case Definiteness::Indefinite: return "Indefinite";
    }
    return "?";
}

}  // namespace coposolve
