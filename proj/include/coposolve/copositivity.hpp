#pragma once

#include <optional>

#include "coposolve/cone_core.hpp"
#include "coposolve/kernels.hpp"

namespace coposolve {

/// Face enumeration visits all 2^n - 1 supports.
inline constexpr std::size_t kMaxOracleDimension = 16;

/// Classification dead-band.
class Tolerance {
public:
    static constexpr double kDefault = 1e-9;

    Tolerance() = default;
    explicit Tolerance(double tol);

    double value() const noexcept { return tol_; }

private:
    double tol_ = kDefault;
};

struct SimplexMinimum {
    double min_value = 0.0;
    ConeVector argmin;
    bool grid_assisted = false;  // some flat face was handled by the fallback
};

/// Global minimum of b(c) = c'Bc over the standard simplex via stationary
/// points of every face plus all vertices.
SimplexMinimum simplex_min_quadratic(const SymMatrix& B,
                                     kernels::Execution exec = kernels::Execution::Parallel);

enum class CopositivityKind { NotCopositive, CopositiveNotStrict, StrictlyCopositive };
enum class CopositivityMethod { ClosedForm2, ClosedForm3, FaceEnumeration };

struct CopositivityVerdict {
    CopositivityKind kind = CopositivityKind::NotCopositive;
    ConeVector witness;
    double min_value = 0.0;
    CopositivityMethod method = CopositivityMethod::FaceEnumeration;
    bool grid_assisted = false;
    bool boundary_case = false;  // |min_value| <= tol
};

/// Oracle classification; for n in {2, 3} the closed form is cross-checked and
/// a disagreement outside the dead-band throws InternalConsistency.
CopositivityVerdict classify_copositivity(const SymMatrix& B, Tolerance tol = Tolerance{});

struct ClosedFormResult {
    bool strictly_copositive = false;
    /// n = 3 only: value of the final determinant-type expression (absent when
    /// an earlier condition already fails and the expression is undefined).
    std::optional<double> diagnostic;
};

/// Explicit strict-copositivity test for n = 2 and n = 3.
ClosedFormResult strict_copositivity_closed_form(const SymMatrix& B);

enum class Definiteness { PositiveDefinite, PositiveSemidefinite, Indefinite };

Definiteness check_psd(const SymMatrix& B, Tolerance tol = Tolerance{});

/// True iff every proper principal submatrix is strictly copositive.
bool boundary_positive(const SymMatrix& B, Tolerance tol = Tolerance{});

std::string_view to_string(CopositivityKind kind);
std::string_view to_string(CopositivityMethod method);
std::string_view to_string(Definiteness d);

}  // namespace coposolve
