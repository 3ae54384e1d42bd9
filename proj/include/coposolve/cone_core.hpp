#pragma once

#include <cstddef>
#include <initializer_list>
#include <optional>
#include <span>
#include <vector>

#include "coposolve/errors.hpp"

namespace coposolve {

/// Largest asymmetry |b_ij - b_ji| accepted (and averaged away) on construction.
inline constexpr double kMaxAsymmetry = 1e-9;

/// Symmetric n x n coupling matrix, stored row-major.
///
/// Input is symmetrized as (b_ij + b_ji) / 2; the largest observed asymmetry
/// is kept for reporting. Asymmetry above kMaxAsymmetry is rejected.
class SymMatrix {
public:
    SymMatrix(std::size_t n, std::vector<double> row_major);
    SymMatrix(std::initializer_list<std::initializer_list<double>> rows);

    static SymMatrix identity(std::size_t n);
    static SymMatrix from_rows(const std::vector<std::vector<double>>& rows);

    std::size_t size() const noexcept { return n_; }
    double operator()(std::size_t i, std::size_t j) const noexcept { return entries_[i * n_ + j]; }
    std::span<const double> row(std::size_t i) const noexcept { return {entries_.data() + i * n_, n_}; }
    std::span<const double> entries() const noexcept { return entries_; }
    double max_asymmetry() const noexcept { return max_asymmetry_; }
    double max_abs_entry() const noexcept;

    /// min{b_ij, 0}
    double negative_part(std::size_t i, std::size_t j) const noexcept;

    std::vector<std::vector<double>> to_rows() const;

    friend bool operator==(const SymMatrix& a, const SymMatrix& b) noexcept {
        return a.n_ == b.n_ && a.entries_ == b.entries_;
    }

private:
    std::size_t n_;
    std::vector<double> entries_;
    double max_asymmetry_ = 0.0;
};

/// Vector of the closed nonnegative cone.
class ConeVector {
public:
    ConeVector() = default;
    explicit ConeVector(std::vector<double> components);
    ConeVector(std::initializer_list<double> components);

    std::size_t size() const noexcept { return c_.size(); }
    double operator[](std::size_t i) const noexcept { return c_[i]; }
    std::span<const double> components() const noexcept { return c_; }
    const std::vector<double>& values() const noexcept { return c_; }

    bool nontrivial() const noexcept;
    bool strictly_positive() const noexcept;
    double sum() const noexcept;
    double max() const noexcept;

    ConeVector on_simplex() const;
    ConeVector max_normalized() const;

    friend bool operator==(const ConeVector&, const ConeVector&) = default;

private:
    std::vector<double> c_;
};

struct FormValue {
    double value = 0.0;
    std::optional<std::vector<double>> gradient;
};

/// c^e on the cone: exactly 0 at c == 0 (every exponent used here is positive).
double cone_power(double c, double exponent) noexcept;

/// b(c) = sum_ij b_ij c_i c_j with gradient 2 Bc.
FormValue quadratic_form(const SymMatrix& B, std::span<const double> c);

/// sum_ij b_ij c_j^{p/2} c_i^{p/2-1} mu_i, degree p-1 in c and linear in mu.
/// The gradient with respect to c is returned when requested; components at
/// c_i == 0 with a singular exponent (p < 4) are reported as +-infinity.
FormValue p_form(const SymMatrix& B, const ConeVector& c, const ConeVector& mu, double p,
                 bool with_gradient = false);

/// Rows and columns listed in `indices` (0-based, order preserved).
SymMatrix principal_submatrix(const SymMatrix& B, std::span<const std::size_t> indices);

/// Component i is sum_{j != i} min{b_ij, 0}.
std::vector<double> negative_part_row_sums(const SymMatrix& B);

/// Bitmask support helpers shared by the face-enumeration code.
std::vector<std::size_t> support_indices(unsigned long mask);

}  // namespace coposolve
