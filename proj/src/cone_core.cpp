#include "coposolve/cone_core.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "coposolve/summation.hpp"

namespace coposolve {

std::string_view to_string(ErrorKind kind) {
    switch (kind) {
        case ErrorKind::Dimension: return "Dimension";
        case ErrorKind::Parameter: return "Parameter";
        case ErrorKind::Capacity: return "Capacity";
        case ErrorKind::Precondition: return "Precondition";
        case ErrorKind::NotApplicable: return "NotApplicable";
        case ErrorKind::InternalConsistency: return "InternalConsistency";
        case ErrorKind::Input: return "Input";
    }
    return "Unknown";
}

std::string_view to_string(NotApplicableError::Reason reason) {
    switch (reason) {
        case NotApplicableError::Reason::StrictlyCopositive: return "StrictlyCopositive";
        case NotApplicableError::Reason::ConstantSolutionExists: return "ConstantSolutionExists";
        case NotApplicableError::Reason::NoRobustInteriorDirection: return "NoRobustInteriorDirection";
    }
    return "Unknown";
}

SymMatrix::SymMatrix(std::size_t n, std::vector<double> row_major) : n_(n), entries_(std::move(row_major)) {
    if (n_ == 0) throw Error(ErrorKind::Parameter, "matrix dimension must be at least 1");
    if (entries_.size() != n_ * n_)
        throw Error(ErrorKind::Dimension, "expected " + std::to_string(n_ * n_) + " entries, got " +
                                              std::to_string(entries_.size()));
    for (double v : entries_)
        if (!std::isfinite(v)) throw Error(ErrorKind::Parameter, "matrix entries must be finite");
    for (std::size_t i = 0; i < n_; ++i) {
        for (std::size_t j = i + 1; j < n_; ++j) {
            double& a = entries_[i * n_ + j];
            double& b = entries_[j * n_ + i];
            max_asymmetry_ = std::max(max_asymmetry_, std::abs(a - b));
            const double mean = 0.5 * (a + b);
            a = mean;
            b = mean;
        }
    }
    if (max_asymmetry_ > kMaxAsymmetry)
        throw Error(ErrorKind::Parameter, "matrix is not symmetric (max asymmetry " +
                                              std::to_string(max_asymmetry_) + ")");
}

SymMatrix::SymMatrix(std::initializer_list<std::initializer_list<double>> rows)
    : SymMatrix(from_rows(std::vector<std::vector<double>>(rows.begin(), rows.end()))) {}

SymMatrix SymMatrix::identity(std::size_t n) {
    std::vector<double> e(n * n, 0.0);
    for (std::size_t i = 0; i < n; ++i) e[i * n + i] = 1.0;
    return SymMatrix(n, std::move(e));
}

SymMatrix SymMatrix::from_rows(const std::vector<std::vector<double>>& rows) {
    const std::size_t n = rows.size();
    std::vector<double> e;
    e.reserve(n * n);
    for (const auto& r : rows) {
        if (r.size() != n) throw Error(ErrorKind::Dimension, "matrix rows must all have length n");
        e.insert(e.end(), r.begin(), r.end());
    }
    return SymMatrix(n, std::move(e));
}

double SymMatrix::max_abs_entry() const noexcept {
    double m = 0.0;
    for (double v : entries_) m = std::max(m, std::abs(v));
    return m;
}

double SymMatrix::negative_part(std::size_t i, std::size_t j) const noexcept {
    return std::min((*this)(i, j), 0.0);
}

std::vector<std::vector<double>> SymMatrix::to_rows() const {
    std::vector<std::vector<double>> rows(n_);
    for (std::size_t i = 0; i < n_; ++i) rows[i].assign(row(i).begin(), row(i).end());
    return rows;
}

ConeVector::ConeVector(std::vector<double> components) : c_(std::move(components)) {
    for (double& v : c_) {
        if (!std::isfinite(v) || v < 0.0)
            throw Error(ErrorKind::Parameter, "cone vector components must be finite and nonnegative");
        if (v == 0.0) v = 0.0;  // drop -0.0
    }
}

ConeVector::ConeVector(std::initializer_list<double> components)
    : ConeVector(std::vector<double>(components)) {}

bool ConeVector::nontrivial() const noexcept {
    return std::any_of(c_.begin(), c_.end(), [](double v) { return v > 0.0; });
}

bool ConeVector::strictly_positive() const noexcept {
    return !c_.empty() && std::all_of(c_.begin(), c_.end(), [](double v) { return v > 0.0; });
}

double ConeVector::sum() const noexcept {
    CompensatedSum s;
    for (double v : c_) s += v;
    return s.value();
}

double ConeVector::max() const noexcept {
    return c_.empty() ? 0.0 : *std::max_element(c_.begin(), c_.end());
}

ConeVector ConeVector::on_simplex() const {
    const double s = sum();
    if (!(s > 0.0)) throw Error(ErrorKind::Parameter, "cannot normalize the zero cone vector");
    std::vector<double> out(c_);
    for (double& v : out) v /= s;
    return ConeVector(std::move(out));
}

ConeVector ConeVector::max_normalized() const {
    const double m = max();
    if (!(m > 0.0)) throw Error(ErrorKind::Parameter, "cannot normalize the zero cone vector");
    std::vector<double> out(c_);
    for (double& v : out) v /= m;
    return ConeVector(std::move(out));
}

double cone_power(double c, double exponent) noexcept {
    if (c <= 0.0) return 0.0;
    if (exponent == 1.0) return c;
    if (exponent == 2.0) return c * c;
    return std::pow(c, exponent);
}

FormValue quadratic_form(const SymMatrix& B, std::span<const double> c) {
    const std::size_t n = B.size();
    if (c.size() != n)
        throw Error(ErrorKind::Dimension, "vector length " + std::to_string(c.size()) +
                                              " does not match matrix dimension " + std::to_string(n));
    FormValue out;
    std::vector<double> grad(n);
    CompensatedSum total;
    for (std::size_t i = 0; i < n; ++i) {
        CompensatedSum bc;
        for (std::size_t j = 0; j < n; ++j) bc += B(i, j) * c[j];
        const double bci = bc.value();
        grad[i] = 2.0 * bci;
        total += c[i] * bci;
    }
    out.value = total.value();
    out.gradient = std::move(grad);
    return out;
}

FormValue p_form(const SymMatrix& B, const ConeVector& c, const ConeVector& mu, double p, bool with_gradient) {
    const std::size_t n = B.size();
    if (!(p > 2.0)) throw Error(ErrorKind::Parameter, "p must exceed 2");
    if (c.size() != n || mu.size() != n)
        throw Error(ErrorKind::Dimension, "cone vector length does not match matrix dimension");

    const double a = 0.5 * p - 1.0;  // exponent on c_i
    const double b = 0.5 * p;        // exponent on c_j
    std::vector<double> ca(n), cb(n);
    for (std::size_t i = 0; i < n; ++i) {
        ca[i] = cone_power(c[i], a);
        cb[i] = cone_power(c[i], b);
    }
    std::vector<double> bcb(n);  // (B c^b)_i
    CompensatedSum total;
    for (std::size_t i = 0; i < n; ++i) {
        CompensatedSum s;
        for (std::size_t j = 0; j < n; ++j) s += B(i, j) * cb[j];
        bcb[i] = s.value();
        total += mu[i] * ca[i] * bcb[i];
    }
    FormValue out{total.value(), std::nullopt};
    if (!with_gradient) return out;

    // d/dc_k = mu_k a c_k^{a-1} (B c^b)_k + b c_k^{b-1} sum_i mu_i c_i^a b_ik
    std::vector<double> grad(n);
    for (std::size_t k = 0; k < n; ++k) {
        CompensatedSum w;
        for (std::size_t i = 0; i < n; ++i) w += mu[i] * ca[i] * B(i, k);
        double g = b * cone_power(c[k], b - 1.0) * w.value();
        const double coef = mu[k] * a * bcb[k];
        if (c[k] > 0.0) {
            g += coef * std::pow(c[k], a - 1.0);
        } else if (a - 1.0 < 0.0 && coef != 0.0) {
            g = coef > 0.0 ? std::numeric_limits<double>::infinity() : -std::numeric_limits<double>::infinity();
        } else if (a - 1.0 == 0.0) {
            g += coef;
        }
        grad[k] = g;
    }
    out.gradient = std::move(grad);
    return out;
}

SymMatrix principal_submatrix(const SymMatrix& B, std::span<const std::size_t> indices) {
    if (indices.empty()) throw Error(ErrorKind::Parameter, "index set must be nonempty");
    const std::size_t n = B.size();
    for (std::size_t idx : indices)
        if (idx >= n) throw Error(ErrorKind::Parameter, "index " + std::to_string(idx) + " out of range");
    const std::size_t k = indices.size();
    std::vector<double> e(k * k);
    for (std::size_t r = 0; r < k; ++r)
        for (std::size_t s = 0; s < k; ++s) e[r * k + s] = B(indices[r], indices[s]);
    return SymMatrix(k, std::move(e));
}

std::vector<double> negative_part_row_sums(const SymMatrix& B) {
    const std::size_t n = B.size();
    std::vector<double> out(n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        CompensatedSum s;
        for (std::size_t j = 0; j < n; ++j)
            if (j != i) s += B.negative_part(i, j);
        out[i] = s.value();
    }
    return out;
}

std::vector<std::size_t> support_indices(unsigned long mask) {
    std::vector<std::size_t> idx;
    for (std::size_t i = 0; mask != 0; ++i, mask >>= 1)
        if (mask & 1UL) idx.push_back(i);
    return idx;
}

}  // namespace coposolve
