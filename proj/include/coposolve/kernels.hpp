#pragma once

// Data-parallel inner loops. Each kernel has a serial reference and an OpenMP
// version with identical results: parallel work is written into per-task slots
// and reduced serially in a fixed order, so the output does not depend on the
// thread count or schedule.

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "coposolve/cone_core.hpp"

namespace coposolve::kernels {

enum class Execution { Serial, Parallel };

/// Candidate minimizer of b over the relative interior of one simplex face.
struct FaceCandidate {
    enum class Status {
        Vertex,          // |S| == 1
        Interior,        // nonsingular stationarity system with a positive solution
        NotInterior,     // nonsingular, solution leaves the face
        GridAssisted,    // flat face, minimized on a barycentric grid
        FlatSkipped,     // flat face too large to grid; its minimum lies on a sub-face
    };
    unsigned long support = 0;
    Status status = Status::NotInterior;
    double value = 0.0;
    std::vector<double> point;  // full length n, on the simplex; empty unless usable

    bool usable() const noexcept {
        return status == Status::Vertex || status == Status::Interior || status == Status::GridAssisted;
    }
};

/// Faces with more nodes than this are not gridded when flat.
inline constexpr std::size_t kMaxGriddedFace = 4;
inline constexpr int kFaceGridResolution = 64;
/// Stationarity systems with reciprocal condition below this count as flat.
inline constexpr double kFaceRcondFloor = 1e-12;

std::vector<FaceCandidate> face_candidates(const SymMatrix& B, Execution exec);

/// Point of a barycentric grid with integer coordinates summing to the resolution.
struct GridPoint {
    double value = 0.0;
    std::vector<int> counts;
};

/// Strict weak order used for every "best k" reduction: value, then counts.
bool better(const GridPoint& a, const GridPoint& b) noexcept;

/// The `keep` best points of f_mu(c) = p_form(B, c, mu, p) and of the ratio
/// f_mu(c) / (mu . c)^{p-1} over the full barycentric grid of the given
/// resolution.
struct GridScan {
    std::vector<GridPoint> best_form;
    std::vector<GridPoint> best_ratio;
    std::uint64_t points = 0;
};

GridScan scan_p_form_grid(const SymMatrix& B, std::span<const double> mu, double p, int resolution,
                          std::size_t keep, Execution exec);

/// Same reduction over an explicit list of simplex points (row-major, n per point).
struct ListScan {
    std::vector<std::size_t> best_form;   // indices into the list
    std::vector<std::size_t> best_ratio;
    std::vector<double> form_values;
    std::vector<double> ratio_values;
};

ListScan scan_p_form_points(const SymMatrix& B, std::span<const double> mu, double p,
                            std::span<const double> points, std::size_t keep, Execution exec);

/// Number of points of the barycentric grid (as a double to survive overflow).
double grid_point_count(std::size_t n, int resolution) noexcept;

/// Uniform tensor grid with Neumann closure by ghost-node reflection.
struct BoxShape {
    int dim = 1;              // 1 or 2
    int points_per_side = 0;
    double spacing = 0.0;

    std::size_t nodes() const noexcept {
        const auto m = static_cast<std::size_t>(points_per_side);
        return dim == 1 ? m : m * m;
    }
};

/// Discrete Euler-Lagrange residual, per node and component:
///   r_i = -Lap_h u_i + min(u_i, 0) - sum_j b_ij (u_j^+)^{p/2} (u_i^+)^{p/2-1}
/// `u` and `r` are component-major (component i occupies [i*nodes, (i+1)*nodes)).
void neumann_residual(const SymMatrix& B, double p, const BoxShape& box, std::span<const double> u,
                      std::span<double> r, Execution exec);

}  // namespace coposolve::kernels
