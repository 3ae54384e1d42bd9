#include "coposolve/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

#include <Eigen/Dense>

#include "coposolve/summation.hpp"

namespace coposolve::kernels {
namespace {

// Visit every composition of `total` into `parts` nonnegative integers, in
// lexicographically decreasing order of the leading entries.
void for_each_composition(std::size_t parts, int total, const std::function<void(std::span<const int>)>& visit) {
    std::vector<int> counts(parts, 0);
    std::function<void(std::size_t, int)> rec = [&](std::size_t pos, int remaining) {
        if (pos + 1 == parts) {
            counts[pos] = remaining;
            visit(counts);
            return;
        }
        for (int v = remaining; v >= 0; --v) {
            counts[pos] = v;
            rec(pos + 1, remaining - v);
        }
    };
    if (parts == 0) return;
    rec(0, total);
}

bool lex_less(std::span<const double> a, std::span<const double> b) {
    return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
}

FaceCandidate grid_face(const SymMatrix& B, unsigned long mask, const std::vector<std::size_t>& idx) {
    const std::size_t n = B.size();
    FaceCandidate best;
    best.support = mask;
    best.status = FaceCandidate::Status::GridAssisted;
    bool have = false;
    std::vector<double> point(n, 0.0);
    for_each_composition(idx.size(), kFaceGridResolution, [&](std::span<const int> counts) {
        std::fill(point.begin(), point.end(), 0.0);
        for (std::size_t r = 0; r < idx.size(); ++r) point[idx[r]] = double(counts[r]) / kFaceGridResolution;
        const double v = quadratic_form(B, point).value;
        if (!have || v < best.value || (v == best.value && lex_less(point, best.point))) {
            best.value = v;
            best.point = point;
            have = true;
        }
    });
    return best;
}

FaceCandidate solve_face(const SymMatrix& B, unsigned long mask) {
    const std::size_t n = B.size();
    const auto idx = support_indices(mask);
    const std::size_t k = idx.size();
    FaceCandidate out;
    out.support = mask;

    if (k == 1) {
        out.status = FaceCandidate::Status::Vertex;
        out.point.assign(n, 0.0);
        out.point[idx[0]] = 1.0;
        out.value = B(idx[0], idx[0]);
        return out;
    }

    // B_S c = lambda 1, 1.c = 1, with B_S rescaled so the condition estimate
    // does not depend on the overall magnitude of the coefficients.
    double scale = 0.0;
    for (std::size_t r : idx)
        for (std::size_t s : idx) scale = std::max(scale, std::abs(B(r, s)));
    if (scale == 0.0) scale = 1.0;
    Eigen::MatrixXd K = Eigen::MatrixXd::Zero(Eigen::Index(k + 1), Eigen::Index(k + 1));
    for (std::size_t r = 0; r < k; ++r) {
        for (std::size_t s = 0; s < k; ++s) K(Eigen::Index(r), Eigen::Index(s)) = B(idx[r], idx[s]) / scale;
        K(Eigen::Index(r), Eigen::Index(k)) = -1.0;
        K(Eigen::Index(k), Eigen::Index(r)) = 1.0;
    }
    Eigen::VectorXd rhs = Eigen::VectorXd::Zero(Eigen::Index(k + 1));
    rhs(Eigen::Index(k)) = 1.0;

    Eigen::PartialPivLU<Eigen::MatrixXd> lu(K);
    const double rcond = lu.rcond();
    if (!(rcond >= kFaceRcondFloor)) {
        if (k <= kMaxGriddedFace) return grid_face(B, mask, idx);
        out.status = FaceCandidate::Status::FlatSkipped;
        return out;
    }
    const Eigen::VectorXd x = lu.solve(rhs);
    CompensatedSum total;
    for (std::size_t r = 0; r < k; ++r) {
        const double c = x(Eigen::Index(r));
        if (!(c > 0.0)) {
            out.status = FaceCandidate::Status::NotInterior;
            return out;
        }
        total += c;
    }
    const double s = total.value();
    out.point.assign(n, 0.0);
    for (std::size_t r = 0; r < k; ++r) out.point[idx[r]] = x(Eigen::Index(r)) / s;
    out.status = FaceCandidate::Status::Interior;
    out.value = quadratic_form(B, out.point).value;
    return out;
}

struct TopK {
    std::size_t keep;
    std::vector<GridPoint> heap;  // max-heap under `better`: worst kept point on top

    void offer(double value, std::span<const int> counts) {
        if (keep == 0) return;
        if (heap.size() == keep) {
            const GridPoint& worst = heap.front();
            if (!(value < worst.value ||
                  (value == worst.value && std::lexicographical_compare(counts.begin(), counts.end(),
                                                                         worst.counts.begin(), worst.counts.end()))))
                return;
            std::pop_heap(heap.begin(), heap.end(), better);
            heap.back().value = value;
            heap.back().counts.assign(counts.begin(), counts.end());
        } else {
            heap.push_back(GridPoint{value, std::vector<int>(counts.begin(), counts.end())});
        }
        std::push_heap(heap.begin(), heap.end(), better);
    }

    std::vector<GridPoint> sorted() && {
        std::sort_heap(heap.begin(), heap.end(), better);
        return std::move(heap);
    }
};

struct PowerTables {
    std::vector<double> pa, pb, lin;
    PowerTables(int resolution, double p) : pa(std::size_t(resolution) + 1), pb(pa.size()), lin(pa.size()) {
        for (int r = 0; r <= resolution; ++r) {
            const double c = double(r) / resolution;
            pa[std::size_t(r)] = cone_power(c, 0.5 * p - 1.0);
            pb[std::size_t(r)] = cone_power(c, 0.5 * p);
            lin[std::size_t(r)] = c;
        }
    }
};

// One slab of the grid: first coordinate fixed to `lead`.
void scan_slab(const SymMatrix& B, std::span<const double> mu, double p, int resolution, int lead,
               const PowerTables& t, TopK& form, TopK& ratio, std::uint64_t& points) {
    const std::size_t n = B.size();
    std::vector<int> counts(n, 0);
    counts[0] = lead;
    auto eval = [&](std::span<const int> rest) {
        for (std::size_t i = 1; i < n; ++i) counts[i] = rest[i - 1];
        double f = 0.0, muc = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            const auto ci = std::size_t(counts[i]);
            muc += mu[i] * t.lin[ci];
            if (counts[i] == 0) continue;
            double s = 0.0;
            for (std::size_t j = 0; j < n; ++j) s += B(i, j) * t.pb[std::size_t(counts[j])];
            f += mu[i] * t.pa[ci] * s;
        }
        form.offer(f, counts);
        ratio.offer(f / std::pow(muc, p - 1.0), counts);
        ++points;
    };
    if (n == 1) {
        eval({});
        return;
    }
    for_each_composition(n - 1, resolution - lead, eval);
}

}  // namespace

std::vector<FaceCandidate> face_candidates(const SymMatrix& B, Execution exec) {
    const std::size_t n = B.size();
    const long count = (1L << n) - 1;
    std::vector<FaceCandidate> out(static_cast<std::size_t>(count));
    if (exec == Execution::Parallel) {
#pragma omp parallel for schedule(dynamic, 64)
        for (long m = 1; m <= count; ++m) out[std::size_t(m - 1)] = solve_face(B, static_cast<unsigned long>(m));
    } else {
        for (long m = 1; m <= count; ++m) out[std::size_t(m - 1)] = solve_face(B, static_cast<unsigned long>(m));
    }
    return out;
}

bool better(const GridPoint& a, const GridPoint& b) noexcept {
    if (a.value != b.value) return a.value < b.value;
    return std::lexicographical_compare(a.counts.begin(), a.counts.end(), b.counts.begin(), b.counts.end());
}

GridScan scan_p_form_grid(const SymMatrix& B, std::span<const double> mu, double p, int resolution,
                          std::size_t keep, Execution exec) {
    const PowerTables tables(resolution, p);
    const int slabs = B.size() == 1 ? 1 : resolution + 1;
    std::vector<TopK> forms(std::size_t(slabs), TopK{keep, {}});
    std::vector<TopK> ratios(std::size_t(slabs), TopK{keep, {}});
    std::vector<std::uint64_t> points(std::size_t(slabs), 0);
    const int lead_fixed = B.size() == 1 ? resolution : -1;

    auto run = [&](int s) {
        const int lead = lead_fixed >= 0 ? lead_fixed : s;
        scan_slab(B, mu, p, resolution, lead, tables, forms[std::size_t(s)], ratios[std::size_t(s)],
                  points[std::size_t(s)]);
    };
    if (exec == Execution::Parallel) {
#pragma omp parallel for schedule(dynamic, 1)
        for (int s = 0; s < slabs; ++s) run(s);
    } else {
        for (int s = 0; s < slabs; ++s) run(s);
    }

    TopK form{keep, {}}, ratio{keep, {}};
    GridScan out;
    for (int s = 0; s < slabs; ++s) {
        for (const auto& g : forms[std::size_t(s)].heap) form.offer(g.value, g.counts);
        for (const auto& g : ratios[std::size_t(s)].heap) ratio.offer(g.value, g.counts);
        out.points += points[std::size_t(s)];
    }
    out.best_form = std::move(form).sorted();
    out.best_ratio = std::move(ratio).sorted();
    return out;
}

ListScan scan_p_form_points(const SymMatrix& B, std::span<const double> mu, double p,
                            std::span<const double> points, std::size_t keep, Execution exec) {
    const std::size_t n = B.size();
    const std::size_t count = points.size() / n;
    ListScan out;
    out.form_values.resize(count);
    out.ratio_values.resize(count);
    const double a = 0.5 * p - 1.0, b = 0.5 * p;

    auto eval = [&](std::size_t k) {
        const double* c = points.data() + k * n;
        double f = 0.0, muc = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            muc += mu[i] * c[i];
            if (c[i] <= 0.0) continue;
            double s = 0.0;
            for (std::size_t j = 0; j < n; ++j) s += B(i, j) * cone_power(c[j], b);
            f += mu[i] * cone_power(c[i], a) * s;
        }
        out.form_values[k] = f;
        out.ratio_values[k] = f / std::pow(muc, p - 1.0);
    };
    if (exec == Execution::Parallel) {
#pragma omp parallel for schedule(static)
        for (long k = 0; k < long(count); ++k) eval(std::size_t(k));
    } else {
        for (std::size_t k = 0; k < count; ++k) eval(k);
    }

    auto select = [&](const std::vector<double>& v) {
        std::vector<std::size_t> order(count);
        for (std::size_t k = 0; k < count; ++k) order[k] = k;
        const std::size_t m = std::min(keep, count);
        std::partial_sort(order.begin(), order.begin() + long(m), order.end(), [&](std::size_t x, std::size_t y) {
            return v[x] != v[y] ? v[x] < v[y] : x < y;
        });
        order.resize(m);
        return order;
    };
    out.best_form = select(out.form_values);
    out.best_ratio = select(out.ratio_values);
    return out;
}

double grid_point_count(std::size_t n, int resolution) noexcept {
    // C(resolution + n - 1, n - 1)
    double c = 1.0;
    for (std::size_t k = 1; k < n; ++k) c = c * double(resolution + int(k)) / double(k);
    return c;
}

namespace {

inline double laplacian_term(double left, double centre, double right) noexcept {
    return (left - centre) + (right - centre);
}

void residual_node(const SymMatrix& B, double p, const BoxShape& box, std::span<const double> u,
                   std::span<double> r, std::size_t node, std::vector<double>& pa, std::vector<double>& pb) {
    const std::size_t n = B.size();
    const std::size_t N = box.nodes();
    const int m = box.points_per_side;
    const double inv_h2 = 1.0 / (box.spacing * box.spacing);
    const double a = 0.5 * p - 1.0, b = 0.5 * p;

    for (std::size_t i = 0; i < n; ++i) {
        const double v = u[i * N + node];
        pa[i] = cone_power(v, a);
        pb[i] = cone_power(v, b);
    }
    const int ix = box.dim == 1 ? int(node) : int(node % std::size_t(m));
    const int iy = box.dim == 1 ? 0 : int(node / std::size_t(m));
    for (std::size_t i = 0; i < n; ++i) {
        const double* ui = u.data() + i * N;
        const double c = ui[node];
        // ghost nodes mirror the first interior neighbour
        const double xl = ix > 0 ? ui[node - 1] : ui[node + 1];
        const double xr = ix < m - 1 ? ui[node + 1] : ui[node - 1];
        double lap = laplacian_term(xl, c, xr);
        if (box.dim == 2) {
            const std::size_t stride = std::size_t(m);
            const double yd = iy > 0 ? ui[node - stride] : ui[node + stride];
            const double yu = iy < m - 1 ? ui[node + stride] : ui[node - stride];
            lap = lap + laplacian_term(yd, c, yu);
        }
        double f = 0.0;
        if (pa[i] != 0.0) {
            double s = 0.0;
            for (std::size_t j = 0; j < n; ++j) s += B(i, j) * pb[j];
            f = s * pa[i];
        }
        r[i * N + node] = -lap * inv_h2 + std::min(c, 0.0) - f;
    }
}

}  // namespace

void neumann_residual(const SymMatrix& B, double p, const BoxShape& box, std::span<const double> u,
                      std::span<double> r, Execution exec) {
    const std::size_t N = box.nodes();
    const std::size_t n = B.size();
    if (exec == Execution::Parallel) {
#pragma omp parallel
        {
            std::vector<double> pa(n), pb(n);
#pragma omp for schedule(static)
            for (long node = 0; node < long(N); ++node) residual_node(B, p, box, u, r, std::size_t(node), pa, pb);
        }
    } else {
        std::vector<double> pa(n), pb(n);
        for (std::size_t node = 0; node < N; ++node) residual_node(B, p, box, u, r, node, pa, pb);
    }
}

}  // namespace coposolve::kernels
