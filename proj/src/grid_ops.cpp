#include "krf/grid_ops.hpp"

#include "krf/errors.hpp"
#include "krf/parallel.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <limits>
#include <map>
#include <mutex>

namespace krf::grid_ops {

namespace {

// Points needed for 4th-order accuracy: centered window for interior rows,
// shifted window of m+4 points near the boundary.
int interior_width(int m) { return m == 3 ? 7 : 5; }
int boundary_width(int m) { return m + 4; }

struct AxisPlan {
    int m = 0;
    int npts = 0;
    // Per-row window start and coefficient row (divided by h^m already? No:
    // coefficients are for unit spacing; caller scales by 1/h^m).
    std::vector<int> start;
    std::vector<const std::vector<double>*> row;
    std::vector<std::vector<double>> storage;
};

std::vector<double> solve_vandermonde(int m, const std::vector<int>& offsets) {
    const int k = static_cast<int>(offsets.size());
    // rows p = 0..k-1: sum_j c_j off_j^p = m! * delta(p,m)
    std::vector<long double> A(static_cast<std::size_t>(k) * k), b(k, 0.0L);
    for (int p = 0; p < k; ++p) {
        for (int j = 0; j < k; ++j) {
            long double v = 1.0L;
            for (int q = 0; q < p; ++q) v *= offsets[j];
            A[static_cast<std::size_t>(p) * k + j] = v;
        }
    }
    long double fact = 1.0L;
    for (int q = 2; q <= m; ++q) fact *= q;
    b[m] = fact;
    // Gaussian elimination with partial pivoting.
    std::vector<int> piv(k);
    for (int i = 0; i < k; ++i) piv[i] = i;
    for (int col = 0; col < k; ++col) {
        int best = col;
        for (int r = col + 1; r < k; ++r)
            if (std::fabs((double)A[static_cast<std::size_t>(r) * k + col]) >
                std::fabs((double)A[static_cast<std::size_t>(best) * k + col]))
                best = r;
        if (best != col) {
            for (int c = 0; c < k; ++c)
                std::swap(A[static_cast<std::size_t>(col) * k + c],
                          A[static_cast<std::size_t>(best) * k + c]);
            std::swap(b[col], b[best]);
        }
        long double d = A[static_cast<std::size_t>(col) * k + col];
        for (int r = col + 1; r < k; ++r) {
            long double fac = A[static_cast<std::size_t>(r) * k + col] / d;
            if (fac == 0.0L) continue;
            for (int c = col; c < k; ++c)
                A[static_cast<std::size_t>(r) * k + c] -= fac * A[static_cast<std::size_t>(col) * k + c];
            b[r] -= fac * b[col];
        }
    }
    std::vector<double> c(k);
    for (int r = k - 1; r >= 0; --r) {
        long double s = b[r];
        for (int cc = r + 1; cc < k; ++cc) s -= A[static_cast<std::size_t>(r) * k + cc] * c[cc];
        c[r] = static_cast<double>(s / A[static_cast<std::size_t>(r) * k + r]);
    }
    return c;
}

const AxisPlan& plan_for(int m, int npts) {
    static std::map<std::pair<int, int>, AxisPlan> cache;
    static std::mutex mu;
    std::lock_guard<std::mutex> lock(mu);
    auto key = std::make_pair(m, npts);
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;

    AxisPlan p;
    p.m = m;
    p.npts = npts;
    const int wi = interior_width(m), wb = boundary_width(m);
    const int ci = wi / 2;
    if (npts < std::max(wi, wb)) throw Error("grid too small for 4th-order stencils");

    // coefficient rows keyed by (start - i) signature; interior shares one row
    std::map<std::vector<int>, std::size_t> seen;
    p.start.resize(npts);
    std::vector<std::size_t> rowidx(npts);
    for (int i = 0; i < npts; ++i) {
        int width, start;
        if (i - ci >= 0 && i + ci < npts) {
            width = wi;
            start = i - ci;
        } else {
            width = wb;
            start = std::clamp(i - wb / 2, 0, npts - wb);
        }
        std::vector<int> offs(width);
        for (int j = 0; j < width; ++j) offs[j] = start + j - i;
        auto found = seen.find(offs);
        std::size_t idx;
        if (found == seen.end()) {
            p.storage.push_back(solve_vandermonde(m, offs));
            idx = p.storage.size() - 1;
            seen.emplace(std::move(offs), idx);
        } else {
            idx = found->second;
        }
        p.start[i] = start;
        rowidx[i] = idx;
    }
    p.row.resize(npts);
    for (int i = 0; i < npts; ++i) p.row[i] = &p.storage[rowidx[i]];
    cache[key] = std::move(p);
    return cache[key];
}

template <bool Omp>
void deriv_axis_impl(const Grid& g, const double* f, int axis, int m, double* out) {
    const AxisPlan& p = plan_for(m, g.npts);
    const double scale = 1.0 / std::pow(g.h, m);
    const int npts = g.npts;

    if (g.n == 1) {
        for (int i = 0; i < npts; ++i) {
            const auto& c = *p.row[i];
            double s = 0.0;
            const int st = p.start[i];
            for (std::size_t j = 0; j < c.size(); ++j) s += c[j] * f[st + j];
            out[i] = s * scale;
        }
        return;
    }

    // n = 2, row-major [i0*npts + i1]
    if (axis == 1) {
        auto line = [&](int i0) {
            const double* fr = f + static_cast<std::size_t>(i0) * npts;
            double* orow = out + static_cast<std::size_t>(i0) * npts;
            for (int i = 0; i < npts; ++i) {
                const auto& c = *p.row[i];
                double s = 0.0;
                const int st = p.start[i];
                for (std::size_t j = 0; j < c.size(); ++j) s += c[j] * fr[st + j];
                orow[i] = s * scale;
            }
        };
        if constexpr (Omp) {
#ifdef _OPENMP
            const int nt = par::threads();
#pragma omp parallel for schedule(static) num_threads(nt)
            for (int i0 = 0; i0 < npts; ++i0) line(i0);
#else
            for (int i0 = 0; i0 < npts; ++i0) line(i0);
#endif
        } else {
            for (int i0 = 0; i0 < npts; ++i0) line(i0);
        }
    } else {
        auto line = [&](int i0) {
            const auto& c = *p.row[i0];
            const int st = p.start[i0];
            double* orow = out + static_cast<std::size_t>(i0) * npts;
            for (int i1 = 0; i1 < npts; ++i1) {
                double s = 0.0;
                for (std::size_t j = 0; j < c.size(); ++j)
                    s += c[j] * f[static_cast<std::size_t>(st + j) * npts + i1];
                orow[i1] = s * scale;
            }
        };
        if constexpr (Omp) {
#ifdef _OPENMP
            const int nt = par::threads();
#pragma omp parallel for schedule(static) num_threads(nt)
            for (int i0 = 0; i0 < npts; ++i0) line(i0);
#else
            for (int i0 = 0; i0 < npts; ++i0) line(i0);
#endif
        } else {
            for (int i0 = 0; i0 < npts; ++i0) line(i0);
        }
    }
}

} // namespace

std::vector<double> stencil_coeffs(int m, const std::vector<int>& offsets) {
    return solve_vandermonde(m, offsets);
}

void deriv_axis_serial(const Grid& g, const double* f, int axis, int m, double* out) {
    deriv_axis_impl<false>(g, f, axis, m, out);
}

void deriv_axis_omp(const Grid& g, const double* f, int axis, int m, double* out) {
    deriv_axis_impl<true>(g, f, axis, m, out);
}

GridFn deriv_axis(const Grid& g, const GridFn& f, int axis, int m) {
    GridFn out(g.size());
    if (par::mode() == par::Mode::OpenMP)
        deriv_axis_omp(g, f.data(), axis, m, out.data());
    else
        deriv_axis_serial(g, f.data(), axis, m, out.data());
    return out;
}

std::vector<GridFn> hessian_fields(const Grid& g, const GridFn& f) {
    if (g.n == 1) return {deriv_axis(g, f, 0, 2)};
    GridFn f00 = deriv_axis(g, f, 0, 2);
    GridFn f11 = deriv_axis(g, f, 1, 2);
    GridFn f0 = deriv_axis(g, f, 0, 1);
    GridFn f01 = deriv_axis(g, f0, 1, 1);
    return {std::move(f00), std::move(f11), std::move(f01)};
}

std::vector<GridFn> third_fields(const Grid& g, const GridFn& f) {
    if (g.n == 1) return {deriv_axis(g, f, 0, 3)};
    GridFn f000 = deriv_axis(g, f, 0, 3);
    GridFn f111 = deriv_axis(g, f, 1, 3);
    GridFn f00 = deriv_axis(g, f, 0, 2);
    GridFn f11 = deriv_axis(g, f, 1, 2);
    GridFn f001 = deriv_axis(g, f00, 1, 1);
    GridFn f011 = deriv_axis(g, f11, 0, 1);
    return {std::move(f000), std::move(f001), std::move(f011), std::move(f111)};
}

std::vector<GridFn> grad_fields(const Grid& g, const GridFn& f) {
    if (g.n == 1) return {deriv_axis(g, f, 0, 1)};
    return {deriv_axis(g, f, 0, 1), deriv_axis(g, f, 1, 1)};
}

double dot_serial(std::size_t n, const double* f, const double* w) {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) s += f[i] * w[i];
    return s;
}

double dot_omp(std::size_t n, const double* f, const double* w) {
    auto cs = par::detail::chunks(n, par::threads());
    std::vector<double> partial(cs.size(), 0.0);
#ifdef _OPENMP
    const int nt = par::threads();
#pragma omp parallel for schedule(static) num_threads(nt)
#endif
    for (long long k = 0; k < static_cast<long long>(cs.size()); ++k) {
        double s = 0.0;
        for (std::size_t i = cs[k].first; i < cs[k].second; ++i) s += f[i] * w[i];
        partial[k] = s;
    }
    double total = 0.0;
    for (double p : partial) total += p;
    return total;
}

double dot(const GridFn& f, const GridFn& w) {
    return par::mode() == par::Mode::OpenMP ? dot_omp(f.size(), f.data(), w.data())
                                            : dot_serial(f.size(), f.data(), w.data());
}

double integrate(const Grid& g, const GridFn& f, const GridFn& dens) {
    const std::size_t n = g.size();
    auto body = [&](std::size_t i) { return f[i] * dens[i] * g.quad_weight(i); };
    if (par::mode() == par::Mode::OpenMP) {
        auto cs = par::detail::chunks(n, par::threads());
        std::vector<double> partial(cs.size(), 0.0);
#ifdef _OPENMP
        const int nt = par::threads();
#pragma omp parallel for schedule(static) num_threads(nt)
#endif
        for (long long k = 0; k < static_cast<long long>(cs.size()); ++k) {
            double s = 0.0;
            for (std::size_t i = cs[k].first; i < cs[k].second; ++i) s += body(i);
            partial[k] = s;
        }
        double total = 0.0;
        for (double p : partial) total += p;
        return total;
    }
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) s += body(i);
    return s;
}

double integrate(const Grid& g, const GridFn& dens) {
    GridFn ones(g.size(), 1.0);
    return integrate(g, ones, dens);
}

double max_abs_serial(std::size_t n, const double* f) {
    double m = 0.0;
    for (std::size_t i = 0; i < n; ++i) m = std::max(m, std::fabs(f[i]));
    return m;
}

double max_abs_omp(std::size_t n, const double* f) {
    auto cs = par::detail::chunks(n, par::threads());
    std::vector<double> partial(cs.size(), 0.0);
#ifdef _OPENMP
    const int nt = par::threads();
#pragma omp parallel for schedule(static) num_threads(nt)
#endif
    for (long long k = 0; k < static_cast<long long>(cs.size()); ++k) {
        double m = 0.0;
        for (std::size_t i = cs[k].first; i < cs[k].second; ++i) m = std::max(m, std::fabs(f[i]));
        partial[k] = m;
    }
    double m = 0.0;
    for (double p : partial) m = std::max(m, p);
    return m;
}

double max_abs(const GridFn& f) {
    return par::mode() == par::Mode::OpenMP ? max_abs_omp(f.size(), f.data())
                                            : max_abs_serial(f.size(), f.data());
}

double max_serial(std::size_t n, const double* f) {
    double m = -std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < n; ++i) m = std::max(m, f[i]);
    return m;
}

double max_omp(std::size_t n, const double* f) {
    auto cs = par::detail::chunks(n, par::threads());
    std::vector<double> partial(cs.size(), -std::numeric_limits<double>::infinity());
#ifdef _OPENMP
    const int nt = par::threads();
#pragma omp parallel for schedule(static) num_threads(nt)
#endif
    for (long long k = 0; k < static_cast<long long>(cs.size()); ++k) {
        double m = -std::numeric_limits<double>::infinity();
        for (std::size_t i = cs[k].first; i < cs[k].second; ++i) m = std::max(m, f[i]);
        partial[k] = m;
    }
    double m = -std::numeric_limits<double>::infinity();
    for (double p : partial) m = std::max(m, p);
    return m;
}

double max_val(const GridFn& f) {
    return par::mode() == par::Mode::OpenMP ? max_omp(f.size(), f.data())
                                            : max_serial(f.size(), f.data());
}

double min_val(const GridFn& f) {
    GridFn neg(f.size());
    for (std::size_t i = 0; i < f.size(); ++i) neg[i] = -f[i];
    return -max_val(neg);
}

namespace {

template <bool Omp>
double lse_impl(std::size_t n, const double* a, const double* w) {
    // pass 1: max exponent among positive-weight entries
    double s;
    {
        double m = -std::numeric_limits<double>::infinity();
        for (std::size_t i = 0; i < n; ++i)
            if (w[i] > 0.0) m = std::max(m, a[i]);
        s = m;
    }
    if (!std::isfinite(s)) return -std::numeric_limits<double>::infinity();
    // pass 2: chunked deterministic sum of w * exp(a - s)
    auto cs = par::detail::chunks(n, Omp ? par::threads() : 1);
    std::vector<double> partial(cs.size(), 0.0);
#ifdef _OPENMP
    if constexpr (Omp) {
        const int nt = par::threads();
#pragma omp parallel for schedule(static) num_threads(nt)
        for (long long k = 0; k < static_cast<long long>(cs.size()); ++k) {
            double acc = 0.0;
            for (std::size_t i = cs[k].first; i < cs[k].second; ++i)
                if (w[i] > 0.0) acc += w[i] * std::exp(a[i] - s);
            partial[k] = acc;
        }
    } else
#endif
    {
        for (std::size_t k = 0; k < cs.size(); ++k) {
            double acc = 0.0;
            for (std::size_t i = cs[k].first; i < cs[k].second; ++i)
                if (w[i] > 0.0) acc += w[i] * std::exp(a[i] - s);
            partial[k] = acc;
        }
    }
    double total = 0.0;
    for (double p : partial) total += p;
    return s + std::log(total);
}

} // namespace

double log_sum_exp_weighted_serial(std::size_t n, const double* a, const double* w) {
    return lse_impl<false>(n, a, w);
}

double log_sum_exp_weighted_omp(std::size_t n, const double* a, const double* w) {
    return lse_impl<true>(n, a, w);
}

double log_sum_exp_weighted(const GridFn& a, const GridFn& w) {
    return par::mode() == par::Mode::OpenMP
               ? log_sum_exp_weighted_omp(a.size(), a.data(), w.data())
               : log_sum_exp_weighted_serial(a.size(), a.data(), w.data());
}

void axpy(double alpha, const GridFn& x, GridFn& y) {
    par::for_index(x.size(), [&](std::size_t i) { y[i] += alpha * x[i]; });
}

} // namespace krf::grid_ops
