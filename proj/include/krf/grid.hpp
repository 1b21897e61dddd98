#pragma once

#include <array>
#include <cstddef>
#include <vector>

namespace krf {

/// Uniform tensor grid on [-L, L]^n in log coordinates, n in {1,2}.
/// Flattened storage is row-major: index = i0 * npts + i1 (i1 fastest).
struct Grid {
    int n = 1;          // complex dimension = number of log coordinates
    int npts = 0;       // points per axis
    double L = 0.0;     // half-width of the box
    double h = 0.0;     // spacing

    Grid() = default;
    Grid(int n_, int npts_, double L_);

    std::size_t size() const { return n == 1 ? static_cast<std::size_t>(npts)
                                             : static_cast<std::size_t>(npts) * npts; }
    double coord(int i) const { return -L + h * i; }

    std::size_t flat(int i0, int i1 = 0) const {
        return n == 1 ? static_cast<std::size_t>(i0)
                      : static_cast<std::size_t>(i0) * npts + i1;
    }
    std::array<int, 2> unflat(std::size_t idx) const {
        if (n == 1) return {static_cast<int>(idx), 0};
        return {static_cast<int>(idx / npts), static_cast<int>(idx % npts)};
    }

    std::array<double, 2> point(std::size_t idx) const {
        auto ij = unflat(idx);
        return {coord(ij[0]), n == 2 ? coord(ij[1]) : 0.0};
    }

    /// Trapezoid quadrature weight of flat index (product of axis weights).
    double quad_weight(std::size_t idx) const;

    bool same_shape(const Grid& o) const {
        return n == o.n && npts == o.npts && L == o.L;
    }
};

using GridFn = std::vector<double>;

} // namespace krf
