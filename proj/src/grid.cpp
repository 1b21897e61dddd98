#include "krf/grid.hpp"

#include "krf/errors.hpp"

namespace krf {

Grid::Grid(int n_, int npts_, double L_) : n(n_), npts(npts_), L(L_) {
    if (n != 1 && n != 2) throw UnsupportedDimension("grid dimension must be 1 or 2");
    if (npts < 2) throw Error("grid needs at least 2 points per axis");
    h = 2.0 * L / (npts - 1);
}

double Grid::quad_weight(std::size_t idx) const {
    auto ij = unflat(idx);
    auto axis_w = [this](int i) { return (i == 0 || i == npts - 1) ? 0.5 * h : h; };
    double w = axis_w(ij[0]);
    if (n == 2) w *= axis_w(ij[1]);
    return w;
}

} // namespace krf
