#pragma once

#include "krf/grid.hpp"

#include <array>
#include <cstddef>
#include <vector>

namespace krf {

/// Finite-difference and reduction kernels over grid functions.
///
/// Every kernel has a serial reference implementation and an OpenMP one;
/// the unsuffixed entry point dispatches on par::mode(). Reductions use
/// fixed contiguous chunking so results are deterministic for a given
/// thread count.
namespace grid_ops {

/// Coefficients of a finite-difference stencil for the m-th derivative
/// on integer offsets, exact on polynomials of degree < offsets.size().
std::vector<double> stencil_coeffs(int m, const std::vector<int>& offsets);

/// m-th derivative (m in 1..3) along `axis`, 4th-order accurate,
/// shifted (one-sided) windows near the box boundary.
void deriv_axis_serial(const Grid& g, const double* f, int axis, int m, double* out);
void deriv_axis_omp(const Grid& g, const double* f, int axis, int m, double* out);
GridFn deriv_axis(const Grid& g, const GridFn& f, int axis, int m);

/// All distinct second derivatives. n=1: {f_00}. n=2: {f_00, f_11, f_01}.
std::vector<GridFn> hessian_fields(const Grid& g, const GridFn& f);

/// All distinct third derivatives. n=1: {f_000}. n=2: {f_000, f_001, f_011, f_111}.
std::vector<GridFn> third_fields(const Grid& g, const GridFn& f);

/// Gradient components. n=1: {f_0}. n=2: {f_0, f_1}.
std::vector<GridFn> grad_fields(const Grid& g, const GridFn& f);

/// Sum of f_i * w_i (deterministic chunked reduction).
double dot_serial(std::size_t n, const double* f, const double* w);
double dot_omp(std::size_t n, const double* f, const double* w);
double dot(const GridFn& f, const GridFn& w);

/// Quadrature of a grid function against a density: sum f*dens*quad_weight.
double integrate(const Grid& g, const GridFn& f, const GridFn& dens);
/// Quadrature of a density alone.
double integrate(const Grid& g, const GridFn& dens);

double max_abs_serial(std::size_t n, const double* f);
double max_abs_omp(std::size_t n, const double* f);
double max_abs(const GridFn& f);

double max_serial(std::size_t n, const double* f);
double max_omp(std::size_t n, const double* f);
double max_val(const GridFn& f);
double min_val(const GridFn& f);

/// log of sum_i w_i * exp(a_i), overflow-free. Weights must be >= 0;
/// zero-weight entries are skipped.
double log_sum_exp_weighted_serial(std::size_t n, const double* a, const double* w);
double log_sum_exp_weighted_omp(std::size_t n, const double* a, const double* w);
double log_sum_exp_weighted(const GridFn& a, const GridFn& w);

/// y = alpha*x + y (dispatched).
void axpy(double alpha, const GridFn& x, GridFn& y);

} // namespace grid_ops
} // namespace krf
