#pragma once

#include <cstddef>
#include <functional>
#include <vector>

namespace krf::par {

/// Number of worker threads the kernels may use. Resolution order:
/// explicit set_threads() > KRF_LAB_THREADS env var > hardware count.
int threads();
void set_threads(int n);

enum class Mode { Serial, OpenMP };

/// Active kernel mode. Serial is the reference implementation; OpenMP is
/// the default when compiled with it and threads() > 1.
Mode mode();
void set_mode(Mode m);

/// Parallel loop over [0, n). Body must be data-parallel (no ordering).
void for_index(std::size_t n, const std::function<void(std::size_t)>& body);

namespace detail {
// Fixed contiguous chunking so reductions are deterministic for a given
// thread count: each chunk is summed serially, chunks combined in order.
std::vector<std::pair<std::size_t, std::size_t>> chunks(std::size_t n, int nthreads);
} // namespace detail

/// Deterministic sum reduction of f(i) over [0, n).
double sum_index(std::size_t n, const std::function<double(std::size_t)>& f);

/// Deterministic max reduction of f(i) over [0, n). n must be > 0.
double max_index(std::size_t n, const std::function<double(std::size_t)>& f);

} // namespace krf::par
