#include "krf/parallel.hpp"

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <limits>
#include <thread>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace krf::par {

namespace {

int resolve_default_threads() {
    if (const char* env = std::getenv("KRF_LAB_THREADS")) {
        int v = std::atoi(env);
        if (v > 0) return v;
    }
    unsigned hw = std::thread::hardware_concurrency();
    return hw > 0 ? static_cast<int>(hw) : 1;
}

std::atomic<int> g_threads{0};

Mode resolve_default_mode() {
#ifdef _OPENMP
    return Mode::OpenMP;
#else
    return Mode::Serial;
#endif
}

std::atomic<Mode> g_mode{resolve_default_mode()};

} // namespace

int threads() {
    int t = g_threads.load(std::memory_order_relaxed);
    if (t == 0) {
        t = resolve_default_threads();
        g_threads.store(t, std::memory_order_relaxed);
    }
    return t;
}

void set_threads(int n) { g_threads.store(std::max(1, n), std::memory_order_relaxed); }

Mode mode() { return g_mode.load(std::memory_order_relaxed); }
void set_mode(Mode m) { g_mode.store(m, std::memory_order_relaxed); }

namespace detail {

std::vector<std::pair<std::size_t, std::size_t>> chunks(std::size_t n, int nthreads) {
    std::vector<std::pair<std::size_t, std::size_t>> out;
    if (n == 0) return out;
    std::size_t t = static_cast<std::size_t>(std::max(1, nthreads));
    t = std::min(t, n);
    std::size_t base = n / t, rem = n % t, begin = 0;
    for (std::size_t k = 0; k < t; ++k) {
        std::size_t len = base + (k < rem ? 1 : 0);
        out.emplace_back(begin, begin + len);
        begin += len;
    }
    return out;
}

} // namespace detail

void for_index(std::size_t n, const std::function<void(std::size_t)>& body) {
#ifdef _OPENMP
    if (mode() == Mode::OpenMP && threads() > 1 && n > 256) {
        const int nt = threads();
#pragma omp parallel for schedule(static) num_threads(nt)
        for (long long i = 0; i < static_cast<long long>(n); ++i)
            body(static_cast<std::size_t>(i));
        return;
    }
#endif
    for (std::size_t i = 0; i < n; ++i) body(i);
}

double sum_index(std::size_t n, const std::function<double(std::size_t)>& f) {
    auto cs = detail::chunks(n, mode() == Mode::OpenMP ? threads() : 1);
    if (cs.empty()) return 0.0;
    std::vector<double> partial(cs.size(), 0.0);
#ifdef _OPENMP
    if (mode() == Mode::OpenMP && cs.size() > 1) {
        const int nt = threads();
#pragma omp parallel for schedule(static) num_threads(nt)
        for (long long k = 0; k < static_cast<long long>(cs.size()); ++k) {
            double s = 0.0;
            for (std::size_t i = cs[k].first; i < cs[k].second; ++i) s += f(i);
            partial[k] = s;
        }
    } else
#endif
    {
        for (std::size_t k = 0; k < cs.size(); ++k) {
            double s = 0.0;
            for (std::size_t i = cs[k].first; i < cs[k].second; ++i) s += f(i);
            partial[k] = s;
        }
    }
    double total = 0.0;
    for (double p : partial) total += p;  // fixed order
    return total;
}

double max_index(std::size_t n, const std::function<double(std::size_t)>& f) {
    auto cs = detail::chunks(n, mode() == Mode::OpenMP ? threads() : 1);
    double worst = -std::numeric_limits<double>::infinity();
    std::vector<double> partial(cs.size(), worst);
#ifdef _OPENMP
    if (mode() == Mode::OpenMP && cs.size() > 1) {
        const int nt = threads();
#pragma omp parallel for schedule(static) num_threads(nt)
        for (long long k = 0; k < static_cast<long long>(cs.size()); ++k) {
            double m = -std::numeric_limits<double>::infinity();
            for (std::size_t i = cs[k].first; i < cs[k].second; ++i) m = std::max(m, f(i));
            partial[k] = m;
        }
    } else
#endif
    {
        for (std::size_t k = 0; k < cs.size(); ++k) {
            double m = -std::numeric_limits<double>::infinity();
            for (std::size_t i = cs[k].first; i < cs[k].second; ++i) m = std::max(m, f(i));
            partial[k] = m;
        }
    }
    for (double p : partial) worst = std::max(worst, p);
    return worst;
}

} // namespace krf::par
