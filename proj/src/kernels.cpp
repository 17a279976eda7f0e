#include "affcurv/kernels.hpp"

#include "affcurv/error.hpp"

#include <omp.h>

#include <algorithm>
#include <exception>

namespace affcurv {

std::vector<MorseCount> critical_point_sweep_serial(const CriticalPointFinder& finder,
                                                    std::span<const MultiCovector> phis) {
    std::vector<MorseCount> out;
    out.reserve(phis.size());
    for (const auto& phi : phis) out.push_back(finder.find(phi));
    return out;
}

std::vector<MorseCount> critical_point_sweep_omp(const CriticalPointFinder& finder,
                                                 std::span<const MultiCovector> phis) {
    const long count = static_cast<long>(phis.size());
    std::vector<MorseCount> out(count);
    std::exception_ptr failure;
#pragma omp parallel for schedule(dynamic, 1)
    for (long i = 0; i < count; ++i) {
        try {
            out[i] = finder.find(phis[i]);
        } catch (...) {
#pragma omp critical(affcurv_sweep_failure)
            if (!failure) failure = std::current_exception();
        }
    }
    if (failure) std::rethrow_exception(failure);
    return out;
}

std::vector<MorseCount> critical_point_sweep(const CriticalPointFinder& finder, std::span<const MultiCovector> phis,
                                             Execution exec) {
    return exec == Execution::parallel ? critical_point_sweep_omp(finder, phis)
                                       : critical_point_sweep_serial(finder, phis);
}

namespace {

void check_support_input(std::span<const Vec> points, std::span<const Vec> covectors) {
    if (points.size() != covectors.size()) throw InputError("support_sweep: one covector per point expected");
}

SupportExtent extent_at(std::span<const Vec> points, const Vec& w, const Vec& p) {
    const double base = w.dot(p);
    SupportExtent e;
    for (const Vec& x : points) {
        const double s = w.dot(x) - base;
        e.min_s = std::min(e.min_s, s);
        e.max_s = std::max(e.max_s, s);
    }
    return e;
}

}  // namespace

std::vector<SupportExtent> support_sweep_serial(std::span<const Vec> points, std::span<const Vec> covectors) {
    check_support_input(points, covectors);
    std::vector<SupportExtent> out(points.size());
    for (std::size_t p = 0; p < points.size(); ++p) out[p] = extent_at(points, covectors[p], points[p]);
    return out;
}

std::vector<SupportExtent> support_sweep_omp(std::span<const Vec> points, std::span<const Vec> covectors) {
    check_support_input(points, covectors);
    const long count = static_cast<long>(points.size());
    std::vector<SupportExtent> out(count);
#pragma omp parallel for schedule(static)
    for (long p = 0; p < count; ++p) out[p] = extent_at(points, covectors[p], points[p]);
    return out;
}

std::vector<SupportExtent> support_sweep(std::span<const Vec> points, std::span<const Vec> covectors,
                                         Execution exec) {
    return exec == Execution::parallel ? support_sweep_omp(points, covectors)
                                       : support_sweep_serial(points, covectors);
}

int max_threads() { return omp_get_max_threads(); }

void set_threads(int count) {
    if (count < 1) throw InputError("thread count must be positive");
    omp_set_num_threads(count);
}

}  // namespace affcurv
