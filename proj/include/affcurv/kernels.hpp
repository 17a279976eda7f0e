#pragma once

// The two data-parallel loops of the pipeline, each with a serial reference
// and an OpenMP version that must agree exactly.

#include "affcurv/morse.hpp"

#include <span>
#include <vector>

namespace affcurv {

enum class Execution { serial, parallel };

// One MorseCount per phi, in input order.
std::vector<MorseCount> critical_point_sweep_serial(const CriticalPointFinder& finder,
                                                    std::span<const MultiCovector> phis);
std::vector<MorseCount> critical_point_sweep_omp(const CriticalPointFinder& finder,
                                                 std::span<const MultiCovector> phis);
std::vector<MorseCount> critical_point_sweep(const CriticalPointFinder& finder, std::span<const MultiCovector> phis,
                                             Execution exec);

struct SupportExtent {
    double min_s = 0.0;
    double max_s = 0.0;
};

// For every p: extremes of <covectors[p], points[x] - points[p]> over all x.
std::vector<SupportExtent> support_sweep_serial(std::span<const Vec> points, std::span<const Vec> covectors);
std::vector<SupportExtent> support_sweep_omp(std::span<const Vec> points, std::span<const Vec> covectors);
std::vector<SupportExtent> support_sweep(std::span<const Vec> points, std::span<const Vec> covectors, Execution exec);

int max_threads();
void set_threads(int count);

}  // namespace affcurv
