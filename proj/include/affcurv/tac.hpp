#pragma once

// Total absolute curvature as the average number of critical points of
// Morse height functions over uniformly drawn phi in S.

#include "affcurv/equiaffine.hpp"
#include "affcurv/kernels.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace affcurv {

struct TacConfig {
    int sample_count = 500;  // accepted (Morse) draws
    std::uint64_t seed = 1;
    SearchConfig search;
    double max_rejection_rate = 0.5;
    int equiaffine_resolution = 8;  // 0 skips the frame check
    double equiaffine_tol = 1e-5;
    Execution exec = Execution::parallel;
    // A Morse draw whose index sum misses chi has lost critical points; it is
    // searched again on seed grids 2x, 4x, ... finer, up to this many times.
    int max_refinements = 2;
};

struct DrawDiagnostic {
    int draw = 0;
    Vec coefficients;  // phi in the zeta basis
    int seeds = 0;
    int converged = 0;
    int diverged = 0;
    int count = 0;
    int index_sum = 0;
    bool morse = false;
    int refinements = 0;  // finer seed grids used for this draw
};

struct TacReport {
    double tau_estimate = 0.0;
    double std_error = 0.0;
    std::map<int, int> histogram;  // critical-point count -> accepted draws
    int non_morse_rejections = 0;
    int sample_count = 0;  // accepted draws
    int draws = 0;         // accepted + rejected
    std::string ellipsoid_id;
    std::string frame_id;
    std::optional<int> euler_characteristic;
    int index_sum_mismatches = 0;  // accepted draws with sum (-1)^index != chi after refinement
    int refined_draws = 0;         // draws searched again on a finer grid
    double equiaffine_max = -1.0;  // -1 when not checked
    bool equiaffine_warning = false;
    std::vector<DrawDiagnostic> diagnostics;
    std::vector<MorseCount> accepted;  // in draw order

    double rejection_rate() const { return draws == 0 ? 0.0 : static_cast<double>(non_morse_rejections) / draws; }
};

// Throws PathologyError when the rejection rate exceeds max_rejection_rate.
TacReport estimate_tau(const Atlas& atlas, const TransversalFrame& frame, const UnitEllipsoid& S,
                       const TacConfig& config = {});

struct Witness {
    int draw = 0;
    MultiCovector phi;
    int count = 0;
};

struct MinimalityCertificate {
    bool minimal = false;
    std::optional<Witness> witness;  // first accepted draw with more than two critical points
    TacReport report;
};

MinimalityCertificate certify_minimal(const Atlas& atlas, const TransversalFrame& frame, const UnitEllipsoid& S,
                                      const TacConfig& config = {});

struct InvarianceResult {
    bool all_minimal = false;
    std::vector<MinimalityCertificate> certificates;
};

InvarianceResult ellipsoid_invariance(const Atlas& atlas, const TransversalFrame& frame,
                                      const std::vector<UnitEllipsoid>& ellipsoids, const TacConfig& config = {});

// tau >= sum b_k - 3 stderr. Throws InputError when betti is empty.
bool chern_lashof_check(const TacReport& report, const std::vector<int>& betti);

}  // namespace affcurv
