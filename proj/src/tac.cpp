#include "affcurv/tac.hpp"

#include "affcurv/error.hpp"

#include <cmath>
#include <memory>
#include <numeric>
#include <sstream>

namespace affcurv {

TacReport estimate_tau(const Atlas& atlas, const TransversalFrame& frame, const UnitEllipsoid& S,
                       const TacConfig& config) {
    if (config.sample_count < 1) throw InputError("estimate_tau: sample_count must be positive");
    if (S.dim() != atlas.ambient_dim()) throw InputError("estimate_tau: ellipsoid dimension mismatch");
    if (!(config.max_rejection_rate >= 0.0 && config.max_rejection_rate < 1.0)) {
        throw InputError("estimate_tau: max_rejection_rate must lie in [0, 1)");
    }

    TacReport rep;
    rep.ellipsoid_id = S.id();
    rep.frame_id = frame.id();
    rep.euler_characteristic = atlas.euler_characteristic();
    if (config.equiaffine_resolution > 0) {
        rep.equiaffine_max = check_equiaffine(atlas, frame, config.equiaffine_resolution).max_nabla_theta;
        rep.equiaffine_warning = !(rep.equiaffine_max < config.equiaffine_tol);
    }

    // Draw order is fixed by the seed; rejected draws are replaced from the
    // same stream, so results do not depend on the number of threads.
    const int target = config.sample_count;
    const int budget = static_cast<int>(std::ceil(target / (1.0 - config.max_rejection_rate)));
    const std::vector<MultiCovector> pool = sample_ellipsoid(S, config.seed, std::max(budget, target));
    const CriticalPointFinder finder(atlas, config.search);
    if (config.max_refinements < 0) throw InputError("estimate_tau: max_refinements must be non-negative");
    std::vector<std::unique_ptr<CriticalPointFinder>> finer;  // built on first use
    auto refine = [&](MorseCount& mc) {
        const int chi = *rep.euler_characteristic;
        int level = 0;
        while (mc.morse && mc.index_sum() != chi && level < config.max_refinements) {
            if (static_cast<int>(finer.size()) == level) {
                SearchConfig sc = config.search;
                sc.seed_resolution <<= (level + 1);
                finer.push_back(std::make_unique<CriticalPointFinder>(atlas, sc));
            }
            mc = finer[level++]->find(mc.phi);
        }
        return level;
    };

    std::size_t next = 0;
    while (rep.sample_count < target) {
        const std::size_t want = static_cast<std::size_t>(target - rep.sample_count);
        if (next + want > pool.size()) {
            std::ostringstream msg;
            msg << "non-Morse rejection rate above " << config.max_rejection_rate << " (" << rep.non_morse_rejections
                << " of " << rep.draws << " draws); input looks symmetric or degenerate";
            throw PathologyError(msg.str());
        }
        const std::span<const MultiCovector> chunk(pool.data() + next, want);
        std::vector<MorseCount> counts = critical_point_sweep(finder, chunk, config.exec);
        for (std::size_t k = 0; k < counts.size(); ++k) {
            MorseCount& mc = counts[k];
            const int refinements = rep.euler_characteristic ? refine(mc) : 0;
            rep.refined_draws += refinements > 0;
            DrawDiagnostic d;
            d.draw = static_cast<int>(next + k);
            d.coefficients = S.coefficients(mc.phi);
            d.seeds = mc.seeds;
            d.converged = mc.converged;
            d.diverged = mc.diverged;
            d.count = mc.count();
            d.index_sum = mc.index_sum();
            d.morse = mc.morse;
            d.refinements = refinements;
            rep.diagnostics.push_back(std::move(d));
            ++rep.draws;
            if (!mc.morse) {
                ++rep.non_morse_rejections;
                continue;
            }
            ++rep.sample_count;
            ++rep.histogram[mc.count()];
            if (rep.euler_characteristic && mc.index_sum() != *rep.euler_characteristic) ++rep.index_sum_mismatches;
            rep.accepted.push_back(std::move(mc));
        }
        next += want;
    }

    double sum = 0.0, sumsq = 0.0;
    for (const auto& [count, freq] : rep.histogram) {
        sum += static_cast<double>(count) * freq;
        sumsq += static_cast<double>(count) * count * freq;
    }
    const double n = rep.sample_count;
    rep.tau_estimate = sum / n;
    const double var = n > 1 ? std::max(0.0, (sumsq - n * rep.tau_estimate * rep.tau_estimate) / (n - 1.0)) : 0.0;
    rep.std_error = std::sqrt(var / n);
    if (rep.rejection_rate() > config.max_rejection_rate) {
        throw PathologyError("non-Morse rejection rate above the configured maximum");
    }
    return rep;
}

MinimalityCertificate certify_minimal(const Atlas& atlas, const TransversalFrame& frame, const UnitEllipsoid& S,
                                      const TacConfig& config) {
    MinimalityCertificate cert;
    cert.report = estimate_tau(atlas, frame, S, config);
    cert.minimal = true;
    for (std::size_t i = 0, a = 0; i < cert.report.diagnostics.size(); ++i) {
        const DrawDiagnostic& d = cert.report.diagnostics[i];
        if (!d.morse) continue;
        const MorseCount& mc = cert.report.accepted[a++];
        if (d.count > 2) {
            cert.minimal = false;
            cert.witness = Witness{d.draw, mc.phi, d.count};
            break;
        }
    }
    return cert;
}

InvarianceResult ellipsoid_invariance(const Atlas& atlas, const TransversalFrame& frame,
                                      const std::vector<UnitEllipsoid>& ellipsoids, const TacConfig& config) {
    if (ellipsoids.empty()) throw InputError("ellipsoid_invariance: no ellipsoids");
    InvarianceResult res;
    res.all_minimal = true;
    for (const UnitEllipsoid& S : ellipsoids) {
        res.certificates.push_back(certify_minimal(atlas, frame, S, config));
        res.all_minimal = res.all_minimal && res.certificates.back().minimal;
    }
    return res;
}

bool chern_lashof_check(const TacReport& report, const std::vector<int>& betti) {
    if (betti.empty()) throw InputError("chern_lashof_check: Betti numbers unknown for this input");
    const int total = std::accumulate(betti.begin(), betti.end(), 0);
    return report.tau_estimate >= total - 3.0 * report.std_error;
}

}  // namespace affcurv
