#pragma once

// Critical points of height functions h_phi = height(phi, f(.)) on an atlas:
// grid seeding, damped Newton on the gradient, ambient deduplication and
// Hessian classification.

#include "affcurv/exterior.hpp"
#include "affcurv/manifold.hpp"

#include <optional>
#include <string>
#include <vector>

namespace affcurv {

struct SearchConfig {
    int seed_resolution = 64;  // grid nodes per axis and chart
    double grad_tol = 1e-9;    // times |phi| * diameter
    double morse_tol = 1e-8;   // on det Hess / det(d1^T d1), times |phi|^n
    double dedup_rel = 1e-5;   // times diameter
    int max_newton = 50;
};

struct CriticalPointRecord {
    int chart = 0;
    Vec u;
    Vec point;
    double height = 0.0;
    double grad_residual = 0.0;
    Vec hessian_eigenvalues;  // chart coordinates, ascending
    double hessian_det = 0.0;  // det Hess / det(d1^T d1)
    int index = 0;             // number of negative eigenvalues
    bool degenerate = false;
};

struct MorseCount {
    MultiCovector phi;
    std::vector<CriticalPointRecord> records;
    bool morse = false;  // no degenerate record, at least one min and one max
    int seeds = 0;
    int converged = 0;
    int diverged = 0;

    int count() const { return static_cast<int>(records.size()); }
    int minima() const;
    int maxima() const;
    int index_sum() const;  // sum of (-1)^index
};

// Holds the seed grids of an atlas so that many phi can be searched cheaply.
// The atlas must outlive the finder.
class CriticalPointFinder {
public:
    explicit CriticalPointFinder(const Atlas& atlas, SearchConfig config = {});

    const Atlas& atlas() const { return *atlas_; }
    const SearchConfig& config() const { return config_; }
    int grid_size() const;

    MorseCount find(const MultiCovector& phi) const;

    // Damped Newton from u0 on the gradient of <w, f>; nullopt when the
    // iterate leaves the valid box, stalls or exhausts max_newton.
    std::optional<CriticalPointRecord> refine(int chart, const Vec& u0, const Vec& w) const;

private:
    struct ChartGrid {
        std::vector<int> counts;
        std::vector<Vec> nodes;
        Mat d1t;  // row node * n + i holds d_i f at the node
    };

    std::vector<int> seeds_for(int chart, const Vec& w) const;

    const Atlas* atlas_;
    SearchConfig config_;
    std::vector<ChartGrid> grids_;
};

// Throws InputError when phi = 0.
MorseCount find_critical_points(const Atlas& atlas, const MultiCovector& phi, const SearchConfig& config = {});

// h_phi(x) - h_phi(p) keeps one sign (up to supp_tol * diameter * |phi|) over the points.
bool is_supporting_direction(std::span<const Vec> points, const MultiCovector& phi,
                             const CriticalPointRecord& record, double supp_tol = 1e-7);
bool is_supporting_direction(const Atlas& atlas, const MultiCovector& phi, const CriticalPointRecord& record,
                             int resolution = 64, double supp_tol = 1e-7);

// Ambient images of sample_parameters(atlas, resolution).
std::vector<Vec> sample_points(const Atlas& atlas, int resolution);
double bounding_diameter(std::span<const Vec> points);

}  // namespace affcurv
