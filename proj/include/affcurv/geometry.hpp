#pragma once

// Affine hull detection, codimension reduction with the induced volume
// element omega_L, convexity certification and the minimality/convexity
// verdict.

#include "affcurv/curvature.hpp"
#include "affcurv/tac.hpp"

#include <optional>
#include <span>
#include <vector>

namespace affcurv {

struct HullInfo {
    int dim = 0;
    Mat directions;  // m x m orthonormal, ordered by decreasing singular value
    Vec singular_values;
    Vec base;  // centroid of the samples

    Mat basis() const { return directions.leftCols(dim); }
};

// dim = number of singular values above rank_tol * sigma_1 of the centred samples.
HullInfo affine_hull_dim(std::span<const Vec> points, double rank_tol = 1e-9);
HullInfo affine_hull_dim(const Atlas& atlas, int resolution, double rank_tol = 1e-9);

// f re-expressed in coordinates y of an (m-1)-dimensional subspace L
// containing the image, with omega_L(X_1..X_{m-1}) = omega(X_1..X_{m-1}, xi)
// equal to the plain determinant in y.
struct ReducedImmersion {
    Atlas atlas;
    TransversalFrame frame;
    Vec xi;            // the fixed transversal vector outside L
    int xi_index = 0;  // frame column it was taken from
    double kappa = 0.0;  // det[B, xi] for the orthonormal basis B of L
    Mat basis;           // m x (m-1), columns b_1 / kappa, b_2, ..., b_{m-1}
    Mat coords;          // (m-1) x m, y = coords * (x - base)
    Vec base;
    Mat lift;  // m x (m-1): coefficients of psi -> psi ^ xi
    EquiaffineReport check;

    MultiCovector lift_covector(const MultiCovector& psi) const { return MultiCovector(lift * psi.coeffs()); }
    Vec to_L(const Vec& x) const { return coords * (x - base); }
};

// One reduction step. Requires hull.dim < m and a frame vector transversal to L.
ReducedImmersion reduce(const Atlas& atlas, const TransversalFrame& frame, const HullInfo& hull,
                        int check_resolution = 8, int policy_resolution = 12);

struct ConvexityReport {
    bool convex = false;
    double supporting_fraction = 0.0;
    int samples = 0;
    int worst_sample = -1;
    int worst_chart = -1;
    Vec worst_u;
    double worst_violation = 0.0;  // min(-min s, max s) / (diameter * |nu|), 0 when supporting
};

// Codimension one only.
ConvexityReport convexity_certify(const Atlas& atlas, const TransversalFrame& frame, const UnitEllipsoid& S,
                                  int resolution, double supp_tol = 1e-7, Execution exec = Execution::parallel);

struct TheoremConfig {
    TacConfig tac;
    int hull_resolution = 24;
    int convexity_resolution = 48;
    double rank_tol = 1e-9;
    double supp_tol = 1e-7;
};

struct TheoremVerdict {
    int n = 0;
    int m = 0;
    MinimalityCertificate minimality;
    HullInfo hull;
    bool hull_is_hyperplane = false;  // hull dim = n + 1
    int reductions = 0;
    std::optional<TacReport> reduced_tau;
    std::optional<bool> tau_preserved;
    double reduced_equiaffine_max = -1.0;
    std::optional<ConvexityReport> convexity;  // absent when codimension stays above one
    bool convex = false;
    bool agreement = false;  // minimal <=> (hull_is_hyperplane and convex)
};

TheoremVerdict main_theorem_check(const Atlas& atlas, const TransversalFrame& frame, const UnitEllipsoid& S,
                                  const TheoremConfig& config = {});

}  // namespace affcurv
