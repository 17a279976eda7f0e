#pragma once

// Built-in example immersions with frames and known answers.

#include "affcurv/equiaffine.hpp"

#include <cmath>
#include <optional>
#include <string>
#include <vector>

namespace affcurv {

struct KnownTruth {
    std::optional<double> tau;
    std::optional<bool> convex;
    std::optional<int> hull_dim;
    std::vector<int> betti;
    std::optional<std::string> degeneracy_locus;
};

struct CatalogEntry {
    std::string name;
    std::string description;
    Atlas atlas;
    TransversalFrame frame;
    std::optional<TransversalFrame> alternative_frame;  // second (N, theta_perp) for frame comparisons
    KnownTruth known;
    int seed_resolution = 64;    // critical-point seeding, per axis
    int sample_resolution = 48;  // convexity / hull sampling, per axis
};

std::vector<std::string> catalog_names();
// Throws InputError for unknown names.
CatalogEntry catalog_entry(const std::string& name);

// The surface Sigma of the Kossowski example: two charts f_+ and f_- over
// u in [-(1/2)^(1/4), 0.49] and graph caps over the poles.
namespace sigma {

inline const double u_max = std::pow(0.5, 0.25);

double E(double u);
double F(double u);
double dE(double u);
double dF(double u);
double delta(double u);
// The closed-form transversal field on f_+ (sign = +1) or its mirror on f_-.
Vec xi(double u, double v, int sign = 1);
// Closed-form beta(u) of the Kossowski example; det alpha = u^2 beta / E^2 in chart coordinates.
double beta(double u);

TransversalFrame frame();

}  // namespace sigma

struct KossowskiReport {
    bool beta_positive = false;
    double beta_min = 0.0;  // min of det alpha / u^2 over the grid, u != 0
    double beta_min_u = 0.0;
    double lambda_at_0 = 0.0;
    double dlambda_at_0 = 0.0;
    double dlambda_closed_form = 0.0;  // sqrt(beta(0))
    double det_alpha_max_rel_error = 0.0;  // pipeline det alpha vs u^2 beta(u)
    double det_alpha_worst_u = 0.0;
    bool det_alpha_matches = false;       // max rel error <= 1e-6
    double det_alpha_e2_max_rel_error = 0.0;  // pipeline det alpha vs u^2 beta(u) / E(u)^2
    int grid = 0;
    double collar = 1e-3;
    double v = 0.3;
};

// Evaluates alpha on f_+ along v = const over a symmetric u-grid (odd size,
// containing 0) inside the collar. Throws VerdictError when beta <= 0 is found.
KossowskiReport kossowski_check(const CatalogEntry& entry, int grid = 2001, double collar = 1e-3,
                                double lambda_step = 1e-4);

// det alpha_xi in chart coordinates of f_+ at (u, v).
double sigma_det_alpha(const CatalogEntry& entry, double u, double v = 0.3);

}  // namespace affcurv
