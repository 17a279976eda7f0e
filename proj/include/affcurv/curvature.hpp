#pragma once

// Gauss map into the unit ellipsoid and the Lipschitz-Killing curvature.

#include "affcurv/equiaffine.hpp"
#include "affcurv/exterior.hpp"

#include <span>
#include <vector>

namespace affcurv {

struct GaussValue {
    MultiCovector phi;    // on S
    double mu = 0.0;      // phi = orientation * mu * df(e_1) ^ ... ^ df(e_n) ^ fiber
    int orientation = 1;  // sheet of the fiber (eta_+ or eta_-)
};

// e_1 = d_1 / theta, e_k = d_k otherwise, so theta(e_1, ..., e_n) = 1.
// fiber holds the r - 1 vectors of the fiber element (empty for r = 1).
GaussValue gauss_map(const ImmersionJet& jet, const FundamentalData& fd, const Mat& fiber, const UnitEllipsoid& S,
                     int orientation = 1);
GaussValue gauss_map(const ImmersionJet& jet, const FundamentalData& fd, const UnitEllipsoid& S,
                     int orientation = 1);

// The n x n matrix [height(phi, alpha(d_i, d_j))]; this is the chart Hessian
// of h_phi at p whenever phi annihilates the tangent space.
Mat height_alpha_matrix(const FundamentalData& fd, const MultiCovector& phi);

// G = (-1)^n det[height(phi, alpha(d_i, d_j))] / theta^2.
double lipschitz_killing(const FundamentalData& fd, const GaussValue& g);

struct GaussJacobian {
    double sigma_min = 0.0;
    double sigma_max = 0.0;
};

// Codimension one. Central differences of p -> nu(p) in the coefficient
// sphere, measured against an orthonormal basis of df(T_pM).
GaussJacobian gauss_jacobian_rank(const Chart& chart, const Vec& u, const TransversalFrame& frame,
                                  const UnitEllipsoid& S, double step = 1e-5);

struct GaussScanRow {
    Vec u;
    double G_plus = 0.0;   // G(eta_+)
    double G_minus = 0.0;  // G(eta_-)
    double sigma_min = 0.0;
};

// G on both sheets and sigma_min(d nu) at the given parameters of one chart (codimension one).
std::vector<GaussScanRow> gauss_scan(const Chart& chart, const TransversalFrame& frame, const UnitEllipsoid& S,
                                     std::span<const Vec> params, double step = 1e-5);

}  // namespace affcurv
