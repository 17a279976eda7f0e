#pragma once

// Transversal frames (N, theta_perp), the Gauss decomposition of second
// derivatives into induced connection and affine fundamental form, and the
// induced volume theta.

#include "affcurv/manifold.hpp"

#include <functional>
#include <string>

namespace affcurv {

struct FrameValues {
    Mat xi;                   // m x r, columns xi_1 .. xi_r
    double theta_perp = 1.0;  // theta_perp(xi_1, ..., xi_r)
};

class TransversalFrame {
public:
    using Eval = std::function<FrameValues(const Chart&, const Vec& u, const ImmersionJet&)>;

    TransversalFrame(std::string id, int rank, Eval eval);

    const std::string& id() const { return id_; }
    int rank() const { return rank_; }
    FrameValues eval(const Chart& chart, const Vec& u, const ImmersionJet& jet) const;

private:
    std::string id_;
    int rank_;
    Eval eval_;
};

// xi = f (centro-affine).
TransversalFrame position_frame();
// Codimension one: unit vector orthogonal to the tangent space, outward for
// sign = +1 with respect to the chart orientations.
TransversalFrame euclidean_normal_frame(int sign = 1);
// Codimension two: (unit normal inside the complement of c, c) for a constant c.
TransversalFrame normal_plus_constant_frame(const Vec& c);
// Lookup for the CLI and manifests: position, euclidean_normal, euclidean_inward, normal_e<m>.
TransversalFrame frame_by_name(const std::string& name, int ambient_dim);

struct FundamentalData {
    int n = 0;
    int r = 0;
    Mat christoffel;    // n x n(n+1)/2, column sym_index(i, j) = Gamma^k_ij over k
    Mat alpha;          // r x n(n+1)/2, xi-coefficients of alpha(d_i, d_j)
    Mat alpha_vectors;  // m x n(n+1)/2, alpha(d_i, d_j) as ambient vectors
    Mat solve_matrix;   // [d1 | xi]
    double theta_value = 0.0;
    double residual = 0.0;  // max |[d1 | xi] c - d_i d_j f|

    double gamma(int k, int i, int j) const { return christoffel(k, sym_index(i, j, n)); }
    double alpha_at(int a, int i, int j) const { return alpha(a, sym_index(i, j, n)); }
    Vec alpha_vector(int i, int j) const { return alpha_vectors.col(sym_index(i, j, n)); }
};

// Throws DegeneracyError when [d1 | xi] is singular.
FundamentalData decompose(const ImmersionJet& jet, const FrameValues& frame);

struct EquiaffineReport {
    double max_nabla_theta = 0.0;  // max_k |d_k theta - sum_i Gamma^i_ki theta|
    double max_abs_theta = 0.0;
    double min_abs_theta = 0.0;
    double max_residual = 0.0;
    int worst_chart = -1;
    Vec worst_u;
    int samples = 0;
    bool passed(double tol) const { return max_nabla_theta < tol; }
};

// step = 0 selects 1e-5 (chart parameters are O(1) on catalog inputs).
EquiaffineReport check_equiaffine(const Atlas& atlas, const TransversalFrame& frame, int resolution,
                                  double step = 0.0);

// theta_value^2: det over a theta-unimodular frame = det over d_1..d_n / divisor.
double unimodular_rescale(const FundamentalData& fd);

}  // namespace affcurv
