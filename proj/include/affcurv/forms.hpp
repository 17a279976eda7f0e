#pragma once

// Closed-form chart maps used by the catalog and by manifests.

#include "affcurv/manifold.hpp"

#include <string>
#include <vector>

namespace affcurv {

struct Form {
    ClosedForm map;
    int param_dim = 0;
    int ambient_dim = 0;
};

// Hyperspherical coordinates (psi_1, ..., psi_{n-1}, v) on the unit n-sphere:
// n = 2 gives (sin t cos v, sin t sin v, cos t).
Form sphere_form(int n);

// x -> A x + b applied after another form.
Form linear_image(const Form& base, const Mat& A, const Vec& b);
Form linear_image(const Form& base, const Mat& A);

// Rotation (x, y, z) -> (z, y, -x), used to cover the poles of sphere_form(2).
Mat pole_rotation3();
// Even coordinate permutation (x, y, z, w) -> (z, w, x, y) for sphere_form(3).
Mat pole_permutation4();

// ((R + a cos u) cos v, (R + a cos u) sin v, a sin u)
Form torus_form(double R, double a);

// (u, v) -> (u, v, 0)
Form plane_form();

// Surface of revolution squeezed at z = 0: (x W(z), y W(z), z) of a sphere
// chart, W(z) = 1 - depth * exp(-width * z^2).
Form dumbbell_form(bool rotated, double depth = 0.6, double width = 8.0);

// Example surface Sigma: (E(u) cos v, E(u) sin v, sign * F(u)) with
// E(u) = u - (1 - u^4)^(1/4) and F(u) = u + (1 - u^4)^(1/4).
Form sigma_form(int sign);
// Graph z = sign * sqrt(sqrt(8 + 8 s^2) - 3 s), s = x^2 + y^2, over the poles of Sigma.
Form sigma_cap_form(int sign);

Taylor2 sigma_E(const Taylor2& u);
Taylor2 sigma_F(const Taylor2& u);

// Lookup by name for manifests: sphere2, sphere2_rotated, sphere3,
// sphere3_permuted, torus (R a), plane, dumbbell, dumbbell_rotated,
// sigma_plus, sigma_minus, sigma_cap_top, sigma_cap_bottom.
Form make_form(const std::string& name, const std::vector<double>& params = {});
std::vector<std::string> form_names();

}  // namespace affcurv
