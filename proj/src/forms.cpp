#include "affcurv/forms.hpp"

#include "affcurv/error.hpp"

#include <cmath>

namespace affcurv {

Form sphere_form(int n) {
    if (n < 1 || n > kMaxParams) throw InputError("sphere_form: unsupported dimension");
    ClosedForm map = [n](std::span<const Taylor2> u, std::span<Taylor2> x) {
        // x_{n+1} = cos psi_1, x_n = sin psi_1 cos psi_2, ..., last pair uses v.
        Taylor2 s(1.0);
        for (int k = 0; k < n - 1; ++k) {
            x[n - k] = s * cos(u[k]);
            s = s * sin(u[k]);
        }
        x[0] = s * cos(u[n - 1]);
        x[1] = s * sin(u[n - 1]);
    };
    return {std::move(map), n, n + 1};
}

Form linear_image(const Form& base, const Mat& A, const Vec& b) {
    if (A.cols() != base.ambient_dim || b.size() != A.rows()) throw InputError("linear_image: shape mismatch");
    const int inner = base.ambient_dim;
    ClosedForm map = [f = base.map, A, b, inner](std::span<const Taylor2> u, std::span<Taylor2> x) {
        std::vector<Taylor2> y(inner);
        f(u, y);
        for (int r = 0; r < A.rows(); ++r) {
            Taylor2 acc(b[r]);
            for (int c = 0; c < inner; ++c) {
                if (A(r, c) != 0.0) acc = acc + A(r, c) * y[c];
            }
            x[r] = acc;
        }
    };
    return {std::move(map), base.param_dim, static_cast<int>(A.rows())};
}

Form linear_image(const Form& base, const Mat& A) { return linear_image(base, A, Vec::Zero(A.rows())); }

Mat pole_rotation3() {
    Mat R = Mat::Zero(3, 3);
    R(0, 2) = 1.0;
    R(1, 1) = 1.0;
    R(2, 0) = -1.0;
    return R;
}

Mat pole_permutation4() {
    Mat P = Mat::Zero(4, 4);
    P(0, 2) = P(1, 3) = P(2, 0) = P(3, 1) = 1.0;
    return P;
}

Form torus_form(double R, double a) {
    if (!(a > 0.0) || !(R > a)) throw InputError("torus_form: need R > a > 0");
    ClosedForm map = [R, a](std::span<const Taylor2> u, std::span<Taylor2> x) {
        const Taylor2 rho = R + a * cos(u[0]);
        x[0] = rho * cos(u[1]);
        x[1] = rho * sin(u[1]);
        x[2] = a * sin(u[0]);
    };
    return {std::move(map), 2, 3};
}

Form plane_form() {
    ClosedForm map = [](std::span<const Taylor2> u, std::span<Taylor2> x) {
        x[0] = u[0];
        x[1] = u[1];
        x[2] = Taylor2(0.0);
    };
    return {std::move(map), 2, 3};
}

Form dumbbell_form(bool rotated, double depth, double width) {
    if (!(depth >= 0.0 && depth < 1.0) || !(width > 0.0)) throw InputError("dumbbell_form: bad neck parameters");
    const Form s = rotated ? linear_image(sphere_form(2), pole_rotation3()) : sphere_form(2);
    ClosedForm map = [f = s.map, depth, width](std::span<const Taylor2> u, std::span<Taylor2> x) {
        std::array<Taylor2, 3> p;
        f(u, p);
        const Taylor2 w = 1.0 - depth * exp(-width * p[2] * p[2]);
        x[0] = p[0] * w;
        x[1] = p[1] * w;
        x[2] = p[2];
    };
    return {std::move(map), 2, 3};
}

Taylor2 sigma_E(const Taylor2& u) { return u - pow(1.0 - u * u * u * u, 0.25); }
Taylor2 sigma_F(const Taylor2& u) { return u + pow(1.0 - u * u * u * u, 0.25); }

Form sigma_form(int sign) {
    const double s = sign >= 0 ? 1.0 : -1.0;
    ClosedForm map = [s](std::span<const Taylor2> u, std::span<Taylor2> x) {
        const Taylor2 e = sigma_E(u[0]);
        x[0] = e * cos(u[1]);
        x[1] = e * sin(u[1]);
        x[2] = s * sigma_F(u[0]);
    };
    return {std::move(map), 2, 3};
}

Form sigma_cap_form(int sign) {
    const double s = sign >= 0 ? 1.0 : -1.0;
    ClosedForm map = [s](std::span<const Taylor2> u, std::span<Taylor2> x) {
        const Taylor2 r2 = u[0] * u[0] + u[1] * u[1];
        x[0] = u[0];
        x[1] = u[1];
        x[2] = s * sqrt(sqrt(8.0 + 8.0 * r2 * r2) - 3.0 * r2);
    };
    return {std::move(map), 2, 3};
}

namespace {

void expect_params(const std::string& name, const std::vector<double>& p, std::size_t count) {
    if (p.size() != count) {
        throw InputError("form " + name + ": expected " + std::to_string(count) + " parameters, got " +
                         std::to_string(p.size()));
    }
}

}  // namespace

Form make_form(const std::string& name, const std::vector<double>& p) {
    if (name == "sphere2") return expect_params(name, p, 0), sphere_form(2);
    if (name == "sphere2_rotated") return expect_params(name, p, 0), linear_image(sphere_form(2), pole_rotation3());
    if (name == "sphere3") return expect_params(name, p, 0), sphere_form(3);
    if (name == "sphere3_permuted") {
        return expect_params(name, p, 0), linear_image(sphere_form(3), pole_permutation4());
    }
    if (name == "torus") return expect_params(name, p, 2), torus_form(p[0], p[1]);
    if (name == "plane") return expect_params(name, p, 0), plane_form();
    if (name == "dumbbell") return expect_params(name, p, 0), dumbbell_form(false);
    if (name == "dumbbell_rotated") return expect_params(name, p, 0), dumbbell_form(true);
    if (name == "sigma_plus") return expect_params(name, p, 0), sigma_form(+1);
    if (name == "sigma_minus") return expect_params(name, p, 0), sigma_form(-1);
    if (name == "sigma_cap_top") return expect_params(name, p, 0), sigma_cap_form(+1);
    if (name == "sigma_cap_bottom") return expect_params(name, p, 0), sigma_cap_form(-1);
    throw InputError("unknown form: " + name);
}

std::vector<std::string> form_names() {
    return {"sphere2",  "sphere2_rotated",  "sphere3",    "sphere3_permuted", "torus",         "plane",
            "dumbbell", "dumbbell_rotated", "sigma_plus", "sigma_minus",      "sigma_cap_top", "sigma_cap_bottom"};
}

}  // namespace affcurv
