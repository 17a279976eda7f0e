#include "affcurv/equiaffine.hpp"

#include "affcurv/error.hpp"
#include "affcurv/exterior.hpp"

#include <cmath>
#include <cstdlib>
#include <limits>
#include <sstream>

namespace affcurv {

TransversalFrame::TransversalFrame(std::string id, int rank, Eval eval)
    : id_(std::move(id)), rank_(rank), eval_(std::move(eval)) {
    if (rank_ < 1) throw InputError("transversal frame " + id_ + ": rank must be positive");
}

FrameValues TransversalFrame::eval(const Chart& chart, const Vec& u, const ImmersionJet& jet) const {
    FrameValues fv = eval_(chart, u, jet);
    if (fv.xi.rows() != jet.m() || fv.xi.cols() != rank_) {
        std::ostringstream msg;
        msg << "transversal frame " << id_ << ": expected " << jet.m() << " x " << rank_ << " vectors";
        throw InputError(msg.str());
    }
    return fv;
}

TransversalFrame position_frame() {
    return TransversalFrame("position", 1, [](const Chart&, const Vec&, const ImmersionJet& jet) {
        return FrameValues{jet.point, 1.0};
    });
}

TransversalFrame euclidean_normal_frame(int sign) {
    const double s = sign >= 0 ? 1.0 : -1.0;
    const std::string id = sign >= 0 ? "euclidean_normal" : "euclidean_inward";
    return TransversalFrame(id, 1, [s](const Chart& chart, const Vec&, const ImmersionJet& jet) {
        if (jet.m() != jet.n() + 1) throw InputError("euclidean normal frame needs codimension one");
        Vec w = height_covector(wedge_hyperplane(jet.d1));
        const double len = w.norm();
        if (!(len > 0.0)) throw DegeneracyError("euclidean normal frame: degenerate tangent plane");
        return FrameValues{(s * chart.orientation() / len) * w, 1.0};
    });
}

TransversalFrame normal_plus_constant_frame(const Vec& c) {
    return TransversalFrame("normal_plus_constant", 2, [c](const Chart& chart, const Vec&, const ImmersionJet& jet) {
        if (jet.m() != jet.n() + 2 || c.size() != jet.m()) {
            throw InputError("normal-plus-constant frame needs codimension two");
        }
        Mat cols(jet.m(), jet.n() + 1);
        cols << jet.d1, c;
        // <w, v> = det[d1, v, c]: outward when c completes the orientation.
        Vec w = -height_covector(wedge_hyperplane(cols));
        const double len = w.norm();
        if (!(len > 0.0)) throw DegeneracyError("normal-plus-constant frame: c is tangent");
        Mat xi(jet.m(), 2);
        xi << (chart.orientation() / len) * w, c;
        return FrameValues{std::move(xi), 1.0};
    });
}

TransversalFrame frame_by_name(const std::string& name, int ambient_dim) {
    if (name == "position") return position_frame();
    if (name == "euclidean_normal") return euclidean_normal_frame(+1);
    if (name == "euclidean_inward") return euclidean_normal_frame(-1);
    if (name.rfind("normal_e", 0) == 0) {
        const int k = std::atoi(name.c_str() + 8);
        if (k < 1 || k > ambient_dim) throw InputError("frame " + name + ": axis out of range");
        TransversalFrame base = normal_plus_constant_frame(Vec::Unit(ambient_dim, k - 1));
        return TransversalFrame(name, 2, [base](const Chart& c, const Vec& u, const ImmersionJet& j) {
            return base.eval(c, u, j);
        });
    }
    throw InputError("unknown frame: " + name);
}

FundamentalData decompose(const ImmersionJet& jet, const FrameValues& frame) {
    const int n = jet.n(), m = jet.m(), r = static_cast<int>(frame.xi.cols());
    if (n + r != m || frame.xi.rows() != m) throw InputError("decompose: frame rank must equal codimension");

    FundamentalData fd;
    fd.n = n;
    fd.r = r;
    fd.solve_matrix.resize(m, m);
    fd.solve_matrix << jet.d1, frame.xi;

    Eigen::FullPivLU<Mat> lu(fd.solve_matrix);
    const double det = lu.determinant();
    double scale = 1.0;
    for (int k = 0; k < m; ++k) scale *= fd.solve_matrix.col(k).norm();
    if (!(std::abs(det) > 1e-12 * scale)) throw DegeneracyError("decompose: frame is not transversal");
    if (frame.theta_perp == 0.0) throw DegeneracyError("decompose: theta_perp vanishes");

    const Mat c = lu.solve(jet.d2);
    fd.christoffel = c.topRows(n);
    fd.alpha = c.bottomRows(r);
    fd.alpha_vectors = frame.xi * fd.alpha;
    fd.theta_value = det / frame.theta_perp;
    fd.residual = (fd.solve_matrix * c - jet.d2).cwiseAbs().maxCoeff();
    return fd;
}

EquiaffineReport check_equiaffine(const Atlas& atlas, const TransversalFrame& frame, int resolution, double step) {
    const double h = step > 0.0 ? step : 1e-5;
    const int n = atlas.param_dim();
    EquiaffineReport rep;
    rep.min_abs_theta = std::numeric_limits<double>::infinity();

    auto theta_at = [&](const Chart& chart, const Vec& u) {
        const ImmersionJet jet = chart.eval_jet_unchecked(u);
        return decompose(jet, frame.eval(chart, u, jet)).theta_value;
    };

    for (const ParamSample& s : sample_parameters(atlas, resolution)) {
        const Chart& chart = atlas.chart(s.chart);
        const ImmersionJet jet = chart.eval_jet(s.u);
        const FundamentalData fd = decompose(jet, frame.eval(chart, s.u, jet));
        for (int k = 0; k < n; ++k) {
            Vec up = s.u, dn = s.u;
            up[k] += h;
            dn[k] -= h;
            const double dtheta = (theta_at(chart, up) - theta_at(chart, dn)) / (2.0 * h);
            double trace = 0.0;
            for (int i = 0; i < n; ++i) trace += fd.gamma(i, k, i);
            const double v = std::abs(dtheta - trace * fd.theta_value);
            if (v >= rep.max_nabla_theta) {
                rep.max_nabla_theta = v;
                rep.worst_chart = s.chart;
                rep.worst_u = s.u;
            }
        }
        rep.max_abs_theta = std::max(rep.max_abs_theta, std::abs(fd.theta_value));
        rep.min_abs_theta = std::min(rep.min_abs_theta, std::abs(fd.theta_value));
        rep.max_residual = std::max(rep.max_residual, fd.residual);
        ++rep.samples;
    }
    return rep;
}

double unimodular_rescale(const FundamentalData& fd) {
    if (!(std::abs(fd.theta_value) > 1e-300)) throw DegeneracyError("unimodular_rescale: theta vanishes");
    return fd.theta_value * fd.theta_value;
}

}  // namespace affcurv
