#include "affcurv/geometry.hpp"

#include "affcurv/error.hpp"

#include <cmath>
#include <memory>
#include <sstream>

namespace affcurv {

HullInfo affine_hull_dim(std::span<const Vec> points, double rank_tol) {
    if (points.empty()) throw InputError("affine_hull_dim: no samples");
    const int m = static_cast<int>(points.front().size());
    if (static_cast<int>(points.size()) < m + 1) throw InputError("affine_hull_dim: need at least m + 1 samples");

    HullInfo h;
    h.base = Vec::Zero(m);
    for (const Vec& p : points) h.base += p;
    h.base /= static_cast<double>(points.size());

    Mat X(m, static_cast<Eigen::Index>(points.size()));
    for (std::size_t k = 0; k < points.size(); ++k) X.col(static_cast<Eigen::Index>(k)) = points[k] - h.base;
    Eigen::JacobiSVD<Mat> svd(X, Eigen::ComputeFullU);
    h.singular_values = svd.singularValues();
    if (!(h.singular_values[0] > 0.0)) throw InputError("affine_hull_dim: all samples coincide");
    h.directions = svd.matrixU();
    h.dim = static_cast<int>((h.singular_values.array() > rank_tol * h.singular_values[0]).count());
    return h;
}

HullInfo affine_hull_dim(const Atlas& atlas, int resolution, double rank_tol) {
    const std::vector<Vec> pts = sample_points(atlas, resolution);
    return affine_hull_dim(pts, rank_tol);
}

ReducedImmersion reduce(const Atlas& atlas, const TransversalFrame& frame, const HullInfo& hull, int check_resolution,
                        int policy_resolution) {
    const int m = atlas.ambient_dim(), r = frame.rank();
    if (hull.dim >= m) throw InputError("reduce: image already spans the ambient space");
    if (r < 2) throw InputError("reduce: codimension one input cannot be reduced");

    // L = the m - 1 leading hull directions; normal is its unit normal.
    const Mat B = hull.directions.leftCols(m - 1);
    const Vec normal = hull.directions.col(m - 1);

    // Pick the frame vector whose worst-case transversal fraction to L is largest.
    const auto samples = sample_parameters(atlas, policy_resolution);
    Vec worst = Vec::Constant(r, std::numeric_limits<double>::infinity());
    Vec best = Vec::Zero(r);
    std::vector<Vec> best_vec(r, Vec::Zero(m));
    for (const ParamSample& s : samples) {
        const Chart& chart = atlas.chart(s.chart);
        const ImmersionJet jet = chart.eval_jet(s.u);
        const FrameValues fv = frame.eval(chart, s.u, jet);
        for (int a = 0; a < r; ++a) {
            const double frac = std::abs(normal.dot(fv.xi.col(a))) / fv.xi.col(a).norm();
            worst[a] = std::min(worst[a], frac);
            if (frac > best[a]) {
                best[a] = frac;
                best_vec[a] = fv.xi.col(a);
            }
        }
    }
    int pick = 0;
    worst.maxCoeff(&pick);
    if (!(worst[pick] > 1e-6)) {
        std::ostringstream msg;
        msg << "reduce: no frame vector stays transversal to L (best is xi_" << (pick + 1)
            << " with minimum transversal fraction " << worst[pick] << ")";
        throw DegeneracyError(msg.str());
    }

    const Vec xi = best_vec[pick];
    Mat Bx(m, m);
    Bx << B, xi;
    const double kappa = Bx.determinant();

    Mat basis = B;
    basis.col(0) /= kappa;
    Mat coords = B.transpose();
    coords.row(0) *= kappa;

    Mat lift(m, m - 1);
    for (int i = 0; i < m - 1; ++i) {
        Mat cols(m, m - 1);
        for (int j = 0, k = 0; j < m - 1; ++j) {
            if (j != i) cols.col(k++) = basis.col(j);
        }
        cols.col(m - 2) = xi;
        lift.col(i) = wedge_hyperplane(cols).coeffs();
    }

    std::vector<Chart> charts;
    for (const Chart& c : atlas.charts()) {
        AffineImageSource src{std::make_shared<const Chart>(c), coords, -coords * hull.base};
        charts.emplace_back(c.id(), m - 1, c.domain(), std::move(src), c.orientation(), c.valid());
    }
    Atlas reduced(atlas.name() + "_L", std::move(charts), atlas.betti(), atlas.dedup_rel());

    // N_L = N intersected with L, spanned by n_k = xi_k - (w_k / w_a) xi_a; its
    // volume is theta_perp(n_1, ..., n_{r-1}, xi) evaluated on the N-part of xi.
    auto original = std::make_shared<const Atlas>(atlas);
    TransversalFrame reduced_frame(
        frame.id() + "_L", r - 1,
        [original, frame, normal, xi, coords, r](const Chart& chart, const Vec& u, const ImmersionJet&) {
            const Chart& oc = original->chart(original->chart_index(chart.id()));
            const ImmersionJet jet = oc.eval_jet_unchecked(u);
            const FrameValues fv = frame.eval(oc, u, jet);
            const Vec w = fv.xi.transpose() * normal;
            int a = 0;
            w.cwiseAbs().maxCoeff(&a);

            Mat cvec = Mat::Zero(r, r);
            Mat nk(fv.xi.rows(), r - 1);
            for (int k = 0, col = 0; k < r; ++k) {
                if (k == a) continue;
                nk.col(col) = fv.xi.col(k) - (w[k] / w[a]) * fv.xi.col(a);
                cvec(k, col) = 1.0;
                cvec(a, col) = -w[k] / w[a];
                ++col;
            }
            Mat M(jet.m(), jet.m());
            M << jet.d1, fv.xi;
            cvec.col(r - 1) = M.fullPivLu().solve(xi).tail(r);
            return FrameValues{coords * nk, fv.theta_perp * cvec.determinant()};
        });

    ReducedImmersion out{std::move(reduced), std::move(reduced_frame), xi, pick, kappa, basis, coords, hull.base,
                         lift, {}};
    if (check_resolution > 0) out.check = check_equiaffine(out.atlas, out.frame, check_resolution);
    return out;
}

ConvexityReport convexity_certify(const Atlas& atlas, const TransversalFrame& frame, const UnitEllipsoid& S,
                                  int resolution, double supp_tol, Execution exec) {
    if (atlas.ambient_dim() != atlas.param_dim() + 1) throw InputError("convexity_certify: codimension one only");
    const auto samples = sample_parameters(atlas, resolution);
    std::vector<Vec> points, covectors;
    points.reserve(samples.size());
    covectors.reserve(samples.size());
    for (const ParamSample& s : samples) {
        const Chart& chart = atlas.chart(s.chart);
        const ImmersionJet jet = chart.eval_jet(s.u);
        const FundamentalData fd = decompose(jet, frame.eval(chart, s.u, jet));
        covectors.push_back(height_covector(gauss_map(jet, fd, S).phi));
        points.push_back(jet.point);
    }
    const double diam = bounding_diameter(points);
    const std::vector<SupportExtent> ext = support_sweep(points, covectors, exec);

    ConvexityReport rep;
    rep.samples = static_cast<int>(samples.size());
    int supporting = 0;
    for (std::size_t p = 0; p < ext.size(); ++p) {
        const double scale = diam * covectors[p].norm();
        const double tol = supp_tol * scale;
        if (ext[p].min_s >= -tol || ext[p].max_s <= tol) {
            ++supporting;
            continue;
        }
        const double v = std::min(-ext[p].min_s, ext[p].max_s) / scale;
        if (v > rep.worst_violation) {
            rep.worst_violation = v;
            rep.worst_sample = static_cast<int>(p);
            rep.worst_chart = samples[p].chart;
            rep.worst_u = samples[p].u;
        }
    }
    rep.supporting_fraction = rep.samples ? static_cast<double>(supporting) / rep.samples : 0.0;
    rep.convex = supporting == rep.samples;
    return rep;
}

TheoremVerdict main_theorem_check(const Atlas& atlas, const TransversalFrame& frame, const UnitEllipsoid& S,
                                  const TheoremConfig& config) {
    TheoremVerdict v;
    v.n = atlas.param_dim();
    v.m = atlas.ambient_dim();
    v.minimality = certify_minimal(atlas, frame, S, config.tac);
    v.hull = affine_hull_dim(atlas, config.hull_resolution, config.rank_tol);
    v.hull_is_hyperplane = v.hull.dim == v.n + 1;

    std::optional<ReducedImmersion> current;
    while (true) {
        const Atlas& a = current ? current->atlas : atlas;
        const TransversalFrame& f = current ? current->frame : frame;
        if (a.ambient_dim() <= v.hull.dim || f.rank() < 2) break;
        const HullInfo h = current ? affine_hull_dim(a, config.hull_resolution, config.rank_tol) : v.hull;
        current.emplace(reduce(a, f, h, config.tac.equiaffine_resolution));
        ++v.reductions;
    }

    const Atlas& final_atlas = current ? current->atlas : atlas;
    const TransversalFrame& final_frame = current ? current->frame : frame;
    if (current) {
        v.reduced_equiaffine_max = current->check.max_nabla_theta;
        const UnitEllipsoid SL = UnitEllipsoid::standard(final_atlas.ambient_dim());
        v.reduced_tau = estimate_tau(final_atlas, final_frame, SL, config.tac);
        const TacReport& before = v.minimality.report;
        const double band = 3.0 * std::max(before.std_error, v.reduced_tau->std_error) + 1e-12;
        v.tau_preserved = std::abs(v.reduced_tau->tau_estimate - before.tau_estimate) <= band;
    }

    if (final_atlas.ambient_dim() == v.n + 1) {
        const UnitEllipsoid SL = current ? UnitEllipsoid::standard(final_atlas.ambient_dim()) : S;
        v.convexity = convexity_certify(final_atlas, final_frame, SL, config.convexity_resolution, config.supp_tol,
                                        config.tac.exec);
        v.convex = v.convexity->convex;
    }
    v.agreement = v.minimality.minimal == (v.hull_is_hyperplane && v.convex);
    return v;
}

}  // namespace affcurv
