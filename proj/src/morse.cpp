#include "affcurv/morse.hpp"

#include "affcurv/error.hpp"

#include <algorithm>
#include <cmath>

namespace affcurv {

int MorseCount::minima() const {
    return static_cast<int>(std::count_if(records.begin(), records.end(), [](const auto& r) { return r.index == 0; }));
}

int MorseCount::maxima() const {
    return static_cast<int>(std::count_if(records.begin(), records.end(), [](const auto& r) {
        return r.index == r.hessian_eigenvalues.size();
    }));
}

int MorseCount::index_sum() const {
    int s = 0;
    for (const auto& r : records) s += (r.index % 2 == 0) ? 1 : -1;
    return s;
}

CriticalPointFinder::CriticalPointFinder(const Atlas& atlas, SearchConfig config)
    : atlas_(&atlas), config_(config) {
    if (config_.seed_resolution < 3) throw InputError("search: seed resolution must be at least 3");
    if (config_.max_newton < 1) throw InputError("search: max_newton must be positive");
    const int n = atlas.param_dim(), m = atlas.ambient_dim();
    for (const Chart& chart : atlas.charts()) {
        ChartGrid g;
        g.counts.assign(n, config_.seed_resolution);
        g.nodes = grid_points(chart.domain(), g.counts);
        g.d1t.resize(static_cast<Eigen::Index>(g.nodes.size()) * n, m);
        for (std::size_t k = 0; k < g.nodes.size(); ++k) {
            g.d1t.middleRows(static_cast<Eigen::Index>(k) * n, n) = chart.eval_jet(g.nodes[k]).d1.transpose();
        }
        grids_.push_back(std::move(g));
    }
}

int CriticalPointFinder::grid_size() const {
    int total = 0;
    for (const auto& g : grids_) total += static_cast<int>(g.nodes.size());
    return total;
}

std::vector<int> CriticalPointFinder::seeds_for(int chart, const Vec& w) const {
    const ChartGrid& g = grids_[chart];
    const Box& box = atlas_->chart(chart).domain();
    const int n = static_cast<int>(g.counts.size());
    const int count = static_cast<int>(g.nodes.size());

    const Vec grad = g.d1t * w;
    std::vector<double> val(count);
    for (int k = 0; k < count; ++k) val[k] = grad.segment(static_cast<Eigen::Index>(k) * n, n).squaredNorm();

    int offsets = 1;
    for (int a = 0; a < n; ++a) offsets *= 3;

    std::vector<int> seeds;
    std::vector<int> idx(n), nb(n);
    for (int k = 0; k < count; ++k) {
        for (int a = n - 1, rest = k; a >= 0; --a) {
            idx[a] = rest % g.counts[a];
            rest /= g.counts[a];
        }
        bool is_min = true;
        for (int o = 0; o < offsets && is_min; ++o) {
            bool inside = true, self = true;
            for (int a = 0, code = o; a < n; ++a, code /= 3) {
                const int d = code % 3 - 1;
                self = self && d == 0;
                nb[a] = idx[a] + d;
                if (nb[a] < 0 || nb[a] >= g.counts[a]) {
                    if (!box.periodic[a]) inside = false;
                    nb[a] = (nb[a] + g.counts[a]) % g.counts[a];
                }
            }
            if (self || !inside) continue;
            int j = 0;
            for (int a = 0; a < n; ++a) j = j * g.counts[a] + nb[a];
            if (val[j] < val[k] || (val[j] == val[k] && j < k)) is_min = false;
        }
        if (is_min) seeds.push_back(k);
    }
    return seeds;
}

std::optional<CriticalPointRecord> CriticalPointFinder::refine(int chart_index, const Vec& u0, const Vec& w) const {
    const Chart& chart = atlas_->chart(chart_index);
    const Box& valid = chart.valid();
    const Box& domain = chart.domain();
    const int n = chart.param_dim();
    const double tol = config_.grad_tol * w.norm() * atlas_->diameter();
    const double step_cap = 0.1 * domain.diameter();

    auto gradient = [&](const ImmersionJet& jet) -> Vec { return jet.d1.transpose() * w; };

    Vec u = domain.wrap(u0);
    if (!valid.contains(u)) return std::nullopt;
    ImmersionJet jet = chart.eval_jet_unchecked(u);
    Vec g = gradient(jet);
    double gnorm = g.norm();

    for (int it = 0; gnorm > tol; ++it) {
        if (it >= config_.max_newton) return std::nullopt;
        Mat H(n, n);
        for (int i = 0; i < n; ++i) {
            for (int j = i; j < n; ++j) H(i, j) = H(j, i) = w.dot(jet.d2.col(sym_index(i, j, n)));
        }
        Vec delta = -Eigen::JacobiSVD<Mat>(H, Eigen::ComputeThinU | Eigen::ComputeThinV).solve(g);
        const double len = delta.norm();
        if (!std::isfinite(len) || len == 0.0) return std::nullopt;
        if (len > step_cap) delta *= step_cap / len;

        bool accepted = false;
        for (double t = 1.0; t > 1.0 / 1024.0; t *= 0.5) {
            const Vec trial = u + t * delta;
            if (!valid.contains(trial)) continue;
            const Vec wrapped = domain.wrap(trial);
            ImmersionJet tj = chart.eval_jet_unchecked(wrapped);
            const Vec tg = gradient(tj);
            if (tg.norm() < gnorm) {
                u = wrapped;
                jet = std::move(tj);
                g = tg;
                gnorm = g.norm();
                accepted = true;
                break;
            }
        }
        if (!accepted) return std::nullopt;
    }

    if (immersion_sigma_min(jet) <= chart.rank_tol()) return std::nullopt;

    CriticalPointRecord rec;
    rec.chart = chart_index;
    rec.u = u;
    rec.point = jet.point;
    rec.height = w.dot(jet.point);
    rec.grad_residual = gnorm;
    Mat H(n, n);
    for (int i = 0; i < n; ++i) {
        for (int j = i; j < n; ++j) H(i, j) = H(j, i) = w.dot(jet.d2.col(sym_index(i, j, n)));
    }
    Eigen::SelfAdjointEigenSolver<Mat> eig(H, Eigen::EigenvaluesOnly);
    rec.hessian_eigenvalues = eig.eigenvalues();
    rec.index = static_cast<int>((rec.hessian_eigenvalues.array() < 0.0).count());
    rec.hessian_det = rec.hessian_eigenvalues.prod() / (jet.d1.transpose() * jet.d1).determinant();
    rec.degenerate = std::abs(rec.hessian_det) < config_.morse_tol * std::pow(w.norm(), n);
    return rec;
}

MorseCount CriticalPointFinder::find(const MultiCovector& phi) const {
    if (phi.dim() != atlas_->ambient_dim()) throw InputError("find_critical_points: dimension mismatch");
    if (phi.is_zero()) throw InputError("find_critical_points: phi = 0");
    const Vec w = height_covector(phi);
    const double radius = config_.dedup_rel * atlas_->diameter();

    MorseCount mc;
    mc.phi = phi;
    for (int c = 0; c < static_cast<int>(grids_.size()); ++c) {
        for (int k : seeds_for(c, w)) {
            ++mc.seeds;
            auto rec = refine(c, grids_[c].nodes[k], w);
            if (!rec) {
                ++mc.diverged;
                continue;
            }
            ++mc.converged;
            const bool seen = std::any_of(mc.records.begin(), mc.records.end(), [&](const auto& r) {
                return (r.point - rec->point).norm() <= radius;
            });
            if (!seen) mc.records.push_back(std::move(*rec));
        }
    }
    const bool any_degenerate =
        std::any_of(mc.records.begin(), mc.records.end(), [](const auto& r) { return r.degenerate; });
    mc.morse = !any_degenerate && mc.minima() >= 1 && mc.maxima() >= 1;
    return mc;
}

MorseCount find_critical_points(const Atlas& atlas, const MultiCovector& phi, const SearchConfig& config) {
    if (phi.is_zero()) throw InputError("find_critical_points: phi = 0");
    return CriticalPointFinder(atlas, config).find(phi);
}

std::vector<Vec> sample_points(const Atlas& atlas, int resolution) {
    std::vector<Vec> out;
    for (const ParamSample& s : sample_parameters(atlas, resolution)) out.push_back(atlas.chart(s.chart).eval_point(s.u));
    return out;
}

double bounding_diameter(std::span<const Vec> points) {
    if (points.empty()) return 0.0;
    Vec lo = points.front(), hi = points.front();
    for (const Vec& p : points) {
        lo = lo.cwiseMin(p);
        hi = hi.cwiseMax(p);
    }
    return (hi - lo).norm();
}

bool is_supporting_direction(std::span<const Vec> points, const MultiCovector& phi, const CriticalPointRecord& record,
                             double supp_tol) {
    const Vec w = height_covector(phi);
    const double tol = supp_tol * bounding_diameter(points) * w.norm();
    double lo = 0.0, hi = 0.0;
    for (const Vec& x : points) {
        const double s = w.dot(x - record.point);
        lo = std::min(lo, s);
        hi = std::max(hi, s);
    }
    return lo >= -tol || hi <= tol;
}

bool is_supporting_direction(const Atlas& atlas, const MultiCovector& phi, const CriticalPointRecord& record,
                             int resolution, double supp_tol) {
    const std::vector<Vec> pts = sample_points(atlas, resolution);
    return is_supporting_direction(pts, phi, record, supp_tol);
}

}  // namespace affcurv
