#include "affcurv/manifold.hpp"

#include "affcurv/error.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

namespace affcurv {

namespace {

ImmersionJet analytic_jet(const AnalyticSource& src, int m, const Vec& u) {
    const int n = static_cast<int>(u.size());
    if (n > kMaxParams) throw InputError("analytic chart: too many parameters");
    std::vector<Taylor2> in(n), out(m);
    for (int i = 0; i < n; ++i) in[i] = Taylor2::variable(u[i], i);
    src.map(in, out);

    ImmersionJet jet{Vec(m), Mat(m, n), Mat(m, sym_count(n))};
    for (int a = 0; a < m; ++a) {
        jet.point[a] = out[a].v;
        for (int i = 0; i < n; ++i) {
            jet.d1(a, i) = out[a].g[i];
            for (int j = i; j < n; ++j) jet.d2(a, sym_index(i, j, n)) = out[a].hess(i, j);
        }
    }
    return jet;
}

ImmersionJet central_differences(const PointMap& f, const Vec& u, double h) {
    const int n = static_cast<int>(u.size());
    const Vec f0 = f(u);
    const int m = static_cast<int>(f0.size());
    ImmersionJet jet{f0, Mat(m, n), Mat(m, sym_count(n))};
    for (int i = 0; i < n; ++i) {
        Vec up = u, dn = u;
        up[i] += h;
        dn[i] -= h;
        const Vec fp = f(up), fm = f(dn);
        jet.d1.col(i) = (fp - fm) / (2.0 * h);
        jet.d2.col(sym_index(i, i, n)) = (fp - 2.0 * f0 + fm) / (h * h);
        for (int j = i + 1; j < n; ++j) {
            Vec pp = u, pm = u, mp = u, mm = u;
            pp[i] += h, pp[j] += h;
            pm[i] += h, pm[j] -= h;
            mp[i] -= h, mp[j] += h;
            mm[i] -= h, mm[j] -= h;
            jet.d2.col(sym_index(i, j, n)) = (f(pp) - f(pm) - f(mp) + f(mm)) / (4.0 * h * h);
        }
    }
    return jet;
}

ImmersionJet fd_jet(const FiniteDifferenceSource& src, const Box& domain, const Vec& u) {
    const double h = src.step > 0.0 ? src.step : 1e-5 * domain.diameter();
    ImmersionJet coarse = central_differences(src.map, u, h);
    if (!src.richardson) return coarse;
    ImmersionJet fine = central_differences(src.map, u, 0.5 * h);
    fine.d1 = (4.0 * fine.d1 - coarse.d1) / 3.0;
    fine.d2 = (4.0 * fine.d2 - coarse.d2) / 3.0;
    return fine;
}

}  // namespace

bool Box::contains(const Vec& u) const {
    if (u.size() != lo.size()) return false;
    for (int i = 0; i < dim(); ++i) {
        if (periodic[i]) continue;
        if (u[i] < lo[i] || u[i] > hi[i]) return false;
    }
    return true;
}

Vec Box::wrap(const Vec& u) const {
    Vec w = u;
    for (int i = 0; i < dim(); ++i) {
        if (!periodic[i]) continue;
        const double span = width(i);
        w[i] = lo[i] + std::fmod(std::fmod(u[i] - lo[i], span) + span, span);
    }
    return w;
}

Chart::Chart(std::string id, int ambient_dim, Box domain, JetSource source, int orientation,
             std::optional<Box> valid)
    : id_(std::move(id)),
      ambient_dim_(ambient_dim),
      domain_(std::move(domain)),
      valid_(valid ? std::move(*valid) : domain_),
      source_(std::move(source)),
      orientation_(orientation >= 0 ? 1 : -1) {
    const int n = domain_.dim();
    if (n < 1 || domain_.hi.size() != n || static_cast<int>(domain_.periodic.size()) != n) {
        throw InputError("chart " + id_ + ": malformed domain box");
    }
    if (valid_.dim() != n || static_cast<int>(valid_.periodic.size()) != n) {
        throw InputError("chart " + id_ + ": malformed valid box");
    }
    for (int i = 0; i < n; ++i) {
        if (!(domain_.hi[i] > domain_.lo[i])) throw InputError("chart " + id_ + ": empty domain axis");
        if (!domain_.periodic[i] && (domain_.lo[i] < valid_.lo[i] || domain_.hi[i] > valid_.hi[i])) {
            throw InputError("chart " + id_ + ": domain must lie inside the valid box");
        }
    }
    if (ambient_dim_ <= n) throw InputError("chart " + id_ + ": ambient dimension must exceed n");
}

ImmersionJet Chart::eval_jet_unchecked(const Vec& raw) const {
    const Vec u = domain_.wrap(raw);
    return std::visit(
        [&](const auto& src) -> ImmersionJet {
            using S = std::decay_t<decltype(src)>;
            if constexpr (std::is_same_v<S, AnalyticSource>) {
                return analytic_jet(src, ambient_dim_, u);
            } else if constexpr (std::is_same_v<S, FiniteDifferenceSource>) {
                return fd_jet(src, domain_, u);
            } else {
                ImmersionJet base = src.base->eval_jet_unchecked(u);
                return {src.linear * base.point + src.offset, src.linear * base.d1, src.linear * base.d2};
            }
        },
        source_);
}

ImmersionJet Chart::eval_jet(const Vec& u) const {
    if (u.size() != param_dim()) throw InputError("chart " + id_ + ": parameter dimension mismatch");
    if (!valid_.contains(u)) {
        std::ostringstream msg;
        msg << "chart " << id_ << ": parameter (" << u.transpose() << ") outside domain";
        throw DomainError(msg.str());
    }
    ImmersionJet jet = eval_jet_unchecked(u);
    if (!jet.point.allFinite() || !jet.d1.allFinite() || !jet.d2.allFinite()) {
        throw DegeneracyError("chart " + id_ + ": non-finite jet");
    }
    if (immersion_sigma_min(jet) <= rank_tol_) {
        std::ostringstream msg;
        msg << "chart " << id_ << ": immersion condition fails at (" << u.transpose() << ")";
        throw DegeneracyError(msg.str());
    }
    return jet;
}

Vec Chart::eval_point(const Vec& u) const {
    if (const auto* fd = std::get_if<FiniteDifferenceSource>(&source_)) return fd->map(domain_.wrap(u));
    return eval_jet_unchecked(u).point;
}

double immersion_sigma_min(const ImmersionJet& jet) {
    Eigen::JacobiSVD<Mat> svd(jet.d1);
    return svd.singularValues().minCoeff();
}

Atlas::Atlas(std::string name, std::vector<Chart> charts, std::vector<int> betti, double dedup_rel)
    : name_(std::move(name)), charts_(std::move(charts)), betti_(std::move(betti)), dedup_rel_(dedup_rel) {
    if (charts_.empty()) throw InputError("atlas " + name_ + ": no charts");
    for (const Chart& c : charts_) {
        if (c.param_dim() != param_dim() || c.ambient_dim() != ambient_dim()) {
            throw InputError("atlas " + name_ + ": charts disagree on dimensions");
        }
    }
    for (std::size_t i = 0; i < charts_.size(); ++i) {
        for (std::size_t j = i + 1; j < charts_.size(); ++j) {
            if (charts_[i].id() == charts_[j].id()) throw InputError("atlas " + name_ + ": duplicate chart id");
        }
    }
    if (!betti_.empty() && static_cast<int>(betti_.size()) != param_dim() + 1) {
        throw InputError("atlas " + name_ + ": expected n+1 Betti numbers");
    }

    const int m = ambient_dim();
    Vec lo = Vec::Constant(m, std::numeric_limits<double>::infinity());
    Vec hi = -lo;
    const std::vector<int> coarse(param_dim(), param_dim() > 2 ? 8 : 16);
    for (const Chart& c : charts_) {
        for (const Vec& u : grid_points(c.domain(), coarse)) {
            const Vec x = c.eval_point(u);
            lo = lo.cwiseMin(x);
            hi = hi.cwiseMax(x);
        }
    }
    diameter_ = (hi - lo).norm();
    if (!(diameter_ > 0.0) || !std::isfinite(diameter_)) {
        throw DegeneracyError("atlas " + name_ + ": image has zero diameter");
    }
}

int Atlas::chart_index(const std::string& id) const {
    for (std::size_t i = 0; i < charts_.size(); ++i) {
        if (charts_[i].id() == id) return static_cast<int>(i);
    }
    return -1;
}

std::optional<int> Atlas::euler_characteristic() const {
    if (betti_.empty()) return std::nullopt;
    int chi = 0;
    for (std::size_t k = 0; k < betti_.size(); ++k) chi += (k % 2 == 0 ? 1 : -1) * betti_[k];
    return chi;
}

std::vector<Vec> grid_points(const Box& box, std::span<const int> counts) {
    const int n = box.dim();
    if (static_cast<int>(counts.size()) != n) throw InputError("grid_points: resolution rank mismatch");
    for (int c : counts) {
        if (c < 2) throw InputError("grid_points: resolution must be at least 2 per axis");
    }
    std::vector<Vec> axes(n);
    for (int a = 0; a < n; ++a) {
        axes[a].resize(counts[a]);
        const double step = box.width(a) / counts[a];
        for (int i = 0; i < counts[a]; ++i) {
            axes[a][i] = box.lo[a] + (box.periodic[a] ? i : i + 0.5) * step;
        }
    }
    std::size_t total = 1;
    for (int c : counts) total *= static_cast<std::size_t>(c);
    std::vector<Vec> out;
    out.reserve(total);
    std::vector<int> idx(n, 0);
    for (std::size_t k = 0; k < total; ++k) {
        Vec u(n);
        for (int a = 0; a < n; ++a) u[a] = axes[a][idx[a]];
        out.push_back(std::move(u));
        for (int a = n - 1; a >= 0; --a) {
            if (++idx[a] < counts[a]) break;
            idx[a] = 0;
        }
    }
    return out;
}

std::vector<int> dedup_by_distance(std::span<const Vec> points, double radius) {
    const int count = static_cast<int>(points.size());
    std::vector<int> order(count);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](int a, int b) {
        return points[a][0] < points[b][0] || (points[a][0] == points[b][0] && a < b);
    });
    std::vector<int> rank(count);
    for (int r = 0; r < count; ++r) rank[order[r]] = r;

    std::vector<char> kept(count, 0);
    std::vector<int> out;
    for (int i = 0; i < count; ++i) {
        bool duplicate = false;
        const double x0 = points[i][0];
        for (int dir : {-1, 1}) {
            for (int r = rank[i] + dir; r >= 0 && r < count && !duplicate; r += dir) {
                const int j = order[r];
                if (std::abs(points[j][0] - x0) > radius) break;
                if (kept[j] && (points[j] - points[i]).norm() <= radius) duplicate = true;
            }
        }
        if (!duplicate) {
            kept[i] = 1;
            out.push_back(i);
        }
    }
    return out;
}

std::vector<ParamSample> sample_parameters(const Atlas& atlas, std::span<const int> resolution) {
    std::vector<ParamSample> all;
    std::vector<Vec> images;
    for (int c = 0; c < static_cast<int>(atlas.charts().size()); ++c) {
        const Chart& chart = atlas.chart(c);
        for (Vec& u : grid_points(chart.domain(), resolution)) {
            images.push_back(chart.eval_point(u));
            all.push_back({c, std::move(u)});
        }
    }
    std::vector<ParamSample> out;
    for (int i : dedup_by_distance(images, atlas.dedup_radius())) out.push_back(std::move(all[i]));
    return out;
}

std::vector<ParamSample> sample_parameters(const Atlas& atlas, int resolution) {
    const std::vector<int> counts(atlas.param_dim(), resolution);
    return sample_parameters(atlas, counts);
}

}  // namespace affcurv
