#pragma once

// Compact manifolds given as atlases of parametrized charts of an immersion
// f : M -> R^m, with value / first / second derivative jets.

#include "affcurv/linalg.hpp"
#include "affcurv/taylor.hpp"

#include <functional>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

namespace affcurv {

// Axis-aligned parameter box; periodic axes identify lo with hi.
struct Box {
    Vec lo;
    Vec hi;
    std::vector<bool> periodic;

    int dim() const { return static_cast<int>(lo.size()); }
    double width(int axis) const { return hi[axis] - lo[axis]; }
    double diameter() const { return (hi - lo).norm(); }
    bool contains(const Vec& u) const;  // after wrapping periodic axes
    Vec wrap(const Vec& u) const;
};

struct ImmersionJet {
    Vec point;  // f(u)
    Mat d1;     // m x n, column i = d_i f
    Mat d2;     // m x n(n+1)/2, column sym_index(i, j) = d_i d_j f

    int n() const { return static_cast<int>(d1.cols()); }
    int m() const { return static_cast<int>(d1.rows()); }
    Vec second(int i, int j) const { return d2.col(sym_index(i, j, n())); }
};

// x = f(u) written once over Taylor2; evaluated in one pass for the exact jet.
using ClosedForm = std::function<void(std::span<const Taylor2> u, std::span<Taylor2> x)>;
using PointMap = std::function<Vec(const Vec&)>;

class Chart;

struct AnalyticSource {
    ClosedForm map;
};

// Central differences of order 2; Richardson combines steps h and h/2.
struct FiniteDifferenceSource {
    PointMap map;
    double step = 0.0;  // 0 selects 1e-5 * domain diameter
    bool richardson = false;
};

// x -> linear * x + offset applied to the jets of another chart.
struct AffineImageSource {
    std::shared_ptr<const Chart> base;
    Mat linear;
    Vec offset;
};

using JetSource = std::variant<AnalyticSource, FiniteDifferenceSource, AffineImageSource>;

class Chart {
public:
    // domain is the sampling / seeding box; valid (a superset) is where the
    // jet source is defined and where Newton iterates may wander.
    Chart(std::string id, int ambient_dim, Box domain, JetSource source, int orientation = 1,
          std::optional<Box> valid = std::nullopt);

    const std::string& id() const { return id_; }
    int param_dim() const { return domain_.dim(); }
    int ambient_dim() const { return ambient_dim_; }
    const Box& domain() const { return domain_; }
    const Box& valid() const { return valid_; }
    const JetSource& source() const { return source_; }

    // +1 when the chart's coordinate orientation agrees with the orientation of M.
    int orientation() const { return orientation_; }

    double rank_tol() const { return rank_tol_; }
    void set_rank_tol(double tol) { rank_tol_ = tol; }

    // Throws DomainError outside the valid box and DegeneracyError when the
    // first derivatives fail the immersion condition.
    ImmersionJet eval_jet(const Vec& u) const;
    // No domain or rank checks; u is wrapped on periodic axes.
    ImmersionJet eval_jet_unchecked(const Vec& u) const;
    Vec eval_point(const Vec& u) const;

private:
    std::string id_;
    int ambient_dim_;
    Box domain_;
    Box valid_;
    JetSource source_;
    int orientation_;
    double rank_tol_ = 1e-9;
};

// Smallest singular value of the first-derivative matrix.
double immersion_sigma_min(const ImmersionJet& jet);

class Atlas {
public:
    Atlas(std::string name, std::vector<Chart> charts, std::vector<int> betti = {},
          double dedup_rel = 1e-6);

    const std::string& name() const { return name_; }
    const std::vector<Chart>& charts() const { return charts_; }
    const Chart& chart(int i) const { return charts_.at(i); }
    int chart_index(const std::string& id) const;  // -1 when absent
    int param_dim() const { return charts_.front().param_dim(); }
    int ambient_dim() const { return charts_.front().ambient_dim(); }
    const std::vector<int>& betti() const { return betti_; }
    std::optional<int> euler_characteristic() const;

    // Bounding-box diagonal of a coarse sample of the image.
    double diameter() const { return diameter_; }
    double dedup_radius() const { return dedup_rel_ * diameter_; }
    double dedup_rel() const { return dedup_rel_; }

private:
    std::string name_;
    std::vector<Chart> charts_;
    std::vector<int> betti_;
    double dedup_rel_;
    double diameter_ = 0.0;
};

struct ParamSample {
    int chart = 0;
    Vec u;
};

// Regular per-chart grid: non-periodic axes are sampled at cell centres,
// periodic axes at lo + i * width / count. Row-major over the axes.
std::vector<Vec> grid_points(const Box& box, std::span<const int> counts);

// Grid samples of every chart, in chart order, with cross-chart duplicates
// (ambient distance below the atlas dedup radius) removed.
std::vector<ParamSample> sample_parameters(const Atlas& atlas, std::span<const int> resolution);
std::vector<ParamSample> sample_parameters(const Atlas& atlas, int resolution);

// Indices of the points kept after greedy first-come deduplication by distance.
std::vector<int> dedup_by_distance(std::span<const Vec> points, double radius);

}  // namespace affcurv
