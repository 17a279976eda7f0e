#include "affcurv/manifest.hpp"

#include "affcurv/error.hpp"
#include "affcurv/forms.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <numbers>
#include <sstream>

namespace affcurv {

namespace {

struct Section {
    int line = 0;
    std::map<std::string, std::pair<std::string, int>> values;  // key -> (value, line)
};

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return {};
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

[[noreturn]] void fail(const std::string& source, int line, const std::string& what) {
    throw InputError(source + ":" + std::to_string(line) + ": " + what);
}

double parse_number(const std::string& tok, const std::string& source, int line) {
    const double pi = std::numbers::pi;
    if (tok == "pi") return pi;
    if (tok == "-pi") return -pi;
    if (tok == "2pi") return 2.0 * pi;
    if (tok == "-2pi") return -2.0 * pi;
    std::size_t used = 0;
    double v = 0.0;
    try {
        v = std::stod(tok, &used);
    } catch (const std::exception&) {
        fail(source, line, "not a number: " + tok);
    }
    if (used != tok.size()) fail(source, line, "not a number: " + tok);
    return v;
}

std::vector<double> parse_list(const std::string& value, const std::string& source, int line) {
    std::istringstream ss(value);
    std::vector<double> out;
    for (std::string tok; ss >> tok;) out.push_back(parse_number(tok, source, line));
    return out;
}

class Reader {
public:
    Reader(const Section& s, std::string source) : s_(s), source_(std::move(source)) {}

    bool has(const std::string& key) const { return s_.values.count(key) != 0; }
    int line_of(const std::string& key) const { return has(key) ? s_.values.at(key).second : s_.line; }

    std::string text(const std::string& key) const {
        if (!has(key)) fail(source_, s_.line, "missing key '" + key + "'");
        return s_.values.at(key).first;
    }
    std::string text_or(const std::string& key, const std::string& dflt) const { return has(key) ? text(key) : dflt; }
    std::vector<double> list(const std::string& key) const { return parse_list(text(key), source_, line_of(key)); }
    double number_or(const std::string& key, double dflt) const {
        if (!has(key)) return dflt;
        const auto v = list(key);
        if (v.size() != 1) fail(source_, line_of(key), "expected one value for '" + key + "'");
        return v[0];
    }
    int integer_or(const std::string& key, int dflt) const {
        const double v = number_or(key, dflt);
        if (v != static_cast<int>(v)) fail(source_, line_of(key), "expected an integer for '" + key + "'");
        return static_cast<int>(v);
    }

    void reject_unknown(const std::vector<std::string>& allowed) const {
        for (const auto& [key, val] : s_.values) {
            if (std::find(allowed.begin(), allowed.end(), key) == allowed.end()) {
                fail(source_, val.second, "unknown key '" + key + "'");
            }
        }
    }

private:
    const Section& s_;
    std::string source_;
};

Box parse_box(const Reader& r, const std::string& key, const std::vector<bool>& periodic, const std::string& source) {
    const auto v = r.list(key);
    const std::size_t n = periodic.size();
    if (v.size() != 2 * n) fail(source, r.line_of(key), "'" + key + "' needs lo hi for each of " + std::to_string(n) + " axes");
    Box b{Vec(n), Vec(n), periodic};
    for (std::size_t a = 0; a < n; ++a) {
        b.lo[a] = v[2 * a];
        b.hi[a] = v[2 * a + 1];
        if (!(b.hi[a] > b.lo[a])) fail(source, r.line_of(key), "'" + key + "' has an empty axis");
    }
    return b;
}

Chart build_chart(const Section& s, const std::string& source) {
    Reader r(s, source);
    r.reject_unknown({"id", "form", "params", "domain", "periodic", "valid", "orientation", "jet", "fd_step",
                      "richardson"});
    const std::string id = r.text("id");
    const std::vector<double> params = r.has("params") ? r.list("params") : std::vector<double>{};
    Form form;
    try {
        form = make_form(r.text("form"), params);
    } catch (const InputError& e) {
        fail(source, r.line_of("form"), e.what());
    }

    std::vector<bool> periodic(form.param_dim, false);
    if (r.has("periodic")) {
        const auto p = r.list("periodic");
        if (static_cast<int>(p.size()) != form.param_dim) fail(source, r.line_of("periodic"), "one flag per axis expected");
        for (int a = 0; a < form.param_dim; ++a) periodic[a] = p[a] != 0.0;
    }
    Box domain = parse_box(r, "domain", periodic, source);
    std::optional<Box> valid;
    if (r.has("valid")) valid = parse_box(r, "valid", periodic, source);
    const int orientation = r.integer_or("orientation", 1);
    if (orientation != 1 && orientation != -1) fail(source, r.line_of("orientation"), "orientation must be 1 or -1");

    const std::string jet = r.text_or("jet", "analytic");
    JetSource src;
    if (jet == "analytic") {
        src = AnalyticSource{form.map};
    } else if (jet == "fd") {
        const int m = form.ambient_dim;
        PointMap map = [f = form.map, m](const Vec& u) {
            std::vector<Taylor2> in(u.size()), out(m);
            for (int i = 0; i < u.size(); ++i) in[i] = Taylor2(u[i]);
            f(in, out);
            Vec x(m);
            for (int k = 0; k < m; ++k) x[k] = out[k].v;
            return x;
        };
        src = FiniteDifferenceSource{std::move(map), r.number_or("fd_step", 0.0), r.integer_or("richardson", 0) != 0};
    } else {
        fail(source, r.line_of("jet"), "jet must be 'analytic' or 'fd'");
    }
    try {
        return Chart(id, form.ambient_dim, std::move(domain), std::move(src), orientation, std::move(valid));
    } catch (const InputError& e) {
        fail(source, s.line, e.what());
    }
}

}  // namespace

CatalogEntry parse_manifest(std::istream& in, const std::string& source) {
    Section header;
    std::vector<Section> charts;
    Section* current = &header;
    std::string raw;
    for (int line = 1; std::getline(in, raw); ++line) {
        const auto hash = raw.find('#');
        const std::string text = trim(hash == std::string::npos ? raw : raw.substr(0, hash));
        if (text.empty()) continue;
        if (text.front() == '[') {
            if (text != "[chart]") fail(source, line, "unknown section " + text);
            charts.emplace_back();
            charts.back().line = line;
            current = &charts.back();
            continue;
        }
        const auto eq = text.find('=');
        if (eq == std::string::npos) fail(source, line, "expected key = value");
        const std::string key = trim(text.substr(0, eq));
        if (key.empty()) fail(source, line, "empty key");
        if (current->values.count(key)) fail(source, line, "duplicate key '" + key + "'");
        current->values[key] = {trim(text.substr(eq + 1)), line};
    }
    if (charts.empty()) fail(source, 1, "no [chart] sections");

    Reader r(header, source);
    r.reject_unknown({"name", "frame", "betti", "seed_resolution", "sample_resolution", "dedup_rel"});
    std::vector<int> betti;
    if (r.has("betti")) {
        for (double b : r.list("betti")) {
            if (b < 0 || b != static_cast<int>(b)) fail(source, r.line_of("betti"), "Betti numbers must be non-negative integers");
            betti.push_back(static_cast<int>(b));
        }
    }

    std::vector<Chart> built;
    for (const Section& s : charts) built.push_back(build_chart(s, source));
    const std::string name = r.text_or("name", "manifest");
    std::optional<Atlas> atlas;
    try {
        atlas.emplace(name, std::move(built), betti, r.number_or("dedup_rel", 1e-6));
    } catch (const InputError& e) {
        fail(source, 1, e.what());
    }
    TransversalFrame frame = frame_by_name(r.text("frame"), atlas->ambient_dim());

    CatalogEntry e{name, "loaded from " + source, std::move(*atlas), std::move(frame), std::nullopt, {}};
    e.known.betti = betti;
    e.seed_resolution = r.integer_or("seed_resolution", 64);
    e.sample_resolution = r.integer_or("sample_resolution", 48);
    if (e.seed_resolution < 3 || e.sample_resolution < 2) fail(source, 1, "resolutions too small");
    return e;
}

CatalogEntry load_manifest(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot open manifest " + path);
    return parse_manifest(in, path);
}

}  // namespace affcurv
