#pragma once

// Command-line driver: argument parsing, pipeline dispatch and the report envelope.

#include "affcurv/error.hpp"
#include "affcurv/report.hpp"

#include <cstdint>
#include <ostream>
#include <string>
#include <vector>

namespace affcurv {

struct RunConfig {
    std::string command;
    std::string entry;
    std::string manifest;
    std::string frame;  // empty: the entry's own frame; "alternative": its second frame
    int samples = 500;
    std::uint64_t seed = 1;
    int resolution = 0;         // critical-point seeding per axis; 0: entry default
    int sample_resolution = 0;  // hull / convexity sampling per axis; 0: entry default
    int hull_resolution = 24;
    double grad_tol = 1e-9;
    double morse_tol = 1e-8;
    double dedup_rel = 1e-5;
    double supp_tol = 1e-7;
    double rank_tol = 1e-9;
    int max_newton = 50;
    double max_rejection = 0.5;
    double zeta_shear = 0.0;  // 0: standard ellipsoid
    std::string chart;        // gauss-scan; empty: first chart
    int grid = 0;             // kossowski: u-grid size (2001); gauss-scan: nodes per axis (64)
    double collar = 1e-3;
    std::string out;          // empty: standard output
    std::string format = "json";
    std::string diagnostics;  // JSON lines, one per drawn phi
    std::string plot;         // CSV companion
    int threads = 0;          // 0: OpenMP default
    bool serial = false;
    bool timing = true;
};

Json to_json(const RunConfig& c);

// 0 success, 1 input or domain error, 2 verdict disagreement, 3 numerical
// pathology or degeneracy.
int exit_code(ErrorKind kind);

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace affcurv
