#pragma once

// JSON and CSV serialization of pipeline results. Field names are part of the
// command-line interface and are documented in README.md.

#include "affcurv/catalog.hpp"
#include "affcurv/geometry.hpp"

#include <json.hpp>

#include <ostream>
#include <string>
#include <vector>

namespace affcurv {

using Json = nlohmann::ordered_json;

inline constexpr const char* kToolName = "affcurv";
inline constexpr const char* kToolVersion = "0.1.0";

Json to_json(const Vec& v);
Json to_json(const TacReport& r);
Json to_json(const MinimalityCertificate& c);
Json to_json(const HullInfo& h);
Json to_json(const ConvexityReport& r);
Json to_json(const EquiaffineReport& r);
Json to_json(const TheoremVerdict& v);
Json to_json(const KossowskiReport& r);
Json to_json(const KnownTruth& k);
Json to_json(const CatalogEntry& e);
Json to_json(const DrawDiagnostic& d);

// One JSON object per line, one line per drawn phi.
void write_diagnostics_jsonl(const TacReport& r, std::ostream& out);

// count,frequency
void write_histogram_csv(const TacReport& r, std::ostream& out);
// u,v,G,sigma_min (G on the eta_+ sheet)
void write_gauss_scan_csv(const std::vector<GaussScanRow>& rows, std::ostream& out);

// Writes the CSV companion of a report produced by the tac, certify-minimal
// or gauss-scan commands. Throws InputError when the path cannot be written.
void emit_plot_data(const Json& report, const std::string& path);

}  // namespace affcurv
