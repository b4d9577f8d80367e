#pragma once

#include <nlohmann/json_fwd.hpp>
#include <string>
#include <vector>

#include "gatekit/gate_design.hpp"
#include "gatekit/scan_harness.hpp"

namespace gatekit {

/// GateDesign <-> {"family": string, "n": [int], "r": [float],
/// "normalized": true}; the contract between CLI subcommands.
nlohmann::json design_to_json(const GateDesign& design);
GateDesign design_from_json(const nlohmann::json& j);

nlohmann::json validation_report_to_json(const ValidationReport& report);

/// Scan specification from JSON.  "designs" entries are either inline
/// {"family":..., "tones":[...]} constructors or full design documents;
/// "grid" is an explicit array or a {"kind":"symlog",...} generator.
ScanSpec scan_spec_from_json(const nlohmann::json& j);

nlohmann::json rows_to_json(const std::vector<ScanRow>& rows);
nlohmann::json fit_to_json(const FitResult& fit);

std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& contents);

} // namespace gatekit
