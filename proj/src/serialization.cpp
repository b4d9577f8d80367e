#include "gatekit/serialization.hpp"

#include <cmath>
#include <fstream>
#include <nlohmann/json.hpp>
#include <sstream>

namespace gatekit {

using nlohmann::json;

json design_to_json(const GateDesign& design) {
    json j;
    j["family"] = family_name(design.family);
    j["n"] = design.tones.indices();
    j["r"] = design.amplitudes;
    j["normalized"] = true;
    return j;
}

GateDesign design_from_json(const json& j) {
    if (!j.contains("family") || !j.contains("n") || !j.contains("r"))
        throw std::invalid_argument("design document needs 'family', 'n' and 'r'");
    GateDesign d = make_custom(j.at("n").get<std::vector<int>>(),
                               j.at("r").get<std::vector<double>>());
    d.family = family_from_name(j.at("family").get<std::string>());
    return d;
}

json validation_report_to_json(const ValidationReport& report) {
    json j;
    j["admissible"] = report.admissible;
    json violations = json::array();
    for (const auto& v : report.violations) {
        violations.push_back({{"signed_tones", v.signed_tones}, {"sum", v.sum}});
    }
    j["violations"] = violations;
    return j;
}

namespace {

GateDesign design_from_spec_entry(const json& entry) {
    if (entry.is_string()) {
        std::ifstream in(entry.get<std::string>());
        if (!in) throw std::invalid_argument("cannot open design file " + entry.get<std::string>());
        json j;
        in >> j;
        return design_from_json(j);
    }
    if (entry.contains("r")) return design_from_json(entry);
    const Family family = family_from_name(entry.at("family").get<std::string>());
    switch (family) {
        case Family::MS:
            return design_ms();
        case Family::Cardioid:
            return design_cardioid(ToneIndexSet(entry.at("tones").get<std::vector<int>>()));
        case Family::Antioid:
            return design_antioid(ToneIndexSet(entry.at("tones").get<std::vector<int>>()));
        case Family::CarNu: {
            ToneIndexSet tones(entry.at("tones").get<std::vector<int>>());
            if (entry.value("mode", std::string("deterministic")) == "minimized")
                return design_carnu_minimized(tones);
            return design_carnu(tones);
        }
        case Family::Custom:
            throw std::invalid_argument("custom designs need explicit 'n' and 'r'");
    }
    throw std::logic_error("unreachable family");
}

std::vector<double> grid_from_json(const json& g) {
    if (g.is_array()) return g.get<std::vector<double>>();
    if (!g.is_object() || g.value("kind", std::string()) != "symlog")
        throw std::invalid_argument("grid must be an array or a symlog generator");
    const double lo = g.at("min").get<double>();
    const double hi = g.at("max").get<double>();
    const int per_decade = g.value("per_decade", 13);
    if (!(lo > 0.0 && hi > lo) || per_decade < 1)
        throw std::invalid_argument("symlog grid needs 0 < min < max and per_decade >= 1");
    std::vector<double> magnitudes;
    const double decades = std::log10(hi / lo);
    const int count = static_cast<int>(std::round(decades * per_decade)) + 1;
    for (int k = 0; k < count; ++k)
        magnitudes.push_back(lo * std::pow(10.0, decades * k / (count - 1)));
    std::vector<double> grid;
    for (auto it = magnitudes.rbegin(); it != magnitudes.rend(); ++it) grid.push_back(-*it);
    if (g.value("include_zero", true)) grid.push_back(0.0);
    for (double m : magnitudes) grid.push_back(m);
    return grid;
}

} // namespace

ScanSpec scan_spec_from_json(const json& j) {
    ScanSpec spec;
    spec.variable = scan_variable_from_name(j.at("variable").get<std::string>());
    spec.grid = grid_from_json(j.at("grid"));
    for (const json& entry : j.at("designs")) spec.designs.push_back(design_from_spec_entry(entry));
    spec.nbar = j.value("nbar", 0.0);
    spec.engine = engine_from_name(j.value("engine", std::string("analytic")));
    if (j.contains("fit_window")) {
        spec.fit_window_lo = j.at("fit_window").at(0).get<double>();
        spec.fit_window_hi = j.at("fit_window").at(1).get<double>();
    }
    if (j.contains("oracle")) {
        const json& o = j.at("oracle");
        spec.oracle.n_max = o.value("n_max", spec.oracle.n_max);
        spec.oracle.eta = o.value("eta", spec.oracle.eta);
        spec.oracle.step_tolerance = o.value("step_tolerance", spec.oracle.step_tolerance);
    }
    return spec;
}

json rows_to_json(const std::vector<ScanRow>& rows) {
    json arr = json::array();
    for (const ScanRow& row : rows) {
        json j;
        j["design"] = row.design;
        j["family"] = row.family;
        j["variable"] = row.variable;
        j["value"] = row.value;
        j["engine"] = row.engine;
        j["fidelity"] = row.quad.fidelity;
        j["purity"] = row.quad.purity;
        j["pSS"] = row.quad.p_ss;
        j["pSDDS"] = row.quad.p_sd + row.quad.p_ds;
        j["pDD"] = row.quad.p_dd;
        j["error_flag"] = row.error;
        if (row.error) j["error_message"] = row.error_message;
        arr.push_back(std::move(j));
    }
    return arr;
}

json fit_to_json(const FitResult& fit) {
    json j;
    j["design"] = fit.design;
    j["target"] = fit.target;
    j["slope"] = fit.slope;
    j["intercept"] = fit.intercept;
    j["r2"] = fit.r_squared;
    j["window"] = {fit.window_lo, fit.window_hi};
    j["points"] = fit.points;
    return j;
}

std::string read_text_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open " + path);
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

void write_text_file(const std::string& path, const std::string& contents) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << contents;
}

} // namespace gatekit
