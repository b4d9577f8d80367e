// gatekit: design, evolve, scan and verify multi-tone entangling gates.

#include <CLI11.hpp>
#include <chrono>
#include <cstdio>
#include <ctime>
#include <filesystem>
#include <iostream>
#include <nlohmann/json.hpp>
#include <string>
#include <vector>

#include "gatekit/analytic_engine.hpp"
#include "gatekit/gate_design.hpp"
#include "gatekit/scan_harness.hpp"
#include "gatekit/serialization.hpp"
#include "gatekit/verification.hpp"
#include "gatekit/version.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

constexpr int kExitUsage = 1;
constexpr int kExitNumerical = 2;
constexpr int kExitVerification = 3;

struct GlobalOptions {
    std::string output_dir = ".";
    std::string format = "csv";
    int threads = 1;
    long seed = 0; // reserved; all computation is deterministic
};

std::string timestamp_utc() {
    const auto now = std::chrono::system_clock::now();
    const std::time_t tt = std::chrono::system_clock::to_time_t(now);
    char buf[32];
    std::tm tm_utc{};
    gmtime_r(&tt, &tm_utc);
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm_utc);
    return buf;
}

void write_manifest(const GlobalOptions& opts, const std::string& subcommand,
                    const json& parameters, const std::vector<std::string>& outputs,
                    const std::string& path) {
    json manifest;
    manifest["tool"] = "gatekit";
    manifest["version"] = gatekit::kVersion;
    manifest["timestamp"] = timestamp_utc();
    manifest["subcommand"] = subcommand;
    manifest["parameters"] = parameters;
    manifest["outputs"] = outputs;
    gatekit::write_text_file(path, manifest.dump(2) + "\n");
}

std::vector<int> parse_tones(const std::string& csv) {
    std::vector<int> tones;
    std::string token;
    std::istringstream in(csv);
    while (std::getline(in, token, ',')) {
        if (token.empty()) continue;
        size_t used = 0;
        const int value = std::stoi(token, &used);
        if (used != token.size()) throw std::invalid_argument("bad tone index: " + token);
        tones.push_back(value);
    }
    if (tones.empty()) throw std::invalid_argument("no tone indices given");
    return tones;
}

gatekit::GateDesign load_design(const std::string& path) {
    return gatekit::design_from_json(json::parse(gatekit::read_text_file(path)));
}

int cmd_design(const GlobalOptions& opts, const std::string& family_name,
               const std::string& tones_csv, const std::string& carnu_mode,
               bool allow_intermod, std::string output) {
    using namespace gatekit;
    const Family family = family_from_name(family_name);
    GateDesign design;
    ValidationReport report;
    if (family == Family::MS) {
        design = design_ms();
        report = validate_tone_set(design.tones);
    } else {
        if (tones_csv.empty()) throw std::invalid_argument("--tones is required for " + family_name);
        ToneIndexSet tones(parse_tones(tones_csv));
        report = validate_tone_set(tones);
        switch (family) {
            case Family::Cardioid: design = design_cardioid(tones); break;
            case Family::Antioid: design = design_antioid(tones); break;
            case Family::CarNu:
                design = carnu_mode == "minimized" ? design_carnu_minimized(tones)
                                                   : design_carnu(tones);
                break;
            default:
                throw std::invalid_argument("design supports ms, cardioid, antioid and carnu");
        }
    }

    if (output.empty()) output = "design.json";
    const fs::path design_path = fs::path(opts.output_dir) / output;
    const fs::path report_path = design_path.string() + ".validation.json";
    write_text_file(design_path.string(), design_to_json(design).dump(2) + "\n");
    write_text_file(report_path.string(), validation_report_to_json(report).dump(2) + "\n");
    const fs::path manifest_path = design_path.string() + ".manifest.json";
    write_manifest(opts, "design",
                   {{"family", family_name},
                    {"tones", tones_csv},
                    {"carnu_mode", carnu_mode},
                    {"allow_intermod", allow_intermod}},
                   {design_path.string(), report_path.string()}, manifest_path.string());
    std::cout << design.label() << " written to " << design_path.string() << "\n";
    if (!report.admissible) {
        std::cerr << "tone set drives on-resonance third-order intermodulation products:\n";
        for (const auto& v : report.violations)
            std::cerr << "  " << v.signed_tones[0] << " + " << v.signed_tones[1] << " + "
                      << v.signed_tones[2] << " = 0\n";
        if (!allow_intermod) return kExitNumerical;
        std::cerr << "continuing because --allow-intermod was given\n";
    }
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Multi-tone entangling gate design and verification"};
    app.set_version_flag("--version", gatekit::kVersion);

    GlobalOptions opts;
    app.add_option("--output-dir", opts.output_dir, "Directory for output files");
    app.add_option("--format", opts.format, "Table format")
        ->check(CLI::IsMember({"csv", "json"}));
    app.add_option("--threads", opts.threads, "Worker threads for scans")
        ->check(CLI::PositiveNumber);
    app.add_option("--seed", opts.seed, "Reserved; all computation is deterministic");

    // design
    auto* design_cmd = app.add_subcommand("design", "Construct a gate design");
    std::string family, tones_csv, carnu_mode = "deterministic", design_output;
    bool allow_intermod = false;
    design_cmd->add_option("family", family, "ms | cardioid | antioid | carnu")->required();
    design_cmd->add_option("--tones", tones_csv, "Comma-separated tone indices");
    design_cmd->add_option("--carnu-mode", carnu_mode, "deterministic | minimized")
        ->check(CLI::IsMember({"deterministic", "minimized"}));
    design_cmd->add_flag("--allow-intermod", allow_intermod,
                         "Accept tone sets with third-order intermodulation products");
    design_cmd->add_option("--output", design_output, "Design file name (default design.json)");

    // evolve
    auto* evolve_cmd = app.add_subcommand("evolve", "Population evolution over a time grid");
    std::string evolve_design, evolve_engine = "analytic", evolve_output = "evolve";
    double evolve_nbar = 0.0, evolve_tmax = 2.0;
    int evolve_steps = 201, evolve_nmax = 30;
    evolve_cmd->add_option("--design", evolve_design, "Design JSON file")->required();
    evolve_cmd->add_option("--engine", evolve_engine, "analytic | oracle | both")
        ->check(CLI::IsMember({"analytic", "oracle", "both"}));
    evolve_cmd->add_option("--nbar", evolve_nbar, "Mean thermal phonon number")
        ->check(CLI::NonNegativeNumber);
    evolve_cmd->add_option("--tmax", evolve_tmax, "Final time in units of T");
    evolve_cmd->add_option("--steps", evolve_steps, "Grid points")->check(CLI::PositiveNumber);
    evolve_cmd->add_option("--nmax", evolve_nmax, "Oracle Fock cutoff");
    evolve_cmd->add_option("--output", evolve_output, "Output stem (default evolve)");

    // scan
    auto* scan_cmd = app.add_subcommand("scan", "Run a scan specification");
    std::string scan_spec_path, scan_output = "scan";
    scan_cmd->add_option("spec", scan_spec_path, "Scan spec JSON file")->required();
    scan_cmd->add_option("--output", scan_output, "Output stem (default scan)");

    // verify
    auto* verify_cmd = app.add_subcommand("verify", "Run the invariant suites");
    std::string verify_level = "quick", verify_output = "verify_report.json";
    verify_cmd->add_option("--level", verify_level, "quick | full")
        ->check(CLI::IsMember({"quick", "full"}));
    verify_cmd->add_option("--output", verify_output, "Report file name");

    app.require_subcommand(1);
    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kExitUsage;
    }

    try {
        fs::create_directories(opts.output_dir);
        if (*design_cmd)
            return cmd_design(opts, family, tones_csv, carnu_mode, allow_intermod, design_output);

        if (*evolve_cmd) {
            gatekit::ScanSpec spec;
            spec.variable = gatekit::ScanVariable::time_evolution;
            spec.designs = {load_design(evolve_design)};
            spec.nbar = evolve_nbar;
            spec.engine = gatekit::engine_from_name(evolve_engine);
            spec.oracle.n_max = evolve_nmax;
            spec.threads = opts.threads;
            for (int k = 0; k < evolve_steps; ++k)
                spec.grid.push_back(evolve_tmax * (k + 1) / static_cast<double>(evolve_steps));
            const auto rows = gatekit::run_scan(spec);
            const fs::path table_path =
                fs::path(opts.output_dir) / (evolve_output + (opts.format == "csv" ? ".csv" : ".json"));
            if (opts.format == "csv")
                gatekit::write_text_file(table_path.string(), gatekit::rows_to_csv(rows));
            else
                gatekit::write_text_file(table_path.string(),
                                         gatekit::rows_to_json(rows).dump(2) + "\n");
            const fs::path manifest_path = fs::path(opts.output_dir) / (evolve_output + ".manifest.json");
            write_manifest(opts, "evolve",
                           {{"design", evolve_design},
                            {"engine", evolve_engine},
                            {"nbar", evolve_nbar},
                            {"tmax", evolve_tmax},
                            {"steps", evolve_steps},
                            {"nmax", evolve_nmax}},
                           {table_path.string()}, manifest_path.string());
            std::cout << "evolution table written to " << table_path.string() << "\n";
            return 0;
        }

        if (*scan_cmd) {
            gatekit::ScanSpec spec = gatekit::scan_spec_from_json(
                json::parse(gatekit::read_text_file(scan_spec_path)));
            spec.threads = opts.threads;
            const auto rows = gatekit::run_scan(spec);

            std::vector<std::string> outputs;
            const fs::path csv_path = fs::path(opts.output_dir) / (scan_output + ".csv");
            const fs::path json_path = fs::path(opts.output_dir) / (scan_output + ".json");
            gatekit::write_text_file(csv_path.string(), gatekit::rows_to_csv(rows));
            gatekit::write_text_file(json_path.string(), gatekit::rows_to_json(rows).dump(2) + "\n");
            outputs.push_back(csv_path.string());
            outputs.push_back(json_path.string());

            // Scaling fits and quadratic prefactors for error scans.
            if (spec.variable == gatekit::ScanVariable::timing ||
                spec.variable == gatekit::ScanVariable::detuning) {
                json fits = json::array();
                for (const gatekit::GateDesign& d : spec.designs) {
                    json entry;
                    entry["design"] = d.label();
                    try {
                        entry["fidelity_fit"] = gatekit::fit_to_json(gatekit::fit_scaling_exponent(
                            rows, d.label(), {spec.fit_window_lo, spec.fit_window_hi}));
                        entry["purity_fit"] = gatekit::fit_to_json(gatekit::fit_scaling_exponent(
                            rows, d.label(), {spec.fit_window_lo, spec.fit_window_hi}, "purity"));
                    } catch (const std::exception& e) {
                        entry["fit_error"] = e.what();
                    }
                    try {
                        entry["quadratic_prefactor"] = gatekit::quadratic_prefactor(rows, d.label());
                    } catch (const std::exception& e) {
                        entry["prefactor_error"] = e.what();
                    }
                    fits.push_back(std::move(entry));
                }
                const fs::path fits_path = fs::path(opts.output_dir) / (scan_output + ".fits.json");
                gatekit::write_text_file(fits_path.string(), fits.dump(2) + "\n");
                outputs.push_back(fits_path.string());
            }
            const fs::path manifest_path =
                fs::path(opts.output_dir) / (scan_output + ".manifest.json");
            write_manifest(opts, "scan", {{"spec", scan_spec_path}}, outputs,
                           manifest_path.string());
            std::cout << "scan outputs written to " << opts.output_dir << "\n";
            return 0;
        }

        if (*verify_cmd) {
            const auto results = verify_level == "full" ? gatekit::run_full_checks()
                                                        : gatekit::run_quick_checks();
            json report;
            report["level"] = verify_level;
            report["version"] = gatekit::kVersion;
            json checks = json::array();
            bool all_pass = true;
            for (const auto& r : results) {
                std::printf("[%s] %-28s (%.2fs) %s\n", r.pass ? "PASS" : "FAIL", r.name.c_str(),
                            r.elapsed_s, r.detail.c_str());
                all_pass = all_pass && r.pass;
                checks.push_back({{"name", r.name},
                                  {"pass", r.pass},
                                  {"detail", r.detail},
                                  {"elapsed_s", r.elapsed_s}});
            }
            report["checks"] = std::move(checks);
            report["all_pass"] = all_pass;
            const fs::path report_path = fs::path(opts.output_dir) / verify_output;
            gatekit::write_text_file(report_path.string(), report.dump(2) + "\n");
            write_manifest(opts, "verify", {{"level", verify_level}}, {report_path.string()},
                           (fs::path(opts.output_dir) / (verify_output + ".manifest.json")).string());
            std::cout << (all_pass ? "all checks passed" : "verification FAILED") << "\n";
            return all_pass ? 0 : kExitVerification;
        }
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitNumerical;
    }
    return 0;
}
