#include "gatekit/scan_harness.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>
#include <thread>

namespace gatekit {

std::string scan_variable_name(ScanVariable v) {
    switch (v) {
        case ScanVariable::timing: return "timing";
        case ScanVariable::detuning: return "detuning";
        case ScanVariable::carrier: return "carrier";
        case ScanVariable::time_evolution: return "time_evolution";
    }
    return "timing";
}

ScanVariable scan_variable_from_name(const std::string& name) {
    if (name == "timing") return ScanVariable::timing;
    if (name == "detuning") return ScanVariable::detuning;
    if (name == "carrier") return ScanVariable::carrier;
    if (name == "time_evolution") return ScanVariable::time_evolution;
    throw std::invalid_argument("unknown scan variable: " + name);
}

std::string engine_name(EngineChoice e) {
    switch (e) {
        case EngineChoice::analytic: return "analytic";
        case EngineChoice::oracle: return "oracle";
        case EngineChoice::both: return "both";
    }
    return "analytic";
}

EngineChoice engine_from_name(const std::string& name) {
    if (name == "analytic") return EngineChoice::analytic;
    if (name == "oracle") return EngineChoice::oracle;
    if (name == "both") return EngineChoice::both;
    throw std::invalid_argument("unknown engine: " + name);
}

namespace {

void validate_spec(const ScanSpec& spec) {
    if (spec.designs.empty()) throw std::invalid_argument("scan spec needs at least one design");
    if (spec.grid.empty()) throw std::invalid_argument("scan grid must not be empty");
    for (size_t i = 1; i < spec.grid.size(); ++i)
        if (!(spec.grid[i] > spec.grid[i - 1]))
            throw std::invalid_argument("scan grid must be strictly increasing");
    if (spec.variable == ScanVariable::carrier && spec.engine == EngineChoice::analytic)
        throw std::invalid_argument(
            "carrier scans are oracle-defined; use engine 'oracle' or 'both'");
}

PopulationQuad analytic_point(const ScanSpec& spec, const GateDesign& design, double value) {
    switch (spec.variable) {
        case ScanVariable::timing:
            return populations(design, kGateTime, {value, 0.0, spec.nbar});
        case ScanVariable::detuning:
            return populations(design, kGateTime, {0.0, value, spec.nbar});
        case ScanVariable::time_evolution:
            return populations(design, value, {0.0, 0.0, spec.nbar});
        case ScanVariable::carrier: {
            // Printed-series value in the fidelity column; populations and
            // purity stay at their carrier-free analytic references.
            PopulationQuad quad = populations(design, kGateTime, {0.0, 0.0, spec.nbar});
            quad.fidelity = carrier_series(design, value, spec.oracle.eta, kGateTime);
            return quad;
        }
    }
    throw std::logic_error("unreachable scan variable");
}

PopulationQuad oracle_point(const ScanSpec& spec, const GateDesign& design, double value) {
    SimConfig config = spec.oracle;
    double t_end = kGateTime;
    switch (spec.variable) {
        case ScanVariable::timing:
            t_end = (1.0 + value) * kGateTime;
            break;
        case ScanVariable::detuning:
            config.dnu_rel = value;
            break;
        case ScanVariable::time_evolution:
            t_end = value;
            break;
        case ScanVariable::carrier:
            config.mode = OracleMode::full_with_carrier;
            config.nu = 1.0 / (2.0 * config.eta * value);
            break;
    }
    const ThermalEnsemble ensemble = ThermalEnsemble::build(spec.nbar, config.n_max - 5 + 1);
    return thermal_average(design, config, ensemble, t_end);
}

PopulationQuad abs_difference(const PopulationQuad& a, const PopulationQuad& b) {
    PopulationQuad d;
    d.p_ss = std::abs(a.p_ss - b.p_ss);
    d.p_sd = std::abs(a.p_sd - b.p_sd);
    d.p_ds = std::abs(a.p_ds - b.p_ds);
    d.p_dd = std::abs(a.p_dd - b.p_dd);
    d.fidelity = std::abs(a.fidelity - b.fidelity);
    d.purity = std::abs(a.purity - b.purity);
    return d;
}

} // namespace

std::vector<ScanRow> run_scan(const ScanSpec& spec) {
    validate_spec(spec);
    const std::string variable = scan_variable_name(spec.variable);

    struct Task {
        size_t design_index;
        size_t grid_index;
    };
    std::vector<Task> tasks;
    tasks.reserve(spec.designs.size() * spec.grid.size());
    for (size_t d = 0; d < spec.designs.size(); ++d)
        for (size_t g = 0; g < spec.grid.size(); ++g) tasks.push_back({d, g});

    const int rows_per_task = spec.engine == EngineChoice::both ? 3
                              : 1;
    std::vector<ScanRow> rows(tasks.size() * static_cast<size_t>(rows_per_task));

    auto run_task = [&](size_t task_index) {
        const Task& task = tasks[task_index];
        const GateDesign& design = spec.designs[task.design_index];
        const double value = spec.grid[task.grid_index];
        ScanRow base;
        base.design = design.label();
        base.family = family_name(design.family);
        base.variable = variable;
        base.value = value;

        const size_t offset = task_index * static_cast<size_t>(rows_per_task);
        auto emit = [&](size_t slot, const std::string& engine,
                        const PopulationQuad& quad, bool error,
                        const std::string& message) {
            ScanRow row = base;
            row.engine = engine;
            row.quad = quad;
            row.error = error;
            row.error_message = message;
            rows[offset + slot] = std::move(row);
        };

        if (spec.engine == EngineChoice::analytic) {
            emit(0, "analytic", analytic_point(spec, design, value), false, "");
            return;
        }
        if (spec.engine == EngineChoice::oracle) {
            try {
                emit(0, "oracle", oracle_point(spec, design, value), false, "");
            } catch (const std::exception& e) {
                emit(0, "oracle", PopulationQuad{}, true, e.what());
            }
            return;
        }
        const PopulationQuad analytic = analytic_point(spec, design, value);
        emit(0, "analytic", analytic, false, "");
        try {
            const PopulationQuad oracle = oracle_point(spec, design, value);
            emit(1, "oracle", oracle, false, "");
            emit(2, "abs_diff", abs_difference(analytic, oracle), false, "");
        } catch (const std::exception& e) {
            emit(1, "oracle", PopulationQuad{}, true, e.what());
            emit(2, "abs_diff", PopulationQuad{}, true, e.what());
        }
    };

    const int threads = std::max(1, spec.threads);
    if (threads == 1 || tasks.size() < 2) {
        for (size_t i = 0; i < tasks.size(); ++i) run_task(i);
    } else {
        // Static partition: row slots are preassigned, so the merged table
        // is identical to the serial one.
        std::vector<std::thread> pool;
        const size_t total = tasks.size();
        const size_t workers = std::min<size_t>(static_cast<size_t>(threads), total);
        for (size_t w = 0; w < workers; ++w)
            pool.emplace_back([&, w]() {
                for (size_t i = w; i < total; i += workers) run_task(i);
            });
        for (auto& th : pool) th.join();
    }
    return rows;
}

namespace {

double target_deficit(const ScanRow& row, const std::string& target) {
    if (target == "fidelity") return 1.0 - row.quad.fidelity;
    if (target == "purity") return 1.0 - row.quad.purity;
    throw std::invalid_argument("fit target must be 'fidelity' or 'purity'");
}

} // namespace

FitResult fit_scaling_exponent(const std::vector<ScanRow>& rows, const std::string& design,
                               std::pair<double, double> window, const std::string& target) {
    constexpr double kFloor = 1e-13; // below this the deficit is numerical noise
    std::vector<double> xs, ys;
    for (const ScanRow& row : rows) {
        if (row.design != design || row.engine != "analytic" || row.error) continue;
        const double v = std::abs(row.value);
        if (v < window.first || v > window.second) continue;
        const double deficit = target_deficit(row, target);
        if (deficit <= kFloor) continue;
        xs.push_back(std::log(v));
        ys.push_back(std::log(deficit));
    }
    if (xs.size() < 5)
        throw NumericalError("fit window holds fewer than 5 points above the infidelity floor");
    const double n = static_cast<double>(xs.size());
    double sx = 0, sy = 0, sxx = 0, sxy = 0, syy = 0;
    for (size_t i = 0; i < xs.size(); ++i) {
        sx += xs[i];
        sy += ys[i];
        sxx += xs[i] * xs[i];
        sxy += xs[i] * ys[i];
        syy += ys[i] * ys[i];
    }
    FitResult fit;
    fit.design = design;
    fit.target = target;
    fit.slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
    fit.intercept = (sy - fit.slope * sx) / n;
    const double ss_res = syy - sy * sy / n - fit.slope * (sxy - sx * sy / n);
    const double ss_tot = syy - sy * sy / n;
    fit.r_squared = ss_tot > 0.0 ? 1.0 - ss_res / ss_tot : 1.0;
    fit.window_lo = window.first;
    fit.window_hi = window.second;
    fit.points = static_cast<int>(xs.size());
    return fit;
}

double quadratic_prefactor(const std::vector<ScanRow>& rows, const std::string& design,
                           const std::string& target) {
    // Collect analytic deficits keyed by grid value.
    std::vector<std::pair<double, double>> pts;
    for (const ScanRow& row : rows) {
        if (row.design != design || row.engine != "analytic" || row.error) continue;
        pts.emplace_back(row.value, target_deficit(row, target));
    }
    if (pts.empty()) throw NumericalError("no analytic rows for design " + design);
    std::sort(pts.begin(), pts.end());

    double at_zero = 0.0;
    bool has_zero = false;
    std::vector<double> positive;
    for (const auto& [v, deficit] : pts) {
        if (v == 0.0) {
            at_zero = deficit;
            has_zero = true;
        } else if (v > 0.0) {
            positive.push_back(v);
        }
    }
    if (!has_zero) throw std::invalid_argument("prefactor extraction needs a grid point at 0");
    if (positive.size() < 2)
        throw std::invalid_argument("prefactor extraction needs at least two positive grid points");
    auto deficit_at = [&](double v) -> double {
        for (const auto& [value, deficit] : pts)
            if (value == v) return deficit;
        throw std::invalid_argument("grid is not symmetric about 0");
    };
    const double h1 = positive[0];
    const double h2 = positive[1];
    const double d1 = (deficit_at(h1) + deficit_at(-h1) - 2.0 * at_zero) / (h1 * h1);
    const double d2 = (deficit_at(h2) + deficit_at(-h2) - 2.0 * at_zero) / (h2 * h2);
    // Richardson step for a general ring ratio removes the h^2 error term.
    return (h2 * h2 * d1 - h1 * h1 * d2) / (h2 * h2 - h1 * h1);
}

std::string rows_to_csv(const std::vector<ScanRow>& rows) {
    std::ostringstream out;
    out << "design,family,variable,value,engine,fidelity,purity,pSS,pSDDS,pDD,error_flag\n";
    char buf[64];
    auto num = [&](double v) -> std::string {
        std::snprintf(buf, sizeof buf, "%.17g", v);
        return buf;
    };
    for (const ScanRow& row : rows) {
        out << row.design << ',' << row.family << ',' << row.variable << ','
            << num(row.value) << ',' << row.engine << ',' << num(row.quad.fidelity) << ','
            << num(row.quad.purity) << ',' << num(row.quad.p_ss) << ','
            << num(row.quad.p_sd + row.quad.p_ds) << ',' << num(row.quad.p_dd) << ','
            << (row.error ? 1 : 0) << '\n';
    }
    return out.str();
}

} // namespace gatekit
