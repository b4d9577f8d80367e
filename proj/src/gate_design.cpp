#include "gatekit/gate_design.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <set>
#include <sstream>

#include "gatekit/analytic_engine.hpp"
#include "gatekit/numerics.hpp"

namespace gatekit {

std::string family_name(Family f) {
    switch (f) {
        case Family::MS: return "MS";
        case Family::Cardioid: return "Cardioid";
        case Family::Antioid: return "Antioid";
        case Family::CarNu: return "CarNu";
        case Family::Custom: return "Custom";
    }
    return "Custom";
}

Family family_from_name(const std::string& name) {
    std::string lower(name);
    std::transform(lower.begin(), lower.end(), lower.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    if (lower == "ms") return Family::MS;
    if (lower == "cardioid") return Family::Cardioid;
    if (lower == "antioid") return Family::Antioid;
    if (lower == "carnu") return Family::CarNu;
    if (lower == "custom") return Family::Custom;
    throw std::invalid_argument("unknown gate family: " + name);
}

ToneIndexSet::ToneIndexSet(std::vector<int> indices) : indices_(std::move(indices)) {
    if (indices_.empty()) throw std::invalid_argument("tone set must not be empty");
    std::set<int> seen;
    for (int n : indices_) {
        if (n == 0) throw std::invalid_argument("tone indices must be nonzero");
        if (!seen.insert(n).second)
            throw std::invalid_argument("tone indices must be distinct");
    }
}

double GateDesign::normalization_residual() const {
    double q = 0.0;
    for (int i = 0; i < tone_count(); ++i)
        q += amplitudes[static_cast<size_t>(i)] * amplitudes[static_cast<size_t>(i)] / tones[i];
    return q - 1.0;
}

std::string GateDesign::label() const {
    std::ostringstream out;
    out << family_name(family) << '(';
    for (int i = 0; i < tone_count(); ++i) {
        if (i > 0) out << ',';
        out << tones[i];
    }
    out << ')';
    return out.str();
}

ValidationReport validate_tone_set(const ToneIndexSet& tones) {
    ValidationReport report;
    const auto& n = tones.indices();
    std::set<std::array<int, 3>> seen;
    // Triples drawn with repetition, all eight sign patterns; a zero sum
    // marks an on-resonance third-order intermodulation product.
    for (size_t a = 0; a < n.size(); ++a)
        for (size_t b = a; b < n.size(); ++b)
            for (size_t c = b; c < n.size(); ++c)
                for (int mask = 0; mask < 8; ++mask) {
                    std::array<int, 3> signed_tones = {
                        (mask & 1) ? -n[a] : n[a],
                        (mask & 2) ? -n[b] : n[b],
                        (mask & 4) ? -n[c] : n[c],
                    };
                    const int sum = signed_tones[0] + signed_tones[1] + signed_tones[2];
                    if (sum != 0) continue;
                    std::array<int, 3> key = signed_tones;
                    std::sort(key.begin(), key.end());
                    // A triple and its global sign flip describe the same product.
                    std::array<int, 3> flipped = {-key[2], -key[1], -key[0]};
                    if (seen.count(key) || seen.count(flipped)) continue;
                    seen.insert(key);
                    report.violations.push_back({signed_tones, sum});
                }
    report.admissible = report.violations.empty();
    return report;
}

namespace {

// Normalizes to sum r^2/n = 1 and fixes the sign so the last nonzero
// amplitude is positive.
std::vector<double> normalize_amplitudes(std::vector<double> r, const ToneIndexSet& tones) {
    double q = 0.0;
    for (int i = 0; i < tones.size(); ++i)
        q += r[static_cast<size_t>(i)] * r[static_cast<size_t>(i)] / tones[i];
    if (!(q > 0.0))
        throw DesignError("amplitude vector admits no normalization: sum r^2/n <= 0");
    const double scale = 1.0 / std::sqrt(q);
    for (double& v : r) v *= scale;
    for (auto it = r.rbegin(); it != r.rend(); ++it) {
        if (*it == 0.0) continue;
        if (*it < 0.0)
            for (double& v : r) v = -v;
        break;
    }
    return r;
}

// One-dimensional null space of an (N-1) x N constraint matrix.
std::vector<double> null_space_amplitudes(const Eigen::MatrixXd& rows,
                                          const ToneIndexSet& tones) {
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(rows, Eigen::ComputeFullV);
    const auto& sv = svd.singularValues();
    if (sv.size() > 1 && sv(sv.size() - 1) < 1e-10 * sv(0))
        throw DesignError("constraint matrix is rank deficient: null space is not one-dimensional");
    const Eigen::VectorXd v = svd.matrixV().col(rows.cols() - 1);
    std::vector<double> r(v.data(), v.data() + v.size());
    return normalize_amplitudes(std::move(r), tones);
}

} // namespace

GateDesign design_ms() {
    GateDesign d;
    d.family = Family::MS;
    d.tones = ToneIndexSet({1});
    d.amplitudes = {1.0};
    return d;
}

GateDesign design_cardioid(const ToneIndexSet& tones) {
    const int N = tones.size();
    if (N < 2) throw std::invalid_argument("Cardioid needs at least two tones");
    Eigen::MatrixXd rows(N - 1, N);
    for (int k = 0; k < N - 1; ++k)
        for (int j = 0; j < N; ++j)
            rows(k, j) = std::pow(static_cast<double>(tones[j]), k);
    GateDesign d;
    d.family = Family::Cardioid;
    d.tones = tones;
    d.amplitudes = null_space_amplitudes(rows, tones);
    return d;
}

GateDesign design_antioid(const ToneIndexSet& tones) {
    GateDesign d = design_cardioid(tones);
    d.family = Family::Antioid;
    for (double& r : d.amplitudes) r = std::abs(r);
    return d;
}

GateDesign design_carnu(const ToneIndexSet& tones) {
    const int N = tones.size();
    if (N < 3) throw std::invalid_argument("CarNu needs at least three tones");
    Eigen::MatrixXd rows(N - 1, N);
    for (int j = 0; j < N; ++j) rows(0, j) = 1.0; // quadratic timing order
    for (int i = 1; i <= N - 2; ++i)              // purity/frequency constraints
        for (int j = 0; j < N; ++j)
            rows(i, j) = std::pow(static_cast<double>(tones[j]), -i);
    GateDesign d;
    d.family = Family::CarNu;
    d.tones = tones;
    d.amplitudes = null_space_amplitudes(rows, tones);
    return d;
}

GateDesign design_carnu_minimized(const ToneIndexSet& tones) {
    if (tones.size() != 3)
        throw std::invalid_argument("the minimized CarNu search is defined for exactly three tones");

    // Orthonormal basis of the timing-constrained plane sum r = 0.
    Eigen::MatrixXd row(1, 3);
    row << 1.0, 1.0, 1.0;
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(row, Eigen::ComputeFullV);
    const Eigen::Vector3d b1 = svd.matrixV().col(1);
    const Eigen::Vector3d b2 = svd.matrixV().col(2);

    auto candidate = [&](double theta) -> GateDesign {
        Eigen::Vector3d v = std::cos(theta) * b1 + std::sin(theta) * b2;
        GateDesign d;
        d.family = Family::CarNu;
        d.tones = tones;
        d.amplitudes = normalize_amplitudes({v(0), v(1), v(2)}, tones);
        return d;
    };
    auto objective = [&](double theta) -> double {
        GateDesign d;
        try {
            d = candidate(theta);
        } catch (const DesignError&) {
            return std::numeric_limits<double>::infinity();
        }
        const double h = 1e-4;
        const double ip = gate_infidelity_at(d, kGateTime, {0.0, h, 0.0});
        const double im = gate_infidelity_at(d, kGateTime, {0.0, -h, 0.0});
        return (ip + im) / (h * h);
    };

    // Coarse sweep over half a turn (theta and theta+pi give the same
    // design), then golden-section refinement.
    const int coarse = 256;
    double best_theta = 0.0;
    double best_val = std::numeric_limits<double>::infinity();
    for (int k = 0; k < coarse; ++k) {
        const double theta = std::numbers::pi * k / coarse;
        const double val = objective(theta);
        if (val < best_val) {
            best_val = val;
            best_theta = theta;
        }
    }
    const double gr = (std::sqrt(5.0) - 1.0) / 2.0;
    double lo = best_theta - std::numbers::pi / coarse;
    double hi = best_theta + std::numbers::pi / coarse;
    double x1 = hi - gr * (hi - lo), x2 = lo + gr * (hi - lo);
    double f1 = objective(x1), f2 = objective(x2);
    for (int it = 0; it < 80; ++it) {
        if (f1 < f2) {
            hi = x2; x2 = x1; f2 = f1;
            x1 = hi - gr * (hi - lo);
            f1 = objective(x1);
        } else {
            lo = x1; x1 = x2; f1 = f2;
            x2 = lo + gr * (hi - lo);
            f2 = objective(x2);
        }
    }
    return candidate((lo + hi) / 2.0);
}

std::vector<double> cardioid_closed_form_amplitudes(int N) {
    if (N < 1 || N > 20)
        throw std::invalid_argument("cardioid_closed_form_amplitudes expects 1 <= N <= 20");
    std::vector<double> r(static_cast<size_t>(N));
    // log of N!/2^N * sqrt(2 sqrt(pi) / ((N-1)! Gamma(N+1/2)))
    const double log_pref =
        std::lgamma(N + 1.0) - N * std::numbers::ln2 +
        0.5 * (std::numbers::ln2 + 0.5 * std::log(std::numbers::pi) -
               std::lgamma(static_cast<double>(N)) - std::lgamma(N + 0.5));
    for (int j = 1; j <= N; ++j) {
        const double magnitude = std::exp(log_pref + log_binomial(N - 1, j - 1));
        r[static_cast<size_t>(j - 1)] = ((N - j) % 2 == 0 ? magnitude : -magnitude);
    }
    return r;
}

double gate_time_ratio(int N) {
    if (N < 1) throw std::invalid_argument("gate_time_ratio expects N >= 1");
    return static_cast<double>(N) * N / (2.0 * N - 1.0);
}

GateDesign make_custom(std::vector<int> tones, std::vector<double> amplitudes,
                       bool renormalize) {
    ToneIndexSet set(std::move(tones));
    if (static_cast<int>(amplitudes.size()) != set.size())
        throw std::invalid_argument("amplitude count must match tone count");
    GateDesign d;
    d.family = Family::Custom;
    d.tones = set;
    if (renormalize) {
        double q = 0.0;
        for (int i = 0; i < set.size(); ++i)
            q += amplitudes[static_cast<size_t>(i)] * amplitudes[static_cast<size_t>(i)] / set[i];
        if (!(q > 0.0))
            throw DesignError("amplitude vector admits no normalization: sum r^2/n <= 0");
        const double scale = 1.0 / std::sqrt(q);
        for (double& v : amplitudes) v *= scale;
    }
    d.amplitudes = std::move(amplitudes);
    if (std::abs(d.normalization_residual()) > 1e-6)
        throw DesignError("custom amplitudes violate sum r^2/n = 1; pass renormalize to fix");
    return d;
}

} // namespace gatekit
