#include "gatekit/hamiltonian_oracle.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>

namespace gatekit {

namespace {

using Complex = std::complex<double>;

Eigen::Matrix4cd collective_jy() {
    Eigen::Matrix2cd sy;
    sy << 0.0, Complex(0.0, -1.0), Complex(0.0, 1.0), 0.0;
    Eigen::Matrix2cd id = Eigen::Matrix2cd::Identity();
    // kron(sy, I)/2 + kron(I, sy)/2
    Eigen::Matrix4cd a = Eigen::Matrix4cd::Zero(), b = Eigen::Matrix4cd::Zero();
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) {
            a.block<2, 2>(2 * i, 2 * j) = sy(i, j) * id;
            b.block<2, 2>(2 * i, 2 * j) = (i == j ? sy : Eigen::Matrix2cd::Zero().eval());
        }
    return 0.5 * (a + b);
}

Eigen::Matrix4cd collective_jx() {
    Eigen::Matrix2cd sx;
    sx << 0.0, 1.0, 1.0, 0.0;
    Eigen::Matrix2cd id = Eigen::Matrix2cd::Identity();
    Eigen::Matrix4cd a = Eigen::Matrix4cd::Zero(), b = Eigen::Matrix4cd::Zero();
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) {
            a.block<2, 2>(2 * i, 2 * j) = sx(i, j) * id;
            b.block<2, 2>(2 * i, 2 * j) = (i == j ? sx : Eigen::Matrix2cd::Zero().eval());
        }
    return 0.5 * (a + b);
}

struct Propagator {
    const GateDesign& design;
    const SimConfig& config;
    Eigen::Matrix4cd jy = collective_jy();
    Eigen::Matrix4cd jx = collective_jx();
    Eigen::VectorXd sqrt_n;          // sqrt(1..n_max)
    std::vector<double> xi;          // sideband detunings, rad per T
    std::vector<double> carrier_freq;
    std::vector<double> carrier_phase;
    double omega = 0.0;              // Rabi frequency, rad per T

    explicit Propagator(const GateDesign& d, const SimConfig& c) : design(d), config(c) {
        const int dim = config.n_max + 1;
        sqrt_n.resize(dim - 1);
        for (int k = 1; k < dim; ++k) sqrt_n(k - 1) = std::sqrt(static_cast<double>(k));
        xi.resize(static_cast<size_t>(d.tone_count()));
        carrier_freq.resize(xi.size());
        carrier_phase.assign(xi.size(), 0.0);
        for (size_t i = 0; i < config.carrier_phases.size() && i < xi.size(); ++i)
            carrier_phase[i] = config.carrier_phases[i];
        for (int i = 0; i < d.tone_count(); ++i) {
            xi[static_cast<size_t>(i)] = (d.tones[i] - config.dnu_rel) * kXi0;
            carrier_freq[static_cast<size_t>(i)] = (config.nu + d.tones[i]) * kXi0;
        }
        omega = kEtaOmega / config.eta;
    }

    // dQ/dt = -i H(t) Q with H = -eta*Omega*Jy (x) sum_i r_i (a e^{i xi_i t} + h.c.)
    // plus the carrier term in full mode.  The Fock-side action of the
    // drive reduces to scaled column shifts of Jy*Q.
    void derivative(double t, const Eigen::MatrixXcd& Q, Eigen::MatrixXcd& out) const {
        const int dim = config.n_max + 1;
        Complex u(0.0, 0.0);
        for (int i = 0; i < design.tone_count(); ++i)
            u += design.amplitudes[static_cast<size_t>(i)] *
                 std::polar(1.0, xi[static_cast<size_t>(i)] * t);
        const Eigen::MatrixXcd W = jy * Q;
        out.setZero();
        out.leftCols(dim - 1) += u * (W.rightCols(dim - 1).array().rowwise() *
                                      sqrt_n.transpose().array().cast<Complex>())
                                         .matrix();
        out.rightCols(dim - 1) += std::conj(u) * (W.leftCols(dim - 1).array().rowwise() *
                                                  sqrt_n.transpose().array().cast<Complex>())
                                                     .matrix();
        out *= -kEtaOmega;
        if (config.mode == OracleMode::full_with_carrier) {
            double f = 0.0;
            if (config.carrier_model == CarrierModel::per_tone) {
                for (int i = 0; i < design.tone_count(); ++i)
                    f += design.amplitudes[static_cast<size_t>(i)] *
                         std::cos(carrier_freq[static_cast<size_t>(i)] * t +
                                  carrier_phase[static_cast<size_t>(i)]);
            } else {
                f = std::cos(config.nu * kXi0 * t);
            }
            out += (2.0 * omega * f) * (jx * Q);
        }
        out *= Complex(0.0, -1.0);
    }

    double max_angular_frequency() const {
        double w = 0.0;
        for (double x : xi) w = std::max(w, std::abs(x));
        double amp_sum = 0.0;
        for (double r : design.amplitudes) amp_sum += std::abs(r);
        w = std::max(w, kEtaOmega * amp_sum * std::sqrt(config.n_max + 1.0));
        if (config.mode == OracleMode::full_with_carrier) {
            for (double cf : carrier_freq) w = std::max(w, std::abs(cf));
            w = std::max(w, 2.0 * omega * amp_sum);
        }
        return w;
    }

    Eigen::MatrixXcd run(const Eigen::MatrixXcd& initial, double t_end, double h) const {
        const long steps = std::max<long>(1, std::lround(std::ceil(t_end / h)));
        const double dt = t_end / static_cast<double>(steps);
        Eigen::MatrixXcd q = initial;
        Eigen::MatrixXcd k1(q.rows(), q.cols()), k2 = k1, k3 = k1, k4 = k1, tmp = k1;
        double t = 0.0;
        for (long s = 0; s < steps; ++s) {
            derivative(t, q, k1);
            tmp = q + 0.5 * dt * k1;
            derivative(t + 0.5 * dt, tmp, k2);
            tmp = q + 0.5 * dt * k2;
            derivative(t + 0.5 * dt, tmp, k3);
            tmp = q + dt * k3;
            derivative(t + dt, tmp, k4);
            q += dt / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
            t += dt;
        }
        return q;
    }
};

Eigen::Vector4d qubit_populations(const Eigen::MatrixXcd& state) {
    Eigen::Vector4d p;
    for (int s = 0; s < 4; ++s) p(s) = state.row(s).squaredNorm();
    return p;
}

} // namespace

ThermalEnsemble ThermalEnsemble::build(double nbar, int max_levels) {
    if (nbar < 0.0) throw std::invalid_argument("nbar must be nonnegative");
    if (max_levels < 1) throw std::invalid_argument("max_levels must be positive");
    ThermalEnsemble ens;
    ens.nbar = nbar;
    if (nbar == 0.0) {
        ens.weights = {1.0};
        return ens;
    }
    const double ratio = nbar / (nbar + 1.0);
    double cumulative = 0.0;
    for (int n = 0; n < max_levels && cumulative < 1.0 - 1e-6; ++n) {
        const double w = std::pow(ratio, n) / (nbar + 1.0);
        ens.weights.push_back(w);
        cumulative += w;
    }
    ens.truncated_weight = 1.0 - cumulative;
    for (double& w : ens.weights) w /= cumulative;
    return ens;
}

EvolveResult evolve(const GateDesign& design, const SimConfig& config,
                    int initial_fock, double t_end) {
    if (config.n_max < 1) throw std::invalid_argument("n_max must be at least 1");
    if (initial_fock < 0 || initial_fock > config.n_max - 5)
        throw std::invalid_argument("initial Fock level must leave headroom: n0 <= n_max - 5");
    if (config.mode == OracleMode::full_with_carrier && !(config.nu > 0.0))
        throw std::invalid_argument("full mode requires a positive trap frequency nu");
    if (!(config.eta > 0.0 && config.eta < 0.3))
        throw std::invalid_argument("eta must lie in (0, 0.3)");
    if (t_end < 0.0) throw std::invalid_argument("t_end must be nonnegative");

    Propagator prop(design, config);
    const int dim = config.n_max + 1;
    Eigen::MatrixXcd initial = Eigen::MatrixXcd::Zero(4, dim);
    initial(0, initial_fock) = 1.0;

    EvolveResult result;
    if (t_end == 0.0) {
        result.state = initial;
        return result;
    }

    double h = std::min(2.0 * std::numbers::pi / prop.max_angular_frequency() / 20.0,
                        t_end / 64.0);
    Eigen::MatrixXcd current = prop.run(initial, t_end, h);
    Eigen::Vector4d pops = qubit_populations(current);
    bool converged = false;
    for (int iteration = 0; iteration < 14; ++iteration) {
        h *= 0.5;
        Eigen::MatrixXcd refined = prop.run(initial, t_end, h);
        Eigen::Vector4d refined_pops = qubit_populations(refined);
        const double change = (refined_pops - pops).cwiseAbs().maxCoeff();
        current = std::move(refined);
        pops = refined_pops;
        if (change < config.step_tolerance) {
            converged = true;
            break;
        }
    }
    if (!converged)
        throw NumericalError("time stepper did not reach the requested population tolerance");

    result.state = std::move(current);
    result.step_size = h;
    result.steps = static_cast<int>(std::lround(std::ceil(t_end / h)));
    result.norm_drift = std::abs(result.state.norm() - 1.0);
    result.top_level_population = result.state.rightCols(2).squaredNorm();
    result.leakage_exceeded = result.top_level_population > 1e-5;
    if (result.leakage_exceeded && config.strict_leakage)
        throw NumericalError("Fock truncation leakage above 1e-5; increase n_max");
    return result;
}

Eigen::Vector4cd ideal_target_state() {
    const Eigen::Matrix4cd jy = collective_jy();
    const Eigen::Matrix4cd jy2 = jy * jy;
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix4cd> eig(jy2);
    Eigen::Vector4cd phases;
    for (int k = 0; k < 4; ++k)
        phases(k) = std::polar(1.0, -0.5 * std::numbers::pi * eig.eigenvalues()(k));
    const Eigen::Matrix4cd u =
        eig.eigenvectors() * phases.asDiagonal() * eig.eigenvectors().adjoint();
    Eigen::Vector4cd ss = Eigen::Vector4cd::Zero();
    ss(0) = 1.0;
    return u * ss;
}

namespace {

PopulationQuad quad_from_density(const Eigen::Matrix4cd& rho) {
    static const Eigen::Vector4cd target = ideal_target_state();
    PopulationQuad quad;
    quad.p_ss = rho(0, 0).real();
    quad.p_sd = rho(1, 1).real();
    quad.p_ds = rho(2, 2).real();
    quad.p_dd = rho(3, 3).real();
    quad.fidelity = (target.adjoint() * rho * target)(0).real();
    quad.purity = (rho * rho).trace().real();
    return quad;
}

} // namespace

PopulationQuad reduce_state(const EvolveResult& result) {
    const Eigen::Matrix4cd rho = result.state * result.state.adjoint();
    return quad_from_density(rho);
}

PopulationQuad thermal_average(const GateDesign& design, const SimConfig& config,
                               const ThermalEnsemble& ensemble, double t,
                               ThermalDiagnostics* diagnostics) {
    if (static_cast<int>(ensemble.weights.size()) > config.n_max - 5 + 1)
        throw std::invalid_argument("thermal ensemble extends beyond n_max - 5");
    SimConfig per_run = config;
    per_run.strict_leakage = false; // leakage judged by ensemble weight below
    Eigen::Matrix4cd rho = Eigen::Matrix4cd::Zero();
    double weighted_top = 0.0;
    double max_drift = 0.0;
    int total_steps = 0;
    for (size_t n0 = 0; n0 < ensemble.weights.size(); ++n0) {
        const EvolveResult run = evolve(design, per_run, static_cast<int>(n0), t);
        rho += ensemble.weights[n0] * (run.state * run.state.adjoint());
        weighted_top += ensemble.weights[n0] * run.top_level_population;
        max_drift = std::max(max_drift, run.norm_drift);
        total_steps += run.steps;
        if (ensemble.weights[n0] * run.top_level_population > 1e-5)
            throw NumericalError("Fock truncation leakage above 1e-5 in thermal average; "
                                 "increase n_max");
    }
    if (diagnostics) {
        diagnostics->weighted_top_population = weighted_top;
        diagnostics->max_norm_drift = max_drift;
        diagnostics->total_steps = total_steps;
    }
    return quad_from_density(rho);
}

double carrier_infidelity_oracle(const GateDesign& design, double omega_over_nu,
                                 const SimConfig& base) {
    if (!(omega_over_nu > 0.0))
        throw std::invalid_argument("omega_over_nu must be positive");
    SimConfig rwa = base;
    rwa.mode = OracleMode::rwa_sidebands_only;
    SimConfig full = base;
    full.mode = OracleMode::full_with_carrier;
    // eta*Omega = xi0/2 fixes nu/xi0 = 1/(2 eta (Omega/nu)).
    full.nu = 1.0 / (2.0 * full.eta * omega_over_nu);
    const PopulationQuad a = reduce_state(evolve(design, rwa, 0, kGateTime));
    const PopulationQuad b = reduce_state(evolve(design, full, 0, kGateTime));
    return a.fidelity - b.fidelity;
}

} // namespace gatekit
