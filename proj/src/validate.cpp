#include "rubin/validate.hpp"

#include <cmath>
#include <complex>
#include <ostream>
#include <random>
#include <sstream>

#include "rubin/digamma.hpp"
#include "rubin/entanglement.hpp"
#include "rubin/model.hpp"
#include "rubin/oracle.hpp"
#include "rubin/parallel.hpp"
#include "rubin/sweep.hpp"
#include "rubin/symplectic.hpp"
#include "rubin/thermo.hpp"

namespace rubin::validate {

namespace {

namespace sym = rubin::symplectic;
namespace ent = rubin::entanglement;

constexpr double kFigM = 10.0;
constexpr double kFigm = 1.0;
constexpr double kFigOmegaS = 5.0;
constexpr double kFigOmegaB = 0.01;
constexpr int kFigN = 200;

double rel_err(double a, double b) {
    return std::abs(a - b) / std::max(std::abs(a), std::abs(b));
}

// smallest PT symplectic eigenvalue of the N=1 coupled ground state
double ground_state_nu_min(double omega_R) {
    const auto params = model::make_params(kFigM, kFigm, kFigOmegaS, kFigOmegaB, omega_R, 1);
    const auto gamma = sym::thermal_covariance(model::full_hamiltonian(params), 0.0);
    return sym::min_symplectic_eigenvalue(sym::partial_transpose_system(gamma));
}

// nu_min decreases with coupling; invert it by bisection
double coupling_for_nu_min(double target) {
    double lo = 0.5, hi = 120.0;
    for (int it = 0; it < 60 && (hi - lo) > 1e-9 * hi; ++it) {
        const double mid = 0.5 * (lo + hi);
        (ground_state_nu_min(mid) > target ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
}

}  // namespace

CheckResult check_thermo_quadratures(const ValidateOptions& opts) {
    CheckResult out{"thermo-quadrature-oracle", false, 0.0, 1e-6, ""};
    const double gammas[5] = {0.1, 0.3, 0.5, 0.7, 0.9};
    double temps[5];
    for (int i = 0; i < 5; ++i)
        temps[i] = 0.05 * std::pow(100.0, i / 4.0);  // log grid 0.05 .. 5

    std::ostringstream worst;
    for (double g : gammas)
        for (double T : temps) {
            const auto op = thermo::ohmic_for_gamma(kFigM, kFigm, kFigOmegaS, g, T);
            const double q2 = thermo::q_variance(op, opts.cubic_perturbation);
            const double p2 = thermo::p_variance(op, opts.cubic_perturbation);
            const auto ref = oracle::quadrature_integrals({op, 0.0, 1e-10});
            const double err = std::max(rel_err(q2, ref.q2), rel_err(p2, ref.p2));
            if (err > out.measured) {
                out.measured = err;
                worst.str("");
                worst << "worst at gamma=" << g << " T=" << T;
            }
        }
    out.detail = worst.str();
    out.pass = out.measured <= out.tolerance;
    return out;
}

CheckResult check_fock_negativity(const ValidateOptions&) {
    CheckResult out{"fock-negativity-oracle", false, 0.0, 1e-3, ""};
    std::ostringstream detail;
    for (double target : {0.48, 0.40, 0.30}) {
        const double omega_R = coupling_for_nu_min(target);
        const double nu = ground_state_nu_min(omega_R);
        const double n_cov = ent::negativity_from_nu_min(nu);
        oracle::FockOracleSpec spec;
        spec.params = model::make_params(kFigM, kFigm, kFigOmegaS, kFigOmegaB, omega_R, 1);
        spec.cutoff = 40;
        const double n_fock = oracle::fock_negativity(spec);
        const double err = std::abs(n_cov - n_fock);
        out.measured = std::max(out.measured, err);
        detail << "nu=" << nu << " omega_R=" << omega_R << " d=" << err << "; ";
    }
    out.detail = detail.str();
    out.pass = out.measured <= out.tolerance;
    return out;
}

CheckResult check_cross_branch(const ValidateOptions& opts) {
    CheckResult out{"chain-ohmic-cross-branch", false, 0.0, 0.05, ""};
    std::ostringstream worst;
    for (double g : {0.3, 0.6, 0.9})
        for (double T : {0.5, 1.0, 2.0}) {
            const auto params =
                model::make_params_from_gamma(kFigM, kFigm, kFigOmegaS, kFigOmegaB, g, kFigN);
            const auto chain = ent::stationary_quadratures(
                params, T, ent::StationaryProtocol::defaults_for(params), opts.workers);
            const auto op = thermo::ohmic_from_model(params, T);
            const double eq = rel_err(chain.q2, thermo::q_variance(op));
            const double ep = rel_err(chain.p2, thermo::p_variance(op));
            const double err = std::max(eq, ep);
            if (err > out.measured) {
                out.measured = err;
                worst.str("");
                worst << "worst at gamma=" << g << " T=" << T << " (q2 " << eq << ", p2 " << ep
                      << ")";
            }
        }
    out.detail = worst.str();
    out.pass = out.measured <= out.tolerance;
    return out;
}

CheckResult check_symplectic_invariants(const ValidateOptions&) {
    CheckResult out{"symplectic-invariants", false, 0.0, 1.0, ""};
    std::ostringstream detail;
    std::mt19937 rng(20260809);
    std::normal_distribution<double> gauss;
    std::uniform_real_distribution<double> uni(0.5, 2.0);

    auto track = [&](const char* name, double violation, double tol) {
        const double ratio = violation / tol;
        if (ratio > out.measured) {
            out.measured = ratio;
            detail.str("");
            detail << "worst: " << name << " (" << violation << " vs " << tol << ")";
        }
    };

    // random positive-definite Hamiltonian, 8 modes
    const int n = 8;
    Eigen::MatrixXd B(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) B(i, j) = gauss(rng);
    model::QuadraticHamiltonian H;
    H.potential = B.transpose() * B + Eigen::MatrixXd::Identity(n, n);
    H.masses = Eigen::VectorXd::NullaryExpr(n, [&](Eigen::Index) { return uni(rng); });

    const sym::NormalModes modes(H);
    const Eigen::MatrixXd Om = sym::symplectic_form(n);
    for (int rep = 0; rep < 5; ++rep) {
        const double t = 10.0 * uni(rng);
        const Eigen::MatrixXd S = sym::symplectic_propagator(modes, t);
        track("propagator symplecticity",
              (S.transpose() * Om * S - Om).cwiseAbs().maxCoeff(), 1e-10);
    }

    const sym::CovarianceMatrix th = sym::thermal_covariance(modes, 0.7);
    track("thermal uncertainty", std::max(0.0, 0.5 - sym::min_symplectic_eigenvalue(th)), 1e-9);

    const sym::CovarianceMatrix evolved = sym::evolve(th, modes, 3.7);
    track("evolved uncertainty",
          std::max(0.0, 0.5 - sym::min_symplectic_eigenvalue(evolved)), 1e-9);

    // dual-route symplectic spectra, physical state and its partial transpose
    for (const auto* g : {&th, &evolved}) {
        const auto a = sym::symplectic_eigenvalues(*g);
        const auto b = sym::symplectic_eigenvalues_symmetric(*g);
        double worst = 0.0;
        for (size_t i = 0; i < a.values.size(); ++i)
            worst = std::max(worst, rel_err(a.values[i], b.values[i]));
        track("dual-route spectrum", worst, 1e-9);
        const auto pt = sym::partial_transpose_system(*g);
        const auto ap = sym::symplectic_eigenvalues(pt);
        const auto bp = sym::symplectic_eigenvalues_symmetric(pt);
        worst = 0.0;
        for (size_t i = 0; i < ap.values.size(); ++i)
            worst = std::max(worst, rel_err(ap.values[i], bp.values[i]));
        track("dual-route spectrum (PT)", worst, 1e-9);
    }

    // composition
    {
        const auto one = sym::evolve(sym::evolve(th, modes, 1.3), modes, 2.1);
        const auto two = sym::evolve(th, modes, 3.4);
        const double scale = two.data.cwiseAbs().maxCoeff();
        track("evolve composition",
              (one.data - two.data).cwiseAbs().maxCoeff() / scale, 1e-10);
    }

    // energy conservation on the full-size chain
    {
        const auto params =
            model::make_params_from_gamma(kFigM, kFigm, kFigOmegaS, kFigOmegaB, 0.6, kFigN);
        const auto full = model::full_hamiltonian(params);
        const sym::NormalModes chain_modes(full);
        const auto bath = sym::thermal_covariance(model::bath_hamiltonian(params), 1.0);
        const auto g0 = sym::direct_sum(
            sym::ground_state_covariance(params.M, params.omega_S), bath);
        const double e0 = sym::mean_energy(g0, full);
        std::uniform_real_distribution<double> tdist(0.0, 40.0);
        for (int rep = 0; rep < 10; ++rep) {
            const double t = tdist(rng);
            const double e = sym::mean_energy(sym::evolve(g0, chain_modes, t), full);
            track("energy conservation", std::abs(e - e0) / std::abs(e0), 1e-8);
        }
    }

    out.detail = detail.str();
    out.pass = out.measured <= out.tolerance;
    return out;
}

CheckResult check_special_function_identities(const ValidateOptions&) {
    CheckResult out{"special-function-identities", false, 0.0, 1.0, ""};
    std::ostringstream detail;
    std::mt19937 rng(7);
    std::uniform_real_distribution<double> re(-5.0, 15.0), im(-20.0, 20.0);

    auto track = [&](const char* name, double violation, double tol) {
        const double ratio = violation / tol;
        if (ratio > out.measured) {
            out.measured = ratio;
            detail.str("");
            detail << "worst: " << name << " (" << violation << " vs " << tol << ")";
        }
    };

    for (int rep = 0; rep < 200; ++rep) {
        std::complex<double> z(re(rng), im(rng));
        if (std::abs(z.imag()) < 1e-3) z += std::complex<double>(0.0, 0.1);
        const auto lhs = special::digamma(z + 1.0);
        const auto rhs = special::digamma(z) + 1.0 / z;
        track("digamma recurrence", std::abs(lhs - rhs) / std::abs(lhs), 1e-12);
        const auto conj_err =
            std::abs(special::digamma(std::conj(z)) - std::conj(special::digamma(z)));
        track("digamma conjugation", conj_err / std::abs(special::digamma(z)), 1e-12);
    }

    std::uniform_real_distribution<double> gdist(0.05, 1.2), wdist(0.5, 8.0), cdist(1.0, 30.0);
    for (int rep = 0; rep < 100; ++rep) {
        const auto p = thermo::make_ohmic_params(1.0, wdist(rng), gdist(rng), cdist(rng), 1.0);
        const auto lam = thermo::characteristic_frequencies(p).lambdas;
        const std::complex<double> e1 = lam[0] + lam[1] + lam[2];
        const std::complex<double> e2 = lam[0] * lam[1] + lam[0] * lam[2] + lam[1] * lam[2];
        const std::complex<double> e3 = lam[0] * lam[1] * lam[2];
        const double w2 = p.omega_S * p.omega_S;
        track("vieta e1", std::abs(e1 - p.Gamma_D) / p.Gamma_D, 1e-10);
        track("vieta e2", std::abs(e2 - (w2 + p.gamma * p.Gamma_D)) / (w2 + p.gamma * p.Gamma_D),
              1e-10);
        track("vieta e3", std::abs(e3 - w2 * p.Gamma_D) / (w2 * p.Gamma_D), 1e-10);
    }

    out.detail = detail.str();
    out.pass = out.measured <= out.tolerance;
    return out;
}

CheckResult check_deterministic_output(const ValidateOptions&) {
    CheckResult out{"deterministic-output", false, 0.0, 0.5, ""};
    sweep::SweepConfig cfg;
    cfg.mode = sweep::Mode::fig1;
    cfg.gammas = {0.6};
    cfg.T_count = 5;

    auto emit = [&](int workers) {
        cfg.workers = workers;
        std::ostringstream csv, js;
        const auto result = sweep::run(cfg);
        sweep::write_csv(result, csv);
        sweep::write_json(result, js);
        return std::pair{csv.str(), js.str()};
    };
    const auto [csv1, json1] = emit(1);
    const auto [csv2, json2] = emit(1);
    const auto [csv4, json4] = emit(4);

    const bool same = csv1 == csv2 && csv1 == csv4 && json1 == json2 && json1 == json4;
    out.measured = same ? 0.0 : 1.0;
    out.pass = same;
    out.detail = same ? "csv and json byte-identical across reruns and worker counts"
                      : "output differs between reruns";
    return out;
}

std::vector<CheckResult> validate_all(const ValidateOptions& opts) {
    std::vector<CheckResult> results;
    results.push_back(check_special_function_identities(opts));
    results.push_back(check_thermo_quadratures(opts));
    results.push_back(check_symplectic_invariants(opts));
    results.push_back(check_deterministic_output(opts));
    results.push_back(check_fock_negativity(opts));
    if (!opts.skip_slow) results.push_back(check_cross_branch(opts));
    return results;
}

bool print_report(const std::vector<CheckResult>& results, std::ostream& os) {
    bool all = true;
    for (const CheckResult& r : results) {
        os << (r.pass ? "[PASS] " : "[FAIL] ") << r.name << ": measured " << r.measured
           << " (tolerance " << r.tolerance << ")";
        if (!r.detail.empty()) os << " -- " << r.detail;
        os << '\n';
        all = all && r.pass;
    }
    return all;
}

}  // namespace rubin::validate
