#include "rubin/thermo.hpp"

#include <cmath>
#include <functional>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include "rubin/cubic.hpp"
#include "rubin/digamma.hpp"

namespace rubin::thermo {

namespace {

using cplx = std::complex<double>;

[[noreturn]] void fail(const std::string& what) {
    throw std::domain_error("thermo: " + what);
}

void check_distinct(const std::array<cplx, 3>& lam) {
    double max_mod = 0.0;
    for (const auto& l : lam) max_mod = std::max(max_mod, std::abs(l));
    const double tol = 1e-8 * max_mod;
    for (int i = 0; i < 3; ++i)
        for (int j = i + 1; j < 3; ++j)
            if (std::abs(lam[i] - lam[j]) < tol) {
                std::ostringstream os;
                os << "degenerate characteristic frequencies (critical damping): |l" << i
                   << " - l" << j << "| < " << tol;
                fail(os.str());
            }
}

// sum_i f(lambda_i) * psi(1 + beta hbar lambda_i / 2 pi) / prod_{j!=i}(lambda_i - lambda_j)
cplx weighted_digamma_sum(const std::array<cplx, 3>& lam, double beta_hbar,
                          const std::function<cplx(const cplx&)>& weight) {
    cplx sum(0.0, 0.0);
    for (int i = 0; i < 3; ++i) {
        const cplx& li = lam[i];
        const cplx den = (lam[(i + 1) % 3] - li) * (lam[(i + 2) % 3] - li);
        const cplx psi = special::digamma(1.0 + beta_hbar * li / (2.0 * std::numbers::pi));
        sum += weight(li) * psi / den;
    }
    return sum;
}

double real_part_checked(const cplx& z, double scale, const char* who) {
    if (std::abs(z.imag()) > 1e-10 * std::max(scale, std::abs(z.real()))) {
        std::ostringstream os;
        os << who << ": non-real result " << z << " (conjugate pairing lost)";
        throw std::runtime_error(os.str());
    }
    return z.real();
}

// Richardson-extrapolated central difference at relative step rel_step.
double ddM(const std::function<double(double)>& f, double M, double rel_step) {
    const double h = rel_step * M;
    auto central = [&](double step) { return (f(M + step) - f(M - step)) / (2.0 * step); };
    return (4.0 * central(0.5 * h) - central(h)) / 3.0;
}

}  // namespace

OhmicParams make_ohmic_params(double M, double omega_S, double gamma, double Gamma_D,
                              double T, double hbar, double k_B) {
    if (!(M > 0.0)) fail("M must be > 0");
    if (!(omega_S > 0.0)) fail("omega_S must be > 0");
    if (!(gamma >= 0.0)) fail("gamma must be >= 0");
    if (!(Gamma_D > 0.0)) fail("Gamma_D must be > 0");
    if (!(T >= 0.0)) fail("T must be >= 0");
    if (!(hbar > 0.0) || !(k_B > 0.0)) fail("hbar and k_B must be > 0");
    return OhmicParams{M, omega_S, gamma, Gamma_D, T, hbar, k_B};
}

OhmicParams ohmic_from_model(const model::ModelParams& p, double T) {
    return make_ohmic_params(p.M, p.omega_S, p.gamma(), p.Gamma_D(), T, p.hbar, p.k_B);
}

OhmicParams ohmic_for_gamma(double M, double m, double omega_S, double gamma, double T,
                            double hbar, double k_B) {
    return make_ohmic_params(M, omega_S, gamma, 2.0 * gamma * M / m, T, hbar, k_B);
}

CharacteristicFrequencies characteristic_frequencies(const OhmicParams& p, double perturb_b) {
    const double w2 = p.omega_S * p.omega_S;
    const double b = (w2 + p.gamma * p.Gamma_D) * (1.0 + perturb_b);
    return CharacteristicFrequencies{special::solve_cubic(-p.Gamma_D, b, -w2 * p.Gamma_D)};
}

double q_variance(const OhmicParams& p, double perturb_b) {
    if (!(p.T > 0.0)) fail("q_variance: T must be > 0");
    const auto lam = characteristic_frequencies(p, perturb_b).lambdas;
    check_distinct(lam);
    const double beta_hbar = p.hbar / (p.k_B * p.T);
    const cplx sum = weighted_digamma_sum(lam, beta_hbar,
                                          [&](const cplx& l) { return l - p.Gamma_D; });
    const double classical = p.k_B * p.T / (p.M * p.omega_S * p.omega_S);
    const double quantum =
        p.hbar / (p.M * std::numbers::pi) * real_part_checked(sum, std::abs(sum), "q_variance");
    const double q2 = classical + quantum;
    if (!(q2 > 0.0)) fail("q_variance: non-positive result");
    return q2;
}

double p_variance(const OhmicParams& p, double perturb_b) {
    if (!(p.T > 0.0)) fail("p_variance: T must be > 0");
    const auto lam = characteristic_frequencies(p, perturb_b).lambdas;
    check_distinct(lam);
    const double beta_hbar = p.hbar / (p.k_B * p.T);
    const cplx sum = weighted_digamma_sum(lam, beta_hbar, [](const cplx& l) { return l; });
    const double base = p.M * p.M * p.omega_S * p.omega_S * q_variance(p, perturb_b);
    const double drag = p.M * p.hbar * p.gamma * p.Gamma_D / std::numbers::pi *
                        real_part_checked(sum, std::abs(sum), "p_variance");
    const double p2 = base + drag;
    if (!(p2 > 0.0)) fail("p_variance: non-positive result");
    return p2;
}

double entropy_of_uncertainty(double v) {
    if (v < 0.5 - 1e-9) fail("entropy_of_uncertainty: v below 1/2");
    const double w = v - 0.5;
    const double up = (v + 0.5) * std::log(v + 0.5);
    return (w > 0.0) ? up - w * std::log(w) : up;
}

OhmicStationaryState stationary_state(const OhmicParams& p) {
    const double q2 = q_variance(p);
    const double p2 = p_variance(p);
    const double v = std::sqrt(q2 * p2) / p.hbar;
    return OhmicStationaryState{
        q2,
        p2,
        p.M * p.omega_S * p.omega_S * q2 / p.k_B,
        p2 / (p.M * p.k_B),
        v,
        entropy_of_uncertainty(v),
        p2 / (2.0 * p.M) + 0.5 * p.M * p.omega_S * p.omega_S * q2,
    };
}

double heat_per_dM(const OhmicParams& p, double rel_step) {
    auto at_mass = [&](double M) {
        OhmicParams q = p;
        q.M = M;
        return q;
    };
    const double dq2 = ddM([&](double M) { return q_variance(at_mass(M)); }, p.M, rel_step);
    const double dp2 = ddM([&](double M) { return p_variance(at_mass(M)); }, p.M, rel_step);
    return 0.5 * p.M * p.omega_S * p.omega_S * dq2 + dp2 / (2.0 * p.M);
}

EntropySlope entropy_derivative_per_dM(const OhmicParams& p, double rel_step) {
    const OhmicStationaryState st = stationary_state(p);
    if (st.v - 0.5 < 1e-9) return EntropySlope{0.0, true};

    auto v_of = [&](double M) {
        OhmicParams q = p;
        q.M = M;
        const OhmicStationaryState s = stationary_state(q);
        return s.v;
    };
    const double dv = ddM(v_of, p.M, rel_step);
    const double dS_dv = std::log((st.v + 0.5) / (st.v - 0.5));
    return EntropySlope{dS_dv * dv, false};
}

double clausius_deviation(const OhmicParams& p) {
    return heat_per_dM(p) - p.T * entropy_derivative_per_dM(p).dS_dM;
}

}  // namespace rubin::thermo
