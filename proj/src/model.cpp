#include "rubin/model.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace rubin::model {

namespace {

[[noreturn]] void fail(const std::string& what) {
    throw std::domain_error("model: " + what);
}

}  // namespace

ModelParams make_params(double M, double m, double omega_S, double omega_B,
                        double omega_R, int N, double hbar, double k_B) {
    if (!(M > 0.0)) fail("M must be > 0");
    if (!(m > 0.0)) fail("m must be > 0");
    if (!(omega_S > 0.0)) fail("omega_S must be > 0");
    if (!(omega_B >= 0.0)) fail("omega_B must be >= 0");
    if (!(omega_R >= 0.0)) fail("omega_R must be >= 0");
    if (N < 1) fail("N must be >= 1");
    if (!(hbar > 0.0) || !(k_B > 0.0)) fail("hbar and k_B must be > 0");
    if (omega_R > 0.0 && !(omega_B < omega_R)) {
        std::ostringstream os;
        os << "omega_B >= omega_R (" << omega_B << " >= " << omega_R
           << "): spectral density band is empty";
        fail(os.str());
    }
    return ModelParams{M, m, omega_S, omega_B, omega_R, N, hbar, k_B};
}

ModelParams make_params_from_gamma(double M, double m, double omega_S, double omega_B,
                                   double gamma, int N, double hbar, double k_B) {
    if (!(gamma >= 0.0)) fail("gamma must be >= 0");
    return make_params(M, m, omega_S, omega_B, 2.0 * gamma * M / m, N, hbar, k_B);
}

QuadraticHamiltonian bath_hamiltonian(const ModelParams& p) {
    const int N = p.N;
    const double f = p.f();
    const double onsite = p.m * p.omega_B * p.omega_B;

    Eigen::MatrixXd V = Eigen::MatrixXd::Zero(N, N);
    for (int a = 0; a < N; ++a) V(a, a) = onsite;
    for (int a = 0; a + 1 < N; ++a) {
        V(a, a) += f;
        V(a + 1, a + 1) += f;
        V(a, a + 1) -= f;
        V(a + 1, a) -= f;
    }
    return QuadraticHamiltonian{std::move(V), Eigen::VectorXd::Constant(N, p.m)};
}

QuadraticHamiltonian full_hamiltonian(const ModelParams& p) {
    const int N = p.N;
    const double f = p.f();

    QuadraticHamiltonian bath = bath_hamiltonian(p);
    Eigen::MatrixXd V = Eigen::MatrixXd::Zero(N + 1, N + 1);
    V.bottomRightCorner(N, N) = bath.potential;
    V(0, 0) = p.M * p.omega_S * p.omega_S + 2.0 * f;
    if (N == 1) {
        // both interaction terms act on the same site
        V(1, 1) += 2.0 * f;
        V(0, 1) = V(1, 0) = -2.0 * f;
    } else {
        V(1, 1) += f;
        V(N, N) += f;
        V(0, 1) = V(1, 0) = -f;
        V(0, N) = V(N, 0) = -f;
    }

    Eigen::VectorXd masses(N + 1);
    masses(0) = p.M;
    masses.tail(N).setConstant(p.m);
    return QuadraticHamiltonian{std::move(V), std::move(masses)};
}

double spectral_band_edge(const ModelParams& p) {
    const double arg = (p.omega_R - p.omega_B) * p.omega_R;
    return arg > 0.0 ? std::sqrt(arg) : 0.0;
}

double spectral_density(const ModelParams& p, double omega) {
    if (!(omega >= 0.0)) fail("spectral_density: omega must be >= 0");
    const double arg2 = (p.omega_R - p.omega_B) * p.omega_R - omega * omega;
    if (arg2 < 0.0) {
        std::ostringstream os;
        os << "spectral_density: omega = " << omega << " above band edge "
           << spectral_band_edge(p);
        fail(os.str());
    }
    const double arg1 = omega * omega + p.omega_R * p.omega_B;
    return 0.5 * p.m * std::sqrt(arg1) * std::sqrt(arg2);
}

double ohmic_spectral_density(const ModelParams& p, double omega) {
    if (!(omega >= 0.0)) fail("ohmic_spectral_density: omega must be >= 0");
    const double GD = p.Gamma_D();
    if (GD == 0.0) return 0.0;
    return p.gamma() * p.M * omega * GD * GD / (omega * omega + GD * GD);
}

}  // namespace rubin::model
