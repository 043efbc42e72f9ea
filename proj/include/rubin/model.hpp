// model.hpp: Rubin-chain Hamiltonians, parameter validation, spectral densities.

#pragma once

#include <Eigen/Dense>

#include <cstddef>

namespace rubin::model {

// Physical parameters of a heavy oscillator coupled at both ends to a chain
// of N identical oscillators. Coupling spring constant f = m*omega_R^2/4;
// the Ohmic-limit constants are gamma = m*omega_R/(2M) and Gamma_D = omega_R.
struct ModelParams {
    double M{10.0};        // system mass
    double m{1.0};         // bath oscillator mass
    double omega_S{5.0};   // system frequency
    double omega_B{0.01};  // bath on-site frequency
    double omega_R{12.0};  // coupling frequency scale
    int N{200};            // chain length
    double hbar{1.0};
    double k_B{1.0};

    double f() const noexcept { return m * omega_R * omega_R / 4.0; }
    double gamma() const noexcept { return m * omega_R / (2.0 * M); }
    double Gamma_D() const noexcept { return omega_R; }
};

// n coupled oscillators: H = sum_i p_i^2/(2 masses_i) + (1/2) x^T potential x
struct QuadraticHamiltonian {
    Eigen::MatrixXd potential;
    Eigen::VectorXd masses;

    int n_modes() const noexcept { return static_cast<int>(masses.size()); }
};

// Validates and returns the parameter set. omega_R = 0 is accepted as the
// decoupled limit (f = gamma = 0); the omega_B < omega_R band condition is
// only meaningful for omega_R > 0.
ModelParams make_params(double M, double m, double omega_S, double omega_B,
                        double omega_R, int N, double hbar = 1.0, double k_B = 1.0);

// Figure-axis convention: gamma is the knob, omega_R = 2*gamma*M/m.
ModelParams make_params_from_gamma(double M, double m, double omega_S, double omega_B,
                                   double gamma, int N, double hbar = 1.0, double k_B = 1.0);

// Open chain with on-site pinning; ends are free (they couple to the system
// only through the interaction term, which lives in full_hamiltonian).
QuadraticHamiltonian bath_hamiltonian(const ModelParams& p);

// (N+1)-mode form over (q, x_1 .. x_N); the system couples to both chain ends.
QuadraticHamiltonian full_hamiltonian(const ModelParams& p);

// Exact chain spectral density, defined for 0 <= omega < sqrt((omega_R-omega_B)*omega_R).
double spectral_density(const ModelParams& p, double omega);

// Drude-regularized Ohmic form gamma*M*omega*Gamma_D^2/(omega^2+Gamma_D^2).
double ohmic_spectral_density(const ModelParams& p, double omega);

// Upper band edge of spectral_density.
double spectral_band_edge(const ModelParams& p);

}  // namespace rubin::model
