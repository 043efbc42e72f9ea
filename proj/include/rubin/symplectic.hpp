// symplectic.hpp: Gaussian covariance engine for coupled oscillator networks.
//
// Phase-space ordering is xi = (q, p, x_1, p_1, ..., x_N, p_N) with per-mode
// symplectic blocks [[0,1],[-1,0]]. Vacuum normalization: a pure mode has
// symplectic eigenvalue hbar/2.

#pragma once

#include <Eigen/Dense>

#include <vector>

#include "rubin/model.hpp"

namespace rubin::symplectic {

using model::QuadraticHamiltonian;

// Symmetric 2n x 2n matrix of symmetrized second moments (first moments are
// identically zero for every state handled here and are not represented).
struct CovarianceMatrix {
    Eigen::MatrixXd data;

    int n_modes() const noexcept { return static_cast<int>(data.rows()) / 2; }
};

struct SymplecticSpectrum {
    std::vector<double> values;  // sorted ascending, one per mode

    double min() const { return values.front(); }
};

// Normal-mode decomposition of a positive-definite quadratic Hamiltonian:
// mass-weighted potential K = D^{-1/2} V D^{-1/2} = U diag(omega^2) U^T.
// Computed once per Hamiltonian and reused across times/temperatures; safe
// for concurrent readers after construction.
struct NormalModes {
    Eigen::VectorXd omega;      // normal-mode frequencies, ascending, all > 0
    Eigen::MatrixXd U;          // orthogonal mode matrix (columns)
    Eigen::VectorXd sqrt_mass;
    Eigen::VectorXd inv_sqrt_mass;

    explicit NormalModes(const QuadraticHamiltonian& H);

    int n_modes() const noexcept { return static_cast<int>(omega.size()); }
};

Eigen::MatrixXd symplectic_form(int n_modes);

// Gibbs-state covariance of H at temperature T (T = 0 gives the ground state).
CovarianceMatrix thermal_covariance(const QuadraticHamiltonian& H, double T,
                                    double hbar = 1.0, double k_B = 1.0);
CovarianceMatrix thermal_covariance(const NormalModes& modes, double T,
                                    double hbar = 1.0, double k_B = 1.0);

// Single-mode oscillator ground state: diag(hbar/(2 M omega), M hbar omega / 2).
CovarianceMatrix ground_state_covariance(double M, double omega_S, double hbar = 1.0);

// Block-diagonal concatenation, system modes first.
CovarianceMatrix direct_sum(const CovarianceMatrix& a, const CovarianceMatrix& b);

// Phase-space flow map S(t) of the linear Hamiltonian dynamics; exact
// (normal-mode rotations), no time-stepping error.
Eigen::MatrixXd symplectic_propagator(const NormalModes& modes, double t);

// Gamma(t) = S(t) Gamma(0) S(t)^T.
CovarianceMatrix evolve(const CovarianceMatrix& gamma0, const QuadraticHamiltonian& H, double t);
CovarianceMatrix evolve(const CovarianceMatrix& gamma0, const NormalModes& modes, double t);

// Moduli of the eigenvalue pairs +-i nu of Omega*Gamma, ascending. Works for
// partially transposed covariances; positive definiteness is not assumed.
SymplecticSpectrum symplectic_eigenvalues(const CovarianceMatrix& gamma);

// Independent route for positive-definite Gamma: spectrum of the Hermitian
// matrix i Gamma^{1/2} Omega Gamma^{1/2} (the spectral square root of
// -Omega Gamma Omega Gamma). Used to cross-check symplectic_eigenvalues.
SymplecticSpectrum symplectic_eigenvalues_symmetric(const CovarianceMatrix& gamma);

double min_symplectic_eigenvalue(const CovarianceMatrix& gamma);

// Momentum sign flip on the system mode (index 0): P Gamma P with
// P = diag(1, -1, 1, 1, ...).
CovarianceMatrix partial_transpose_system(const CovarianceMatrix& gamma);

// All symplectic eigenvalues >= hbar/2 - tol.
bool is_physical(const CovarianceMatrix& gamma, double hbar = 1.0, double tol = 1e-9);

// Mean energy <H> = tr(E Gamma)/2 with E the phase-space energy form of H.
double mean_energy(const CovarianceMatrix& gamma, const QuadraticHamiltonian& H);

}  // namespace rubin::symplectic
