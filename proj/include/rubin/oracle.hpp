// oracle.hpp: independent verification routes.
//
// Neither path reuses the code it checks: the quadrature route integrates the
// fluctuation-dissipation spectrum directly (no cubic roots, no digamma), and
// the Fock route diagonalizes a truncated density matrix (no symplectic
// spectra). Shared pieces are limited to scalar arithmetic and the
// Hamiltonian builders.

#pragma once

#include <utility>

#include "rubin/model.hpp"
#include "rubin/thermo.hpp"

namespace rubin::oracle {

struct QuadratureIntegralSpec {
    thermo::OhmicParams params;
    double omega_max{0.0};  // 0 = auto: 50 * max(omega_S, Gamma_D)
    double rel_tol{1e-10};
};

struct QuadratureResult {
    double q2;
    double p2;
};

// <q^2> = (hbar/pi) Int_0^inf coth(hbar w / 2 kT) Im chi(w) dw and
// <p^2> = (hbar M^2/pi) Int_0^inf w^2 coth(hbar w / 2 kT) Im chi(w) dw with
// the Drude susceptibility chi. The tail beyond omega_max is mapped to a
// finite interval by u = 1/w, so the result is cutoff-independent.
QuadratureResult quadrature_integrals(const QuadratureIntegralSpec& spec);

struct FockOracleSpec {
    model::ModelParams params;  // N must be 1
    int cutoff{40};             // max Fock occupation per mode, >= 20
    int quad_nodes{350};
};

// Negativity of the exact two-mode ground state of full_hamiltonian(params):
// expand the ground-state Gaussian in a product Fock basis, partially
// transpose the system index, and sum the moduli of the negative eigenvalues.
// Fails if the occupation weight beyond the cutoff exceeds 1e-8.
double fock_negativity(const FockOracleSpec& spec);

}  // namespace rubin::oracle
