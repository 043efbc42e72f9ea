// thermo.hpp: stationary thermodynamics of the Drude-damped oscillator.
//
// The stationary quadratures are evaluated from the characteristic
// frequencies lambda_i of the damped oscillator (roots of the cubic
// l^3 - Gamma_D l^2 + (omega_S^2 + gamma Gamma_D) l - omega_S^2 Gamma_D)
// and the digamma function; heat and entropy changes refer to a quasistatic
// variation of the system mass M at fixed (gamma, Gamma_D, omega_S, T).

#pragma once

#include <array>
#include <complex>

#include "rubin/model.hpp"

namespace rubin::thermo {

struct OhmicParams {
    double M{10.0};
    double omega_S{5.0};
    double gamma{0.6};
    double Gamma_D{12.0};
    double T{1.0};
    double hbar{1.0};
    double k_B{1.0};
};

// Validates ranges (gamma >= 0 is allowed: the decoupled limit is well defined).
OhmicParams make_ohmic_params(double M, double omega_S, double gamma, double Gamma_D,
                              double T, double hbar = 1.0, double k_B = 1.0);

// Ohmic-limit view of chain parameters at bath temperature T.
OhmicParams ohmic_from_model(const model::ModelParams& p, double T);

// Figure-axis convention at M=10-style parameters: Gamma_D = 2*gamma*M/m.
OhmicParams ohmic_for_gamma(double M, double m, double omega_S, double gamma, double T,
                            double hbar = 1.0, double k_B = 1.0);

struct CharacteristicFrequencies {
    std::array<std::complex<double>, 3> lambdas;  // closed under conjugation
};

struct OhmicStationaryState {
    double q2;   // <q^2>
    double p2;   // <p^2>
    double T_q;  // M omega_S^2 <q^2> / k_B
    double T_p;  // <p^2> / (M k_B)
    double v;    // sqrt(<q^2><p^2>) / hbar
    double S;    // von Neumann entropy
    double U;    // internal energy
};

struct EntropySlope {
    double dS_dM{0.0};
    bool v_at_minimum{false};  // v -> 1/2 limit, slope reported as 0
};

// Roots of the characteristic cubic; perturb_b is a validation hook that
// scales the linear coefficient (omega_S^2 + gamma Gamma_D) by (1 + perturb_b).
CharacteristicFrequencies characteristic_frequencies(const OhmicParams& p,
                                                     double perturb_b = 0.0);

// T > 0 required; near-degenerate roots are rejected.
double q_variance(const OhmicParams& p, double perturb_b = 0.0);
double p_variance(const OhmicParams& p, double perturb_b = 0.0);

OhmicStationaryState stationary_state(const OhmicParams& p);

// S(v) = (v+1/2)ln(v+1/2) - (v-1/2)ln(v-1/2), continuous at v = 1/2.
double entropy_of_uncertainty(double v);

// dQ/dM and dS/dM by Richardson-extrapolated central differences of the
// stationary quadratures with respect to M (relative step rel_step).
double heat_per_dM(const OhmicParams& p, double rel_step = 1e-5);
EntropySlope entropy_derivative_per_dM(const OhmicParams& p, double rel_step = 1e-5);

// Delta = dQ/dM - T dS/dM.
double clausius_deviation(const OhmicParams& p);

// Temperatures below this are floored by the sweep drivers (the T = 0
// stationary formulas need the separate zero-temperature series, which is
// out of scope; the floor keeps the T -> 0 plateau of every Fig-1 quantity).
inline constexpr double kTemperatureFloor = 1e-4;

}  // namespace rubin::thermo
