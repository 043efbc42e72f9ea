// validate.hpp: cross-route verification suite.

#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace rubin::validate {

struct CheckResult {
    std::string name;
    bool pass{false};
    double measured{0.0};   // worst observed error / deviation
    double tolerance{0.0};
    std::string detail;
};

struct ValidateOptions {
    double cubic_perturbation{0.0};  // fault-injection hook for the lambda cubic
    int workers{0};                  // 0 = hardware concurrency
    bool skip_slow{false};           // skip the N=200 chain checks
};

// Stationary quadratures: digamma formulas vs fluctuation-dissipation
// integrals on a 5x5 (gamma, T) grid.
CheckResult check_thermo_quadratures(const ValidateOptions& opts);

// Ground-state negativity: covariance route vs truncated-Fock oracle at three
// couplings with nu_min near 0.48, 0.40, 0.30.
CheckResult check_fock_negativity(const ValidateOptions& opts);

// N=200 chain stationary <q^2>, <p^2> vs the Ohmic analytic values.
CheckResult check_cross_branch(const ValidateOptions& opts);

// Propagator symplecticity, uncertainty bound, dual-route symplectic spectra,
// evolution composition, energy conservation.
CheckResult check_symplectic_invariants(const ValidateOptions& opts);

// Digamma recurrence/conjugation and Vieta identities for the lambda roots.
CheckResult check_special_function_identities(const ValidateOptions& opts);

// Byte-identical re-serialization of a small sweep, including workers > 1.
CheckResult check_deterministic_output(const ValidateOptions& opts);

std::vector<CheckResult> validate_all(const ValidateOptions& opts);

// Prints one line per check; returns true when everything passed.
bool print_report(const std::vector<CheckResult>& results, std::ostream& os);

}  // namespace rubin::validate
