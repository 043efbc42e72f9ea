#include "rubin/entanglement.hpp"

#include <algorithm>
#include <cmath>
#include <iostream>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include "rubin/parallel.hpp"

namespace rubin::entanglement {

namespace sym = rubin::symplectic;

StationaryProtocol StationaryProtocol::defaults_for(const model::ModelParams& p) {
    StationaryProtocol proto;
    const double gamma = p.gamma();
    if (gamma == 0.0) {
        proto.t_min = 1.0;
        proto.t_max = 2.0;
        return proto;
    }
    proto.t_min = 10.0 / gamma;
    const double t_recurrence = 2.0 * p.N / p.omega_R;
    proto.t_max = std::min(2.0 * proto.t_min, 0.8 * t_recurrence);
    proto.validate();
    return proto;
}

void StationaryProtocol::validate() const {
    if (!(t_min > 0.0) || !(t_max > t_min)) {
        std::ostringstream os;
        os << "StationaryProtocol: need 0 < t_min < t_max, got [" << t_min << ", " << t_max
           << "] (chain too short for a stationary window?)";
        throw std::invalid_argument(os.str());
    }
    if (n_samples < 3) throw std::invalid_argument("StationaryProtocol: n_samples must be >= 3");
    if (!(stability_tol > 0.0))
        throw std::invalid_argument("StationaryProtocol: stability_tol must be > 0");
}

double negativity_from_nu_min(double nu_min, double hbar) {
    if (!(nu_min > 0.0)) throw std::domain_error("negativity_from_nu_min: nu_min must be > 0");
    return std::max(0.0, hbar / (4.0 * nu_min) - 0.5);
}

double trace_norm_product(const sym::SymplecticSpectrum& spectrum, double hbar) {
    double prod = 1.0;
    for (double nu : spectrum.values) {
        if (!(nu > 0.0)) throw std::domain_error("trace_norm_product: non-positive eigenvalue");
        if (nu < 0.5 * hbar) prod *= 0.5 * hbar / nu;
    }
    return prod;
}

double negativity_from_covariance(const sym::CovarianceMatrix& gamma, double hbar) {
    const sym::SymplecticSpectrum spec =
        sym::symplectic_eigenvalues(sym::partial_transpose_system(gamma));
    // eigenvalues of uncoupled pure modes sit numerically on the hbar/2
    // boundary; only meaningful dips count towards the 1 x N uniqueness
    const int below = static_cast<int>(
        std::count_if(spec.values.begin(), spec.values.end(),
                      [&](double nu) { return nu < 0.5 * hbar * (1.0 - 1e-9); }));
    if (below <= 1) return negativity_from_nu_min(spec.min(), hbar);
    std::cerr << "negativity_from_covariance: " << below
              << " symplectic eigenvalues below hbar/2; falling back to the trace-norm product\n";
    return 0.5 * (trace_norm_product(spec, hbar) - 1.0);
}

namespace {

struct WindowSamples {
    std::vector<double> times;
    std::vector<sym::CovarianceMatrix> states;
};

WindowSamples evolve_window(const model::ModelParams& params, double T,
                            const StationaryProtocol& proto, int workers) {
    proto.validate();
    if (!(T >= 0.0)) throw std::domain_error("stationary protocol: T must be >= 0");

    const sym::CovarianceMatrix bath =
        sym::thermal_covariance(model::bath_hamiltonian(params), T, params.hbar, params.k_B);
    const sym::CovarianceMatrix gamma0 = sym::direct_sum(
        sym::ground_state_covariance(params.M, params.omega_S, params.hbar), bath);
    const sym::NormalModes modes(model::full_hamiltonian(params));

    WindowSamples out;
    out.times.resize(proto.n_samples);
    out.states.resize(proto.n_samples);
    const double dt = (proto.t_max - proto.t_min) / (proto.n_samples - 1);
    for (int i = 0; i < proto.n_samples; ++i) out.times[i] = proto.t_min + i * dt;

    par::for_index(proto.n_samples, workers, [&](int i) {
        out.states[i] = sym::evolve(gamma0, modes, out.times[i]);
    });
    return out;
}

double relative_spread(const std::vector<double>& xs) {
    const auto [lo, hi] = std::minmax_element(xs.begin(), xs.end());
    const double mean = std::accumulate(xs.begin(), xs.end(), 0.0) / xs.size();
    return (mean != 0.0) ? (*hi - *lo) / std::abs(mean) : 0.0;
}

void check_stability(double spread, const StationaryProtocol& proto, const char* what) {
    if (spread > proto.stability_tol) {
        std::ostringstream os;
        os << what << " spread " << spread << " exceeds stability tolerance "
           << proto.stability_tol << " over window [" << proto.t_min << ", " << proto.t_max
           << "]: window overlaps the transient or a recurrence";
        throw std::runtime_error(os.str());
    }
}

}  // namespace

NegativityResult stationary_negativity(const model::ModelParams& params, double T,
                                       const StationaryProtocol& proto, int workers) {
    WindowSamples samples = evolve_window(params, T, proto, workers);
    const int n = proto.n_samples;

    std::vector<double> nu_mins(n), negs(n);
    par::for_index(n, workers, [&](int i) {
        const auto spec =
            sym::symplectic_eigenvalues(sym::partial_transpose_system(samples.states[i]));
        nu_mins[i] = spec.min();
        negs[i] = negativity_from_nu_min(nu_mins[i], params.hbar);
    });

    NegativityResult result;
    result.sample_times = std::move(samples.times);
    result.nu_min = std::accumulate(nu_mins.begin(), nu_mins.end(), 0.0) / n;
    result.spread = relative_spread(nu_mins);
    check_stability(result.spread, proto, "nu_min");

    double mean_neg = std::accumulate(negs.begin(), negs.end(), 0.0) / n;
    result.negativity = (mean_neg < kZeroNegativityFloor) ? 0.0 : mean_neg;
    return result;
}

StationaryQuadratures stationary_quadratures(const model::ModelParams& params, double T,
                                             const StationaryProtocol& proto, int workers) {
    WindowSamples samples = evolve_window(params, T, proto, workers);
    const int n = proto.n_samples;

    std::vector<double> q2(n), p2(n);
    for (int i = 0; i < n; ++i) {
        q2[i] = samples.states[i].data(0, 0);
        p2[i] = samples.states[i].data(1, 1);
    }
    StationaryQuadratures out;
    out.q2 = std::accumulate(q2.begin(), q2.end(), 0.0) / n;
    out.p2 = std::accumulate(p2.begin(), p2.end(), 0.0) / n;
    out.q2_spread = relative_spread(q2);
    out.p2_spread = relative_spread(p2);
    check_stability(out.q2_spread, proto, "q2");
    check_stability(out.p2_spread, proto, "p2");
    return out;
}

double critical_temperature(const model::ModelParams& params, const StationaryProtocol& proto,
                            double T_low, double T_high, int workers) {
    if (!(0.0 < T_low && T_low < T_high))
        throw std::invalid_argument("critical_temperature: need 0 < T_low < T_high");

    auto entangled = [&](double T) {
        return stationary_negativity(params, T, proto, workers).negativity > 0.0;
    };
    if (!entangled(T_low) || entangled(T_high)) {
        std::ostringstream os;
        os << "critical_temperature: bracket [" << T_low << ", " << T_high
           << "] does not straddle the threshold";
        throw std::invalid_argument(os.str());
    }

    double lo = T_low, hi = T_high;
    while (hi - lo > 1e-3 * 0.5 * (hi + lo)) {
        const double mid = 0.5 * (lo + hi);
        (entangled(mid) ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
}

double anders_estimate(const model::ModelParams& params) {
    return params.hbar * params.gamma() * params.M / (2.0 * params.m * params.k_B);
}

}  // namespace rubin::entanglement
