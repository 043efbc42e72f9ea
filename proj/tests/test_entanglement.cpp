#include <doctest.h>

#include <cmath>

#include "rubin/entanglement.hpp"
#include "rubin/model.hpp"
#include "rubin/symplectic.hpp"

using namespace rubin;
namespace ent = rubin::entanglement;
namespace sym = rubin::symplectic;

namespace {

const model::ModelParams fig_params(double gamma, int N = 200) {
    return model::make_params_from_gamma(10.0, 1.0, 5.0, 0.01, gamma, N);
}

}  // namespace

TEST_CASE("negativity map from the smallest symplectic eigenvalue") {
    CHECK(ent::negativity_from_nu_min(0.25) == doctest::Approx(0.5));
    CHECK(ent::negativity_from_nu_min(0.5) == 0.0);
    CHECK(ent::negativity_from_nu_min(0.7) == 0.0);
    CHECK_THROWS_AS(ent::negativity_from_nu_min(0.0), std::domain_error);
}

TEST_CASE("trace norm product") {
    CHECK(ent::trace_norm_product({{0.5, 0.8, 1.2}}) == doctest::Approx(1.0));
    CHECK(ent::trace_norm_product({{0.25, 0.7, 0.9}}) == doctest::Approx(2.0));
    CHECK_THROWS_AS(ent::trace_norm_product({{-0.1, 0.7}}), std::domain_error);

    // single dip: the product and nu_min forms coincide
    const sym::SymplecticSpectrum spec{{0.4, 0.6, 1.0}};
    CHECK(0.5 * (ent::trace_norm_product(spec) - 1.0) ==
          doctest::Approx(ent::negativity_from_nu_min(0.4)).epsilon(1e-12));
}

TEST_CASE("product states carry no negativity") {
    const auto p = fig_params(0.9, 8);
    const auto g = sym::direct_sum(
        sym::ground_state_covariance(p.M, p.omega_S),
        sym::thermal_covariance(model::bath_hamiltonian(p), 1.3));
    CHECK(ent::negativity_from_covariance(g) == 0.0);
}

TEST_CASE("equations 16 and 17 agree on evolved chain states") {
    const auto p = fig_params(0.9, 24);
    const auto full = model::full_hamiltonian(p);
    const sym::NormalModes modes(full);
    auto g = sym::direct_sum(sym::ground_state_covariance(p.M, p.omega_S),
                             sym::thermal_covariance(model::bath_hamiltonian(p), 0.1));
    g = sym::evolve(g, modes, 2.0);

    const auto spec = sym::symplectic_eigenvalues(sym::partial_transpose_system(g));
    const int below = static_cast<int>(std::count_if(
        spec.values.begin(), spec.values.end(),
        [](double nu) { return nu < 0.5 * (1.0 - 1e-9); }));
    CHECK(below <= 1);
    const double via_product = 0.5 * (ent::trace_norm_product(spec) - 1.0);
    const double via_numin = ent::negativity_from_nu_min(spec.min());
    CHECK(std::abs(via_product - via_numin) <= 1e-10);
    CHECK(ent::negativity_from_covariance(g) == doctest::Approx(via_numin).epsilon(1e-12));
}

TEST_CASE("stationary protocol defaults and validation") {
    const auto p = fig_params(0.6);
    const auto proto = ent::StationaryProtocol::defaults_for(p);
    CHECK(proto.t_min == doctest::Approx(10.0 / 0.6));
    CHECK(proto.t_max == doctest::Approx(std::min(2.0 * 10.0 / 0.6, 0.8 * 400.0 / 12.0)));
    CHECK(proto.n_samples == 8);

    // short chains have no stationary window at strong coupling
    CHECK_THROWS_AS(ent::StationaryProtocol::defaults_for(fig_params(0.6, 40)),
                    std::invalid_argument);

    ent::StationaryProtocol bad;
    bad.t_min = 2.0;
    bad.t_max = 1.0;
    CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
    bad.t_max = 4.0;
    bad.n_samples = 2;
    CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
}

TEST_CASE("decoupled chain stays separable") {
    const auto p = fig_params(0.0, 30);
    const auto res = ent::stationary_negativity(p, 1.0, ent::StationaryProtocol::defaults_for(p));
    CHECK(res.negativity == 0.0);
    CHECK(res.spread <= 1e-12);
    CHECK(res.nu_min >= 0.5 - 1e-9);
}

TEST_CASE("stationary negativity at figure parameters" * doctest::timeout(600)) {
    const auto p9 = fig_params(0.9);
    const auto proto9 = ent::StationaryProtocol::defaults_for(p9);
    const auto strong = ent::stationary_negativity(p9, 0.1, proto9, 2);
    CHECK(strong.negativity > 0.0);
    CHECK(strong.nu_min < 0.5);
    CHECK(strong.spread <= proto9.stability_tol);

    const auto p3 = fig_params(0.3);
    const auto weak = ent::stationary_negativity(p3, 2.0, ent::StationaryProtocol::defaults_for(p3), 2);
    CHECK(weak.negativity == 0.0);

    // doubling the sample count within the window shifts the mean by less
    // than the stability tolerance
    auto dense = proto9;
    dense.n_samples = 16;
    const auto strong2 = ent::stationary_negativity(p9, 0.1, dense, 2);
    CHECK(std::abs(strong2.negativity - strong.negativity) <=
          proto9.stability_tol * strong.negativity);
}

TEST_CASE("anders estimate") {
    CHECK(ent::anders_estimate(fig_params(0.6)) == doctest::Approx(3.0));
    CHECK(ent::anders_estimate(fig_params(0.3)) == doctest::Approx(1.5));
    const auto equal_masses = model::make_params_from_gamma(1.0, 1.0, 1.0, 0.01, 0.4, 10);
    CHECK(ent::anders_estimate(equal_masses) == doctest::Approx(0.2));
}

TEST_CASE("critical temperature bracket validation" * doctest::timeout(600)) {
    const auto p = fig_params(0.3);
    const auto proto = ent::StationaryProtocol::defaults_for(p);
    CHECK_THROWS_AS(ent::critical_temperature(p, proto, 6.0, 10.0, 2), std::invalid_argument);
    CHECK_THROWS_AS(ent::critical_temperature(p, proto, -1.0, 2.0, 2), std::invalid_argument);
}
