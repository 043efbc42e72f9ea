#include <doctest.h>

#include <cmath>
#include <complex>
#include <random>

#include "rubin/cubic.hpp"
#include "rubin/digamma.hpp"
#include "rubin/thermo.hpp"

using namespace rubin;
using cplx = std::complex<double>;

namespace {

bool close(const cplx& a, const cplx& b, double tol) {
    return std::abs(a - b) <= tol * std::max(1.0, std::abs(b));
}

}  // namespace

TEST_CASE("cubic solver") {
    // decoupled limit factorizes as (l - Gamma_D)(l^2 + omega_S^2)
    const auto p0 = thermo::make_ohmic_params(10.0, 5.0, 0.0, 12.0, 1.0);
    const auto lam0 = thermo::characteristic_frequencies(p0).lambdas;
    double best_real = 1e300;
    for (const auto& l : lam0) {
        if (l.imag() == 0.0) best_real = l.real();
    }
    CHECK(best_real == doctest::Approx(12.0).epsilon(1e-12));
    bool found_pair = false;
    for (const auto& l : lam0)
        if (l.imag() > 0.0) {
            CHECK(l.real() == doctest::Approx(0.0).epsilon(1e-12));
            CHECK(l.imag() == doctest::Approx(5.0).epsilon(1e-12));
            found_pair = true;
        }
    CHECK(found_pair);

    // conjugate closure is exact, real parts positive at finite friction
    const auto p = thermo::make_ohmic_params(10.0, 5.0, 0.6, 12.0, 1.0);
    const auto lam = thermo::characteristic_frequencies(p).lambdas;
    CHECK(lam[1] == std::conj(lam[2]));
    for (const auto& l : lam) CHECK(l.real() > 0.0);

    // Vieta at randomized parameters
    std::mt19937 rng(3);
    std::uniform_real_distribution<double> g(0.0, 1.5), w(0.3, 9.0), c(0.5, 40.0);
    for (int i = 0; i < 300; ++i) {
        const auto q = thermo::make_ohmic_params(1.0, w(rng), g(rng), c(rng), 1.0);
        const auto l = thermo::characteristic_frequencies(q).lambdas;
        const double w2 = q.omega_S * q.omega_S;
        CHECK(close(l[0] + l[1] + l[2], q.Gamma_D, 1e-10));
        CHECK(close(l[0] * l[1] + l[0] * l[2] + l[1] * l[2], w2 + q.gamma * q.Gamma_D, 1e-10));
        CHECK(close(l[0] * l[1] * l[2], w2 * q.Gamma_D, 1e-10));
    }

    // three-real-root regime: overdamped pair, cutoff far above it
    const auto po = thermo::make_ohmic_params(1.0, 0.2, 3.0, 100.0, 1.0);
    const auto lo = thermo::characteristic_frequencies(po).lambdas;
    for (const auto& l : lo) {
        CHECK(l.imag() == 0.0);
        CHECK(l.real() > 0.0);
    }
}

TEST_CASE("digamma against reference values") {
    // classical identity psi(1) = -euler_gamma
    CHECK(special::digamma(1.0) == doctest::Approx(-0.57721566490153286).epsilon(1e-14));
    CHECK(special::digamma(0.5) == doctest::Approx(-1.9635100260214235).epsilon(1e-14));

    // frozen mpmath (30-digit) references
    struct Ref {
        cplx z, psi;
    };
    const Ref refs[] = {
        {{1.5, 2.5}, {0.98634056629390090765, 1.1861804687361432327}},
        {{10.0, 10.0}, {2.6241584749432888427, 0.81081482956810689799}},
        {{0.25, -7.0}, {1.9456973736998503039, -1.6065564616259578587}},
        {{-2.5, 0.1}, {1.1036973777788084095, 0.92269929145859890393}},
        {{3.0, -4.0}, {1.5503598173334109127, -1.0105022091860444529}},
    };
    for (const auto& r : refs)
        CHECK(std::abs(special::digamma(r.z) - r.psi) <= 1e-12 * std::abs(r.psi));

    CHECK_THROWS_AS(special::digamma(cplx(0.0, 0.0)), std::domain_error);
    CHECK_THROWS_AS(special::digamma(cplx(-3.0, 0.0)), std::domain_error);
}

TEST_CASE("digamma identities at random complex points") {
    std::mt19937 rng(17);
    std::uniform_real_distribution<double> re(-4.0, 12.0), im(0.01, 15.0);
    for (int i = 0; i < 200; ++i) {
        const cplx z(re(rng), im(rng));
        const cplx lhs = special::digamma(z + 1.0);
        const cplx rhs = special::digamma(z) + 1.0 / z;
        CHECK(std::abs(lhs - rhs) <= 1e-12 * std::abs(lhs));
        CHECK(special::digamma(std::conj(z)) == std::conj(special::digamma(z)));
    }
}

TEST_CASE("stationary quadratures reduce to the isolated oscillator") {
    // gamma = 0: the thermal-oscillator coth law, exactly
    for (double T : {0.05, 0.7, 40.0}) {
        const auto p = thermo::make_ohmic_params(10.0, 5.0, 0.0, 12.0, T);
        const double want_q = 0.5 / (10.0 * 5.0) / std::tanh(5.0 / (2.0 * T));
        CHECK(thermo::q_variance(p) == doctest::Approx(want_q).epsilon(1e-10));
        CHECK(thermo::p_variance(p) ==
              doctest::Approx(100.0 * 25.0 * want_q).epsilon(1e-10));
    }

    // high temperature: the classical term dominates
    const auto hot = thermo::make_ohmic_params(10.0, 5.0, 0.6, 12.0, 4000.0);
    CHECK(thermo::q_variance(hot) == doctest::Approx(4000.0 / 250.0).epsilon(2e-3));
}

TEST_CASE("squeezing at low temperature and strong coupling") {
    const auto p = thermo::ohmic_for_gamma(10.0, 1.0, 5.0, 0.9, 0.1);
    const auto st = thermo::stationary_state(p);
    CHECK(st.T_p > st.T_q);
    CHECK(st.v >= 0.5);
}

TEST_CASE("stationary state limits") {
    // gamma -> 0, T -> 0: ground state values
    const auto cold = thermo::make_ohmic_params(10.0, 5.0, 0.0, 12.0, 1e-4);
    const auto st = thermo::stationary_state(cold);
    CHECK(st.U == doctest::Approx(2.5).epsilon(1e-6));
    CHECK(st.S <= 1e-6);
    CHECK(st.v == doctest::Approx(0.5).epsilon(1e-6));

    // high temperature: effective temperatures merge with the bath's
    const auto hot = thermo::ohmic_for_gamma(10.0, 1.0, 5.0, 0.6, 600.0);
    const auto sh = thermo::stationary_state(hot);
    CHECK(std::abs(sh.T_q / 600.0 - 1.0) <= 0.01);
    CHECK(std::abs(sh.T_p / 600.0 - 1.0) <= 0.01);

    // entropy limit at v = 1/2 evaluates without NaN
    CHECK(thermo::entropy_of_uncertainty(0.5) == 0.0);
    CHECK(std::isfinite(thermo::entropy_of_uncertainty(0.5 + 1e-14)));
}

TEST_CASE("Heisenberg bound on a coupling-temperature grid") {
    for (double g : {0.1, 0.3, 0.5, 0.7, 0.9})
        for (double T : {0.05, 0.3, 1.0, 2.5, 5.0}) {
            const auto st = thermo::stationary_state(thermo::ohmic_for_gamma(10.0, 1.0, 5.0, g, T));
            CHECK(st.v >= 0.5 - 1e-12);
        }
}

TEST_CASE("heat flux under mass variation") {
    // decoupled: the two contributions cancel exactly
    const auto solo = thermo::make_ohmic_params(10.0, 5.0, 0.0, 12.0, 0.7);
    CHECK(std::abs(thermo::heat_per_dM(solo)) < 1e-9);

    // step-halving agreement of the finite-difference scheme
    const auto p = thermo::ohmic_for_gamma(10.0, 1.0, 5.0, 0.6, 0.5);
    const double full = thermo::heat_per_dM(p, 1e-5);
    const double half = thermo::heat_per_dM(p, 5e-6);
    CHECK(std::abs(full - half) <= 1e-7 * std::max(std::abs(full), std::abs(half)));
}

TEST_CASE("entropy slope under mass variation") {
    const auto solo = thermo::make_ohmic_params(10.0, 5.0, 0.0, 12.0, 0.7);
    CHECK(std::abs(thermo::entropy_derivative_per_dM(solo).dS_dM) < 1e-9);

    // alternative differentiation path: direct finite difference of S(M)
    const auto p = thermo::ohmic_for_gamma(10.0, 1.0, 5.0, 0.6, 0.5);
    const auto slope = thermo::entropy_derivative_per_dM(p);
    auto S_of = [&](double M) {
        auto q = p;
        q.M = M;
        return thermo::stationary_state(q).S;
    };
    const double h = 1e-5 * p.M;
    const double direct = (S_of(p.M + h) - S_of(p.M - h)) / (2.0 * h);
    CHECK(std::abs(slope.dS_dM - direct) <= 1e-7 + 1e-7 * std::abs(direct));

    // zero-temperature decoupled flag
    const auto frozen = thermo::make_ohmic_params(10.0, 5.0, 0.0, 12.0, 1e-4);
    const auto fs = thermo::entropy_derivative_per_dM(frozen);
    CHECK(fs.v_at_minimum);
    CHECK(fs.dS_dM == 0.0);
}

TEST_CASE("Clausius deviation") {
    // positive violation at low temperature
    CHECK(thermo::clausius_deviation(thermo::ohmic_for_gamma(10.0, 1.0, 5.0, 0.6, 0.1)) > 0.0);

    // stronger coupling, stronger violation (figure convention Gamma_D = 2 gamma M / m)
    const double d3 = thermo::clausius_deviation(thermo::ohmic_for_gamma(10.0, 1.0, 5.0, 0.3, 0.2));
    const double d6 = thermo::clausius_deviation(thermo::ohmic_for_gamma(10.0, 1.0, 5.0, 0.6, 0.2));
    const double d9 = thermo::clausius_deviation(thermo::ohmic_for_gamma(10.0, 1.0, 5.0, 0.9, 0.2));
    CHECK(d9 > d6);
    CHECK(d6 > d3);

    // decoupled: no deviation at any temperature
    for (double T : {0.1, 1.0, 10.0})
        CHECK(std::abs(thermo::clausius_deviation(
                  thermo::make_ohmic_params(10.0, 5.0, 0.0, 1.0, T))) < 1e-9);

    // decays monotonically at high temperature
    double prev = thermo::clausius_deviation(thermo::ohmic_for_gamma(10.0, 1.0, 5.0, 0.6, 5.0));
    for (double T : {8.0, 12.0, 20.0}) {
        const double d = thermo::clausius_deviation(thermo::ohmic_for_gamma(10.0, 1.0, 5.0, 0.6, T));
        CHECK(d < prev);
        CHECK(d > 0.0);
        prev = d;
    }
}

TEST_CASE("degenerate characteristic roots are rejected") {
    // parameters built from the exactly critically damped cubic
    // (l-2)^2 (l-3): Gamma_D = 7, omega_S^2 = 12/7, gamma = (16 - 12/7)/7
    const double GD = 7.0, w2 = 12.0 / 7.0, g = (16.0 - 12.0 / 7.0) / 7.0;
    const auto degen = thermo::make_ohmic_params(1.0, std::sqrt(w2), g, GD, 1.0);
    CHECK_THROWS_AS(thermo::q_variance(degen), std::domain_error);
    CHECK_THROWS_AS(thermo::p_variance(degen), std::domain_error);

    // generic underdamped parameters pass the same guard
    const auto p = thermo::make_ohmic_params(10.0, 5.0, 0.6, 12.0, 1.0);
    CHECK_NOTHROW(thermo::q_variance(p));
}
