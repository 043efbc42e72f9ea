#include <doctest.h>

#include <cmath>
#include <sstream>

#include "rubin/sweep.hpp"
#include "rubin/validate.hpp"

using namespace rubin;

namespace {

sweep::SweepConfig tiny_fig1() {
    sweep::SweepConfig cfg;
    cfg.mode = sweep::Mode::fig1;
    cfg.gammas = {0.3, 0.6};
    cfg.T_lo = 0.05;
    cfg.T_hi = 5.0;
    cfg.T_count = 4;
    return cfg;
}

std::string csv_of(const sweep::SweepResult& r) {
    std::ostringstream os;
    sweep::write_csv(r, os);
    return os.str();
}

}  // namespace

TEST_CASE("fig1 sweep produces finite thermodynamic columns") {
    const auto result = sweep::run(tiny_fig1());
    REQUIRE(result.records.size() == 8);
    CHECK(result.n_failed == 0);
    for (const auto& r : result.records) {
        CHECK(std::isfinite(r.delta));
        CHECK(std::isfinite(r.heat_per_dM));
        CHECK(std::isfinite(r.T_q));
        CHECK(std::isfinite(r.T_p));
        CHECK(r.error.empty());
        CHECK(r.Gamma_D == doctest::Approx(20.0 * r.gamma));
    }
    // grid order: gamma-major, temperature-minor, log spaced
    CHECK(result.records[0].gamma == 0.3);
    CHECK(result.records[4].gamma == 0.6);
    CHECK(result.records[0].T == doctest::Approx(0.05));
    CHECK(result.records[3].T == doctest::Approx(5.0));
}

TEST_CASE("temperature floor is applied and flagged") {
    auto cfg = tiny_fig1();
    cfg.gammas = {0.6};
    cfg.T_lo = 1e-6;
    cfg.T_hi = 1.0;
    cfg.T_count = 3;
    const auto result = sweep::run(cfg);
    REQUIRE(result.records.size() == 3);
    CHECK(result.records[0].T == doctest::Approx(1e-4));
    CHECK(result.records[0].flags.find("T_floor") != std::string::npos);
    CHECK(result.records[2].flags.find("T_floor") == std::string::npos);
    CHECK(result.n_failed == 0);
}

TEST_CASE("per-point failures are reported without aborting the run") {
    sweep::SweepConfig cfg;
    cfg.mode = sweep::Mode::negativity_sweep;
    cfg.gammas = {0.6};
    cfg.T_count = 2;
    cfg.T_lo = 0.5;
    cfg.T_hi = 1.0;
    cfg.N = 200;
    cfg.proto.t_min = 5.0;
    cfg.proto.t_max = 2.0;  // invalid window: every point fails
    const auto result = sweep::run(cfg);
    REQUIRE(result.records.size() == 2);
    CHECK(result.n_failed == 2);
    for (const auto& r : result.records) {
        CHECK(!r.error.empty());
        CHECK(std::isnan(r.negativity));
    }
    // serialization still works and round-trips
    std::istringstream is(csv_of(result));
    const auto back = sweep::read_csv(is);
    CHECK(back.n_failed == 2);
}

TEST_CASE("csv output is deterministic and round-trips at 17 digits") {
    const auto cfg = tiny_fig1();
    const auto r1 = sweep::run(cfg);
    const auto r2 = sweep::run(cfg);
    const std::string a = csv_of(r1);
    CHECK(a == csv_of(r2));

    auto cfg4 = cfg;
    cfg4.workers = 4;
    CHECK(a == csv_of(sweep::run(cfg4)));

    std::istringstream is(a);
    const auto back = sweep::read_csv(is);
    REQUIRE(back.records.size() == r1.records.size());
    REQUIRE(back.columns == r1.columns);
    for (size_t i = 0; i < back.records.size(); ++i)
        for (const auto& col : back.columns) {
            if (sweep::record_field_is_numeric(col)) {
                const double x = sweep::record_get_numeric(r1.records[i], col);
                const double y = sweep::record_get_numeric(back.records[i], col);
                CHECK(((std::isnan(x) && std::isnan(y)) || x == y));
            } else {
                CHECK(sweep::record_get_string(r1.records[i], col) ==
                      sweep::record_get_string(back.records[i], col));
            }
        }
}

TEST_CASE("json output mirrors the csv schema and round-trips") {
    const auto result = sweep::run(tiny_fig1());
    std::ostringstream os;
    sweep::write_json(result, os);
    std::istringstream is(os.str());
    const auto back = sweep::read_json(is);
    REQUIRE(back.columns == result.columns);
    REQUIRE(back.records.size() == result.records.size());
    for (size_t i = 0; i < back.records.size(); ++i) {
        CHECK(back.records[i].delta == result.records[i].delta);
        CHECK(back.records[i].T == result.records[i].T);
        CHECK(back.records[i].version == result.records[i].version);
    }
}

TEST_CASE("mode names round-trip") {
    for (auto mode : {sweep::Mode::fig1, sweep::Mode::fig2, sweep::Mode::fig3, sweep::Mode::fig4,
                      sweep::Mode::thermo_sweep, sweep::Mode::negativity_sweep})
        CHECK(sweep::mode_from_string(sweep::to_string(mode)) == mode);
    CHECK_THROWS_AS(sweep::mode_from_string("fig9"), std::invalid_argument);
}

TEST_CASE("fault injection breaks the quadrature cross-check") {
    validate::ValidateOptions opts;
    opts.cubic_perturbation = 0.01;
    const auto broken = validate::check_thermo_quadratures(opts);
    CHECK(!broken.pass);

    opts.cubic_perturbation = 0.0;
    const auto clean = validate::check_thermo_quadratures(opts);
    CHECK(clean.pass);
    CHECK(clean.measured <= 1e-6);
}
