// sweep.hpp: figure-reproduction and parameter-sweep drivers with
// deterministic CSV/JSON emission.

#pragma once

#include <iosfwd>
#include <limits>
#include <string>
#include <vector>

namespace rubin::sweep {

inline constexpr const char* kCodeVersion = "rubin-1.0.0";

enum class Mode { fig1, fig2, fig3, fig4, thermo_sweep, negativity_sweep };
enum class Format { csv, json };

Mode mode_from_string(const std::string& name);
std::string to_string(Mode mode);

// Zero/negative values mean "use the per-point default" (t_min = 10/gamma,
// t_max capped by the recurrence estimate).
struct ProtocolOverrides {
    double t_min{0.0};
    double t_max{0.0};
    int n_samples{8};
    double stability_tol{0.02};
};

struct SweepConfig {
    Mode mode{Mode::fig1};
    std::vector<double> gammas;  // empty = per-mode default
    std::vector<double> temps;   // explicit list; empty = log grid below
    double T_lo{0.02};
    double T_hi{10.0};
    int T_count{0};              // 0 = per-mode default
    double M{10.0};
    double m{1.0};
    double omega_S{5.0};
    double omega_B{0.01};
    int N{200};
    ProtocolOverrides proto;
    Format format{Format::csv};
    int workers{0};  // 0 = hardware concurrency
};

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

// One grid point. Numeric fields not produced by the mode stay NaN; a failed
// point carries the message in `error` and NaN outputs.
struct SweepRecord {
    double gamma{kNaN};
    double T{kNaN};
    double negativity{kNaN};
    double nu_min{kNaN};
    double spread{kNaN};
    double delta{kNaN};
    double heat_per_dM{kNaN};
    double TdS_per_dM{kNaN};
    double T_q{kNaN};
    double T_p{kNaN};
    double S{kNaN};
    double U{kNaN};
    double v{kNaN};
    double q2{kNaN};
    double p2{kNaN};
    double t_c{kNaN};
    double t_c_anders{kNaN};
    double t_c_marker{kNaN};
    double Gamma_D{kNaN};
    std::string t_samples;  // ';'-joined sample times
    std::string protocol;   // window actually used
    std::string version;
    std::string flags;      // ';'-joined floor/limit substitutions
    std::string error;      // empty on success
};

struct SweepResult {
    Mode mode{Mode::fig1};
    std::vector<std::string> columns;
    std::vector<SweepRecord> records;
    int n_failed{0};
};

// Evaluates the grid (points in fixed order, computed concurrently) and
// returns all records; per-point failures never abort the run.
SweepResult run(const SweepConfig& config);

void write_csv(const SweepResult& result, std::ostream& os);
void write_json(const SweepResult& result, std::ostream& os);
void write(const SweepResult& result, Format format, std::ostream& os);

// Round-trip readers (column set taken from the header / field names).
SweepResult read_csv(std::istream& is);
SweepResult read_json(std::istream& is);

// Column-name based field access, shared by the serializers and tests.
bool record_field_is_numeric(const std::string& column);
double record_get_numeric(const SweepRecord& r, const std::string& column);
std::string record_get_string(const SweepRecord& r, const std::string& column);
void record_set_numeric(SweepRecord& r, const std::string& column, double value);
void record_set_string(SweepRecord& r, const std::string& column, const std::string& value);

}  // namespace rubin::sweep
