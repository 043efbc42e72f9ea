#include "rubin/sweep.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <functional>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "rubin/entanglement.hpp"
#include "rubin/matrix_io.hpp"
#include "rubin/model.hpp"
#include "rubin/parallel.hpp"
#include "rubin/thermo.hpp"

namespace rubin::sweep {

namespace ent = rubin::entanglement;
using json = nlohmann::ordered_json;

Mode mode_from_string(const std::string& name) {
    if (name == "fig1") return Mode::fig1;
    if (name == "fig2") return Mode::fig2;
    if (name == "fig3") return Mode::fig3;
    if (name == "fig4") return Mode::fig4;
    if (name == "thermo-sweep" || name == "thermo") return Mode::thermo_sweep;
    if (name == "negativity-sweep" || name == "negativity") return Mode::negativity_sweep;
    throw std::invalid_argument("unknown sweep mode: " + name);
}

std::string to_string(Mode mode) {
    switch (mode) {
        case Mode::fig1: return "fig1";
        case Mode::fig2: return "fig2";
        case Mode::fig3: return "fig3";
        case Mode::fig4: return "fig4";
        case Mode::thermo_sweep: return "thermo-sweep";
        case Mode::negativity_sweep: return "negativity-sweep";
    }
    return "?";
}

namespace {

struct Field {
    bool numeric;
    double SweepRecord::* num;
    std::string SweepRecord::* str;
};

const std::map<std::string, Field>& field_table() {
    static const std::map<std::string, Field> table = {
        {"gamma", {true, &SweepRecord::gamma, nullptr}},
        {"T", {true, &SweepRecord::T, nullptr}},
        {"negativity", {true, &SweepRecord::negativity, nullptr}},
        {"nu_min", {true, &SweepRecord::nu_min, nullptr}},
        {"spread", {true, &SweepRecord::spread, nullptr}},
        {"delta", {true, &SweepRecord::delta, nullptr}},
        {"heat_per_dM", {true, &SweepRecord::heat_per_dM, nullptr}},
        {"TdS_per_dM", {true, &SweepRecord::TdS_per_dM, nullptr}},
        {"T_q", {true, &SweepRecord::T_q, nullptr}},
        {"T_p", {true, &SweepRecord::T_p, nullptr}},
        {"S", {true, &SweepRecord::S, nullptr}},
        {"U", {true, &SweepRecord::U, nullptr}},
        {"v", {true, &SweepRecord::v, nullptr}},
        {"q2", {true, &SweepRecord::q2, nullptr}},
        {"p2", {true, &SweepRecord::p2, nullptr}},
        {"t_c", {true, &SweepRecord::t_c, nullptr}},
        {"t_c_anders", {true, &SweepRecord::t_c_anders, nullptr}},
        {"t_c_marker", {true, &SweepRecord::t_c_marker, nullptr}},
        {"Gamma_D", {true, &SweepRecord::Gamma_D, nullptr}},
        {"t_samples", {false, nullptr, &SweepRecord::t_samples}},
        {"protocol", {false, nullptr, &SweepRecord::protocol}},
        {"version", {false, nullptr, &SweepRecord::version}},
        {"flags", {false, nullptr, &SweepRecord::flags}},
        {"error", {false, nullptr, &SweepRecord::error}},
    };
    return table;
}

const Field& field(const std::string& column) {
    auto it = field_table().find(column);
    if (it == field_table().end())
        throw std::invalid_argument("unknown sweep column: " + column);
    return it->second;
}

std::vector<std::string> columns_for(Mode mode) {
    switch (mode) {
        case Mode::fig1:
            return {"gamma", "T", "delta", "heat_per_dM", "TdS_per_dM",
                    "T_q",   "T_p", "Gamma_D", "version", "flags", "error"};
        case Mode::fig2:
            return {"T", "gamma", "negativity", "nu_min", "spread", "t_samples",
                    "Gamma_D", "protocol", "version", "flags", "error"};
        case Mode::fig3:
            return {"gamma", "T", "negativity", "nu_min", "spread", "t_samples", "t_c",
                    "t_c_anders", "Gamma_D", "protocol", "version", "flags", "error"};
        case Mode::fig4:
            return {"T", "delta", "negativity", "t_c_marker",
                    "Gamma_D", "protocol", "version", "flags", "error"};
        case Mode::thermo_sweep:
            return {"gamma", "T", "q2", "p2", "T_q", "T_p", "v", "S", "U",
                    "heat_per_dM", "TdS_per_dM", "delta", "Gamma_D", "version",
                    "flags", "error"};
        case Mode::negativity_sweep:
            return {"gamma", "T", "negativity", "nu_min", "spread", "t_samples",
                    "Gamma_D", "protocol", "version", "flags", "error"};
    }
    throw std::logic_error("columns_for: bad mode");
}

std::vector<double> log_grid(double lo, double hi, int count) {
    if (!(lo > 0.0) || !(hi > lo)) throw std::invalid_argument("temperature range must be 0 < lo < hi");
    if (count < 2) throw std::invalid_argument("temperature grid needs at least 2 points");
    std::vector<double> out(count);
    const double llo = std::log(lo), lhi = std::log(hi);
    for (int i = 0; i < count; ++i)
        out[i] = std::exp(llo + (lhi - llo) * i / (count - 1));
    return out;
}

std::string sanitize(std::string s) {
    for (char& c : s)
        if (c == ',' || c == '\n' || c == '\r') c = ';';
    return s;
}

std::string join_times(const std::vector<double>& ts) {
    std::string out;
    for (size_t i = 0; i < ts.size(); ++i) {
        if (i) out += ';';
        out += io::format_double(ts[i]);
    }
    return out;
}

std::string protocol_string(const ent::StationaryProtocol& p) {
    std::ostringstream os;
    os << "t_min=" << io::format_double(p.t_min) << ";t_max=" << io::format_double(p.t_max)
       << ";n=" << p.n_samples << ";tol=" << io::format_double(p.stability_tol);
    return os.str();
}

struct GridDefaults {
    std::vector<double> gammas;
    int T_count;
};

GridDefaults grid_defaults(Mode mode) {
    switch (mode) {
        case Mode::fig1: return {{0.3, 0.6, 0.9}, 200};
        case Mode::fig2: {
            // default couplings start at the phonon band edge omega_R =
            // omega_S (gamma = 0.25 at the figure masses): below it the
            // sudden-coupling protocol leaves an undamped localized mode and
            // the threshold structure of the figure does not apply
            std::vector<double> g(14);
            for (int i = 0; i < 14; ++i) g[i] = 0.30 + 0.05 * i;
            return {g, 0};
        }
        case Mode::fig3: return {{0.3, 0.6, 0.9}, 48};
        case Mode::fig4: return {{0.6}, 200};
        case Mode::thermo_sweep: return {{0.3, 0.6, 0.9}, 200};
        case Mode::negativity_sweep: return {{0.3, 0.6, 0.9}, 48};
    }
    throw std::logic_error("grid_defaults: bad mode");
}

struct PointContext {
    const SweepConfig& cfg;
    double gamma;
    double T_requested;

    double T() const { return std::max(T_requested, thermo::kTemperatureFloor); }
    bool floored() const { return T_requested < thermo::kTemperatureFloor; }

    model::ModelParams chain_params() const {
        return model::make_params_from_gamma(cfg.M, cfg.m, cfg.omega_S, cfg.omega_B, gamma, cfg.N);
    }

    thermo::OhmicParams ohmic_params() const {
        return thermo::ohmic_for_gamma(cfg.M, cfg.m, cfg.omega_S, gamma, T());
    }

    ent::StationaryProtocol protocol() const {
        ent::StationaryProtocol proto = ent::StationaryProtocol::defaults_for(chain_params());
        if (cfg.proto.t_min > 0.0) proto.t_min = cfg.proto.t_min;
        if (cfg.proto.t_max > 0.0) proto.t_max = cfg.proto.t_max;
        proto.n_samples = cfg.proto.n_samples;
        proto.stability_tol = cfg.proto.stability_tol;
        proto.validate();
        return proto;
    }
};

void append_flag(SweepRecord& r, const std::string& flag) {
    if (!r.flags.empty()) r.flags += ';';
    r.flags += flag;
}

void fill_thermo_outputs(SweepRecord& r, const PointContext& pt) {
    const thermo::OhmicParams op = pt.ohmic_params();
    const thermo::OhmicStationaryState st = thermo::stationary_state(op);
    const double heat = thermo::heat_per_dM(op);
    const thermo::EntropySlope slope = thermo::entropy_derivative_per_dM(op);
    if (slope.v_at_minimum) append_flag(r, "v_at_minimum");
    r.q2 = st.q2;
    r.p2 = st.p2;
    r.T_q = st.T_q;
    r.T_p = st.T_p;
    r.v = st.v;
    r.S = st.S;
    r.U = st.U;
    r.heat_per_dM = heat;
    r.TdS_per_dM = op.T * slope.dS_dM;
    r.delta = heat - op.T * slope.dS_dM;
    r.Gamma_D = op.Gamma_D;
}

void fill_negativity_outputs(SweepRecord& r, const PointContext& pt) {
    const model::ModelParams params = pt.chain_params();
    const ent::StationaryProtocol proto = pt.protocol();
    const ent::NegativityResult res = ent::stationary_negativity(params, pt.T(), proto);
    r.negativity = res.negativity;
    r.nu_min = res.nu_min;
    r.spread = res.spread;
    r.t_samples = join_times(res.sample_times);
    r.protocol = protocol_string(proto);
    r.Gamma_D = params.Gamma_D();
    // the system mode sits above the phonon band: an undamped localized mode
    // keeps quench correlations alive for all times
    if (params.omega_R > 0.0 && params.omega_R < params.omega_S) append_flag(r, "bound_mode");
}

}  // namespace

SweepResult run(const SweepConfig& cfg) {
    const GridDefaults defaults = grid_defaults(cfg.mode);
    const std::vector<double> gammas = cfg.gammas.empty() ? defaults.gammas : cfg.gammas;
    std::vector<double> temps = cfg.temps;
    if (temps.empty()) {
        if (cfg.mode == Mode::fig2 && cfg.T_count == 0) {
            temps = {0.1, 1.0, 2.0};
        } else {
            const int count = cfg.T_count > 0 ? cfg.T_count : defaults.T_count;
            temps = log_grid(cfg.T_lo, cfg.T_hi, count);
        }
    }
    if (gammas.empty()) throw std::invalid_argument("sweep: gamma grid is empty");

    // pre-run per-gamma critical temperatures where the mode reports them
    std::map<double, std::pair<double, std::string>> tc_by_gamma;
    if (cfg.mode == Mode::fig3 || cfg.mode == Mode::fig4) {
        for (double g : gammas) {
            PointContext pt{cfg, g, 1.0};
            try {
                const double tc = ent::critical_temperature(
                    pt.chain_params(), pt.protocol(), 0.01, 10.0, cfg.workers);
                tc_by_gamma[g] = {tc, ""};
            } catch (const std::exception& e) {
                tc_by_gamma[g] = {kNaN, e.what()};
            }
        }
    }

    // grid order: temps outer for fig2 (per-temperature curves), gammas outer otherwise
    struct Point {
        double gamma;
        double T;
    };
    std::vector<Point> grid;
    if (cfg.mode == Mode::fig2) {
        for (double T : temps)
            for (double g : gammas) grid.push_back({g, T});
    } else {
        for (double g : gammas)
            for (double T : temps) grid.push_back({g, T});
    }

    SweepResult result;
    result.mode = cfg.mode;
    result.columns = columns_for(cfg.mode);
    result.records.resize(grid.size());

    par::for_index(static_cast<int>(grid.size()), cfg.workers, [&](int i) {
        SweepRecord& r = result.records[i];
        const PointContext pt{cfg, grid[i].gamma, grid[i].T};
        r.gamma = pt.gamma;
        r.T = pt.T();
        r.version = kCodeVersion;
        if (pt.floored()) append_flag(r, "T_floor");
        try {
            switch (cfg.mode) {
                case Mode::fig1:
                case Mode::thermo_sweep:
                    fill_thermo_outputs(r, pt);
                    break;
                case Mode::fig2:
                case Mode::negativity_sweep:
                    fill_negativity_outputs(r, pt);
                    break;
                case Mode::fig3: {
                    fill_negativity_outputs(r, pt);
                    const auto& [tc, err] = tc_by_gamma.at(pt.gamma);
                    r.t_c = tc;
                    r.t_c_anders = ent::anders_estimate(pt.chain_params());
                    if (!err.empty()) append_flag(r, "t_c_error:" + sanitize(err));
                    break;
                }
                case Mode::fig4: {
                    fill_thermo_outputs(r, pt);
                    fill_negativity_outputs(r, pt);
                    r.t_c_marker = tc_by_gamma.at(pt.gamma).first;
                    break;
                }
            }
        } catch (const std::exception& e) {
            r.error = sanitize(e.what());
        }
    });

    for (const SweepRecord& r : result.records)
        if (!r.error.empty()) ++result.n_failed;
    return result;
}

void write_csv(const SweepResult& result, std::ostream& os) {
    for (size_t c = 0; c < result.columns.size(); ++c) {
        if (c) os << ',';
        os << result.columns[c];
    }
    os << '\n';
    for (const SweepRecord& r : result.records) {
        for (size_t c = 0; c < result.columns.size(); ++c) {
            if (c) os << ',';
            const Field& f = field(result.columns[c]);
            if (f.numeric)
                os << io::format_double(r.*(f.num));
            else
                os << sanitize(r.*(f.str));
        }
        os << '\n';
    }
}

void write_json(const SweepResult& result, std::ostream& os) {
    json arr = json::array();
    for (const SweepRecord& r : result.records) {
        json obj;
        for (const std::string& c : result.columns) {
            const Field& f = field(c);
            if (f.numeric)
                obj[c] = r.*(f.num);
            else
                obj[c] = r.*(f.str);
        }
        arr.push_back(std::move(obj));
    }
    os << arr.dump(2) << '\n';
}

void write(const SweepResult& result, Format format, std::ostream& os) {
    format == Format::csv ? write_csv(result, os) : write_json(result, os);
}

SweepResult read_csv(std::istream& is) {
    SweepResult result;
    std::string line;
    if (!std::getline(is, line)) throw std::runtime_error("read_csv: empty input");
    std::stringstream header(line);
    std::string tok;
    while (std::getline(header, tok, ',')) result.columns.push_back(tok);

    while (std::getline(is, line)) {
        if (line.empty()) continue;
        SweepRecord r;
        std::stringstream row(line);
        for (size_t c = 0; c < result.columns.size(); ++c) {
            if (!std::getline(row, tok, ',') && c + 1 < result.columns.size())
                throw std::runtime_error("read_csv: truncated row");
            const Field& f = field(result.columns[c]);
            if (f.numeric)
                r.*(f.num) = std::strtod(tok.c_str(), nullptr);
            else
                r.*(f.str) = tok;
        }
        if (!r.error.empty()) ++result.n_failed;
        result.records.push_back(std::move(r));
    }
    return result;
}

SweepResult read_json(std::istream& is) {
    const json arr = json::parse(is);
    if (!arr.is_array()) throw std::runtime_error("read_json: expected an array of records");
    SweepResult result;
    for (const auto& obj : arr) {
        if (result.columns.empty())
            for (auto it = obj.begin(); it != obj.end(); ++it) result.columns.push_back(it.key());
        SweepRecord r;
        for (const std::string& c : result.columns) {
            const Field& f = field(c);
            const auto& val = obj.at(c);
            if (f.numeric)
                r.*(f.num) = val.is_null() ? kNaN : val.get<double>();
            else
                r.*(f.str) = val.get<std::string>();
        }
        if (!r.error.empty()) ++result.n_failed;
        result.records.push_back(std::move(r));
    }
    return result;
}

bool record_field_is_numeric(const std::string& column) {
    return field(column).numeric;
}

double record_get_numeric(const SweepRecord& r, const std::string& column) {
    const Field& f = field(column);
    if (!f.numeric) throw std::invalid_argument("column is not numeric: " + column);
    return r.*(f.num);
}

std::string record_get_string(const SweepRecord& r, const std::string& column) {
    const Field& f = field(column);
    if (f.numeric) throw std::invalid_argument("column is numeric: " + column);
    return r.*(f.str);
}

void record_set_numeric(SweepRecord& r, const std::string& column, double value) {
    const Field& f = field(column);
    if (!f.numeric) throw std::invalid_argument("column is not numeric: " + column);
    r.*(f.num) = value;
}

void record_set_string(SweepRecord& r, const std::string& column, const std::string& value) {
    const Field& f = field(column);
    if (f.numeric) throw std::invalid_argument("column is numeric: " + column);
    r.*(f.str) = value;
}

}  // namespace rubin::sweep
