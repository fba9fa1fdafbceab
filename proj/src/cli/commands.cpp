#include "qkd/cli/commands.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <initializer_list>
#include <iostream>
#include <random>
#include <stdexcept>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"

#include "qkd/bounds.hpp"
#include "qkd/cloners.hpp"
#include "qkd/distances.hpp"
#include "qkd/protocol.hpp"
#include "qkd/version.hpp"

namespace qkd::cli {

namespace {

using ordered_json = nlohmann::ordered_json;

// Half-up rounding to 4 decimal places, done in integer space so the printed
// cell is exactly the rounded value (no second rounding by the formatter).
std::string round4(double v) {
    const bool neg = v < 0.0;
    const auto scaled = static_cast<long long>(std::floor(std::abs(v) * 10000.0 + 0.5));
    char buf[40];
    std::snprintf(buf, sizeof buf, "%s%lld.%04lld", neg && scaled != 0 ? "-" : "",
                  scaled / 10000, scaled % 10000);
    return buf;
}

std::string full(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

void write_text(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open output path: " + path);
    out << text;
    if (!out) throw std::runtime_error("failed writing output path: " + path);
}

void write_manifest(const std::string& out_path, const std::string& command,
                    const ordered_json& parameters, std::optional<std::uint64_t> seed) {
    ordered_json m;
    m["command"] = command;
    m["parameters"] = parameters;
    m["artifacts"] = ordered_json::array({out_path});
    m["tool_version"] = kToolVersion;
    if (seed)
        m["seed"] = *seed;
    else
        m["seed"] = nullptr;
    write_text(out_path + ".manifest.json", m.dump(2) + "\n");
}

std::string efficiency_csv(const std::vector<EfficiencyRow>& rows, bool with_xi) {
    std::string text;
    if (with_xi) text += "xi,";
    text +=
        "alpha_sq,fidelity,";
    if (with_xi) text += "delta_z_upper,";
    text +=
        "trace_dist_sq_upper,hs_upper,measured_trace_dist_sq,measured_hs_e_eprime,"
        "measured_hs_e_id,condition_holds,in_window\n";
    for (const EfficiencyRow& r : rows) {
        std::string line;
        if (with_xi) line += round4(r.xi.value_or(0.0)) + ",";
        line += round4(r.alpha_sq) + "," + round4(r.fidelity) + ",";
        if (with_xi) line += (r.delta_z_upper ? round4(*r.delta_z_upper) : std::string()) + ",";
        line += round4(r.trace_dist_sq_bound) + "," + round4(r.hs_bound) + "," +
                round4(r.measured_trace_dist_sq) + "," + round4(r.measured_hs_e_eprime) + "," +
                round4(r.measured_hs_e_id) + "," + (r.condition_holds ? "true" : "false") + "," +
                (r.in_window ? "true" : "false") + "\n";
        text += line;
    }
    return text;
}

ordered_json number_array(const std::vector<double>& v) {
    ordered_json a = ordered_json::array();
    for (double x : v) a.push_back(x);
    return a;
}

int flagged_exit(const std::vector<EfficiencyRow>& rows) {
    for (const EfficiencyRow& r : rows)
        if (!r.in_window) {
            std::cerr << "note: at least one row lies outside the usable window "
                         "(see the in_window column)\n";
            return kExitFlagged;
        }
    return kExitSuccess;
}

// --- simulate config parsing -------------------------------------------------

[[noreturn]] void fail_field(const std::string& field, const std::string& why) {
    throw std::invalid_argument("config field '" + field + "': " + why);
}

void check_known_keys(const ordered_json& obj, std::initializer_list<const char*> known,
                      const std::string& scope) {
    for (const auto& item : obj.items()) {
        bool ok = false;
        for (const char* k : known) ok = ok || item.key() == k;
        if (!ok) throw std::invalid_argument("unknown config field '" + scope + item.key() + "'");
    }
}

double require_number(const ordered_json& obj, const std::string& field, const std::string& scope) {
    if (!obj.contains(field)) fail_field(scope + field, "missing");
    if (!obj.at(field).is_number()) fail_field(scope + field, "must be a number");
    return obj.at(field).get<double>();
}

double optional_number(const ordered_json& obj, const std::string& field, const std::string& scope,
                       double fallback) {
    if (!obj.contains(field)) return fallback;
    if (!obj.at(field).is_number()) fail_field(scope + field, "must be a number");
    return obj.at(field).get<double>();
}

std::uint64_t require_uint(const ordered_json& obj, const std::string& field,
                           const std::string& scope) {
    if (!obj.contains(field)) fail_field(scope + field, "missing");
    if (!obj.at(field).is_number_unsigned()) fail_field(scope + field, "must be a non-negative integer");
    return obj.at(field).get<std::uint64_t>();
}

ProtocolConfig parse_protocol_config(const ordered_json& j) {
    if (!j.is_object()) throw std::invalid_argument("config root must be a JSON object");
    check_known_keys(
        j, {"n_pulses", "theta1", "sample_fraction", "depolarizing_noise", "seed", "eve"}, "");

    ProtocolConfig cfg;
    cfg.n_pulses = require_uint(j, "n_pulses", "");
    cfg.theta1 = require_number(j, "theta1", "");
    cfg.sample_fraction = optional_number(j, "sample_fraction", "", 0.5);
    cfg.depolarizing_noise = optional_number(j, "depolarizing_noise", "", 0.0);
    if (j.contains("seed")) cfg.seed = require_uint(j, "seed", "");

    if (j.contains("eve") && !j.at("eve").is_null()) {
        const ordered_json& e = j.at("eve");
        if (!e.is_object()) fail_field("eve", "must be an object or null");
        check_known_keys(e, {"machine", "xi", "interception_probability"}, "eve.");
        if (!e.contains("machine")) fail_field("eve.machine", "missing");
        if (!e.at("machine").is_string()) fail_field("eve.machine", "must be \"wz\" or \"bh\"");
        const std::string kind = e.at("machine").get<std::string>();

        EveConfig eve;
        if (kind == "wz") {
            if (e.contains("xi")) fail_field("eve.xi", "only meaningful for the bh machine");
            eve.machine = CloningMachine::wootters_zurek();
        } else if (kind == "bh") {
            eve.machine = CloningMachine::modified_buzek_hillery(require_number(e, "xi", "eve."));
        } else {
            fail_field("eve.machine", "must be \"wz\" or \"bh\"");
        }
        eve.interception_probability = optional_number(e, "interception_probability", "eve.", 1.0);
        cfg.eve = eve;
    }
    return cfg;
}

ordered_json echo_config(const ProtocolConfig& cfg) {
    ordered_json e;
    e["n_pulses"] = cfg.n_pulses;
    e["theta1"] = cfg.theta1;
    e["sample_fraction"] = cfg.sample_fraction;
    e["depolarizing_noise"] = cfg.depolarizing_noise;
    e["seed"] = cfg.seed;
    if (cfg.eve) {
        ordered_json ev;
        ev["machine"] =
            cfg.eve->machine.kind == CloningMachine::Kind::WoottersZurek ? "wz" : "bh";
        if (cfg.eve->machine.kind == CloningMachine::Kind::ModifiedBuzekHillery)
            ev["xi"] = cfg.eve->machine.xi;
        ev["interception_probability"] = cfg.eve->interception_probability;
        e["eve"] = ev;
    } else {
        e["eve"] = nullptr;
    }
    return e;
}

ordered_json report_json(const KeyRateReport& rep) {
    ordered_json r;
    r["fidelity"] = rep.fidelity;
    r["delta_z"] = rep.delta_z;
    r["R"] = rep.R;
    r["r_lb"] = rep.r_lb;
    r["r_lb_quadratic"] = rep.r_lb_quadratic;
    if (rep.delta_z_threshold)
        r["delta_z_threshold"] = *rep.delta_z_threshold;
    else
        r["delta_z_threshold"] = nullptr;
    r["positive"] = rep.positive;
    r["quadratic_valid"] = rep.quadratic_valid;
    return r;
}

}  // namespace

int cmd_table_wz(const TableWzOptions& opt) {
    const std::vector<double> alpha = opt.alpha.empty() ? default_wz_alpha() : opt.alpha;
    const std::vector<EfficiencyRow> rows = wz_efficiency_table(alpha);
    write_text(opt.out, efficiency_csv(rows, /*with_xi=*/false));

    ordered_json params;
    params["alpha"] = number_array(alpha);
    write_manifest(opt.out, "table-wz", params, std::nullopt);
    return flagged_exit(rows);
}

int cmd_table_bh(const TableBhOptions& opt) {
    std::vector<double> xi = opt.xi;
    std::vector<std::vector<double>> grid;
    if (xi.empty() && opt.alpha.empty()) {
        xi = default_bh_xi();
        grid = default_bh_alpha();
    } else {
        if (xi.empty()) xi = default_bh_xi();
        if (opt.alpha.empty())
            throw std::invalid_argument("--alpha is required when --xi overrides the default grid");
        grid.assign(xi.size(), opt.alpha);
    }

    const std::vector<EfficiencyRow> rows = bh_efficiency_table(xi, grid);
    write_text(opt.out, efficiency_csv(rows, /*with_xi=*/true));

    ordered_json params;
    params["xi"] = number_array(xi);
    ordered_json alpha = ordered_json::array();
    for (const auto& g : grid) alpha.push_back(number_array(g));
    params["alpha"] = alpha;
    write_manifest(opt.out, "table-bh", params, std::nullopt);
    return flagged_exit(rows);
}

int cmd_figure_rlb(const FigureOptions& opt) {
    if (opt.grid < 2) throw std::invalid_argument("--grid must be at least 2");

    CloningMachine machine = CloningMachine::wootters_zurek();
    std::optional<Window> window;
    if (opt.machine == "wz") {
        if (opt.xi) throw std::invalid_argument("--xi is only meaningful for the bh machine");
        window = alpha_window_wz();
    } else if (opt.machine == "bh") {
        if (!opt.xi) throw std::invalid_argument("--xi is required for the bh machine");
        machine = CloningMachine::modified_buzek_hillery(*opt.xi);
        window = alpha_window_bh(*opt.xi);
        if (!window) {
            std::cerr << "error: no usable alpha^2 window at xi = " << full(*opt.xi) << "\n";
            return kExitFlagged;
        }
    } else {
        throw std::invalid_argument("--machine must be wz or bh");
    }

    std::vector<double> alpha = opt.alpha;
    if (alpha.empty())
        for (int k = 1; k <= 4; ++k)
            alpha.push_back(window->lower + k * (window->upper - window->lower) / 5.0);
    for (double a : alpha) {
        if (!(a > window->lower && a < window->upper)) {
            std::cerr << "error: alpha_sq " << full(a) << " outside the usable window ("
                      << full(window->lower) << ", " << full(window->upper) << ")\n";
            return kExitFlagged;
        }
    }

    // delta_z grid: interior points j/grid of the threshold, then a final
    // point just below the threshold itself, where the bound is still
    // positive but within 1e-6 of zero.
    std::string text = "alpha_sq,fidelity,delta_z,r_lb\n";
    for (double a : alpha) {
        const double f = fidelity_closed(machine, a);
        const double dz1 = delta_z_threshold(f).value();  // inside-window alpha guarantees it
        for (int j = 1; j <= opt.grid; ++j) {
            const double dz = j < opt.grid ? dz1 * j / opt.grid : dz1 * (1.0 - 1e-9);
            text += full(a);
            text += ",";
            text += full(f);
            text += ",";
            text += full(dz);
            text += ",";
            text += full(r_lb_quadratic(f, dz));
            text += "\n";
        }
    }
    write_text(opt.out, text);

    ordered_json params;
    params["machine"] = opt.machine;
    if (opt.xi)
        params["xi"] = *opt.xi;
    else
        params["xi"] = nullptr;
    params["alpha"] = number_array(alpha);
    params["grid"] = opt.grid;
    write_manifest(opt.out, "figure-rlb", params, std::nullopt);
    return kExitSuccess;
}

int cmd_simulate(const SimulateOptions& opt) {
    std::ifstream in(opt.config_path, std::ios::binary);
    if (!in) throw std::invalid_argument("cannot read config file: " + opt.config_path);
    ordered_json j;
    try {
        in >> j;
    } catch (const nlohmann::json::parse_error& e) {
        throw std::invalid_argument(std::string("config is not valid JSON: ") + e.what());
    }

    ProtocolConfig cfg = parse_protocol_config(j);
    if (opt.seed) {
        cfg.seed = *opt.seed;
    } else if (!j.contains("seed")) {
        std::random_device rd;
        cfg.seed = (static_cast<std::uint64_t>(rd()) << 32) ^ rd();
    }

    const ProtocolOutcome outcome = run_protocol(cfg);

    ordered_json doc;
    doc["config"] = echo_config(cfg);
    doc["expected_delta_z"] = expected_delta_z(cfg);
    ordered_json o;
    o["sifted_length"] = outcome.sifted_length;
    o["sample_size"] = outcome.sample_size;
    o["delta_z_hat"] = outcome.delta_z_hat;
    o["key_rate_report"] = report_json(outcome.key_rate_report);
    o["decision"] = outcome.decision == Decision::Continue ? "continue" : "abort";
    o["final_key_bits_alice"] = outcome.final_key_bits_alice;
    o["final_key_bits_bob"] = outcome.final_key_bits_bob;
    doc["outcome"] = o;
    write_text(opt.out, doc.dump(2) + "\n");

    ordered_json params;
    params["config_path"] = opt.config_path;
    params["config"] = echo_config(cfg);
    write_manifest(opt.out, "simulate", params, cfg.seed);

    std::cout << "decision: " << (outcome.decision == Decision::Continue ? "continue" : "abort")
              << "  delta_z_hat=" << full(outcome.delta_z_hat) << "  threshold="
              << (outcome.key_rate_report.delta_z_threshold
                      ? full(*outcome.key_rate_report.delta_z_threshold)
                      : std::string("none"))
              << "\n";
    return kExitSuccess;
}

int cmd_windows(const WindowsOptions& opt) {
    const std::vector<double> xi = opt.xi.empty() ? default_bh_xi() : opt.xi;
    const Window fw = fidelity_window();
    const Window ww = alpha_window_wz();

    ordered_json doc;
    {
        ordered_json w;
        w["lower"] = fw.lower;
        w["upper"] = fw.upper;
        ordered_json res;
        res["a_at_lower_minus_target"] = a_coefficient(fw.lower) - 0.4;
        res["threshold_at_upper_minus_limit"] =
            delta_z_threshold(fw.upper).value() - kQuadraticValidityLimit;
        w["residuals"] = res;
        doc["fidelity_window"] = w;
    }
    {
        ordered_json w;
        w["lower"] = ww.lower;
        w["upper"] = ww.upper;
        ordered_json res;
        res["fidelity_at_lower_minus_window_lower"] = fidelity_wz_closed(ww.lower) - fw.lower;
        res["fidelity_at_upper_minus_window_upper"] = fidelity_wz_closed(ww.upper) - fw.upper;
        w["residuals"] = res;
        doc["alpha_window_wz"] = w;
    }
    {
        ordered_json list = ordered_json::array();
        for (double x : xi) {
            ordered_json entry;
            entry["xi"] = x;
            const std::optional<Window> w = alpha_window_bh(x);
            if (!w) {
                entry["window"] = nullptr;
            } else {
                ordered_json win;
                win["lower"] = w->lower;
                win["upper"] = w->upper;
                ordered_json res;
                if (w->lower > 0.0)
                    res["fidelity_at_lower_minus_window_lower"] =
                        fidelity_bh_closed(w->lower, x) - fw.lower;
                res["fidelity_at_upper_minus_window_upper"] =
                    fidelity_bh_closed(w->upper, x) - fw.upper;
                win["residuals"] = res;
                entry["window"] = win;
            }
            list.push_back(entry);
        }
        doc["alpha_window_bh"] = list;
    }
    write_text(opt.out, doc.dump(2) + "\n");

    ordered_json params;
    params["xi"] = number_array(xi);
    write_manifest(opt.out, "windows", params, std::nullopt);
    return kExitSuccess;
}

int run_cli(int argc, const char* const* argv) {
    CLI::App app{"Cloning-attack key-rate bounds, distance tables, and a protocol simulator"};
    app.require_subcommand(1);

    TableWzOptions wz_opt;
    CLI::App* wz_cmd =
        app.add_subcommand("table-wz", "Distance bounds for the symmetric machine per alpha^2");
    wz_cmd->add_option("--alpha", wz_opt.alpha, "alpha^2 values (default: reference rows)");
    wz_cmd->add_option("--out", wz_opt.out, "output CSV path");

    TableBhOptions bh_opt;
    CLI::App* bh_cmd = app.add_subcommand(
        "table-bh", "Thresholds and distance bounds for the asymmetric machine per (xi, alpha^2)");
    bh_cmd->add_option("--xi", bh_opt.xi, "xi values (default: reference rows)");
    bh_cmd->add_option("--alpha", bh_opt.alpha,
                       "alpha^2 values, applied per xi (required with --xi)");
    bh_cmd->add_option("--out", bh_opt.out, "output CSV path");

    FigureOptions fig_opt;
    CLI::App* fig_cmd = app.add_subcommand(
        "figure-rlb", "Key-rate lower bound across delta_z sweeps at fixed alpha^2");
    fig_cmd->add_option("--machine", fig_opt.machine, "wz or bh")
        ->check(CLI::IsMember({"wz", "bh"}));
    fig_cmd->add_option("--xi", fig_opt.xi, "machine parameter (bh only)");
    fig_cmd->add_option("--alpha", fig_opt.alpha,
                        "alpha^2 values (default: 4 points inside the usable window)");
    fig_cmd->add_option("--grid", fig_opt.grid, "delta_z points per alpha^2")
        ->check(CLI::Range(2, 1000000));
    fig_cmd->add_option("--out", fig_opt.out, "output CSV path");

    SimulateOptions sim_opt;
    CLI::App* sim_cmd = app.add_subcommand("simulate", "Run the seeded protocol simulation");
    sim_cmd->add_option("--config", sim_opt.config_path, "JSON config file")->required();
    sim_cmd->add_option("--seed", sim_opt.seed, "overrides the config seed");
    sim_cmd->add_option("--out", sim_opt.out, "output JSON path");

    WindowsOptions win_opt;
    CLI::App* win_cmd =
        app.add_subcommand("windows", "Emit the computed validity windows with residuals");
    win_cmd->add_option("--xi", win_opt.xi, "xi values for per-xi windows (default: reference)");
    win_cmd->add_option("--out", win_opt.out, "output JSON path");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitSuccess : kExitUsage;
    }

    try {
        if (wz_cmd->parsed()) return cmd_table_wz(wz_opt);
        if (bh_cmd->parsed()) return cmd_table_bh(bh_opt);
        if (fig_cmd->parsed()) return cmd_figure_rlb(fig_opt);
        if (sim_cmd->parsed()) return cmd_simulate(sim_opt);
        if (win_cmd->parsed()) return cmd_windows(win_opt);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    }
    return kExitUsage;
}

}  // namespace qkd::cli
