#include "dcilink/cli.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "dcilink/errors.hpp"
#include "dcilink/report.hpp"
#include "dcilink/wavesim.hpp"

namespace dcilink {

namespace {

using nlohmann::ordered_json;

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitInfeasible = 2;

std::string fmt(const char* format, double value) {
    char buf[64];
    std::snprintf(buf, sizeof buf, format, value);
    return buf;
}

std::string db(double v) { return fmt("%.2f", v); }
std::string km(double v) { return std::isfinite(v) ? fmt("%.1f", v) : "unlimited"; }
std::string tbps(double v) { return fmt("%.2f", v); }
std::string psnm(double v) { return fmt("%.1f", v); }

ordered_json json_or_unlimited(double v) {
    if (std::isfinite(v)) return v;
    return v > 0 ? "unlimited" : "-unlimited";
}

ordered_json budget_to_json(const OsnrBudgetReport& b) {
    return {{"ase_floor_dbm", b.components.ase_floor_dbm},
            {"launch_dbm", b.components.launch_dbm},
            {"total_loss_db", b.components.total_loss_db},
            {"noise_figure_db", b.components.noise_figure_db},
            {"margin_db", b.components.margin_db},
            {"achievable_osnr_db", b.achievable_osnr_db},
            {"required_osnr_db", b.required_osnr_db},
            {"residual_margin_db", b.residual_margin_db},
            {"feasible", b.feasible}};
}

ordered_json capacity_to_json(const CapacityReport& c) {
    ordered_json bands = ordered_json::array();
    for (const auto& band : c.per_band) {
        bands.push_back({{"band", to_string(band.band)},
                         {"channel_count", band.channel_count},
                         {"capacity_tbps", band.capacity_tbps},
                         {"splitter_loss_db", band.splitter_loss_db},
                         {"reach_penalty_km", band.reach_penalty_km}});
    }
    return {{"bands", bands},
            {"total_tbps", c.total_tbps},
            {"spectral_efficiency_bps_hz", c.spectral_efficiency_bps_hz}};
}

ordered_json plan_to_json(const PlanReport& r) {
    ordered_json doc;
    doc["command"] = "plan";
    doc["scenario"] = r.scenario_path;
    doc["profile"] = r.profile_id;
    doc["planning_band"] = to_string(r.planning_band);
    doc["budget"] = budget_to_json(r.budget);
    doc["dispersion"] = {{"accumulated_cd_ps_nm", r.accumulated.ps_per_nm},
                         {"cd_tolerance_ps_nm", r.cd_tolerance_ps_nm},
                         {"compensation",
                          {{"fixed_module_ps_nm", r.compensation.fixed_module_ps_nm},
                           {"tunable_setting_ps_nm", r.compensation.tunable_setting_ps_nm},
                           {"residual_cd_ps_nm", r.compensation.residual_cd_ps_nm},
                           {"headroom_ps_nm", r.compensation.headroom_ps_nm},
                           {"feasible", r.compensation.feasible}}}};
    doc["reach"] = {{"osnr_bound_km",
                     r.reach.osnr_bound_km ? ordered_json(*r.reach.osnr_bound_km)
                                           : ordered_json(nullptr)},
                    {"cd_bound_km", json_or_unlimited(r.reach.cd_bound_km)},
                    {"effective_km", r.reach.reach_km ? ordered_json(*r.reach.reach_km)
                                                      : ordered_json(nullptr)},
                    {"limiting_factor", to_string(r.reach.limiting_factor)}};
    doc["capacity"] = capacity_to_json(r.capacity);
    doc["channel_count"] = r.channel_count;
    doc["amplifier_power"] = {{"total_output_dbm", r.power.total_output_dbm},
                              {"limit_dbm", r.power.limit_dbm},
                              {"ok", r.power.ok}};
    doc["feasible"] = r.feasible;
    return doc;
}

void print_budget_table(std::ostream& out, const OsnrBudgetReport& b) {
    out << "OSNR budget (single preamplified span, 12.5 GHz reference)\n";
    out << "  launch power       " << db(b.components.launch_dbm) << " dBm\n";
    out << "  total loss         " << db(b.components.total_loss_db) << " dB\n";
    out << "  amplifier NF       " << db(b.components.noise_figure_db) << " dB\n";
    out << "  design margin      " << db(b.components.margin_db) << " dB\n";
    out << "  ASE floor          " << db(b.components.ase_floor_dbm) << " dBm\n";
    out << "  achievable OSNR    " << db(b.achievable_osnr_db) << " dB\n";
    out << "  required OSNR      " << db(b.required_osnr_db) << " dB\n";
    out << "  residual margin    " << db(b.residual_margin_db) << " dB  "
        << (b.feasible ? "[ok]" : "[infeasible]") << "\n";
}

void print_capacity_table(std::ostream& out, const CapacityReport& c) {
    out << "Capacity\n";
    for (const auto& band : c.per_band) {
        out << "  band " << to_string(band.band) << ": " << band.channel_count
            << " channels -> " << tbps(band.capacity_tbps) << " Tb/s";
        if (band.splitter_loss_db > 0) {
            out << "  (splitter " << db(band.splitter_loss_db) << " dB -> reach penalty "
                << km(band.reach_penalty_km) << " km, not an OSNR factor of "
                << fmt("%.2f", std::pow(10.0, band.splitter_loss_db / 10.0)) << "x)";
        }
        out << "\n";
    }
    out << "  total " << tbps(c.total_tbps) << " Tb/s, SE "
        << fmt("%.2f", c.spectral_efficiency_bps_hz) << " b/s/Hz\n";
}

void print_plan_table(std::ostream& out, const PlanReport& r) {
    out << "Scenario: " << r.scenario_path << "\n";
    out << "Profile:  " << r.profile_id << "  (band " << to_string(r.planning_band) << ")\n\n";
    print_budget_table(out, r.budget);
    out << "\nChromatic dispersion\n";
    out << "  accumulated CD     " << psnm(r.accumulated.ps_per_nm) << " ps/nm\n";
    out << "  CD tolerance       " << psnm(r.cd_tolerance_ps_nm) << " ps/nm\n";
    out << "  fixed DCM          " << psnm(r.compensation.fixed_module_ps_nm) << " ps/nm\n";
    out << "  tunable setting    " << psnm(r.compensation.tunable_setting_ps_nm) << " ps/nm\n";
    out << "  residual CD        " << psnm(r.compensation.residual_cd_ps_nm) << " ps/nm  "
        << (r.compensation.feasible ? "[ok]" : "[infeasible]") << " (headroom "
        << psnm(r.compensation.headroom_ps_nm) << " ps/nm)\n";
    out << "\nReach\n";
    out << "  OSNR-limited       "
        << (r.reach.osnr_bound_km ? km(*r.reach.osnr_bound_km) + " km" : "infeasible") << "\n";
    out << "  CD-limited         " << km(r.reach.cd_bound_km) << " km (with inventory)\n";
    out << "  effective          "
        << (r.reach.reach_km ? km(*r.reach.reach_km) + " km" : "infeasible")
        << "  limited by " << to_string(r.reach.limiting_factor) << "\n\n";
    print_capacity_table(out, r.capacity);
    out << "\nAmplifier output: " << db(r.power.total_output_dbm) << " dBm of "
        << db(r.power.limit_dbm) << " dBm max (" << r.channel_count << " channels)  "
        << (r.power.ok ? "[ok]" : "[violation]") << "\n";
    out << "\nPlan: " << (r.feasible ? "FEASIBLE" : "INFEASIBLE") << "\n";
}

struct GlobalFlags {
    bool json = false;
    bool lenient = false;
    std::uint64_t seed = 1;
    bool seed_set = false;
};

int cmd_plan(const std::string& path, const std::string& profile_id, const GlobalFlags& flags,
             std::ostream& out) {
    const Scenario scenario = load_scenario_file(path, flags.lenient);
    const PlanReport report = build_plan_report(scenario, profile_id, path);
    if (flags.json)
        out << plan_to_json(report).dump(2) << "\n";
    else
        print_plan_table(out, report);
    return report.feasible ? kExitOk : kExitInfeasible;
}

int cmd_compare(const std::string& path, const std::string& band_filter,
                const std::string& detection_filter, const GlobalFlags& flags,
                std::ostream& out, std::ostream& err) {
    const Scenario scenario = load_scenario_file(path, flags.lenient);

    Scenario filtered = scenario;
    if (!band_filter.empty() || !detection_filter.empty()) {
        const auto band = band_filter.empty() ? std::optional<BandId>{}
                                              : band_from_string(band_filter);
        const auto det = detection_filter.empty()
                             ? std::optional<Detection>{}
                             : detection_from_string(detection_filter);
        std::vector<TransceiverProfile> keep;
        for (const auto& p : filtered.catalog.profiles) {
            if (band && !p.allows_band(*band)) continue;
            if (det && p.detection != *det) continue;
            keep.push_back(p);
        }
        filtered.catalog.profiles = keep;
    }
    if (filtered.catalog.profiles.empty()) {
        err << "error: no profiles\n";
        return kExitUsage;
    }

    const auto rows = build_compare_rows(filtered);
    if (flags.json) {
        ordered_json doc;
        doc["command"] = "compare";
        doc["scenario"] = path;
        doc["rows"] = ordered_json::array();
        for (const auto& row : rows) {
            doc["rows"].push_back(
                {{"profile", row.profile_id},
                 {"detection", to_string(row.detection)},
                 {"feasible", row.feasible},
                 {"effective_reach_km", row.effective_reach_km
                                            ? ordered_json(*row.effective_reach_km)
                                            : ordered_json(nullptr)},
                 {"limiting_factor", to_string(row.limiting_factor)},
                 {"spectral_efficiency_bps_hz", row.spectral_efficiency_bps_hz},
                 {"capacity_c_tbps", row.capacity_c_tbps},
                 {"capacity_cl_tbps", row.capacity_cl_tbps}});
        }
        out << doc.dump(2) << "\n";
    } else {
        out << "profile        det       feas  reach_km  limit  SE_b/s/Hz  C_Tb/s  C+L_Tb/s\n";
        for (const auto& row : rows) {
            char line[160];
            std::snprintf(line, sizeof line, "%-14s %-9s %-5s %9s  %-5s %10.2f %7.2f %9.2f\n",
                          row.profile_id.c_str(), to_string(row.detection).c_str(),
                          row.feasible ? "yes" : "no",
                          row.effective_reach_km ? km(*row.effective_reach_km).c_str() : "-",
                          to_string(row.limiting_factor).c_str(),
                          row.spectral_efficiency_bps_hz, row.capacity_c_tbps,
                          row.capacity_cl_tbps);
            out << line;
        }
    }
    return kExitOk;
}

int cmd_capacity(const std::string& path, const std::string& profile_id, const GlobalFlags& flags,
                 std::ostream& out) {
    const Scenario scenario = load_scenario_file(path, flags.lenient);
    const PlanReport report = build_plan_report(scenario, profile_id, path);
    if (flags.json) {
        ordered_json doc;
        doc["command"] = "capacity";
        doc["scenario"] = path;
        doc["profile"] = report.profile_id;
        doc["capacity"] = capacity_to_json(report.capacity);
        ordered_json penalties = ordered_json::array();
        for (const auto& band : report.capacity.per_band) {
            const auto penalty = band_extension_reach_penalty(
                band.splitter_loss_db, scenario.fiber.loss_coeff_db_km);
            penalties.push_back({{"band", to_string(band.band)},
                                 {"splitter_loss_db", band.splitter_loss_db},
                                 {"reach_penalty_km", penalty.penalty_km},
                                 {"naive_osnr_factor", penalty.naive_osnr_factor}});
        }
        doc["band_extension"] = penalties;
        out << doc.dump(2) << "\n";
    } else {
        out << "Scenario: " << path << "\nProfile:  " << report.profile_id << "\n\n";
        print_capacity_table(out, report.capacity);
    }
    return kExitOk;
}

int cmd_budget(const std::string& path, const std::string& profile_id, int channels,
               const GlobalFlags& flags, std::ostream& out) {
    const Scenario scenario = load_scenario_file(path, flags.lenient);

    TransceiverProfile profile;
    if (!profile_id.empty()) {
        const PlanReport report = build_plan_report(scenario, profile_id, path);
        if (flags.json) {
            ordered_json doc;
            doc["command"] = "budget";
            doc["scenario"] = path;
            doc["profile"] = report.profile_id;
            doc["budget"] = budget_to_json(report.budget);
            doc["amplifier_power"] = {{"total_output_dbm", report.power.total_output_dbm},
                                      {"limit_dbm", report.power.limit_dbm},
                                      {"ok", report.power.ok}};
            out << doc.dump(2) << "\n";
        } else {
            out << "Scenario: " << path << "\nProfile:  " << report.profile_id << "\n\n";
            print_budget_table(out, report.budget);
        }
        return report.budget.feasible ? kExitOk : kExitInfeasible;
    }

    // No profile: report the achievable side only, via a zero-requirement
    // placeholder profile.
    profile = scenario.catalog.profiles.front();
    profile.required_osnr_db = 0.0;
    const OsnrBudgetReport budget = make_budget_report(scenario.link, profile);
    const PowerCheck power =
        check_amplifier_power(scenario.link.launch_power_dbm, std::max(channels, 1),
                              scenario.link.preamp);
    if (flags.json) {
        ordered_json doc;
        doc["command"] = "budget";
        doc["scenario"] = path;
        doc["budget"] = budget_to_json(budget);
        doc["budget"].erase("required_osnr_db");
        doc["budget"].erase("residual_margin_db");
        doc["budget"].erase("feasible");
        doc["amplifier_power"] = {{"total_output_dbm", power.total_output_dbm},
                                  {"limit_dbm", power.limit_dbm},
                                  {"ok", power.ok}};
        out << doc.dump(2) << "\n";
    } else {
        out << "Scenario: " << path << "\n\n";
        out << "Achievable OSNR: " << db(budget.achievable_osnr_db) << " dB\n";
        out << "  launch " << db(budget.components.launch_dbm) << " dBm, loss "
            << db(budget.components.total_loss_db) << " dB, NF "
            << db(budget.components.noise_figure_db) << " dB, margin "
            << db(budget.components.margin_db) << " dB, ASE floor "
            << db(budget.components.ase_floor_dbm) << " dBm\n";
        out << "Amplifier output: " << db(power.total_output_dbm) << " dBm of "
            << db(power.limit_dbm) << " dBm max (" << std::max(channels, 1) << " channels)  "
            << (power.ok ? "[ok]" : "[violation]") << "\n";
    }
    return kExitOk;
}

struct CdSweepArgs {
    double baud_gbd = 56.0;
    int samples_per_symbol = 16;
    int symbol_count = 4096;
    int points = 26;
    double cd_max_ps_nm = 125.0;
    double criterion_db = 2.0;
    double search_max_ps_nm = 500.0;
    std::string out_path;
};

int cmd_cd_sweep(const CdSweepArgs& args, const GlobalFlags& flags, std::ostream& out,
                 std::ostream& err) {
    if (args.points < 2) {
        err << "error: need at least 2 sweep points\n";
        return kExitUsage;
    }
    if (!(args.cd_max_ps_nm > 0)) {
        err << "error: --cd-max must be positive\n";
        return kExitUsage;
    }

    WaveformConfig config;
    config.baud_gbd = args.baud_gbd;
    config.samples_per_symbol = args.samples_per_symbol;
    config.symbol_count = args.symbol_count;
    if (flags.seed_set) config.rng_seed = flags.seed;

    std::vector<double> points(args.points);
    for (int i = 0; i < args.points; ++i)
        points[i] = args.cd_max_ps_nm * static_cast<double>(i) / (args.points - 1);

    const auto curve = cd_penalty_sweep(config, points);

    double limit = 0.0;
    try {
        limit = find_cd_limit(config, args.criterion_db, args.search_max_ps_nm);
    } catch (const validation_error& e) {
        if (!args.out_path.empty()) {
            std::ofstream file(args.out_path);
            write_cd_sweep_csv(file, curve);
        }
        err << "error: " << e.what() << "\n";
        return kExitInfeasible;
    }

    if (!args.out_path.empty()) {
        std::ofstream file(args.out_path);
        if (!file) {
            err << "error: cannot write '" << args.out_path << "'\n";
            return kExitUsage;
        }
        write_cd_sweep_csv(file, curve);
    }

    if (flags.json) {
        ordered_json doc;
        doc["command"] = "cd-sweep";
        doc["baud_gbd"] = config.baud_gbd;
        doc["criterion_db"] = args.criterion_db;
        doc["cd_limit_ps_nm"] = limit;
        doc["curve"] = ordered_json::array();
        for (const auto& p : curve) {
            doc["curve"].push_back({{"acc_cd_ps_nm", p.acc_cd_ps_nm},
                                    {"worst_penalty_db", p.eye_closed
                                                             ? ordered_json("inf")
                                                             : ordered_json(p.worst_penalty_db)}});
        }
        out << doc.dump(2) << "\n";
    } else {
        if (args.out_path.empty()) {
            std::ostringstream csv;
            write_cd_sweep_csv(csv, curve);
            out << csv.str();
        }
        out << "CD limit at " << db(args.criterion_db) << " dB eye-closure penalty: "
            << psnm(limit) << " ps/nm (" << args.baud_gbd << " GBd PAM-4)\n";
    }
    return kExitOk;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"DCI link planning engine: OSNR budgets, dispersion compensation, "
                 "band capacity, and an IM-DD waveform simulator"};
    app.name("dcilink");
    app.fallthrough();
    app.require_subcommand(1);

    GlobalFlags flags;
    app.add_flag("--json", flags.json, "emit one JSON document on stdout");
    app.add_flag("--lenient", flags.lenient, "ignore unknown scenario keys");
    auto* seed_opt =
        app.add_option("--seed", flags.seed, "RNG seed for waveform simulation");

    std::string scenario_path;
    std::string profile_id;

    auto* plan = app.add_subcommand("plan", "feasibility plan for one transceiver profile");
    plan->add_option("scenario", scenario_path, "scenario JSON file")->required();
    plan->add_option("profile", profile_id, "transceiver profile id")->required();

    std::string band_filter;
    std::string detection_filter;
    auto* compare = app.add_subcommand("compare", "compare all catalog profiles on this link");
    compare->add_option("scenario", scenario_path, "scenario JSON file")->required();
    compare->add_option("--band", band_filter, "keep only profiles allowing this band (O/C/L)");
    compare->add_option("--detection", detection_filter,
                        "keep only this detection type (im-dd/coherent)");

    auto* capacity = app.add_subcommand("capacity", "per-band fiber capacity for a profile");
    capacity->add_option("scenario", scenario_path, "scenario JSON file")->required();
    capacity->add_option("profile", profile_id, "transceiver profile id")->required();

    int channels = 1;
    std::string budget_profile;
    auto* budget = app.add_subcommand("budget", "OSNR budget for the link");
    budget->add_option("scenario", scenario_path, "scenario JSON file")->required();
    budget->add_option("--profile", budget_profile, "profile id for required-OSNR comparison");
    budget->add_option("--channels", channels, "channel count for the amplifier power check");

    CdSweepArgs sweep;
    auto* cd_sweep = app.add_subcommand("cd-sweep",
                                        "eye-closure penalty vs accumulated dispersion");
    cd_sweep->add_option("--baud", sweep.baud_gbd, "symbol rate in GBd");
    cd_sweep->add_option("--sps", sweep.samples_per_symbol, "samples per symbol");
    cd_sweep->add_option("--symbols", sweep.symbol_count, "simulated symbol count");
    cd_sweep->add_option("--points", sweep.points, "number of sweep points (>= 2)");
    cd_sweep->add_option("--cd-max", sweep.cd_max_ps_nm, "last sweep point in ps/nm");
    cd_sweep->add_option("--criterion-db", sweep.criterion_db,
                         "eye-closure penalty defining the CD limit");
    cd_sweep->add_option("--search-max", sweep.search_max_ps_nm,
                         "upper bound for the CD-limit search in ps/nm");
    cd_sweep->add_option("--out", sweep.out_path, "write the sweep CSV to this path");

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n";
        return kExitUsage;
    }
    flags.seed_set = seed_opt->count() > 0;

    try {
        if (plan->parsed()) return cmd_plan(scenario_path, profile_id, flags, out);
        if (compare->parsed())
            return cmd_compare(scenario_path, band_filter, detection_filter, flags, out, err);
        if (capacity->parsed()) return cmd_capacity(scenario_path, profile_id, flags, out);
        if (budget->parsed())
            return cmd_budget(scenario_path, budget_profile, channels, flags, out);
        if (cd_sweep->parsed()) return cmd_cd_sweep(sweep, flags, out, err);
    } catch (const parse_error& e) {
        err << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const validation_error& e) {
        err << "error: " << e.what() << "\n";
        return kExitUsage;
    }
    err << "error: no command\n";
    return kExitUsage;
}

}  // namespace dcilink
