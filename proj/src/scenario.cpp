#include "dcilink/scenario.hpp"

#include <fstream>
#include <initializer_list>
#include <sstream>

#include <json.hpp>

#include "dcilink/errors.hpp"

namespace dcilink {

namespace {

using nlohmann::json;
using nlohmann::ordered_json;

[[noreturn]] void fail(const std::string& where, const std::string& what) {
    throw parse_error("scenario parse error at " + where + ": " + what);
}

const json& expect_object(const json& j, const std::string& where) {
    if (!j.is_object()) fail(where, "expected an object");
    return j;
}

const json& expect_array(const json& j, const std::string& where) {
    if (!j.is_array()) fail(where, "expected an array");
    return j;
}

double expect_number(const json& j, const std::string& where) {
    if (!j.is_number()) fail(where, "expected a number");
    return j.get<double>();
}

std::string expect_string(const json& j, const std::string& where) {
    if (!j.is_string()) fail(where, "expected a string");
    return j.get<std::string>();
}

void check_keys(const json& obj, const std::string& where,
                std::initializer_list<const char*> allowed, bool lenient) {
    if (lenient) return;
    for (const auto& [key, value] : obj.items()) {
        bool known = false;
        for (const char* a : allowed)
            if (key == a) known = true;
        if (!known) fail(where, "unknown key '" + key + "'");
    }
}

double number_field(const json& obj, const char* key, const std::string& where) {
    if (!obj.contains(key)) fail(where, "missing key '" + std::string(key) + "'");
    return expect_number(obj.at(key), where + "." + key);
}

double number_field_or(const json& obj, const char* key, const std::string& where,
                       double fallback) {
    if (!obj.contains(key)) return fallback;
    return expect_number(obj.at(key), where + "." + key);
}

FiberSpec parse_fiber(const json& j, const std::string& where, const FiberSpec& fallback,
                      bool lenient) {
    expect_object(j, where);
    check_keys(j, where, {"loss_coeff", "cd_coeff", "by_band"}, lenient);
    FiberSpec fiber;
    fiber.loss_coeff_db_km = number_field_or(j, "loss_coeff", where, fallback.loss_coeff_db_km);
    fiber.cd_coeff_ps_nm_km = number_field_or(j, "cd_coeff", where, fallback.cd_coeff_ps_nm_km);
    validate(fiber, where);
    return fiber;
}

TransceiverProfile parse_profile(const json& j, const std::string& where, bool lenient) {
    expect_object(j, where);
    check_keys(j, where,
               {"id", "net_rate", "baud", "bits_per_symbol", "detection", "slot_width",
                "required_osnr", "cd_tolerance", "lane_count", "bands"},
               lenient);
    TransceiverProfile p;
    if (!j.contains("id")) fail(where, "missing key 'id'");
    p.id = expect_string(j.at("id"), where + ".id");
    p.net_rate_gbps = number_field(j, "net_rate", where);
    p.baud_gbd = number_field(j, "baud", where);
    p.bits_per_symbol = number_field(j, "bits_per_symbol", where);
    if (!j.contains("detection")) fail(where, "missing key 'detection'");
    p.detection = detection_from_string(expect_string(j.at("detection"), where + ".detection"));
    p.slot_width_ghz = number_field(j, "slot_width", where);
    p.required_osnr_db = number_field(j, "required_osnr", where);
    p.cd_tolerance_ps_nm = number_field(j, "cd_tolerance", where);
    p.lane_count = static_cast<int>(number_field_or(j, "lane_count", where, 1));
    if (j.contains("bands")) {
        const auto& bands = expect_array(j.at("bands"), where + ".bands");
        for (std::size_t i = 0; i < bands.size(); ++i)
            p.bands.push_back(band_from_string(
                expect_string(bands[i], where + ".bands[" + std::to_string(i) + "]")));
    } else {
        p.bands = {BandId::C, BandId::L};
    }
    validate(p);
    return p;
}

BandPlan parse_band(const json& j, const std::string& where, const Catalog& defaults,
                    bool lenient) {
    expect_object(j, where);
    check_keys(j, where, {"id", "f_start", "f_stop", "splitter_loss"}, lenient);
    if (!j.contains("id")) fail(where, "missing key 'id'");
    BandPlan band;
    band.id = band_from_string(expect_string(j.at("id"), where + ".id"));
    const BandPlan* base = defaults.find_band(band.id);
    band.f_start_thz = number_field_or(j, "f_start", where, base ? base->f_start_thz : 0.0);
    band.f_stop_thz = number_field_or(j, "f_stop", where, base ? base->f_stop_thz : 0.0);
    band.splitter_loss_db =
        number_field_or(j, "splitter_loss", where, base ? base->splitter_loss_db : 0.0);
    validate(band);
    return band;
}

}  // namespace

Scenario parse_scenario(std::string_view text, bool lenient) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        throw parse_error(std::string("scenario parse error: invalid JSON: ") + e.what());
    }
    expect_object(doc, "document root");
    check_keys(doc, "document root",
               {"fiber", "spans", "lumped_losses", "amplifier", "launch_power_dbm", "margin_db",
                "transceivers", "bands", "dcm_inventory"},
               lenient);

    Scenario sc;
    sc.catalog = builtin_catalog();
    sc.fiber = default_fiber();

    if (doc.contains("fiber"))
        sc.fiber = parse_fiber(doc.at("fiber"), "fiber", default_fiber(), lenient);
    sc.fiber_by_band = default_fiber_by_band(sc.fiber);
    if (doc.contains("fiber") && doc.at("fiber").contains("by_band")) {
        const auto& by_band = expect_object(doc.at("fiber").at("by_band"), "fiber.by_band");
        for (const auto& [key, value] : by_band.items()) {
            const BandId id = band_from_string(key);
            const std::string where = "fiber.by_band." + key;
            sc.fiber_by_band[id] = parse_fiber(value, where, sc.fiber_by_band[id], lenient);
        }
    }

    if (doc.contains("spans")) {
        const auto& spans = expect_array(doc.at("spans"), "spans");
        for (std::size_t i = 0; i < spans.size(); ++i) {
            const std::string where = "spans[" + std::to_string(i) + "]";
            expect_object(spans[i], where);
            check_keys(spans[i], where, {"length", "fiber"}, lenient);
            Span span;
            span.length_km = number_field(spans[i], "length", where);
            span.fiber = spans[i].contains("fiber")
                             ? parse_fiber(spans[i].at("fiber"), where + ".fiber", sc.fiber,
                                           lenient)
                             : sc.fiber;
            sc.link.spans.push_back(span);
        }
    }

    if (doc.contains("lumped_losses")) {
        const auto& losses = expect_array(doc.at("lumped_losses"), "lumped_losses");
        for (std::size_t i = 0; i < losses.size(); ++i) {
            const std::string where = "lumped_losses[" + std::to_string(i) + "]";
            expect_object(losses[i], where);
            check_keys(losses[i], where, {"label", "loss"}, lenient);
            LumpedLoss loss;
            if (losses[i].contains("label"))
                loss.label = expect_string(losses[i].at("label"), where + ".label");
            loss.loss_db = number_field(losses[i], "loss", where);
            sc.link.lumped_losses.push_back(loss);
        }
    }

    if (doc.contains("amplifier")) {
        const auto& amp = expect_object(doc.at("amplifier"), "amplifier");
        check_keys(amp, "amplifier", {"noise_figure", "max_total_output"}, lenient);
        sc.link.preamp.noise_figure_db =
            number_field_or(amp, "noise_figure", "amplifier", AmplifierSpec{}.noise_figure_db);
        sc.link.preamp.max_total_output_dbm = number_field_or(
            amp, "max_total_output", "amplifier", AmplifierSpec{}.max_total_output_dbm);
    }

    sc.link.launch_power_dbm =
        number_field_or(doc, "launch_power_dbm", "document root", sc.link.launch_power_dbm);
    sc.link.design_margin_db =
        number_field_or(doc, "margin_db", "document root", sc.link.design_margin_db);

    if (doc.contains("transceivers")) {
        const auto& profiles = expect_array(doc.at("transceivers"), "transceivers");
        for (std::size_t i = 0; i < profiles.size(); ++i)
            sc.catalog.merge_profile(
                parse_profile(profiles[i], "transceivers[" + std::to_string(i) + "]", lenient));
    }

    if (doc.contains("bands")) {
        const auto& bands = expect_array(doc.at("bands"), "bands");
        for (std::size_t i = 0; i < bands.size(); ++i)
            sc.catalog.merge_band(parse_band(bands[i], "bands[" + std::to_string(i) + "]",
                                             sc.catalog, lenient));
    }

    sc.dcm = default_dcm_inventory();
    if (doc.contains("dcm_inventory")) {
        const auto& inv = expect_object(doc.at("dcm_inventory"), "dcm_inventory");
        check_keys(inv, "dcm_inventory", {"fixed_values", "tunable_range", "tunable_granularity"},
                   lenient);
        if (inv.contains("fixed_values")) {
            sc.dcm.fixed_values_ps_nm.clear();
            const auto& fixed = expect_array(inv.at("fixed_values"), "dcm_inventory.fixed_values");
            for (std::size_t i = 0; i < fixed.size(); ++i)
                sc.dcm.fixed_values_ps_nm.push_back(expect_number(
                    fixed[i], "dcm_inventory.fixed_values[" + std::to_string(i) + "]"));
        }
        sc.dcm.tunable_range_ps_nm = number_field_or(inv, "tunable_range", "dcm_inventory",
                                                     sc.dcm.tunable_range_ps_nm);
        sc.dcm.tunable_granularity_ps_nm = number_field_or(
            inv, "tunable_granularity", "dcm_inventory", sc.dcm.tunable_granularity_ps_nm);
    }

    validate(sc.link);
    validate(sc.dcm);
    for (const auto& [band, fiber] : sc.fiber_by_band)
        validate(fiber, "fiber.by_band." + to_string(band));
    return sc;
}

Scenario load_scenario_file(const std::string& path, bool lenient) {
    std::ifstream in(path);
    if (!in) throw parse_error("cannot open scenario file '" + path + "'");
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return parse_scenario(buffer.str(), lenient);
}

std::string serialize_scenario(const Scenario& scenario) {
    ordered_json doc;

    ordered_json fiber;
    fiber["loss_coeff"] = scenario.fiber.loss_coeff_db_km;
    fiber["cd_coeff"] = scenario.fiber.cd_coeff_ps_nm_km;
    ordered_json by_band;
    for (const auto& [band, spec] : scenario.fiber_by_band) {
        by_band[to_string(band)] = {{"loss_coeff", spec.loss_coeff_db_km},
                                    {"cd_coeff", spec.cd_coeff_ps_nm_km}};
    }
    fiber["by_band"] = by_band;
    doc["fiber"] = fiber;

    doc["spans"] = ordered_json::array();
    for (const auto& span : scenario.link.spans) {
        doc["spans"].push_back({{"length", span.length_km},
                                {"fiber",
                                 {{"loss_coeff", span.fiber.loss_coeff_db_km},
                                  {"cd_coeff", span.fiber.cd_coeff_ps_nm_km}}}});
    }

    doc["lumped_losses"] = ordered_json::array();
    for (const auto& loss : scenario.link.lumped_losses)
        doc["lumped_losses"].push_back({{"label", loss.label}, {"loss", loss.loss_db}});

    doc["amplifier"] = {{"noise_figure", scenario.link.preamp.noise_figure_db},
                        {"max_total_output", scenario.link.preamp.max_total_output_dbm}};
    doc["launch_power_dbm"] = scenario.link.launch_power_dbm;
    doc["margin_db"] = scenario.link.design_margin_db;

    doc["transceivers"] = ordered_json::array();
    for (const auto& p : scenario.catalog.profiles) {
        ordered_json jp;
        jp["id"] = p.id;
        jp["net_rate"] = p.net_rate_gbps;
        jp["baud"] = p.baud_gbd;
        jp["bits_per_symbol"] = p.bits_per_symbol;
        jp["detection"] = to_string(p.detection);
        jp["slot_width"] = p.slot_width_ghz;
        jp["required_osnr"] = p.required_osnr_db;
        jp["cd_tolerance"] = p.cd_tolerance_ps_nm;
        jp["lane_count"] = p.lane_count;
        ordered_json bands = ordered_json::array();
        for (BandId b : p.bands) bands.push_back(to_string(b));
        jp["bands"] = bands;
        doc["transceivers"].push_back(jp);
    }

    doc["bands"] = ordered_json::array();
    for (const auto& b : scenario.catalog.bands) {
        doc["bands"].push_back({{"id", to_string(b.id)},
                                {"f_start", b.f_start_thz},
                                {"f_stop", b.f_stop_thz},
                                {"splitter_loss", b.splitter_loss_db}});
    }

    doc["dcm_inventory"] = {{"fixed_values", scenario.dcm.fixed_values_ps_nm},
                            {"tunable_range", scenario.dcm.tunable_range_ps_nm},
                            {"tunable_granularity", scenario.dcm.tunable_granularity_ps_nm}};

    return doc.dump(2) + "\n";
}

const FiberSpec& fiber_for_band(const Scenario& scenario, BandId band) {
    const auto it = scenario.fiber_by_band.find(band);
    return it != scenario.fiber_by_band.end() ? it->second : scenario.fiber;
}

}  // namespace dcilink
