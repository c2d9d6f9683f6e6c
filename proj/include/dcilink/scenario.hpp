#pragma once

#include <map>
#include <string>
#include <string_view>

#include "dcilink/catalog.hpp"

namespace dcilink {

// One fully resolved planning input: merged catalog, link topology, fiber
// coefficients per band, and the available compensation hardware. Values are
// immutable after construction; share freely across threads.
struct Scenario {
    Catalog catalog;
    FiberSpec fiber;
    std::map<BandId, FiberSpec> fiber_by_band;
    LinkTopology link;
    DcmInventory dcm;

    bool operator==(const Scenario&) const = default;
};

// Parse a scenario JSON document. Built-in profiles and bands are merged
// with user-supplied ones, user values winning on id collision; absent keys
// fall back to the built-in defaults. Unknown keys are an error unless
// lenient is set. Throws parse_error (schema) or validation_error
// (invariants).
Scenario parse_scenario(std::string_view text, bool lenient = false);

Scenario load_scenario_file(const std::string& path, bool lenient = false);

// Inverse of parse_scenario up to identity: parsing the returned document
// yields an equal Scenario.
std::string serialize_scenario(const Scenario& scenario);

const FiberSpec& fiber_for_band(const Scenario& scenario, BandId band);

}  // namespace dcilink
