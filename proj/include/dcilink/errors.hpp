#pragma once

#include <stdexcept>
#include <string>

namespace dcilink {

// Scenario document does not conform to the schema (bad type, unknown or
// missing key). The message names the offending key and its location.
class parse_error : public std::runtime_error {
public:
    explicit parse_error(const std::string& what) : std::runtime_error(what) {}
};

// A domain invariant is violated (e.g. negative span length). The message
// names the invariant that failed.
class validation_error : public std::runtime_error {
public:
    explicit validation_error(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace dcilink
