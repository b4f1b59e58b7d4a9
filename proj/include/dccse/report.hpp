#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "dccse/bytes.hpp"

namespace dccse::cli {

using Json = nlohmann::ordered_json;

inline constexpr std::string_view kReportSchema = "dccse-report/1";

struct Check {
    std::string name;
    bool pass = false;
    std::string detail;
};

// Structured command report: stable key ordering, hex for group elements,
// timing data confined to the "timings" subtree so that fixed-seed reruns
// are byte-identical after strip_timings().
struct Report {
    std::string command;
    Json config = Json::object();
    std::vector<Check> checks;
    Json stats = Json::object();
    Json op_counts = Json::object();   // bench
    Json advantage = Json::object();   // attack
    std::string verdict;
    Json timings = Json::object();

    bool all_pass() const;
    Json to_json() const;
    std::string render() const;  // to_json(), 2-space indent, trailing newline
};

// Schema check for emitted reports; throws Error with the first violation.
void validate_report(const Json& report);

// Copy with the timing subtree removed, for determinism comparisons.
Json strip_timings(Json report);

}  // namespace dccse::cli
