#include "dccse/report.hpp"

#include "dccse/errors.hpp"

namespace dccse::cli {

bool Report::all_pass() const {
    for (const auto& c : checks) {
        if (!c.pass) {
            return false;
        }
    }
    return true;
}

Json Report::to_json() const {
    Json j;
    j["schema"] = kReportSchema;
    j["command"] = command;
    j["config"] = config;
    Json jchecks = Json::array();
    for (const auto& c : checks) {
        Json jc;
        jc["name"] = c.name;
        jc["pass"] = c.pass;
        jc["detail"] = c.detail;
        jchecks.push_back(std::move(jc));
    }
    j["checks"] = std::move(jchecks);
    j["stats"] = stats;
    if (!op_counts.empty()) {
        j["op_counts"] = op_counts;
    }
    if (!advantage.empty()) {
        j["advantage"] = advantage;
    }
    j["verdict"] = verdict;
    j["pass"] = all_pass();
    j["timings"] = timings;
    return j;
}

std::string Report::render() const {
    return to_json().dump(2) + "\n";
}

namespace {

void require(bool cond, const std::string& what) {
    if (!cond) {
        throw Error("report schema violation: " + what);
    }
}

}  // namespace

void validate_report(const Json& report) {
    require(report.is_object(), "report must be an object");
    require(report.value("schema", "") == kReportSchema, "unknown schema id");
    require(report.contains("command") && report["command"].is_string(), "missing command");
    require(report.contains("config") && report["config"].is_object(), "missing config");
    require(report.contains("checks") && report["checks"].is_array(), "missing checks");
    for (const auto& c : report["checks"]) {
        require(c.is_object() && c.contains("name") && c.contains("pass") && c["pass"].is_boolean(),
                "malformed check entry");
    }
    require(report.contains("stats") && report["stats"].is_object(), "missing stats");
    require(report.contains("verdict") && report["verdict"].is_string(), "missing verdict");
    require(report.contains("pass") && report["pass"].is_boolean(), "missing pass");
    require(report.contains("timings") && report["timings"].is_object(), "missing timings");

    const std::string cmd = report["command"].get<std::string>();
    if (cmd == "attack") {
        require(report.contains("advantage") && report["advantage"].is_object(),
                "attack report needs an advantage object");
        for (const char* key :
             {"trials", "successes", "p_hat", "advantage", "confidence_halfwidth"}) {
            require(report["advantage"].contains(key), std::string("advantage.") + key);
        }
    } else if (cmd == "bench") {
        require(report.contains("op_counts") && report["op_counts"].is_object() &&
                    !report["op_counts"].empty(),
                "bench report needs op_counts");
    } else {
        require(cmd == "correctness" || cmd == "sim", "unknown command: " + cmd);
    }
}

Json strip_timings(Json report) {
    report.erase("timings");
    return report;
}

}  // namespace dccse::cli
