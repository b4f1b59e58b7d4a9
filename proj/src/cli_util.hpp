#pragma once

#include <chrono>
#include <string>

#include "dccse/report.hpp"

namespace dccse::cli {

using Clock = std::chrono::steady_clock;

inline double ms_since(Clock::time_point start) {
    return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
}

inline void add_check(Report& rep, const std::string& name, bool pass,
                      const std::string& detail) {
    rep.checks.push_back(Check{name, pass, detail});
}

}  // namespace dccse::cli
