#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "acb/report.hpp"
#include "acb/structure_file.hpp"

namespace acb::cli {

inline constexpr std::uint64_t kDefaultSeed = 20240611;

struct RunResult {
    int exit_code = 0;
    std::string out;
    std::string err;
    json report;
};

// args excludes the program name.
RunResult run(const std::vector<std::string>& args);

struct CheckOptions {
    std::uint64_t seed = kDefaultSeed;
    double tol = 1e-10;
};
// Full analysis of one structure: involution, line conditions, every chart,
// Nijenhuis at the origin, obstruction relations, and expectation matching.
json check_report(const StructureFile& f, const std::string& text, const CheckOptions& opt = {});

// Names of the chart variables: z for the divisor variable, w for the rest.
std::vector<std::string> chart_vars(int n, int j);

} // namespace acb::cli
