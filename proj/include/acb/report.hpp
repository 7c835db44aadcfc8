#pragma once

#include <cstdint>
#include <span>
#include <string>

#include <json.hpp>

#include "acb/polynomial.hpp"

namespace acb::cli {

using json = nlohmann::json;

inline constexpr const char* kToolName = "acb";
inline constexpr const char* kToolVersion = "1.0.0";

std::string digest(const std::string& bytes);

json complex_json(cplx z);
json complex_json(std::span<const cplx> v);

// Report skeleton; `checks` and `expectations` start empty.
json new_report(const std::string& command, const std::string& input_name, const std::string& input_text,
                std::uint64_t seed);
// Sets status to pass iff every asserted check and every expectation passed.
void finalize(json& report);

std::string render(const json& report, const std::string& format);

} // namespace acb::cli
