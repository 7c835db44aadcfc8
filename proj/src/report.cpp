#include "acb/report.hpp"

#include <cstdio>
#include <sstream>

namespace acb::cli {

std::string digest(const std::string& bytes) {
    std::uint64_t h = 0xcbf29ce484222325ull;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 0x100000001b3ull;
    }
    char buf[32];
    std::snprintf(buf, sizeof buf, "fnv1a64:%016llx", static_cast<unsigned long long>(h));
    return buf;
}

json complex_json(cplx z) { return json::array({z.real(), z.imag()}); }

json complex_json(std::span<const cplx> v) {
    json a = json::array();
    for (cplx z : v) a.push_back(complex_json(z));
    return a;
}

json new_report(const std::string& command, const std::string& input_name, const std::string& input_text,
                std::uint64_t seed) {
    json r;
    r["tool"] = kToolName;
    r["version"] = kToolVersion;
    r["command"] = command;
    r["input"] = {{"name", input_name}, {"digest", digest(input_text)}};
    r["seed"] = seed;
    r["checks"] = json::array();
    r["expectations"] = json::array();
    return r;
}

void finalize(json& report) {
    bool ok = true;
    for (const auto& c : report["checks"])
        if (c.value("asserted", false) && !c.value("pass", false)) ok = false;
    for (const auto& e : report["expectations"])
        if (!e.value("pass", false)) ok = false;
    report["status"] = ok ? "pass" : "fail";
}

namespace {

bool is_scalar_array(const json& j) {
    if (!j.is_array()) return false;
    for (const auto& e : j)
        if (e.is_structured()) return false;
    return true;
}

void render_text(std::ostringstream& o, const json& j, int indent) {
    const std::string pad(static_cast<std::size_t>(indent), ' ');
    if (j.is_object()) {
        for (const auto& [k, v] : j.items()) {
            o << pad << k << ":";
            if (v.is_structured() && !is_scalar_array(v)) {
                o << "\n";
                render_text(o, v, indent + 2);
            } else {
                o << " " << (v.is_string() ? v.get<std::string>() : v.dump()) << "\n";
            }
        }
    } else if (j.is_array()) {
        for (const auto& v : j) {
            if (v.is_structured() && !is_scalar_array(v)) {
                o << pad << "-\n";
                render_text(o, v, indent + 2);
            } else {
                o << pad << "- " << (v.is_string() ? v.get<std::string>() : v.dump()) << "\n";
            }
        }
    } else {
        o << pad << (j.is_string() ? j.get<std::string>() : j.dump()) << "\n";
    }
}

} // namespace

std::string render(const json& report, const std::string& format) {
    if (format == "json") return report.dump(2) + "\n";
    std::ostringstream o;
    render_text(o, report, 0);
    return o.str();
}

} // namespace acb::cli
