#pragma once

#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "acb/acs.hpp"

namespace acb::cli {

class ParseError : public std::runtime_error {
public:
    ParseError(int line, int column, const std::string& msg);
    int line() const { return line_; }
    int column() const { return column_; }

private:
    int line_;
    int column_;
};

struct StructureFile {
    std::string name;
    int n = 0;
    std::vector<std::string> vars;
    ACStructure J;
    std::map<std::string, std::string> expect;

    friend bool operator==(const StructureFile&, const StructureFile&) = default;
};

std::vector<std::string> default_vars(int n);

// Throws ParseError. With verify, an involution failure is reported as a ParseError too.
StructureFile parse_structure(const std::string& text, bool verify = true);
// Parse a single expression over the given variable names.
Expression parse_expression(const std::string& text, const std::vector<std::string>& vars);

std::string print_structure(const StructureFile& f);
std::string print_expression(const Expression& e, const std::vector<std::string>& vars);
std::string print_polynomial(const Polynomial& p, const std::vector<std::string>& vars);
std::string print_cq(const Cq& c);

} // namespace acb::cli
