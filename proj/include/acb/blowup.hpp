#pragma once

#include <string>
#include <vector>

#include "acb/acs.hpp"

namespace acb {

// Chart j of the blow-up of C^n at the origin: p_j = z_j, p_i = z_j w_i.
// Chart variables keep the ambient indexing; variable j is z_j, the rest are w_i.
struct ChartMap {
    int n = 0;
    int j = 0;
    std::vector<Polynomial> position;  // p(zeta)
    std::vector<Polynomial> dp;        // complex Jacobian, row-major
    std::vector<Polynomial> dp_inv;    // numerator M with dp^{-1} = M / z_j

    std::vector<cplx> to_ambient(std::span<const cplx> zeta) const;
    std::vector<cplx> from_ambient(std::span<const cplx> p) const;
};
ChartMap chart_map(int n, int j);

// value = expr * z_j^flag with flag in {0, -1}.
struct ChartEntry {
    Expression lin;
    Expression anti;
    int lin_flag = 0;
    int anti_flag = 0;
};

struct ChartStructure {
    int n = 0;
    int j = 0;
    std::vector<ChartEntry> e;
    // For i != j, k != j: anti numerator = combination * zbar_j with
    // combination = A_ik(p) - w_i A_jk(p).
    std::vector<Expression> combination;

    const ChartEntry& at(int i, int k) const { return e[static_cast<std::size_t>(i * n + k)]; }
    ChartEntry& at(int i, int k) { return e[static_cast<std::size_t>(i * n + k)]; }
    bool has_poles() const;
    std::vector<cplx> apply(std::span<const cplx> zeta, std::span<const cplx> u) const;
};

ChartStructure transform(const ACStructure& J, int j);

enum class ExtVerdict { Extendable, NotExtendable, Unknown };
const char* to_string(ExtVerdict v);

struct ExtensionWitness {
    int i = 0;
    int k = 0;
    bool anti = false;
    bool via_combination = false;
    Expression divided;  // the object tested for divisibility by z_j
    Expression term;     // offending term
};

struct ExtensionReport {
    ExtVerdict verdict = ExtVerdict::Unknown;
    ACStructure extended;  // valid when Extendable
    std::vector<ExtensionWitness> witnesses;
};
ExtensionReport extension_test(const ChartStructure& cs);

struct FormCheckReport {
    bool shape_ok = false;      // lin = i Id, only the (j, other) anti entry nonzero
    bool b1_zero = false;
    bool divisible = false;     // B2 = |z|^2 zbar * Q
    bool constant_real = false; // Q(0) real
    bool pass = false;
    Expression b2;
    Expression quotient;        // C + H
    SurdSum constant;           // C
    std::string diagnostic;
};
// n = 2 only; `extended` is the extended structure in chart j.
FormCheckReport line_condition_form_check(const ACStructure& extended, int j);

struct LiftReport {
    bool ok = false;
    std::string diagnostic;
    int n = 0;
    int source = 0;
    int target = 0;
    std::vector<Cq> df0;        // row-major
    std::vector<Expression> Q;  // f_k(p(zeta)) / z_source

    std::vector<cplx> evaluate(std::span<const cplx> zeta) const;
    // Image of the divisor point with coordinates w (entry `source` ignored).
    std::vector<cplx> divisor_action(std::span<const cplx> w) const;
};
LiftReport lift_map(const std::vector<Expression>& f, int source_chart, int target_chart);

} // namespace acb
