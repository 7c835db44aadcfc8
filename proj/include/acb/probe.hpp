#pragma once

#include <string>
#include <vector>

#include "acb/jet.hpp"

namespace acb::num {

enum class ProbeVerdict { Smooth, ContinuousOnly, Singular, Inconclusive };
const char* to_string(ProbeVerdict v);

struct ProbeOrder {
    int order = 0;
    std::vector<double> spread;   // per radius
    double spread_limit = 0.0;    // extrapolated to r -> 0
    double magnitude_first = 0.0; // |D_k| at the largest radius
    double magnitude_last = 0.0;  // |D_k| at the smallest radius
    bool diverges = false;
};

struct ProbeOptions {
    int max_order = 3;
    int rays = 16;
    std::vector<double> radii{1e-2, 1e-3, 1e-4, 1e-5, 1e-6};
    double tol = 1e-2;
};

struct ProbeReport {
    ProbeVerdict verdict = ProbeVerdict::Inconclusive;
    int first_bad_order = -1;
    std::vector<ProbeOrder> orders;
    cplx limit = 0.0; // value along the first ray at the smallest radius
};

// Samples f along rays z_j = r e^{i theta} with the other chart coordinates
// fixed at `base`, and compares the (x_j, y_j)-derivatives across directions.
ProbeReport probe_divisor(const Field& f, int n, int j, std::span<const cplx> base, const ProbeOptions& opt = {});

// Probe of num * z_j^power, the shape of every flagged blow-up entry.
ProbeReport divisor_smoothness_fixture(const Expression& num, int j, int power, std::span<const cplx> base,
                                       const ProbeOptions& opt = {});

} // namespace acb::num
