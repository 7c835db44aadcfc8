#pragma once

#include <cstdint>
#include <vector>

#include "acb/blowup.hpp"
#include "acb/jet.hpp"

namespace acb::num {

// Real 2n x 2n matrix of an almost complex structure as jets, row-major.
using MatrixField = std::function<std::vector<Jet>(std::span<const double> x, int order)>;
MatrixField matrix_field(const ACStructure& J);
MatrixField matrix_field(const ChartStructure& cs);
std::vector<double> matrix_value(const MatrixField& J, std::span<const double> x);

// N(X, Y) for constant real X, Y, via jets of J. Real 2n-vector.
std::vector<double> nijenhuis_jet(const MatrixField& J, std::span<const double> x, std::span<const double> X,
                                  std::span<const double> Y);

// k-subsets of {0..dim-1} in lexicographic order.
const std::vector<std::vector<int>>& form_basis(int dim, int k);

// Differential k-form on R^dim; `eval` returns coefficient jets on form_basis(dim, k).
struct Form {
    using Eval = std::function<std::vector<Jet>(std::span<const double> x, int order)>;
    int dim = 0;
    int degree = 0;
    Eval eval;

    std::vector<cplx> evaluate(std::span<const double> x) const;
};

Form function_form(int dim, Field f);
Form exterior_d(const Form& a);
// Component of type (p, q) in the standard complex structure of R^dim = C^(dim/2).
Form project_type(const Form& a, int p, int q);
Form dprime(const Form& a);
Form ddoubleprime(const Form& a);
// i d' d'' F
Form i_ddbar(int dim, Field F);

// (J alpha)(X, Y) = alpha(JX, JY) for a 2-form.
Form j_action(const Form& a, MatrixField J);
// (alpha - J alpha) / 2.
Form anti_invariant_part(const Form& a, MatrixField J);
Form scale(const Form& a, cplx s);
Form sum(const Form& a, const Form& b);

double two_form_pair(std::span<const cplx> coeffs, int dim, std::span<const double> X, std::span<const double> Y);
double norm(std::span<const cplx> coeffs);

struct Region {
    int n = 2;
    int j = 0;           // divisor variable
    double r_min = 1e-4; // |z_j| range
    double r_max = 1e-2;
    double w_max = 1.0;  // |w_i| bound, i != j
};

struct PositivityReport {
    double min_ratio = 0.0;
    std::vector<double> argmin;
    std::size_t samples = 0;
    bool pass = false;
};
// min over sampled (x, v) of Omega(v, Jv) / |v|^2.
PositivityReport positivity_sample(const Form& omega, const MatrixField& J, const Region& region,
                                   std::size_t samples, std::uint64_t seed);

struct FitReport {
    double slope = 0.0;
    double intercept = 0.0;
    bool pass = false;
};
// Least squares fit of log|value| against log|z|; needs at least two decades.
FitReport bound_fit(const std::vector<std::pair<double, double>>& samples, double min_slope = 0.9);

// Quasi-random points in [0,1)^dim, shifted by a seed-derived offset.
std::vector<std::vector<double>> halton_points(int dim, std::size_t count, std::uint64_t seed);

} // namespace acb::num
