#pragma once

#include <array>
#include <cstdint>

#include <Eigen/Dense>

#include "acb/forms.hpp"
#include "acb/profile.hpp"

namespace acb::kahler {

using num::cplx;
using num::Form;

// Univariate profile as a jet in t.
using UnivariateFn = std::function<Jet(double t, int order)>;

// (c_zzbar, c_zwbar, c_wzbar, c_wwbar) with i d'd'' F = i sum c_ab dz_a ^ dzbar_b,
// F = f(|z|^2 (1 + |w|^2)) in chart 1.
std::array<cplx, 4> ddbar_coeffs_jet(const UnivariateFn& f, cplx z, cplx w);
std::array<cplx, 4> ddbar_coeffs_formula(const UnivariateFn& f, cplx z, cplx w);

struct DdbarReport {
    double max_residual = 0.0;
    std::size_t points = 0;
    bool pass = false;
};
DdbarReport ddbar_formula_check(const UnivariateFn& f, std::span<const std::array<cplx, 2>> points,
                                double tol = 1e-8);

// Real coefficients (on form_basis(4, 2)) of i sum c_ab dz_a ^ dzbar_b.
std::array<cplx, 6> hermitian_to_real(const std::array<cplx, 4>& c);

struct AntiGSInstance {
    Eigen::MatrixXd gram;    // SPD inner product
    Eigen::MatrixXd anti;    // projector onto anti-invariant part, self-adjoint for `gram`
    Eigen::MatrixXd vectors; // columns omega_1 .. omega_s
};
Eigen::MatrixXd anti_gs(const AntiGSInstance& inst);
AntiGSInstance random_anti_gs_instance(int dim, int count, std::uint64_t seed);

struct OmegaReport {
    Form omega;
    Form omega_minus;
    Form ddbar_part;
    double closedness = 0.0;
    num::PositivityReport positivity;
    num::FitReport fit;
    std::vector<std::pair<double, double>> fit_samples;
    double support_sup_t = 0.0; // largest t with (i d'd''F)^- above noise
    double support_sup_z = 0.0;
    bool support_ok = false;
};

struct OmegaOptions {
    num::Region region{2, 0, 1e-4, 1e-2, 1.0};
    std::size_t positivity_samples = 1000;
    int fit_radii = 9;
    int fit_points_per_radius = 24;
    std::size_t closedness_samples = 50;
    std::size_t support_samples = 400;
    std::uint64_t seed = 20240611;
};

// Omega = pi^* omega_0 + i d'd'' F in chart 1 of the blow-up of C^2,
// omega_0 = sum dx_k ^ dy_k, F = f(|z|^2 (1 + |w|^2)).
Form pullback_standard_form();
Form ddbar_profile_form(const Profile& p);
OmegaReport omega_assembly(const ACStructure& extended, const Profile& p, const OmegaOptions& opt = {});

} // namespace acb::kahler
