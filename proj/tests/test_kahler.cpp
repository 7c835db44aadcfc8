#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "acb/corpus.hpp"
#include "acb/kahler.hpp"
#include "acb/structure_file.hpp"

using namespace acb;
using namespace acb::kahler;

namespace {

Jet tvar(double t, int order) { return Jet::variable(num::jet_layout(1, order), 0, t); }

const UnivariateFn kLog = [](double t, int o) { return num::log(tvar(t, o)); };
const UnivariateFn kSquare = [](double t, int o) { return tvar(t, o) * tvar(t, o); };
const UnivariateFn kExpNeg = [](double t, int o) { return num::exp(-tvar(t, o)); };
const UnivariateFn kIdentity = [](double t, int o) { return tvar(t, o); };
const UnivariateFn kSqrtOnePlus = [](double t, int o) { return num::sqrt(tvar(t, o) + 1.0); };

Eigen::MatrixXd nonzero_columns(const Eigen::MatrixXd& B) {
    std::vector<Eigen::Index> keep;
    for (Eigen::Index c = 0; c < B.cols(); ++c)
        if (B.col(c).norm() > 1e-12) keep.push_back(c);
    Eigen::MatrixXd out(B.rows(), static_cast<Eigen::Index>(keep.size()));
    for (std::size_t c = 0; c < keep.size(); ++c) out.col(static_cast<Eigen::Index>(c)) = B.col(keep[c]);
    return out;
}

} // namespace

TEST(SmoothStep, BoundaryValuesAndMonotone) {
    SmoothStep S(0.05);
    EXPECT_EQ(S.jet(-0.3, 2).value().real(), 0.0);
    EXPECT_EQ(S.jet(1.4, 2).value().real(), 1.0);
    EXPECT_NEAR(S.jet(0.0, 0).value().real(), 0.0, 1e-15);
    EXPECT_NEAR(S.jet(1.0, 0).value().real(), 1.0, 1e-12);
    double prev = 0.0;
    for (int k = 1; k <= 200; ++k) {
        const double t = k / 200.0;
        Jet j = S.jet(t, 2);
        EXPECT_GE(j.value().real(), prev - 1e-15);
        prev = j.value().real();
        EXPECT_LE(std::abs(j.coeffs()[1].real()), S.max_first() * (1 + 1e-9));
        EXPECT_LE(std::abs(2.0 * j.coeffs()[2].real()), S.max_second() * (1 + 1e-9));
    }
    EXPECT_THROW(SmoothStep(0.2), std::invalid_argument);
    EXPECT_THROW(SmoothStep(0.0), std::invalid_argument);
}

TEST(SmoothStep, DerivativesVanishAtEnds) {
    SmoothStep S(0.05);
    for (double t : {1e-9, 1.0 - 1e-9}) {
        Jet j = S.jet(t, 3);
        for (int l = 1; l <= 3; ++l) EXPECT_NEAR(std::abs(j.coeffs()[l]), 0.0, 1e-9);
    }
}

TEST(Profile, PiecewiseStructure) {
    auto p = Profile::build(0.01, 0.5);
    EXPECT_NEAR(p.eta(), 0.01 * std::exp(2.0), 1e-15);
    EXPECT_LE(p.slack(), 1.5);
    for (double x : {0.002, 0.005, 0.0099}) {
        EXPECT_NEAR(p.G(x, 0).value().real(), 1.0, 1e-14);
        EXPECT_NEAR(p.K(x, 0).value().real(), 0.0, 1e-12);
    }
    for (double x : {p.eta(), 0.1, 0.5}) {
        EXPECT_NEAR(p.G(x, 0).value().real(), 0.0, 1e-14);
        EXPECT_NEAR(p.gtilde(x, 0).value().real(), 0.0, 1e-14);
    }
    // K = G' and gtilde = G / x.
    for (double x : {0.012, 0.018, 0.03, 0.05, 0.07}) {
        EXPECT_NEAR(p.K(x, 0).value().real(), p.G(x, 1).coeffs()[1].real(), 1e-9);
        EXPECT_NEAR(p.gtilde(x, 0).value().real() * x, p.G(x, 0).value().real(), 1e-12);
    }
}

TEST(Profile, PrimitiveOfGtilde) {
    auto p = Profile::build(0.01, 0.5);
    for (double x : {0.003, 0.015, 0.025, 0.04, 0.06, 0.09}) {
        EXPECT_NEAR(p.f(x, 1).coeffs()[1].real(), p.gtilde(x, 0).value().real(), 1e-10);
        // Central difference of f against gtilde.
        const double h = 1e-6;
        const double g = p.gtilde(x, 0).value().real();
        EXPECT_NEAR((p.f_value(x + h) - p.f_value(x - h)) / (2 * h), g, 1e-6 * std::max(1.0, g));
    }
}

TEST(Profile, OdeResidual) {
    for (double eps : {0.3, 0.5}) {
        auto p = Profile::build(0.01, eps);
        EXPECT_LT(ode_residual(p, 10000), 1e-12) << eps;
    }
}

TEST(Profile, CaseBoundsHold) {
    for (auto [d, e] : {std::pair{0.01, 0.5}, std::pair{0.01, 0.3}, std::pair{0.001, 0.4}}) {
        auto p = Profile::build(d, e);
        auto r = gtilde_case_bounds(p, 2000);
        EXPECT_TRUE(r.pass);
        EXPECT_LT(r.middle_residual, 1e-12);
        EXPECT_EQ(r.bounds.size(), 4u);
        EXPECT_NEAR(r.printed_high_value, e * (1 + std::log(2.0)), 1e-15);
    }
}

TEST(Profile, RejectsBadParameters) {
    EXPECT_THROW(Profile::build(0.0, 0.5), std::invalid_argument);
    EXPECT_THROW(Profile::build(0.01, 1.2), std::invalid_argument);
    EXPECT_THROW(Profile::build(0.01, 0.9), std::invalid_argument);  // eta / 2 < 2 delta
}

TEST(Ddbar, AgainstIndependentOracle) {
    // Second Wirtinger derivatives of f(|z|^2 (1+|w|^2)) from a separate CAS.
    const cplx z(0.3, 0.1), w(-0.5, 0.2);
    struct Case {
        const UnivariateFn* f;
        std::array<cplx, 4> want;
    };
    const Case cases[] = {
        {&kLog, {0.0, 0.0, 0.0, 0.6009254251547383}},
        {&kSquare, {0.66564, cplx(-0.06708, 0.05676), cplx(-0.06708, -0.05676), 0.0316}},
        {&kExpNeg,
         {-0.9876063579473618, cplx(0.09952622211872639, -0.08421449563892232),
          cplx(0.09952622211872639, 0.08421449563892232), -0.08534837205447612}},
    };
    for (const auto& c : cases) {
        auto a = ddbar_coeffs_jet(*c.f, z, w), b = ddbar_coeffs_formula(*c.f, z, w);
        for (int k = 0; k < 4; ++k) {
            EXPECT_LT(std::abs(a[k] - c.want[k]), 1e-12);
            EXPECT_LT(std::abs(b[k] - c.want[k]), 1e-12);
        }
    }
}

TEST(Ddbar, FubiniStudyLimit) {
    for (double wr : {0.0, 0.5, 2.0}) {
        const cplx w(wr, -0.3);
        auto c = ddbar_coeffs_formula(kLog, 1e-5, w);
        EXPECT_NEAR(c[3].real(), 1.0 / std::pow(1 + std::norm(w), 2), 1e-12);
    }
}

TEST(Ddbar, HermitianToReal) {
    // i dz ^ dzbar = 2 dx ^ dy
    auto r = hermitian_to_real({1.0, 0.0, 0.0, 0.0});
    EXPECT_EQ(r[0], cplx(2.0));
    for (int k = 1; k < 6; ++k) EXPECT_EQ(r[k], cplx(0.0));
    // i (dz ^ dwbar + dw ^ dzbar) = 2 (dx ^ dv - dy ^ du)
    r = hermitian_to_real({0.0, 1.0, 1.0, 0.0});
    const cplx want[6] = {0.0, 0.0, 2.0, -2.0, 0.0, 0.0};
    for (int k = 0; k < 6; ++k) EXPECT_NEAR(std::abs(r[k] - want[k]), 0.0, 1e-15) << k;
}

TEST(Ddbar, FormulaMatchesJetsForProfiles) {
    auto p = Profile::build(0.01, 0.5);
    const UnivariateFn prof = [p](double t, int o) { return p.f(t, o); };
    std::mt19937_64 rng(2);
    std::uniform_real_distribution<double> U(-1, 1);
    std::vector<std::array<cplx, 2>> pts;
    for (int k = 0; k < 20; ++k) pts.push_back({cplx(0.15 * U(rng), 0.15 * U(rng)), cplx(U(rng), U(rng))});
    for (const auto* f : {&kLog, &kSquare, &kExpNeg, &kIdentity, &kSqrtOnePlus, &prof})
        EXPECT_TRUE(ddbar_formula_check(*f, pts, 1e-8).pass);
}

TEST(AntiGS, MatchesProjectionOracle) {
    for (int t = 0; t < 30; ++t) {
        const int dim = 2 + t % 7, count = 1 + t % dim;
        auto inst = random_anti_gs_instance(dim, count, 100 + t);
        auto out = anti_gs(inst);
        const auto& G = inst.gram;
        const auto& P = inst.anti;
        const auto& W = inst.vectors;
        for (int k = 0; k < count; ++k) {
            // Oracle: P w_k minus its G-orthogonal projection onto span{P w_n, n < k}.
            Eigen::VectorXd a = P * W.col(k);
            Eigen::MatrixXd B = nonzero_columns(P * W.leftCols(k));
            if (B.cols() > 0) {
                Eigen::MatrixXd gram = B.transpose() * G * B;
                Eigen::VectorXd rhs = B.transpose() * G * a;
                Eigen::VectorXd x = gram.completeOrthogonalDecomposition().solve(rhs);
                a -= B * x;
            }
            EXPECT_LT((P * out.col(k) - a).norm(), 1e-8 * std::max(1.0, a.norm()));
            // out_k - w_k lies in span{w_1 .. w_{k-1}}.
            if (k > 0) {
                Eigen::VectorXd d = out.col(k) - W.col(k);
                Eigen::VectorXd c = W.leftCols(k).colPivHouseholderQr().solve(d);
                EXPECT_LT((W.leftCols(k) * c - d).norm(), 1e-8 * std::max(1.0, d.norm()));
            }
        }
    }
}

TEST(AntiGS, RejectsDependentInput) {
    auto inst = random_anti_gs_instance(4, 2, 1);
    inst.vectors.col(1) = 2.0 * inst.vectors.col(0);
    EXPECT_THROW(anti_gs(inst), std::invalid_argument);
}

TEST(Omega, ExampleThreeRegularizedForm) {
    auto J = cli::parse_structure(corpus::read_file(std::string(ACB_FIXTURE_DIR) + "/example3.acs")).J;
    auto ext = extension_test(transform(J, 0));
    ASSERT_EQ(ext.verdict, ExtVerdict::Extendable);
    auto p = Profile::build(0.01, 0.3);
    OmegaOptions opt;
    opt.positivity_samples = 200;
    auto r = omega_assembly(ext.extended, p, opt);
    EXPECT_LT(r.closedness, 1e-8);
    EXPECT_TRUE(r.positivity.pass);
    EXPECT_GE(r.fit.slope, 0.9);
    EXPECT_TRUE(r.support_ok);
}

TEST(Omega, PullbackOnDivisor) {
    auto w = pullback_standard_form();
    // On z = 0: (1 + |w|^2) dx ^ dy, and the du ^ dv coefficient |z|^2 vanishes.
    auto c = w.evaluate(std::vector<double>{0.0, 0.0, 0.4, -0.3});
    EXPECT_NEAR(c[0].real(), 1.25, 1e-14);
    EXPECT_NEAR(std::abs(c[5]), 0.0, 1e-15);
    auto d = num::exterior_d(w).evaluate(std::vector<double>{0.2, 0.1, 0.4, -0.3});
    EXPECT_LT(num::norm(d), 1e-12);
}

TEST(Omega, RegionOutsideChartIsRejected) {
    auto J = cli::parse_structure(corpus::read_file(std::string(ACB_FIXTURE_DIR) + "/example3.acs")).J;
    auto ext = extension_test(transform(J, 0));
    OmegaOptions opt;
    opt.region.r_max = 0.9;
    opt.region.w_max = 2.0;
    EXPECT_THROW(omega_assembly(ext.extended, Profile::build(0.01, 0.3), opt), std::invalid_argument);
}
