#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "acb/corpus.hpp"
#include "acb/forms.hpp"
#include "acb/probe.hpp"

using namespace acb;
using namespace acb::num;

namespace {

Expression E(const std::string& s) { return cli::parse_expression(s, {"z", "w"}); }

cli::StructureFile fixture(const std::string& name) {
    return cli::parse_structure(corpus::read_file(std::string(ACB_FIXTURE_DIR) + "/" + name + ".acs"));
}

cplx fd_first(const Expression& e, std::vector<double> x, int k, double h = 1e-5) {
    auto at = [&](double d) {
        auto y = x;
        y[k] += d;
        return e.evaluate(to_complex(y));
    };
    // Richardson on central differences.
    cplx d1 = (at(h) - at(-h)) / (2 * h);
    cplx d2 = (at(h / 2) - at(-h / 2)) / h;
    return (4.0 * d2 - d1) / 3.0;
}

cplx fd_second(const Expression& e, std::vector<double> x, int a, int b, double h = 1e-4) {
    auto at = [&](double da, double db) {
        auto y = x;
        y[a] += da;
        y[b] += db;
        return e.evaluate(to_complex(y));
    };
    return (at(h, h) - at(h, -h) - at(-h, h) + at(-h, -h)) / (4 * h * h);
}

MultiIndex unit(int n, int k) {
    MultiIndex m(n, 0);
    m[k] = 1;
    return m;
}

} // namespace

TEST(Jet, LayoutAndProducts) {
    auto L = jet_layout(2, 2);
    EXPECT_EQ(L->size(), 6u);
    auto x = Jet::variable(L, 0, 1.5), y = Jet::variable(L, 1, -2.0);
    Jet p = x * y;
    EXPECT_EQ(p.value(), cplx(-3.0));
    EXPECT_EQ(p.partial({1, 1}), cplx(1.0));
    EXPECT_EQ(p.partial({1, 0}), cplx(-2.0));
    EXPECT_EQ(p.partial({2, 0}), cplx(0.0));
}

TEST(Jet, ElementaryFunctionsInvertEachOther) {
    auto L = jet_layout(2, 4);
    Jet x = Jet::variable(L, 0, 0.7) + Jet::variable(L, 1, 0.3) * Jet::variable(L, 1, 0.3) + cplx(0.5);
    for (const auto& [a, b] : {std::pair{exp(log(x)), x}, std::pair{sqrt(x) * sqrt(x), x},
                               std::pair{reciprocal(x) * x, Jet::constant(L, 1.0)}, std::pair{pow(x, 3), x * x * x},
                               std::pair{x / x, Jet::constant(L, 1.0)}})
        for (std::size_t i = 0; i < L->size(); ++i) EXPECT_LT(std::abs(a.coeffs()[i] - b.coeffs()[i]), 1e-12);
}

TEST(Jet, DerivativeLowersOrder) {
    auto L = jet_layout(2, 3);
    Jet x = Jet::variable(L, 0, 0.4), y = Jet::variable(L, 1, -0.2);
    Jet f = exp(x * y) + pow(x, 3);
    Jet d = f.derivative(0);
    EXPECT_EQ(d.order(), 2);
    // d/dx f = y e^{xy} + 3 x^2
    EXPECT_NEAR(std::abs(d.value() - (-0.2 * std::exp(-0.08) + 3 * 0.16)), 0.0, 1e-14);
    EXPECT_LT(std::abs(d.partial({1, 1}) - f.partial({2, 1})), 1e-12);
}

TEST(Jet, ExpressionJetsMatchFiniteDifferences) {
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> U(-0.8, 0.8);
    for (const char* s : {"z^2*conj(w) + i*abs2(z)*w", "abs2(z)*sqrt(2 + abs2(z)^2)", "sqrt(2+abs2(z)^4)*conj(z)^3*conj(w)",
                          "sqrt(1 + abs2(w))*z - 3*abs2(w)^2"}) {
        auto e = E(s);
        for (int t = 0; t < 4; ++t) {
            std::vector<double> x{U(rng), U(rng), U(rng), U(rng)};
            Jet j = jet_eval(e, x, 2);
            EXPECT_LT(std::abs(j.value() - e.evaluate(to_complex(x))), 1e-14);
            for (int k = 0; k < 4; ++k) {
                EXPECT_LT(std::abs(j.partial(unit(4, k)) - fd_first(e, x, k)), 1e-8) << s;
                for (int m = k; m < 4; ++m) {
                    MultiIndex mi(4, 0);
                    mi[k] += 1;
                    mi[m] += 1;
                    EXPECT_LT(std::abs(j.partial(mi) - fd_second(e, x, k, m)), 2e-6) << s;
                }
            }
        }
    }
}

TEST(Jet, PolynomialPartialsAreExact) {
    // d_x = d_z + d_zbar, so d_x (z^2 conj(z)) = 2 z zbar + z^2; the third x-derivative is 6.
    auto e = E("z^2*conj(z)");
    std::vector<double> x{0.3, -0.4, 0.0, 0.0};
    Jet j = jet_eval(e, x, 3);
    cplx z(0.3, -0.4);
    EXPECT_LT(std::abs(j.partial({1, 0, 0, 0}) - (2.0 * z * std::conj(z) + z * z)), 1e-15);
    EXPECT_LT(std::abs(j.partial({3, 0, 0, 0}) - cplx(6.0)), 1e-14);
}

TEST(Forms, BasisOrdering) {
    const auto& B = form_basis(4, 2);
    ASSERT_EQ(B.size(), 6u);
    EXPECT_EQ(B[0], (std::vector<int>{0, 1}));
    EXPECT_EQ(B[1], (std::vector<int>{0, 2}));
    EXPECT_EQ(B[5], (std::vector<int>{2, 3}));
}

TEST(Forms, ExteriorDerivativeSquaresToZero) {
    auto f = function_form(4, field_of(E("abs2(z)*sqrt(2 + abs2(w)^2) + z*conj(w)^2")));
    auto dd = exterior_d(exterior_d(f));
    EXPECT_EQ(dd.degree, 2);
    std::vector<double> x{0.2, -0.1, 0.5, 0.3};
    EXPECT_LT(norm(dd.evaluate(x)), 1e-13);
}

TEST(Forms, ExteriorDerivativeOfOneForm) {
    // d(x du) = dx ^ du
    Form a{4, 1, [](std::span<const double> x, int order) {
               auto c = coordinate_jets(x, order);
               Jet zero(c.front().layout_ptr());
               return std::vector<Jet>{zero, zero, c[0], zero};
           }};
    auto d = exterior_d(a).evaluate(std::vector<double>{0.3, 0.1, -0.2, 0.7});
    std::vector<cplx> want{0, 1, 0, 0, 0, 0};
    for (int i = 0; i < 6; ++i) EXPECT_LT(std::abs(d[i] - want[i]), 1e-15);
}

TEST(Forms, DdbarOfNormSquared) {
    // i d'd''(|z|^2 + |w|^2) = 2 (dx^dy + du^dv)
    auto w = i_ddbar(4, field_of(E("abs2(z) + abs2(w)"))).evaluate(std::vector<double>{0.1, 0.2, 0.3, 0.4});
    std::vector<cplx> want{2, 0, 0, 0, 0, 2};
    for (int i = 0; i < 6; ++i) EXPECT_LT(std::abs(w[i] - want[i]), 1e-14);
}

TEST(Forms, TypeProjectionsSum) {
    // d = d' + d'' on functions; projections on 2-forms add up to the identity.
    auto F = field_of(E("z^2*conj(w) + abs2(z)*w"));
    auto f = function_form(4, F);
    std::vector<double> x{0.3, 0.2, -0.4, 0.6};
    auto d = exterior_d(f).evaluate(x), a = dprime(f).evaluate(x), b = ddoubleprime(f).evaluate(x);
    for (int i = 0; i < 4; ++i) EXPECT_LT(std::abs(d[i] - a[i] - b[i]), 1e-14);
    Form two = exterior_d(Form{4, 1, [F](std::span<const double> y, int order) {
                                   auto c = coordinate_jets(y, order);
                                   return std::vector<Jet>{F(y, order), c[2] * c[1], c[3], c[0] * c[0]};
                               }});
    auto t = two.evaluate(x);
    auto s = sum(sum(project_type(two, 2, 0), project_type(two, 1, 1)), project_type(two, 0, 2)).evaluate(x);
    for (int i = 0; i < 6; ++i) EXPECT_LT(std::abs(t[i] - s[i]), 1e-13);
}

TEST(Forms, AntiInvariantPartIsIdempotentAndAnti) {
    auto J = fixture("example3").J;
    auto MJ = matrix_field(J);
    Form a = i_ddbar(4, field_of(E("abs2(z)^2 + z*conj(w) + conj(z)*w + abs2(w)")));
    Form m = anti_invariant_part(a, MJ);
    Form mm = anti_invariant_part(m, MJ);
    std::vector<double> x{0.3, -0.5, 0.2, 0.4};
    auto c1 = m.evaluate(x), c2 = mm.evaluate(x);
    for (int i = 0; i < 6; ++i) EXPECT_LT(std::abs(c1[i] - c2[i]), 1e-13);
    // m(JX, JY) = -m(X, Y)
    auto M = matrix_value(MJ, x);
    std::vector<double> X{1, 0.5, -0.2, 0.3}, Y{0.1, -1, 0.7, 0.2}, JX(4, 0.0), JY(4, 0.0);
    for (int r = 0; r < 4; ++r)
        for (int s = 0; s < 4; ++s) {
            JX[r] += M[r * 4 + s] * X[s];
            JY[r] += M[r * 4 + s] * Y[s];
        }
    EXPECT_NEAR(two_form_pair(c1, 4, JX, JY), -two_form_pair(c1, 4, X, Y), 1e-13);
    EXPECT_GT(norm(c1), 1e-3);
}

TEST(Forms, StandardFormIsInvariantAndPositive) {
    Form w0{4, 2, [](std::span<const double> x, int order) {
                auto c = coordinate_jets(x, order);
                auto L = c.front().layout_ptr();
                Jet z(L), one = Jet::constant(L, 1.0);
                return std::vector<Jet>{one, z, z, z, z, one};
            }};
    auto J = matrix_field(ACStructure::standard(2));
    EXPECT_LT(norm(anti_invariant_part(w0, J).evaluate(std::vector<double>{0.1, 0.2, 0.3, 0.4})), 1e-15);
    auto p = positivity_sample(w0, J, Region{}, 200, 9);
    EXPECT_TRUE(p.pass);
    EXPECT_NEAR(p.min_ratio, 1.0, 1e-12);
}

TEST(Forms, BoundFit) {
    std::vector<std::pair<double, double>> s;
    for (double r : {1e-2, 1e-3, 1e-4}) s.emplace_back(r, 5.0 * r * r * r);
    auto f = bound_fit(s);
    EXPECT_NEAR(f.slope, 3.0, 1e-12);
    EXPECT_NEAR(f.intercept, std::log(5.0), 1e-10);
    EXPECT_TRUE(f.pass);
    EXPECT_THROW(bound_fit({{1e-2, 1.0}, {1e-3, 1.0}}), std::invalid_argument);
    EXPECT_THROW(bound_fit({{1e-2, 1.0}, {1e-4, 0.0}}), std::invalid_argument);
}

TEST(Forms, HaltonIsDeterministic) {
    auto a = halton_points(3, 50, 17), b = halton_points(3, 50, 17), c = halton_points(3, 50, 18);
    EXPECT_EQ(a, b);
    EXPECT_NE(a, c);
    for (const auto& p : a)
        for (double v : p) {
            EXPECT_GE(v, 0.0);
            EXPECT_LT(v, 1.0);
        }
}

TEST(Probe, SmoothFunctionsAreSmooth) {
    const char* cases[] = {"1",
                           "z",
                           "conj(z)",
                           "abs2(z)",
                           "z^2*conj(w)",
                           "sqrt(2 + abs2(z)^2)",
                           "sqrt(1 + abs2(z)*abs2(w))*w",
                           "abs2(z)^3 - i*conj(z)^2",
                           "conj(z)^5 + z^4*w",
                           "sqrt(3 + abs2(z))*sqrt(2 + abs2(w))",
                           "i*w*conj(w)",
                           "(1 + z)^4",
                           "abs2(z)*conj(z)*sqrt(2+abs2(z)^4)",
                           "z*conj(z)^2*w",
                           "2/3*conj(z)^3*w^2",
                           "sqrt(5 + abs2(z)^3)",
                           "(z + conj(z))^3",
                           "abs2(w)^2*z",
                           "z^6",
                           "1 + abs2(z) + abs2(z)^2"};
    std::vector<cplx> base{0.0, {0.3, 0.2}};
    for (const char* s : cases) {
        auto r = divisor_smoothness_fixture(E(s), 0, 0, base);
        EXPECT_EQ(r.verdict, ProbeVerdict::Smooth) << s;
    }
    // Divisible numerators divided by z are smooth as well.
    auto r = divisor_smoothness_fixture(E("abs2(z)*w + z^2"), 0, -1, base);
    EXPECT_EQ(r.verdict, ProbeVerdict::Smooth);
}

TEST(Probe, CalibratedFailureOrders) {
    std::vector<cplx> base{0.0, {0.3, 0.2}};
    auto r = divisor_smoothness_fixture(E("conj(z)"), 0, -1, base);
    EXPECT_EQ(r.verdict, ProbeVerdict::Singular);
    r = divisor_smoothness_fixture(E("conj(z)^2"), 0, -1, base);
    EXPECT_EQ(r.verdict, ProbeVerdict::ContinuousOnly);
    EXPECT_EQ(r.first_bad_order, 1);
    r = divisor_smoothness_fixture(E("conj(z)^4*sqrt(2 + abs2(z)^4)"), 0, -1, base);
    EXPECT_EQ(r.verdict, ProbeVerdict::ContinuousOnly);
    EXPECT_EQ(r.first_bad_order, 3);
    r = divisor_smoothness_fixture(E("-2*i*(z - conj(z))"), 0, -1, base);
    EXPECT_EQ(r.verdict, ProbeVerdict::Singular);
}

TEST(Probe, RejectsBadBase) {
    EXPECT_THROW(divisor_smoothness_fixture(E("z"), 0, 0, std::vector<cplx>{0.0}), std::invalid_argument);
}
