#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "acb/calculus.hpp"
#include "acb/structure_file.hpp"

using namespace acb;

namespace {

Expression E(const std::string& s) { return cli::parse_expression(s, {"z", "w"}); }

std::vector<cplx> random_point(std::mt19937_64& rng, int n, double scale = 1.0) {
    std::uniform_real_distribution<double> U(-scale, scale);
    std::vector<cplx> p;
    for (int k = 0; k < n; ++k) p.emplace_back(U(rng), U(rng));
    return p;
}

} // namespace

TEST(Coeff, GaussianArithmetic) {
    Cq a(mpq_class(1, 2), mpq_class(-3, 4));
    Cq b(2, 1);
    EXPECT_EQ(a * b, Cq(mpq_class(7, 4), mpq_class(-1)));
    EXPECT_EQ((a / b) * b, a);
    EXPECT_EQ(Cq::i() * Cq::i(), Cq(-1));
    EXPECT_EQ(a.conj().conj(), a);
    EXPECT_EQ(Cq::parse_rational("-6/4"), Cq(mpq_class(-3, 2)));
}

TEST(Polynomial, ProductAndConjugate) {
    auto z = Polynomial::var(2, 0), zb = Polynomial::var(2, 0, true), w = Polynomial::var(2, 1);
    auto p = (z + w) * (z - w);
    EXPECT_EQ(p, z * z - w * w);
    EXPECT_EQ((z * zb).conj(), z * zb);
    EXPECT_TRUE((z * zb).terms().begin()->first.is_radial());
    EXPECT_EQ(p.degree(), 2);
    EXPECT_EQ((z + Polynomial(2, Cq(3))).min_degree(), 0);
}

TEST(Polynomial, RadicandRule) {
    EXPECT_TRUE(E("2 + abs2(z)^2").as_polynomial().is_radicand());
    EXPECT_TRUE(E("1/3 + abs2(z)*abs2(w)").as_polynomial().is_radicand());
    EXPECT_FALSE(E("abs2(z)").as_polynomial().is_radicand());      // no constant
    EXPECT_FALSE(E("1 - abs2(z)").as_polynomial().is_radicand());  // negative coefficient
    EXPECT_FALSE(E("1 + z").as_polynomial().is_radicand());        // not radial
    EXPECT_FALSE(E("i + abs2(z)").as_polynomial().is_radicand());  // complex constant
}

TEST(Polynomial, ArityMismatchThrows) {
    Polynomial p(2);
    EXPECT_THROW(p.add_term(ConjMonomial(3), Cq(1)), std::invalid_argument);
}

TEST(Expression, SquareOfRootIsRadicand) {
    auto s = E("sqrt(2 + abs2(z)^2)");
    EXPECT_EQ(s * s, E("2 + abs2(z)^2"));
    EXPECT_EQ(E("sqrt(4)"), Expression(2, Cq(2)));
    EXPECT_EQ(E("sqrt(9/4)") * Expression(2, Cq(2)), Expression(2, Cq(3)));
    EXPECT_FALSE(E("sqrt(2)").is_polynomial());
}

TEST(Expression, EvaluateMatchesDefinition) {
    std::mt19937_64 rng(7);
    auto e = E("(1 + i*z*conj(w))^2 * sqrt(2 + abs2(z)^2) - 3/4*abs2(w)");
    for (int t = 0; t < 20; ++t) {
        auto p = random_point(rng, 2);
        cplx z = p[0], w = p[1];
        cplx want = std::pow(1.0 + cplx(0, 1) * z * std::conj(w), 2) * std::sqrt(2.0 + std::pow(std::norm(z), 2)) -
                    0.75 * std::norm(w);
        EXPECT_LT(std::abs(e.evaluate(p) - want), 1e-12);
    }
}

TEST(Calculus, WirtingerMatchesFiniteDifferences) {
    std::mt19937_64 rng(11);
    const std::vector<std::string> cases{"z^3*conj(w) + i*abs2(z)", "abs2(z)*sqrt(2 + abs2(z)^2)*conj(w)",
                                         "sqrt(1 + abs2(w))*sqrt(3 + abs2(z)^3)*z", "conj(z)^4*sqrt(2+abs2(z)^4)"};
    const double h = 1e-5;
    for (const auto& s : cases) {
        auto e = E(s);
        for (int t = 0; t < 5; ++t) {
            auto p = random_point(rng, 2, 0.9);
            for (int k = 0; k < 2; ++k) {
                auto shift = [&](cplx d) {
                    auto q = p;
                    q[k] += d;
                    return e.evaluate(q);
                };
                cplx dx = (shift(h) - shift(-h)) / (2 * h);
                cplx dy = (shift(cplx(0, h)) - shift(cplx(0, -h))) / (2 * h);
                cplx dz = 0.5 * (dx - cplx(0, 1) * dy), dzb = 0.5 * (dx + cplx(0, 1) * dy);
                EXPECT_LT(std::abs(wirtinger_d(e, k, false).evaluate(p) - dz), 1e-7) << s;
                EXPECT_LT(std::abs(wirtinger_d(e, k, true).evaluate(p) - dzb), 1e-7) << s;
            }
        }
    }
}

TEST(Calculus, WirtingerOfPolynomialIsExact) {
    auto d = wirtinger_d(E("z^2*conj(z)*w"), 0, true);
    EXPECT_TRUE(d.den.is_one());
    EXPECT_EQ(d.num, E("z^2*w"));
    EXPECT_TRUE(d.equals(E("z^2*w")));
}

TEST(Calculus, SurdArithmetic) {
    auto a = SurdSum::sqrt_of(8);  // 2 sqrt 2
    auto b = SurdSum::sqrt_of(mpq_class(1, 2));
    EXPECT_EQ(a.terms().size(), 1u);
    EXPECT_EQ(a.terms().begin()->first, 2);
    EXPECT_EQ((a * b).as_rational(), std::optional<Cq>(Cq(2)));
    auto c = a;
    c += b;
    EXPECT_NEAR(c.to_complex().real(), 2.5 * std::sqrt(2.0), 1e-15);
}

TEST(Calculus, TaylorOfRootMatchesBinomialSeries) {
    // sqrt(2 + t) = sqrt2 (1 + t/4 - t^2/32 + ...), t = |z|^2
    auto t = taylor_coeffs(E("sqrt(2 + abs2(z))"), 4);
    ConjMonomial m1(2), m2(2);
    m1.set(0, 1, 1);
    m2.set(0, 2, 2);
    auto c1 = taylor_coefficient(t, m1), c2 = taylor_coefficient(t, m2);
    EXPECT_NEAR(c1.to_complex().real(), std::sqrt(2.0) / 4, 1e-15);
    EXPECT_NEAR(c2.to_complex().real(), -std::sqrt(2.0) / 32, 1e-15);
    EXPECT_EQ(taylor_coefficient(t, ConjMonomial(2)), SurdSum::sqrt_of(2));
}

TEST(Calculus, SmoothDivision) {
    auto r = smooth_div(E("abs2(z)^2*sqrt(2 + abs2(z)^2)"), 0);
    ASSERT_EQ(r.verdict, DivVerdict::Divisible);
    EXPECT_EQ(r.quotient, E("abs2(z)*conj(z)*sqrt(2 + abs2(z)^2)"));

    r = smooth_div(E("conj(z)^4*sqrt(2 + abs2(z)^4)"), 0);
    EXPECT_EQ(r.verdict, DivVerdict::NotDivisible);
    EXPECT_EQ(r.witness, E("conj(z)^4*sqrt(2 + abs2(z)^4)"));

    EXPECT_EQ(smooth_div(E("w*conj(z)"), 1).verdict, DivVerdict::Divisible);
    EXPECT_EQ(smooth_div_monomial(E("abs2(z)*conj(z)*w"), 0, 1, 2).verdict, DivVerdict::Divisible);
    EXPECT_EQ(smooth_div_monomial(E("abs2(z)*w"), 0, 1, 2).verdict, DivVerdict::NotDivisible);
}

TEST(Calculus, SmoothDivisionAcrossRadicals) {
    // conj(z) (sqrt(1+|z|^2) - sqrt(1+2|z|^2)) = -conj(z)|z|^2 / (sum of roots): divisible,
    // but the quotient has no closed form here.
    auto r = smooth_div(E("conj(z)*sqrt(1 + abs2(z)) - conj(z)*sqrt(1 + 2*abs2(z))"), 0);
    EXPECT_EQ(r.verdict, DivVerdict::Unknown);
    // Restriction to z = 0 is conj(z)(sqrt(1+|w|^2) - 1): not divisible.
    r = smooth_div(E("conj(z)*sqrt(1 + abs2(w)) - conj(z)*sqrt(1 + abs2(z))"), 0);
    EXPECT_EQ(r.verdict, DivVerdict::NotDivisible);
    // Proportional radicands defeat the independence argument.
    r = smooth_div(E("conj(z)*sqrt(2 + 2*abs2(w)) + conj(z)*sqrt(1 + abs2(w))*sqrt(3+abs2(z))"), 0);
    EXPECT_EQ(r.verdict, DivVerdict::Unknown);
}

TEST(Calculus, ChartSubstitution) {
    // chart 1: z -> z, w -> z w
    EXPECT_EQ(substitute_chart(E("abs2(w) + z*conj(w)"), 0), E("abs2(z)*abs2(w) + abs2(z)*conj(w)"));
    EXPECT_EQ(substitute_chart(E("sqrt(2 + abs2(w)^2)"), 0), E("sqrt(2 + abs2(z)^2*abs2(w)^2)"));
    // chart 2: z -> w z, w -> w
    EXPECT_EQ(substitute_chart(E("z"), 1), E("z*w"));
}

TEST(Calculus, SubstituteRejectsBrokenRadicand) {
    std::vector<Polynomial> images{Polynomial::var(2, 0) + Polynomial::var(2, 1), Polynomial::var(2, 1)};
    EXPECT_THROW(substitute(E("sqrt(1 + abs2(z))"), images), std::invalid_argument);
}
