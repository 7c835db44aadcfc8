#include <gtest/gtest.h>

#include <cmath>

#include "acb/acs.hpp"
#include "acb/corpus.hpp"
#include "acb/forms.hpp"

using namespace acb;

namespace {

cli::StructureFile fixture(const std::string& name) {
    return cli::parse_structure(corpus::read_file(std::string(ACB_FIXTURE_DIR) + "/" + name + ".acs"));
}

std::vector<double> real_of(const std::vector<cplx>& v) {
    std::vector<double> x;
    for (cplx c : v) {
        x.push_back(c.real());
        x.push_back(c.imag());
    }
    return x;
}

std::vector<double> real_of(const std::vector<Cq>& v) {
    std::vector<double> x;
    for (const auto& c : v) {
        x.push_back(c.to_complex().real());
        x.push_back(c.to_complex().imag());
    }
    return x;
}

} // namespace

TEST(Structure, FixturesAreInvolutions) {
    for (const char* n : {"standard", "example1", "example2", "example3", "obstructed"})
        EXPECT_TRUE(check_involution(fixture(n).J).pass) << n;
}

TEST(Structure, InvolutionFailureNamesEntries) {
    auto J = ACStructure::standard(2);
    J.anti(0, 0) = Expression::var(2, 0);  // A Abar != 0 on the diagonal
    auto r = check_involution(J);
    EXPECT_FALSE(r.pass);
    ASSERT_FALSE(r.failing.empty());
    EXPECT_EQ(r.failing.front(), "(1,1)");
}

TEST(Structure, RealMatrixSquaresToMinusIdentity) {
    auto J = fixture("example1").J;
    std::vector<cplx> p{{0.4, -0.3}, {0.7, 0.2}};
    auto M = real_matrix(J, p);
    for (int i = 0; i < 4; ++i)
        for (int k = 0; k < 4; ++k) {
            double s = 0;
            for (int m = 0; m < 4; ++m) s += M[i * 4 + m] * M[m * 4 + k];
            EXPECT_NEAR(s, i == k ? -1.0 : 0.0, 1e-12);
        }
}

TEST(LineConditions, NamedFixtures) {
    EXPECT_TRUE(weak_line_check(fixture("example1").J).pass);
    EXPECT_TRUE(weak_line_check(fixture("example2").J).pass);
    EXPECT_FALSE(line_check(fixture("example1").J).pass);
    EXPECT_TRUE(line_check(fixture("example3").J).pass);
    EXPECT_TRUE(line_check(fixture("standard").J).pass);
}

TEST(LineConditions, FailureCarriesWitness) {
    auto r = weak_line_check(fixture("obstructed").J, 5);
    EXPECT_FALSE(r.pass);
    ASSERT_EQ(r.witness_point.size(), 2u);
    // J p - i p at the witness, computed independently.
    auto J = fixture("obstructed").J;
    auto Jp = apply(J, r.witness_point, r.witness_point);
    double res = 0;
    for (int k = 0; k < 2; ++k) res = std::max(res, std::abs(Jp[k] - cplx(0, 1) * r.witness_point[k]));
    EXPECT_GT(res, 1e-9);
}

TEST(Nijenhuis, ExampleThreeAgainstIndependentOracle) {
    // Real-coordinate computation of N(d/dx, d/du) for Example III with a separate CAS.
    auto J = fixture("example3").J;
    auto N = nijenhuis(J, frame_vector(2, "x"), frame_vector(2, "u"));
    std::vector<cplx> p{{0.5, 1.0 / 3}, {-0.25, 0.4}};
    auto v = real_of(evaluate(N, p));
    const double want[] = {1.4697530864197531, -0.76018518518518519, 0.63037037037037037, 1.1356481481481481};
    for (int k = 0; k < 4; ++k) EXPECT_NEAR(v[k], want[k], 1e-13);
}

TEST(Nijenhuis, ExampleThreeOnTheLineWEqualsZero) {
    // N(d/dx, d/du) at (x, y, 0, 0) is -4 i z^2 d/dz, i.e. 8xy dx + 4(y^2 - x^2) dy.
    auto J = fixture("example3").J;
    auto N = nijenhuis(J, frame_vector(2, "x"), frame_vector(2, "u"));
    for (auto [x, y] : {std::pair{0.3, -0.7}, std::pair{1.1, 0.4}, std::pair{0.0, 0.0}}) {
        auto v = evaluate(N, std::vector<cplx>{{x, y}, 0.0});
        EXPECT_NEAR(v[0].real(), 8 * x * y, 1e-13);
        EXPECT_NEAR(v[0].imag(), 4 * (y * y - x * x), 1e-13);
        EXPECT_NEAR(std::abs(v[1]), 0.0, 1e-13);
    }
}

TEST(Nijenhuis, ExampleOneWithRadicalsAgainstOracle) {
    auto J = fixture("example1").J;
    std::vector<cplx> p{{0.5, 1.0 / 3}, {-0.25, 0.4}};
    struct Case {
        const char *a, *b;
        double v[4];
    };
    const Case cases[] = {{"x", "u", {0, 0, 2.1325680747926517, -1.8354819202008309}},
                          {"x", "y", {0, 0, 1.3777341929305160, 1.0409783609522001}},
                          {"y", "v", {0, 0, -0.39502473616193175, 3.1988521121889776}}};
    for (const auto& c : cases) {
        auto v = real_of(evaluate(nijenhuis(J, frame_vector(2, c.a), frame_vector(2, c.b)), p));
        for (int k = 0; k < 4; ++k) EXPECT_NEAR(v[k], c.v[k], 1e-13) << c.a << c.b;
    }
}

TEST(Nijenhuis, SymbolicAgreesWithJets) {
    for (const char* name : {"example1", "example2", "example3", "obstructed"}) {
        auto J = fixture(name).J;
        auto field = num::matrix_field(J);
        std::vector<cplx> p{{0.21, -0.35}, {0.6, 0.15}};
        auto x = real_of(p);
        for (auto [a, b] : {std::pair{"x", "v"}, std::pair{"y", "u"}}) {
            auto X = frame_vector(2, a), Y = frame_vector(2, b);
            auto sym = real_of(evaluate(nijenhuis(J, X, Y), p));
            auto jet = num::nijenhuis_jet(field, x, real_of(X), real_of(Y));
            for (int k = 0; k < 4; ++k) EXPECT_NEAR(sym[k], jet[k], 1e-12) << name;
        }
    }
}

TEST(Nijenhuis, IntegrableStructuresVanish) {
    auto J = fixture("obstructed").J;
    std::vector<cplx> p{{0.3, 0.2}, {-0.5, 0.9}};
    for (auto [a, b] : {std::pair{"x", "u"}, std::pair{"x", "y"}, std::pair{"y", "v"}}) {
        auto v = evaluate(nijenhuis(J, frame_vector(2, a), frame_vector(2, b)), p);
        for (cplx c : v) EXPECT_LT(std::abs(c), 1e-14);
    }
}

TEST(Nijenhuis, FrameNames) {
    EXPECT_EQ(frame_names(2), (std::vector<std::string>{"x", "y", "u", "v"}));
    EXPECT_EQ(frame_names(3).front(), "x1");
    EXPECT_EQ(frame_vector(2, "dv"), (std::vector<Cq>{Cq(0), Cq::i()}));
    EXPECT_THROW(frame_vector(2, "q"), std::invalid_argument);
}

TEST(Obstruction, ObstructedFlagsC2) {
    auto J = fixture("obstructed").J;
    ASSERT_TRUE(is_standard_at_origin(J));
    auto r = obstruction_relations(J);
    EXPECT_FALSE(r.all_pass);
    ASSERT_EQ(r.relations.front().name, "(c2)_zbar1");
    EXPECT_FALSE(r.relations.front().pass);
    EXPECT_EQ(r.relations.front().value.as_rational(), std::optional<Cq>(Cq(0, 2)));
    for (std::size_t k = 1; k < r.relations.size(); ++k) EXPECT_TRUE(r.relations[k].pass);
    // Integrable, so N(dzbar1, dzbar2) vanishes even though the relation fails.
    for (cplx c : r.n_dzbar12) EXPECT_LT(std::abs(c), 1e-14);
}

TEST(Obstruction, OffDiagonalLinearTermGivesNonzeroTensor) {
    // A_21 = zbar_2: not integrable at the origin.
    auto J = ACStructure::standard(2);
    J.anti(1, 0) = Expression::var(2, 1, true);
    ASSERT_TRUE(check_involution(J).pass);
    auto r = obstruction_relations(J);
    EXPECT_FALSE(r.all_pass);
    double s = 0;
    for (cplx c : r.n_dzbar12) s += std::abs(c);
    EXPECT_GT(s, 0.1);
}

TEST(Obstruction, RequiresStandardOrigin) {
    auto J = ACStructure::standard(2);
    J.lin(0, 0) = Expression(2, Cq(0, -1));
    J.lin(1, 1) = Expression(2, Cq(0, -1));
    EXPECT_FALSE(is_standard_at_origin(J));
    EXPECT_THROW(obstruction_relations(J), std::invalid_argument);
}
