#include "acb/acs.hpp"

#include <cmath>
#include <random>
#include <stdexcept>

namespace acb {

ACStructure::ACStructure(int n) : n_(n), e_(static_cast<std::size_t>(n * n)) {
    for (auto& x : e_) {
        x.lin = Expression(n);
        x.anti = Expression(n);
    }
}

ACStructure ACStructure::standard(int n) {
    ACStructure J(n);
    for (int i = 0; i < n; ++i) J.lin(i, i) = Expression(n, Cq::i());
    return J;
}

bool ACStructure::is_polynomial() const {
    for (const auto& x : e_)
        if (!x.lin.is_polynomial() || !x.anti.is_polynomial()) return false;
    return true;
}

std::vector<cplx> apply(const ACStructure& J, std::span<const cplx> p, std::span<const cplx> u) {
    const int n = J.n();
    std::vector<cplx> out(n, 0.0);
    for (int i = 0; i < n; ++i)
        for (int k = 0; k < n; ++k)
            out[i] += J.lin(i, k).evaluate(p) * u[k] + J.anti(i, k).evaluate(p) * std::conj(u[k]);
    return out;
}

std::vector<double> real_matrix(const ACStructure& J, std::span<const cplx> p) {
    const int n = J.n(), m = 2 * n;
    std::vector<double> M(static_cast<std::size_t>(m * m), 0.0);
    for (int c = 0; c < m; ++c) {
        std::vector<cplx> u(n, 0.0);
        u[c / 2] = (c % 2 == 0) ? cplx(1, 0) : cplx(0, 1);
        auto w = apply(J, p, u);
        for (int i = 0; i < n; ++i) {
            M[(2 * i) * m + c] = w[i].real();
            M[(2 * i + 1) * m + c] = w[i].imag();
        }
    }
    return M;
}

InvolutionReport check_involution(const ACStructure& J) {
    const int n = J.n();
    InvolutionReport rep;
    rep.pass = true;
    for (int i = 0; i < n; ++i)
        for (int k = 0; k < n; ++k) {
            Expression l(n, i == k ? Cq(1) : Cq(0));
            Expression a(n);
            for (int m = 0; m < n; ++m) {
                l += J.lin(i, m) * J.lin(m, k) + J.anti(i, m) * J.anti(m, k).conj();
                a += J.lin(i, m) * J.anti(m, k) + J.anti(i, m) * J.lin(m, k).conj();
            }
            if (!l.is_zero() || !a.is_zero()) {
                rep.pass = false;
                rep.failing.push_back("(" + std::to_string(i + 1) + "," + std::to_string(k + 1) + ")");
            }
            rep.residual.push_back({l, a});
        }
    return rep;
}

namespace {

std::vector<cplx> random_point(std::mt19937_64& rng, int n) {
    std::uniform_real_distribution<double> U(-1.0, 1.0);
    std::vector<cplx> p(n);
    for (auto& z : p) z = {U(rng), U(rng)};
    return p;
}

void find_witness(LineReport& rep, int n, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    for (int trial = 0; trial < 200; ++trial) {
        auto p = random_point(rng, n);
        double worst = 0.0;
        for (const auto& r : rep.residuals) worst = std::max(worst, std::abs(r.evaluate(p)));
        if (worst > 1e-9) {
            rep.witness_point = p;
            rep.witness_residual = worst;
            return;
        }
    }
}

} // namespace

LineReport weak_line_check(const ACStructure& J, std::uint64_t seed) {
    const int n = J.n();
    LineReport rep;
    rep.pass = true;
    for (int i = 0; i < n; ++i) {
        Expression lin_res = -Expression(n, Cq::i()) * Expression::var(n, i);
        Expression anti_res(n);
        for (int k = 0; k < n; ++k) {
            lin_res += J.lin(i, k) * Expression::var(n, k);
            anti_res += J.anti(i, k) * Expression::var(n, k, true);
        }
        if (!lin_res.is_zero()) {
            rep.pass = false;
            rep.failing.push_back("lin row " + std::to_string(i + 1));
        }
        if (!anti_res.is_zero()) {
            rep.pass = false;
            rep.failing.push_back("anti row " + std::to_string(i + 1));
        }
        rep.residuals.push_back(lin_res);
        rep.residuals.push_back(anti_res);
    }
    if (!rep.pass) find_witness(rep, n, seed);
    return rep;
}

LineReport line_check(const ACStructure& J, std::uint64_t seed) {
    const int n = J.n();
    LineReport rep = weak_line_check(J, seed);
    bool weak = rep.pass;
    auto column = [&](int k, bool anti) {
        std::vector<Expression> c;
        for (int i = 0; i < n; ++i) {
            if (anti)
                c.push_back(J.anti(i, k));
            else
                c.push_back(J.lin(i, k) - Expression(n, i == k ? Cq::i() : Cq(0)));
        }
        return c;
    };
    for (int part = 0; part < 2; ++part)
        for (int k = 0; k < n; ++k) {
            auto c = column(k, part == 1);
            for (int a = 0; a < n; ++a)
                for (int b = a + 1; b < n; ++b) {
                    Expression minor = c[a] * Expression::var(n, b) - c[b] * Expression::var(n, a);
                    if (!minor.is_zero()) {
                        rep.pass = false;
                        rep.failing.push_back(std::string(part ? "anti" : "lin") + " column " + std::to_string(k + 1) +
                                              " minor (" + std::to_string(a + 1) + "," + std::to_string(b + 1) + ")");
                    }
                    rep.residuals.push_back(minor);
                }
        }
    if (!rep.pass && weak) find_witness(rep, n, seed);
    return rep;
}

namespace {

using ExprVec = std::vector<Expression>;

ExprVec apply_const(const ACStructure& J, std::span<const Cq> X) {
    const int n = J.n();
    ExprVec out(n, Expression(n));
    for (int i = 0; i < n; ++i)
        for (int k = 0; k < n; ++k) out[i] += J.lin(i, k) * X[k] + J.anti(i, k) * X[k].conj();
    return out;
}

// Derivative of G along a vector field V: sum_k dG/dz_k V_k + dG/dzbar_k conj(V_k).
ComplexField derivative_along(const ExprVec& G, const ExprVec& V) {
    const int n = static_cast<int>(G.size());
    ComplexField out(n, Quotient(Expression(n)));
    for (int i = 0; i < n; ++i)
        for (int k = 0; k < n; ++k) {
            out[i] = out[i] + wirtinger_d(G[i], k, false) * V[k];
            out[i] = out[i] + wirtinger_d(G[i], k, true) * V[k].conj();
        }
    return out;
}

ComplexField apply_field(const ACStructure& J, const ComplexField& q) {
    const int n = J.n();
    ComplexField out(n, Quotient(Expression(n)));
    for (int i = 0; i < n; ++i)
        for (int k = 0; k < n; ++k) out[i] = out[i] + q[k] * J.lin(i, k) + q[k].conj() * J.anti(i, k);
    return out;
}

ComplexField sub(const ComplexField& a, const ComplexField& b) {
    ComplexField out;
    for (std::size_t i = 0; i < a.size(); ++i) out.push_back(a[i] - b[i]);
    return out;
}

ComplexField add(const ComplexField& a, const ComplexField& b) {
    ComplexField out;
    for (std::size_t i = 0; i < a.size(); ++i) out.push_back(a[i] + b[i]);
    return out;
}

} // namespace

ComplexField nijenhuis(const ACStructure& J, std::span<const Cq> X, std::span<const Cq> Y) {
    const int n = J.n();
    ExprVec F = apply_const(J, X);
    ExprVec G = apply_const(J, Y);
    ExprVec Xe, Ye;
    for (int k = 0; k < n; ++k) {
        Xe.emplace_back(n, X[k]);
        Ye.emplace_back(n, Y[k]);
    }
    ComplexField bracket = sub(derivative_along(G, F), derivative_along(F, G));
    ComplexField yF = derivative_along(F, Ye);
    ComplexField xG = derivative_along(G, Xe);
    return add(bracket, sub(apply_field(J, yF), apply_field(J, xG)));
}

std::vector<cplx> evaluate(const ComplexField& f, std::span<const cplx> p) {
    std::vector<cplx> out;
    for (const auto& q : f) out.push_back(q.evaluate(p));
    return out;
}

std::vector<std::string> frame_names(int n) {
    if (n == 2) return {"x", "y", "u", "v"};
    std::vector<std::string> names;
    for (int k = 1; k <= n; ++k) {
        names.push_back("x" + std::to_string(k));
        names.push_back("y" + std::to_string(k));
    }
    return names;
}

std::vector<Cq> frame_vector(int n, const std::string& name) {
    std::string s = name;
    if (s.rfind("d", 0) == 0 && s.size() > 1) s = s.substr(1);
    auto names = frame_names(n);
    for (int c = 0; c < 2 * n; ++c)
        if (names[c] == s) {
            std::vector<Cq> v(n);
            v[c / 2] = (c % 2 == 0) ? Cq(1) : Cq::i();
            return v;
        }
    throw std::invalid_argument("unknown frame vector '" + name + "'");
}

bool is_standard_at_origin(const ACStructure& J) {
    const int n = J.n();
    for (int i = 0; i < n; ++i)
        for (int k = 0; k < n; ++k) {
            auto l = taylor_coeffs(J.lin(i, k), 0);
            auto a = taylor_coeffs(J.anti(i, k), 0);
            SurdSum want = (i == k) ? SurdSum(Cq::i()) : SurdSum();
            if (!(taylor_coefficient(l, ConjMonomial(n)) == want)) return false;
            if (!a.empty()) return false;
        }
    return true;
}

ObstructionReport obstruction_relations(const ACStructure& J) {
    if (J.n() != 2) throw std::invalid_argument("obstruction_relations requires n = 2");
    if (!is_standard_at_origin(J)) throw std::invalid_argument("structure is not standard at the origin");
    const ConjMonomial zb1 = ConjMonomial::var(2, 0, true), zb2 = ConjMonomial::var(2, 1, true);
    // a2 = anti(1,1), b2 = anti(1,2), c2 = anti(2,1), d2 = anti(2,2)
    struct Spec {
        const char* name;
        int i, k;
        const ConjMonomial* m;
    };
    const Spec specs[] = {{"(c2)_zbar1", 1, 0, &zb1}, {"(d2)_zbar1", 1, 1, &zb1}, {"(a2)_zbar1", 0, 0, &zb1},
                          {"(c2)_zbar2", 1, 0, &zb2}, {"(b2)_zbar1", 0, 1, &zb1}, {"(d2)_zbar2", 1, 1, &zb2},
                          {"(a2)_zbar2", 0, 0, &zb2}, {"(b2)_zbar2", 0, 1, &zb2}};
    ObstructionReport rep;
    rep.all_pass = true;
    for (const auto& s : specs) {
        auto t = taylor_coeffs(J.anti(s.i, s.k), 1);
        Relation r{s.name, taylor_coefficient(t, *s.m), false};
        r.pass = r.value.is_zero();
        rep.all_pass = rep.all_pass && r.pass;
        rep.relations.push_back(r);
    }
    // N(dzbar1, dzbar2) = 1/4 [N(x1,x2) + i N(x1,y2) + i N(y1,x2) - N(y1,y2)] by bilinearity.
    const std::vector<cplx> origin(2, 0.0);
    auto nval = [&](const char* a, const char* b) {
        return evaluate(nijenhuis(J, frame_vector(2, a), frame_vector(2, b)), origin);
    };
    auto xx = nval("x", "u"), xy = nval("x", "v"), yx = nval("y", "u"), yy = nval("y", "v");
    const cplx I(0, 1);
    rep.n_dzbar12.assign(4, 0.0);
    for (int k = 0; k < 2; ++k) {
        rep.n_dzbar12[k] = 0.25 * (xx[k] + I * xy[k] + I * yx[k] - yy[k]);
        rep.n_dzbar12[2 + k] =
            0.25 * (std::conj(xx[k]) + I * std::conj(xy[k]) + I * std::conj(yx[k]) - std::conj(yy[k]));
    }
    return rep;
}

} // namespace acb
