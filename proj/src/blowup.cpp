#include "acb/blowup.hpp"

#include <stdexcept>

namespace acb {

ChartMap chart_map(int n, int j) {
    if (j < 0 || j >= n) throw std::out_of_range("chart index");
    ChartMap c;
    c.n = n;
    c.j = j;
    const Polynomial zj = Polynomial::var(n, j);
    for (int i = 0; i < n; ++i) c.position.push_back(i == j ? zj : zj * Polynomial::var(n, i));
    c.dp.assign(static_cast<std::size_t>(n * n), Polynomial(n));
    c.dp_inv.assign(static_cast<std::size_t>(n * n), Polynomial(n));
    for (int i = 0; i < n; ++i) {
        for (int k = 0; k < n; ++k) {
            if (k == j)
                c.dp[i * n + k] = (i == j) ? Polynomial(n, Cq(1)) : Polynomial::var(n, i);
            else if (i == k)
                c.dp[i * n + k] = zj;
        }
        if (i == j) {
            c.dp_inv[i * n + j] = zj;
        } else {
            c.dp_inv[i * n + i] = Polynomial(n, Cq(1));
            c.dp_inv[i * n + j] = -Polynomial::var(n, i);
        }
    }
    return c;
}

std::vector<cplx> ChartMap::to_ambient(std::span<const cplx> zeta) const {
    std::vector<cplx> p;
    for (const auto& x : position) p.push_back(x.evaluate(zeta));
    return p;
}

std::vector<cplx> ChartMap::from_ambient(std::span<const cplx> p) const {
    if (p[j] == 0.0) throw std::domain_error("point lies outside chart (z_j = 0 off the divisor)");
    std::vector<cplx> z(p.begin(), p.end());
    for (int i = 0; i < n; ++i)
        if (i != j) z[i] = p[i] / p[j];
    return z;
}

bool ChartStructure::has_poles() const {
    for (const auto& x : e)
        if (x.lin_flag != 0 || x.anti_flag != 0) return true;
    return false;
}

std::vector<cplx> ChartStructure::apply(std::span<const cplx> zeta, std::span<const cplx> u) const {
    const cplx zj = zeta[j];
    auto val = [&](const Expression& x, int flag) {
        cplx v = x.evaluate(zeta);
        return flag == 0 ? v : v / zj;
    };
    std::vector<cplx> out(n, 0.0);
    for (int i = 0; i < n; ++i)
        for (int k = 0; k < n; ++k) {
            const auto& c = at(i, k);
            out[i] += val(c.lin, c.lin_flag) * u[k] + val(c.anti, c.anti_flag) * std::conj(u[k]);
        }
    return out;
}

ChartStructure transform(const ACStructure& J, int j) {
    const int n = J.n();
    ChartMap cm = chart_map(n, j);
    std::vector<Expression> L, A;
    for (int i = 0; i < n; ++i)
        for (int k = 0; k < n; ++k) {
            L.push_back(substitute_chart(J.lin(i, k), j));
            A.push_back(substitute_chart(J.anti(i, k), j));
        }
    auto ex = [&](const Polynomial& p) { return Expression(p); };
    // L dp and A conj(dp)
    std::vector<Expression> Ld(n * n, Expression(n)), Ad(n * n, Expression(n));
    for (int m = 0; m < n; ++m)
        for (int k = 0; k < n; ++k)
            for (int l = 0; l < n; ++l) {
                const auto& d = cm.dp[l * n + k];
                if (d.is_zero()) continue;
                Ld[m * n + k] += L[m * n + l] * ex(d);
                Ad[m * n + k] += A[m * n + l] * ex(d.conj());
            }
    ChartStructure cs;
    cs.n = n;
    cs.j = j;
    cs.e.resize(static_cast<std::size_t>(n * n));
    cs.combination.assign(static_cast<std::size_t>(n * n), Expression(n));
    for (int i = 0; i < n; ++i)
        for (int k = 0; k < n; ++k) {
            auto& out = cs.at(i, k);
            if (i == j) {
                // Row j of M is z_j e_j: the 1/z_j cancels.
                out.lin = Ld[j * n + k];
                out.anti = Ad[j * n + k];
                continue;
            }
            Expression wi = Expression::var(n, i);
            Expression ln = Ld[i * n + k] - wi * Ld[j * n + k];
            Expression an = Ad[i * n + k] - wi * Ad[j * n + k];
            if (k != j) cs.combination[i * n + k] = A[i * n + k] - wi * A[j * n + k];
            auto reduce = [&](Expression& slot, int& flag, const Expression& num) {
                auto d = smooth_div(num, j);
                if (d.verdict == DivVerdict::Divisible) {
                    slot = d.quotient;
                    flag = 0;
                } else {
                    slot = num;
                    flag = -1;
                }
            };
            reduce(out.lin, out.lin_flag, ln);
            reduce(out.anti, out.anti_flag, an);
        }
    return cs;
}

const char* to_string(ExtVerdict v) {
    switch (v) {
    case ExtVerdict::Extendable: return "extendable";
    case ExtVerdict::NotExtendable: return "not_extendable";
    default: return "unknown";
    }
}

ExtensionReport extension_test(const ChartStructure& cs) {
    const int n = cs.n, j = cs.j;
    ExtensionReport rep;
    ACStructure ext(n);
    bool unknown = false, failed = false;
    for (int i = 0; i < n; ++i)
        for (int k = 0; k < n; ++k) {
            const auto& c = cs.at(i, k);
            ext.lin(i, k) = c.lin;
            ext.anti(i, k) = c.anti;
            for (int part = 0; part < 2; ++part) {
                bool anti = part == 1;
                int flag = anti ? c.anti_flag : c.lin_flag;
                if (flag == 0) continue;
                bool via = anti && i != j && k != j;
                const Expression& target = via ? cs.combination[i * n + k] : (anti ? c.anti : c.lin);
                auto d = smooth_div(target, j);
                if (d.verdict == DivVerdict::Divisible) {
                    Expression q = via ? d.quotient * Expression::var(n, j, true) : d.quotient;
                    (anti ? ext.anti(i, k) : ext.lin(i, k)) = q;
                    continue;
                }
                if (d.verdict == DivVerdict::Unknown) unknown = true;
                if (d.verdict == DivVerdict::NotDivisible) failed = true;
                rep.witnesses.push_back({i, k, anti, via, target, d.witness});
            }
        }
    if (failed)
        rep.verdict = ExtVerdict::NotExtendable;
    else if (unknown)
        rep.verdict = ExtVerdict::Unknown;
    else {
        rep.verdict = ExtVerdict::Extendable;
        rep.extended = std::move(ext);
    }
    return rep;
}

FormCheckReport line_condition_form_check(const ACStructure& X, int j) {
    if (X.n() != 2) throw std::invalid_argument("line_condition_form_check requires n = 2");
    FormCheckReport rep;
    const int n = 2, c = 1 - j;
    bool shape = true;
    for (int i = 0; i < n; ++i)
        for (int k = 0; k < n; ++k) {
            Expression want(n, i == k ? Cq::i() : Cq(0));
            if (!(X.lin(i, k) == want)) shape = false;
            if (!(i == j && k == c) && !X.anti(i, k).is_zero()) shape = false;
        }
    rep.b1_zero = X.lin(j, c).is_zero();
    rep.shape_ok = shape;
    rep.b2 = X.anti(j, c);
    auto d = smooth_div_monomial(rep.b2, j, 1, 2);
    rep.divisible = d.verdict == DivVerdict::Divisible;
    if (rep.divisible) {
        rep.quotient = d.quotient;
        auto t = taylor_coeffs(d.quotient, 0);
        rep.constant = taylor_coefficient(t, ConjMonomial(n));
        rep.constant_real = true;
        for (const auto& [s, v] : rep.constant.terms())
            if (!v.is_real()) rep.constant_real = false;
    } else {
        rep.diagnostic = "B2 is not divisible by |z|^2 zbar";
    }
    if (!shape) rep.diagnostic = "extended structure is not of the upper-triangular form";
    rep.pass = rep.shape_ok && rep.b1_zero && rep.divisible && rep.constant_real;
    return rep;
}

namespace {

bool invertible(std::vector<Cq> a, int n) {
    for (int col = 0; col < n; ++col) {
        int piv = -1;
        for (int r = col; r < n; ++r)
            if (!a[r * n + col].is_zero()) {
                piv = r;
                break;
            }
        if (piv < 0) return false;
        for (int k = 0; k < n; ++k) std::swap(a[col * n + k], a[piv * n + k]);
        for (int r = col + 1; r < n; ++r) {
            Cq f = a[r * n + col] / a[col * n + col];
            for (int k = col; k < n; ++k) a[r * n + k] -= f * a[col * n + k];
        }
    }
    return true;
}

} // namespace

LiftReport lift_map(const std::vector<Expression>& f, int source, int target) {
    LiftReport rep;
    const int n = static_cast<int>(f.size());
    rep.n = n;
    rep.source = source;
    rep.target = target;
    if (source < 0 || source >= n || target < 0 || target >= n) throw std::out_of_range("chart index");
    rep.df0.assign(static_cast<std::size_t>(n * n), Cq());
    for (int k = 0; k < n; ++k) {
        if (f[k].nvars() != n && !f[k].is_zero()) throw std::invalid_argument("map component arity mismatch");
        auto t = taylor_coeffs(f[k], 1);
        if (!taylor_coefficient(t, ConjMonomial(n)).is_zero()) {
            rep.diagnostic = "f(0) != 0 in component " + std::to_string(k + 1);
            return rep;
        }
        for (int m = 0; m < n; ++m) {
            if (!taylor_coefficient(t, ConjMonomial::var(n, m, true)).is_zero()) {
                rep.diagnostic = "df(0) is not complex-linear: component " + std::to_string(k + 1) +
                                 " has a conj(z" + std::to_string(m + 1) + ") term";
                return rep;
            }
            auto c = taylor_coefficient(t, ConjMonomial::var(n, m)).as_rational();
            if (!c) {
                rep.diagnostic = "df(0) has irrational entries";
                return rep;
            }
            rep.df0[k * n + m] = *c;
        }
    }
    if (!invertible(rep.df0, n)) {
        rep.diagnostic = "df(0) is singular";
        return rep;
    }
    for (int k = 0; k < n; ++k) {
        auto d = smooth_div(substitute_chart(f[k], source), source);
        if (d.verdict != DivVerdict::Divisible) {
            rep.diagnostic = "component " + std::to_string(k + 1) +
                             " pulled back to the chart is not divisible by z_" + std::to_string(source + 1) +
                             ": the lift is not smooth across the divisor";
            return rep;
        }
        rep.Q.push_back(d.quotient);
    }
    rep.ok = true;
    return rep;
}

std::vector<cplx> LiftReport::evaluate(std::span<const cplx> zeta) const {
    std::vector<cplx> q;
    for (const auto& e : Q) q.push_back(e.evaluate(zeta));
    if (std::abs(q[target]) == 0.0) throw std::domain_error("image lies outside the target chart");
    std::vector<cplx> out(n);
    for (int i = 0; i < n; ++i) out[i] = (i == target) ? zeta[source] * q[target] : q[i] / q[target];
    return out;
}

std::vector<cplx> LiftReport::divisor_action(std::span<const cplx> w) const {
    std::vector<cplx> e(w.begin(), w.end());
    e[source] = 1.0;
    std::vector<cplx> v(n, 0.0);
    for (int k = 0; k < n; ++k)
        for (int m = 0; m < n; ++m) v[k] += df0[k * n + m].to_complex() * e[m];
    if (std::abs(v[target]) == 0.0) throw std::domain_error("divisor image lies outside the target chart");
    std::vector<cplx> out(n);
    for (int i = 0; i < n; ++i) out[i] = (i == target) ? cplx(0.0) : v[i] / v[target];
    return out;
}

} // namespace acb
