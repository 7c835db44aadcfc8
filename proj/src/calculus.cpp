#include "acb/calculus.hpp"

#include <cmath>
#include <stdexcept>

namespace acb {

namespace {

Polynomial poly_d(const Polynomial& p, int k, bool anti) {
    Polynomial r(p.nvars());
    for (const auto& [m, c] : p.terms()) {
        int a = m.holo(k), b = m.anti(k);
        int e = anti ? b : a;
        if (e == 0) continue;
        ConjMonomial m2(m);
        if (anti)
            m2.set(k, a, b - 1);
        else
            m2.set(k, a - 1, b);
        r.add_term(m2, c * Cq(e));
    }
    return r;
}

Expression scalar_expr(const SmoothScalar& s, int n) { return Expression(s, Polynomial(n, Cq(1))); }

// n = a^2 * t with t free of small square factors.
std::pair<mpz_class, mpz_class> extract_square(mpz_class n) {
    mpz_class a = 1;
    for (unsigned long p = 2; p < 100000; ++p) {
        mpz_class pp = mpz_class(p) * p;
        if (pp > n) break;
        while (n % pp == 0) {
            n /= pp;
            a *= p;
        }
    }
    if (mpz_perfect_square_p(n.get_mpz_t())) {
        mpz_class r;
        mpz_sqrt(r.get_mpz_t(), n.get_mpz_t());
        a *= r;
        n = 1;
    }
    return {a, n};
}

mpq_class binom_half(int k) {
    mpq_class r = 1;
    for (int m = 0; m < k; ++m) {
        r *= mpq_class(1, 2) - m;
        r /= m + 1;
    }
    return r;
}

} // namespace

bool Quotient::equals(const Expression& e) const {
    return (num - e * scalar_expr(den, std::max(num.nvars(), e.nvars()))).is_zero();
}

Quotient operator+(const Quotient& a, const Quotient& b) {
    int n = std::max(a.num.nvars(), b.num.nvars());
    SmoothScalar d = a.den.join(b.den);
    Expression na = a.num * scalar_expr(d.minus(a.den), n);
    Expression nb = b.num * scalar_expr(d.minus(b.den), n);
    return {na + nb, d};
}

Quotient operator-(const Quotient& a, const Quotient& b) { return a + Quotient(-b.num, b.den); }

Quotient operator*(const Quotient& a, const Expression& e) { return {a.num * e, a.den}; }

Quotient wirtinger_d(const Expression& e, int k, bool anti) {
    const int n = e.nvars();
    SmoothScalar d;
    for (const auto& [s, p] : e.terms()) d = d.join(s);
    Expression num(n);
    const Expression dexpr = scalar_expr(d, n);
    for (const auto& [s, p] : e.terms()) {
        Polynomial dp = poly_d(p, k, anti);
        if (!dp.is_zero()) num += Expression(s, dp) * dexpr;
        for (const auto& r : s.radicands()) {
            Polynomial dr = poly_d(r, k, anti);
            if (dr.is_zero()) continue;
            dr *= Cq(mpq_class(1, 2));
            num += scalar_expr(s.without(r), n) * scalar_expr(d.without(r), n) * Expression(dr * p);
        }
    }
    return {num, d};
}

SurdSum SurdSum::sqrt_of(const mpq_class& c) {
    if (sgn(c) <= 0) throw std::domain_error("sqrt of non-positive constant");
    mpz_class num = c.get_num() * c.get_den();
    auto [a, t] = extract_square(num);
    SurdSum s;
    s.add(Cq(mpq_class(a, c.get_den())), t);
    return s;
}

std::optional<Cq> SurdSum::as_rational() const {
    if (t_.empty()) return Cq();
    if (t_.size() == 1 && t_.begin()->first == 1) return t_.begin()->second;
    return std::nullopt;
}

void SurdSum::add(const Cq& c, const mpz_class& t) {
    if (c.is_zero()) return;
    auto [it, fresh] = t_.try_emplace(t, c);
    if (!fresh) {
        it->second += c;
        if (it->second.is_zero()) t_.erase(it);
    }
}

SurdSum& SurdSum::operator+=(const SurdSum& o) {
    for (const auto& [t, c] : o.t_) add(c, t);
    return *this;
}

SurdSum SurdSum::operator*(const SurdSum& o) const {
    SurdSum r;
    for (const auto& [t1, c1] : t_)
        for (const auto& [t2, c2] : o.t_) {
            auto [a, t] = extract_square(t1 * t2);
            r.add(c1 * c2 * Cq(mpq_class(a)), t);
        }
    return r;
}

SurdSum SurdSum::operator*(const Cq& c) const {
    SurdSum r;
    for (const auto& [t, v] : t_) r.add(v * c, t);
    return r;
}

SurdSum SurdSum::conj() const {
    SurdSum r;
    for (const auto& [t, v] : t_) r.add(v.conj(), t);
    return r;
}

cplx SurdSum::to_complex() const {
    cplx v = 0.0;
    for (const auto& [t, c] : t_) v += c.to_complex() * std::sqrt(t.get_d());
    return v;
}

TaylorMap taylor_coeffs(const Expression& e, int order) {
    if (order < 0 || order > kTaylorMaxOrder)
        throw std::invalid_argument("taylor order must be in [0, " + std::to_string(kTaylorMaxOrder) + "]");
    const int n = e.nvars();
    TaylorMap out;
    for (const auto& [s, p] : e.terms()) {
        Polynomial series(n, Cq(1));
        mpq_class cprod = 1;
        for (const auto& r : s.radicands()) {
            mpq_class c = r.constant_term().re();
            cprod *= c;
            Polynomial rho = r - Polynomial(n, Cq(c));
            rho *= Cq(1 / c);
            Polynomial si(n, Cq(1));
            Polynomial power(n, Cq(1));
            for (int k = 1; 2 * k <= order; ++k) {
                power = (power * rho).truncate(order);
                si += power * Cq(binom_half(k));
            }
            series = (series * si).truncate(order);
        }
        Polynomial full = (series * p.truncate(order)).truncate(order);
        SurdSum root = SurdSum::sqrt_of(cprod);
        for (const auto& [m, c] : full.terms()) {
            auto& slot = out[m];
            slot += root * c;
        }
    }
    for (auto it = out.begin(); it != out.end();) {
        if (it->second.is_zero())
            it = out.erase(it);
        else
            ++it;
    }
    return out;
}

SurdSum taylor_coefficient(const TaylorMap& t, const ConjMonomial& m) {
    auto it = t.find(m);
    return it == t.end() ? SurdSum() : it->second;
}

namespace {

bool proportional(const Polynomial& a, const Polynomial& b) {
    if (a.size() != b.size()) return false;
    auto ia = a.terms().begin();
    auto ib = b.terms().begin();
    Cq ratio = ia->second / ib->second;
    for (; ia != a.terms().end(); ++ia, ++ib) {
        if (!(ia->first == ib->first)) return false;
        if (!(ia->second == ratio * ib->second)) return false;
    }
    return true;
}

// Distinct radicands that are constant multiples of each other break the
// independence the term test relies on.
bool has_dependent_radicals(const Expression& e) {
    SmoothScalar all;
    for (const auto& [s, p] : e.terms()) all = all.join(s);
    const auto& r = all.radicands();
    for (std::size_t i = 0; i < r.size(); ++i)
        for (std::size_t j = i + 1; j < r.size(); ++j)
            if (proportional(r[i], r[j])) return true;
    return false;
}

} // namespace

DivResult smooth_div_monomial(const Expression& e, int j, int a, int b) {
    DivResult res;
    const int n = e.nvars();
    if (j < 0 || (n > 0 && j >= n)) throw std::out_of_range("smooth_div: variable index");
    Expression q(n);
    std::map<SmoothScalar, Polynomial> bad;
    for (const auto& [s, p] : e.terms()) {
        Polynomial qp(n);
        for (const auto& [m, c] : p.terms()) {
            if (m.holo(j) < a || m.anti(j) < b) {
                if (bad.empty()) res.witness = Expression(s, Polynomial(m, c));
                bad.try_emplace(s, n).first->second.add_term(m, c);
                continue;
            }
            ConjMonomial m2(m);
            m2.set(j, m.holo(j) - a, m.anti(j) - b);
            qp.add_term(m2, c);
        }
        q += Expression(s, qp);
    }
    if (bad.empty()) {
        res.verdict = DivVerdict::Divisible;
        res.quotient = q;
        return res;
    }
    // One radical factor: it is a smooth unit, so the offending monomials decide.
    if (bad.size() == 1) {
        res.verdict = DivVerdict::NotDivisible;
        return res;
    }
    if (a + b != 1) return res;
    // Radicands are radial, so modulo z_j (or zbar_j) only their values on
    // {z_j = 0} survive. The offending part is divisible iff that restriction vanishes.
    std::vector<Polynomial> images;
    for (int k = 0; k < n; ++k) images.push_back(k == j ? Polynomial(n) : Polynomial::var(n, k));
    Expression r0(n);
    for (const auto& [s, p] : bad) r0 += substitute(Expression(s, Polynomial(n, Cq(1))), images) * Expression(p);
    if (!r0.is_zero() && !has_dependent_radicals(r0)) res.verdict = DivVerdict::NotDivisible;
    return res;
}

DivResult smooth_div(const Expression& e, int j) { return smooth_div_monomial(e, j, 1, 0); }

Expression substitute(const Expression& e, const std::vector<Polynomial>& images) {
    const int n = e.nvars();
    if (static_cast<int>(images.size()) != n) throw std::invalid_argument("substitute: wrong image count");
    const int m = images.empty() ? 0 : images.front().nvars();
    std::vector<Polynomial> conj_images;
    for (const auto& p : images) conj_images.push_back(p.conj());
    auto sub_poly = [&](const Polynomial& p) {
        Polynomial out(m);
        for (const auto& [mono, c] : p.terms()) {
            Polynomial t(m, c);
            for (int k = 0; k < n; ++k) {
                if (mono.holo(k)) t *= images[k].pow(mono.holo(k));
                if (mono.anti(k)) t *= conj_images[k].pow(mono.anti(k));
            }
            out += t;
        }
        return out;
    };
    Expression out(m);
    for (const auto& [s, p] : e.terms()) {
        Expression t(sub_poly(p));
        for (const auto& r : s.radicands()) {
            Polynomial r2 = sub_poly(r);
            if (!r2.is_radicand()) throw std::invalid_argument("substitution does not preserve a radicand");
            t *= Expression::sqrt_of(r2);
        }
        out += t;
    }
    return out;
}

Expression substitute_chart(const Expression& e, int j) {
    const int n = e.nvars();
    std::vector<Polynomial> images;
    for (int i = 0; i < n; ++i)
        images.push_back(i == j ? Polynomial::var(n, j) : Polynomial::var(n, j) * Polynomial::var(n, i));
    return substitute(e, images);
}

const char* to_string(DivVerdict v) {
    switch (v) {
    case DivVerdict::Divisible: return "divisible";
    case DivVerdict::NotDivisible: return "not_divisible";
    default: return "unknown";
    }
}

} // namespace acb
