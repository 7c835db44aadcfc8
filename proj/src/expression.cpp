#include "acb/expression.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace acb {

SmoothScalar::SmoothScalar(std::vector<Polynomial> radicands) : r_(std::move(radicands)) {
    std::sort(r_.begin(), r_.end());
    if (std::adjacent_find(r_.begin(), r_.end()) != r_.end())
        throw std::invalid_argument("repeated radicand in smooth scalar");
}

SmoothScalar SmoothScalar::sqrt_of(const Polynomial& radicand) {
    if (!radicand.is_radicand())
        throw std::invalid_argument("sqrt argument is not of the form c + radial with c > 0");
    SmoothScalar s;
    s.r_.push_back(radicand);
    return s;
}

bool SmoothScalar::contains(const Polynomial& r) const { return std::binary_search(r_.begin(), r_.end(), r); }

SmoothScalar::Product SmoothScalar::operator*(const SmoothScalar& o) const {
    int n = 0;
    for (const auto& r : r_) n = std::max(n, r.nvars());
    for (const auto& r : o.r_) n = std::max(n, r.nvars());
    Product out{SmoothScalar{}, Polynomial(n, Cq(1))};
    std::size_t i = 0, j = 0;
    while (i < r_.size() || j < o.r_.size()) {
        if (j == o.r_.size() || (i < r_.size() && r_[i] < o.r_[j])) {
            out.scalar.r_.push_back(r_[i++]);
        } else if (i == r_.size() || o.r_[j] < r_[i]) {
            out.scalar.r_.push_back(o.r_[j++]);
        } else {
            out.factor *= r_[i];
            ++i;
            ++j;
        }
    }
    return out;
}

SmoothScalar SmoothScalar::without(const Polynomial& r) const {
    SmoothScalar s;
    for (const auto& x : r_)
        if (!(x == r)) s.r_.push_back(x);
    return s;
}

SmoothScalar SmoothScalar::join(const SmoothScalar& o) const {
    SmoothScalar s;
    std::set_union(r_.begin(), r_.end(), o.r_.begin(), o.r_.end(), std::back_inserter(s.r_));
    return s;
}

SmoothScalar SmoothScalar::minus(const SmoothScalar& o) const {
    SmoothScalar s;
    std::set_difference(r_.begin(), r_.end(), o.r_.begin(), o.r_.end(), std::back_inserter(s.r_));
    return s;
}

double SmoothScalar::evaluate(std::span<const cplx> p) const {
    double v = 1.0;
    for (const auto& r : r_) v *= std::sqrt(r.evaluate(p).real());
    return v;
}

Expression::Expression(int nvars, const Cq& c) : n_(nvars) {
    if (!c.is_zero()) t_.emplace(SmoothScalar{}, Polynomial(nvars, c));
}

Expression::Expression(const Polynomial& p) : n_(p.nvars()) {
    if (!p.is_zero()) t_.emplace(SmoothScalar{}, p);
}

Expression::Expression(const SmoothScalar& s, const Polynomial& p) : n_(p.nvars()) {
    if (!p.is_zero()) t_.emplace(s, p);
}

Expression Expression::var(int nvars, int k, bool conjugated) {
    return Expression(Polynomial::var(nvars, k, conjugated));
}

Expression Expression::sqrt_of(const Polynomial& radicand) {
    if (radicand.is_constant() && !radicand.is_zero()) {
        const mpq_class c = radicand.constant_term().re();
        if (mpz_perfect_square_p(c.get_num_mpz_t()) && mpz_perfect_square_p(c.get_den_mpz_t()) && sgn(c) > 0) {
            mpz_class a, b;
            mpz_sqrt(a.get_mpz_t(), c.get_num_mpz_t());
            mpz_sqrt(b.get_mpz_t(), c.get_den_mpz_t());
            return Expression(radicand.nvars(), Cq(mpq_class(a, b)));
        }
    }
    return Expression(SmoothScalar::sqrt_of(radicand), Polynomial(radicand.nvars(), Cq(1)));
}

bool Expression::is_polynomial() const { return t_.empty() || (t_.size() == 1 && t_.begin()->first.is_one()); }

Polynomial Expression::as_polynomial() const {
    if (!is_polynomial()) throw std::invalid_argument("expression contains square roots");
    return t_.empty() ? Polynomial(n_) : t_.begin()->second;
}

std::size_t Expression::term_count() const {
    std::size_t n = 0;
    for (const auto& [s, p] : t_) n += p.size();
    return n;
}

void Expression::for_each_term(
    const std::function<void(const SmoothScalar&, const ConjMonomial&, const Cq&)>& f) const {
    for (const auto& [s, p] : t_)
        for (const auto& [m, c] : p.terms()) f(s, m, c);
}

void Expression::add(const SmoothScalar& s, const Polynomial& p) {
    if (p.is_zero()) return;
    auto it = t_.find(s);
    if (it == t_.end()) {
        t_.emplace(s, p);
        return;
    }
    it->second += p;
    if (it->second.is_zero()) t_.erase(it);
}

Expression Expression::conj() const {
    Expression r(n_);
    for (const auto& [s, p] : t_) r.t_.emplace(s, p.conj());
    return r;
}

Expression Expression::operator-() const {
    Expression r(n_);
    for (const auto& [s, p] : t_) r.t_.emplace(s, -p);
    return r;
}

Expression& Expression::operator+=(const Expression& o) {
    n_ = std::max(n_, o.n_);
    for (const auto& [s, p] : o.t_) add(s, p);
    return *this;
}

Expression& Expression::operator-=(const Expression& o) {
    n_ = std::max(n_, o.n_);
    for (const auto& [s, p] : o.t_) add(s, -p);
    return *this;
}

Expression& Expression::operator*=(const Expression& o) {
    Expression r(std::max(n_, o.n_));
    for (const auto& [s1, p1] : t_)
        for (const auto& [s2, p2] : o.t_) {
            auto prod = s1 * s2;
            Polynomial q = p1 * p2;
            if (!prod.factor.is_constant() || !prod.factor.constant_term().is_one()) q *= prod.factor;
            r.add(prod.scalar, q);
        }
    *this = std::move(r);
    return *this;
}

Expression& Expression::operator*=(const Cq& c) {
    if (c.is_zero()) {
        t_.clear();
        return *this;
    }
    for (auto& [s, p] : t_) p *= c;
    return *this;
}

Expression Expression::pow(int k) const {
    if (k < 0) throw std::invalid_argument("negative power");
    Expression r(n_, Cq(1));
    Expression b(*this);
    while (k > 0) {
        if (k & 1) r *= b;
        k >>= 1;
        if (k) b *= b;
    }
    return r;
}

cplx Expression::evaluate(std::span<const cplx> p) const {
    cplx v = 0.0;
    for (const auto& [s, q] : t_) v += s.evaluate(p) * q.evaluate(p);
    return v;
}

} // namespace acb
