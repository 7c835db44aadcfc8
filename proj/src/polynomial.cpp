#include "acb/polynomial.hpp"

#include <algorithm>
#include <stdexcept>

namespace acb {

ConjMonomial ConjMonomial::var(int nvars, int k, bool conjugated) {
    ConjMonomial m(nvars);
    m.e_[2 * k + (conjugated ? 1 : 0)] = 1;
    return m;
}

int ConjMonomial::degree() const {
    int d = 0;
    for (int v : e_) d += v;
    return d;
}

bool ConjMonomial::is_one() const {
    return std::all_of(e_.begin(), e_.end(), [](int v) { return v == 0; });
}

bool ConjMonomial::is_radial() const {
    for (int k = 0; k < nvars(); ++k)
        if (holo(k) != anti(k)) return false;
    return true;
}

ConjMonomial ConjMonomial::conj() const {
    ConjMonomial r(*this);
    for (int k = 0; k < nvars(); ++k) std::swap(r.e_[2 * k], r.e_[2 * k + 1]);
    return r;
}

ConjMonomial ConjMonomial::operator*(const ConjMonomial& o) const {
    if (o.e_.size() != e_.size()) throw std::invalid_argument("monomial arity mismatch");
    ConjMonomial r(*this);
    for (std::size_t i = 0; i < e_.size(); ++i) r.e_[i] += o.e_[i];
    return r;
}

static cplx ipow(cplx z, int k) {
    cplx r = 1.0;
    while (k > 0) {
        if (k & 1) r *= z;
        z *= z;
        k >>= 1;
    }
    return r;
}

cplx ConjMonomial::evaluate(std::span<const cplx> p) const {
    cplx r = 1.0;
    for (int k = 0; k < nvars(); ++k) {
        if (holo(k)) r *= ipow(p[k], holo(k));
        if (anti(k)) r *= ipow(std::conj(p[k]), anti(k));
    }
    return r;
}

Polynomial::Polynomial(int nvars, const Cq& c) : n_(nvars) {
    if (!c.is_zero()) t_.emplace(ConjMonomial(nvars), c);
}

Polynomial::Polynomial(const ConjMonomial& m, const Cq& c) : n_(m.nvars()) {
    if (!c.is_zero()) t_.emplace(m, c);
}

Polynomial Polynomial::var(int nvars, int k, bool conjugated) {
    return Polynomial(ConjMonomial::var(nvars, k, conjugated), Cq(1));
}

Cq Polynomial::constant_term() const { return coefficient(ConjMonomial(n_)); }

Cq Polynomial::coefficient(const ConjMonomial& m) const {
    auto it = t_.find(m);
    return it == t_.end() ? Cq() : it->second;
}

bool Polynomial::is_constant() const {
    return t_.empty() || (t_.size() == 1 && t_.begin()->first.is_one());
}

int Polynomial::degree() const {
    int d = -1;
    for (const auto& [m, c] : t_) d = std::max(d, m.degree());
    return d;
}

int Polynomial::min_degree() const {
    int d = -1;
    for (const auto& [m, c] : t_) d = (d < 0) ? m.degree() : std::min(d, m.degree());
    return d;
}

bool Polynomial::is_radicand() const {
    Cq c0 = constant_term();
    if (!c0.is_real() || sgn(c0.re()) <= 0) return false;
    for (const auto& [m, c] : t_) {
        if (m.is_one()) continue;
        if (!m.is_radial() || !c.is_real() || sgn(c.re()) < 0) return false;
    }
    return true;
}

void Polynomial::add_term(const ConjMonomial& m, const Cq& c) {
    if (c.is_zero()) return;
    if (m.nvars() != n_) throw std::invalid_argument("polynomial arity mismatch");
    auto [it, fresh] = t_.try_emplace(m, c);
    if (!fresh) {
        it->second += c;
        if (it->second.is_zero()) t_.erase(it);
    }
}

Polynomial Polynomial::conj() const {
    Polynomial r(n_);
    for (const auto& [m, c] : t_) r.t_.emplace(m.conj(), c.conj());
    return r;
}

Polynomial Polynomial::operator-() const {
    Polynomial r(*this);
    for (auto& [m, c] : r.t_) c = -c;
    return r;
}

Polynomial& Polynomial::operator+=(const Polynomial& o) {
    if (t_.empty()) n_ = std::max(n_, o.n_);
    for (const auto& [m, c] : o.t_) add_term(m, c);
    return *this;
}

Polynomial& Polynomial::operator-=(const Polynomial& o) {
    if (t_.empty()) n_ = std::max(n_, o.n_);
    for (const auto& [m, c] : o.t_) add_term(m, -c);
    return *this;
}

Polynomial& Polynomial::operator*=(const Polynomial& o) {
    Polynomial r(std::max(n_, o.n_));
    for (const auto& [m1, c1] : t_)
        for (const auto& [m2, c2] : o.t_) r.add_term(m1 * m2, c1 * c2);
    *this = std::move(r);
    return *this;
}

Polynomial& Polynomial::operator*=(const Cq& c) {
    if (c.is_zero()) {
        t_.clear();
        return *this;
    }
    for (auto& [m, v] : t_) v *= c;
    return *this;
}

Polynomial Polynomial::pow(int k) const {
    if (k < 0) throw std::invalid_argument("negative power");
    Polynomial r(n_, Cq(1));
    Polynomial b(*this);
    while (k > 0) {
        if (k & 1) r *= b;
        k >>= 1;
        if (k) b *= b;
    }
    return r;
}

Polynomial Polynomial::truncate(int max_degree) const {
    Polynomial r(n_);
    for (const auto& [m, c] : t_)
        if (m.degree() <= max_degree) r.t_.emplace(m, c);
    return r;
}

Polynomial Polynomial::map_terms(
    int new_nvars, const std::function<std::pair<ConjMonomial, Cq>(const ConjMonomial&)>& f) const {
    Polynomial r(new_nvars);
    for (const auto& [m, c] : t_) {
        auto [m2, c2] = f(m);
        r.add_term(m2, c * c2);
    }
    return r;
}

cplx Polynomial::evaluate(std::span<const cplx> p) const {
    cplx r = 0.0;
    for (const auto& [m, c] : t_) r += c.to_complex() * m.evaluate(p);
    return r;
}

std::strong_ordering operator<=>(const Polynomial& a, const Polynomial& b) {
    if (auto c = a.n_ <=> b.n_; c != 0) return c;
    return std::lexicographical_compare_three_way(a.t_.begin(), a.t_.end(), b.t_.begin(), b.t_.end(),
                                                  [](const auto& x, const auto& y) {
                                                      if (auto c = x.first <=> y.first; c != 0) return c;
                                                      return x.second <=> y.second;
                                                  });
}

} // namespace acb
