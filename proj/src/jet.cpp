#include "acb/jet.hpp"

#include <cmath>
#include <mutex>
#include <stdexcept>

namespace acb::num {

namespace {

void enumerate(int nvars, int degree, MultiIndex& cur, int pos, std::vector<MultiIndex>& out) {
    if (pos == nvars - 1) {
        cur[pos] = degree;
        out.push_back(cur);
        return;
    }
    for (int d = degree; d >= 0; --d) {
        cur[pos] = d;
        enumerate(nvars, degree - d, cur, pos + 1, out);
    }
}

} // namespace

JetLayout::JetLayout(int nvars, int order) : nvars_(nvars), order_(order) {
    if (nvars <= 0 || order < 0) throw std::invalid_argument("bad jet layout");
    for (int d = 0; d <= order; ++d) {
        MultiIndex cur(nvars, 0);
        std::size_t before = multi_.size();
        enumerate(nvars, d, cur, 0, multi_);
        deg_.resize(multi_.size(), d);
        (void)before;
    }
    for (std::size_t i = 0; i < multi_.size(); ++i) index_.emplace(multi_[i], i);
    MultiIndex sum(nvars);
    for (std::size_t a = 0; a < multi_.size(); ++a)
        for (std::size_t b = 0; b < multi_.size(); ++b) {
            if (deg_[a] + deg_[b] > order) continue;
            for (int k = 0; k < nvars; ++k) sum[k] = multi_[a][k] + multi_[b][k];
            prod_.push_back({static_cast<std::uint32_t>(a), static_cast<std::uint32_t>(b),
                             static_cast<std::uint32_t>(index_.at(sum))});
        }
}

std::ptrdiff_t JetLayout::index(const MultiIndex& m) const {
    auto it = index_.find(m);
    return it == index_.end() ? -1 : static_cast<std::ptrdiff_t>(it->second);
}

std::shared_ptr<const JetLayout> jet_layout(int nvars, int order) {
    static std::mutex mu;
    static std::map<std::pair<int, int>, std::shared_ptr<const JetLayout>> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto& slot = cache[{nvars, order}];
    if (!slot) slot = std::make_shared<const JetLayout>(nvars, order);
    return slot;
}

Jet::Jet(std::shared_ptr<const JetLayout> layout) : layout_(std::move(layout)), c_(layout_->size(), 0.0) {}

Jet Jet::constant(std::shared_ptr<const JetLayout> layout, cplx v) {
    Jet j(std::move(layout));
    j.c_[0] = v;
    return j;
}

Jet Jet::variable(std::shared_ptr<const JetLayout> layout, int k, double x0) {
    Jet j(std::move(layout));
    j.c_[0] = x0;
    if (j.order() >= 1) {
        MultiIndex m(j.nvars(), 0);
        m[k] = 1;
        j.c_[j.layout_->index(m)] = 1.0;
    }
    return j;
}

cplx Jet::coeff(const MultiIndex& m) const {
    auto i = layout_->index(m);
    return i < 0 ? cplx(0.0) : c_[i];
}

cplx Jet::partial(const MultiIndex& m) const {
    double f = 1.0;
    for (int a : m)
        for (int t = 2; t <= a; ++t) f *= t;
    return coeff(m) * f;
}

Jet Jet::derivative(int k) const {
    if (order() == 0) throw std::invalid_argument("cannot differentiate an order-0 jet");
    Jet d(jet_layout(nvars(), order() - 1));
    for (std::size_t i = 0; i < d.c_.size(); ++i) {
        MultiIndex m = d.layout_->multi(i);
        m[k] += 1;
        d.c_[i] = static_cast<double>(m[k]) * c_[layout_->index(m)];
    }
    return d;
}

Jet Jet::truncate(int order) const {
    if (order >= this->order()) return *this;
    Jet t(jet_layout(nvars(), order));
    for (std::size_t i = 0; i < t.c_.size(); ++i) t.c_[i] = c_[i];
    return t;
}

Jet Jet::conj() const {
    Jet r(*this);
    for (auto& v : r.c_) v = std::conj(v);
    return r;
}

Jet& Jet::operator+=(const Jet& o) {
    for (std::size_t i = 0; i < c_.size(); ++i) c_[i] += o.c_[i];
    return *this;
}

Jet& Jet::operator-=(const Jet& o) {
    for (std::size_t i = 0; i < c_.size(); ++i) c_[i] -= o.c_[i];
    return *this;
}

Jet& Jet::operator*=(const cplx& s) {
    for (auto& v : c_) v *= s;
    return *this;
}

Jet Jet::operator-() const {
    Jet r(*this);
    for (auto& v : r.c_) v = -v;
    return r;
}

Jet operator*(const Jet& a, const Jet& b) {
    if (a.layout_ != b.layout_) throw std::invalid_argument("jet layout mismatch");
    Jet r(a.layout_);
    for (const auto& t : a.layout_->products()) r.c_[t.out] += a.c_[t.a] * b.c_[t.b];
    return r;
}

Jet operator/(const Jet& a, const Jet& b) { return a * reciprocal(b); }

Jet compose(const Jet& x, std::span<const cplx> taylor) {
    Jet h(x);
    h.coeffs()[0] = 0.0;
    const int order = x.order();
    Jet r = Jet::constant(x.layout_ptr(), taylor.size() > static_cast<std::size_t>(order) ? taylor[order] : 0.0);
    for (int m = order - 1; m >= 0; --m) r = r * h + taylor[m];
    return r;
}

Jet sqrt(const Jet& x) {
    const cplx x0 = x.value();
    if (x0 == 0.0) throw std::domain_error("sqrt jet at zero");
    std::vector<cplx> t(x.order() + 1);
    cplx b = 1.0;
    const cplx s0 = std::sqrt(x0);
    for (int m = 0; m <= x.order(); ++m) {
        t[m] = b * s0 / std::pow(x0, m);
        b *= (0.5 - m) / (m + 1.0);
    }
    return compose(x, t);
}

Jet exp(const Jet& x) {
    std::vector<cplx> t(x.order() + 1);
    cplx e = std::exp(x.value());
    double f = 1.0;
    for (int m = 0; m <= x.order(); ++m) {
        if (m > 0) f *= m;
        t[m] = e / f;
    }
    return compose(x, t);
}

Jet log(const Jet& x) {
    const cplx x0 = x.value();
    if (x0 == 0.0) throw std::domain_error("log jet at zero");
    std::vector<cplx> t(x.order() + 1);
    t[0] = std::log(x0);
    for (int m = 1; m <= x.order(); ++m) t[m] = (m % 2 ? 1.0 : -1.0) / (static_cast<double>(m) * std::pow(x0, m));
    return compose(x, t);
}

Jet reciprocal(const Jet& x) {
    const cplx x0 = x.value();
    if (x0 == 0.0) throw std::domain_error("reciprocal jet at zero");
    std::vector<cplx> t(x.order() + 1);
    for (int m = 0; m <= x.order(); ++m) t[m] = (m % 2 ? -1.0 : 1.0) / std::pow(x0, m + 1);
    return compose(x, t);
}

Jet pow(const Jet& x, int k) {
    if (k < 0) return pow(reciprocal(x), -k);
    Jet r = Jet::constant(x.layout_ptr(), 1.0);
    Jet b(x);
    while (k > 0) {
        if (k & 1) r = r * b;
        k >>= 1;
        if (k) b = b * b;
    }
    return r;
}

std::vector<Jet> coordinate_jets(std::span<const double> x, int order) {
    auto L = jet_layout(static_cast<int>(x.size()), order);
    std::vector<Jet> out;
    for (std::size_t k = 0; k < x.size(); ++k) out.push_back(Jet::variable(L, static_cast<int>(k), x[k]));
    return out;
}

namespace {

struct PowerCache {
    std::vector<std::vector<Jet>> holo, anti;

    explicit PowerCache(std::span<const Jet> coords) {
        const std::size_t n = coords.size() / 2;
        holo.resize(n);
        anti.resize(n);
        for (std::size_t k = 0; k < n; ++k) {
            Jet z = coords[2 * k] + coords[2 * k + 1] * cplx(0, 1);
            holo[k] = {Jet::constant(z.layout_ptr(), 1.0), z};
            anti[k] = {Jet::constant(z.layout_ptr(), 1.0), z.conj()};
        }
    }

    const Jet& get(std::size_t k, int e, bool conj) {
        auto& v = conj ? anti[k] : holo[k];
        while (static_cast<int>(v.size()) <= e) v.push_back(v.back() * v[1]);
        return v[e];
    }
};

Jet poly_jet(const Polynomial& p, PowerCache& pc, const std::shared_ptr<const JetLayout>& L) {
    Jet r(L);
    for (const auto& [m, c] : p.terms()) {
        Jet t = Jet::constant(L, c.to_complex());
        for (int k = 0; k < m.nvars(); ++k) {
            if (m.holo(k)) t = t * pc.get(k, m.holo(k), false);
            if (m.anti(k)) t = t * pc.get(k, m.anti(k), true);
        }
        r += t;
    }
    return r;
}

} // namespace

Jet jet_eval(const Expression& e, std::span<const Jet> coords) {
    if (coords.empty()) throw std::invalid_argument("jet_eval needs coordinates");
    if (!e.is_zero() && static_cast<int>(coords.size()) != 2 * e.nvars())
        throw std::invalid_argument("jet_eval: coordinate count does not match expression arity");
    const auto& L = coords.front().layout_ptr();
    PowerCache pc(coords);
    Jet r(L);
    for (const auto& [s, p] : e.terms()) {
        Jet t = poly_jet(p, pc, L);
        for (const auto& rad : s.radicands()) t = t * sqrt(poly_jet(rad, pc, L));
        r += t;
    }
    return r;
}

Jet jet_eval(const Expression& e, std::span<const double> x, int order) {
    auto c = coordinate_jets(x, order);
    return jet_eval(e, c);
}

Field field_of(const Expression& e) {
    return [e](std::span<const double> x, int order) { return jet_eval(e, x, order); };
}

Field laurent_field(const Expression& num, int j, int power) {
    return [num, j, power](std::span<const double> x, int order) {
        auto c = coordinate_jets(x, order);
        Jet z = c[2 * j] + c[2 * j + 1] * cplx(0, 1);
        return jet_eval(num, c) * pow(z, power);
    };
}

std::vector<double> to_real(std::span<const cplx> p) {
    std::vector<double> x;
    for (auto z : p) {
        x.push_back(z.real());
        x.push_back(z.imag());
    }
    return x;
}

std::vector<cplx> to_complex(std::span<const double> x) {
    std::vector<cplx> p;
    for (std::size_t k = 0; k + 1 < x.size(); k += 2) p.emplace_back(x[k], x[k + 1]);
    return p;
}

} // namespace acb::num
