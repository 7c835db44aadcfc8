#pragma once

#include <complex>
#include <compare>
#include <functional>
#include <map>
#include <span>
#include <vector>

#include "acb/coeff.hpp"

namespace acb {

using cplx = std::complex<double>;

// z^a zbar^b over n variables; exponents stored interleaved (a_1, b_1, ..., a_n, b_n).
class ConjMonomial {
public:
    ConjMonomial() = default;
    explicit ConjMonomial(int nvars) : e_(2 * static_cast<std::size_t>(nvars), 0) {}

    static ConjMonomial var(int nvars, int k, bool conjugated = false);

    int nvars() const { return static_cast<int>(e_.size() / 2); }
    int holo(int k) const { return e_[2 * k]; }
    int anti(int k) const { return e_[2 * k + 1]; }
    void set(int k, int a, int b) {
        e_[2 * k] = a;
        e_[2 * k + 1] = b;
    }

    int degree() const;
    bool is_one() const;
    // a_k == b_k for every k, i.e. a function of |z_k|^2 only.
    bool is_radial() const;

    ConjMonomial conj() const;
    ConjMonomial operator*(const ConjMonomial& o) const;

    cplx evaluate(std::span<const cplx> p) const;

    friend auto operator<=>(const ConjMonomial&, const ConjMonomial&) = default;
    friend bool operator==(const ConjMonomial&, const ConjMonomial&) = default;

private:
    std::vector<int> e_;
};

// Finite sum of Cq * ConjMonomial. Zero coefficients are never stored.
class Polynomial {
public:
    using TermMap = std::map<ConjMonomial, Cq>;

    Polynomial() = default;
    explicit Polynomial(int nvars) : n_(nvars) {}
    Polynomial(int nvars, const Cq& c);
    Polynomial(const ConjMonomial& m, const Cq& c);

    static Polynomial var(int nvars, int k, bool conjugated = false);

    int nvars() const { return n_; }
    const TermMap& terms() const { return t_; }
    bool is_zero() const { return t_.empty(); }
    std::size_t size() const { return t_.size(); }

    Cq constant_term() const;
    Cq coefficient(const ConjMonomial& m) const;
    bool is_constant() const;
    int degree() const;
    // Lowest total degree among terms (-1 for the zero polynomial).
    int min_degree() const;

    // c + r, c > 0 rational, r radial with non-negative real coefficients.
    bool is_radicand() const;

    void add_term(const ConjMonomial& m, const Cq& c);

    Polynomial conj() const;
    Polynomial operator-() const;
    Polynomial& operator+=(const Polynomial& o);
    Polynomial& operator-=(const Polynomial& o);
    Polynomial& operator*=(const Polynomial& o);
    Polynomial& operator*=(const Cq& c);
    friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
    friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
    friend Polynomial operator*(Polynomial a, const Polynomial& b) { return a *= b; }
    friend Polynomial operator*(Polynomial a, const Cq& c) { return a *= c; }

    Polynomial pow(int k) const;
    Polynomial truncate(int max_degree) const;

    // Applies a term-wise map m -> c' * m'; results are summed.
    Polynomial map_terms(int new_nvars,
                         const std::function<std::pair<ConjMonomial, Cq>(const ConjMonomial&)>& f) const;

    cplx evaluate(std::span<const cplx> p) const;

    friend bool operator==(const Polynomial& a, const Polynomial& b) { return a.n_ == b.n_ && a.t_ == b.t_; }
    friend std::strong_ordering operator<=>(const Polynomial& a, const Polynomial& b);

private:
    int n_ = 0;
    TermMap t_;
};

} // namespace acb
