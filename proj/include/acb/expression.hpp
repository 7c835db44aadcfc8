#pragma once

#include <functional>
#include <map>
#include <span>
#include <vector>

#include "acb/polynomial.hpp"

namespace acb {

// Product of square roots of distinct radicands. Empty product is 1.
class SmoothScalar {
public:
    SmoothScalar() = default;
    explicit SmoothScalar(std::vector<Polynomial> radicands);
    static SmoothScalar sqrt_of(const Polynomial& radicand);

    const std::vector<Polynomial>& radicands() const { return r_; }
    bool is_one() const { return r_.empty(); }
    bool contains(const Polynomial& r) const;

    // s1 * s2 = rest * sqrt(...) with every repeated radicand squared out into `factor`.
    struct Product;
    Product operator*(const SmoothScalar& o) const;

    SmoothScalar without(const Polynomial& r) const;
    // Radicands in either operand; result is a plain scalar (no squaring).
    SmoothScalar join(const SmoothScalar& o) const;
    SmoothScalar minus(const SmoothScalar& o) const;

    // Always real and positive at any point.
    double evaluate(std::span<const cplx> p) const;

    friend auto operator<=>(const SmoothScalar&, const SmoothScalar&) = default;
    friend bool operator==(const SmoothScalar&, const SmoothScalar&) = default;

private:
    std::vector<Polynomial> r_;
};

struct SmoothScalar::Product {
    SmoothScalar scalar;
    Polynomial factor;
};

// Sum over distinct scalars s of s * P_s with P_s a nonzero Polynomial.
class Expression {
public:
    using TermMap = std::map<SmoothScalar, Polynomial>;

    Expression() = default;
    explicit Expression(int nvars) : n_(nvars) {}
    Expression(int nvars, const Cq& c);
    Expression(const Polynomial& p);
    Expression(const SmoothScalar& s, const Polynomial& p);

    static Expression var(int nvars, int k, bool conjugated = false);
    static Expression sqrt_of(const Polynomial& radicand);

    int nvars() const { return n_; }
    const TermMap& terms() const { return t_; }
    bool is_zero() const { return t_.empty(); }
    bool is_polynomial() const;
    // Radical-free part as a Polynomial (throws if radicals are present).
    Polynomial as_polynomial() const;
    std::size_t term_count() const;

    void for_each_term(const std::function<void(const SmoothScalar&, const ConjMonomial&, const Cq&)>& f) const;

    Expression conj() const;
    Expression operator-() const;
    Expression& operator+=(const Expression& o);
    Expression& operator-=(const Expression& o);
    Expression& operator*=(const Expression& o);
    Expression& operator*=(const Cq& c);
    friend Expression operator+(Expression a, const Expression& b) { return a += b; }
    friend Expression operator-(Expression a, const Expression& b) { return a -= b; }
    friend Expression operator*(Expression a, const Expression& b) { return a *= b; }
    friend Expression operator*(Expression a, const Cq& c) { return a *= c; }
    friend Expression operator*(const Cq& c, Expression a) { return a *= c; }

    Expression pow(int k) const;

    cplx evaluate(std::span<const cplx> p) const;

    friend bool operator==(const Expression& a, const Expression& b) {
        return a.t_ == b.t_ && (a.t_.empty() || a.n_ == b.n_);
    }

private:
    void add(const SmoothScalar& s, const Polynomial& p);

    int n_ = 0;
    TermMap t_;
};

} // namespace acb
