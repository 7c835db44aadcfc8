#pragma once

#include <map>
#include <optional>
#include <vector>

#include "acb/expression.hpp"

namespace acb {

// num / den where den is a product of square roots (never zero).
struct Quotient {
    Expression num;
    SmoothScalar den;

    Quotient() = default;
    Quotient(Expression n, SmoothScalar d = {}) : num(std::move(n)), den(std::move(d)) {}

    bool is_zero() const { return num.is_zero(); }
    Quotient conj() const { return {num.conj(), den}; }
    cplx evaluate(std::span<const cplx> p) const { return num.evaluate(p) / den.evaluate(p); }
    // Exact test q == e.
    bool equals(const Expression& e) const;

    friend Quotient operator+(const Quotient& a, const Quotient& b);
    friend Quotient operator-(const Quotient& a, const Quotient& b);
    friend Quotient operator*(const Quotient& a, const Expression& e);
    friend Quotient operator*(const Quotient& a, const Cq& c) { return {a.num * c, a.den}; }
};

// d/dz_k (holomorphic) or d/dzbar_k of e.
Quotient wirtinger_d(const Expression& e, int k, bool anti);

// Finite sum of q_t * sqrt(t) with squarefree-ish positive integers t.
class SurdSum {
public:
    SurdSum() = default;
    SurdSum(const Cq& c) { add(c, mpz_class(1)); }
    static SurdSum sqrt_of(const mpq_class& c);

    const std::map<mpz_class, Cq>& terms() const { return t_; }
    bool is_zero() const { return t_.empty(); }
    // Rational value if no surd survives.
    std::optional<Cq> as_rational() const;

    void add(const Cq& c, const mpz_class& t);
    SurdSum& operator+=(const SurdSum& o);
    SurdSum operator*(const SurdSum& o) const;
    SurdSum operator*(const Cq& c) const;
    SurdSum conj() const;

    cplx to_complex() const;
    friend bool operator==(const SurdSum&, const SurdSum&) = default;

private:
    std::map<mpz_class, Cq> t_;
};

constexpr int kTaylorMaxOrder = 6;

using TaylorMap = std::map<ConjMonomial, SurdSum>;
// Taylor coefficients at the origin up to total degree `order` (<= kTaylorMaxOrder).
TaylorMap taylor_coeffs(const Expression& e, int order);
SurdSum taylor_coefficient(const TaylorMap& t, const ConjMonomial& m);

enum class DivVerdict { Divisible, NotDivisible, Unknown };

struct DivResult {
    DivVerdict verdict = DivVerdict::Unknown;
    Expression quotient;  // valid when Divisible
    Expression witness;   // term with no z_j factor when NotDivisible
};

// Decides whether e = z_j * F with F smooth.
DivResult smooth_div(const Expression& e, int j);
// Same, for e = z_j^a zbar_j^b * F.
DivResult smooth_div_monomial(const Expression& e, int j, int a, int b);

// Pull back along the blow-up chart p_i = z_j * w_i (i != j), p_j = z_j.
Expression substitute_chart(const Expression& e, int j);
// z_k -> images[k], zbar_k -> conj(images[k]); radicands must stay radicands.
Expression substitute(const Expression& e, const std::vector<Polynomial>& images);

const char* to_string(DivVerdict v);

} // namespace acb
