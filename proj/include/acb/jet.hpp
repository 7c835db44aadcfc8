#pragma once

#include <functional>
#include <map>
#include <memory>
#include <span>
#include <vector>

#include "acb/expression.hpp"

namespace acb::num {

using cplx = std::complex<double>;
using MultiIndex = std::vector<int>;

// Monomial basis for truncated Taylor series in `nvars` real variables.
class JetLayout {
public:
    JetLayout(int nvars, int order);

    int nvars() const { return nvars_; }
    int order() const { return order_; }
    std::size_t size() const { return multi_.size(); }
    const MultiIndex& multi(std::size_t i) const { return multi_[i]; }
    std::ptrdiff_t index(const MultiIndex& m) const;
    int degree(std::size_t i) const { return deg_[i]; }

    struct Triple {
        std::uint32_t a, b, out;
    };
    const std::vector<Triple>& products() const { return prod_; }

private:
    int nvars_;
    int order_;
    std::vector<MultiIndex> multi_;
    std::vector<int> deg_;
    std::map<MultiIndex, std::size_t> index_;
    std::vector<Triple> prod_;
};

std::shared_ptr<const JetLayout> jet_layout(int nvars, int order);

class Jet {
public:
    Jet() = default;
    explicit Jet(std::shared_ptr<const JetLayout> layout);
    static Jet constant(std::shared_ptr<const JetLayout> layout, cplx v);
    // x_k around the value x0.
    static Jet variable(std::shared_ptr<const JetLayout> layout, int k, double x0);

    const JetLayout& layout() const { return *layout_; }
    const std::shared_ptr<const JetLayout>& layout_ptr() const { return layout_; }
    int order() const { return layout_->order(); }
    int nvars() const { return layout_->nvars(); }

    cplx value() const { return c_[0]; }
    cplx coeff(const MultiIndex& m) const;
    // Partial derivative d^m f at the base point.
    cplx partial(const MultiIndex& m) const;
    std::vector<cplx>& coeffs() { return c_; }
    const std::vector<cplx>& coeffs() const { return c_; }

    // Exact derivative, one order lower.
    Jet derivative(int k) const;
    Jet truncate(int order) const;
    Jet conj() const;

    Jet& operator+=(const Jet& o);
    Jet& operator-=(const Jet& o);
    Jet& operator*=(const cplx& s);
    friend Jet operator+(Jet a, const Jet& b) { return a += b; }
    friend Jet operator-(Jet a, const Jet& b) { return a -= b; }
    friend Jet operator*(const Jet& a, const Jet& b);
    friend Jet operator*(Jet a, cplx s) { return a *= s; }
    friend Jet operator*(cplx s, Jet a) { return a *= s; }
    friend Jet operator+(Jet a, cplx s) {
        a.c_[0] += s;
        return a;
    }
    friend Jet operator-(Jet a, cplx s) {
        a.c_[0] -= s;
        return a;
    }
    Jet operator-() const;
    friend Jet operator/(const Jet& a, const Jet& b);

private:
    std::shared_ptr<const JetLayout> layout_;
    std::vector<cplx> c_;
};

// f(x) for f with Taylor coefficients t_m at x.value(): sum t_m (x - x0)^m.
Jet compose(const Jet& x, std::span<const cplx> taylor);
Jet sqrt(const Jet& x);
Jet exp(const Jet& x);
Jet log(const Jet& x);
Jet reciprocal(const Jet& x);
Jet pow(const Jet& x, int k);

// A smooth function of the 2n real coordinates, evaluated as a jet.
using Field = std::function<Jet(std::span<const double> x, int order)>;

// Coordinate jets (x_1, y_1, ..., x_n, y_n) at x.
std::vector<Jet> coordinate_jets(std::span<const double> x, int order);
// Evaluate an Expression on jets of the real coordinates.
Jet jet_eval(const Expression& e, std::span<const Jet> coords);
Jet jet_eval(const Expression& e, std::span<const double> x, int order);
Field field_of(const Expression& e);
// num * z_j^power (power may be negative; requires z_j != 0 at the base point).
Field laurent_field(const Expression& num, int j, int power);

std::vector<double> to_real(std::span<const cplx> p);
std::vector<cplx> to_complex(std::span<const double> x);

} // namespace acb::num
