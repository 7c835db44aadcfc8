#pragma once

#include <complex>
#include <compare>
#include <string>

#include <gmpxx.h>

namespace acb {

// Exact element of Q(i).
class Cq {
public:
    Cq() : re_(0), im_(0) {}
    Cq(long v) : re_(v), im_(0) {}
    Cq(mpq_class re, mpq_class im = 0);

    static Cq i() { return Cq(0, 1); }
    static Cq parse_rational(const std::string& text);

    const mpq_class& re() const { return re_; }
    const mpq_class& im() const { return im_; }

    bool is_zero() const { return sgn(re_) == 0 && sgn(im_) == 0; }
    bool is_real() const { return sgn(im_) == 0; }
    bool is_one() const { return re_ == 1 && sgn(im_) == 0; }

    Cq conj() const { return Cq(re_, -im_); }
    Cq operator-() const { return Cq(-re_, -im_); }
    Cq& operator+=(const Cq& o);
    Cq& operator-=(const Cq& o);
    Cq& operator*=(const Cq& o);
    Cq& operator/=(const Cq& o);

    friend Cq operator+(Cq a, const Cq& b) { return a += b; }
    friend Cq operator-(Cq a, const Cq& b) { return a -= b; }
    friend Cq operator*(Cq a, const Cq& b) { return a *= b; }
    friend Cq operator/(Cq a, const Cq& b) { return a /= b; }

    friend bool operator==(const Cq& a, const Cq& b) { return a.re_ == b.re_ && a.im_ == b.im_; }
    // Arbitrary total order, used only for canonical containers.
    friend std::strong_ordering operator<=>(const Cq& a, const Cq& b);

    std::complex<double> to_complex() const { return {re_.get_d(), im_.get_d()}; }

private:
    mpq_class re_;
    mpq_class im_;
};

std::string to_string(const mpq_class& q);

} // namespace acb
