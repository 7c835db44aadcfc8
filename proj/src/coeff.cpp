#include "acb/coeff.hpp"

#include <stdexcept>

namespace acb {

Cq::Cq(mpq_class re, mpq_class im) : re_(std::move(re)), im_(std::move(im)) {
    re_.canonicalize();
    im_.canonicalize();
}

Cq Cq::parse_rational(const std::string& text) {
    mpq_class q;
    if (q.set_str(text, 10) != 0) throw std::invalid_argument("bad rational literal: " + text);
    if (q.get_den() == 0) throw std::invalid_argument("zero denominator: " + text);
    q.canonicalize();
    return Cq(q, 0);
}

Cq& Cq::operator+=(const Cq& o) {
    re_ += o.re_;
    im_ += o.im_;
    return *this;
}

Cq& Cq::operator-=(const Cq& o) {
    re_ -= o.re_;
    im_ -= o.im_;
    return *this;
}

Cq& Cq::operator*=(const Cq& o) {
    mpq_class r = re_ * o.re_ - im_ * o.im_;
    mpq_class m = re_ * o.im_ + im_ * o.re_;
    re_ = std::move(r);
    im_ = std::move(m);
    return *this;
}

Cq& Cq::operator/=(const Cq& o) {
    mpq_class n = o.re_ * o.re_ + o.im_ * o.im_;
    if (sgn(n) == 0) throw std::domain_error("division by zero in Q(i)");
    mpq_class r = (re_ * o.re_ + im_ * o.im_) / n;
    mpq_class m = (im_ * o.re_ - re_ * o.im_) / n;
    re_ = std::move(r);
    im_ = std::move(m);
    return *this;
}

std::strong_ordering operator<=>(const Cq& a, const Cq& b) {
    int c = cmp(a.re_, b.re_);
    if (c == 0) c = cmp(a.im_, b.im_);
    return c < 0 ? std::strong_ordering::less
                 : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
}

std::string to_string(const mpq_class& q) { return q.get_str(10); }

} // namespace acb
