#include "acb/profile.hpp"

#include <cmath>
#include <functional>
#include <stdexcept>

namespace acb::kahler {

using num::cplx;
using num::jet_layout;

namespace {

constexpr double kGLx[5] = {0.1488743389816312, 0.4333953941292472, 0.6794095682990244, 0.8650633666889845,
                            0.9739065285171717};
constexpr double kGLw[5] = {0.2955242247147529, 0.2692667193099963, 0.2190863625159820, 0.1494513491505806,
                            0.0666713443086881};

double gauss(const std::function<double(double)>& f, double a, double b, int panels) {
    double s = 0.0;
    const double w = (b - a) / panels;
    for (int p = 0; p < panels; ++p) {
        const double c = a + (p + 0.5) * w, r = 0.5 * w;
        for (int i = 0; i < 5; ++i) s += kGLw[i] * r * (f(c - r * kGLx[i]) + f(c + r * kGLx[i]));
    }
    return s;
}

Jet var1(double x, int order) { return Jet::variable(jet_layout(1, order), 0, x); }
Jet const1(double v, int order) { return Jet::constant(jet_layout(1, order), v); }

// sigma(u) = 1 / (1 + exp(1/u - 1/(1-u))) on (0, 1).
Jet sigma_jet(const Jet& u) {
    const double u0 = u.value().real();
    const int order = u.order();
    if (u0 <= 0.0) return const1(0.0, order);
    if (u0 >= 1.0) return const1(1.0, order);
    const double e0 = 1.0 / u0 - 1.0 / (1.0 - u0);
    if (e0 > 700.0) return const1(0.0, order);
    if (e0 < -700.0) return const1(1.0, order);
    Jet one = const1(1.0, order);
    Jet e = num::reciprocal(u) - num::reciprocal(one - u);
    return num::reciprocal(one + num::exp(e));
}

} // namespace

SmoothStep::SmoothStep(double h) : h_(h) {
    if (!(h > 0.0 && h < 0.125)) throw std::invalid_argument("smooth step corner width must lie in (0, 1/8)");
    k_ = 1.0 / second_integral(1.0);
}

Jet SmoothStep::phi_jet(double s, int order) const {
    Jet x = var1(s, order);
    const double h = h_;
    if (s <= 0.0 || s >= 1.0) return const1(0.0, order);
    if (s < h) return sigma_jet(x * (1.0 / h));
    if (s <= 0.5 - h) return const1(1.0, order);
    if (s < 0.5 + h) return const1(1.0, order) - 2.0 * sigma_jet((x - (0.5 - h)) * (1.0 / (2.0 * h)));
    if (s <= 1.0 - h) return const1(-1.0, order);
    return -sigma_jet((const1(1.0, order) - x) * (1.0 / h));
}

double SmoothStep::phi(double s) const { return phi_jet(s, 0).value().real(); }

double SmoothStep::first_integral(double t) const {
    const double br[] = {0.0, h_, 0.5 - h_, 0.5 + h_, 1.0 - h_, 1.0};
    double s = 0.0;
    for (int i = 0; i < 5 && br[i] < t; ++i) {
        const double b = std::min(br[i + 1], t);
        s += gauss([this](double u) { return phi(u); }, br[i], b, 8);
    }
    return s;
}

double SmoothStep::second_integral(double t) const {
    const double br[] = {0.0, h_, 0.5 - h_, 0.5 + h_, 1.0 - h_, 1.0};
    double s = 0.0;
    for (int i = 0; i < 5 && br[i] < t; ++i) {
        const double b = std::min(br[i + 1], t);
        s += gauss([this, t](double u) { return (t - u) * phi(u); }, br[i], b, 8);
    }
    return s;
}

Jet SmoothStep::jet(double t, int order) const {
    if (t <= 0.0) return const1(0.0, order);
    if (t >= 1.0) return const1(1.0, order);
    Jet r(jet_layout(1, order));
    auto& c = r.coeffs();
    c[0] = k_ * second_integral(t);
    if (order >= 1) c[1] = k_ * first_integral(t);
    if (order >= 2) {
        Jet p = phi_jet(t, order - 2);
        // c_l = S^(l) / l! = k phi^(l-2) / l! = k p_{l-2} (l-2)! / l!
        for (int l = 2; l <= order; ++l) c[l] = k_ * p.coeffs()[l - 2] / (static_cast<double>(l) * (l - 1));
    }
    return r;
}

Jet compose_univariate(const Jet& t, const Jet& u) {
    return num::compose(t, std::span<const cplx>(u.coeffs().data(), std::min(u.coeffs().size(), std::size_t(t.order() + 1))));
}

Profile::Profile(double delta, double eps, SmoothStep step)
    : delta_(delta), eps_(eps), eta_(delta * std::exp(1.0 / eps)), slack_(0.0), step_(step) {
    slack_ = std::max(step_.max_first() / 2.0, step_.max_second() / 4.0);
}

Profile Profile::build(double delta, double eps, double slack_target) {
    if (!(delta > 0.0 && delta < 1.0)) throw std::invalid_argument("delta must lie in (0, 1)");
    if (!(eps > 0.0 && eps < 1.0)) throw std::invalid_argument("eps must lie in (0, 1)");
    if (!(slack_target > 1.0)) throw std::invalid_argument("slack target must exceed 1");
    if (delta * std::exp(1.0 / eps) / 2.0 < 2.0 * delta)
        throw std::invalid_argument("eps too large: the bump transition regions overlap");
    double h = 0.05;
    for (;;) {
        Profile p(delta, eps, SmoothStep(h));
        if (p.slack_ <= slack_target) {
            p.f_eta_ = p.f_value(p.eta_);
            return p;
        }
        h *= 0.5;
        if (h < 1e-4) throw std::runtime_error("cannot reach the requested slack");
    }
}

Jet Profile::g(double x, int order) const {
    if (x <= 0.0) throw std::domain_error("g is defined for x > 0");
    Jet X = var1(x, order);
    return (num::log(X) * eps_ - (1.0 + eps_ * std::log(delta_))) * num::reciprocal(X);
}

Jet Profile::gamma(double x, int order) const {
    Jet s = step_.jet((x - delta_) / delta_, order);
    for (int l = 1; l <= order; ++l) s.coeffs()[l] /= std::pow(delta_, l);
    return const1(1.0, order) - s;
}

Jet Profile::nu(double x, int order) const {
    const double a = eta_ / 2.0;
    Jet s = step_.jet((x - a) / a, order);
    for (int l = 1; l <= order; ++l) s.coeffs()[l] /= std::pow(a, l);
    return const1(1.0, order) - s;
}

Jet Profile::G(double x, int order) const {
    if (x <= delta_) return const1(1.0, order);
    if (x >= eta_) return const1(0.0, order);
    Jet X = var1(x, order);
    // x g = eps log(x / delta) - 1
    Jet xg = num::log(X * (1.0 / delta_)) * eps_ - 1.0;
    Jet one = const1(1.0, order);
    return nu(x, order) * (xg + gamma(x, order) * (one - xg));
}

Jet Profile::K(double x, int order) const { return G(x, order + 1).derivative(0); }

Jet Profile::gtilde(double x, int order) const {
    if (x <= 0.0) throw std::domain_error("gtilde is defined for x > 0");
    return G(x, order) * num::reciprocal(var1(x, order));
}

namespace {

double simpson(const std::function<double(double)>& f, double a, double b, double fa, double fm, double fb,
               double whole, double tol, int depth) {
    const double m = 0.5 * (a + b);
    const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
    const double flm = f(lm), frm = f(rm);
    const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    if (depth <= 0 || std::abs(left + right - whole) <= 15.0 * tol)
        return left + right + (left + right - whole) / 15.0;
    return simpson(f, a, m, fa, flm, fm, left, tol / 2.0, depth - 1) +
           simpson(f, m, b, fm, frm, fb, right, tol / 2.0, depth - 1);
}

} // namespace

double Profile::f_value(double x) const {
    if (x <= 0.0) throw std::domain_error("f is defined for x > 0");
    if (x <= delta_) return std::log(x);
    if (x >= eta_ && f_eta_ != 0.0) return f_eta_;
    const double b = std::min(x, eta_);
    auto gt = [this](double y) { return gtilde(y, 0).value().real(); };
    // Split at the bump corners so each piece is smooth.
    const double br[] = {delta_, 2.0 * delta_, eta_ / 2.0, eta_};
    double s = std::log(delta_);
    for (int i = 0; i < 3 && br[i] < b; ++i) {
        const double lo = br[i], hi = std::min(br[i + 1], b);
        const double fa = gt(lo), fb = gt(hi), fm = gt(0.5 * (lo + hi));
        s += simpson(gt, lo, hi, fa, fm, fb, (hi - lo) / 6.0 * (fa + 4.0 * fm + fb), 1e-12, 40);
    }
    return s;
}

Jet Profile::f(double x, int order) const {
    Jet r(jet_layout(1, order));
    r.coeffs()[0] = f_value(x);
    if (order >= 1) {
        Jet gt = x <= delta_ ? num::reciprocal(var1(x, order - 1)) : gtilde(x, order - 1);
        for (int l = 1; l <= order; ++l) r.coeffs()[l] = gt.coeffs()[l - 1] / static_cast<double>(l);
    }
    return r;
}

CaseBoundsReport gtilde_case_bounds(const Profile& p, int samples) {
    const double d = p.delta(), e = p.eps(), eta = p.eta(), s = p.slack(), ln2 = std::log(2.0);
    CaseBoundsReport rep;
    auto scan = [&](double a, double b, auto&& f) {
        double m = 0.0;
        for (int i = 0; i <= samples; ++i) {
            double x = a + (b - a) * i / samples;
            m = std::max(m, f(x));
        }
        return m;
    };
    auto xK = [&](double x) { return x * std::abs(p.K(x, 0).value()); };
    auto x2dK = [&](double x) { return x * x * std::abs(p.K(x, 1).coeffs()[1]); };
    rep.bounds.push_back({"low x|K|", scan(d, 2 * d, xK), s * (8 + e + 4 * e * ln2), false});
    rep.bounds.push_back({"low x^2|K'|", scan(d, 2 * d, x2dK), s * (32 + e * ln2 + 9 * e), false});
    rep.bounds.push_back({"high x|K|", scan(eta / 2, eta, xK), s * e * (1 + 4 * ln2), false});
    rep.bounds.push_back({"high x^2|K'|", scan(eta / 2, eta, x2dK), s * (9 * e + 16 * e * ln2), false});
    rep.middle_residual = scan(2 * d, eta / 2, [&](double x) { return std::abs(xK(x) - e); });
    rep.printed_high_value = e * (1 + ln2);
    rep.pass = rep.middle_residual < 1e-12;
    for (auto& b : rep.bounds) {
        b.pass = b.observed <= b.bound;
        rep.pass = rep.pass && b.pass;
    }
    return rep;
}

double ode_residual(const Profile& p, int samples) {
    double m = 0.0;
    for (int i = 0; i <= samples; ++i) {
        double x = p.delta() + (p.eta() - p.delta()) * i / samples;
        Jet g = p.g(x, 1);
        double gv = g.value().real(), gp = g.coeffs()[1].real();
        m = std::max(m, std::abs(x * (x * gp + gv) - p.eps()));
    }
    return m;
}

} // namespace acb::kahler
