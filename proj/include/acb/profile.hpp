#pragma once

#include <vector>

#include "acb/jet.hpp"

namespace acb::kahler {

using num::Jet;

// C-infinity step: 0 for t <= 0, 1 for t >= 1. S'' = k * phi with phi a
// smoothed bang-bang profile whose corners have width h.
class SmoothStep {
public:
    explicit SmoothStep(double h);

    double h() const { return h_; }
    double k() const { return k_; }
    // Univariate jet of S at t.
    Jet jet(double t, int order) const;
    double max_first() const { return k_ * first_integral(0.5); }
    double max_second() const { return k_; }

    double phi(double s) const;

private:
    Jet phi_jet(double s, int order) const;
    double first_integral(double t) const;  // int_0^t phi
    double second_integral(double t) const; // int_0^t (t - s) phi(s) ds

    double h_;
    double k_ = 1.0;
};

// Profile f with f' = gtilde, built from g(x) = eps log(x)/x - (1 + eps log delta)/x.
class Profile {
public:
    static Profile build(double delta, double eps, double slack_target = 1.5);

    double delta() const { return delta_; }
    double eps() const { return eps_; }
    double eta() const { return eta_; }
    double slack() const { return slack_; }
    const SmoothStep& step() const { return step_; }

    Jet g(double x, int order) const;
    Jet gamma(double x, int order) const;
    Jet nu(double x, int order) const;
    // G = x * gtilde, K = G' = x gtilde' + gtilde.
    Jet G(double x, int order) const;
    Jet K(double x, int order) const;
    Jet gtilde(double x, int order) const;
    // f and its derivatives up to `order` as a univariate jet.
    Jet f(double x, int order) const;
    double f_value(double x) const;

private:
    Profile(double delta, double eps, SmoothStep step);

    double delta_;
    double eps_;
    double eta_;
    double slack_;
    SmoothStep step_;
    double f_eta_ = 0.0;
};

struct CaseBound {
    const char* name;
    double observed = 0.0;
    double bound = 0.0;
    bool pass = false;
};

struct CaseBoundsReport {
    std::vector<CaseBound> bounds;
    double middle_residual = 0.0; // max |x K - eps| on [2 delta, eta/2]
    double printed_high_value = 0.0; // eps (1 + log 2), informational
    bool pass = false;
};
CaseBoundsReport gtilde_case_bounds(const Profile& p, int samples = 2000);

// max |x (x g' + g) - eps| over a grid on [delta, eta].
double ode_residual(const Profile& p, int samples);

// Compose a univariate jet (Taylor coefficients in t) with a multivariate jet t.
Jet compose_univariate(const Jet& t, const Jet& u);

} // namespace acb::kahler
