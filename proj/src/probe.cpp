#include "acb/probe.hpp"

#include <cmath>
#include <stdexcept>

namespace acb::num {

const char* to_string(ProbeVerdict v) {
    switch (v) {
    case ProbeVerdict::Smooth: return "smooth";
    case ProbeVerdict::ContinuousOnly: return "continuous_only";
    case ProbeVerdict::Singular: return "singular";
    default: return "inconclusive";
    }
}

namespace {

// All order-k partials in (x_j, y_j).
std::vector<cplx> derivatives(const Jet& jet, int j, int k) {
    std::vector<cplx> d;
    for (int a = k; a >= 0; --a) {
        MultiIndex m(jet.nvars(), 0);
        m[2 * j] = a;
        m[2 * j + 1] = k - a;
        d.push_back(jet.partial(m));
    }
    return d;
}

double vnorm(const std::vector<cplx>& v) {
    double s = 0.0;
    for (auto c : v) s += std::norm(c);
    return std::sqrt(s);
}

} // namespace

ProbeReport probe_divisor(const Field& f, int n, int j, std::span<const cplx> base, const ProbeOptions& opt) {
    if (opt.radii.size() < 2 || opt.rays < 2) throw std::invalid_argument("probe needs two radii and two rays");
    if (static_cast<int>(base.size()) != n || j < 0 || j >= n) throw std::invalid_argument("probe base has wrong size");
    const double two_pi = 2.0 * std::acos(-1.0);
    const std::size_t R = opt.radii.size();
    ProbeReport rep;
    rep.orders.resize(opt.max_order + 1);
    for (int k = 0; k <= opt.max_order; ++k) rep.orders[k].order = k;
    for (std::size_t ri = 0; ri < R; ++ri) {
        const double r = opt.radii[ri];
        std::vector<std::vector<std::vector<cplx>>> D(opt.max_order + 1);
        for (int t = 0; t < opt.rays; ++t) {
            const double th = two_pi * t / opt.rays;
            std::vector<cplx> p(base.begin(), base.end());
            p[j] = std::polar(r, th);
            auto x = to_real(p);
            Jet jet = f(x, opt.max_order);
            if (ri == R - 1 && t == 0) rep.limit = jet.value();
            for (int k = 0; k <= opt.max_order; ++k) D[k].push_back(derivatives(jet, j, k));
        }
        for (int k = 0; k <= opt.max_order; ++k) {
            const auto& Dk = D[k];
            std::vector<cplx> mean(Dk.front().size(), 0.0);
            double mag = 0.0;
            for (const auto& d : Dk) {
                for (std::size_t a = 0; a < d.size(); ++a) mean[a] += d[a] / static_cast<double>(opt.rays);
                mag = std::max(mag, vnorm(d));
            }
            double spread = 0.0;
            for (const auto& d : Dk) {
                std::vector<cplx> diff(d.size());
                for (std::size_t a = 0; a < d.size(); ++a) diff[a] = d[a] - mean[a];
                spread = std::max(spread, vnorm(diff));
            }
            spread /= std::max(1.0, vnorm(mean));
            auto& o = rep.orders[k];
            o.spread.push_back(spread);
            if (ri == 0) o.magnitude_first = mag;
            if (ri == R - 1) o.magnitude_last = mag;
        }
    }
    const double r1 = opt.radii[R - 2], r2 = opt.radii[R - 1];
    for (auto& o : rep.orders) {
        const double s1 = o.spread[R - 2], s2 = o.spread[R - 1];
        o.spread_limit = std::abs((r1 * s2 - r2 * s1) / (r1 - r2));
        o.diverges = o.magnitude_last > 1e3 * std::max(1.0, o.magnitude_first) || !std::isfinite(o.magnitude_last);
    }
    auto bad = [&](const ProbeOrder& o) { return o.diverges || o.spread_limit > opt.tol; };
    if (bad(rep.orders[0])) {
        rep.verdict = ProbeVerdict::Singular;
        rep.first_bad_order = 0;
        return rep;
    }
    for (const auto& o : rep.orders)
        if (bad(o)) {
            rep.verdict = ProbeVerdict::ContinuousOnly;
            rep.first_bad_order = o.order;
            return rep;
        }
    bool settled = true;
    for (const auto& o : rep.orders)
        if (o.spread.back() > 100.0 * opt.tol) settled = false;
    rep.verdict = settled ? ProbeVerdict::Smooth : ProbeVerdict::Inconclusive;
    return rep;
}

ProbeReport divisor_smoothness_fixture(const Expression& num, int j, int power, std::span<const cplx> base,
                                       const ProbeOptions& opt) {
    return probe_divisor(laurent_field(num, j, power), num.nvars(), j, base, opt);
}

} // namespace acb::num
