#include "acb/kahler.hpp"

#include <cmath>
#include <random>
#include <stdexcept>

namespace acb::kahler {

using num::coordinate_jets;
using num::MultiIndex;

namespace {

const cplx I(0, 1);

// t = |z|^2 (1 + |w|^2) from real coordinate jets (x, y, u, v).
Jet t_jet(std::span<const Jet> c) {
    Jet z2 = c[0] * c[0] + c[1] * c[1];
    Jet w2 = c[2] * c[2] + c[3] * c[3];
    return z2 * (w2 + 1.0);
}

cplx second(const Jet& F, int a, int b) {
    MultiIndex m(F.nvars(), 0);
    m[a] += 1;
    m[b] += 1;
    return F.partial(m);
}

using HermitianJets = std::function<std::array<Jet, 4>(std::span<const Jet> coords)>;

Form hermitian_form(HermitianJets h) {
    return {4, 2, [h](std::span<const double> x, int order) {
                auto c = coordinate_jets(x, order);
                auto hc = h(c);
                std::vector<Jet> out(6, Jet(c.front().layout_ptr()));
                for (int k = 0; k < 4; ++k) {
                    std::array<cplx, 4> unit{};
                    unit[k] = 1.0;
                    auto r = hermitian_to_real(unit);
                    for (int q = 0; q < 6; ++q)
                        if (r[q] != 0.0) out[q] += hc[k] * r[q];
                }
                return out;
            }};
}

} // namespace

std::array<cplx, 4> ddbar_coeffs_jet(const UnivariateFn& f, cplx z, cplx w) {
    const double x[4] = {z.real(), z.imag(), w.real(), w.imag()};
    auto c = coordinate_jets(x, 2);
    Jet t = t_jet(c);
    Jet F = compose_univariate(t, f(t.value().real(), 2));
    std::array<cplx, 4> out;
    int idx = 0;
    for (int a = 0; a < 2; ++a)
        for (int b = 0; b < 2; ++b) {
            const int xa = 2 * a, ya = 2 * a + 1, xb = 2 * b, yb = 2 * b + 1;
            out[idx++] = 0.25 * (second(F, xa, xb) + I * second(F, xa, yb) - I * second(F, ya, xb) +
                                 second(F, ya, yb));
        }
    return out;
}

std::array<cplx, 4> ddbar_coeffs_formula(const UnivariateFn& f, cplx z, cplx w) {
    const double z2 = std::norm(z), w2 = std::norm(w);
    const double t = z2 * (1 + w2);
    Jet ft = f(t, 2);
    const double f1 = ft.coeffs()[1].real(), f2 = 2.0 * ft.coeffs()[2].real();
    const cplx zb = std::conj(z), wb = std::conj(w);
    return {f2 * z2 * (1 + w2) * (1 + w2) + f1 * (1 + w2), f2 * z2 * (1 + w2) * zb * w + f1 * zb * w,
            f2 * z2 * (1 + w2) * z * wb + f1 * z * wb, f2 * z2 * z2 * w2 + f1 * z2};
}

DdbarReport ddbar_formula_check(const UnivariateFn& f, std::span<const std::array<cplx, 2>> points, double tol) {
    DdbarReport rep;
    for (const auto& p : points) {
        auto a = ddbar_coeffs_jet(f, p[0], p[1]);
        auto b = ddbar_coeffs_formula(f, p[0], p[1]);
        for (int k = 0; k < 4; ++k)
            rep.max_residual = std::max(rep.max_residual, std::abs(a[k] - b[k]) / std::max(1.0, std::abs(b[k])));
        ++rep.points;
    }
    rep.pass = rep.max_residual < tol;
    return rep;
}

std::array<cplx, 6> hermitian_to_real(const std::array<cplx, 4>& c) {
    // basis order: dx^dy, dx^du, dx^dv, dy^du, dy^dv, du^dv
    std::array<cplx, 6> out{};
    auto slot = [](int r, int s) {
        static const int table[4][4] = {{-1, 0, 1, 2}, {0, -1, 3, 4}, {1, 3, -1, 5}, {2, 4, 5, -1}};
        return table[r][s];
    };
    int idx = 0;
    for (int a = 0; a < 2; ++a)
        for (int b = 0; b < 2; ++b) {
            cplx alpha[4] = {0, 0, 0, 0}, beta[4] = {0, 0, 0, 0};
            alpha[2 * a] = 1.0;
            alpha[2 * a + 1] = I;
            beta[2 * b] = 1.0;
            beta[2 * b + 1] = -I;
            const cplx coef = I * c[idx++];
            for (int r = 0; r < 4; ++r)
                for (int s = r + 1; s < 4; ++s) out[slot(r, s)] += coef * (alpha[r] * beta[s] - alpha[s] * beta[r]);
        }
    return out;
}

Eigen::MatrixXd anti_gs(const AntiGSInstance& inst) {
    const auto& G = inst.gram;
    const auto& P = inst.anti;
    const Eigen::MatrixXd& W = inst.vectors;
    const Eigen::Index s = W.cols();
    if (G.rows() != W.rows() || P.rows() != W.rows()) throw std::invalid_argument("anti_gs: dimension mismatch");
    Eigen::FullPivLU<Eigen::MatrixXd> lu(W);
    if (lu.rank() < s) throw std::invalid_argument("anti_gs: input vectors are linearly dependent");
    Eigen::MatrixXd out = W;
    Eigen::MatrixXd anti(W.rows(), s);
    std::vector<double> norms(static_cast<std::size_t>(s), 0.0);
    const double scale = std::max(1.0, (W.transpose() * G * W).diagonal().maxCoeff());
    for (Eigen::Index k = 0; k < s; ++k) {
        Eigen::VectorXd w = W.col(k);
        const Eigen::VectorXd ak = P * W.col(k);
        for (Eigen::Index n = 0; n < k; ++n) {
            if (norms[n] <= 1e-24 * scale) continue;
            w -= (ak.dot(G * anti.col(n)) / norms[n]) * out.col(n);
        }
        out.col(k) = w;
        anti.col(k) = P * w;
        norms[k] = anti.col(k).dot(G * anti.col(k));
    }
    return out;
}

AntiGSInstance random_anti_gs_instance(int dim, int count, std::uint64_t seed) {
    if (dim < 2 || count < 1 || count > dim) throw std::invalid_argument("bad anti_gs instance shape");
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> N(0.0, 1.0);
    std::uniform_int_distribution<int> coin(0, 3);
    auto rnd = [&](int r, int c) {
        Eigen::MatrixXd m(r, c);
        for (int i = 0; i < r; ++i)
            for (int j = 0; j < c; ++j) m(i, j) = N(rng);
        return m;
    };
    AntiGSInstance inst;
    Eigen::MatrixXd Q = rnd(dim, dim);
    inst.gram = Q.transpose() * Q + Eigen::MatrixXd::Identity(dim, dim);
    const int m = 1 + static_cast<int>(rng() % static_cast<std::uint64_t>(dim - 1));
    Eigen::MatrixXd B = rnd(dim, m);
    inst.anti = B * (B.transpose() * inst.gram * B).inverse() * B.transpose() * inst.gram;
    inst.vectors = rnd(dim, count);
    const Eigen::MatrixXd Id = Eigen::MatrixXd::Identity(dim, dim);
    // At most dim - m columns may sit in the invariant part, else they become dependent.
    for (int k = 0, left = dim - m; k < count && left > 0; ++k)
        if (coin(rng) == 0) {
            inst.vectors.col(k) = (Id - inst.anti) * inst.vectors.col(k);
            --left;
        }
    return inst;
}

Form pullback_standard_form() {
    return hermitian_form([](std::span<const Jet> c) {
        Jet z = c[0] + c[1] * I, w = c[2] + c[3] * I;
        Jet w2 = c[2] * c[2] + c[3] * c[3];
        Jet z2 = c[0] * c[0] + c[1] * c[1];
        return std::array<Jet, 4>{(w2 + 1.0) * 0.5, w * z.conj() * 0.5, z * w.conj() * 0.5, z2 * 0.5};
    });
}

Form ddbar_profile_form(const Profile& p) {
    return hermitian_form([p](std::span<const Jet> c) {
        Jet z = c[0] + c[1] * I, w = c[2] + c[3] * I;
        Jet w2 = c[2] * c[2] + c[3] * c[3];
        Jet z2 = c[0] * c[0] + c[1] * c[1];
        Jet t = z2 * (w2 + 1.0);
        const double t0 = t.value().real();
        const int order = t.order();
        Jet K = compose_univariate(t, p.K(t0, order));
        Jet G = compose_univariate(t, p.G(t0, order));
        Jet inv = num::reciprocal(w2 + 1.0);
        return std::array<Jet, 4>{(w2 + 1.0) * K, z.conj() * w * K, z * w.conj() * K,
                                  K * z2 * w2 * inv + G * inv * inv};
    });
}

OmegaReport omega_assembly(const ACStructure& X, const Profile& p, const OmegaOptions& opt) {
    if (X.n() != 2) throw std::invalid_argument("omega_assembly requires n = 2");
    const auto& g = opt.region;
    if (g.j != 0) throw std::invalid_argument("omega_assembly works in chart 1");
    if (g.r_min <= 0.0 || g.r_max <= g.r_min) throw std::invalid_argument("bad region radii");
    if (g.r_max * g.r_max * (1.0 + g.w_max * g.w_max) >= 1.0)
        throw std::invalid_argument("region touches the chart boundary (|p| >= 1)");
    OmegaReport rep;
    auto J = num::matrix_field(X);
    rep.ddbar_part = ddbar_profile_form(p);
    rep.omega = num::sum(pullback_standard_form(), rep.ddbar_part);
    rep.omega_minus = num::anti_invariant_part(rep.omega, J);
    const double two_pi = 2.0 * std::acos(-1.0);
    auto point = [&](double r, double th, double rw, double tw) {
        return std::vector<double>{r * std::cos(th), r * std::sin(th), rw * std::cos(tw), rw * std::sin(tw)};
    };
    Form dOmega = num::exterior_d(rep.omega);
    for (const auto& u : num::halton_points(4, opt.closedness_samples, opt.seed + 1)) {
        double r = g.r_min * std::pow(g.r_max / g.r_min, u[0]);
        auto x = point(r, two_pi * u[1], g.w_max * std::sqrt(u[2]), two_pi * u[3]);
        rep.closedness = std::max(rep.closedness, num::norm(dOmega.evaluate(x)));
    }
    rep.positivity = num::positivity_sample(rep.omega, J, g, opt.positivity_samples, opt.seed);
    auto pts = num::halton_points(3, static_cast<std::size_t>(opt.fit_points_per_radius), opt.seed + 2);
    for (int i = 0; i < opt.fit_radii; ++i) {
        double r = g.r_max * std::pow(g.r_min / g.r_max, static_cast<double>(i) / (opt.fit_radii - 1));
        double m = 0.0;
        for (const auto& u : pts)
            m = std::max(m, num::norm(rep.omega_minus.evaluate(point(r, two_pi * u[0], g.w_max * std::sqrt(u[1]),
                                                                       two_pi * u[2]))));
        rep.fit_samples.emplace_back(r, m);
    }
    rep.fit = num::bound_fit(rep.fit_samples);
    Form ddbar_minus = num::anti_invariant_part(rep.ddbar_part, J);
    const double rmax = 0.999 / std::sqrt(1.0 + g.w_max * g.w_max);
    for (const auto& u : num::halton_points(4, opt.support_samples, opt.seed + 3)) {
        double r = g.r_min * std::pow(rmax / g.r_min, u[0]);
        double rw = g.w_max * std::sqrt(u[2]);
        auto x = point(r, two_pi * u[1], rw, two_pi * u[3]);
        if (num::norm(ddbar_minus.evaluate(x)) > 1e-13) {
            rep.support_sup_t = std::max(rep.support_sup_t, r * r * (1 + rw * rw));
            rep.support_sup_z = std::max(rep.support_sup_z, r);
        }
    }
    rep.support_ok = rep.support_sup_t < p.eta();
    return rep;
}

} // namespace acb::kahler
