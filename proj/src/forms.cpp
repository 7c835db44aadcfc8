#include "acb/forms.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <map>
#include <mutex>
#include <random>
#include <stdexcept>

namespace acb::num {

namespace {

Jet real_part(const Jet& j) {
    Jet r(j);
    for (auto& v : r.coeffs()) v = v.real();
    return r;
}

Jet imag_part(const Jet& j) {
    Jet r(j);
    for (auto& v : r.coeffs()) v = v.imag();
    return r;
}

using EntryJets = std::function<std::pair<Jet, Jet>(int i, int k, std::span<const Jet> coords)>;

std::vector<Jet> assemble(int n, std::span<const double> x, int order, const EntryJets& entry) {
    auto c = coordinate_jets(x, order);
    const int m = 2 * n;
    std::vector<Jet> M(static_cast<std::size_t>(m * m), Jet(c.front().layout_ptr()));
    const cplx I(0, 1);
    for (int i = 0; i < n; ++i)
        for (int k = 0; k < n; ++k) {
            auto [L, A] = entry(i, k, c);
            Jet cx = L + A;
            Jet cy = (L - A) * I;
            M[(2 * i) * m + 2 * k] = real_part(cx);
            M[(2 * i + 1) * m + 2 * k] = imag_part(cx);
            M[(2 * i) * m + 2 * k + 1] = real_part(cy);
            M[(2 * i + 1) * m + 2 * k + 1] = imag_part(cy);
        }
    return M;
}

} // namespace

MatrixField matrix_field(const ACStructure& J) {
    return [J](std::span<const double> x, int order) {
        return assemble(J.n(), x, order, [&](int i, int k, std::span<const Jet> c) {
            return std::make_pair(jet_eval(J.lin(i, k), c), jet_eval(J.anti(i, k), c));
        });
    };
}

MatrixField matrix_field(const ChartStructure& cs) {
    return [cs](std::span<const double> x, int order) {
        return assemble(cs.n, x, order, [&](int i, int k, std::span<const Jet> c) {
            const auto& e = cs.at(i, k);
            Jet L = jet_eval(e.lin, c), A = jet_eval(e.anti, c);
            if (e.lin_flag || e.anti_flag) {
                Jet zinv = reciprocal(c[2 * cs.j] + c[2 * cs.j + 1] * cplx(0, 1));
                if (e.lin_flag) L = L * zinv;
                if (e.anti_flag) A = A * zinv;
            }
            return std::make_pair(L, A);
        });
    };
}

std::vector<double> matrix_value(const MatrixField& J, std::span<const double> x) {
    std::vector<double> out;
    for (const auto& j : J(x, 0)) out.push_back(j.value().real());
    return out;
}

std::vector<double> nijenhuis_jet(const MatrixField& J, std::span<const double> x, std::span<const double> X,
                                  std::span<const double> Y) {
    const int m = static_cast<int>(x.size());
    auto M = J(x, 1);
    auto L = M.front().layout_ptr();
    std::vector<Jet> F(m, Jet(L)), G(m, Jet(L));
    std::vector<double> J0(static_cast<std::size_t>(m * m));
    for (int r = 0; r < m; ++r)
        for (int c = 0; c < m; ++c) {
            F[r] += M[r * m + c] * cplx(X[c]);
            G[r] += M[r * m + c] * cplx(Y[c]);
            J0[r * m + c] = M[r * m + c].value().real();
        }
    auto d = [&](const Jet& f, int s) {
        MultiIndex e(m, 0);
        e[s] = 1;
        return f.coeff(e).real();
    };
    std::vector<double> bracket(m, 0.0), jfy(m, 0.0), xjg(m, 0.0);
    for (int r = 0; r < m; ++r)
        for (int s = 0; s < m; ++s) {
            bracket[r] += F[s].value().real() * d(G[r], s) - G[s].value().real() * d(F[r], s);
            jfy[r] += -Y[s] * d(F[r], s);
            xjg[r] += X[s] * d(G[r], s);
        }
    std::vector<double> out(bracket);
    for (int r = 0; r < m; ++r)
        for (int c = 0; c < m; ++c) out[r] -= J0[r * m + c] * (jfy[c] + xjg[c]);
    return out;
}

const std::vector<std::vector<int>>& form_basis(int dim, int k) {
    static std::mutex mu;
    static std::map<std::pair<int, int>, std::vector<std::vector<int>>> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto [it, fresh] = cache.try_emplace({dim, k});
    if (fresh) {
        std::vector<int> cur;
        std::function<void(int)> rec = [&](int start) {
            if (static_cast<int>(cur.size()) == k) {
                it->second.push_back(cur);
                return;
            }
            for (int v = start; v < dim; ++v) {
                cur.push_back(v);
                rec(v + 1);
                cur.pop_back();
            }
        };
        rec(0);
    }
    return it->second;
}

std::vector<cplx> Form::evaluate(std::span<const double> x) const {
    std::vector<cplx> out;
    for (const auto& j : eval(x, 0)) out.push_back(j.value());
    return out;
}

Form function_form(int dim, Field f) {
    return {dim, 0, [f](std::span<const double> x, int order) { return std::vector<Jet>{f(x, order)}; }};
}

Form exterior_d(const Form& a) {
    const int dim = a.dim, k = a.degree;
    if (k >= dim) throw std::invalid_argument("exterior_d: degree too high");
    auto src = a.eval;
    return {dim, k + 1, [src, dim, k](std::span<const double> x, int order) {
                const auto& in = form_basis(dim, k);
                const auto& out = form_basis(dim, k + 1);
                auto c = src(x, order + 1);
                std::vector<Jet> r;
                for (const auto& I : out) {
                    Jet acc(jet_layout(dim, order));
                    for (std::size_t pos = 0; pos < I.size(); ++pos) {
                        std::vector<int> rest;
                        for (std::size_t q = 0; q < I.size(); ++q)
                            if (q != pos) rest.push_back(I[q]);
                        auto idx = std::find(in.begin(), in.end(), rest) - in.begin();
                        Jet d = c[idx].derivative(I[pos]);
                        if (pos % 2) acc -= d;
                        else acc += d;
                    }
                    r.push_back(acc);
                }
                return r;
            }};
}

namespace {

cplx det(std::vector<cplx> a, int n) {
    cplx d = 1.0;
    for (int col = 0; col < n; ++col) {
        int piv = col;
        for (int r = col + 1; r < n; ++r)
            if (std::abs(a[r * n + col]) > std::abs(a[piv * n + col])) piv = r;
        if (std::abs(a[piv * n + col]) == 0.0) return 0.0;
        if (piv != col) {
            for (int k = 0; k < n; ++k) std::swap(a[col * n + k], a[piv * n + k]);
            d = -d;
        }
        d *= a[col * n + col];
        for (int r = col + 1; r < n; ++r) {
            cplx f = a[r * n + col] / a[col * n + col];
            for (int k = col; k < n; ++k) a[r * n + k] -= f * a[col * n + k];
        }
    }
    return d;
}

cplx minor(const std::vector<cplx>& M, int dim, const std::vector<int>& rows, const std::vector<int>& cols) {
    const int k = static_cast<int>(rows.size());
    if (k == 0) return 1.0;
    std::vector<cplx> a(static_cast<std::size_t>(k * k));
    for (int r = 0; r < k; ++r)
        for (int c = 0; c < k; ++c) a[r * k + c] = M[rows[r] * dim + cols[c]];
    return det(a, k);
}

// Matrix on coefficient vectors projecting onto type (p, q).
const std::vector<cplx>& type_projector(int dim, int k, int p, int q) {
    static std::mutex mu;
    static std::map<std::array<int, 4>, std::vector<cplx>> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto [it, fresh] = cache.try_emplace({dim, k, p, q});
    if (!fresh) return it->second;
    // f = M e with f = (dz_1, dzbar_1, ...), e = (dx_1, dy_1, ...)
    std::vector<cplx> M(static_cast<std::size_t>(dim * dim), 0.0), Minv(M);
    const cplx I(0, 1);
    for (int a = 0; a < dim / 2; ++a) {
        M[(2 * a) * dim + 2 * a] = 1.0;
        M[(2 * a) * dim + 2 * a + 1] = I;
        M[(2 * a + 1) * dim + 2 * a] = 1.0;
        M[(2 * a + 1) * dim + 2 * a + 1] = -I;
        Minv[(2 * a) * dim + 2 * a] = 0.5;
        Minv[(2 * a) * dim + 2 * a + 1] = 0.5;
        Minv[(2 * a + 1) * dim + 2 * a] = -0.5 * I;
        Minv[(2 * a + 1) * dim + 2 * a + 1] = 0.5 * I;
    }
    const auto& B = form_basis(dim, k);
    const std::size_t nb = B.size();
    std::vector<cplx> T(nb * nb, 0.0);
    for (std::size_t J = 0; J < nb; ++J) {
        int holo = 0;
        for (int v : B[J]) holo += (v % 2 == 0);
        if (holo != p || static_cast<int>(B[J].size()) - holo != q) continue;
        for (std::size_t out = 0; out < nb; ++out) {
            cplx back = minor(M, dim, B[J], B[out]);
            if (back == 0.0) continue;
            for (std::size_t in = 0; in < nb; ++in) T[out * nb + in] += back * minor(Minv, dim, B[in], B[J]);
        }
    }
    it->second = std::move(T);
    return it->second;
}

Form linear_map(const Form& a, const std::vector<cplx>& T) {
    auto src = a.eval;
    return {a.dim, a.degree, [src, T](std::span<const double> x, int order) {
                auto c = src(x, order);
                const std::size_t nb = c.size();
                std::vector<Jet> r(nb, Jet(c.front().layout_ptr()));
                for (std::size_t o = 0; o < nb; ++o)
                    for (std::size_t i = 0; i < nb; ++i)
                        if (std::abs(T[o * nb + i]) > 0.0) r[o] += c[i] * T[o * nb + i];
                return r;
            }};
}

} // namespace

Form project_type(const Form& a, int p, int q) {
    if (p + q != a.degree) throw std::invalid_argument("project_type: type does not match degree");
    return linear_map(a, type_projector(a.dim, a.degree, p, q));
}

Form sum(const Form& a, const Form& b) {
    auto fa = a.eval, fb = b.eval;
    return {a.dim, a.degree, [fa, fb](std::span<const double> x, int order) {
                auto r = fa(x, order);
                auto s = fb(x, order);
                for (std::size_t i = 0; i < r.size(); ++i) r[i] += s[i];
                return r;
            }};
}

Form scale(const Form& a, cplx s) {
    auto fa = a.eval;
    return {a.dim, a.degree, [fa, s](std::span<const double> x, int order) {
                auto r = fa(x, order);
                for (auto& j : r) j *= s;
                return r;
            }};
}

namespace {

Form split_d(const Form& a, bool holomorphic) {
    const int k = a.degree;
    Form out;
    bool first = true;
    for (int p = 0; p <= k; ++p) {
        int q = k - p;
        Form piece = exterior_d(project_type(a, p, q));
        piece = holomorphic ? project_type(piece, p + 1, q) : project_type(piece, p, q + 1);
        out = first ? piece : sum(out, piece);
        first = false;
    }
    return out;
}

} // namespace

Form dprime(const Form& a) { return split_d(a, true); }
Form ddoubleprime(const Form& a) { return split_d(a, false); }

Form i_ddbar(int dim, Field F) {
    Form f = function_form(dim, std::move(F));
    Form dbar = project_type(exterior_d(f), 0, 1);
    return scale(project_type(exterior_d(dbar), 1, 1), cplx(0, 1));
}

Form j_action(const Form& a, MatrixField J) {
    if (a.degree != 2) throw std::invalid_argument("j_action implemented for 2-forms");
    auto src = a.eval;
    const int dim = a.dim;
    return {dim, 2, [src, J, dim](std::span<const double> x, int order) {
                auto c = src(x, order);
                auto M = J(x, order);
                const auto& B = form_basis(dim, 2);
                auto L = c.front().layout_ptr();
                std::vector<Jet> A(static_cast<std::size_t>(dim * dim), Jet(L));
                for (std::size_t i = 0; i < B.size(); ++i) {
                    A[B[i][0] * dim + B[i][1]] = c[i];
                    A[B[i][1] * dim + B[i][0]] = -c[i];
                }
                // (J^T A J)_rs
                std::vector<Jet> AJ(static_cast<std::size_t>(dim * dim), Jet(L));
                for (int a = 0; a < dim; ++a)
                    for (int s = 0; s < dim; ++s)
                        for (int b = 0; b < dim; ++b) AJ[a * dim + s] += A[a * dim + b] * M[b * dim + s];
                std::vector<Jet> r;
                for (const auto& I : B) {
                    Jet acc(L);
                    for (int t = 0; t < dim; ++t) acc += M[t * dim + I[0]] * AJ[t * dim + I[1]];
                    r.push_back(acc);
                }
                return r;
            }};
}

Form anti_invariant_part(const Form& a, MatrixField J) {
    return scale(sum(a, scale(j_action(a, std::move(J)), -1.0)), 0.5);
}

double two_form_pair(std::span<const cplx> coeffs, int dim, std::span<const double> X, std::span<const double> Y) {
    const auto& B = form_basis(dim, 2);
    double v = 0.0;
    for (std::size_t i = 0; i < B.size(); ++i)
        v += coeffs[i].real() * (X[B[i][0]] * Y[B[i][1]] - X[B[i][1]] * Y[B[i][0]]);
    return v;
}

double norm(std::span<const cplx> coeffs) {
    double s = 0.0;
    for (auto c : coeffs) s += std::norm(c);
    return std::sqrt(s);
}

std::vector<std::vector<double>> halton_points(int dim, std::size_t count, std::uint64_t seed) {
    static const int primes[] = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53};
    if (dim > 16) throw std::invalid_argument("halton_points: dimension too large");
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> U(0.0, 1.0);
    std::vector<double> shift(dim);
    for (auto& s : shift) s = U(rng);
    std::vector<std::vector<double>> pts;
    for (std::size_t i = 1; i <= count; ++i) {
        std::vector<double> p(dim);
        for (int d = 0; d < dim; ++d) {
            double f = 1.0, r = 0.0;
            for (std::size_t k = i; k > 0; k /= primes[d]) {
                f /= primes[d];
                r += f * static_cast<double>(k % primes[d]);
            }
            p[d] = std::fmod(r + shift[d], 1.0);
        }
        pts.push_back(std::move(p));
    }
    return pts;
}

PositivityReport positivity_sample(const Form& omega, const MatrixField& J, const Region& g, std::size_t samples,
                                   std::uint64_t seed) {
    if (omega.degree != 2) throw std::invalid_argument("positivity_sample needs a 2-form");
    if (g.r_min <= 0.0 || g.r_max < g.r_min || g.w_max < 0.0) throw std::invalid_argument("bad sampling region");
    const int n = g.n, dim = 2 * n;
    const int pdim = 2 + 2 * (n - 1) + dim;
    auto pts = halton_points(pdim, samples, seed);
    PositivityReport rep;
    rep.min_ratio = std::numeric_limits<double>::infinity();
    const double two_pi = 2.0 * std::acos(-1.0);
    for (const auto& u : pts) {
        std::vector<double> x(dim, 0.0);
        int c = 0;
        double r = g.r_min * std::pow(g.r_max / g.r_min, u[c++]);
        double th = two_pi * u[c++];
        x[2 * g.j] = r * std::cos(th);
        x[2 * g.j + 1] = r * std::sin(th);
        for (int i = 0; i < n; ++i) {
            if (i == g.j) continue;
            double rw = g.w_max * std::sqrt(u[c++]);
            double tw = two_pi * u[c++];
            x[2 * i] = rw * std::cos(tw);
            x[2 * i + 1] = rw * std::sin(tw);
        }
        std::vector<double> v(dim);
        double vn = 0.0;
        for (int k = 0; k < dim; ++k) {
            v[k] = 2.0 * u[c++] - 1.0;
            vn += v[k] * v[k];
        }
        if (vn < 1e-6) continue;
        auto M = matrix_value(J, x);
        std::vector<double> Jv(dim, 0.0);
        for (int a = 0; a < dim; ++a)
            for (int b = 0; b < dim; ++b) Jv[a] += M[a * dim + b] * v[b];
        auto co = omega.evaluate(x);
        double ratio = two_form_pair(co, dim, v, Jv) / vn;
        ++rep.samples;
        if (ratio < rep.min_ratio) {
            rep.min_ratio = ratio;
            rep.argmin = x;
        }
    }
    rep.pass = rep.samples > 0 && rep.min_ratio > 0.0;
    return rep;
}

FitReport bound_fit(const std::vector<std::pair<double, double>>& samples, double min_slope) {
    if (samples.size() < 2) throw std::invalid_argument("bound_fit: need at least two samples");
    double lo = std::numeric_limits<double>::infinity(), hi = 0.0;
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (auto [r, v] : samples) {
        if (r <= 0.0 || v <= 0.0 || !std::isfinite(v)) throw std::invalid_argument("bound_fit: non-positive sample");
        lo = std::min(lo, r);
        hi = std::max(hi, r);
        double X = std::log(r), Y = std::log(v);
        sx += X;
        sy += Y;
        sxx += X * X;
        sxy += X * Y;
    }
    if (hi / lo < 100.0 * (1.0 - 1e-9)) throw std::invalid_argument("bound_fit: radii must span two decades");
    const double N = static_cast<double>(samples.size());
    FitReport f;
    f.slope = (N * sxy - sx * sy) / (N * sxx - sx * sx);
    f.intercept = (sy - f.slope * sx) / N;
    f.pass = f.slope >= min_slope && std::isfinite(f.intercept);
    return f;
}

} // namespace acb::num
