#include "acb/corpus.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>
#include <stdexcept>

namespace acb::corpus {

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot read " + path);
    std::ostringstream o;
    o << in.rdbuf();
    return o.str();
}

std::vector<cli::StructureFile> load_dir(const std::string& dir) {
    std::vector<std::filesystem::path> paths;
    for (const auto& e : std::filesystem::directory_iterator(dir))
        if (e.is_regular_file() && e.path().extension() == ".acs") paths.push_back(e.path());
    std::sort(paths.begin(), paths.end());
    std::vector<cli::StructureFile> out;
    for (const auto& p : paths) {
        auto f = cli::parse_structure(read_file(p.string()));
        if (f.name.empty()) f.name = p.stem().string();
        out.push_back(std::move(f));
    }
    return out;
}

ACStructure conjugate_linear(const ACStructure& J, const std::vector<Cq>& T, const std::vector<Cq>& Tinv) {
    const int n = J.n();
    std::vector<Polynomial> images;
    for (int i = 0; i < n; ++i) {
        Polynomial q(n);
        for (int k = 0; k < n; ++k)
            if (!Tinv[i * n + k].is_zero()) q += Polynomial::var(n, k) * Tinv[i * n + k];
        images.push_back(q);
    }
    ACStructure out(n);
    for (int i = 0; i < n; ++i)
        for (int k = 0; k < n; ++k) {
            Expression lin(n), anti(n);
            for (int a = 0; a < n; ++a)
                for (int b = 0; b < n; ++b) {
                    const Cq& t = T[i * n + a];
                    if (t.is_zero()) continue;
                    if (!Tinv[b * n + k].is_zero() && !J.lin(a, b).is_zero())
                        lin += substitute(J.lin(a, b), images) * (t * Tinv[b * n + k]);
                    if (!Tinv[b * n + k].is_zero() && !J.anti(a, b).is_zero())
                        anti += substitute(J.anti(a, b), images) * (t * Tinv[b * n + k].conj());
                }
            out.lin(i, k) = lin;
            out.anti(i, k) = anti;
        }
    return out;
}

ACStructure line_family(int n, const Polynomial& lambda, const std::vector<Cq>& K) {
    ACStructure J = ACStructure::standard(n);
    for (int i = 0; i < n; ++i)
        for (int k = 0; k < n; ++k) {
            // (K pbar)_k = sum_m K_km zbar_m
            Polynomial alpha(n);
            for (int m = 0; m < n; ++m)
                if (!K[k * n + m].is_zero()) alpha += Polynomial::var(n, m, true) * K[k * n + m];
            J.anti(i, k) = Expression(lambda * Polynomial::var(n, i) * alpha);
        }
    return J;
}

ACStructure pullback_family(int n, int r, int s, const Polynomial& h) {
    if (r == s) throw std::invalid_argument("pullback_family: r == s");
    ACStructure J = ACStructure::standard(n);
    Quotient d = wirtinger_d(Expression(h), s, true);
    J.anti(r, s) = d.num * Cq(0, 2);
    return J;
}

namespace {

class Gen {
public:
    explicit Gen(std::uint64_t seed) : rng_(seed) {}

    int uniform(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng_); }

    Cq small_gaussian(bool nonzero = true) {
        for (;;) {
            Cq c(uniform(-2, 2), uniform(-2, 2));
            if (!nonzero || !c.is_zero()) return c;
        }
    }

    Polynomial random_poly(int n, const std::vector<int>& vars, int max_degree, int terms) {
        Polynomial p(n);
        for (int t = 0; t < terms; ++t) {
            ConjMonomial m(n);
            int budget = uniform(1, max_degree);
            while (budget > 0) {
                int v = vars[static_cast<std::size_t>(uniform(0, static_cast<int>(vars.size()) - 1))];
                if (uniform(0, 1))
                    m.set(v, m.holo(v) + 1, m.anti(v));
                else
                    m.set(v, m.holo(v), m.anti(v) + 1);
                --budget;
            }
            p.add_term(m, small_gaussian());
        }
        if (p.is_zero()) p = Polynomial::var(n, vars.front());
        return p;
    }

    // Unipotent upper times unipotent lower, Gaussian integer entries; exact inverse.
    std::pair<std::vector<Cq>, std::vector<Cq>> unimodular(int n) {
        auto ident = [n] {
            std::vector<Cq> m(static_cast<std::size_t>(n * n));
            for (int i = 0; i < n; ++i) m[i * n + i] = Cq(1);
            return m;
        };
        auto mul = [n](const std::vector<Cq>& a, const std::vector<Cq>& b) {
            std::vector<Cq> c(static_cast<std::size_t>(n * n));
            for (int i = 0; i < n; ++i)
                for (int k = 0; k < n; ++k)
                    for (int m = 0; m < n; ++m) c[i * n + k] += a[i * n + m] * b[m * n + k];
            return c;
        };
        std::vector<Cq> T = ident(), Tinv = ident();
        for (int step = 0; step < 2; ++step) {
            int a = uniform(0, n - 1), b = uniform(0, n - 2);
            if (b >= a) ++b;
            Cq c = small_gaussian();
            // E = I + c e_ab, E^{-1} = I - c e_ab
            auto E = ident(), Einv = ident();
            E[a * n + b] = c;
            Einv[a * n + b] = -c;
            T = mul(E, T);
            Tinv = mul(Tinv, Einv);
        }
        return {T, Tinv};
    }

private:
    std::mt19937_64 rng_;
};

std::vector<int> all_vars(int n) {
    std::vector<int> v(static_cast<std::size_t>(n));
    for (int k = 0; k < n; ++k) v[k] = k;
    return v;
}

} // namespace

std::vector<cli::StructureFile> random_structures(int count, std::uint64_t seed,
                                                  const std::vector<cli::StructureFile>& bases) {
    Gen g(seed);
    std::vector<cli::StructureFile> out;
    const int kinds = bases.empty() ? 5 : 6;
    for (int t = 0; t < count; ++t) {
        cli::StructureFile f;
        const int kind = t % kinds;
        const bool conj = kind == 3 || kind == 4;
        f.n = kind == 5 ? 0 : (g.uniform(0, 3) == 0 ? 3 : 2);
        const int n = f.n;
        ACStructure J;
        std::string label;
        if (kind == 0 || kind == 3) {
            std::vector<Cq> K(static_cast<std::size_t>(n * n));
            for (int a = 0; a < n; ++a)
                for (int b = a + 1; b < n; ++b) {
                    K[a * n + b] = g.small_gaussian(n == 2);
                    K[b * n + a] = -K[a * n + b];
                }
            J = line_family(n, g.random_poly(n, all_vars(n), 2, g.uniform(1, 2)), K);
            label = "line";
        } else if (kind == 1) {
            int r = g.uniform(0, n - 1), s = g.uniform(0, n - 2);
            if (s >= r) ++s;
            J = pullback_family(n, r, s, g.random_poly(n, {s}, 3, g.uniform(1, 3)));
            label = "pullback";
        } else if (kind == 2 || kind == 4) {
            // A single off-diagonal anti entry: J^2 = -Id for any coefficient.
            int r = g.uniform(0, n - 1), s = g.uniform(0, n - 2);
            if (s >= r) ++s;
            J = ACStructure::standard(n);
            J.anti(r, s) = Expression(g.random_poly(n, all_vars(n), 2, g.uniform(1, 3)));
            label = "offdiag";
        } else {
            const auto& b = bases[static_cast<std::size_t>(g.uniform(0, static_cast<int>(bases.size()) - 1))];
            f.n = b.n;
            std::vector<Cq> T(static_cast<std::size_t>(f.n * f.n)), Tinv = T;
            for (int k = 0; k < f.n; ++k) {
                Cq c = g.small_gaussian();
                T[k * f.n + k] = c;
                Tinv[k * f.n + k] = Cq(1) / c;
            }
            J = conjugate_linear(b.J, T, Tinv);
            label = "scaled-" + b.name;
        }
        if (conj) {
            auto [T, Tinv] = g.unimodular(f.n);
            J = conjugate_linear(J, T, Tinv);
            label += "-conj";
        }
        if (!check_involution(J).pass) throw std::logic_error("random_structures produced J^2 != -Id");
        f.name = "random-" + std::to_string(t + 1) + "-" + label;
        f.vars = cli::default_vars(f.n);
        f.J = std::move(J);
        out.push_back(std::move(f));
    }
    return out;
}

} // namespace acb::corpus
