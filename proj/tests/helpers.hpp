#pragma once

#include <cmath>
#include <vector>

#include "lpsym/geometry.hpp"
#include "lpsym/prolong.hpp"
#include "lpsym/sampling.hpp"
#include "lpsym/vectorfield.hpp"

namespace lpsym::testing {

// Random concrete generator with small rational coefficients, total degree
// bounded like the classification ansatz.
inline VectorField random_field(const VarTablePtr& tbl, Rng& rng, int degree = 3, double density = 0.4) {
    int n = tbl->n();
    std::vector<std::vector<int>> monos;
    detail::enumerate_monomials(n + 1, degree, monos);
    auto rand_poly = [&] {
        MPoly p(tbl);
        for (auto& e : monos) {
            if (rng.uniform01() > density) continue;
            long num = long(rng.next() % 7) - 3;
            if (num == 0) continue;
            Monomial m;
            for (int i = 0; i < n; ++i)
                if (e[i] > 0) {
                    m.pw.emplace_back(tbl->x(i), e[i]);
                    m.degree += e[i];
                }
            if (e[n] > 0) {
                m.pw.emplace_back(tbl->u(), e[n]);
                m.degree += e[n];
            }
            p.add_term(m, rat(num, 1 + long(rng.next() % 3)));
        }
        return p;
    };
    std::vector<MPoly> xi;
    for (int i = 0; i < n; ++i) xi.push_back(rand_poly());
    return VectorField(tbl, xi, rand_poly());
}

// Random small polynomial over arbitrary table variables (exact-layer tests).
inline MPoly random_poly(const VarTablePtr& tbl, Rng& rng, const std::vector<int>& vars, int degree = 3,
                         int max_terms = 6) {
    MPoly p(tbl);
    for (int t = 0; t < max_terms; ++t) {
        Monomial m;
        int parts = int(rng.next() % (degree + 1));
        for (int k = 0; k < parts; ++k) m = m.times(Monomial::var(vars[rng.next() % vars.size()]));
        long num = long(rng.next() % 9) - 4;
        if (num == 0) continue;
        p.add_term(m, rat(num, 1 + long(rng.next() % 4)));
    }
    return p;
}

struct ManifoldSample {
    VecD x;
    double u;
    VecD grad;
    MatD hess;
    double rhs;  // (1+|x|^2)^{-(p+n+1)/2} u^{p-1} = det(hess)
};

// Random jet sample on the solution manifold: a random SPD matrix rescaled so
// its determinant matches the right-hand side exactly (determinant
// homogeneity makes the projection exact).
inline ManifoldSample on_manifold_sample(int n, const Rat& p, Rng& rng, double radius = 2.0) {
    ManifoldSample s;
    s.x = rng.in_ball(n, radius);
    s.u = rng.uniform(0.5, 2.0);
    s.grad.resize(n);
    for (auto& g : s.grad) g = rng.uniform(-1.0, 1.0);
    s.hess = rng.spd(n);
    double pd = rat_double(p);
    double w = 1.0 + dot(s.x, s.x);
    s.rhs = std::pow(w, -(pd + n + 1) / 2.0) * std::pow(s.u, pd - 1.0);
    double c = std::pow(s.rhs / det(s.hess), 1.0 / n);
    s.hess = s.hess.scaled(c);
    return s;
}

// Central finite differences of a scalar field (derivative-free oracle).
inline VecD fd_gradient(const ScalarField& f, const VecD& x, double h = 1e-6) {
    VecD g(x.size());
    for (size_t i = 0; i < x.size(); ++i) {
        VecD xp = x, xm = x;
        xp[i] += h;
        xm[i] -= h;
        g[i] = (f.value(xp) - f.value(xm)) / (2 * h);
    }
    return g;
}

inline MatD fd_hessian(const ScalarField& f, const VecD& x, double h = 1e-4) {
    int n = int(x.size());
    MatD H(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            VecD xpp = x, xpm = x, xmp = x, xmm = x;
            xpp[i] += h, xpp[j] += h;
            xpm[i] += h, xpm[j] -= h;
            xmp[i] -= h, xmp[j] += h;
            xmm[i] -= h, xmm[j] -= h;
            H(i, j) = (f.value(xpp) - f.value(xpm) - f.value(xmp) + f.value(xmm)) / (4 * h * h);
        }
    return H;
}

}  // namespace lpsym::testing
