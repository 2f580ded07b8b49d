#pragma once

#include <cmath>
#include <map>
#include <stdexcept>
#include <utility>
#include <vector>

#include "lpsym/linalg.hpp"
#include "lpsym/mpoly.hpp"
#include "lpsym/ratmatrix.hpp"
#include "lpsym/vectorfield.hpp"

namespace lpsym {

// Second prolongation coefficients of a generator: phi^i (functions of
// x, u, u_k) and phi^{ij} (additionally linear in the second-derivative
// symbols u_{kl}). Third-derivative symbols cancel during assembly and are
// asserted absent.
struct ProlongedCoeffs {
    std::vector<MPoly> phi1;               // phi^i
    std::vector<std::vector<MPoly>> phi2;  // phi^{ij}, full symmetric matrix
};

// Total derivative D_i on polynomials in (x, u, u_k, u_{kl}).
inline MPoly total_derivative(const MPoly& f, int i) {
    const auto& tbl = f.table();
    int n = tbl->n();
    MPoly r = f.diff(tbl->x(i));
    r += MPoly::var(tbl, tbl->du(i)) * f.diff(tbl->u());
    for (int k = 0; k < n; ++k) {
        MPoly fk = f.diff(tbl->du(k));
        if (!fk.is_zero()) r += MPoly::var(tbl, tbl->d2u(k, i)) * fk;
    }
    for (int k = 0; k < n; ++k)
        for (int l = k; l < n; ++l) {
            MPoly fkl = f.diff(tbl->d2u(k, l));
            if (!fkl.is_zero()) r += MPoly::var(tbl, tbl->d3u(k, l, i)) * fkl;
        }
    return r;
}

inline ProlongedCoeffs prolong2(const VectorField& v) {
    const auto& tbl = v.table;
    int n = v.n();

    MPoly base = v.phi;
    for (int a = 0; a < n; ++a) base -= v.xi[a] * MPoly::var(tbl, tbl->du(a));

    std::vector<MPoly> d_base;
    d_base.reserve(n);
    for (int i = 0; i < n; ++i) d_base.push_back(total_derivative(base, i));

    ProlongedCoeffs pc;
    pc.phi1.reserve(n);
    for (int i = 0; i < n; ++i) {
        MPoly p = d_base[i];
        for (int a = 0; a < n; ++a) p += v.xi[a] * MPoly::var(tbl, tbl->d2u(i, a));
        if (p.depends_on_role(VarRole::SecondDeriv) || p.depends_on_role(VarRole::ThirdDeriv))
            throw std::logic_error("first prolongation coefficient carries stray derivative symbols");
        pc.phi1.push_back(std::move(p));
    }

    pc.phi2.assign(n, std::vector<MPoly>(n, MPoly(tbl)));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            MPoly p = total_derivative(d_base[i], j);
            for (int a = 0; a < n; ++a) p += v.xi[a] * MPoly::var(tbl, tbl->d3u(i, j, a));
            if (p.depends_on_role(VarRole::ThirdDeriv))
                throw std::logic_error("third-derivative symbols failed to cancel in prolongation");
            pc.phi2[i][j] = std::move(p);
        }
    return pc;
}

// Determining constraints for the projected equation
// det D^2 u = (1 + |x|^2)^{-(p+n+1)/2} u^{p-1}:
//  - one constraint per independent cofactor symbol (the parts of
//    phi^{ij} U^{ij} free of second derivatives), and
//  - one scalar constraint from the terms proportional to the right-hand
//    side after contracting every u_{kl} U^{ij} product with the cofactor
//    identity u_{ik} U^{kj} = delta_{ij} det D^2 u, multiplying by
//    (1 + |x|^2) u and cancelling the common power-law factor.
// Every constraint is linear in the unknown coefficient symbols.
//
// Demanding that the cofactor-group and scalar constraints vanish
// separately, with U^{ij} and u_k treated as free symbols, is equivalent to
// vanishing on the solution manifold: the residual is affine in U, and the
// cofactor matrices of the level set {det D^2 u = rhs} affinely span the
// whole symmetric-matrix space at every fixed (x, u, Du), so an affine
// functional vanishing there vanishes identically.
struct DeterminingSystem {
    VarTablePtr table;
    int n = 0;
    Rat p;
    std::map<std::pair<int, int>, MPoly> eta;  // i <= j
    MPoly scalar;
    // Sparse linear system over the unknowns (empty for concrete fields).
    std::vector<std::vector<std::pair<int, Rat>>> rows;
    int unknowns = 0;

    DeterminingSystem(VarTablePtr tbl, Rat pp)
        : table(tbl), n(tbl->n()), p(std::move(pp)), scalar(tbl) {}

    std::vector<const MPoly*> constraints() const {
        std::vector<const MPoly*> cs;
        for (auto& [ij, e] : eta) cs.push_back(&e);
        cs.push_back(&scalar);
        return cs;
    }

    bool is_satisfied() const {
        for (auto* c : constraints())
            if (!c->is_zero()) return false;
        return true;
    }

    RatMatrix matrix() const {
        RatMatrix m(int(rows.size()), unknowns);
        for (int i = 0; i < int(rows.size()); ++i)
            for (auto& [j, c] : rows[i]) m.at(i, j) = c;
        return m;
    }

    // Numeric residual of the full determining condition at an on-manifold
    // sample: the cofactor-group constraints contracted with the true
    // cofactor matrix plus the scalar constraint restored to its
    // pre-normalization weight s / ((1 + |x|^2) u).
    double contract(const VecD& x, double u, const VecD& grad, const MatD& cof, double s) const {
        std::vector<double> point(table->size(), 0.0);
        for (int i = 0; i < n; ++i) point[table->x(i)] = x[i];
        point[table->u()] = u;
        for (int i = 0; i < n; ++i) point[table->du(i)] = grad[i];
        double acc = 0;
        for (auto& [ij, e] : eta) {
            double val = e.eval_double(point);
            auto [i, j] = ij;
            acc += val * cof(i, j) * (i == j ? 1.0 : 2.0);
        }
        double w = 1.0 + dot(x, x);
        acc += scalar.eval_double(point) * s / (w * u);
        return acc;
    }
};

inline DeterminingSystem determining_system(const VectorField& v, const Rat& p) {
    const auto& tbl = v.table;
    const int n = v.n();
    ProlongedCoeffs pc = prolong2(v);

    std::vector<MPoly> xi_u, u_vars;
    std::vector<std::vector<MPoly>> xi_x(n);
    MPoly phi_u = v.phi.diff(tbl->u());
    for (int a = 0; a < n; ++a) {
        xi_u.push_back(v.xi[a].diff(tbl->u()));
        for (int i = 0; i < n; ++i) xi_x[a].push_back(v.xi[a].diff(tbl->x(i)));
        u_vars.push_back(MPoly::var(tbl, tbl->du(a)));
    }

    std::vector<bool> second(tbl->size(), false);
    for (int i = 0; i < tbl->size(); ++i) second[i] = tbl->is_role(i, VarRole::SecondDeriv);

    DeterminingSystem ds(tbl, p);
    for (int i = 0; i < n; ++i)
        for (int j = i; j < n; ++j) {
            MPoly eta(tbl), lin(tbl);
            for (auto& [key, part] : pc.phi2[i][j].split(second)) {
                if (key.degree == 0)
                    eta += part;
                else if (key.degree == 1)
                    lin += MPoly::term(tbl, key, Rat(1)) * part;
                else
                    throw std::logic_error("prolongation is quadratic in second derivatives");
            }
            // The second-derivative part must match the product-rule form
            // that the cofactor identity contracts away.
            MPoly pred = (phi_u)*MPoly::var(tbl, tbl->d2u(i, j));
            for (int a = 0; a < n; ++a) {
                pred -= xi_u[a] * u_vars[a] * MPoly::var(tbl, tbl->d2u(i, j));
                pred -= (xi_x[a][i] + xi_u[a] * u_vars[i]) * MPoly::var(tbl, tbl->d2u(j, a));
                pred -= (xi_x[a][j] + xi_u[a] * u_vars[j]) * MPoly::var(tbl, tbl->d2u(i, a));
            }
            if (!(lin == pred))
                throw std::logic_error("second-derivative terms do not contract with the cofactor identity");
            ds.eta.emplace(std::pair{i, j}, std::move(eta));
        }

    // Trace part produced by the contraction.
    MPoly b = phi_u.scaled(Rat(n));
    for (int a = 0; a < n; ++a) {
        b -= xi_x[a][a].scaled(Rat(2));
        b -= xi_u[a].scaled(Rat(n + 2)) * u_vars[a];
    }

    MPoly w = MPoly::constant(tbl, Rat(1));
    for (int i = 0; i < n; ++i) w += MPoly::var(tbl, tbl->x(i)).pow(2);
    MPoly u_poly = MPoly::var(tbl, tbl->u());

    MPoly xi_dot_x(tbl);
    for (int i = 0; i < n; ++i) xi_dot_x += v.xi[i] * MPoly::var(tbl, tbl->x(i));

    ds.scalar = (u_poly * xi_dot_x).scaled(p + n + 1) + (w * v.phi).scaled(Rat(1) - p) + w * u_poly * b;

    ds.unknowns = tbl->unknown_count();
    if (ds.unknowns > 0) {
        std::vector<bool> non_unknown(tbl->size(), false);
        for (int i = 0; i < tbl->size(); ++i) non_unknown[i] = !tbl->is_role(i, VarRole::Unknown);
        const int ubase = tbl->unknown_base();
        for (auto* c : ds.constraints()) {
            for (auto& [key, part] : c->split(non_unknown)) {
                std::vector<std::pair<int, Rat>> row;
                for (auto& [m, coef] : part.terms()) {
                    if (m.degree != 1 || !tbl->is_role(m.pw[0].first, VarRole::Unknown))
                        throw std::logic_error("determining constraints must be linear in the unknowns");
                    row.emplace_back(m.pw[0].first - ubase, coef);
                }
                if (!row.empty()) ds.rows.push_back(std::move(row));
            }
        }
    }
    return ds;
}

// Direct numeric evaluation of the prolongation applied to the equation at
// an on-manifold jet sample, with the cofactor matrix computed from the
// actual Hessian. Serves as the independent oracle for the symbolic path.
inline double numeric_prolong_eval(const VectorField& v, const Rat& p, const VecD& x, double u,
                                   const VecD& grad, const MatD& hess) {
    if (!v.is_concrete()) throw std::invalid_argument("field must have concrete coefficients");
    const int n = v.n();
    if (int(x.size()) != n || int(grad.size()) != n || hess.rows() != n || hess.cols() != n)
        throw std::invalid_argument("sample shape mismatch");
    if (u <= 0) throw std::domain_error("positivity violated");
    if (!is_symmetric(hess, 1e-12)) throw std::invalid_argument("Hessian must be symmetric");

    const double pd = rat_double(p);
    const double w = 1.0 + dot(x, x);
    const double s = std::pow(w, -(pd + n + 1) / 2.0) * std::pow(u, pd - 1.0);
    const double dh = det(hess);
    if (std::abs(dh - s) > 1e-8 * std::max(std::abs(s), 1.0))
        throw std::domain_error("off-manifold sample: det D^2 u does not match the right-hand side");

    const auto& tbl = v.table;
    std::vector<double> point(tbl->size(), 0.0);
    for (int i = 0; i < n; ++i) point[tbl->x(i)] = x[i];
    point[tbl->u()] = u;
    for (int i = 0; i < n; ++i) point[tbl->du(i)] = grad[i];
    for (int i = 0; i < n; ++i)
        for (int j = i; j < n; ++j) point[tbl->d2u(i, j)] = hess(i, j);

    ProlongedCoeffs pc = prolong2(v);
    MatD cof = cofactor_matrix(hess);

    double acc = 0;
    for (int i = 0; i < n; ++i) {
        double chi = (pd + n + 1) * std::pow(w, -(pd + n + 3) / 2.0) * std::pow(u, pd - 1.0) * x[i];
        acc += v.xi[i].eval_double(point) * chi;
    }
    acc += v.phi.eval_double(point) * (1.0 - pd) * std::pow(w, -(pd + n + 1) / 2.0) * std::pow(u, pd - 2.0);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) acc += pc.phi2[i][j].eval_double(point) * cof(i, j);
    return acc;
}

}  // namespace lpsym
