#pragma once

#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "lpsym/mpoly.hpp"

namespace lpsym {

// Candidate infinitesimal generator xi^i d/dx^i + phi d/du. Components are
// polynomials in (x, u); unsolved fields additionally carry unknown
// coefficient symbols, each appearing linearly.
struct VectorField {
    VarTablePtr table;
    std::vector<MPoly> xi;  // size n
    MPoly phi;

    VectorField(VarTablePtr tbl, std::vector<MPoly> xs, MPoly ph)
        : table(std::move(tbl)), xi(std::move(xs)), phi(std::move(ph)) {
        if (int(xi.size()) != table->n()) throw std::invalid_argument("component count mismatch");
        for (auto& c : xi) check_component(c);
        check_component(phi);
    }

    static VectorField zero(VarTablePtr tbl) {
        std::vector<MPoly> xs(tbl->n(), MPoly(tbl));
        return VectorField(tbl, std::move(xs), MPoly(tbl));
    }

    int n() const { return table->n(); }

    bool is_concrete() const {
        for (auto& c : xi)
            if (c.depends_on_role(VarRole::Unknown)) return false;
        return !phi.depends_on_role(VarRole::Unknown);
    }

    bool is_zero() const {
        for (auto& c : xi)
            if (!c.is_zero()) return false;
        return phi.is_zero();
    }

    VectorField substitute_unknowns(const std::map<int, Rat>& values) const {
        std::vector<MPoly> xs;
        xs.reserve(xi.size());
        for (auto& c : xi) xs.push_back(c.subst(values));
        return VectorField(table, std::move(xs), phi.subst(values));
    }

    friend VectorField operator+(const VectorField& a, const VectorField& b) {
        std::vector<MPoly> xs;
        for (int i = 0; i < int(a.xi.size()); ++i) xs.push_back(a.xi[i] + b.xi[i]);
        return VectorField(a.table, std::move(xs), a.phi + b.phi);
    }

    VectorField scaled(const Rat& c) const {
        std::vector<MPoly> xs;
        for (auto& p : xi) xs.push_back(p.scaled(c));
        return VectorField(table, std::move(xs), phi.scaled(c));
    }

    // Numeric component values at a point (x, u).
    std::pair<std::vector<double>, double> eval(const std::vector<double>& x, double u) const {
        std::vector<double> point(table->size(), 0.0);
        for (int i = 0; i < n(); ++i) point[table->x(i)] = x[i];
        point[table->u()] = u;
        std::vector<double> xs(n());
        for (int i = 0; i < n(); ++i) xs[i] = xi[i].eval_double(point);
        return {xs, phi.eval_double(point)};
    }

    std::string str() const {
        std::ostringstream os;
        bool first = true;
        auto emit = [&](const MPoly& p, const std::string& dir) {
            if (p.is_zero()) return;
            if (!first) os << " + ";
            first = false;
            std::string s = p.str();
            if (p.term_count() > 1)
                os << "(" << s << ") " << dir;
            else if (s == "1")
                os << dir;
            else if (s == "-1")
                os << "-" << dir;
            else
                os << s << " " << dir;
        };
        for (int i = 0; i < n(); ++i) emit(xi[i], "d/dx" + std::to_string(i + 1));
        emit(phi, "d/du");
        if (first) return "0";
        return os.str();
    }

    bool operator==(const VectorField& o) const { return xi == o.xi && phi == o.phi; }

private:
    void check_component(const MPoly& c) const {
        for (auto& [m, coef] : c.terms())
            for (auto& [v, e] : m.pw) {
                auto r = table->role(v);
                if (r != VarRole::Base && r != VarRole::Dependent && r != VarRole::Unknown)
                    throw std::invalid_argument("generator components must be functions of (x, u)");
            }
    }
};

// Lie bracket of first-order fields: [v, w] = v(w) - w(v) componentwise.
inline VectorField bracket(const VectorField& v, const VectorField& w) {
    auto apply = [&](const VectorField& a, const MPoly& f) {
        MPoly r(a.table);
        for (int i = 0; i < a.n(); ++i) r += a.xi[i] * f.diff(a.table->x(i));
        r += a.phi * f.diff(a.table->u());
        return r;
    };
    std::vector<MPoly> xs;
    for (int k = 0; k < v.n(); ++k) xs.push_back(apply(v, w.xi[k]) - apply(w, v.xi[k]));
    return VectorField(v.table, std::move(xs), apply(v, w.phi) - apply(w, v.phi));
}

// Generic bounded-degree ansatz: every monomial in (x, u) of total degree
// <= degree gets one fresh unknown coefficient per component.
struct GenericAnsatz {
    VectorField field;
    // unknown m multiplies monomial `monos[m].second` in component
    // `monos[m].first` (0..n-1 = xi^i, n = phi).
    std::vector<std::pair<int, Monomial>> meta;

    int unknown_count() const { return int(meta.size()); }
};

namespace detail {

inline void enumerate_monomials(int nvars, int max_degree, std::vector<std::vector<int>>& out) {
    std::vector<int> cur(nvars, 0);
    auto rec = [&](auto&& self, int pos, int left) -> void {
        if (pos == nvars) {
            out.push_back(cur);
            return;
        }
        for (int e = 0; e <= left; ++e) {
            cur[pos] = e;
            self(self, pos + 1, left - e);
        }
        cur[pos] = 0;
    };
    rec(rec, 0, max_degree);
}

}  // namespace detail

inline GenericAnsatz make_generic_ansatz(int n, int degree) {
    if (n < 1) throw std::invalid_argument("dimension must be >= 1");
    if (degree < 2) throw std::invalid_argument("ansatz degree below 2 cannot represent the generator families");
    std::vector<std::vector<int>> monos;
    detail::enumerate_monomials(n + 1, degree, monos);  // vars: x1..xn, u

    int per_component = int(monos.size());
    std::vector<std::string> names;
    names.reserve(size_t(per_component) * (n + 1));
    for (int comp = 0; comp <= n; ++comp)
        for (int m = 0; m < per_component; ++m)
            names.push_back("c" + std::to_string(comp * per_component + m));
    auto tbl = make_jet_table(n, names);

    auto build_mono = [&](const std::vector<int>& exps) {
        Monomial mono;
        for (int i = 0; i < n; ++i)
            if (exps[i] > 0) {
                mono.pw.emplace_back(tbl->x(i), exps[i]);
                mono.degree += exps[i];
            }
        if (exps[n] > 0) {
            mono.pw.emplace_back(tbl->u(), exps[n]);
            mono.degree += exps[n];
        }
        return mono;
    };

    GenericAnsatz az{VectorField::zero(tbl), {}};
    std::vector<MPoly> xs;
    int next = 0;
    for (int comp = 0; comp <= n; ++comp) {
        MPoly p(tbl);
        for (auto& exps : monos) {
            Monomial mono = build_mono(exps);
            az.meta.emplace_back(comp, mono);
            p.add_term(mono.times(Monomial::var(tbl->unknown(next))), Rat(1));
            ++next;
        }
        if (comp < n)
            xs.push_back(std::move(p));
        else
            az.field = VectorField(tbl, std::move(xs), std::move(p));
    }
    return az;
}

}  // namespace lpsym
