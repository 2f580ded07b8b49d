#pragma once

#include <algorithm>
#include <set>
#include <string>
#include <vector>

#include "lpsym/prolong.hpp"
#include "lpsym/ratmatrix.hpp"
#include "lpsym/vectorfield.hpp"

namespace lpsym {

enum class FamilyTag {
    Rotation,
    UScaling,
    UTranslation,
    ULinearTranslation,
    Projective,
    XTranslation,
    TraceScaling,
    OffDiagonalAffine,
    Mixed,
};

inline const char* family_name(FamilyTag t) {
    switch (t) {
        case FamilyTag::Rotation: return "rotation";
        case FamilyTag::UScaling: return "u-scaling";
        case FamilyTag::UTranslation: return "u-translation";
        case FamilyTag::ULinearTranslation: return "u-linear-translation";
        case FamilyTag::Projective: return "projective";
        case FamilyTag::XTranslation: return "x-translation";
        case FamilyTag::TraceScaling: return "trace-scaling";
        case FamilyTag::OffDiagonalAffine: return "off-diagonal-affine";
        case FamilyTag::Mixed: return "mixed";
    }
    return "?";
}

struct LieAlgebraBasis {
    int n = 0;
    Rat p;
    int ansatz_degree = 0;
    int dimension = 0;
    std::vector<VectorField> generators;          // concrete rational coefficients
    std::vector<FamilyTag> tags;
    std::vector<std::vector<Rat>> coeff_vectors;  // canonical primitive rows over the ansatz coordinates
    int system_rows = 0, system_cols = 0, system_rank = 0;
};

namespace detail {

inline Rat coef_of(const MPoly& p, const Monomial& m) {
    auto it = p.terms().find(m);
    return it == p.terms().end() ? Rat(0) : it->second;
}

inline Monomial mono_x(const VarTablePtr& t, int i) { return Monomial::var(t->x(i)); }
inline Monomial mono_u(const VarTablePtr& t) { return Monomial::var(t->u()); }
inline Monomial mono_xu(const VarTablePtr& t, int i) {
    return Monomial::var(t->x(i)).times(Monomial::var(t->u()));
}
inline Monomial mono_xx(const VarTablePtr& t, int i, int j) {
    return Monomial::var(t->x(i)).times(Monomial::var(t->x(j)));
}

}  // namespace detail

// Exact structural pattern match against the generator families of the
// one-parameter symmetry groups; anything else is tagged mixed.
inline FamilyTag classify_generator(const VectorField& v) {
    using namespace detail;
    const auto& t = v.table;
    const int n = v.n();

    bool xi_zero = true;
    for (auto& c : v.xi) xi_zero &= c.is_zero();

    if (xi_zero) {
        if (v.phi.is_zero()) return FamilyTag::Mixed;
        MPoly d = MPoly::constant(t, coef_of(v.phi, Monomial::one()));
        if (v.phi == d) return FamilyTag::UTranslation;
        MPoly bu = MPoly::term(t, mono_u(t), coef_of(v.phi, mono_u(t)));
        if (v.phi == bu) return FamilyTag::UScaling;
        MPoly cx(t);
        for (int k = 0; k < n; ++k) cx.add_term(mono_x(t, k), coef_of(v.phi, mono_x(t, k)));
        if (v.phi == cx) return FamilyTag::ULinearTranslation;
        return FamilyTag::Mixed;
    }

    if (v.phi.is_zero()) {
        MPoly consts(t);
        bool is_const = true, is_linear = true;
        for (int i = 0; i < n; ++i) {
            MPoly cexp = MPoly::constant(t, coef_of(v.xi[i], Monomial::one()));
            if (!(v.xi[i] == cexp)) is_const = false;
            MPoly lexp(t);
            for (int k = 0; k < n; ++k) lexp.add_term(mono_x(t, k), coef_of(v.xi[i], mono_x(t, k)));
            if (!(v.xi[i] == lexp)) is_linear = false;
        }
        if (is_const) return FamilyTag::XTranslation;
        if (is_linear) {
            bool antisym = true, zero_diag = true, diagonal = true;
            Rat trace(0);
            for (int i = 0; i < n; ++i)
                for (int k = 0; k < n; ++k) {
                    Rat a = coef_of(v.xi[i], mono_x(t, k));
                    if (i == k) {
                        trace += a;
                        if (a != 0) {
                            zero_diag = false;
                            antisym = false;
                        }
                    } else {
                        if (a != -coef_of(v.xi[k], mono_x(t, i))) antisym = false;
                        if (a != 0) diagonal = false;
                    }
                }
            if (antisym && zero_diag) return FamilyTag::Rotation;
            if (diagonal && trace == 0) return FamilyTag::TraceScaling;
            if (zero_diag) return FamilyTag::OffDiagonalAffine;
            return FamilyTag::Mixed;
        }
        return FamilyTag::Mixed;
    }

    // Diagonal scaling tied to a u-scaling: xi^i = d_i x^i, phi = b u with
    // (n+1) b = sum d_i.
    {
        bool diag = true;
        Rat trace(0);
        for (int i = 0; i < n && diag; ++i) {
            Rat di = coef_of(v.xi[i], mono_x(t, i));
            trace += di;
            diag &= (v.xi[i] == MPoly::term(t, mono_x(t, i), di));
        }
        Rat b = coef_of(v.phi, mono_u(t));
        if (diag && v.phi == MPoly::term(t, mono_u(t), b) && Rat(n + 1) * b == trace)
            return FamilyTag::TraceScaling;
    }

    // Projective family along an axis i: xi^j = t (x^i x^j + c delta_ij),
    // phi = t x^i u.
    for (int i = 0; i < n; ++i) {
        Rat tc = coef_of(v.phi, mono_xu(t, i));
        if (tc == 0) continue;
        if (!(v.phi == MPoly::term(t, mono_xu(t, i), tc))) continue;
        Rat c = coef_of(v.xi[i], Monomial::one()) / tc;
        bool match = true;
        for (int j = 0; j < n && match; ++j) {
            MPoly expect = MPoly::term(t, mono_xx(t, i, j), tc);
            if (j == i) expect += MPoly::constant(t, tc * c);
            match &= (v.xi[j] == expect);
        }
        if (match) return FamilyTag::Projective;
    }
    return FamilyTag::Mixed;
}

namespace detail {

struct SparseSystem {
    std::vector<IntRow> rows;  // deduplicated primitive integer rows
    int cols = 0;
};

inline SparseSystem dedupe_rows(const std::vector<std::vector<std::pair<int, Rat>>>& rat_rows, int cols) {
    std::set<IntRow> seen;
    SparseSystem sys;
    sys.cols = cols;
    for (auto& r : rat_rows) {
        IntRow row = row_from_rat(r);
        if (row.empty()) continue;
        if (row.front().second < 0)
            for (auto& [c, v] : row) v = -v;
        if (seen.insert(row).second) sys.rows.push_back(row);
    }
    return sys;
}

}  // namespace detail

// Full classification pipeline: generic ansatz, exact determining system,
// integer-preserving nullspace, canonical basis, family tags.
inline LieAlgebraBasis classify(int n, const Rat& p, int ansatz_degree = 3) {
    GenericAnsatz az = make_generic_ansatz(n, ansatz_degree);
    DeterminingSystem ds = determining_system(az.field, p);

    detail::SparseSystem sys = detail::dedupe_rows(ds.rows, ds.unknowns);
    detail::IntEchelon ech(ds.unknowns);
    // Short rows first: they knock out single coefficients cheaply.
    std::sort(sys.rows.begin(), sys.rows.end(),
              [](const detail::IntRow& a, const detail::IntRow& b) { return a.size() < b.size(); });
    for (auto& r : sys.rows) ech.add_row(r);
    ech.to_rref();

    LieAlgebraBasis basis;
    basis.n = n;
    basis.p = p;
    basis.ansatz_degree = ansatz_degree;
    basis.system_rows = int(sys.rows.size());
    basis.system_cols = ds.unknowns;
    basis.system_rank = ech.rank();

    auto vectors = canonical_span(ech.nullspace_basis(), ds.unknowns);
    basis.dimension = int(vectors.size());
    for (auto& vec : vectors) {
        std::map<int, Rat> assign;
        for (int m = 0; m < ds.unknowns; ++m) assign[az.field.table->unknown(m)] = vec[m];
        VectorField gen = az.field.substitute_unknowns(assign);
        if (!determining_system(gen, p).is_satisfied())
            throw std::logic_error("computed generator fails the determining system");
        basis.generators.push_back(std::move(gen));
        basis.coeff_vectors.push_back(std::move(vec));
    }
    for (auto& g : basis.generators) basis.tags.push_back(classify_generator(g));
    return basis;
}

struct ScanRow {
    Rat p;
    int dimension = 0;
    std::string special;  // "p=n+1", "p=1", "p=-n-1" or "generic"
};

inline std::vector<ScanRow> scan(int n, std::vector<Rat> ps, int ansatz_degree = 3) {
    if (ps.empty()) throw std::invalid_argument("empty p list");
    std::sort(ps.begin(), ps.end());
    ps.erase(std::unique(ps.begin(), ps.end()), ps.end());
    std::vector<ScanRow> out;
    for (auto& p : ps) {
        ScanRow row;
        row.p = p;
        row.dimension = classify(n, p, ansatz_degree).dimension;
        if (p == Rat(n + 1))
            row.special = "p=n+1";
        else if (p == Rat(1))
            row.special = "p=1";
        else if (p == Rat(-n - 1))
            row.special = "p=-n-1";
        else
            row.special = "generic";
        out.push_back(std::move(row));
    }
    return out;
}

// Joint vectorization of fields over their (component, monomial) support;
// used for exact span membership and bracket-closure checks.
inline std::vector<std::vector<Rat>> field_coordinates(const std::vector<const VectorField*>& fields) {
    std::map<std::pair<int, Monomial>, int,
             decltype([](const std::pair<int, Monomial>& a, const std::pair<int, Monomial>& b) {
                 if (a.first != b.first) return a.first < b.first;
                 return MonoOrder{}(a.second, b.second);
             })>
        columns;
    for (auto* f : fields) {
        auto visit = [&](int comp, const MPoly& poly) {
            for (auto& [m, c] : poly.terms()) columns.emplace(std::pair{comp, m}, 0);
        };
        for (int i = 0; i < f->n(); ++i) visit(i, f->xi[i]);
        visit(f->n(), f->phi);
    }
    int next = 0;
    for (auto& [key, idx] : columns) idx = next++;
    std::vector<std::vector<Rat>> out;
    for (auto* f : fields) {
        std::vector<Rat> v(columns.size(), Rat(0));
        auto visit = [&](int comp, const MPoly& poly) {
            for (auto& [m, c] : poly.terms()) v[columns.at({comp, m})] = c;
        };
        for (int i = 0; i < f->n(); ++i) visit(i, f->xi[i]);
        visit(f->n(), f->phi);
        out.push_back(std::move(v));
    }
    return out;
}

inline bool in_span(const LieAlgebraBasis& basis, const VectorField& v) {
    std::vector<const VectorField*> fs;
    for (auto& g : basis.generators) fs.push_back(&g);
    fs.push_back(&v);
    auto coords = field_coordinates(fs);
    std::vector<std::vector<Rat>> b(coords.begin(), coords.end() - 1);
    return lpsym::in_span(b, coords.back());
}

inline bool bracket_closed(const LieAlgebraBasis& basis) {
    for (size_t a = 0; a < basis.generators.size(); ++a)
        for (size_t b = a + 1; b < basis.generators.size(); ++b)
            if (!in_span(basis, bracket(basis.generators[a], basis.generators[b]))) return false;
    return true;
}

}  // namespace lpsym
