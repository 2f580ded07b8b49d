#pragma once

#include <cmath>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "lpsym/jet.hpp"
#include "lpsym/linalg.hpp"
#include "lpsym/rat.hpp"

namespace lpsym {

// Unit outer normal on the sphere S^n in R^{n+1}.
struct SpherePoint {
    VecD X;

    explicit SpherePoint(VecD coords) : X(std::move(coords)) {
        if (std::abs(norm(X) - 1.0) > 1e-12) throw std::invalid_argument("sphere point must be a unit vector");
    }

    int ambient_dim() const { return int(X.size()); }
};

// Chart map of the southern hemisphere onto the plane x_{n+1} = -1.
inline VecD project(const SpherePoint& P) {
    double last = P.X.back();
    if (last >= 0) throw std::domain_error("outside southern chart");
    VecD x(P.X.size() - 1);
    for (size_t i = 0; i + 1 < P.X.size(); ++i) x[i] = -P.X[i] / last;
    return x;
}

inline SpherePoint unproject(const VecD& x) {
    double w = std::sqrt(1.0 + dot(x, x));
    VecD X(x.size() + 1);
    for (size_t i = 0; i < x.size(); ++i) X[i] = x[i] / w;
    X.back() = -1.0 / w;
    return SpherePoint(X);
}

// Round metric of S^n in chart coordinates with inverse, determinant and
// Christoffel symbols, all in closed form.
struct MetricData {
    MatD g, g_inv;
    double det_g = 0;
    std::vector<MatD> christoffel;  // christoffel[k](i, j) = Gamma^k_{ij}
};

inline MetricData metric_at(const VecD& x) {
    int n = int(x.size());
    double w = 1.0 + dot(x, x);
    MetricData md;
    md.g = MatD(n, n);
    md.g_inv = MatD(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            double d = (i == j) ? 1.0 : 0.0;
            md.g(i, j) = (d - x[i] * x[j] / w) / w;
            md.g_inv(i, j) = w * (d + x[i] * x[j]);
        }
    md.det_g = std::pow(w, -(n + 1));
    md.christoffel.assign(n, MatD(n, n));
    for (int k = 0; k < n; ++k)
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) {
                double v = 0;
                if (j == k) v -= x[i];
                if (i == k) v -= x[j];
                md.christoffel[k](i, j) = v / w;
            }
    return md;
}

// ---- catalog of closed-form scalar fields --------------------------------

namespace fields {

inline D2 weight_d2(std::span<const D2> x) {
    int n = int(x.size());
    D2 w = D2::constant(1.0, x.empty() ? 0 : x[0].dims());
    for (int i = 0; i < n; ++i) w = w + x[i] * x[i];
    return w;
}

// sqrt(1 + |x|^2): the projective function of the unit ball; solves the
// projected equation for every exponent p.
inline ScalarField unit_ball(int n) {
    return ScalarField(n, "unit-ball", [](std::span<const D2> x) { return sqrt(weight_d2(x)); });
}

inline ScalarField scaled_ball(int n, double c) {
    std::ostringstream os;
    os << "ball-scaled(c=" << c << ")";
    return ScalarField(n, os.str(), [c](std::span<const D2> x) { return sqrt(weight_d2(x)) * c; });
}

// sqrt(1+|x|^2) + b . (x, -1): the unit ball translated by b in R^{n+1}.
inline ScalarField translated_ball(int n, VecD b) {
    if (int(b.size()) != n + 1) throw std::invalid_argument("translation vector must have n+1 entries");
    return ScalarField(n, "ball-translated", [b](std::span<const D2> x) {
        D2 r = sqrt(weight_d2(x));
        for (size_t i = 0; i < x.size(); ++i) r = r + x[i] * b[i];
        return r - b.back();
    });
}

// |A^T (x, -1)|: the projective function of the centered ellipsoid
// A . (unit ball) in R^{n+1}; A is (n+1) x (n+1) and nonsingular.
inline ScalarField ellipsoid(int n, const MatD& A) {
    if (A.rows() != n + 1 || A.cols() != n + 1) throw std::invalid_argument("ellipsoid matrix shape");
    if (std::abs(det(A)) < 1e-12) throw std::invalid_argument("singular ellipsoid matrix");
    return ScalarField(n, "ellipsoid", [A, n](std::span<const D2> x) {
        int dims = x.empty() ? 0 : x[0].dims();
        D2 s = D2::constant(0.0, dims);
        for (int j = 0; j <= n; ++j) {
            D2 comp = D2::constant(-A(n, j), dims);  // last slot of (x, -1)
            for (int i = 0; i < n; ++i) comp = comp + x[i] * A(i, j);
            s = s + comp * comp;
        }
        return sqrt(s);
    });
}

// sqrt(1 + |Ax|^2) for A in SL(n): linear image of the unit ball profile;
// solves the projected equation exactly at p = -n-1.
inline ScalarField linear_image_ball(int n, const MatD& A) {
    if (A.rows() != n || A.cols() != n) throw std::invalid_argument("linear image matrix shape");
    return ScalarField(n, "ball-linear-image", [A, n](std::span<const D2> x) {
        int dims = x.empty() ? 0 : x[0].dims();
        D2 s = D2::constant(1.0, dims);
        for (int i = 0; i < n; ++i) {
            D2 comp = D2::constant(0.0, dims);
            for (int j = 0; j < n; ++j) comp = comp + x[j] * A(i, j);
            s = s + comp * comp;
        }
        return sqrt(s);
    });
}

// 1 + |x|^2 / 2: not a solution away from the origin; negative control.
inline ScalarField quadratic_bowl(int n) {
    return ScalarField(n, "quadratic-bowl",
                       [](std::span<const D2> x) { return (weight_d2(x) + 1.0) * 0.5; });
}

inline ScalarField constant_field(int n, double c) {
    return ScalarField(n, "constant", [c](std::span<const D2> x) {
        return D2::constant(c, x.empty() ? 0 : x[0].dims());
    });
}

}  // namespace fields

// ---- projective function <-> support function ----------------------------

// h(X(x)) = u(x) / sqrt(1 + |x|^2), with derivatives carried through the
// weight exactly.
inline ScalarField support_from_projective(const ScalarField& u) {
    int n = u.n();
    return ScalarField(n, "support(" + u.descriptor() + ")", [u](std::span<const D2> x) {
        return u.eval(x) / sqrt(fields::weight_d2(x));
    });
}

inline ScalarField projective_from_support(const ScalarField& h) {
    int n = h.n();
    return ScalarField(n, "projective(" + h.descriptor() + ")", [h](std::span<const D2> x) {
        return h.eval(x) * sqrt(fields::weight_d2(x));
    });
}

// Covariant Hessian of a chart field: d^2 h - Gamma^k dh_k.
inline MatD sphere_hessian(const ScalarField& h, const VecD& x) {
    Jet2 jet = h.jet(x);
    MetricData md = metric_at(x);
    int n = int(x.size());
    MatD r(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            double v = jet.hess(i, j);
            for (int k = 0; k < n; ++k) v -= md.christoffel[k](i, j) * jet.grad[k];
            r(i, j) = v;
        }
    return r;
}

// det D^2 u - (1 + |x|^2)^{-(p+n+1)/2} u^{p-1}.
inline double residual_plane(const ScalarField& u, const Rat& p, const VecD& x) {
    Jet2 jet = u.jet(x);
    if (jet.value <= 0) throw std::domain_error("positivity violated");
    int n = int(x.size());
    double pd = rat_double(p);
    double w = 1.0 + dot(x, x);
    return det(jet.hess) - std::pow(w, -(pd + n + 1) / 2.0) * std::pow(jet.value, pd - 1.0);
}

// det(nabla^2 h + h g) / det g - h^{p-1}.
inline double residual_sphere(const ScalarField& h, const Rat& p, const VecD& x) {
    Jet2 jet = h.jet(x);
    if (jet.value <= 0) throw std::domain_error("positivity violated");
    MetricData md = metric_at(x);
    MatD m = sphere_hessian(h, x) + md.g.scaled(jet.value);
    return det(m) / md.det_g - std::pow(jet.value, rat_double(p) - 1.0);
}

}  // namespace lpsym
