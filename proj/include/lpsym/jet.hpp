#pragma once

#include <cmath>
#include <functional>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "lpsym/linalg.hpp"

namespace lpsym {

// Value with exact first and second derivatives with respect to a fixed set
// of seed variables (forward-mode propagation, no finite differences).
struct D2 {
    double v = 0;
    VecD g;   // size n
    MatD h;   // n x n, kept symmetric

    D2() = default;
    D2(double value, int n) : v(value), g(n, 0.0), h(n, n) {}

    int dims() const { return int(g.size()); }

    static D2 constant(double c, int n) { return D2(c, n); }
    static D2 variable(double x, int i, int n) {
        D2 d(x, n);
        d.g[i] = 1.0;
        return d;
    }

    D2 chain(double f0, double f1, double f2) const {
        D2 r(f0, dims());
        for (int i = 0; i < dims(); ++i) r.g[i] = f1 * g[i];
        for (int i = 0; i < dims(); ++i)
            for (int j = 0; j < dims(); ++j) r.h(i, j) = f1 * h(i, j) + f2 * g[i] * g[j];
        return r;
    }

    friend D2 operator+(const D2& a, const D2& b) {
        D2 r(a.v + b.v, a.dims());
        for (int i = 0; i < r.dims(); ++i) r.g[i] = a.g[i] + b.g[i];
        r.h = a.h + b.h;
        return r;
    }
    friend D2 operator-(const D2& a, const D2& b) {
        D2 r(a.v - b.v, a.dims());
        for (int i = 0; i < r.dims(); ++i) r.g[i] = a.g[i] - b.g[i];
        r.h = a.h - b.h;
        return r;
    }
    friend D2 operator-(const D2& a) { return a.chain(-a.v, -1.0, 0.0); }
    friend D2 operator*(const D2& a, const D2& b) {
        D2 r(a.v * b.v, a.dims());
        for (int i = 0; i < r.dims(); ++i) r.g[i] = a.g[i] * b.v + b.g[i] * a.v;
        for (int i = 0; i < r.dims(); ++i)
            for (int j = 0; j < r.dims(); ++j)
                r.h(i, j) = a.h(i, j) * b.v + b.h(i, j) * a.v + a.g[i] * b.g[j] + b.g[i] * a.g[j];
        return r;
    }
    friend D2 operator+(const D2& a, double c) {
        D2 r = a;
        r.v += c;
        return r;
    }
    friend D2 operator+(double c, const D2& a) { return a + c; }
    friend D2 operator-(const D2& a, double c) { return a + (-c); }
    friend D2 operator-(double c, const D2& a) { return (-a) + c; }
    friend D2 operator*(const D2& a, double c) { return a.chain(a.v * c, c, 0.0); }
    friend D2 operator*(double c, const D2& a) { return a * c; }
    friend D2 operator/(const D2& a, const D2& b) { return a * recip(b); }
    friend D2 operator/(const D2& a, double c) { return a * (1.0 / c); }
    friend D2 operator/(double c, const D2& b) { return recip(b) * c; }

    friend D2 recip(const D2& x) {
        if (x.v == 0) throw std::domain_error("division by zero");
        double iv = 1.0 / x.v;
        return x.chain(iv, -iv * iv, 2.0 * iv * iv * iv);
    }
    friend D2 sqrt(const D2& x) {
        if (x.v <= 0) throw std::domain_error("sqrt of non-positive value");
        double s = std::sqrt(x.v);
        return x.chain(s, 0.5 / s, -0.25 / (s * x.v));
    }
    friend D2 pow(const D2& x, double a) {
        if (x.v <= 0) throw std::domain_error("pow of non-positive base");
        double f0 = std::pow(x.v, a);
        return x.chain(f0, a * f0 / x.v, a * (a - 1.0) * f0 / (x.v * x.v));
    }
    friend D2 log(const D2& x) {
        if (x.v <= 0) throw std::domain_error("log of non-positive value");
        return x.chain(std::log(x.v), 1.0 / x.v, -1.0 / (x.v * x.v));
    }
    friend D2 exp(const D2& x) {
        double e = std::exp(x.v);
        return x.chain(e, e, e);
    }
};

// Twice-differentiable point data: value, gradient and symmetric Hessian.
struct Jet2 {
    double value = 0;
    VecD grad;
    MatD hess;
};

// Scalar function of chart coordinates with exact derivative propagation.
// The evaluator works on D2 scalars, so fields compose through point maps.
class ScalarField {
public:
    using Evaluator = std::function<D2(std::span<const D2>)>;

    ScalarField() = default;
    ScalarField(int n, std::string desc, Evaluator f)
        : n_(n), desc_(std::move(desc)), f_(std::move(f)) {}

    int n() const { return n_; }
    const std::string& descriptor() const { return desc_; }

    D2 eval(std::span<const D2> x) const { return f_(x); }

    Jet2 jet(const VecD& x) const {
        if (int(x.size()) != n_) throw std::invalid_argument("point dimension mismatch");
        std::vector<D2> seeds;
        seeds.reserve(n_);
        for (int i = 0; i < n_; ++i) seeds.push_back(D2::variable(x[i], i, n_));
        D2 r = f_(seeds);
        return Jet2{r.v, r.g, r.h};
    }

    double value(const VecD& x) const { return jet(x).value; }

private:
    int n_ = 0;
    std::string desc_;
    Evaluator f_;
};

}  // namespace lpsym
