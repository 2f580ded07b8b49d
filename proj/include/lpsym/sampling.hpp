#pragma once

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "lpsym/linalg.hpp"

namespace lpsym {

// Deterministic, platform-independent generator (splitmix64 core). Identical
// seeds produce identical sequences on every build, which the reproducibility
// guarantees of the certification reports rely on.
class Rng {
public:
    explicit Rng(uint64_t seed) : s_(seed) {}

    uint64_t next() {
        uint64_t z = (s_ += 0x9e3779b97f4a7c15ull);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
        return z ^ (z >> 31);
    }

    double uniform01() { return double(next() >> 11) * 0x1.0p-53; }
    double uniform(double a, double b) { return a + (b - a) * uniform01(); }

    double gaussian() {
        double u1 = 1.0 - uniform01();
        double u2 = uniform01();
        return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * M_PI * u2);
    }

    VecD in_ball(int n, double radius) {
        while (true) {
            VecD x(n);
            double r2 = 0;
            for (int i = 0; i < n; ++i) {
                x[i] = uniform(-radius, radius);
                r2 += x[i] * x[i];
            }
            if (r2 <= radius * radius) return x;
        }
    }

    VecD on_sphere(int dim) {
        while (true) {
            VecD x(dim);
            for (int i = 0; i < dim; ++i) x[i] = gaussian();
            double r = norm(x);
            if (r > 1e-8) {
                for (auto& c : x) c /= r;
                return x;
            }
        }
    }

    // Product of random plane rotations; special orthogonal by construction.
    MatD rotation(int n) {
        MatD R = MatD::identity(n);
        for (int p = 0; p < n; ++p)
            for (int q = p + 1; q < n; ++q) {
                double a = uniform(0, 2.0 * M_PI);
                double c = std::cos(a), s = std::sin(a);
                for (int k = 0; k < n; ++k) {
                    double rp = R(p, k), rq = R(q, k);
                    R(p, k) = c * rp - s * rq;
                    R(q, k) = s * rp + c * rq;
                }
            }
        return R;
    }

    // Gaussian entries renormalized to determinant one.
    MatD special_linear(int n) {
        while (true) {
            MatD A(n, n);
            for (int i = 0; i < n; ++i)
                for (int j = 0; j < n; ++j) A(i, j) = gaussian();
            double d = det(A);
            if (std::abs(d) < 0.1) continue;
            if (d < 0) {
                for (int j = 0; j < n; ++j) A(0, j) = -A(0, j);
                d = -d;
            }
            double f = std::pow(d, -1.0 / n);
            for (int i = 0; i < n; ++i)
                for (int j = 0; j < n; ++j) A(i, j) *= f;
            return A;
        }
    }

    MatD nonsingular(int n, double min_det = 0.2) {
        while (true) {
            MatD A(n, n);
            for (int i = 0; i < n; ++i)
                for (int j = 0; j < n; ++j) A(i, j) = gaussian() + (i == j ? 2.0 : 0.0);
            if (std::abs(det(A)) >= min_det) return A;
        }
    }

    MatD spd(int n, double shift = 0.5) {
        MatD A(n, n);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) A(i, j) = gaussian();
        MatD S = A.transposed() * A;
        for (int i = 0; i < n; ++i) S(i, i) += shift;
        return S;
    }

private:
    uint64_t s_;
};

// Reproducible point plan: same seed, same point sequence.
struct SamplePlan {
    int n = 2;
    double radius = 5.0;
    int count = 1000;
    uint64_t seed = 1;

    SamplePlan() = default;
    SamplePlan(int dim, double r, int cnt, uint64_t sd) : n(dim), radius(r), count(cnt), seed(sd) {
        if (n < 1 || count < 1 || radius <= 0) throw std::invalid_argument("bad sample plan");
    }

    std::vector<VecD> chart_points() const {
        Rng rng(seed);
        std::vector<VecD> pts;
        pts.reserve(count);
        for (int i = 0; i < count; ++i) pts.push_back(rng.in_ball(n, radius));
        return pts;
    }

    std::vector<VecD> sphere_directions() const {
        Rng rng(seed);
        std::vector<VecD> dirs;
        dirs.reserve(count);
        for (int i = 0; i < count; ++i) dirs.push_back(rng.on_sphere(n + 1));
        return dirs;
    }
};

}  // namespace lpsym
