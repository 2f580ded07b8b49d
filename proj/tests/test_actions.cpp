#include <catch2/catch_amalgamated.hpp>

#include "helpers.hpp"
#include "lpsym/actions.hpp"

using namespace lpsym;

TEST_CASE("pointwise action formulas") {
    SECTION("vertical scaling") {
        auto a = GroupAction::g2(2, 3.0);
        auto [y, v] = a.apply({0.5, -1.0}, 2.0);
        CHECK(y == VecD{0.5, -1.0});
        CHECK(v == 6.0);
    }
    SECTION("chart rotation at the origin") {
        double eps = 0.4;
        auto a = GroupAction::g3(2, 0, eps);
        auto [y, v] = a.apply({0.0, 0.0}, 1.0);
        CHECK(y[0] == Catch::Approx(std::tan(eps)).epsilon(1e-15));
        CHECK(y[1] == 0.0);
        CHECK(v == Catch::Approx(1.0 / std::cos(eps)).epsilon(1e-15));
    }
    SECTION("identity parameters act trivially") {
        VecD x = {0.3, -0.7};
        double u = 1.7;
        std::vector<GroupAction> ids = {GroupAction::g1(MatD::identity(2)),
                                        GroupAction::g2(2, 1.0),
                                        GroupAction::g3(2, 0, 0.0),
                                        GroupAction::g4(2, 0.0),
                                        GroupAction::g5(2, 1, 0.0),
                                        GroupAction::g6(MatD::identity(2)),
                                        GroupAction::g7(2, 0, 1.0),
                                        GroupAction::g8(2, 1, 0.0),
                                        GroupAction::g9(2, 0, 0.0)};
        for (auto& a : ids) {
            auto [y, v] = a.apply(x, u);
            for (int i = 0; i < 2; ++i) CHECK(y[i] == Catch::Approx(x[i]).margin(1e-15));
            CHECK(v == Catch::Approx(u).margin(1e-15));
        }
    }
    SECTION("domain guards") {
        CHECK_THROWS_WITH(GroupAction::g3(2, 0, 1.0).apply({2.0, 0.0}, 1.0), "action undefined at point");
        CHECK_THROWS_AS(GroupAction::g9(2, 0, 0.5).apply({3.0, 0.0}, 1.0), std::domain_error);
        CHECK_THROWS_AS(GroupAction::g2(2, 0.0), std::invalid_argument);
        CHECK_THROWS_AS(GroupAction::g2(2, -1.0), std::invalid_argument);
        CHECK_THROWS_AS(GroupAction::g7(2, 0, -2.0), std::invalid_argument);
        MatD notrot(2, 2);
        notrot(0, 0) = 2.0;
        notrot(1, 1) = 0.5;
        CHECK_THROWS_AS(GroupAction::g1(notrot), std::invalid_argument);
        CHECK_THROWS_AS(GroupAction::g6(notrot.scaled(1.1)), std::invalid_argument);
    }
}

TEST_CASE("one-parameter group laws") {
    Rng rng(7);
    auto composed_equals = [&](const GroupAction& a1, const GroupAction& a2, const GroupAction& a12) {
        for (int t = 0; t < 50; ++t) {
            VecD x = rng.in_ball(2, 0.5);
            double u = rng.uniform(0.5, 2.0);
            try {
                auto [y1, v1] = a2.apply(x, u);
                auto [y2, v2] = a1.apply(y1, v1);
                auto [y, v] = a12.apply(x, u);
                for (int i = 0; i < 2; ++i) CHECK(std::abs(y2[i] - y[i]) <= 1e-12 * std::max(1.0, std::abs(y[i])));
                CHECK(std::abs(v2 - v) <= 1e-12 * std::max(1.0, std::abs(v)));
            } catch (const std::domain_error&) {
            }
        }
    };
    SECTION("additive parameters") {
        composed_equals(GroupAction::g3(2, 0, 0.2), GroupAction::g3(2, 0, 0.3), GroupAction::g3(2, 0, 0.5));
        composed_equals(GroupAction::g4(2, 0.2), GroupAction::g4(2, 0.3), GroupAction::g4(2, 0.5));
        composed_equals(GroupAction::g5(2, 1, 0.2), GroupAction::g5(2, 1, 0.3), GroupAction::g5(2, 1, 0.5));
        composed_equals(GroupAction::g8(2, 0, 0.2), GroupAction::g8(2, 0, 0.3), GroupAction::g8(2, 0, 0.5));
        composed_equals(GroupAction::g9(2, 0, 0.2), GroupAction::g9(2, 0, 0.3), GroupAction::g9(2, 0, 0.5));
    }
    SECTION("multiplicative parameters") {
        composed_equals(GroupAction::g2(2, 2.0), GroupAction::g2(2, 3.0), GroupAction::g2(2, 6.0));
        composed_equals(GroupAction::g7(2, 0, 1.5), GroupAction::g7(2, 0, 2.0), GroupAction::g7(2, 0, 3.0));
    }
    SECTION("matrix parameters") {
        MatD R1 = rng.rotation(2), R2 = rng.rotation(2);
        composed_equals(GroupAction::g1(R1), GroupAction::g1(R2), GroupAction::g1(R1 * R2));
        MatD A1 = rng.special_linear(2), A2 = rng.special_linear(2);
        composed_equals(GroupAction::g6(A1), GroupAction::g6(A2), GroupAction::g6(A1 * A2));
    }
}

TEST_CASE("transport closed forms") {
    Rng rng(17);
    auto u0 = fields::unit_ball(2);
    SECTION("vertical shift") {
        auto v = GroupAction::g4(2, 0.75).transport(u0);
        VecD x = {0.3, 0.4};
        CHECK(v.value(x) == Catch::Approx(u0.value(x) + 0.75).epsilon(1e-15));
    }
    SECTION("rotation pullback") {
        MatD R = rng.rotation(2);
        auto v = GroupAction::g1(R).transport(u0);
        for (int t = 0; t < 100; ++t) {
            VecD y = rng.in_ball(2, 5.0);
            VecD x = matvec(R.transposed(), y);
            CHECK(std::abs(v.value(y) - u0.value(x)) <= 1e-13);
        }
    }
    SECTION("chart rotations fix the round solution") {
        for (int axis : {0, 1}) {
            auto v = GroupAction::g3(2, axis, 0.3).transport(u0);
            int checked = 0;
            for (int t = 0; t < 100; ++t) {
                VecD y = rng.in_ball(2, 5.0);
                try {
                    double w = v.value(y);
                    CHECK(std::abs(w - u0.value(y)) <= 1e-12 * u0.value(y));
                    ++checked;
                } catch (const std::domain_error&) {
                }
            }
            CHECK(checked > 60);
        }
    }
    SECTION("inverse transport restores the field") {
        std::vector<GroupAction> actions = {
            GroupAction::g1(rng.rotation(2)),     GroupAction::g2(2, 1.7),
            GroupAction::g3(2, 0, 0.25),          GroupAction::g4(2, 0.4),
            GroupAction::g5(2, 1, 0.6),           GroupAction::g6(rng.special_linear(2)),
            GroupAction::g7(2, 1, 1.3),           GroupAction::g8(2, 0, 0.8),
            GroupAction::g9(2, 1, 0.12)};
        MatD body = rng.nonsingular(3);
        auto u = fields::ellipsoid(2, body);
        for (auto& a : actions) {
            auto round_trip = a.inverse().transport(a.transport(u));
            int checked = 0;
            for (int t = 0; t < 100; ++t) {
                VecD y = rng.in_ball(2, 3.0);
                try {
                    double w = round_trip.value(y);
                    CHECK(std::abs(w - u.value(y)) <= 1e-11 * std::max(1.0, u.value(y)));
                    ++checked;
                } catch (const std::domain_error&) {
                }
            }
            CHECK(checked > 50);
        }
    }
}

TEST_CASE("normal vectors transform by the resolved rotation") {
    Rng rng(27);
    SECTION("plane rotation block") {
        MatD R = rng.rotation(3);
        auto a = GroupAction::g1(R);
        MatD S = a.resolve()[0].M;
        for (int t = 0; t < 200; ++t) {
            VecD x = rng.in_ball(3, 5.0);
            auto [y, v] = a.apply(x, 1.0);
            VecD lhs = unproject(y).X;
            VecD rhs = matvec(S, unproject(x).X);
            for (size_t i = 0; i < lhs.size(); ++i) CHECK(std::abs(lhs[i] - rhs[i]) <= 1e-12);
        }
    }
    SECTION("chart rotation block") {
        auto a = GroupAction::g3(2, 1, 0.35);
        MatD O = a.resolve()[0].M;
        int checked = 0;
        for (int t = 0; t < 200; ++t) {
            VecD x = rng.in_ball(2, 5.0);
            try {
                auto [y, v] = a.apply(x, 1.0);
                VecD lhs = unproject(y).X;
                VecD rhs = matvec(O, unproject(x).X);
                for (size_t i = 0; i < lhs.size(); ++i) CHECK(std::abs(lhs[i] - rhs[i]) <= 1e-12);
                ++checked;
            } catch (const std::domain_error&) {
            }
        }
        CHECK(checked > 100);
    }
}

TEST_CASE("resolved transform data") {
    SECTION("translations carry the support-matching offsets") {
        auto t4 = GroupAction::g4(2, 0.5).resolve();
        REQUIRE(t4.size() == 1);
        CHECK(t4[0].kind == BodyTransform::Kind::Translation);
        CHECK(t4[0].b == VecD{0.0, 0.0, -0.5});

        auto t5 = GroupAction::g5(2, 0, 0.7).resolve();
        REQUIRE(t5.size() == 1);
        CHECK(t5[0].b == VecD{0.7, 0.0, 0.0});
    }
    SECTION("axis dilation factors") {
        double mu = 1.9;
        auto t7 = GroupAction::g7(2, 0, mu).resolve();
        REQUIRE(t7.size() == 1);
        REQUIRE(t7[0].kind == BodyTransform::Kind::Scaling);
        CHECK(t7[0].k[0] == Catch::Approx(std::pow(mu, -2.0 / 3.0)).epsilon(1e-14));
        CHECK(t7[0].k[1] == Catch::Approx(std::pow(mu, 1.0 / 3.0)).epsilon(1e-14));
        CHECK(t7[0].k[2] == Catch::Approx(std::pow(mu, 1.0 / 3.0)).epsilon(1e-14));
        double prod = t7[0].k[0] * t7[0].k[1] * t7[0].k[2];
        CHECK(prod == Catch::Approx(1.0).epsilon(1e-14));
    }
    SECTION("shear matrices are unimodular with one off-diagonal entry") {
        auto t8 = GroupAction::g8(2, 0, 0.4).resolve();
        REQUIRE(t8.size() == 1);
        CHECK(t8[0].kind == BodyTransform::Kind::CentroAffine);
        CHECK(t8[0].M(2, 0) == 0.4);
        CHECK(det(t8[0].M) == Catch::Approx(1.0).margin(1e-14));

        auto t9 = GroupAction::g9(2, 1, 0.3).resolve();
        REQUIRE(t9.size() == 1);
        CHECK(t9[0].M(1, 2) == -0.3);
        CHECK(det(t9[0].M) == Catch::Approx(1.0).margin(1e-14));
    }
    SECTION("unimodular actions split into rotation, scaling, rotation") {
        Rng rng(31);
        MatD A = rng.special_linear(2);
        auto ts = GroupAction::g6(A).resolve();
        REQUIRE(ts.size() == 3);
        CHECK(ts[0].kind == BodyTransform::Kind::Rotation);
        CHECK(ts[1].kind == BodyTransform::Kind::Scaling);
        CHECK(ts[2].kind == BodyTransform::Kind::Rotation);
        double prod = 1;
        for (double f : ts[1].k) prod *= f;
        CHECK(prod == Catch::Approx(1.0).epsilon(1e-12));
    }
}

TEST_CASE("support identities") {
    SECTION("rotation preserves the support value") {
        CHECK(support_after_rotation(1.37) == 1.37);
    }
    SECTION("uniform axis scaling degenerates to a dilation") {
        Rng rng(37);
        VecD Y = rng.on_sphere(3);
        VecD k(3, 1.8);
        CHECK(support_after_axis_scaling(2.0, Y, k) == Catch::Approx(2.0 * 1.8).epsilon(1e-14));
    }
    SECTION("lifted shear worked value") {
        // h = 1, eps = 1, Y = (e_i + e_last)/sqrt(2): q = sqrt(5/2).
        VecD Y = {1.0 / std::sqrt(2.0), 0.0, 1.0 / std::sqrt(2.0)};
        double q = support_after_shear_last(1.0, Y, 0, 1.0);
        CHECK(q == Catch::Approx(std::sqrt(2.5)).epsilon(1e-15));
    }
    SECTION("shear weights against the linear-image oracle") {
        Rng rng(41);
        int n = 2, N = n + 1;
        for (int t = 0; t < 300; ++t) {
            VecD Y = rng.on_sphere(N);
            double eps = rng.uniform(-0.9, 0.9);
            int axis = int(rng.next() % n);

            MatD H = MatD::identity(N);
            H(N - 1, axis) = eps;
            VecD HtY = matvec(H.transposed(), Y);
            CHECK(support_after_shear_last(1.0, Y, axis, eps) == Catch::Approx(norm(HtY)).epsilon(1e-12));

            MatD Q = MatD::identity(N);
            Q(axis, N - 1) = -eps;
            VecD QtY = matvec(Q.transposed(), Y);
            CHECK(support_after_shear_axis(1.0, Y, axis, eps) == Catch::Approx(norm(QtY)).epsilon(1e-12));
        }
    }
    SECTION("the variant axis-shear weight disagrees with the oracle") {
        // pick a direction with |Y_i| != |Y_last| so the two weights differ
        VecD Y = unproject({2.0, 0.5}).X;
        double eps = 0.7;
        MatD Q = MatD::identity(3);
        Q(0, 2) = -eps;
        double oracle = norm(matvec(Q.transposed(), Y));
        CHECK(std::abs(support_after_shear_axis(1.0, Y, 0, eps) - oracle) <= 1e-15);
        CHECK(std::abs(support_after_shear_axis_alt(1.0, Y, 0, eps) - oracle) > 1e-2);
    }
}

TEST_CASE("symmetric eigensolver") {
    SECTION("identity") {
        auto e = jacobi_eigh(MatD::identity(3));
        for (double v : e.values) CHECK(v == Catch::Approx(1.0).margin(1e-14));
    }
    SECTION("classic 2x2") {
        MatD S(2, 2);
        S(0, 0) = S(1, 1) = 2.0;
        S(0, 1) = S(1, 0) = 1.0;
        auto e = jacobi_eigh(S);
        CHECK(e.values[0] == Catch::Approx(3.0).margin(1e-13));
        CHECK(e.values[1] == Catch::Approx(1.0).margin(1e-13));
        double c = 1.0 / std::sqrt(2.0);
        CHECK(std::abs(std::abs(e.vectors(0, 0) * c + e.vectors(1, 0) * c) - 1.0) <= 1e-13);
        CHECK(std::abs(std::abs(e.vectors(0, 1) * c - e.vectors(1, 1) * c) - 1.0) <= 1e-13);
    }
    SECTION("random Gram matrices") {
        Rng rng(47);
        for (int n : {2, 3, 4}) {
            for (int t = 0; t < 50; ++t) {
                MatD S = rng.spd(n, 0.0);
                auto e = jacobi_eigh(S);
                for (double v : e.values) CHECK(v >= -1e-12);
                for (size_t i = 1; i < e.values.size(); ++i) CHECK(e.values[i - 1] >= e.values[i]);
                CHECK(max_abs_diff(e.vectors.transposed() * e.vectors, MatD::identity(n)) <= 1e-12);
                for (int k = 0; k < n; ++k) {
                    VecD v(n);
                    for (int i = 0; i < n; ++i) v[i] = e.vectors(i, k);
                    VecD Sv = matvec(S, v);
                    for (int i = 0; i < n; ++i) CHECK(std::abs(Sv[i] - e.values[k] * v[i]) <= 1e-11);
                }
            }
        }
    }
    SECTION("asymmetric input is rejected") {
        MatD S(2, 2);
        S(0, 1) = 1.0;
        CHECK_THROWS_AS(jacobi_eigh(S), std::invalid_argument);
    }
}

TEST_CASE("rotation-scaling-rotation split") {
    SECTION("positive diagonal input is fixed") {
        MatD A(2, 2);
        A(0, 0) = 2.0;
        A(1, 1) = 0.5;
        auto d = sl_decompose(A);
        CHECK(d.lambda[0] == Catch::Approx(2.0).epsilon(1e-13));
        CHECK(d.lambda[1] == Catch::Approx(0.5).epsilon(1e-13));
        CHECK(frobenius(d.P - MatD::identity(2)) <= 1e-13);
        CHECK(frobenius(d.Q - MatD::identity(2)) <= 1e-13);
        MatD lam(2, 2);
        lam(0, 0) = d.lambda[0];
        lam(1, 1) = d.lambda[1];
        CHECK(frobenius(d.P * lam * d.Q - A) <= 1e-13);
    }
    SECTION("shear factors through the golden ratio") {
        MatD A(2, 2);
        A(0, 0) = A(0, 1) = A(1, 1) = 1.0;
        auto d = sl_decompose(A);
        double golden = (1.0 + std::sqrt(5.0)) / 2.0;
        CHECK(d.lambda[0] == Catch::Approx(golden).epsilon(1e-12));
        CHECK(d.lambda[1] == Catch::Approx(1.0 / golden).epsilon(1e-12));
        // independent oracle: eigenvalues of A^T A are (3 +- sqrt 5)/2
        CHECK(d.lambda[0] * d.lambda[0] == Catch::Approx((3.0 + std::sqrt(5.0)) / 2.0).epsilon(1e-12));
    }
    SECTION("orthogonal input needs no scaling") {
        Rng rng(53);
        MatD R = rng.rotation(3);
        auto d = sl_decompose(R);
        for (double l : d.lambda) CHECK(l == Catch::Approx(1.0).epsilon(1e-12));
        CHECK(frobenius(d.P * d.Q - R) <= 1e-11);
    }
    SECTION("random unimodular matrices satisfy all postconditions") {
        Rng rng(59);
        for (int n : {2, 3}) {
            for (int t = 0; t < 200; ++t) {
                MatD A = rng.special_linear(n);
                auto d = sl_decompose(A);
                MatD lam(n, n);
                double prod = 1;
                for (int i = 0; i < n; ++i) {
                    CHECK(d.lambda[i] > 0);
                    lam(i, i) = d.lambda[i];
                    prod *= d.lambda[i];
                }
                CHECK(std::abs(prod - 1.0) <= 1e-12);
                CHECK(frobenius(d.P * lam * d.Q - A) <= 1e-11);
                CHECK(max_abs_diff(d.P.transposed() * d.P, MatD::identity(n)) <= 1e-12);
                CHECK(max_abs_diff(d.Q.transposed() * d.Q, MatD::identity(n)) <= 1e-12);
                CHECK(det(d.P) == Catch::Approx(1.0).margin(1e-12));
                CHECK(det(d.Q) == Catch::Approx(1.0).margin(1e-12));

                // inverse has the reciprocal factor multiset
                auto di = sl_decompose(inverse(A));
                std::vector<double> inv_sorted = di.lambda;
                std::vector<double> recip;
                for (double l : d.lambda) recip.push_back(1.0 / l);
                std::sort(recip.rbegin(), recip.rend());
                for (int i = 0; i < n; ++i) CHECK(inv_sorted[i] == Catch::Approx(recip[i]).epsilon(1e-10));
            }
        }
    }
    SECTION("non-unimodular input is rejected") {
        MatD A = MatD::identity(2).scaled(1.2);
        CHECK_THROWS_WITH(sl_decompose(A), "not special linear");
    }
}

TEST_CASE("uniform scalings commute with rotations") {
    Rng rng(61);
    MatD R = rng.rotation(3);
    MatD kI = MatD::identity(3).scaled(2.7);
    CHECK(frobenius(R * kI - kI * R) == 0.0);
}
