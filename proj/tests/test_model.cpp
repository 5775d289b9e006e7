#include <doctest.h>

#include <array>

#include "hta/integrate.hpp"
#include "hta/model.hpp"
#include "helpers.hpp"

using namespace hta;

TEST_CASE("nondimensionalize maps the paper fixtures") {
    // K = r = n = 1 leaves the remaining fields unchanged
    const NondimParams p1 = nondimensionalize({1.0, 0.1, 1.0, 0.21, 1.0, 0.0365, 0.1});
    CHECK(p1.A == doctest::Approx(0.0365).epsilon(1e-14));
    CHECK(p1.M == doctest::Approx(0.1).epsilon(1e-14));
    CHECK(p1.Q == doctest::Approx(0.21).epsilon(1e-14));
    CHECK(p1.S == doctest::Approx(0.1).epsilon(1e-14));

    // a scaled dimensional system lands on the same nondimensional point
    const NondimParams p2 = nondimensionalize({2.0, 0.4, 2.0, 0.84, 1.0, 0.073, 0.2});
    CHECK(p2.A == doctest::Approx(0.0365).epsilon(1e-14));
    CHECK(p2.M == doctest::Approx(0.1).epsilon(1e-14));
    CHECK(p2.Q == doctest::Approx(0.21).epsilon(1e-14));
    CHECK(p2.S == doctest::Approx(0.1).epsilon(1e-14));
}

TEST_CASE("parameter validation rejects out-of-domain inputs") {
    CHECK_THROWS_AS(nondimensionalize({1, 0.1, 1, 0.21, 1, 1.5, 0.1}), std::invalid_argument); // a >= K
    CHECK_THROWS_AS(nondimensionalize({1, 0.1, 1, 0.21, 1, 0.0365, 1.2}), std::invalid_argument); // m >= K
    CHECK_THROWS_AS(nondimensionalize({1, 0.1, 1, 0.21, 1, 0.0365, -0.1}), std::invalid_argument); // m <= 0
    CHECK_THROWS_AS(nondimensionalize({1, -0.1, 1, 0.21, 1, 0.0365, 0.1}), std::invalid_argument);
    CHECK_THROWS_AS((NondimParams{1.0, 0.1, 0.21, 0.1}).validate(), std::invalid_argument); // A = 1
    CHECK_THROWS_AS((NondimParams{0.5, 0.0, 0.21, 0.1}).validate(), std::invalid_argument); // M = 0
}

TEST_CASE("vector field values at distinguished states") {
    const NondimParams p = test::main_fixture(0.1);

    const Vec2 axis = vector_field(p, {0.0, 1.0});
    CHECK(axis.u == 0.0);
    CHECK(axis.v == doctest::Approx(-p.S * p.A).epsilon(1e-14));

    const Vec2 eq = vector_field(p, {1.0, 0.0});
    CHECK(eq.u == 0.0);
    CHECK(eq.v == 0.0);

    // u2 ~ 0.6153 (4 significant figures), so the residual is rounding-level
    const Vec2 near_p2 = vector_field(p, {0.6153, 0.6153});
    CHECK(std::abs(near_p2.u) < 1e-4);
    CHECK(near_p2.v == 0.0); // u = v kills the predator equation exactly
}

TEST_CASE("axis invariance (Kolmogorov form)") {
    std::mt19937 rng(7);
    std::uniform_real_distribution<double> unit(0.0, 1.5);
    for (int i = 0; i < 200; ++i) {
        const NondimParams p = test::random_params(rng);
        CHECK(vector_field(p, {0.0, unit(rng)}).u == 0.0);
        CHECK(vector_field(p, {unit(rng), 0.0}).v == 0.0);
    }
}

TEST_CASE("dimensional field: boundary equilibria and domain guard") {
    const DimensionalParams dp{1.3, 0.2, 2.1, 0.5, 0.8, 0.3, 0.6};
    const Vec2 at_K = dimensional_vector_field(dp, dp.K, 0.0);
    CHECK(at_K.u == doctest::Approx(0.0).epsilon(1e-14));
    CHECK(at_K.v == 0.0);
    const Vec2 at_m = dimensional_vector_field(dp, dp.m, 0.0);
    CHECK(at_m.u == doctest::Approx(0.0).epsilon(1e-14));
    CHECK(at_m.v == 0.0);
    CHECK_THROWS_AS(dimensional_vector_field(dp, 0.0, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(dimensional_vector_field(dp, -0.5, 1.0), std::invalid_argument);
}

TEST_CASE("dimensional field is the pushforward of the desingularised one") {
    const DimensionalParams dp{2.0, 0.4, 2.0, 0.84, 1.0, 0.073, 0.2};
    const NondimParams p = nondimensionalize(dp);
    const double x = dp.K / 2.0, y = dp.n * dp.K / 2.0;
    const double u = x / dp.K, v = y / (dp.n * dp.K);

    const Vec2 dim = dimensional_vector_field(dp, x, y);
    const Vec2 f = vector_field(p, {u, v});
    // dtau = rK dt / (u (u+A)); du = dx / K, dv = dy / (nK)
    const double scale = u * (u + p.A) / (dp.r * dp.K);
    CHECK(f.u == doctest::Approx(dim.u / dp.K * scale).epsilon(1e-12));
    CHECK(f.v == doctest::Approx(dim.v / (dp.n * dp.K) * scale).epsilon(1e-12));
}

TEST_CASE("analytic Jacobian: closed forms at boundary points") {
    const NondimParams p = test::main_fixture(0.1);

    const Mat2 origin = jacobian(p, {0.0, 0.0});
    CHECK(origin.a11 == 0.0);
    CHECK(origin.a12 == 0.0);
    CHECK(origin.a21 == 0.0);
    CHECK(origin.a22 == 0.0);

    const Mat2 one = jacobian(p, {1.0, 0.0});
    CHECK(one.a11 == doctest::Approx(-(1.0 - p.M) * (p.A + 1.0)).epsilon(1e-14));
    CHECK(one.a12 == doctest::Approx(-p.Q).epsilon(1e-14));
    CHECK(one.a21 == 0.0);
    CHECK(one.a22 == doctest::Approx(p.S * (p.A + 1.0)).epsilon(1e-14));
}

TEST_CASE("analytic Jacobian agrees with central finite differences") {
    std::mt19937 rng(11);
    std::uniform_real_distribution<double> unit(0.0, 1.2);
    for (int i = 0; i < 1000; ++i) {
        const NondimParams p = test::random_params(rng);
        const Vec2 s{unit(rng), unit(rng)};
        const Mat2 a = jacobian(p, s);
        const Mat2 fd = jacobian_fd(p, s);
        const double scale = std::max(1.0, a.sup_norm());
        CHECK(std::abs(a.a11 - fd.a11) / scale < 1e-5);
        CHECK(std::abs(a.a12 - fd.a12) / scale < 1e-5);
        CHECK(std::abs(a.a21 - fd.a21) / scale < 1e-5);
        CHECK(std::abs(a.a22 - fd.a22) / scale < 1e-5);
    }
}

namespace {

// test-only oracle: fixed-step RK4 of the dimensional system augmented with
// the accumulated desingularised time tau(t)
struct AugmentedSample {
    double x, y, tau;
};

std::vector<AugmentedSample> rk4_dimensional_with_tau(const DimensionalParams& dp, double x0,
                                                      double y0, double t_end, double h) {
    using Y = std::array<double, 3>;
    auto rhs = [&](const Y& w) -> Y {
        const Vec2 f = dimensional_vector_field(dp, w[0], w[1]);
        const double u = w[0] / dp.K;
        const double A = dp.a / dp.K;
        return {f.u, f.v, dp.r * dp.K / (u * (u + A))};
    };
    auto axpy = [](const Y& a, double c, const Y& b) {
        return Y{a[0] + c * b[0], a[1] + c * b[1], a[2] + c * b[2]};
    };
    std::vector<AugmentedSample> out;
    Y w{x0, y0, 0.0};
    const int steps = static_cast<int>(t_end / h);
    out.push_back({w[0], w[1], w[2]});
    for (int i = 0; i < steps; ++i) {
        const Y k1 = rhs(w);
        const Y k2 = rhs(axpy(w, h / 2, k1));
        const Y k3 = rhs(axpy(w, h / 2, k2));
        const Y k4 = rhs(axpy(w, h, k3));
        for (int j = 0; j < 3; ++j) w[j] += h / 6.0 * (k1[j] + 2 * k2[j] + 2 * k3[j] + k4[j]);
        out.push_back({w[0], w[1], w[2]});
    }
    return out;
}

} // namespace

TEST_CASE("trajectories of the two systems coincide under the equivalence map") {
    const DimensionalParams dp{2.0, 0.4, 2.0, 0.84, 1.0, 0.073, 0.2};
    const NondimParams p = nondimensionalize(dp);
    const double x0 = 1.6, y0 = 0.9; // u0 = 0.8, v0 = 0.45

    const auto samples = rk4_dimensional_with_tau(dp, x0, y0, 12.0, 1e-3);
    IntegrationConfig cfg;
    const Vec2 s0{x0 / dp.K, y0 / (dp.n * dp.K)};
    for (std::size_t i = 400; i < samples.size(); i += 1600) {
        const auto& smp = samples[i];
        const Trajectory traj = integrate(p, s0, cfg, smp.tau);
        REQUIRE(traj.size() > 0);
        const Vec2 got = traj.states.back();
        CHECK(got.u == doctest::Approx(smp.x / dp.K).epsilon(1e-5));
        CHECK(got.v == doctest::Approx(smp.y / (dp.n * dp.K)).epsilon(1e-5));
    }
}
