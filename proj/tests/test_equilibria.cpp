#include <doctest.h>

#include "hta/equilibria.hpp"
#include "helpers.hpp"

using namespace hta;

TEST_CASE("cubic structure matches the paper fixture to its printed digits") {
    const CubicStructure c = solve_cubic_structure(test::main_fixture(0.1));
    CHECK(std::abs(c.H - 0.01287) < 5e-4);
    CHECK(std::abs(c.u1 - 0.4611) < 5e-4);
    CHECK(std::abs(c.u2 - 0.6153) < 5e-4);
    CHECK(c.delta > 0.0);
}

TEST_CASE("root residuals vanish after polishing") {
    std::mt19937 rng(23);
    for (int i = 0; i < 50; ++i) {
        const NondimParams p = test::random_two_point_params(rng);
        const CubicStructure c = solve_cubic_structure(p);
        CHECK(std::abs(cubic_value(p, -c.H)) < 1e-10);
        CHECK(std::abs(cubic_value(p, c.u1)) < 1e-10);
        CHECK(std::abs(cubic_value(p, c.u2)) < 1e-10);
    }
}

TEST_CASE("Vieta identities and the H bound") {
    std::mt19937 rng(29);
    for (int i = 0; i < 50; ++i) {
        const NondimParams p = test::random_two_point_params(rng);
        const CubicStructure c = solve_cubic_structure(p);
        CHECK(c.H > 0.0);
        CHECK(c.H < p.A);
        CHECK(std::abs(c.u1 * c.u2 - p.A * p.M / c.H) < 1e-10);
        CHECK(std::abs(c.u1 + c.u2 - (c.H + p.M + 1.0 - p.A)) < 1e-10);
        // Q = (H+1)(H+M)(A-H)/H recovers the input
        CHECK(std::abs((c.H + 1.0) * (c.H + p.M) * (p.A - c.H) / c.H - p.Q) < 1e-9);
        // ordering M < u1 <= E <= u2 < 1
        CHECK(c.u1 > p.M);
        CHECK(c.u1 <= c.E);
        CHECK(c.E <= c.u2);
        CHECK(c.u2 < 1.0);
    }
}

TEST_CASE("discriminant sign decides the interior count") {
    const CubicStructure none = solve_cubic_structure(test::no_interior_fixture());
    CHECK(none.no_interior());

    const CubicStructure fold = solve_cubic_structure(test::fold_fixture());
    CHECK(std::abs(fold.delta) < 1e-6);
    CHECK(std::abs(fold.u1 - fold.E) < 2e-3);
    CHECK(std::abs(fold.u2 - fold.E) < 2e-3);
}

TEST_CASE("trace factor f at the boundary roots of g") {
    std::mt19937 rng(31);
    for (int i = 0; i < 20; ++i) {
        const NondimParams p = test::random_params(rng);
        CHECK(f_trace(p, p.M) == doctest::Approx(p.M * (1.0 - p.M)).epsilon(1e-12));
        CHECK(f_trace(p, 1.0) == doctest::Approx(-(1.0 - p.M)).epsilon(1e-12));
    }
}

TEST_CASE("Hopf threshold: bracket, error path and the double-root closed form") {
    const double s_star = hopf_threshold(test::main_fixture(0.1));
    CHECK(s_star > 0.0123);
    CHECK(s_star < 0.121);

    CHECK_THROWS_AS(hopf_threshold(test::no_interior_fixture()), NumericalError);

    const NondimParams fold = test::exact_fold_fixture();
    const CubicStructure c = solve_cubic_structure(fold);
    REQUIRE(c.is_double_root());
    const double sum = c.H + fold.M + 1.0 - fold.A;
    CHECK(hopf_threshold(fold) ==
          doctest::Approx(fold.Q * sum / (sum + 2.0 * fold.A)).epsilon(1e-9));
}

TEST_CASE("trace sign at P2 equals the sign of f(u2) - S") {
    std::mt19937 rng(37);
    for (int i = 0; i < 100; ++i) {
        const NondimParams p = test::random_two_point_params(rng);
        const CubicStructure c = solve_cubic_structure(p);
        const double tr = jacobian(p, {c.u2, c.u2}).trace();
        const double predicted = f_trace(p, c.u2) - p.S;
        if (std::abs(predicted) > 1e-8) CHECK((tr > 0.0) == (predicted > 0.0));
    }
}

TEST_CASE("determinant signs at the interior equilibria") {
    std::mt19937 rng(41);
    for (int i = 0; i < 200; ++i) {
        const NondimParams p = test::random_two_point_params(rng);
        const CubicStructure c = solve_cubic_structure(p);
        CHECK(jacobian(p, {c.u1, c.u1}).det() < 0.0);
        CHECK(jacobian(p, {c.u2, c.u2}).det() > 0.0);
    }
}

TEST_CASE("det J(E,E) vanishes at the fold") {
    const NondimParams p = test::exact_fold_fixture();
    const CubicStructure c = solve_cubic_structure(p);
    CHECK(std::abs(jacobian(p, {c.E, c.E}).det()) < 1e-9);
}

TEST_CASE("classify_all: kinds, counts and fixture classifications") {
    const EquilibriumReport low_s = classify_all(test::main_fixture(0.0123));
    CHECK(low_s.points.size() == 5);
    CHECK(low_s.find(EquilibriumKind::Origin)->classification ==
          Classification::NonHyperbolicAttractor);
    CHECK(low_s.find(EquilibriumKind::BoundaryM)->classification ==
          Classification::HyperbolicRepeller);
    CHECK(low_s.find(EquilibriumKind::BoundaryOne)->classification == Classification::Saddle);
    CHECK(low_s.find(EquilibriumKind::P1)->classification == Classification::Saddle);
    CHECK(low_s.find(EquilibriumKind::P2)->classification == Classification::Repeller);
    CHECK(!low_s.find(EquilibriumKind::Origin)->eigenvectors.has_value());

    const EquilibriumReport high_s = classify_all(test::main_fixture(0.121));
    CHECK(high_s.find(EquilibriumKind::P2)->classification == Classification::Attractor);

    // S = 0.1 sits below the computed S* ~ 0.1068, hence P2 is a repeller
    const EquilibriumReport mid_s = classify_all(test::main_fixture(0.1));
    const bool below = 0.1 < *mid_s.hopf_S;
    CHECK(mid_s.find(EquilibriumKind::P2)->classification ==
          (below ? Classification::Repeller : Classification::Attractor));

    const EquilibriumReport none = classify_all(test::no_interior_fixture());
    CHECK(none.points.size() == 3);
    CHECK(none.find(EquilibriumKind::P1) == nullptr);
    CHECK(none.find(EquilibriumKind::P2) == nullptr);
}

TEST_CASE("classification of P2 flips exactly once as S crosses S*") {
    const NondimParams base = test::main_fixture(0.1);
    const double s_star = hopf_threshold(base);
    int flips = 0;
    Classification prev = Classification::Repeller;
    bool first = true;
    for (double S = 0.2 * s_star; S < 2.0 * s_star; S += 0.02 * s_star) {
        const EquilibriumReport rep = classify_all(test::main_fixture(S));
        const Classification cls = rep.find(EquilibriumKind::P2)->classification;
        if (!first && cls != prev) ++flips;
        prev = cls;
        first = false;
    }
    CHECK(flips == 1);
}

TEST_CASE("(E,E) classification follows the trace sign") {
    const NondimParams fold = test::exact_fold_fixture();
    const double fE = f_trace_at_double_root(fold, solve_cubic_structure(fold));

    NondimParams below = fold;
    below.S = 0.5 * fE; // S < f(E): positive trace
    const EquilibriumReport rep_below = classify_all(below);
    REQUIRE(rep_below.find(EquilibriumKind::EDouble) != nullptr);
    CHECK(rep_below.find(EquilibriumKind::EDouble)->classification ==
          Classification::SaddleNodeRepeller);

    NondimParams above = fold;
    above.S = 1.5 * fE;
    const EquilibriumReport rep_above = classify_all(above);
    REQUIRE(rep_above.find(EquilibriumKind::EDouble) != nullptr);
    CHECK(rep_above.find(EquilibriumKind::EDouble)->classification ==
          Classification::SaddleNodeAttractor);

    NondimParams at = fold;
    at.S = fE;
    const EquilibriumReport rep_at = classify_all(at);
    REQUIRE(rep_at.find(EquilibriumKind::EDouble) != nullptr);
    CHECK(rep_at.find(EquilibriumKind::EDouble)->classification == Classification::CuspCandidate);
}

TEST_CASE("P1 eigen-data: closed form against the numeric eigensolver") {
    std::mt19937 rng(43);
    for (int i = 0; i < 100; ++i) {
        const NondimParams p = test::random_two_point_params(rng);
        const CubicStructure c = solve_cubic_structure(p);
        const SaddleEigenData d = p1_eigen_data(p);
        CHECK(d.lambda_unstable > 0.0);
        CHECK(d.lambda_stable < 0.0);

        const Mat2 j = jacobian(p, {c.u1, c.u1});
        CHECK(d.lambda_unstable + d.lambda_stable == doctest::Approx(j.trace()).epsilon(1e-8));
        CHECK(d.lambda_unstable * d.lambda_stable == doctest::Approx(j.det()).epsilon(1e-8));

        // eigenvector residuals (J - lambda I) psi = 0
        auto residual = [&](double lambda, const Vec2& psi) {
            const Vec2 r = j * psi - lambda * psi;
            return r.norm();
        };
        CHECK(residual(d.lambda_unstable, d.psi_unstable) < 1e-8);
        CHECK(residual(d.lambda_stable, d.psi_stable) < 1e-8);
    }
}

TEST_CASE("P1 eigenvector geometry at the paper fixture") {
    const SaddleEigenData d = p1_eigen_data(test::main_fixture(0.1));
    CHECK(d.psi_unstable.u > 0.0);
    CHECK(d.psi_unstable.v > 0.0);
    CHECK(d.psi_stable.u > 0.0);
    CHECK(d.psi_stable.v > 0.0);
}

TEST_CASE("interior equilibria do not depend on S") {
    const CubicStructure a = solve_cubic_structure(test::main_fixture(0.05));
    const CubicStructure b = solve_cubic_structure(test::main_fixture(0.4));
    CHECK(a.u1 == doctest::Approx(b.u1).epsilon(1e-15));
    CHECK(a.u2 == doctest::Approx(b.u2).epsilon(1e-15));
    CHECK(a.H == doctest::Approx(b.H).epsilon(1e-15));
}

TEST_CASE("p1_eigen_data rejects the no-interior regime") {
    CHECK_THROWS_AS(p1_eigen_data(test::no_interior_fixture()), NumericalError);
}
