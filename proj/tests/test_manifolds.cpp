#include <doctest.h>

#include "hta/basins.hpp"
#include "hta/bifurcation.hpp"
#include "hta/manifolds.hpp"
#include "helpers.hpp"

using namespace hta;

TEST_CASE("stable m-side branch ends at (M,0), unstable origin-side at the origin") {
    const NondimParams p = test::main_fixture(0.1);
    ManifoldConfig cfg;

    const ManifoldBranch sne = trace_branch(p, BranchId::StableMSide, cfg);
    CHECK(sne.termination == BranchTermination::EquilibriumHit);
    REQUIRE(sne.hit.has_value());
    CHECK(*sne.hit == EquilibriumKind::BoundaryM);

    const ManifoldBranch usw = trace_branch(p, BranchId::UnstableOriginSide, cfg);
    CHECK(usw.termination == BranchTermination::EquilibriumHit);
    REQUIRE(usw.hit.has_value());
    CHECK(*usw.hit == EquilibriumKind::Origin);
}

TEST_CASE("branch fates hold across random two-point parameters") {
    std::mt19937 rng(79);
    ManifoldConfig cfg;
    for (int i = 0; i < 25; ++i) {
        const NondimParams p = test::random_two_point_params(rng);
        const ManifoldBranch sne = trace_branch(p, BranchId::StableMSide, cfg);
        CHECK(sne.termination == BranchTermination::EquilibriumHit);
        if (sne.hit) CHECK(*sne.hit == EquilibriumKind::BoundaryM);
        const ManifoldBranch usw = trace_branch(p, BranchId::UnstableOriginSide, cfg);
        CHECK(usw.termination == BranchTermination::EquilibriumHit);
        if (usw.hit) CHECK(*usw.hit == EquilibriumKind::Origin);
    }
}

TEST_CASE("seed sensitivity: halving eps barely moves the terminal point") {
    const NondimParams p = test::main_fixture(0.1);
    ManifoldConfig cfg;
    cfg.seed_offset = 1e-5;
    const ManifoldBranch coarse = trace_branch(p, BranchId::StableMSide, cfg);
    cfg.seed_offset = 5e-6;
    const ManifoldBranch fine = trace_branch(p, BranchId::StableMSide, cfg);
    REQUIRE(!coarse.points.empty());
    REQUIRE(!fine.points.empty());
    const Vec2 d = coarse.points.back() - fine.points.back();
    CHECK(d.sup_norm() < 10.0 * 1e-5);
}

TEST_CASE("seed checks") {
    ManifoldConfig cfg;
    cfg.seed_offset = 1e-2; // out of [1e-8, 1e-4]
    CHECK_THROWS_AS(trace_branch(test::main_fixture(0.1), BranchId::StableMSide, cfg),
                    std::invalid_argument);
    cfg.seed_offset = 1e-6;
    CHECK_THROWS_AS(trace_branch(test::no_interior_fixture(), BranchId::StableMSide, cfg),
                    NumericalError);
    CHECK_THROWS_AS(classify_connection(test::no_interior_fixture(), cfg), NumericalError);
}

TEST_CASE("first point of each branch sits at the seed offset from P1") {
    const NondimParams p = test::main_fixture(0.16);
    const CubicStructure c = solve_cubic_structure(p);
    ManifoldConfig cfg;
    for (BranchId id : {BranchId::StableMSide, BranchId::StableP2Side, BranchId::UnstableP2Side,
                        BranchId::UnstableOriginSide}) {
        const ManifoldBranch b = trace_branch(p, id, cfg);
        REQUIRE(!b.points.empty());
        CHECK(distance(b.points.front(), {c.u1, c.u1}) ==
              doctest::Approx(cfg.seed_offset).epsilon(1e-6));
    }
}

TEST_CASE("connection topology across the paper's S values") {
    ManifoldConfig cfg;

    // S < S*: the stable-SW branch spirals into the repelling P2 (case i)
    CHECK(classify_connection(test::main_fixture(0.0123), cfg).label ==
          ConnectionCase::P2Connection);
    // S = 0.1 also sits below S* ~ 0.1068
    CHECK(classify_connection(test::main_fixture(0.1), cfg).label == ConnectionCase::P2Connection);
    // S* < S < S**: unstable limit cycle (case ii)
    CHECK(classify_connection(test::main_fixture(0.121), cfg).label ==
          ConnectionCase::CycleSeparatrix);
    // S** < S < S***: both stable branches reach (M,0) (case iv)
    CHECK(classify_connection(test::main_fixture(0.16), cfg).label ==
          ConnectionCase::HeteroclinicM);
    // S > S***: boundary exit (case vi)
    CHECK(classify_connection(test::main_fixture(0.25), cfg).label ==
          ConnectionCase::BoundaryExit);
}

TEST_CASE("monotone case progression along increasing S") {
    ManifoldConfig cfg;
    const double s_hom = find_homoclinic_S(0.0365, 0.1, 0.21, 0.13, 0.16, cfg);
    const double s_het = find_heteroclinic_S(0.0365, 0.1, 0.21, 0.16, 0.25, cfg);

    const std::vector<double> scan{0.05, 0.09, 0.12, 0.14, s_hom, 0.16, 0.18, s_het, 0.21, 0.26};
    int prev_rank = -1;
    for (double S : scan) {
        const ConnectionReport rep = classify_connection(test::main_fixture(S), cfg);
        const int rank = static_cast<int>(rep.label);
        CHECK(rank >= prev_rank);
        prev_rank = rank;
    }

    // the bisected values land on the degenerate labels
    CHECK(classify_connection(test::main_fixture(s_hom), cfg).label == ConnectionCase::Homoclinic);
    CHECK(classify_connection(test::main_fixture(s_het), cfg).label ==
          ConnectionCase::HeteroclinicOne);
}

TEST_CASE("homoclinic matching distance is small at the bisected S**") {
    ManifoldConfig cfg;
    const double s_hom = find_homoclinic_S(0.0365, 0.1, 0.21, 0.13, 0.16, cfg);
    const ConnectionReport rep = classify_connection(test::main_fixture(s_hom), cfg);
    CHECK(rep.hom_match_distance < 1e-3);
}

TEST_CASE("separatrix: closed around P2 in case ii, open curve in case vi") {
    ManifoldConfig cfg;

    const NondimParams cycle_case = test::main_fixture(0.121);
    const CubicStructure c = solve_cubic_structure(cycle_case);
    const std::vector<Vec2> loop = separatrix(cycle_case, cfg);
    REQUIRE(loop.size() > 10);
    CHECK(distance(loop.front(), loop.back()) < 1e-3);
    CHECK(winding_number(loop, {c.u2, c.u2}) == 1);

    const NondimParams exit_case = test::main_fixture(0.25);
    const std::vector<Vec2> curve = separatrix(exit_case, cfg);
    REQUIRE(curve.size() > 10);
    // one end outside Phi, the other at (M,0)
    const Vec2 first = curve.front();
    const Vec2 last = curve.back();
    const bool first_outside = first.u > 1.0 || first.v > 1.0;
    CHECK(first_outside);
    CHECK(distance(last, {exit_case.M, 0.0}) < 5e-3);

    CHECK_THROWS_AS(separatrix(test::main_fixture(0.05), cfg), NumericalError); // S < S*
}

TEST_CASE("points displaced to either side of the separatrix settle on opposite attractors") {
    const NondimParams p = test::main_fixture(0.16);
    ManifoldConfig cfg;
    const std::vector<Vec2> sep = separatrix(p, cfg);
    REQUIRE(sep.size() > 100);

    IntegrationConfig icfg;
    const CubicStructure c = solve_cubic_structure(p);
    std::mt19937 rng(83);
    std::uniform_int_distribution<std::size_t> pick(1, sep.size() - 2);
    int tested = 0;
    int opposite = 0;
    while (tested < 100) {
        const std::size_t i = pick(rng);
        const Vec2 a = sep[i - 1];
        const Vec2 b = sep[i + 1];
        const Vec2 at = sep[i];
        // skip near-equilibrium ends where the displaced pair straddles nothing
        if (distance(at, {p.M, 0.0}) < 0.05 || distance(at, {c.u1, c.u1}) < 0.05 ||
            at.u < 0.02 || at.v < 0.02 || at.u > 0.98 || at.v > 0.98)
            continue;
        Vec2 tangent = b - a;
        const double len = tangent.norm();
        if (len == 0.0) continue;
        tangent = tangent * (1.0 / len);
        const Vec2 normal{-tangent.v, tangent.u};
        const Fate plus = classify_fate(p, at + 1e-3 * normal, icfg);
        const Fate minus = classify_fate(p, at + (-1e-3) * normal, icfg);
        ++tested;
        if ((plus.label == FateLabel::ToP2 && minus.label == FateLabel::ToOrigin) ||
            (plus.label == FateLabel::ToOrigin && minus.label == FateLabel::ToP2))
            ++opposite;
    }
    // a displaced pair may fail only where the curve bends within 1e-3
    CHECK(opposite >= 97);
}
