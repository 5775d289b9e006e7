#ifndef HTA_TEST_HELPERS_HPP
#define HTA_TEST_HELPERS_HPP

#include <random>

#include "hta/bifurcation.hpp"
#include "hta/equilibria.hpp"
#include "hta/model.hpp"

namespace hta::test {

// paper fixtures: (A,M,Q) = (0.0365, 0.1, 0.21) across several S values,
// the no-interior point (0.2, 0.1, 0.35) and the fold point at A = 0.0009
inline NondimParams main_fixture(double S) { return {0.0365, 0.1, 0.21, S}; }
inline NondimParams no_interior_fixture() { return {0.2, 0.1, 0.35, 0.1}; }
inline NondimParams fold_fixture(double S = 0.1) { return {0.0009, 0.1, 0.20283145, S}; }

/// Fold fixture with Q solved to machine precision (the paper's 8 printed
/// digits leave delta ~ 1e-8, above the double-root tolerance).
inline NondimParams exact_fold_fixture(double S = 0.1) {
    return {0.0009, 0.1, find_saddle_node_Q(0.0009, 0.1), S};
}

/// Uniform draw of parameters guaranteed to have two interior equilibria:
/// delta(Q) > 0 exactly for Q below the fold value.
inline NondimParams random_two_point_params(std::mt19937& rng) {
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    for (;;) {
        const double A = 0.01 + 0.6 * unit(rng);
        const double M = 0.05 + 0.6 * unit(rng);
        const double S = 0.01 + 0.5 * unit(rng);
        const double q_sn = find_saddle_node_Q(A, M);
        const double Q = (0.05 + 0.9 * unit(rng)) * q_sn;
        const NondimParams p{A, M, Q, S};
        if (solve_cubic_structure(p).has_pair()) return p;
    }
}

inline NondimParams random_params(std::mt19937& rng) {
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    return {0.02 + 0.9 * unit(rng), 0.02 + 0.9 * unit(rng), 0.05 + 0.9 * unit(rng),
            0.02 + 0.6 * unit(rng)};
}

} // namespace hta::test

#endif
