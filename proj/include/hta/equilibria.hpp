#ifndef HTA_EQUILIBRIA_HPP
#define HTA_EQUILIBRIA_HPP

#include <optional>
#include <vector>

#include "hta/model.hpp"
#include "hta/types.hpp"

namespace hta {

/// Interior equilibria of the desingularised system solve
///   d(u) = u^3 - (M+1-A) u^2 - (A(M+1) - Q - M) u + A M = 0.
/// The cubic always has a single negative root -H with 0 < H < A; factoring
/// it out leaves u^2 - (H+M+1-A) u + AM/H whose roots u1 <= u2 (when the
/// discriminant `delta` is nonnegative) are the interior equilibrium abscissae.
struct CubicStructure {
    double H;     ///< magnitude of the negative cubic root
    double delta; ///< discriminant (H+M+1-A)^2 - 4AM/H
    double u1;    ///< smaller positive root (NaN when delta < 0)
    double u2;    ///< larger positive root (NaN when delta < 0)
    double E;     ///< double-root location (H+M+1-A)/2

    /// |delta| below this is treated as a double root throughout the module.
    static constexpr double kDoubleRootTol = 1e-9;

    bool has_pair() const { return delta > kDoubleRootTol; }
    bool is_double_root() const { return std::abs(delta) <= kDoubleRootTol; }
    bool no_interior() const { return delta < -kDoubleRootTol; }
};

/// Value of the equilibrium cubic d(u).
double cubic_value(const NondimParams& p, double u);

/// Computes H by bracketed bisection on (-A, 0) followed by Newton polishing,
/// then u1, u2 from the residual quadratic.
CubicStructure solve_cubic_structure(const NondimParams& p);

/// Trace factor f(u) = u g'(u) / (A + u); tr J at an interior equilibrium
/// (u,u) equals u (u+A) (f(u) - S).
double f_trace(const NondimParams& p, double u);

/// Hopf threshold S* = f(u2). Requires interior equilibria; at a double root
/// (|delta| <= tol) this degenerates to f(E). Throws NumericalError when
/// delta < -tol (no interior equilibrium, hence no P2).
double hopf_threshold(const NondimParams& p);

/// Closed form of f(E) at a double root: Q (H+M+1-A) / (H+M+1+A).
double f_trace_at_double_root(const NondimParams& p, const CubicStructure& c);

enum class EquilibriumKind { Origin, BoundaryM, BoundaryOne, P1, P2, EDouble };

enum class Classification {
    NonHyperbolicAttractor,
    HyperbolicRepeller,
    Saddle,
    Attractor,
    Repeller,
    SaddleNodeAttractor,
    SaddleNodeRepeller,
    CuspCandidate,
};

const char* to_string(EquilibriumKind k);
const char* to_string(Classification c);

struct Equilibrium {
    Vec2 location;
    EquilibriumKind kind;
    Classification classification;
    std::complex<double> lambda1; ///< meaningless for the origin (zero Jacobian)
    std::complex<double> lambda2;
    std::optional<std::pair<Vec2, Vec2>> eigenvectors; ///< absent for the origin and complex pairs
};

struct EquilibriumReport {
    std::vector<Equilibrium> points;
    CubicStructure cubic;
    std::optional<double> hopf_S; ///< S* = f(u2), present when delta >= -tol
    std::optional<double> f_E;    ///< f(E) closed form, present when |delta| <= tol

    const Equilibrium* find(EquilibriumKind k) const;
};

/// Classifies every equilibrium via the closed det/trace formulas:
/// (0,0) non-hyperbolic attractor, (M,0) hyperbolic repeller, (1,0) saddle,
/// P1 saddle, P2 repeller iff S < f(u2), (E,E) by the sign of f(E) - S.
EquilibriumReport classify_all(const NondimParams& p);

/// Saddle data of P1: lambda_u > 0 > lambda_s and the associated eigenvector
/// directions psi = (1 + lambda/(S u1 (A+u1)), 1), normalised.
struct SaddleEigenData {
    double lambda_unstable;
    double lambda_stable;
    Vec2 psi_unstable;
    Vec2 psi_stable;
};

SaddleEigenData p1_eigen_data(const NondimParams& p);

} // namespace hta

#endif
