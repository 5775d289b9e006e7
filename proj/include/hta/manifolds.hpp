#ifndef HTA_MANIFOLDS_HPP
#define HTA_MANIFOLDS_HPP

#include <optional>
#include <vector>

#include "hta/equilibria.hpp"
#include "hta/integrate.hpp"
#include "hta/trace.hpp"

namespace hta {

/// The four manifold branches of the saddle P1, named by the side of P1 the
/// seed leaves on: "p2-side" branches start with positive projection onto the
/// diagonal direction P2 - P1, the opposite branches point away from it.
/// The stable m-side branch ends at (M,0) and the unstable origin-side branch
/// at the origin for every two-equilibria parameter point; the stable p2-side
/// branch is the one whose global fate distinguishes the connection cases.
enum class BranchId { StableP2Side, StableMSide, UnstableP2Side, UnstableOriginSide };

enum class BranchTermination { EquilibriumHit, BoundaryExit, CycleAccumulation, Horizon };

const char* to_string(BranchId id);
const char* to_string(BranchTermination t);

struct ManifoldBranch {
    BranchId which;
    std::vector<Vec2> points; ///< first point is the seed P1 +- eps*psi
    BranchTermination termination;
    std::optional<EquilibriumKind> hit; ///< set when termination == EquilibriumHit
    double tau_end = 0.0;               ///< trace span (stable branches: reversed time)
    double min_dist_boundary_one = 0.0; ///< closest approach to (1,0)
};

/// Options for manifold tracing and connection classification.
struct ManifoldConfig {
    double seed_offset = 1e-6;   ///< eps, must lie in [1e-8, 1e-4]
    double hom_match_tol = 1e-3; ///< sup-norm distance counting as a connection
    double p1_exclusion = 0.05;  ///< radius around P1 ignored in the matching
    IntegrationConfig integration;
};

/// Traces one branch: stable branches in reversed time, unstable forward,
/// until an equilibrium ball (radius integration.eq_radius) is entered, the
/// escape box is left, Poincare returns accumulate on a cycle, or the horizon
/// is reached.
ManifoldBranch trace_branch(const NondimParams& p, BranchId which, const ManifoldConfig& cfg);

/// Global topology of the stable set of P1, the paper's six cases along
/// increasing S at fixed (A,M,Q).
enum class ConnectionCase {
    P2Connection,    ///< i: P2 repelling, the stable p2-side branch spirals into it
    CycleSeparatrix, ///< ii: unstable limit cycle surrounds P2
    Homoclinic,      ///< iii: stable p2-side meets unstable p2-side
    HeteroclinicM,   ///< iv: both stable branches end at (M,0)
    HeteroclinicOne, ///< v: stable p2-side ends at (1,0)
    BoundaryExit,    ///< vi: stable p2-side leaves Phi through its boundary
};

const char* to_string(ConnectionCase c);

struct ConnectionReport {
    ConnectionCase label;
    ManifoldBranch stable_p2side;
    ManifoldBranch unstable_p2side;
    double hom_match_distance; ///< min distance between the two branches away from P1
    double min_dist_boundary_one;
    std::vector<Vec2> cycle_loop; ///< the limit cycle, filled for case ii
};

/// Classifies the connection case from the backward fate of the stable
/// p2-side branch. Throws NumericalError when the trace is inconclusive
/// (horizon or step underflow), which brackets a case transition.
ConnectionReport classify_connection(const NondimParams& p, const ManifoldConfig& cfg);

/// Binary shooting probe for the global-bifurcation bisections: the backward
/// stable p2-side orbit either stays captured around P2 (converges to P2 or
/// to a cycle; below the homoclinic value) or escapes (reaches (M,0), (1,0)
/// or the boundary; above it). `escaped_phi` further splits the escape side
/// for the heteroclinic bisection ((M,0) vs boundary exit), ignoring the
/// (1,0) ball so the probe stays binary across S***.
struct ShootingProbe {
    bool captured;
    bool escaped_phi;
    double min_dist_boundary_one;
};

ShootingProbe shoot_separatrix_branch(const NondimParams& p, const ManifoldConfig& cfg);

/// The curve separating the basins of P2 and the origin: the unstable limit
/// cycle (case ii), the homoclinic loop (iii), or the stable set
/// W^s = p2-side branch + P1 + m-side branch (iv-vi). Requires S > S*.
std::vector<Vec2> separatrix(const NondimParams& p, const ManifoldConfig& cfg);

/// Distance from a point to a polyline (minimum over segments).
double point_polyline_distance(const Vec2& q, const std::vector<Vec2>& poly);

/// Directed Hausdorff distance from the sample points of `a` to polyline `b`.
double directed_hausdorff(const std::vector<Vec2>& a, const std::vector<Vec2>& b);

} // namespace hta

#endif
