#ifndef HTA_INTEGRATE_HPP
#define HTA_INTEGRATE_HPP

#include <optional>
#include <vector>

#include "hta/equilibria.hpp"
#include "hta/model.hpp"
#include "hta/ode.hpp"

namespace hta {

enum class IntegrationStatus { ReachedTime, StepUnderflow };

/// Orbit samples at the accepted solver steps (strictly increasing tau).
struct Trajectory {
    std::vector<double> tau;
    std::vector<Vec2> states;
    IntegrationStatus status = IntegrationStatus::ReachedTime;

    std::size_t size() const { return tau.size(); }
};

/// Forward integration of the desingularised system from s0 up to
/// cfg.max_time (or the requested horizon). Coordinates are kept nonnegative:
/// roundoff-level negatives are projected onto the axes.
Trajectory integrate(const NondimParams& p, const Vec2& s0, const IntegrationConfig& cfg,
                     std::optional<double> horizon = std::nullopt);

enum class FateLabel { ToOrigin, ToP2, ToCycle, Undecided };
enum class FateCriterion { None, OriginTrap, OriginBall, P2Ball, CycleReturns };

const char* to_string(FateLabel label);
const char* to_string(FateCriterion c);

struct Fate {
    FateLabel label = FateLabel::Undecided;
    FateCriterion criterion = FateCriterion::None;
    double time_to_decision = 0.0;
    Vec2 terminal_state;
};

/// Precomputed per-parameter data for fate classification; reusable across
/// many initial conditions (basin grids).
class FateClassifier {
  public:
    FateClassifier(const NondimParams& p, const IntegrationConfig& cfg);

    Fate classify(const Vec2& s0) const;

    const CubicStructure& cubic() const { return cubic_; }
    bool p2_attracting() const { return p2_attracting_; }
    std::optional<double> hopf_S() const { return hopf_S_; }

  private:
    NondimParams p_;
    IntegrationConfig cfg_;
    CubicStructure cubic_;
    std::optional<double> hopf_S_;
    bool p2_attracting_ = false;
};

/// Asymptotic destination of the orbit through s0. Decision criteria:
///  - OriginTrap: u < M, where du/dtau = u^2(g(u) - Qv) < 0 for all v >= 0,
///    so u decreases monotonically to 0 and v follows (certifies the origin
///    long before the orbit reaches any small ball, the origin being only
///    algebraically attracting);
///  - OriginBall / P2Ball: the orbit enters the attractor_radius ball;
///  - CycleReturns: Poincare returns on {v = u, u > u2} converge to a
///    nonzero-amplitude fixed point.
Fate classify_fate(const NondimParams& p, const Vec2& s0, const IntegrationConfig& cfg);

struct TrappingReport {
    bool ok = true;
    std::optional<std::size_t> first_violation; ///< sample index leaving Phi after entry
    double entry_tau = 0.0;                     ///< first sample inside Phi (if any)
    bool entered = false;
};

/// Checks the trapping-region property: once a sample lies in
/// Phi = [0,1]^2, all later samples stay (up to solver-tolerance inflation).
TrappingReport check_trapping(const Trajectory& traj, double slack = 1e-6);

} // namespace hta

#endif
