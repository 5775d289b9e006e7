#ifndef HTA_TRACE_HPP
#define HTA_TRACE_HPP

#include <vector>

#include "hta/model.hpp"
#include "hta/ode.hpp"

namespace hta {

/// Circular event region; `terminate` decides whether entering it ends the
/// trace or is only recorded via the running minimum distance.
struct BallEvent {
    Vec2 center;
    double radius;
    int id;
    bool terminate = true;
};

/// Declarative description of one orbit trace with event monitoring.
struct TraceSpec {
    bool backward = false;
    double horizon = 5e4;

    double box_lo = -0.25; ///< hard escape box; exit terminates when box_terminate
    double box_hi = 1.75;
    bool box_terminate = true;

    std::vector<BallEvent> balls;

    /// If nonnegative, terminate once u < strip_u_below (the {u < M} strip is
    /// forward-invariant with du/dtau < 0, certifying convergence to the origin).
    double strip_u_below = -1.0;

    /// Poincare section {v = u, u > section_u_min}; successive crossing
    /// abscissae converging (relative to their distance from section_u_min)
    /// indicate accumulation on a periodic orbit.
    bool section_enabled = false;
    double section_u_min = 0.0;

    bool record_path = true;
};

struct TraceOutcome {
    enum class End { BallHit, StripHit, BoxExit, CycleConverged, Horizon, Underflow };

    End end = End::Horizon;
    int ball_id = -1; ///< valid when end == BallHit
    double tau_end = 0.0;
    Vec2 state_end;

    std::vector<double> taus; ///< recorded path (when record_path)
    std::vector<Vec2> points;

    std::vector<double> min_ball_dist; ///< indexed like TraceSpec::balls

    std::vector<double> crossing_tau; ///< section crossings, refined on dense output
    std::vector<Vec2> crossing_state;

    /// Filled when end == CycleConverged: one full loop of the periodic orbit.
    std::vector<double> loop_tau;
    std::vector<Vec2> loop;
    double period = 0.0;
    double closure_defect = 0.0;
};

/// Integrates the desingularised field (reversed when spec.backward) from
/// `start` until an event fires or the horizon is reached. Coordinates are
/// projected onto the axes when roundoff drives them negative.
TraceOutcome trace_orbit(const NondimParams& p, const Vec2& start, const IntegrationConfig& cfg,
                         const TraceSpec& spec);

} // namespace hta

#endif
