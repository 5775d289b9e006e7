#include "hta/trace.hpp"

#include <limits>

namespace hta {

namespace {

struct FieldRHS {
    NondimParams p;
    double sign; // +1 forward, -1 backward
    Vec2 operator()(const Vec2& s) const { return sign * vector_field(p, s); }
};

} // namespace

TraceOutcome trace_orbit(const NondimParams& p, const Vec2& start, const IntegrationConfig& cfg,
                         const TraceSpec& spec) {
    cfg.validate();
    TraceOutcome out;
    out.min_ball_dist.assign(spec.balls.size(), std::numeric_limits<double>::infinity());

    FieldRHS rhs{p, spec.backward ? -1.0 : 1.0};
    Dopri5<FieldRHS> stepper(rhs, cfg);
    stepper.init(0.0, start);

    auto record = [&](double tau, const Vec2& y) {
        if (!spec.record_path) return;
        out.taus.push_back(tau);
        out.points.push_back(y);
    };
    auto track_balls = [&](const Vec2& y) {
        for (std::size_t i = 0; i < spec.balls.size(); ++i)
            out.min_ball_dist[i] = std::min(out.min_ball_dist[i], distance(y, spec.balls[i].center));
    };
    auto finish = [&](TraceOutcome::End end, double tau, const Vec2& y, int ball_id = -1) {
        out.end = end;
        out.ball_id = ball_id;
        out.tau_end = tau;
        out.state_end = y;
        if (spec.record_path && (out.taus.empty() || out.taus.back() < tau)) record(tau, y);
    };

    track_balls(start);
    record(0.0, start);

    // immediate events at the seed
    if (spec.strip_u_below >= 0.0 && start.u < spec.strip_u_below) {
        finish(TraceOutcome::End::StripHit, 0.0, start);
        return out;
    }
    for (const auto& b : spec.balls)
        if (b.terminate && distance(start, b.center) < b.radius) {
            finish(TraceOutcome::End::BallHit, 0.0, start, b.id);
            return out;
        }

    const int returns_needed = std::max(1, cfg.cycle_returns_required);
    int converged_pairs = 0;
    bool collecting_loop = false;
    double loop_start_tau = 0.0;
    Vec2 loop_start_state;

    const double tau_eps = 1e-12 * std::max(1.0, spec.horizon);
    while (spec.horizon - stepper.time() > tau_eps) {
        stepper.clamp_next_step(spec.horizon - stepper.time());
        if (stepper.step() == StepResult::Underflow) {
            finish(TraceOutcome::End::Underflow, stepper.time(), stepper.state());
            return out;
        }
        Vec2 y = stepper.state();
        double tau = stepper.time();

        // axis projection: the axes are invariant, negatives are roundoff
        if (y.u < 0.0 || y.v < 0.0) {
            y.u = std::max(y.u, 0.0);
            y.v = std::max(y.v, 0.0);
            stepper.init(tau, y);
        }

        record(tau, y);
        track_balls(y);

        if (spec.strip_u_below >= 0.0 && y.u < spec.strip_u_below) {
            finish(TraceOutcome::End::StripHit, tau, y);
            return out;
        }
        for (const auto& b : spec.balls) {
            if (b.terminate && distance(y, b.center) < b.radius) {
                finish(TraceOutcome::End::BallHit, tau, y, b.id);
                return out;
            }
        }
        if (spec.box_terminate &&
            (y.u < spec.box_lo || y.u > spec.box_hi || y.v < spec.box_lo || y.v > spec.box_hi)) {
            finish(TraceOutcome::End::BoxExit, tau, y);
            return out;
        }

        if (spec.section_enabled) {
            const Vec2& y0 = stepper.prev_state();
            const double s0 = y0.v - y0.u;
            const double s1 = y.v - y.u;
            if (s0 != 0.0 && ((s0 > 0.0) != (s1 > 0.0))) {
                const double theta =
                    locate_event(stepper, [](const Vec2& z) { return z.v - z.u; }, s0);
                const Vec2 cross = stepper.interpolate(theta);
                if (cross.u > spec.section_u_min) {
                    const double tcross = stepper.interpolate_time(theta);
                    if (collecting_loop) {
                        out.loop_tau.push_back(tcross);
                        out.loop.push_back(cross);
                        out.period = tcross - loop_start_tau;
                        out.closure_defect = distance(cross, loop_start_state);
                        finish(TraceOutcome::End::CycleConverged, tcross, cross);
                        return out;
                    }
                    if (!out.crossing_tau.empty()) {
                        const double r_prev = out.crossing_state.back().u;
                        const double amp = std::max(std::abs(r_prev - spec.section_u_min), 1e-12);
                        if (std::abs(cross.u - r_prev) <= cfg.cycle_return_tol * amp)
                            ++converged_pairs;
                        else
                            converged_pairs = 0;
                    }
                    out.crossing_tau.push_back(tcross);
                    out.crossing_state.push_back(cross);
                    if (converged_pairs >= returns_needed) {
                        collecting_loop = true;
                        loop_start_tau = tcross;
                        loop_start_state = cross;
                        out.loop_tau.push_back(tcross);
                        out.loop.push_back(cross);
                    }
                    if (static_cast<int>(out.crossing_tau.size()) > cfg.max_returns) {
                        finish(TraceOutcome::End::Horizon, tau, y);
                        return out;
                    }
                }
            }
            if (collecting_loop && out.loop_tau.back() < tau) {
                out.loop_tau.push_back(tau);
                out.loop.push_back(y);
            }
        }
    }
    finish(TraceOutcome::End::Horizon, stepper.time(), stepper.state());
    return out;
}

} // namespace hta
