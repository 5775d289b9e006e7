#include "hta/integrate.hpp"

#include "hta/trace.hpp"

namespace hta {

const char* to_string(FateLabel label) {
    switch (label) {
        case FateLabel::ToOrigin: return "ToOrigin";
        case FateLabel::ToP2: return "ToP2";
        case FateLabel::ToCycle: return "ToCycle";
        case FateLabel::Undecided: return "Undecided";
    }
    return "?";
}

const char* to_string(FateCriterion c) {
    switch (c) {
        case FateCriterion::None: return "none";
        case FateCriterion::OriginTrap: return "origin-trap";
        case FateCriterion::OriginBall: return "origin-ball";
        case FateCriterion::P2Ball: return "p2-ball";
        case FateCriterion::CycleReturns: return "cycle-returns";
    }
    return "?";
}

Trajectory integrate(const NondimParams& p, const Vec2& s0, const IntegrationConfig& cfg,
                     std::optional<double> horizon) {
    p.validate();
    if (!(s0.u >= 0.0 && s0.v >= 0.0))
        throw std::invalid_argument("initial state must lie in the closed first quadrant");

    TraceSpec spec;
    spec.backward = false;
    spec.horizon = horizon.value_or(cfg.max_time);
    spec.box_terminate = false;
    spec.record_path = true;

    const TraceOutcome out = trace_orbit(p, s0, cfg, spec);
    Trajectory traj;
    traj.tau = out.taus;
    traj.states = out.points;
    traj.status = out.end == TraceOutcome::End::Underflow ? IntegrationStatus::StepUnderflow
                                                          : IntegrationStatus::ReachedTime;
    return traj;
}

FateClassifier::FateClassifier(const NondimParams& p, const IntegrationConfig& cfg)
    : p_(p), cfg_(cfg), cubic_(solve_cubic_structure(p)) {
    cfg_.validate();
    if (cubic_.has_pair()) {
        hopf_S_ = f_trace(p_, cubic_.u2);
        p2_attracting_ = p_.S > *hopf_S_;
    }
}

Fate FateClassifier::classify(const Vec2& s0) const {
    if (!(s0.u >= 0.0 && s0.v >= 0.0))
        throw std::invalid_argument("initial state must lie in the closed first quadrant");

    TraceSpec spec;
    spec.backward = false;
    spec.horizon = cfg_.max_time;
    spec.box_terminate = false;
    spec.record_path = false;
    spec.strip_u_below = p_.M;
    spec.balls.push_back({{0.0, 0.0}, cfg_.attractor_radius, 0, true});
    if (p2_attracting_) spec.balls.push_back({{cubic_.u2, cubic_.u2}, cfg_.attractor_radius, 1, true});
    if (cfg_.cycle_detection && cubic_.has_pair()) {
        spec.section_enabled = true;
        spec.section_u_min = cubic_.u2;
    }

    const TraceOutcome out = trace_orbit(p_, s0, cfg_, spec);
    Fate fate;
    fate.time_to_decision = out.tau_end;
    fate.terminal_state = out.state_end;
    switch (out.end) {
        case TraceOutcome::End::StripHit:
            fate.label = FateLabel::ToOrigin;
            fate.criterion = FateCriterion::OriginTrap;
            break;
        case TraceOutcome::End::BallHit:
            fate.label = out.ball_id == 0 ? FateLabel::ToOrigin : FateLabel::ToP2;
            fate.criterion = out.ball_id == 0 ? FateCriterion::OriginBall : FateCriterion::P2Ball;
            break;
        case TraceOutcome::End::CycleConverged:
            fate.label = FateLabel::ToCycle;
            fate.criterion = FateCriterion::CycleReturns;
            break;
        default:
            fate.label = FateLabel::Undecided;
            fate.criterion = FateCriterion::None;
            break;
    }
    return fate;
}

Fate classify_fate(const NondimParams& p, const Vec2& s0, const IntegrationConfig& cfg) {
    return FateClassifier(p, cfg).classify(s0);
}

TrappingReport check_trapping(const Trajectory& traj, double slack) {
    TrappingReport rep;
    auto inside_phi = [&](const Vec2& s) {
        return s.u >= -slack && s.u <= 1.0 + slack && s.v >= -slack && s.v <= 1.0 + slack;
    };
    for (std::size_t i = 0; i < traj.size(); ++i) {
        if (!rep.entered) {
            if (inside_phi(traj.states[i])) {
                rep.entered = true;
                rep.entry_tau = traj.tau[i];
            }
        } else if (!inside_phi(traj.states[i])) {
            rep.ok = false;
            rep.first_violation = i;
            return rep;
        }
    }
    return rep;
}

} // namespace hta
