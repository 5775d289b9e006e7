#include "hta/manifolds.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace hta {

const char* to_string(BranchId id) {
    switch (id) {
        case BranchId::StableP2Side: return "stable-p2-side";
        case BranchId::StableMSide: return "stable-m-side";
        case BranchId::UnstableP2Side: return "unstable-p2-side";
        case BranchId::UnstableOriginSide: return "unstable-origin-side";
    }
    return "?";
}

const char* to_string(BranchTermination t) {
    switch (t) {
        case BranchTermination::EquilibriumHit: return "equilibrium-hit";
        case BranchTermination::BoundaryExit: return "boundary-exit";
        case BranchTermination::CycleAccumulation: return "cycle-accumulation";
        case BranchTermination::Horizon: return "horizon";
    }
    return "?";
}

const char* to_string(ConnectionCase c) {
    switch (c) {
        case ConnectionCase::P2Connection: return "i:P2-unstable-global-origin";
        case ConnectionCase::CycleSeparatrix: return "ii:cycle-separatrix";
        case ConnectionCase::Homoclinic: return "iii:homoclinic";
        case ConnectionCase::HeteroclinicM: return "iv:heteroclinic-to-(M,0)-pair";
        case ConnectionCase::HeteroclinicOne: return "v:heteroclinic-to-(1,0)";
        case ConnectionCase::BoundaryExit: return "vi:boundary-exit";
    }
    return "?";
}

namespace {

constexpr int kBallOrigin = 0;
constexpr int kBallM = 1;
constexpr int kBallOne = 2;
constexpr int kBallP2 = 3;

EquilibriumKind ball_kind(int id) {
    switch (id) {
        case kBallOrigin: return EquilibriumKind::Origin;
        case kBallM: return EquilibriumKind::BoundaryM;
        case kBallOne: return EquilibriumKind::BoundaryOne;
        default: return EquilibriumKind::P2;
    }
}

struct TraceSetup {
    Vec2 seed;
    TraceSpec spec;
};

TraceSetup branch_setup(const NondimParams& p, const CubicStructure& c, BranchId which,
                        const ManifoldConfig& cfg, bool terminate_at_one) {
    const SaddleEigenData eig = p1_eigen_data(p);
    const bool stable = which == BranchId::StableP2Side || which == BranchId::StableMSide;
    const bool p2_side = which == BranchId::StableP2Side || which == BranchId::UnstableP2Side;
    Vec2 psi = stable ? eig.psi_stable : eig.psi_unstable;
    // orient the eigenvector toward P2 along the diagonal, then pick the side
    if (psi.u + psi.v < 0.0) psi = -1.0 * psi;
    const Vec2 p1{c.u1, c.u1};

    TraceSetup s;
    s.seed = p1 + (p2_side ? cfg.seed_offset : -cfg.seed_offset) * psi;
    s.spec.backward = stable;
    s.spec.horizon = cfg.integration.max_time;
    const double r = cfg.integration.eq_radius;
    s.spec.balls = {{{0.0, 0.0}, r, kBallOrigin, true},
                    {{p.M, 0.0}, r, kBallM, true},
                    {{1.0, 0.0}, r, kBallOne, terminate_at_one},
                    {{c.u2, c.u2}, r, kBallP2, true}};
    if (stable) {
        // backward orbits can accumulate on the (backward-attracting) cycle
        s.spec.section_enabled = true;
        s.spec.section_u_min = c.u2;
    } else {
        // forward orbits entering {u < M} are certified to reach the origin
        s.spec.strip_u_below = p.M;
    }
    return s;
}

ManifoldBranch branch_from_outcome(BranchId which, const TraceOutcome& out) {
    ManifoldBranch b;
    b.which = which;
    b.points = out.points;
    b.tau_end = out.tau_end;
    b.min_dist_boundary_one = out.min_ball_dist[kBallOne];
    switch (out.end) {
        case TraceOutcome::End::BallHit:
            b.termination = BranchTermination::EquilibriumHit;
            b.hit = ball_kind(out.ball_id);
            break;
        case TraceOutcome::End::StripHit:
            b.termination = BranchTermination::EquilibriumHit;
            b.hit = EquilibriumKind::Origin;
            break;
        case TraceOutcome::End::BoxExit:
            b.termination = BranchTermination::BoundaryExit;
            break;
        case TraceOutcome::End::CycleConverged:
            b.termination = BranchTermination::CycleAccumulation;
            break;
        default:
            b.termination = BranchTermination::Horizon;
            break;
    }
    return b;
}

void check_offset(const ManifoldConfig& cfg) {
    if (!(cfg.seed_offset >= 1e-8 && cfg.seed_offset <= 1e-4))
        throw std::invalid_argument("seed_offset must lie in [1e-8, 1e-4]");
}

std::vector<Vec2> filtered_away_from(const std::vector<Vec2>& pts, const Vec2& center, double radius) {
    std::vector<Vec2> out;
    out.reserve(pts.size());
    for (const auto& q : pts)
        if (distance(q, center) > radius) out.push_back(q);
    return out;
}

} // namespace

ManifoldBranch trace_branch(const NondimParams& p, BranchId which, const ManifoldConfig& cfg) {
    check_offset(cfg);
    const CubicStructure c = solve_cubic_structure(p);
    if (!c.has_pair()) throw NumericalError("trace_branch: delta <= 0, P1 does not exist");
    const TraceSetup s = branch_setup(p, c, which, cfg, /*terminate_at_one=*/true);
    return branch_from_outcome(which, trace_orbit(p, s.seed, cfg.integration, s.spec));
}

double point_polyline_distance(const Vec2& q, const std::vector<Vec2>& poly) {
    double best = std::numeric_limits<double>::infinity();
    if (poly.empty()) return best;
    if (poly.size() == 1) return distance(q, poly.front());
    for (std::size_t i = 0; i + 1 < poly.size(); ++i) {
        const Vec2 a = poly[i];
        const Vec2 d = poly[i + 1] - a;
        const double len2 = d.u * d.u + d.v * d.v;
        double t = 0.0;
        if (len2 > 0.0) {
            t = ((q.u - a.u) * d.u + (q.v - a.v) * d.v) / len2;
            t = std::clamp(t, 0.0, 1.0);
        }
        best = std::min(best, distance(q, a + t * d));
    }
    return best;
}

double directed_hausdorff(const std::vector<Vec2>& a, const std::vector<Vec2>& b) {
    double worst = 0.0;
    for (const auto& q : a) worst = std::max(worst, point_polyline_distance(q, b));
    return worst;
}

ConnectionReport classify_connection(const NondimParams& p, const ManifoldConfig& cfg) {
    check_offset(cfg);
    const CubicStructure c = solve_cubic_structure(p);
    if (!c.has_pair()) throw NumericalError("classify_connection: delta <= 0");
    const Vec2 p1{c.u1, c.u1};

    const TraceSetup sep = branch_setup(p, c, BranchId::StableP2Side, cfg, /*terminate_at_one=*/true);
    const TraceOutcome sep_out = trace_orbit(p, sep.seed, cfg.integration, sep.spec);
    const TraceSetup wu = branch_setup(p, c, BranchId::UnstableP2Side, cfg, /*terminate_at_one=*/true);
    const TraceOutcome wu_out = trace_orbit(p, wu.seed, cfg.integration, wu.spec);

    ConnectionReport rep;
    rep.stable_p2side = branch_from_outcome(BranchId::StableP2Side, sep_out);
    rep.unstable_p2side = branch_from_outcome(BranchId::UnstableP2Side, wu_out);
    rep.min_dist_boundary_one = sep_out.min_ball_dist[kBallOne];

    const auto sep_pts = filtered_away_from(rep.stable_p2side.points, p1, cfg.p1_exclusion);
    const auto wu_pts = filtered_away_from(rep.unstable_p2side.points, p1, cfg.p1_exclusion);
    rep.hom_match_distance = std::numeric_limits<double>::infinity();
    for (const auto& q : sep_pts)
        rep.hom_match_distance = std::min(rep.hom_match_distance, point_polyline_distance(q, wu_pts));

    switch (sep_out.end) {
        case TraceOutcome::End::BallHit:
            switch (sep_out.ball_id) {
                case kBallP2: rep.label = ConnectionCase::P2Connection; break;
                case kBallM: rep.label = ConnectionCase::HeteroclinicM; break;
                case kBallOne: rep.label = ConnectionCase::HeteroclinicOne; break;
                default:
                    throw NumericalError("classify_connection: stable p2-side branch reached the origin");
            }
            break;
        case TraceOutcome::End::CycleConverged:
            rep.label = ConnectionCase::CycleSeparatrix;
            rep.cycle_loop = sep_out.loop;
            break;
        case TraceOutcome::End::BoxExit: rep.label = ConnectionCase::BoundaryExit; break;
        default:
            throw NumericalError("classify_connection: inconclusive trace (near a case transition)");
    }

    const bool hom_candidate =
        rep.label == ConnectionCase::CycleSeparatrix || rep.label == ConnectionCase::HeteroclinicM;
    if (hom_candidate && rep.hom_match_distance < cfg.hom_match_tol)
        rep.label = ConnectionCase::Homoclinic;
    return rep;
}

ShootingProbe shoot_separatrix_branch(const NondimParams& p, const ManifoldConfig& cfg) {
    check_offset(cfg);
    const CubicStructure c = solve_cubic_structure(p);
    if (!c.has_pair()) throw NumericalError("shoot_separatrix_branch: delta <= 0");
    const TraceSetup sep = branch_setup(p, c, BranchId::StableP2Side, cfg, /*terminate_at_one=*/false);
    const TraceOutcome out = trace_orbit(p, sep.seed, cfg.integration, sep.spec);

    ShootingProbe probe;
    probe.min_dist_boundary_one = out.min_ball_dist[kBallOne];
    switch (out.end) {
        case TraceOutcome::End::CycleConverged:
            probe.captured = true;
            probe.escaped_phi = false;
            break;
        case TraceOutcome::End::BallHit:
            probe.captured = out.ball_id == kBallP2;
            probe.escaped_phi = false;
            break;
        case TraceOutcome::End::BoxExit:
            probe.captured = false;
            probe.escaped_phi = true;
            break;
        default:
            throw NumericalError("shoot_separatrix_branch: inconclusive trace (near a transition)");
    }
    return probe;
}

namespace {

/// Truncates the backward separatrix-branch trace at its re-approach to P1
/// (the homoclinic loop closes there).
std::vector<Vec2> truncate_at_reapproach(const std::vector<Vec2>& pts, const Vec2& p1, double leave,
                                         double reenter) {
    std::vector<Vec2> out;
    bool left = false;
    for (const auto& q : pts) {
        const double d = distance(q, p1);
        out.push_back(q);
        if (!left && d > leave) left = true;
        if (left && d < reenter) break;
    }
    return out;
}

} // namespace

std::vector<Vec2> separatrix(const NondimParams& p, const ManifoldConfig& cfg) {
    const CubicStructure c = solve_cubic_structure(p);
    if (!c.has_pair()) throw NumericalError("separatrix: delta <= 0");
    const double s_star = f_trace(p, c.u2);
    if (!(p.S > s_star))
        throw NumericalError("separatrix: S <= S*, the origin attracts all of Phi");

    ConnectionReport rep = classify_connection(p, cfg);
    const Vec2 p1{c.u1, c.u1};

    if (rep.label == ConnectionCase::CycleSeparatrix) return rep.cycle_loop;
    if (rep.label == ConnectionCase::Homoclinic)
        return truncate_at_reapproach(rep.stable_p2side.points, p1, 2.0 * cfg.p1_exclusion,
                                      cfg.p1_exclusion);

    // iv-vi: W^s(P1) = p2-side branch + P1 + m-side branch
    const ManifoldBranch m_side = trace_branch(p, BranchId::StableMSide, cfg);
    std::vector<Vec2> curve(rep.stable_p2side.points.rbegin(), rep.stable_p2side.points.rend());
    curve.push_back(p1);
    curve.insert(curve.end(), m_side.points.begin(), m_side.points.end());
    return curve;
}

} // namespace hta
