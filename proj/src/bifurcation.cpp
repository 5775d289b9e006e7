#include "hta/bifurcation.hpp"

#include <cmath>

namespace hta {

double find_saddle_node_Q(double A, double M) {
    NondimParams p{A, M, 1.0, 1.0};
    if (!(A > 0.0 && A < 1.0 && M > 0.0 && M < 1.0))
        throw std::invalid_argument("find_saddle_node_Q: (A,M) must lie in (0,1)^2");

    auto delta_at = [&](double Q) {
        p.Q = Q;
        return solve_cubic_structure(p).delta;
    };

    double q_lo = 1e-6;
    if (delta_at(q_lo) <= 0.0) throw NumericalError("find_saddle_node_Q: delta <= 0 at the lower bracket");
    double q_hi = 0.1;
    int grow = 0;
    while (delta_at(q_hi) > 0.0) {
        q_lo = q_hi;
        q_hi *= 2.0;
        if (++grow > 60) throw NumericalError("find_saddle_node_Q: no sign change of delta found");
    }
    for (int i = 0; i < 200 && (q_hi - q_lo) > 1e-16 * q_hi; ++i) {
        const double mid = 0.5 * (q_lo + q_hi);
        if (delta_at(mid) > 0.0)
            q_lo = mid;
        else
            q_hi = mid;
    }
    return 0.5 * (q_lo + q_hi);
}

Vec2 sotomayor_reduced_field(const NondimParams& p, const Vec2& s) {
    return {growth_g(p, s.u) - p.Q * s.v, s.u - s.v};
}

Vec2 sotomayor_left_null_vector(double A, double M, double Q_sn, double S, double H) {
    const double sum = H + M + 1.0 - A;
    return {-S * (sum + 2.0 * A) / (Q_sn * sum), 1.0};
}

SotomayorQuantities sotomayor_check(double A, double M, double Q_sn, double S) {
    const NondimParams p{A, M, Q_sn, S};
    const CubicStructure c = solve_cubic_structure(p);
    const double sum = c.H + M + 1.0 - A; // = 2E
    const double sumA = sum + 2.0 * A;    // = 2(E+A)
    SotomayorQuantities q;
    q.w_dot_Fq = S * sumA / (2.0 * Q_sn);
    q.w_dot_hessian = S * sumA * (3.0 * c.H + M + 1.0 - A) / (Q_sn * sum);
    return q;
}

BTPoint find_bt_point(double A, double M) {
    BTPoint bt;
    bt.Q = find_saddle_node_Q(A, M);
    const NondimParams p{A, M, bt.Q, 1.0};
    const CubicStructure c = solve_cubic_structure(p);
    bt.S = f_trace_at_double_root(p, c);
    return bt;
}

namespace {

double bisect_global(double A, double M, double Q, double s_lo, double s_hi,
                     const ManifoldConfig& cfg, double tol, bool heteroclinic) {
    auto above = [&](double S) {
        const ShootingProbe probe = shoot_separatrix_branch({A, M, Q, S}, cfg);
        return heteroclinic ? probe.escaped_phi : !probe.captured;
    };
    if (!(s_lo < s_hi)) throw std::invalid_argument("bisection bracket must satisfy lo < hi");
    if (above(s_lo))
        throw NumericalError("bisection bracket: lower endpoint already on the upper side");
    if (!above(s_hi))
        throw NumericalError("bisection bracket: upper endpoint still on the lower side");
    while (s_hi - s_lo > tol) {
        const double mid = 0.5 * (s_lo + s_hi);
        if (above(mid))
            s_hi = mid;
        else
            s_lo = mid;
    }
    return 0.5 * (s_lo + s_hi);
}

} // namespace

double find_homoclinic_S(double A, double M, double Q, double s_lo, double s_hi,
                         const ManifoldConfig& cfg, double tol) {
    return bisect_global(A, M, Q, s_lo, s_hi, cfg, tol, /*heteroclinic=*/false);
}

double find_heteroclinic_S(double A, double M, double Q, double s_lo, double s_hi,
                           const ManifoldConfig& cfg, double tol) {
    return bisect_global(A, M, Q, s_lo, s_hi, cfg, tol, /*heteroclinic=*/true);
}

const char* to_string(RegionLabel label) {
    switch (label) {
        case RegionLabel::NoInterior: return "no-interior";
        case RegionLabel::P2Repeller: return "P2-repeller";
        case RegionLabel::CycleSeparatrix: return "cycle-separatrix";
        case RegionLabel::WsToM: return "Ws-to-(M,0)";
        case RegionLabel::WsToBoundary: return "Ws-to-boundary";
        case RegionLabel::Undecided: return "undecided";
    }
    return "?";
}

double RegionDiagram::q_at(int i) const { return q_lo + (i + 0.5) * (q_hi - q_lo) / nq; }
double RegionDiagram::s_at(int j) const { return s_lo + (j + 0.5) * (s_hi - s_lo) / ns; }

RegionDiagram region_diagram(double A, double M, double q_lo, double q_hi, double s_lo, double s_hi,
                             int nq, int ns, const ManifoldConfig& cfg) {
    if (!(nq > 0 && ns > 0 && q_lo < q_hi && s_lo < s_hi && q_lo > 0.0 && s_lo > 0.0))
        throw std::invalid_argument("region_diagram: ranges must be positive with lo < hi");
    RegionDiagram d;
    d.A = A;
    d.M = M;
    d.q_lo = q_lo;
    d.q_hi = q_hi;
    d.s_lo = s_lo;
    d.s_hi = s_hi;
    d.nq = nq;
    d.ns = ns;
    d.labels.assign(static_cast<std::size_t>(nq) * ns, RegionLabel::Undecided);

    for (int i = 0; i < nq; ++i) {
        const double Q = d.q_at(i);
        const NondimParams col{A, M, Q, 1.0};
        const CubicStructure c = solve_cubic_structure(col);
        if (!c.has_pair()) {
            for (int j = 0; j < ns; ++j) d.labels[static_cast<std::size_t>(j) * nq + i] = RegionLabel::NoInterior;
            continue;
        }
        const double s_star = f_trace(col, c.u2);
        for (int j = 0; j < ns; ++j) {
            const double S = d.s_at(j);
            RegionLabel label;
            if (S <= s_star) {
                label = RegionLabel::P2Repeller;
            } else {
                try {
                    switch (classify_connection({A, M, Q, S}, cfg).label) {
                        case ConnectionCase::P2Connection: label = RegionLabel::P2Repeller; break;
                        case ConnectionCase::CycleSeparatrix: label = RegionLabel::CycleSeparatrix; break;
                        case ConnectionCase::Homoclinic:
                        case ConnectionCase::HeteroclinicM: label = RegionLabel::WsToM; break;
                        case ConnectionCase::HeteroclinicOne:
                        case ConnectionCase::BoundaryExit: label = RegionLabel::WsToBoundary; break;
                        default: label = RegionLabel::Undecided; break;
                    }
                } catch (const NumericalError&) {
                    label = RegionLabel::Undecided;
                    ++d.undecided_count;
                }
            }
            d.labels[static_cast<std::size_t>(j) * nq + i] = label;
        }
    }
    return d;
}

BifurcationSet compute_bifurcation_set(double A, double M, const std::vector<double>& q_samples,
                                       const ManifoldConfig& cfg, bool with_global) {
    BifurcationSet set;
    set.A = A;
    set.M = M;
    set.Q_sn = find_saddle_node_Q(A, M);
    set.bt = find_bt_point(A, M);
    set.q_bt_abscissa = set.Q_sn;

    auto s_star_at = [&](double Q) -> std::optional<double> {
        const NondimParams p{A, M, Q, 1.0};
        const CubicStructure c = solve_cubic_structure(p);
        if (!c.has_pair()) return std::nullopt;
        return f_trace(p, c.u2);
    };

    for (double Q : q_samples) {
        const auto s_star = s_star_at(Q);
        if (!s_star) continue;
        set.hopf_curve.emplace_back(Q, *s_star);

        if (!with_global) continue;
        // scan S upward from the Hopf value for the capture->escape and
        // (M,0)->boundary transitions, then bisect
        const double s_base = std::max(*s_star, 0.0);
        double prev = s_base + std::max(0.05 * std::abs(s_base), 5e-3);
        std::optional<double> hom_lo, hom_hi, het_lo, het_hi;
        try {
            ShootingProbe probe = shoot_separatrix_branch({A, M, Q, prev}, cfg);
            bool prev_captured = probe.captured;
            bool prev_escaped = probe.escaped_phi;
            for (double S = prev * 1.25; S < 2.0; S *= 1.25) {
                probe = shoot_separatrix_branch({A, M, Q, S}, cfg);
                if (prev_captured && !probe.captured && !hom_lo) {
                    hom_lo = prev;
                    hom_hi = S;
                }
                if (!prev_escaped && probe.escaped_phi && !het_lo) {
                    het_lo = prev;
                    het_hi = S;
                }
                if (hom_lo && het_lo) break;
                prev = S;
                prev_captured = probe.captured;
                prev_escaped = probe.escaped_phi;
            }
            if (hom_lo)
                set.homoclinic.emplace_back(Q, find_homoclinic_S(A, M, Q, *hom_lo, *hom_hi, cfg));
            if (het_lo)
                set.heteroclinic.emplace_back(Q, find_heteroclinic_S(A, M, Q, *het_lo, *het_hi, cfg));
        } catch (const NumericalError&) {
            // sample skipped; the transition does not exist or is unresolvable here
        }
    }

    // the Q* reading: where the Hopf curve crosses S = 0
    double lo = 1e-6, hi = set.Q_sn * (1.0 - 1e-9);
    const auto f_lo = s_star_at(lo);
    const auto f_hi = s_star_at(hi);
    if (f_lo && f_hi && (*f_lo < 0.0) != (*f_hi < 0.0)) {
        for (int i = 0; i < 100; ++i) {
            const double mid = 0.5 * (lo + hi);
            const auto fm = s_star_at(mid);
            if (!fm) break;
            if ((*fm < 0.0) == (*f_lo < 0.0))
                lo = mid;
            else
                hi = mid;
        }
        set.q_hopf_at_zero = 0.5 * (lo + hi);
    }
    return set;
}

} // namespace hta
