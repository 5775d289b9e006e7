#include "hta/equilibria.hpp"

#include <algorithm>
#include <limits>

namespace hta {

double cubic_value(const NondimParams& p, double u) {
    const double c2 = -(p.M + 1.0 - p.A);
    const double c1 = -(p.A * (p.M + 1.0) - p.Q - p.M);
    const double c0 = p.A * p.M;
    return ((u + c2) * u + c1) * u + c0;
}

namespace {

double cubic_derivative(const NondimParams& p, double u) {
    const double c2 = -(p.M + 1.0 - p.A);
    const double c1 = -(p.A * (p.M + 1.0) - p.Q - p.M);
    return (3.0 * u + 2.0 * c2) * u + c1;
}

} // namespace

CubicStructure solve_cubic_structure(const NondimParams& p) {
    p.validate();
    // d(-A) = -QA < 0 < AM = d(0) brackets the negative root.
    double lo = -p.A;
    double hi = 0.0;
    for (int i = 0; i < 200 && hi - lo > 1e-16 * p.A; ++i) {
        const double mid = 0.5 * (lo + hi);
        if (cubic_value(p, mid) > 0.0)
            hi = mid;
        else
            lo = mid;
    }
    double root = 0.5 * (lo + hi);
    for (int i = 0; i < 8; ++i) {
        const double fval = cubic_value(p, root);
        const double dval = cubic_derivative(p, root);
        if (dval == 0.0) break;
        const double next = root - fval / dval;
        if (next <= -p.A || next >= 0.0) break;
        if (next == root) break;
        root = next;
    }

    CubicStructure c;
    c.H = -root;
    const double sum = c.H + p.M + 1.0 - p.A; // u1 + u2
    const double prod = p.A * p.M / c.H;      // u1 * u2
    c.E = 0.5 * sum;
    c.delta = sum * sum - 4.0 * prod;
    if (c.delta >= 0.0) {
        const double sq = std::sqrt(c.delta);
        c.u1 = 0.5 * (sum - sq);
        c.u2 = 0.5 * (sum + sq);
    } else {
        c.u1 = std::numeric_limits<double>::quiet_NaN();
        c.u2 = std::numeric_limits<double>::quiet_NaN();
    }
    return c;
}

double f_trace(const NondimParams& p, double u) { return u * growth_g_prime(p, u) / (p.A + u); }

double f_trace_at_double_root(const NondimParams& p, const CubicStructure& c) {
    const double sum = c.H + p.M + 1.0 - p.A;
    return p.Q * sum / (sum + 2.0 * p.A);
}

double hopf_threshold(const NondimParams& p) {
    const CubicStructure c = solve_cubic_structure(p);
    if (c.no_interior())
        throw NumericalError("hopf_threshold: delta < 0, no interior equilibrium P2");
    if (c.is_double_root()) return f_trace_at_double_root(p, c);
    return f_trace(p, c.u2);
}

const char* to_string(EquilibriumKind k) {
    switch (k) {
        case EquilibriumKind::Origin: return "origin";
        case EquilibriumKind::BoundaryM: return "boundary-M";
        case EquilibriumKind::BoundaryOne: return "boundary-1";
        case EquilibriumKind::P1: return "P1";
        case EquilibriumKind::P2: return "P2";
        case EquilibriumKind::EDouble: return "E-double";
    }
    return "?";
}

const char* to_string(Classification c) {
    switch (c) {
        case Classification::NonHyperbolicAttractor: return "non-hyperbolic attractor";
        case Classification::HyperbolicRepeller: return "hyperbolic repeller";
        case Classification::Saddle: return "saddle";
        case Classification::Attractor: return "attractor";
        case Classification::Repeller: return "repeller";
        case Classification::SaddleNodeAttractor: return "saddle-node attractor";
        case Classification::SaddleNodeRepeller: return "saddle-node repeller";
        case Classification::CuspCandidate: return "cusp-candidate";
    }
    return "?";
}

const Equilibrium* EquilibriumReport::find(EquilibriumKind k) const {
    for (const auto& e : points)
        if (e.kind == k) return &e;
    return nullptr;
}

namespace {

Equilibrium make_equilibrium(const NondimParams& p, Vec2 loc, EquilibriumKind kind, Classification cls) {
    Equilibrium e;
    e.location = loc;
    e.kind = kind;
    e.classification = cls;
    if (kind == EquilibriumKind::Origin) {
        e.lambda1 = e.lambda2 = 0.0;
        return e; // zero Jacobian, no eigen-data
    }
    const EigenDecomposition d = eigen_2x2(jacobian(p, loc));
    e.lambda1 = d.lambda1;
    e.lambda2 = d.lambda2;
    if (d.has_real_eigenvectors) e.eigenvectors = std::make_pair(d.vec1, d.vec2);
    return e;
}

} // namespace

EquilibriumReport classify_all(const NondimParams& p) {
    p.validate();
    EquilibriumReport rep;
    rep.cubic = solve_cubic_structure(p);

    rep.points.push_back(
        make_equilibrium(p, {0.0, 0.0}, EquilibriumKind::Origin, Classification::NonHyperbolicAttractor));
    rep.points.push_back(
        make_equilibrium(p, {p.M, 0.0}, EquilibriumKind::BoundaryM, Classification::HyperbolicRepeller));
    rep.points.push_back(
        make_equilibrium(p, {1.0, 0.0}, EquilibriumKind::BoundaryOne, Classification::Saddle));

    const CubicStructure& c = rep.cubic;
    if (c.has_pair()) {
        rep.hopf_S = f_trace(p, c.u2);
        rep.points.push_back(make_equilibrium(p, {c.u1, c.u1}, EquilibriumKind::P1, Classification::Saddle));
        const Classification p2_cls =
            p.S < *rep.hopf_S ? Classification::Repeller : Classification::Attractor;
        rep.points.push_back(make_equilibrium(p, {c.u2, c.u2}, EquilibriumKind::P2, p2_cls));
    } else if (c.is_double_root()) {
        const double fE = f_trace_at_double_root(p, c);
        rep.hopf_S = fE;
        rep.f_E = fE;
        // tr J(E,E) = E (E+A) (f(E) - S); the Lemma text and the figure caption
        // disagree on which sign is the attractor, we follow the trace.
        Classification cls;
        const double tr_factor = fE - p.S;
        if (std::abs(tr_factor) < 1e-9)
            cls = Classification::CuspCandidate;
        else
            cls = tr_factor > 0.0 ? Classification::SaddleNodeRepeller : Classification::SaddleNodeAttractor;
        rep.points.push_back(make_equilibrium(p, {c.E, c.E}, EquilibriumKind::EDouble, cls));
    }
    return rep;
}

SaddleEigenData p1_eigen_data(const NondimParams& p) {
    const CubicStructure c = solve_cubic_structure(p);
    if (!c.has_pair()) throw NumericalError("p1_eigen_data: delta <= 0, P1 does not exist");
    const double u1 = c.u1;
    const double au = p.A + u1;
    const double f1 = f_trace(p, u1);
    // discriminant of the characteristic polynomial factored as in the closed
    // form: tr^2 - 4 det = u1^2 (A+u1) ((A+u1)(f+S)^2 - 4 Q S u1)
    const double radicand = au * (au * (f1 + p.S) * (f1 + p.S) - 4.0 * p.Q * p.S * u1);
    const double root = std::sqrt(std::max(radicand, 0.0));
    const double half = 0.5 * u1 * au;
    SaddleEigenData d;
    d.lambda_unstable = half * (f1 - p.S + root / au);
    d.lambda_stable = half * (f1 - p.S - root / au);
    auto psi = [&](double lambda) {
        Vec2 vec{1.0 + lambda / (p.S * u1 * au), 1.0};
        return vec * (1.0 / vec.norm());
    };
    d.psi_unstable = psi(d.lambda_unstable);
    d.psi_stable = psi(d.lambda_stable);
    return d;
}

} // namespace hta
