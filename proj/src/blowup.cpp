#include "hta/blowup.hpp"

namespace hta {

Vec2 blowup_field(const NondimParams& p, const BlowupState& s) {
    const double x = s.x;
    const double y = s.y;
    const double xy = x * y;
    const double dx =
        x * (p.S * (1.0 - x) * (p.A + xy) + x * (p.A + xy) * (1.0 - xy) * (xy - p.M) - p.Q * xy);
    const double dy = p.S * (x - 1.0) * (xy + p.A) * y;
    return {dx, dy};
}

BlowupReport blowup_equilibria(const NondimParams& p) {
    p.validate();
    BlowupReport rep;

    rep.origin.location = {0.0, 0.0};
    rep.origin.lambda1 = p.A * p.S;  // along the exceptional line
    rep.origin.lambda2 = -p.A * p.S; // transverse
    rep.origin.eigvec1 = {1.0, 0.0};
    rep.origin.eigvec2 = {0.0, 1.0};
    rep.origin.saddle = true;

    const double mu = p.S / (p.S + p.M);
    rep.mu.location = {mu, 0.0};
    rep.mu.lambda1 = -p.A * p.S;
    rep.mu.lambda2 = -p.A * p.M * p.S / (p.M + p.S);
    rep.mu.eigvec1 = {1.0, 0.0};
    // off-diagonal entry of the (upper-triangular) Jacobian at (mu,0)
    const double b =
        p.S * p.S * (p.A * p.S * (1.0 + p.M) - p.Q * (p.M + p.S)) / std::pow(p.M + p.S, 3);
    Vec2 w{b / (rep.mu.lambda2 - rep.mu.lambda1), 1.0};
    rep.mu.eigvec2 = w * (1.0 / w.norm());
    rep.mu.saddle = false;

    return rep;
}

Vec2 blowdown(const BlowupState& s) { return {s.x * s.y, s.y}; }

BlowupState blowup_chart(const Vec2& s) {
    if (!(s.v > 0.0)) throw std::invalid_argument("blow-up chart requires v > 0");
    return {s.u / s.v, s.v};
}

} // namespace hta
