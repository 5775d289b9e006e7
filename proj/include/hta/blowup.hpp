#ifndef HTA_BLOWUP_HPP
#define HTA_BLOWUP_HPP

#include "hta/model.hpp"

namespace hta {

/// Chart coordinates of the y-direction blow-up of the origin,
/// (u,v) = (x y, y) with the time rescaling dt = y dtau. Invertible for y > 0.
struct BlowupState {
    double x; ///< ratio u/v
    double y; ///< predator coordinate v
};

/// Right-hand side of the blown-up system
///   dx/dt = x (S(1-x)(A+xy) + x(A+xy)(1-xy)(xy-M) - Qxy)
///   dy/dt = S (x-1)(xy+A) y.
Vec2 blowup_field(const NondimParams& p, const BlowupState& s);

/// Equilibrium data on the exceptional line y = 0: the origin is a saddle
/// with eigenvalues (AS, -AS); (mu, 0) with mu = S/(S+M) is an attractor with
/// eigenvalues (-AS, -AMS/(M+S)). Blowing back down, the attractor certifies
/// that the origin of the planar system attracts the interior.
struct BlowupEquilibrium {
    BlowupState location;
    double lambda1;
    double lambda2;
    Vec2 eigvec1;
    Vec2 eigvec2;
    bool saddle;
};

struct BlowupReport {
    BlowupEquilibrium origin;
    BlowupEquilibrium mu; ///< (S/(S+M), 0)
};

BlowupReport blowup_equilibria(const NondimParams& p);

/// Chart maps for tests: (x,y) -> (u,v) and its inverse (defined for v > 0).
Vec2 blowdown(const BlowupState& s);
BlowupState blowup_chart(const Vec2& s);

} // namespace hta

#endif
