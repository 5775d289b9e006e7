#ifndef HTA_MODEL_HPP
#define HTA_MODEL_HPP

#include "hta/types.hpp"

namespace hta {

/// Parameters of the dimensional predator-prey model
///   dx/dt = r x (1 - x/K)(x - m) - q x y / (x + a)
///   dy/dt = s y (1 - y/(n x))
/// with a Holling type II response and a strong Allee threshold m.
struct DimensionalParams {
    double r; ///< prey intrinsic growth rate
    double s; ///< predator intrinsic growth rate
    double K; ///< prey carrying capacity
    double q; ///< maximum per-capita predation rate
    double n; ///< prey-to-predator conversion quality
    double a; ///< half-saturation constant
    double m; ///< Allee threshold, 0 < m < K

    /// Throws std::invalid_argument unless all fields are positive, a < K and m < K.
    void validate() const;
};

/// Parameters of the nondimensionalised, desingularised system
///   du/dtau = u^2 ((u+A)(1-u)(u-M) - Q v)
///   dv/dtau = S (u+A)(u-v) v
/// with (A,M) in (0,1)^2 and Q,S > 0.
struct NondimParams {
    double A;
    double M;
    double Q;
    double S;

    void validate() const;
};

/// Change of variables A=a/K, M=m/K, Q=nq/(rK), S=s/(rK).
NondimParams nondimensionalize(const DimensionalParams& p);

/// Right-hand side of the desingularised system. Total on the plane; the
/// coordinate axes are invariant (Kolmogorov form).
Vec2 vector_field(const NondimParams& p, const Vec2& s);

/// Right-hand side of the dimensional system. Requires x > 0 (the predator
/// equation divides by x).
Vec2 dimensional_vector_field(const DimensionalParams& p, double x, double y);

/// Allee growth factor g(u) = (u+A)(1-u)(u-M) and its derivatives.
double growth_g(const NondimParams& p, double u);
double growth_g_prime(const NondimParams& p, double u);
double growth_g_second(const NondimParams& p, double u);

/// Analytic Jacobian of vector_field.
Mat2 jacobian(const NondimParams& p, const Vec2& s);

/// Central finite-difference Jacobian of vector_field (test oracle).
Mat2 jacobian_fd(const NondimParams& p, const Vec2& s, double h = 1e-6);

} // namespace hta

#endif
