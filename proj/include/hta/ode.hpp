#ifndef HTA_ODE_HPP
#define HTA_ODE_HPP

#include <algorithm>
#include <cmath>

#include "hta/types.hpp"

namespace hta {

/// Solver options; tolerances are validated to lie in (0, 1e-2].
struct IntegrationConfig {
    double rel_tol = 1e-8;
    double abs_tol = 1e-10;
    double max_time = 5e4;
    double attractor_radius = 1e-4; ///< convergence ball around point attractors
    bool cycle_detection = true;
    double max_step = 1.0;           ///< cap so section crossings are not skipped
    double eq_radius = 1e-3;         ///< event ball around saddles/repellers in manifold traces
    double cycle_return_tol = 1e-5;  ///< relative Poincare return distance
    int cycle_returns_required = 3;  ///< consecutive converged returns
    int max_returns = 600;

    void validate() const {
        auto in_range = [](double x, double lo, double hi) { return x > lo && x <= hi; };
        if (!in_range(rel_tol, 0.0, 1e-2) || !in_range(abs_tol, 0.0, 1e-2))
            throw std::invalid_argument("solver tolerances must lie in (0, 1e-2]");
        if (!(max_time > 0.0)) throw std::invalid_argument("max_time must be positive");
        if (!in_range(attractor_radius, 0.0, 1e-2))
            throw std::invalid_argument("attractor_radius must lie in (0, 1e-2]");
    }
};

enum class StepResult { Accepted, Underflow };

/// Dormand-Prince 5(4) embedded pair with PI step-size control and the
/// standard fourth-order continuous extension. FSAL: the last stage of an
/// accepted step seeds the next one.
template <class RHS>
class Dopri5 {
  public:
    Dopri5(RHS rhs, const IntegrationConfig& cfg) : rhs_(rhs), cfg_(cfg) {}

    void init(double t0, const Vec2& y0) {
        t_ = t0;
        y_ = y0;
        k1_ = rhs_(y_);
        h_ = initial_step();
        err_old_ = 1e-4;
        underflow_ = false;
    }

    double time() const { return t_; }
    const Vec2& state() const { return y_; }
    double prev_time() const { return t_prev_; }
    const Vec2& prev_state() const { return y_prev_; }
    bool underflow() const { return underflow_; }

    void clamp_next_step(double limit) { h_ = std::min(h_, std::max(limit, 1e-14)); }

    /// Advances one accepted step (retrying with smaller h on rejection).
    StepResult step() {
        for (int attempt = 0; attempt < 64; ++attempt) {
            if (h_ < 1e-14 * std::max(1.0, std::abs(t_))) {
                underflow_ = true;
                return StepResult::Underflow;
            }
            const double h = h_;
            const Vec2 k2 = rhs_(y_ + h * (a21 * k1_));
            const Vec2 k3 = rhs_(y_ + h * (a31 * k1_ + a32 * k2));
            const Vec2 k4 = rhs_(y_ + h * (a41 * k1_ + a42 * k2 + a43 * k3));
            const Vec2 k5 = rhs_(y_ + h * (a51 * k1_ + a52 * k2 + a53 * k3 + a54 * k4));
            const Vec2 k6 = rhs_(y_ + h * (a61 * k1_ + a62 * k2 + a63 * k3 + a64 * k4 + a65 * k5));
            const Vec2 ynew = y_ + h * (b1 * k1_ + b3 * k3 + b4 * k4 + b5 * k5 + b6 * k6);
            const Vec2 k7 = rhs_(ynew);

            const Vec2 errv = h * (e1 * k1_ + e3 * k3 + e4 * k4 + e5 * k5 + e6 * k6 + e7 * k7);
            const double scu = cfg_.abs_tol + cfg_.rel_tol * std::max(std::abs(y_.u), std::abs(ynew.u));
            const double scv = cfg_.abs_tol + cfg_.rel_tol * std::max(std::abs(y_.v), std::abs(ynew.v));
            const double eu = errv.u / scu;
            const double ev = errv.v / scv;
            const double err = std::sqrt(0.5 * (eu * eu + ev * ev));

            if (err <= 1.0) {
                // dense-output coefficients for this step
                const Vec2 dy = ynew - y_;
                r1_ = y_;
                r2_ = dy;
                r3_ = h * k1_ - dy;
                r4_ = dy - h * k7 - r3_;
                r5_ = h * (d1 * k1_ + d3 * k3 + d4 * k4 + d5 * k5 + d6 * k6 + d7 * k7);
                t_prev_ = t_;
                y_prev_ = y_;
                t_ += h;
                y_ = ynew;
                k1_ = k7;
                const double fac = safety * std::pow(std::max(err, 1e-10), -alpha) * std::pow(err_old_, beta);
                h_ = h * std::clamp(fac, fac_min, fac_max);
                h_ = std::min(h_, cfg_.max_step);
                err_old_ = std::max(err, 1e-10);
                return StepResult::Accepted;
            }
            const double fac = std::max(fac_min, safety * std::pow(err, -alpha));
            h_ = h * fac;
        }
        underflow_ = true;
        return StepResult::Underflow;
    }

    /// State inside the last accepted step; theta in [0,1].
    Vec2 interpolate(double theta) const {
        const double th1 = 1.0 - theta;
        return r1_ + theta * (r2_ + th1 * (r3_ + theta * (r4_ + th1 * r5_)));
    }

    /// Time matching interpolate().
    double interpolate_time(double theta) const { return t_prev_ + theta * (t_ - t_prev_); }

  private:
    double initial_step() const {
        const double sc = cfg_.abs_tol + cfg_.rel_tol * std::max(1.0, y_.norm());
        const double d0 = y_.norm() / sc;
        const double d1 = k1_.norm() / sc;
        double h = (d0 > 1e-10 && d1 > 1e-10) ? 0.01 * d0 / d1 : 1e-6;
        return std::min({h, cfg_.max_step, cfg_.max_time});
    }

    // Butcher tableau (Dormand & Prince 1980)
    static constexpr double a21 = 1.0 / 5.0;
    static constexpr double a31 = 3.0 / 40.0, a32 = 9.0 / 40.0;
    static constexpr double a41 = 44.0 / 45.0, a42 = -56.0 / 15.0, a43 = 32.0 / 9.0;
    static constexpr double a51 = 19372.0 / 6561.0, a52 = -25360.0 / 2187.0, a53 = 64448.0 / 6561.0,
                            a54 = -212.0 / 729.0;
    static constexpr double a61 = 9017.0 / 3168.0, a62 = -355.0 / 33.0, a63 = 46732.0 / 5247.0,
                            a64 = 49.0 / 176.0, a65 = -5103.0 / 18656.0;
    static constexpr double b1 = 35.0 / 384.0, b3 = 500.0 / 1113.0, b4 = 125.0 / 192.0,
                            b5 = -2187.0 / 6784.0, b6 = 11.0 / 84.0;
    static constexpr double e1 = 71.0 / 57600.0, e3 = -71.0 / 16695.0, e4 = 71.0 / 1920.0,
                            e5 = -17253.0 / 339200.0, e6 = 22.0 / 525.0, e7 = -1.0 / 40.0;
    static constexpr double d1 = -12715105075.0 / 11282082432.0, d3 = 87487479700.0 / 32700410799.0,
                            d4 = -10690763975.0 / 1880347072.0, d5 = 701980252875.0 / 199316789632.0,
                            d6 = -1453857185.0 / 822651844.0, d7 = 69997945.0 / 29380423.0;
    static constexpr double safety = 0.9, alpha = 0.7 / 5.0, beta = 0.4 / 5.0;
    static constexpr double fac_min = 0.2, fac_max = 10.0;

    RHS rhs_;
    IntegrationConfig cfg_;
    double t_ = 0.0, t_prev_ = 0.0;
    Vec2 y_, y_prev_, k1_;
    Vec2 r1_, r2_, r3_, r4_, r5_;
    double h_ = 0.0, err_old_ = 1e-4;
    bool underflow_ = false;
};

/// Locates a sign change of `fn` inside the last accepted step of `stepper`
/// by bisection on the dense output; returns theta in [0,1].
template <class Stepper, class Fn>
double locate_event(const Stepper& stepper, Fn fn, double f_lo, int iterations = 60) {
    double lo = 0.0, hi = 1.0;
    for (int i = 0; i < iterations; ++i) {
        const double mid = 0.5 * (lo + hi);
        const double fm = fn(stepper.interpolate(mid));
        if ((fm > 0.0) == (f_lo > 0.0))
            lo = mid;
        else
            hi = mid;
    }
    return 0.5 * (lo + hi);
}

} // namespace hta

#endif
