#include "hta/model.hpp"

#include <sstream>

namespace hta {

namespace {

[[noreturn]] void reject(const std::string& msg) { throw std::invalid_argument(msg); }

void require_positive(double value, const char* name) {
    if (!(value > 0.0) || !std::isfinite(value)) {
        std::ostringstream os;
        os << "parameter " << name << " must be positive and finite, got " << value;
        reject(os.str());
    }
}

} // namespace

void DimensionalParams::validate() const {
    require_positive(r, "r");
    require_positive(s, "s");
    require_positive(K, "K");
    require_positive(q, "q");
    require_positive(n, "n");
    require_positive(a, "a");
    require_positive(m, "m");
    if (!(a < K)) reject("half-saturation a must satisfy a < K");
    if (!(m < K)) reject("Allee threshold m must satisfy m < K (strong Allee effect)");
}

void NondimParams::validate() const {
    if (!(A > 0.0 && A < 1.0)) reject("A must lie in (0,1)");
    if (!(M > 0.0 && M < 1.0)) reject("M must lie in (0,1)");
    require_positive(Q, "Q");
    require_positive(S, "S");
}

NondimParams nondimensionalize(const DimensionalParams& p) {
    p.validate();
    NondimParams out{p.a / p.K, p.m / p.K, p.n * p.q / (p.r * p.K), p.s / (p.r * p.K)};
    out.validate();
    return out;
}

double growth_g(const NondimParams& p, double u) { return (u + p.A) * (1.0 - u) * (u - p.M); }

double growth_g_prime(const NondimParams& p, double u) {
    return (1.0 - u) * (u - p.M) + (u + p.A) * (1.0 - u) - (u + p.A) * (u - p.M);
}

double growth_g_second(const NondimParams& p, double u) { return -6.0 * u + 2.0 * (p.M + 1.0 - p.A); }

Vec2 vector_field(const NondimParams& p, const Vec2& s) {
    const double u = s.u;
    const double v = s.v;
    return {u * u * (growth_g(p, u) - p.Q * v), p.S * (u + p.A) * (u - v) * v};
}

Vec2 dimensional_vector_field(const DimensionalParams& p, double x, double y) {
    if (!(x > 0.0)) throw std::invalid_argument("dimensional system is singular for x <= 0");
    const double dx = p.r * x * (1.0 - x / p.K) * (x - p.m) - p.q * x * y / (x + p.a);
    const double dy = p.s * y * (1.0 - y / (p.n * x));
    return {dx, dy};
}

Mat2 jacobian(const NondimParams& p, const Vec2& s) {
    const double u = s.u;
    const double v = s.v;
    Mat2 j;
    j.a11 = u * (u * growth_g_prime(p, u) + 2.0 * (growth_g(p, u) - p.Q * v));
    j.a12 = -p.Q * u * u;
    j.a21 = p.S * v * (p.A + 2.0 * u - v);
    j.a22 = p.S * (u - 2.0 * v) * (p.A + u);
    return j;
}

Mat2 jacobian_fd(const NondimParams& p, const Vec2& s, double h) {
    const Vec2 fu_p = vector_field(p, {s.u + h, s.v});
    const Vec2 fu_m = vector_field(p, {s.u - h, s.v});
    const Vec2 fv_p = vector_field(p, {s.u, s.v + h});
    const Vec2 fv_m = vector_field(p, {s.u, s.v - h});
    Mat2 j;
    j.a11 = (fu_p.u - fu_m.u) / (2.0 * h);
    j.a21 = (fu_p.v - fu_m.v) / (2.0 * h);
    j.a12 = (fv_p.u - fv_m.u) / (2.0 * h);
    j.a22 = (fv_p.v - fv_m.v) / (2.0 * h);
    return j;
}

EigenDecomposition eigen_2x2(const Mat2& m) {
    EigenDecomposition e;
    const double tr = m.trace();
    const double det = m.det();
    const double disc = tr * tr - 4.0 * det;
    if (disc >= 0.0) {
        const double root = std::sqrt(disc);
        e.lambda1 = {(tr + root) / 2.0, 0.0};
        e.lambda2 = {(tr - root) / 2.0, 0.0};
        e.has_real_eigenvectors = true;
        auto eigvec = [&](double lambda) -> Vec2 {
            // pick the better-conditioned row of (m - lambda I)
            const double r1u = m.a11 - lambda, r1v = m.a12;
            const double r2u = m.a21, r2v = m.a22 - lambda;
            Vec2 vec;
            if (std::max(std::abs(r1u), std::abs(r1v)) >= std::max(std::abs(r2u), std::abs(r2v)))
                vec = {-r1v, r1u};
            else
                vec = {-r2v, r2u};
            const double n = vec.norm();
            if (n == 0.0) return {1.0, 0.0}; // multiple of identity
            return vec * (1.0 / n);
        };
        e.vec1 = eigvec(e.lambda1.real());
        e.vec2 = eigvec(e.lambda2.real());
    } else {
        const double root = std::sqrt(-disc);
        e.lambda1 = {tr / 2.0, root / 2.0};
        e.lambda2 = {tr / 2.0, -root / 2.0};
        e.has_real_eigenvectors = false;
    }
    return e;
}

} // namespace hta
