#ifndef HTA_TYPES_HPP
#define HTA_TYPES_HPP

#include <cmath>
#include <complex>
#include <stdexcept>
#include <string>

namespace hta {

/// Thrown when a numerical procedure fails (bracket without sign change,
/// step-size underflow treated as fatal by a caller, missing cycle, ...).
class NumericalError : public std::runtime_error {
  public:
    explicit NumericalError(const std::string& what) : std::runtime_error(what) {}
};

/// Point or tangent vector in the (u,v) phase plane.
struct Vec2 {
    double u = 0.0;
    double v = 0.0;

    Vec2() = default;
    Vec2(double u_, double v_) : u(u_), v(v_) {}

    Vec2 operator+(const Vec2& o) const { return {u + o.u, v + o.v}; }
    Vec2 operator-(const Vec2& o) const { return {u - o.u, v - o.v}; }
    Vec2 operator*(double c) const { return {u * c, v * c}; }
    Vec2& operator+=(const Vec2& o) {
        u += o.u;
        v += o.v;
        return *this;
    }
    double norm() const { return std::hypot(u, v); }
    double sup_norm() const { return std::max(std::abs(u), std::abs(v)); }
};

inline Vec2 operator*(double c, const Vec2& x) { return x * c; }

inline double distance(const Vec2& a, const Vec2& b) { return (a - b).norm(); }

using State = Vec2;

/// 2x2 real matrix, row major.
struct Mat2 {
    double a11 = 0.0, a12 = 0.0;
    double a21 = 0.0, a22 = 0.0;

    double trace() const { return a11 + a22; }
    double det() const { return a11 * a22 - a12 * a21; }

    Vec2 operator*(const Vec2& x) const { return {a11 * x.u + a12 * x.v, a21 * x.u + a22 * x.v}; }
    Mat2 operator*(const Mat2& o) const {
        return {a11 * o.a11 + a12 * o.a21, a11 * o.a12 + a12 * o.a22,
                a21 * o.a11 + a22 * o.a21, a21 * o.a12 + a22 * o.a22};
    }
    double sup_norm() const {
        return std::max(std::max(std::abs(a11), std::abs(a12)), std::max(std::abs(a21), std::abs(a22)));
    }
};

/// Eigen-decomposition of a 2x2 real matrix. Eigenvalues come as a complex
/// conjugate pair or two reals; eigenvectors are only meaningful in the real
/// case (complex pair -> `has_real_eigenvectors` is false).
struct EigenDecomposition {
    std::complex<double> lambda1;
    std::complex<double> lambda2;
    bool has_real_eigenvectors = false;
    Vec2 vec1;
    Vec2 vec2;
};

EigenDecomposition eigen_2x2(const Mat2& m);

} // namespace hta

#endif
