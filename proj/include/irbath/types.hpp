#pragma once

#include <array>
#include <cmath>
#include <complex>

namespace irbath {

using cplx = std::complex<double>;
using Vec3 = std::array<double, 3>;
using Vec4 = std::array<double, 4>;

inline double dot(const Vec3& a, const Vec3& b) { return a[0] * b[0] + a[1] * b[1] + a[2] * b[2]; }
inline double norm2(const Vec3& a) { return dot(a, a); }
inline double norm(const Vec3& a) { return std::sqrt(norm2(a)); }
inline Vec3 operator+(const Vec3& a, const Vec3& b) { return {a[0] + b[0], a[1] + b[1], a[2] + b[2]}; }
inline Vec3 operator-(const Vec3& a, const Vec3& b) { return {a[0] - b[0], a[1] - b[1], a[2] - b[2]}; }
inline Vec3 operator*(double s, const Vec3& a) { return {s * a[0], s * a[1], s * a[2]}; }

/// Metric diag(+,-,-,-).
inline double mdot(const Vec4& a, const Vec4& b) { return a[0] * b[0] - a[1] * b[1] - a[2] * b[2] - a[3] * b[3]; }

inline double energy(double m, const Vec3& q) { return std::sqrt(m * m + norm2(q)); }
inline Vec4 on_shell(double m, const Vec3& q) { return {energy(m, q), q[0], q[1], q[2]}; }

}  // namespace irbath
