#pragma once

#include <cmath>
#include <array>
#include <ostream>

namespace knotkit {

struct Vec3 {
  double x = 0.0, y = 0.0, z = 0.0;

  constexpr Vec3() = default;
  constexpr Vec3(double x_, double y_, double z_) : x(x_), y(y_), z(z_) {}

  constexpr Vec3 operator+(const Vec3& o) const { return {x + o.x, y + o.y, z + o.z}; }
  constexpr Vec3 operator-(const Vec3& o) const { return {x - o.x, y - o.y, z - o.z}; }
  constexpr Vec3 operator-() const { return {-x, -y, -z}; }
  constexpr Vec3 operator*(double s) const { return {x * s, y * s, z * s}; }
  constexpr Vec3 operator/(double s) const { return {x / s, y / s, z / s}; }
  Vec3& operator+=(const Vec3& o) { x += o.x; y += o.y; z += o.z; return *this; }
  Vec3& operator-=(const Vec3& o) { x -= o.x; y -= o.y; z -= o.z; return *this; }
  Vec3& operator*=(double s) { x *= s; y *= s; z *= s; return *this; }

  constexpr double dot(const Vec3& o) const { return x * o.x + y * o.y + z * o.z; }
  constexpr Vec3 cross(const Vec3& o) const {
    return {y * o.z - z * o.y, z * o.x - x * o.z, x * o.y - y * o.x};
  }
  double norm2() const { return dot(*this); }
  double norm() const { return std::sqrt(norm2()); }
  Vec3 normalized() const {
    const double n = norm();
    return {x / n, y / n, z / n};
  }
  bool operator==(const Vec3& o) const { return x == o.x && y == o.y && z == o.z; }
};

inline constexpr Vec3 operator*(double s, const Vec3& v) { return v * s; }

inline double dot(const Vec3& a, const Vec3& b) { return a.dot(b); }
inline Vec3 cross(const Vec3& a, const Vec3& b) { return a.cross(b); }

// Scalar triple product <a, b, c> = a . (b x c).
inline double mixed(const Vec3& a, const Vec3& b, const Vec3& c) { return a.dot(b.cross(c)); }

inline double distance(const Vec3& a, const Vec3& b) { return (a - b).norm(); }

// Any unit vector orthogonal to a unit vector u.
inline Vec3 any_orthogonal(const Vec3& u) {
  const Vec3 trial = std::abs(u.x) < 0.9 ? Vec3{1, 0, 0} : Vec3{0, 1, 0};
  return u.cross(trial).normalized();
}

inline std::ostream& operator<<(std::ostream& os, const Vec3& v) {
  return os << "(" << v.x << ", " << v.y << ", " << v.z << ")";
}

struct Mat3 {
  // Row-major.
  std::array<double, 9> m{1, 0, 0, 0, 1, 0, 0, 0, 1};

  static Mat3 identity() { return {}; }

  Vec3 operator*(const Vec3& v) const {
    return {m[0] * v.x + m[1] * v.y + m[2] * v.z,
            m[3] * v.x + m[4] * v.y + m[5] * v.z,
            m[6] * v.x + m[7] * v.y + m[8] * v.z};
  }
  Mat3 operator*(const Mat3& o) const {
    Mat3 r;
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) {
        double s = 0;
        for (int k = 0; k < 3; ++k) s += m[3 * i + k] * o.m[3 * k + j];
        r.m[3 * i + j] = s;
      }
    return r;
  }
  Mat3 transposed() const {
    Mat3 r;
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) r.m[3 * i + j] = m[3 * j + i];
    return r;
  }
  double det() const {
    return m[0] * (m[4] * m[8] - m[5] * m[7]) - m[1] * (m[3] * m[8] - m[5] * m[6]) +
           m[2] * (m[3] * m[7] - m[4] * m[6]);
  }

  // Rotation taking unit vector `from` to unit vector `to` (minimal arc).
  static Mat3 rotation_between(const Vec3& from, const Vec3& to) {
    const Vec3 v = from.cross(to);
    const double c = from.dot(to);
    if (c < -1.0 + 1e-14) {
      // Antipodal: rotate by pi around any orthogonal axis.
      return from_axis_angle(any_orthogonal(from), M_PI);
    }
    const double k = 1.0 / (1.0 + c);
    Mat3 r;
    r.m = {v.x * v.x * k + c,     v.x * v.y * k - v.z, v.x * v.z * k + v.y,
           v.y * v.x * k + v.z,  v.y * v.y * k + c,   v.y * v.z * k - v.x,
           v.z * v.x * k - v.y,  v.z * v.y * k + v.x, v.z * v.z * k + c};
    return r;
  }

  static Mat3 from_axis_angle(const Vec3& axis, double angle) {
    const Vec3 u = axis.normalized();
    const double c = std::cos(angle), s = std::sin(angle), t = 1 - c;
    Mat3 r;
    r.m = {t * u.x * u.x + c,        t * u.x * u.y - s * u.z,  t * u.x * u.z + s * u.y,
           t * u.x * u.y + s * u.z,  t * u.y * u.y + c,        t * u.y * u.z - s * u.x,
           t * u.x * u.z - s * u.y,  t * u.y * u.z + s * u.x,  t * u.z * u.z + c};
    return r;
  }
};

}  // namespace knotkit
