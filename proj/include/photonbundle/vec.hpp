#pragma once

#include <array>
#include <cmath>
#include <complex>

namespace pb {

using cplx = std::complex<double>;

inline constexpr cplx kImag{0.0, 1.0};

/// Fixed-size 3-vector over an arbitrary scalar ring. Instantiated with
/// double, std::complex<double>, and nested dual scalars alike.
template <class T>
struct Vec3 {
  std::array<T, 3> c{};

  Vec3() = default;
  Vec3(T x, T y, T z) : c{std::move(x), std::move(y), std::move(z)} {}

  T& operator[](int i) { return c[static_cast<std::size_t>(i)]; }
  const T& operator[](int i) const { return c[static_cast<std::size_t>(i)]; }

  Vec3& operator+=(const Vec3& o) {
    for (int i = 0; i < 3; ++i) c[i] = c[i] + o.c[i];
    return *this;
  }
  Vec3& operator-=(const Vec3& o) {
    for (int i = 0; i < 3; ++i) c[i] = c[i] - o.c[i];
    return *this;
  }
  Vec3& operator*=(const T& s) {
    for (int i = 0; i < 3; ++i) c[i] = c[i] * s;
    return *this;
  }

  friend Vec3 operator+(Vec3 a, const Vec3& b) { return a += b; }
  friend Vec3 operator-(Vec3 a, const Vec3& b) { return a -= b; }
  friend Vec3 operator-(const Vec3& a) { return Vec3{-a.c[0], -a.c[1], -a.c[2]}; }
  friend Vec3 operator*(Vec3 a, const T& s) { return a *= s; }
  friend Vec3 operator*(const T& s, Vec3 a) { return a *= s; }
};

using Vec3d = Vec3<double>;
using Vec3c = Vec3<cplx>;

/// Bilinear dot product (no conjugation on either slot).
template <class T>
T dot(const Vec3<T>& a, const Vec3<T>& b) {
  return a[0] * b[0] + a[1] * b[1] + a[2] * b[2];
}

template <class T>
Vec3<T> cross(const Vec3<T>& a, const Vec3<T>& b) {
  return Vec3<T>{a[1] * b[2] - a[2] * b[1],
                 a[2] * b[0] - a[0] * b[2],
                 a[0] * b[1] - a[1] * b[0]};
}

inline Vec3c to_complex(const Vec3d& v) { return Vec3c{v[0], v[1], v[2]}; }

/// Sesquilinear product, conjugating the first slot.
inline cplx hdot(const Vec3c& a, const Vec3c& b) {
  return std::conj(a[0]) * b[0] + std::conj(a[1]) * b[1] + std::conj(a[2]) * b[2];
}

inline double norm(const Vec3d& v) { return std::sqrt(dot(v, v)); }

inline double norm(const Vec3c& v) {
  return std::sqrt(std::norm(v[0]) + std::norm(v[1]) + std::norm(v[2]));
}

inline Vec3d normalized(const Vec3d& v) {
  const double n = norm(v);
  return Vec3d{v[0] / n, v[1] / n, v[2] / n};
}

inline Vec3c conj(const Vec3c& v) {
  return Vec3c{std::conj(v[0]), std::conj(v[1]), std::conj(v[2])};
}

inline Vec3d real(const Vec3c& v) {
  return Vec3d{v[0].real(), v[1].real(), v[2].real()};
}

inline Vec3d imag(const Vec3c& v) {
  return Vec3d{v[0].imag(), v[1].imag(), v[2].imag()};
}

inline Vec3d unit_axis(int a) {
  Vec3d e{0.0, 0.0, 0.0};
  e[a] = 1.0;
  return e;
}

/// Rotation of v about a unit axis by angle (right-handed/active),
/// via the Rodrigues formula.
inline Vec3d rotate_about(const Vec3d& axis, double angle, const Vec3d& v) {
  const Vec3d n = normalized(axis);
  const double c = std::cos(angle), s = std::sin(angle);
  return c * v + s * cross(n, v) + (1.0 - c) * dot(n, v) * n;
}

inline Vec3c rotate_about(const Vec3d& axis, double angle, const Vec3c& v) {
  const Vec3d re = rotate_about(axis, angle, real(v));
  const Vec3d im = rotate_about(axis, angle, imag(v));
  return to_complex(re) + kImag * to_complex(im);
}

}  // namespace pb
