#pragma once

#include <array>
#include <cmath>
#include <complex>
#include <type_traits>

#include "photonbundle/vec.hpp"

namespace pb {

/// Forward-mode dual number with N partial derivatives. The scalar base T may
/// itself be a Dual, which yields exact higher derivatives by nesting.
template <class T, int N>
struct Dual {
  T v{};
  std::array<T, N> d{};

  Dual() = default;

  template <class U>
    requires std::is_convertible_v<U, T>
  Dual(const U& x) : v(x) {}  // NOLINT: implicit promotion of constants

  Dual(T value, std::array<T, N> deriv) : v(std::move(value)), d(std::move(deriv)) {}

  /// Seed variable i with unit derivative.
  static Dual variable(const T& x, int i) {
    Dual r(x);
    r.d[static_cast<std::size_t>(i)] = T(1.0);
    return r;
  }

  friend Dual operator+(const Dual& a, const Dual& b) {
    Dual r(a.v + b.v);
    for (int i = 0; i < N; ++i) r.d[i] = a.d[i] + b.d[i];
    return r;
  }
  friend Dual operator-(const Dual& a, const Dual& b) {
    Dual r(a.v - b.v);
    for (int i = 0; i < N; ++i) r.d[i] = a.d[i] - b.d[i];
    return r;
  }
  friend Dual operator-(const Dual& a) {
    Dual r(-a.v);
    for (int i = 0; i < N; ++i) r.d[i] = -a.d[i];
    return r;
  }
  friend Dual operator*(const Dual& a, const Dual& b) {
    Dual r(a.v * b.v);
    for (int i = 0; i < N; ++i) r.d[i] = a.d[i] * b.v + a.v * b.d[i];
    return r;
  }
  friend Dual operator/(const Dual& a, const Dual& b) {
    const T q = a.v / b.v;
    Dual r(q);
    for (int i = 0; i < N; ++i) r.d[i] = (a.d[i] - q * b.d[i]) / b.v;
    return r;
  }

  Dual& operator+=(const Dual& o) { return *this = *this + o; }
  Dual& operator-=(const Dual& o) { return *this = *this - o; }
  Dual& operator*=(const Dual& o) { return *this = *this * o; }
  Dual& operator/=(const Dual& o) { return *this = *this / o; }
};

using std::cos;
using std::exp;
using std::sin;
using std::sqrt;

template <class T, int N>
Dual<T, N> sqrt(const Dual<T, N>& a) {
  const T s = sqrt(a.v);
  Dual<T, N> r(s);
  const T half = T(0.5) / s;
  for (int i = 0; i < N; ++i) r.d[i] = a.d[i] * half;
  return r;
}

template <class T, int N>
Dual<T, N> exp(const Dual<T, N>& a) {
  const T e = exp(a.v);
  Dual<T, N> r(e);
  for (int i = 0; i < N; ++i) r.d[i] = a.d[i] * e;
  return r;
}

template <class T, int N>
Dual<T, N> sin(const Dual<T, N>& a) {
  const T s = sin(a.v), c = cos(a.v);
  Dual<T, N> r(s);
  for (int i = 0; i < N; ++i) r.d[i] = a.d[i] * c;
  return r;
}

template <class T, int N>
Dual<T, N> cos(const Dual<T, N>& a) {
  const T s = sin(a.v), c = cos(a.v);
  Dual<T, N> r(c);
  for (int i = 0; i < N; ++i) r.d[i] = -(a.d[i] * s);
  return r;
}

inline double conjugate(double x) { return x; }
inline cplx conjugate(const cplx& x) { return std::conj(x); }

/// Componentwise conjugation; valid because our dual parameters are real.
template <class T, int N>
Dual<T, N> conjugate(const Dual<T, N>& a) {
  Dual<T, N> r(conjugate(a.v));
  for (int i = 0; i < N; ++i) r.d[i] = conjugate(a.d[i]);
  return r;
}

inline double value(double x) { return x; }
inline cplx value(const cplx& x) { return x; }

/// Strip all derivative levels, returning the underlying double/complex value.
template <class T, int N>
auto value(const Dual<T, N>& a) {
  return value(a.v);
}

// ---------------------------------------------------------------------------
// Complexification of a real-like scalar type: double -> complex<double>,
// Dual<T,N> -> Dual<complexified T, N>.

template <class S>
struct Complexify {
  using type = cplx;
};
template <class T, int N>
struct Complexify<Dual<T, N>> {
  using type = Dual<typename Complexify<T>::type, N>;
};
template <class S>
using complexify_t = typename Complexify<S>::type;

inline cplx to_cplx(double x) { return cplx(x); }
inline cplx to_cplx(const cplx& x) { return x; }

template <class T, int N>
complexify_t<Dual<T, N>> to_cplx(const Dual<T, N>& a) {
  complexify_t<Dual<T, N>> r(to_cplx(a.v));
  for (int i = 0; i < N; ++i) r.d[i] = to_cplx(a.d[i]);
  return r;
}

template <class S>
Vec3<complexify_t<S>> to_cplx(const Vec3<S>& v) {
  return {to_cplx(v[0]), to_cplx(v[1]), to_cplx(v[2])};
}

// ---------------------------------------------------------------------------
// Derivative levels used by the section/operator machinery.

using R1 = Dual<double, 3>;
using R2 = Dual<R1, 3>;
using R3 = Dual<R2, 3>;
using C1 = Dual<cplx, 3>;
using C2 = Dual<C1, 3>;
using C3 = Dual<C2, 3>;

/// Lift a point to dual components seeded for the gradient w.r.t. (kx,ky,kz).
template <class S>
Vec3<Dual<S, 3>> lift(const Vec3<S>& k) {
  Vec3<Dual<S, 3>> r;
  for (int i = 0; i < 3; ++i) r[i] = Dual<S, 3>::variable(k[i], i);
  return r;
}

}  // namespace pb
