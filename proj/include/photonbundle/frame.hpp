#pragma once

#include <array>
#include <cmath>
#include <utility>

#include "photonbundle/core.hpp"
#include "photonbundle/errors.hpp"
#include "photonbundle/section.hpp"

namespace pb {

using Mat2d = std::array<std::array<double, 2>, 2>;

struct Mat2c {
  cplx m[2][2]{};

  friend Mat2c operator*(const Mat2c& a, const Mat2c& b) {
    Mat2c r;
    for (int i = 0; i < 2; ++i) {
      for (int j = 0; j < 2; ++j) {
        r.m[i][j] = a.m[i][0] * b.m[0][j] + a.m[i][1] * b.m[1][j];
      }
    }
    return r;
  }

  cplx det() const { return m[0][0] * m[1][1] - m[0][1] * m[1][0]; }
};

inline Mat2c to_mat2c(const Mat2d& a) {
  Mat2c r;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) r.m[i][j] = a[i][j];
  return r;
}

/// The nonvanishing section u = E1 + i E2 with E1 = (0, kz, -ky) and
/// E2 = (-kz, 0, kx); |u|^2 = kx^2 + ky^2 + 2 kz^2 > 0 on all of R^3 \ {0}.
inline FiberVector section_u(const WaveVector& k) {
  const Vec3c e{cplx(0.0, -k.kz()), cplx(k.kz(), 0.0), cplx(-k.ky(), k.kx())};
  return FiberVector(k, e);
}

inline Section section_u_section() {
  return Section::analytic([](const auto& k) {
    using C = complexify_t<std::decay_t<decltype(k[0])>>;
    const C i = C(kImag);
    return Vec3<C>{i * (-to_cplx(k[2])), to_cplx(k[2]),
                   -to_cplx(k[1]) + i * to_cplx(k[0])};
  });
}

enum class Hemisphere { upper, lower };

/// Tangent frames on the closed hemispheres: v1 keeps a constant angle with
/// each meridian, v2 is its 90-degree counterclockwise companion (seen from
/// outside the sphere). Components in the (theta_hat, phi_hat) basis:
///   v1+ = ( sin phi, cos phi)    v2+ = (-cos phi,  sin phi)
///   v1- = (-sin phi, cos phi)    v2- = (-cos phi, -sin phi)
inline Mat2d hemisphere_frame_components(Hemisphere h, double phi) {
  const double s = std::sin(phi), c = std::cos(phi);
  if (h == Hemisphere::upper) return Mat2d{{{s, -c}, {c, s}}};
  return Mat2d{{{-s, -c}, {c, -s}}};
}

inline std::pair<Vec3d, Vec3d> hemisphere_frame(Hemisphere h, const SphericalPoint& p) {
  if (p.near_pole()) {
    throw PoleSingularity("hemisphere_frame: chart undefined at a pole");
  }
  const double half = M_PI / 2.0;
  if (h == Hemisphere::upper && p.theta > half + 1e-12) {
    throw WrongHemisphere("hemisphere_frame: point below the equator");
  }
  if (h == Hemisphere::lower && p.theta < half - 1e-12) {
    throw WrongHemisphere("hemisphere_frame: point above the equator");
  }
  const SphericalBasis b = spherical_basis(p);
  const Mat2d m = hemisphere_frame_components(h, p.phi);
  return {m[0][0] * b.theta_hat + m[1][0] * b.phi_hat,
          m[0][1] * b.theta_hat + m[1][1] * b.phi_hat};
}

/// Equatorial transition matrix between the hemisphere frames: a rotation of
/// the lower frame by -2 phi.
inline Mat2d clutching(double phi) {
  const double c = std::cos(2.0 * phi), s = std::sin(2.0 * phi);
  return Mat2d{{{c, s}, {-s, c}}};
}

/// h(t) = exp(-1/t) for t > 0, 0 otherwise. IEEE exp underflows to exact 0
/// well before 1/t overflows, so no further cutoff is needed.
inline double smooth_step_h(double t) {
  if (t <= 0.0) return 0.0;
  return std::exp(-1.0 / t);
}

/// Monotonic C-infinity step from pi/2 to pi with all derivatives vanishing
/// at both ends.
inline double smooth_step_g(double theta) {
  const double a = smooth_step_h(theta - M_PI / 2.0);
  const double b = smooth_step_h(M_PI - theta);
  return (M_PI / 2.0) * (1.0 + a / (a + b));
}

/// The S^2 point (x, y, z) whose SU(2) image interpolates the clutching loop
/// (theta = pi/2) down to the identity (theta = pi).
inline Vec3d homotopy_sphere_point(double theta, double phi) {
  const double st = std::sin(theta), ct = std::cos(theta);
  const double sp = std::sin(phi);
  return Vec3d{std::cos(2.0 * phi) * st * st + ct * ct,
               std::sin(2.0 * phi) * st,
               -sp * sp * std::sin(2.0 * theta)};
}

inline Mat2c su2_embed(const Vec3d& xyz) {
  Mat2c f;
  f.m[0][0] = cplx(xyz[0], xyz[2]);
  f.m[0][1] = cplx(xyz[1], 0.0);
  f.m[1][0] = cplx(-xyz[1], 0.0);
  f.m[1][1] = cplx(xyz[0], -xyz[2]);
  return f;
}

/// Smoothed homotopy: equals the clutching matrix at theta = pi/2 and the
/// identity at theta = pi, with all theta-derivatives flat at both ends.
inline Mat2c smooth_homotopy(double theta, double phi) {
  if (theta < M_PI / 2.0 - 1e-12 || theta > M_PI + 1e-12) {
    throw DomainError("smooth_homotopy: theta outside [pi/2, pi]");
  }
  return su2_embed(homotopy_sphere_point(smooth_step_g(theta), phi));
}

/// The smooth global frame (v~1, v~2): the upper-hemisphere frame extended
/// over the lower hemisphere by the smoothed homotopy, then pulled back to
/// all of R^3 \ {0} by v~i(k) = vi(k/|k|).
class GlobalFrame {
 public:
  enum class Cleanup { raw, orthonormalize };

  /// Frame columns in the (theta_hat, phi_hat) chart basis.
  static Mat2c chart_components(double theta, double phi) {
    const Mat2d upper = hemisphere_frame_components(Hemisphere::upper, phi);
    if (theta <= M_PI / 2.0) return to_mat2c(upper);
    const Mat2d lower = hemisphere_frame_components(Hemisphere::lower, phi);
    return smooth_homotopy(theta, phi) * to_mat2c(lower);
  }

  std::pair<Vec3c, Vec3c> eval(const SphericalPoint& p,
                               Cleanup mode = Cleanup::raw) const {
    if (p.near_pole()) {
      // Documented chart choice: the phi = 0 meridian limit. At the north
      // pole that pins v~1 to +y, at the south pole the homotopy is the
      // identity and the reflected frame gives (y, x).
      const Vec3d yhat{0.0, 1.0, 0.0}, xhat{1.0, 0.0, 0.0};
      if (p.theta < M_PI / 2.0) return {to_complex(yhat), to_complex(-xhat)};
      return {to_complex(yhat), to_complex(xhat)};
    }
    const SphericalBasis b = spherical_basis(p);
    const Mat2c m = chart_components(p.theta, p.phi);
    const Vec3c th = to_complex(b.theta_hat), ph = to_complex(b.phi_hat);
    Vec3c v1 = m.m[0][0] * th + m.m[1][0] * ph;
    Vec3c v2 = m.m[0][1] * th + m.m[1][1] * ph;
    if (mode == Cleanup::orthonormalize) {
      // Modified Gram-Schmidt, diagnostic use only.
      v1 = (1.0 / pb::norm(v1)) * v1;
      v2 = v2 - hdot(v1, v2) * v1;
      v2 = (1.0 / pb::norm(v2)) * v2;
    }
    return {v1, v2};
  }

  std::pair<Vec3c, Vec3c> eval(const WaveVector& k,
                               Cleanup mode = Cleanup::raw) const {
    return eval(SphericalPoint::from_wavevector(k), mode);
  }

  FiberVector v1(const WaveVector& k) const { return FiberVector(k, eval(k).first); }
  FiberVector v2(const WaveVector& k) const { return FiberVector(k, eval(k).second); }

  /// The frame member (0 or 1) as a plain Section.
  Section as_section(int which) const {
    GlobalFrame f = *this;
    return Section::sampled([f, which](const WaveVector& k) {
      const auto pair = f.eval(k);
      return which == 0 ? pair.first : pair.second;
    });
  }
};

inline GlobalFrame global_frame() { return GlobalFrame{}; }

}  // namespace pb
