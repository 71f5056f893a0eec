#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>

#include <Eigen/Dense>

#include "photonbundle/dual.hpp"
#include "photonbundle/errors.hpp"
#include "photonbundle/vec.hpp"

namespace pb {

/// A point of momentum space R^3 minus the origin, the base manifold of the
/// photon bundle. Construction rejects vectors within 1e-12 of the excluded
/// origin relative to the working scale.
class WaveVector {
 public:
  WaveVector(double kx, double ky, double kz, double working_scale = 1.0)
      : k_{kx, ky, kz} {
    const double n = pb::norm(k_);
    if (!(n > 1e-12 * working_scale)) {
      throw InvariantViolation("WaveVector: |k| too close to the excluded origin");
    }
    norm_ = n;
  }

  explicit WaveVector(const Vec3d& k, double working_scale = 1.0)
      : WaveVector(k[0], k[1], k[2], working_scale) {}

  double kx() const { return k_[0]; }
  double ky() const { return k_[1]; }
  double kz() const { return k_[2]; }
  const Vec3d& vec() const { return k_; }
  double norm() const { return norm_; }
  Vec3d unit() const { return Vec3d{k_[0] / norm_, k_[1] / norm_, k_[2] / norm_}; }

  friend bool same_base(const WaveVector& a, const WaveVector& b, double tol = 1e-12) {
    const double scale = std::max(a.norm(), b.norm());
    return pb::norm(a.vec() - b.vec()) <= tol * scale;
  }

 private:
  Vec3d k_;
  double norm_;
};

/// An element of the photon bundle fiber: a complex transverse amplitude E
/// attached to a base point k. The Gauss constraint k.E = 0 is enforced at
/// construction to 1e-12 relative.
class FiberVector {
 public:
  FiberVector(WaveVector base, Vec3c e) : base_(base), e_(e) {
    const double n = pb::norm(e_);
    const cplx leak = dot(to_complex(base_.unit()), e_);
    if (std::abs(leak) > 1e-12 * std::max(n, 1e-300)) {
      throw InvariantViolation("FiberVector: transversality violated");
    }
  }

  const WaveVector& base() const { return base_; }
  const Vec3c& e() const { return e_; }
  double norm() const { return pb::norm(e_); }

  /// Magnetic amplitude B = k_hat x E implied by the Maxwell eigenproblem.
  Vec3c b() const { return cross(to_complex(base_.unit()), e_); }

 private:
  WaveVector base_;
  Vec3c e_;
};

/// Polar coordinates on the unit sphere, theta in [0,pi], phi in [0,2pi).
struct SphericalPoint {
  double theta{};
  double phi{};

  SphericalPoint() = default;
  SphericalPoint(double t, double p) : theta(t), phi(p) {
    if (theta < -1e-12 || theta > M_PI + 1e-12) {
      throw InvariantViolation("SphericalPoint: theta outside [0, pi]");
    }
    theta = std::clamp(theta, 0.0, M_PI);
    phi = std::fmod(phi, 2.0 * M_PI);
    if (phi < 0.0) phi += 2.0 * M_PI;
  }

  Vec3d unit() const {
    return Vec3d{std::sin(theta) * std::cos(phi), std::sin(theta) * std::sin(phi),
                 std::cos(theta)};
  }

  static SphericalPoint from_unit(const Vec3d& u) {
    const double r = pb::norm(u);
    return SphericalPoint(std::acos(std::clamp(u[2] / r, -1.0, 1.0)),
                          std::atan2(u[1], u[0]));
  }

  static SphericalPoint from_wavevector(const WaveVector& k) {
    return from_unit(k.unit());
  }

  bool near_pole(double tol = 1e-12) const {
    return theta < tol || theta > M_PI - tol;
  }
};

struct SphericalBasis {
  Vec3d theta_hat;
  Vec3d phi_hat;
  Vec3d k_hat;
};

/// The orthonormal right-handed chart triple (theta_hat, phi_hat, k_hat).
inline SphericalBasis spherical_basis(const SphericalPoint& p) {
  if (p.near_pole()) {
    throw PoleSingularity("spherical_basis: chart undefined at a pole");
  }
  const double st = std::sin(p.theta), ct = std::cos(p.theta);
  const double sp = std::sin(p.phi), cp = std::cos(p.phi);
  return SphericalBasis{Vec3d{ct * cp, ct * sp, -st}, Vec3d{-sp, cp, 0.0},
                        Vec3d{st * cp, st * sp, ct}};
}

/// Hermitian product on a fiber, conjugate-linear in the first slot.
inline cplx hermitian_product(const FiberVector& a, const FiberVector& b) {
  if (!same_base(a.base(), b.base())) {
    throw BaseMismatch("hermitian_product: fiber vectors at different base points");
  }
  return hdot(a.e(), b.e());
}

/// The symplectic form omega(w1,w2) = alpha1.beta2 - beta1.alpha2 on a fiber,
/// with w = alpha + i beta. Satisfies <w1,w2> = omega(w1,i w2) + i omega(w1,w2).
inline double symplectic_form(const FiberVector& a, const FiberVector& b) {
  if (!same_base(a.base(), b.base())) {
    throw BaseMismatch("symplectic_form: fiber vectors at different base points");
  }
  return dot(real(a.e()), imag(b.e())) - dot(imag(a.e()), real(b.e()));
}

/// The 6x6 Maxwell eigenproblem matrix H = [[0, -k x],[k x, 0]] acting on
/// (E, B) blocks. Hermitian with spectrum {+|k| x2, -|k| x2, 0 x2}.
inline Eigen::Matrix<cplx, 6, 6> maxwell_matrix(const WaveVector& k) {
  Eigen::Matrix3d kx;
  kx << 0.0, -k.kz(), k.ky(), k.kz(), 0.0, -k.kx(), -k.ky(), k.kx(), 0.0;
  Eigen::Matrix<cplx, 6, 6> h = Eigen::Matrix<cplx, 6, 6>::Zero();
  h.block<3, 3>(0, 3) = (-kx).cast<cplx>();
  h.block<3, 3>(3, 0) = kx.cast<cplx>();
  return h;
}

/// Ascending eigenvalues of the Maxwell matrix.
inline std::array<double, 6> maxwell_spectrum(const WaveVector& k) {
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix<cplx, 6, 6>> solver(maxwell_matrix(k));
  std::array<double, 6> out{};
  for (int i = 0; i < 6; ++i) out[static_cast<std::size_t>(i)] = solver.eigenvalues()[i];
  return out;
}

/// Remove the longitudinal part: v - k_hat (k_hat . v). Idempotent and
/// self-adjoint; enforces the Gauss constraint on arbitrary amplitudes.
inline FiberVector transverse_projector(const WaveVector& k, const Vec3c& v) {
  const Vec3c khat = to_complex(k.unit());
  const Vec3c w = v - dot(khat, v) * khat;
  return FiberVector(k, w);
}

/// Same projection on raw components; usable at any derivative level.
template <class C>
Vec3<C> transverse_part(const Vec3<C>& khat, const Vec3<C>& v) {
  return v - dot(khat, v) * khat;
}

}  // namespace pb
