#pragma once

#include <cmath>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "photonbundle/core.hpp"
#include "photonbundle/errors.hpp"
#include "photonbundle/frame.hpp"
#include "photonbundle/rng.hpp"

namespace pb {

using Mat4 = Eigen::Matrix4d;
using Vec4 = Eigen::Vector4d;

inline Mat4 minkowski_metric() {
  Mat4 eta = Mat4::Identity();
  eta(0, 0) = -1.0;
  return eta;
}

/// Generator of active spatial rotations about axis a, as a 4x4 matrix.
inline Mat4 rotation_generator(int a) {
  Mat4 g = Mat4::Zero();
  const int b = 1 + (a + 1) % 3, c = 1 + (a + 2) % 3;
  g(c, b) = 1.0;
  g(b, c) = -1.0;
  return g;
}

/// Generator of boosts along axis a (t-x_a mixing), as a 4x4 matrix.
inline Mat4 boost_generator(int a) {
  Mat4 g = Mat4::Zero();
  g(0, a + 1) = 1.0;
  g(a + 1, 0) = 1.0;
  return g;
}

/// Matrix exponential by scaling-and-squaring with a fixed order-13 Pade
/// approximant (double-precision theta_13 threshold).
inline Mat4 expm(const Mat4& a) {
  static const double b[] = {64764752532480000.0, 32382376266240000.0,
                             7771770303897600.0,  1187353796428800.0,
                             129060195264000.0,   10559470521600.0,
                             670442572800.0,      33522128640.0,
                             1323241920.0,        40840800.0,
                             960960.0,            16380.0,
                             182.0,               1.0};
  const double theta13 = 5.371920351148152;
  const double norm1 = a.cwiseAbs().colwise().sum().maxCoeff();
  int squarings = 0;
  Mat4 m = a;
  if (norm1 > theta13) {
    squarings = static_cast<int>(std::ceil(std::log2(norm1 / theta13)));
    m /= std::pow(2.0, squarings);
  }
  const Mat4 ident = Mat4::Identity();
  const Mat4 m2 = m * m;
  const Mat4 m4 = m2 * m2;
  const Mat4 m6 = m4 * m2;
  const Mat4 u =
      m * (m6 * (b[13] * m6 + b[11] * m4 + b[9] * m2) + b[7] * m6 + b[5] * m4 +
           b[3] * m2 + b[1] * ident);
  const Mat4 v = m6 * (b[12] * m6 + b[10] * m4 + b[8] * m2) + b[6] * m6 +
                 b[4] * m4 + b[2] * m2 + b[0] * ident;
  Mat4 r = (v - u).partialPivLu().solve(v + u);
  for (int s = 0; s < squarings; ++s) r = r * r;
  return r;
}

/// Boost velocity, |v| < 1 (units of c).
class BoostParameter {
 public:
  explicit BoostParameter(const Vec3d& v) : v_(v) {
    if (!(pb::norm(v) < 1.0 - 1e-9)) {
      throw SuperluminalBoost("BoostParameter: |v| must be < 1");
    }
  }
  const Vec3d& v() const { return v_; }
  double speed() const { return pb::norm(v_); }
  double gamma() const {
    const double s = speed();
    return 1.0 / std::sqrt((1.0 - s) * (1.0 + s));
  }

 private:
  Vec3d v_;
};

/// An element of the orthochronous Poincare group: a 4x4 Lorentz matrix in
/// O+(3,1) plus an optional spacetime translation (a^0, a).
class LorentzTransform {
 public:
  explicit LorentzTransform(Mat4 lambda, Vec4 translation = Vec4::Zero())
      : lambda_(std::move(lambda)), translation_(std::move(translation)) {
    const Mat4 eta = minkowski_metric();
    const double defect = (lambda_.transpose() * eta * lambda_ - eta).cwiseAbs().maxCoeff();
    if (defect > 1e-9) {
      throw InvariantViolation("LorentzTransform: matrix does not preserve the metric");
    }
    if (lambda_(0, 0) < 1.0 - 1e-9) {
      throw NonOrthochronous("LorentzTransform: time orientation not preserved");
    }
  }

  const Mat4& lambda() const { return lambda_; }
  const Vec4& translation() const { return translation_; }
  bool is_proper() const { return lambda_.determinant() > 0.0; }
  bool has_translation() const { return translation_.cwiseAbs().maxCoeff() > 0.0; }

  static LorentzTransform identity() { return LorentzTransform(Mat4::Identity()); }

  static LorentzTransform parity() {
    Mat4 p = -Mat4::Identity();
    p(0, 0) = 1.0;
    return LorentzTransform(p);
  }

  /// Active spatial rotation about a unit axis.
  static LorentzTransform rotation(const Vec3d& axis, double angle) {
    const Vec3d n = normalized(axis);
    Mat4 g = Mat4::Zero();
    for (int a = 0; a < 3; ++a) g += n[a] * rotation_generator(a);
    return LorentzTransform(expm(angle * g));
  }

  /// Boost into the frame moving with velocity v. Pairs with the electric
  /// field map of boost_fiber: t' = gamma (t - v.x), parallel component
  /// x' = gamma (x_par - v t).
  static LorentzTransform boost(const BoostParameter& b) {
    const double speed = b.speed();
    if (speed == 0.0) return identity();
    const double gamma = b.gamma();
    const Vec3d vhat = normalized(b.v());
    Mat4 m = Mat4::Identity();
    m(0, 0) = gamma;
    for (int i = 0; i < 3; ++i) {
      m(0, i + 1) = -gamma * b.v()[i];
      m(i + 1, 0) = -gamma * b.v()[i];
      for (int j = 0; j < 3; ++j) {
        m(i + 1, j + 1) = (i == j ? 1.0 : 0.0) + (gamma - 1.0) * vhat[i] * vhat[j];
      }
    }
    return LorentzTransform(m);
  }

  static LorentzTransform translation_only(const Vec4& a) {
    return LorentzTransform(Mat4::Identity(), a);
  }

  /// Group composition (a1, L1)(a2, L2) = (a1 + L1 a2, L1 L2).
  friend LorentzTransform operator*(const LorentzTransform& a, const LorentzTransform& b) {
    return LorentzTransform(a.lambda_ * b.lambda_,
                            a.translation_ + a.lambda_ * b.translation_);
  }

  LorentzTransform inverse() const {
    const Mat4 li = lambda_.inverse();
    return LorentzTransform(li, -(li * translation_));
  }

 private:
  Mat4 lambda_;
  Vec4 translation_;
};

inline Vec4 lightlike_lift(const WaveVector& k) {
  return Vec4{k.norm(), k.kx(), k.ky(), k.kz()};
}

/// Translation action: a unit-modulus phase e^{i(k.a - |k| a^0)} on the fiber.
inline FiberVector translate_fiber(const Vec4& a, const FiberVector& x) {
  const double phase =
      x.base().kx() * a[1] + x.base().ky() * a[2] + x.base().kz() * a[3] -
      x.base().norm() * a[0];
  return FiberVector(x.base(), std::polar(1.0, phase) * x.e());
}

/// Boost action on the photon bundle: the new base point is the boosted
/// wave vector and the fiber transforms with the aberrated field map and the
/// invariant-measure prefactor |k|/|k'|. Norm and transversality preserved.
inline FiberVector boost_fiber(const BoostParameter& b, const FiberVector& x) {
  const double speed = b.speed();
  if (speed == 0.0) return x;
  const double gamma = b.gamma();
  const Vec3d v = b.v();
  const Vec3d vhat = normalized(v);
  const Vec3d k = x.base().vec();
  const double kn = x.base().norm();

  const Vec3d kprime = k + ((gamma - 1.0) * dot(vhat, k)) * vhat - (gamma * kn) * v;
  const Vec3c vc = to_complex(v);
  const Vec3c e = x.e();
  const Vec3c field =
      gamma * (e + cross(vc, cross(to_complex(x.base().unit()), e))) -
      (gamma * gamma / (gamma + 1.0)) * dot(e, vc) * vc;
  const WaveVector base_out(kprime);
  return FiberVector(base_out, (kn / base_out.norm()) * field);
}

namespace detail {

/// Antisymmetric field-strength tensor built from E and B = k_hat x E, with
/// F^{i0} = E_i and F^{ij} = -eps_{ijk} B_k.
inline Eigen::Matrix<cplx, 4, 4> field_tensor(const Vec3c& e, const Vec3c& b) {
  Eigen::Matrix<cplx, 4, 4> f = Eigen::Matrix<cplx, 4, 4>::Zero();
  for (int i = 0; i < 3; ++i) {
    f(i + 1, 0) = e[i];
    f(0, i + 1) = -e[i];
  }
  f(1, 2) = -b[2];
  f(2, 1) = b[2];
  f(2, 3) = -b[0];
  f(3, 2) = b[0];
  f(3, 1) = -b[1];
  f(1, 3) = b[1];
  return f;
}

}  // namespace detail

/// Generic orthochronous Poincare action on a fiber element, realized by
/// transforming the field-strength tensor and reading the electric part at
/// the transformed wave vector. Reproduces boost_fiber for pure boosts, the
/// 3-vector rule for rotations, and (-k, -E) for parity.
inline FiberVector tensor_action(const LorentzTransform& l, const FiberVector& x) {
  const Vec4 k4 = lightlike_lift(x.base());
  const Vec4 k4p = l.lambda() * k4;
  const Vec3d kprime{k4p[1], k4p[2], k4p[3]};
  const WaveVector base_out(kprime);
  if (std::abs(k4p[0] - base_out.norm()) > 1e-10 * std::max(1.0, x.base().norm())) {
    throw Error("tensor_action: transformed frequency is not |k'|");
  }
  const Eigen::Matrix<cplx, 4, 4> f = detail::field_tensor(x.e(), x.b());
  const Eigen::Matrix<cplx, 4, 4> fp =
      l.lambda().cast<cplx>() * f * l.lambda().transpose().cast<cplx>();
  Vec3c eprime{fp(1, 0), fp(2, 0), fp(3, 0)};
  eprime *= cplx(x.base().norm() / base_out.norm());
  FiberVector out(base_out, eprime);
  if (l.has_translation()) out = translate_fiber(l.translation(), out);
  return out;
}

/// The little-group element W(theta, alpha, beta) stabilizing the null
/// 4-vector (|kbar|, kbar): null translations (alpha, beta) plus a rotation
/// about k_hat by theta, built at the +z reference axis and conjugated by the
/// minimal rotation carrying z to k_hat (axis z x k_hat; x for k_hat = -z).
inline LorentzTransform little_group_element(const WaveVector& kbar, double theta,
                                             double alpha, double beta) {
  const Mat4 n1 = boost_generator(0) - rotation_generator(1);
  const Mat4 n2 = boost_generator(1) + rotation_generator(0);
  const Mat4 w_ref = expm(alpha * n1 + beta * n2 - theta * rotation_generator(2));

  const Vec3d khat = kbar.unit();
  const Vec3d zhat{0.0, 0.0, 1.0};
  const Vec3d axis_raw = cross(zhat, khat);
  const double cos_angle = std::clamp(dot(zhat, khat), -1.0, 1.0);
  Mat4 rot = Mat4::Identity();
  if (pb::norm(axis_raw) > 1e-14) {
    const Vec3d axis = normalized(axis_raw);
    Mat4 g = Mat4::Zero();
    for (int a = 0; a < 3; ++a) g += axis[a] * rotation_generator(a);
    rot = expm(std::acos(cos_angle) * g);
  } else if (cos_angle < 0.0) {
    rot = expm(M_PI * rotation_generator(0));
  }
  return LorentzTransform(rot * w_ref * rot.transpose());
}

/// Weinberg's standard-momentum map L(k) = R_z(phi) R_y(theta) B_z(ln|k|),
/// taking the reference null vector (1, 0, 0, 1) to (|k|, k). Smooth nowhere
/// near the z-axis: its theta -> 0 and theta -> pi limits depend on phi.
inline LorentzTransform weinberg_L(const WaveVector& k) {
  const SphericalPoint p = SphericalPoint::from_wavevector(k);
  const double eta = std::log(k.norm());
  Mat4 bz = Mat4::Identity();
  bz(0, 0) = bz(3, 3) = std::cosh(eta);
  bz(0, 3) = bz(3, 0) = std::sinh(eta);
  const Mat4 ry = expm(p.theta * rotation_generator(1));
  const Mat4 rz = expm(p.phi * rotation_generator(2));
  return LorentzTransform(rz * ry * bz);
}

struct WignerReport {
  double epsilon = 0.0;
  std::vector<double> phi_samples;
  /// Max Frobenius distance between Weinberg L(k) matrices on the phi ring.
  double weinberg_spread = 0.0;
  /// Same metric for the smooth global frame; shrinks linearly with epsilon.
  double frame_spread = 0.0;
};

/// Probe the standard-momentum discontinuity: sample k at polar angle
/// epsilon and compare azimuthal variation of Weinberg's L(k) against the
/// smooth global frame evaluated at the same points.
inline WignerReport wigner_discontinuity_report(double epsilon, int n_phi) {
  if (!(epsilon > 0.0) || epsilon >= 0.1) {
    throw DomainError("wigner_discontinuity_report: epsilon must be in (0, 0.1)");
  }
  if (n_phi < 2) throw DomainError("wigner_discontinuity_report: need n_phi >= 2");
  WignerReport rep;
  rep.epsilon = epsilon;
  std::vector<Mat4> ls;
  std::vector<std::pair<Vec3c, Vec3c>> frames;
  const GlobalFrame frame;
  for (int j = 0; j < n_phi; ++j) {
    const double phi = 2.0 * M_PI * j / n_phi;
    rep.phi_samples.push_back(phi);
    const SphericalPoint p(epsilon, phi);
    ls.push_back(weinberg_L(WaveVector(p.unit())).lambda());
    frames.push_back(frame.eval(p));
  }
  for (int a = 0; a < n_phi; ++a) {
    for (int b = a + 1; b < n_phi; ++b) {
      rep.weinberg_spread = std::max(rep.weinberg_spread, (ls[a] - ls[b]).norm());
      const double df = std::sqrt(
          std::pow(pb::norm(frames[a].first - frames[b].first), 2) +
          std::pow(pb::norm(frames[a].second - frames[b].second), 2));
      rep.frame_spread = std::max(rep.frame_spread, df);
    }
  }
  return rep;
}

/// Random element of SO+(3,1) as the exponential of a random algebra element
/// with rotation angles in [-pi, pi] and rapidities bounded by max_rapidity.
inline LorentzTransform random_proper_orthochronous(Pcg64& rng,
                                                    double max_rapidity = 1.5) {
  Mat4 g = Mat4::Zero();
  for (int a = 0; a < 3; ++a) {
    g += rng.uniform(-M_PI, M_PI) * rotation_generator(a);
    g += rng.uniform(-max_rapidity, max_rapidity) * boost_generator(a);
  }
  return LorentzTransform(expm(g));
}

}  // namespace pb
