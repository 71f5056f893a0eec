#pragma once

#include <cmath>
#include <complex>
#include <functional>
#include <string>

#include "photonbundle/core.hpp"
#include "photonbundle/dual.hpp"
#include "photonbundle/errors.hpp"
#include "photonbundle/frame.hpp"
#include "photonbundle/helicity.hpp"
#include "photonbundle/mesh.hpp"

namespace pb {

/// Orientation convention for the circular-polarization Berry data. The
/// default gives C1(gamma_+) = -2; the flipped convention (used by earlier
/// spin-Chern literature) negates connection, curvature and Chern numbers.
enum class ChernSignConvention { plus_negative, plus_positive };

inline double convention_factor(ChernSignConvention c) {
  return c == ChernSignConvention::plus_negative ? 1.0 : -1.0;
}

struct ConnectionSample {
  SphericalPoint point;
  cplx omega_theta;
  cplx omega_phi;
};

struct CurvatureSample {
  SphericalPoint point;
  cplx f_theta_phi;  // coefficient of d(theta) ^ d(phi)
};

/// Berry connection of the chart frame e_+- : omega = -+ i cos(theta) d(phi).
inline ConnectionSample berry_connection(
    HelicitySign sign, const SphericalPoint& p,
    ChernSignConvention conv = ChernSignConvention::plus_negative) {
  if (p.near_pole()) throw PoleSingularity("berry_connection: chart pole");
  const double s = convention_factor(conv) * sign_value(sign);
  return ConnectionSample{p, cplx(0.0), cplx(0.0, -s * std::cos(p.theta))};
}

/// Berry curvature of gamma_+- : Omega = +- i sin(theta) d(theta) ^ d(phi),
/// globally defined (the chart formula below is gauge-invariant).
inline CurvatureSample berry_curvature(
    HelicitySign sign, const SphericalPoint& p,
    ChernSignConvention conv = ChernSignConvention::plus_negative) {
  const double s = convention_factor(conv) * sign_value(sign);
  return CurvatureSample{p, cplx(0.0, s * std::sin(p.theta))};
}

/// The standard-chart circular frame as a function of (theta, phi), usable
/// with dual-number angles.
struct ChartCircularFrame {
  HelicitySign sign;
  template <class S>
  Vec3<complexify_t<S>> operator()(const S& theta, const S& phi) const {
    using C = complexify_t<S>;
    const S st = sin(theta), ct = cos(theta);
    const S sp = sin(phi), cp = cos(phi);
    const Vec3<C> theta_hat = to_cplx(Vec3<S>{ct * cp, ct * sp, -st});
    const Vec3<C> phi_hat = to_cplx(Vec3<S>{-sp, cp, S(0.0)});
    const C i_s = C(cplx(0.0, sign_value(sign)));
    const C inv = C(1.0 / std::sqrt(2.0));
    return inv * (theta_hat + i_s * phi_hat);
  }
};

/// omega = <e, de> computed from any unit frame by dual-number
/// differentiation in (theta, phi).
template <class Frame>
ConnectionSample berry_connection_from_frame(const Frame& frame,
                                             const SphericalPoint& p) {
  if (p.near_pole()) throw PoleSingularity("berry_connection_from_frame: chart pole");
  using D = Dual<double, 2>;
  const auto e = frame(D::variable(p.theta, 0), D::variable(p.phi, 1));
  cplx wt = 0.0, wp = 0.0;
  for (int i = 0; i < 3; ++i) {
    wt += std::conj(e[i].v) * e[i].d[0];
    wp += std::conj(e[i].v) * e[i].d[1];
  }
  return ConnectionSample{p, wt, wp};
}

/// Omega = d<e, de> = <de ^ de>; for a unit frame only first derivatives
/// enter, and the result is invariant under rephasing e -> e^{i alpha} e.
template <class Frame>
CurvatureSample berry_curvature_from_frame(const Frame& frame,
                                           const SphericalPoint& p) {
  if (p.near_pole()) throw PoleSingularity("berry_curvature_from_frame: chart pole");
  using D = Dual<double, 2>;
  const auto e = frame(D::variable(p.theta, 0), D::variable(p.phi, 1));
  cplx f = 0.0;
  for (int i = 0; i < 3; ++i) {
    f += std::conj(e[i].d[0]) * e[i].d[1] - std::conj(e[i].d[1]) * e[i].d[0];
  }
  return CurvatureSample{p, f};
}

struct ChernResult {
  double value = 0.0;
  std::string method;
  std::string mesh;
  double residual = 0.0;  // distance from the nearest integer
};

/// First Chern number by quadrature of the curvature form:
/// C1 = (i/2pi) integral of Omega_+- over S^2.
inline ChernResult chern_analytic(
    HelicitySign sign, const SphereMesh& mesh,
    ChernSignConvention conv = ChernSignConvention::plus_negative) {
  mesh.require_weights_cover_sphere();
  cplx integral = 0.0;
  for (std::size_t j = 0; j < mesh.size(); ++j) {
    const SphericalPoint& p = mesh.nodes[j];
    // Omega = f d(theta)^d(phi) = (f / sin theta) dA; weights carry dA.
    const cplx per_area = berry_curvature(sign, p, conv).f_theta_phi / std::sin(p.theta);
    integral += mesh.weights[j] * per_area;
  }
  const cplx c1 = cplx(0.0, 1.0 / (2.0 * M_PI)) * integral;
  ChernResult r;
  r.value = c1.real();
  r.method = "analytic";
  r.mesh = std::to_string(mesh.n_theta) + "x" + std::to_string(mesh.n_phi);
  r.residual = std::abs(r.value - std::round(r.value));
  return r;
}

/// Gauge-invariant lattice Chern number: per-plaquette products of
/// normalized link overlaps U = <e(p1), e(p2)>/|...|, summed as principal
/// arguments over the oriented plaquettes of the mesh. Exact integer for any
/// mesh fine enough that every plaquette phase stays below pi; insensitive
/// to per-node phase (and chart) choices, so the supplied frame callback
/// needs no global continuity.
inline ChernResult chern_lattice(
    const std::function<Vec3c(const SphericalPoint&)>& bundle_frame,
    const SphereMesh& mesh,
    ChernSignConvention conv = ChernSignConvention::plus_negative) {
  if (mesh.plaquettes.empty()) {
    throw MeshTooCoarse("chern_lattice: mesh carries no plaquettes");
  }
  std::vector<Vec3c> f(mesh.size());
  for (std::size_t j = 0; j < mesh.size(); ++j) {
    f[j] = bundle_frame(mesh.nodes[j]);
    const double n = pb::norm(f[j]);
    if (!(n > 0.0)) {
      throw DomainError("chern_lattice: frame callback returned a zero vector");
    }
    f[j] *= cplx(1.0 / n);
  }
  double arg_sum = 0.0;
  for (const auto& cell : mesh.plaquettes) {
    cplx loop = 1.0;
    const std::size_t m = cell.size();
    for (std::size_t v = 0; v < m; ++v) {
      const int a = cell[v], b = cell[(v + 1) % m];
      cplx link = hdot(f[static_cast<std::size_t>(a)], f[static_cast<std::size_t>(b)]);
      if (conv == ChernSignConvention::plus_positive) link = std::conj(link);
      const double mod = std::abs(link);
      if (mod < 1e-6) {
        throw PlaquetteOverflow("chern_lattice: vanishing link overlap, refine the mesh");
      }
      loop *= link / mod;
    }
    const double phase = std::arg(loop);
    if (std::abs(phase) > M_PI - 1e-6) {
      throw PlaquetteOverflow("chern_lattice: plaquette phase at pi, refine the mesh");
    }
    arg_sum += phase;
  }
  const double raw = -arg_sum / (2.0 * M_PI);
  ChernResult r;
  r.value = std::round(raw);
  r.method = "lattice";
  r.mesh = std::to_string(mesh.n_theta) + "x" + std::to_string(mesh.n_phi);
  r.residual = std::abs(raw - r.value);
  if (r.residual >= 0.5) {
    throw PlaquetteOverflow("chern_lattice: winding sum far from integer");
  }
  return r;
}

enum class BundleId { plus, minus, frame1, frame2 };

inline const char* bundle_name(BundleId b) {
  switch (b) {
    case BundleId::plus: return "plus";
    case BundleId::minus: return "minus";
    case BundleId::frame1: return "frame1";
    case BundleId::frame2: return "frame2";
  }
  return "?";
}

/// Per-node fiber representatives for the lattice method. The circular
/// bundles use the chart frame with the pole-avoiding chart switch; the
/// trivial line bundles use the smooth global frame members.
inline std::function<Vec3c(const SphericalPoint&)> bundle_frame_callback(BundleId id) {
  switch (id) {
    case BundleId::plus:
    case BundleId::minus: {
      const HelicitySign sign =
          id == BundleId::plus ? HelicitySign::plus : HelicitySign::minus;
      return [sign](const SphericalPoint& p) {
        const WaveVector k(p.unit());
        return circular_frame_at(k, sign, preferred_chart(k)).e();
      };
    }
    case BundleId::frame1:
    case BundleId::frame2: {
      const int which = id == BundleId::frame1 ? 0 : 1;
      return [which](const SphericalPoint& p) {
        const auto pair = GlobalFrame{}.eval(p);
        return which == 0 ? pair.first : pair.second;
      };
    }
  }
  throw ConfigError("bundle_frame_callback: unknown bundle");
}

/// Helicity-weighted sum of the circular Chern numbers,
/// h_+ C1(gamma_+) + h_- C1(gamma_-), from lattice integers. The value is
/// convention-dependent: +4 in the orientation used by the spin-Chern
/// literature (default here), -4 in the plus_negative orientation.
inline double spin_chern(
    ChernSignConvention conv = ChernSignConvention::plus_positive,
    const SphereMesh& mesh = SphereMesh::latlon(16, 32)) {
  const double c_plus =
      chern_lattice(bundle_frame_callback(BundleId::plus), mesh, conv).value;
  const double c_minus =
      chern_lattice(bundle_frame_callback(BundleId::minus), mesh, conv).value;
  return (+1.0) * c_plus + (-1.0) * c_minus;
}

}  // namespace pb
