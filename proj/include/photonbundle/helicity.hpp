#pragma once

#include <cmath>
#include <limits>
#include <string>

#include "photonbundle/core.hpp"
#include "photonbundle/errors.hpp"
#include "photonbundle/frame.hpp"
#include "photonbundle/mesh.hpp"
#include "photonbundle/section.hpp"
#include "photonbundle/threads.hpp"

namespace pb {

enum class HelicitySign : int { plus = +1, minus = -1 };

inline int sign_value(HelicitySign s) { return static_cast<int>(s); }

/// Unit circular polarization e+- = (theta_hat +- i phi_hat)/sqrt(2) in the
/// standard chart. Rotation about k_hat by theta multiplies it by e^{+-i theta}.
inline FiberVector circular_frame(const SphericalPoint& p, HelicitySign sign) {
  const SphericalBasis b = spherical_basis(p);
  const double inv = 1.0 / std::sqrt(2.0);
  const cplx si = cplx(0.0, sign_value(sign));
  const Vec3c e = inv * (to_complex(b.theta_hat) + si * to_complex(b.phi_hat));
  return FiberVector(WaveVector(p.unit()), e);
}

enum class Chart { standard, rotated_x };

inline const char* chart_name(Chart c) {
  return c == Chart::standard ? "standard" : "rotated_x";
}

/// Chart whose polar axis is +x; used within 0.1 rad of the standard poles.
/// The frame is the standard one evaluated in rotated coordinates and mapped
/// back, so it is a legitimate local section of the same helicity bundle.
inline FiberVector circular_frame_rotated(const WaveVector& k, HelicitySign sign) {
  const Vec3d u = k.unit();
  const Vec3d yhat{0.0, 1.0, 0.0};
  const Vec3d u_rot = rotate_about(yhat, -M_PI / 2.0, u);
  const FiberVector e = circular_frame(SphericalPoint::from_unit(u_rot), sign);
  return FiberVector(k, rotate_about(yhat, M_PI / 2.0, e.e()));
}

inline Chart preferred_chart(const WaveVector& k) {
  const double theta = SphericalPoint::from_wavevector(k).theta;
  return (theta < 0.1 || theta > M_PI - 0.1) ? Chart::rotated_x : Chart::standard;
}

inline FiberVector circular_frame_at(const WaveVector& k, HelicitySign sign,
                                     Chart chart) {
  if (chart == Chart::standard) {
    const FiberVector e = circular_frame(SphericalPoint::from_wavevector(k), sign);
    return FiberVector(k, e.e());
  }
  return circular_frame_rotated(k, sign);
}

/// Fiberwise projection onto the helicity line gamma_+-, built from a local
/// circular frame. The result is chart-independent; charts are switched near
/// the poles only to avoid the coordinate singularity.
inline FiberVector project_helicity(const FiberVector& v, HelicitySign sign) {
  const FiberVector e = circular_frame_at(v.base(), sign, preferred_chart(v.base()));
  const cplx amp = hdot(e.e(), v.e());
  return FiberVector(v.base(), amp * e.e());
}

/// Chart-free form of the same projector on raw components,
/// P+- v = (v_perp +- i k_hat x v_perp)/2; valid at any derivative level.
template <class C>
Vec3<C> helicity_project_components(const Vec3<C>& khat, const Vec3<C>& v,
                                    HelicitySign sign) {
  const Vec3<C> w = transverse_part(khat, v);
  const C half = C(cplx(0.5, 0.0));
  const C half_i = C(cplx(0.0, 0.5 * sign_value(sign)));
  return half * w + half_i * cross(khat, w);
}

namespace detail {

template <class S>
Vec3<complexify_t<S>> unit_of(const Vec3<S>& k) {
  const S r = sqrt(dot(k, k));
  return to_cplx(Vec3<S>{k[0] / r, k[1] / r, k[2] / r});
}

struct HelicityComponentSection final : SectionExpr {
  SectionPtr inner;
  HelicitySign sign;
  HelicityComponentSection(SectionPtr s, HelicitySign h) : inner(std::move(s)), sign(h) {}
  template <class S>
  Vec3<complexify_t<S>> at(const Vec3<S>& k) const {
    return helicity_project_components(unit_of(k), section_eval(*inner, k), sign);
  }
  Vec3<cplx> eval0(const Vec3<double>& k) const override { return at(k); }
  Vec3<C1> eval1(const Vec3<R1>& k) const override { return at(k); }
  Vec3<C2> eval2(const Vec3<R2>& k) const override { return at(k); }
  Vec3<C3> eval3(const Vec3<R3>& k) const override { return at(k); }
};

struct LittleGroupSection final : SectionExpr {
  SectionPtr inner;
  cplx phase_plus, phase_minus;
  LittleGroupSection(SectionPtr s, double theta)
      : inner(std::move(s)),
        phase_plus(std::polar(1.0, theta)),
        phase_minus(std::polar(1.0, -theta)) {}
  template <class S>
  Vec3<complexify_t<S>> at(const Vec3<S>& k) const {
    using C = complexify_t<S>;
    const Vec3<C> khat = unit_of(k);
    const Vec3<C> w = section_eval(*inner, k);
    const Vec3<C> p = helicity_project_components(khat, w, HelicitySign::plus);
    const Vec3<C> m = helicity_project_components(khat, w, HelicitySign::minus);
    return C(phase_plus) * p + C(phase_minus) * m;
  }
  Vec3<cplx> eval0(const Vec3<double>& k) const override { return at(k); }
  Vec3<C1> eval1(const Vec3<R1>& k) const override { return at(k); }
  Vec3<C2> eval2(const Vec3<R2>& k) const override { return at(k); }
  Vec3<C3> eval3(const Vec3<R3>& k) const override { return at(k); }
};

}  // namespace detail

/// The R/L split of a transverse section. Pointwise orthogonal components
/// that sum back to the input.
struct HelicityComponents {
  Section plus;
  Section minus;
};

inline HelicityComponents decompose_section(const Section& s) {
  return HelicityComponents{
      Section(std::make_shared<detail::HelicityComponentSection>(s.expr(),
                                                                 HelicitySign::plus)),
      Section(std::make_shared<detail::HelicityComponentSection>(s.expr(),
                                                                 HelicitySign::minus))};
}

/// The SO(2) little-group flow on sections: e^{i chi theta} s
/// = e^{i theta} s_+ + e^{-i theta} s_-. Pointwise norm-preserving.
inline Section little_group_action(const Section& s, double theta) {
  return Section(std::make_shared<detail::LittleGroupSection>(s.expr(), theta));
}

/// Per-chart scalar helicity amplitude f_+- = <e_+-, v>, with the chart that
/// produced it recorded (no global chart exists).
struct HelicityScalar {
  cplx value;
  Chart chart;
};

inline HelicityScalar scalar_component(const FiberVector& v, HelicitySign sign,
                                       Chart chart) {
  const FiberVector e = circular_frame_at(v.base(), sign, chart);
  return HelicityScalar{hdot(e.e(), v.e()), chart};
}

struct ZeroScanResult {
  double min_norm = std::numeric_limits<double>::infinity();
  SphericalPoint argmin;
  int node_index = -1;
};

/// Minimum of |P_+- s| over the mesh nodes (on the unit sphere) and where it
/// occurs. Ties break toward the lowest node index, so scans are
/// deterministic under parallel execution.
inline ZeroScanResult zero_constraint_scan(const Section& s, HelicitySign sign,
                                           const SphereMesh& mesh) {
  mesh.require_weights_cover_sphere();
  struct Best {
    double v = std::numeric_limits<double>::infinity();
    long idx = -1;
  };
  const auto map = [&](std::size_t begin, std::size_t end) {
    Best b;
    for (std::size_t i = begin; i < end; ++i) {
      const Vec3d u = mesh.nodes[i].unit();
      const Vec3c w = helicity_project_components(to_complex(u), s(u), sign);
      const double n = pb::norm(w);
      if (n < b.v) {
        b.v = n;
        b.idx = static_cast<long>(i);
      }
    }
    return b;
  };
  const Best best = parallel_chunk_reduce<Best>(
      mesh.size(), 8192, Best{}, map, [](Best a, Best b) {
        if (b.v < a.v || (b.v == a.v && b.idx < a.idx && b.idx >= 0)) return b;
        return a;
      });
  ZeroScanResult r;
  r.min_norm = best.v;
  r.node_index = static_cast<int>(best.idx);
  if (best.idx >= 0) r.argmin = mesh.nodes[static_cast<std::size_t>(best.idx)];
  return r;
}

/// Golden-section polish of a scan minimum: alternating 1-d line searches in
/// theta and phi inside the cell around the coarse argmin, down to a window
/// of 1e-3 radians.
inline ZeroScanResult refine_minimum(const Section& s, HelicitySign sign,
                                     const ZeroScanResult& coarse, double span_theta,
                                     double span_phi) {
  const auto objective = [&](double theta, double phi) {
    const Vec3d u = SphericalPoint(std::clamp(theta, 1e-9, M_PI - 1e-9), phi).unit();
    return pb::norm(helicity_project_components(to_complex(u), s(u), sign));
  };
  const double gr = (std::sqrt(5.0) - 1.0) / 2.0;
  double t = coarse.argmin.theta, p = coarse.argmin.phi;
  double wt = span_theta, wp = span_phi;
  const auto line_min = [&](bool in_theta) {
    double lo = in_theta ? t - wt : p - wp;
    double hi = in_theta ? t + wt : p + wp;
    double x1 = hi - gr * (hi - lo), x2 = lo + gr * (hi - lo);
    double f1 = in_theta ? objective(x1, p) : objective(t, x1);
    double f2 = in_theta ? objective(x2, p) : objective(t, x2);
    while (hi - lo > 1e-3) {
      if (f1 < f2) {
        hi = x2;
        x2 = x1;
        f2 = f1;
        x1 = hi - gr * (hi - lo);
        f1 = in_theta ? objective(x1, p) : objective(t, x1);
      } else {
        lo = x1;
        x1 = x2;
        f1 = f2;
        x2 = lo + gr * (hi - lo);
        f2 = in_theta ? objective(x2, p) : objective(t, x2);
      }
    }
    if (in_theta) {
      t = 0.5 * (lo + hi);
    } else {
      p = 0.5 * (lo + hi);
    }
  };
  for (int round = 0; round < 24; ++round) {
    line_min(true);
    line_min(false);
    wt *= 0.7;
    wp *= 0.7;
    if (wt < 5e-4 && wp < 5e-4) break;
  }
  ZeroScanResult out;
  out.min_norm = objective(t, p);
  out.argmin = SphericalPoint(std::clamp(t, 1e-9, M_PI - 1e-9), p);
  out.node_index = coarse.node_index;
  if (out.min_norm > coarse.min_norm) return coarse;
  return out;
}

}  // namespace pb
