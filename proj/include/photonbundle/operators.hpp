#pragma once

#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "photonbundle/core.hpp"
#include "photonbundle/dual.hpp"
#include "photonbundle/errors.hpp"
#include "photonbundle/section.hpp"

namespace pb {

namespace detail {

/// Spin part: S_a s = i e_a x s, the spin-1 matrices (S_a)_{bc} = -i eps_{abc}.
template <class C>
Vec3<C> spin_apply(int axis, const Vec3<C>& w) {
  Vec3<C> e;
  e[axis] = C(1.0);
  return C(kImag) * cross(e, w);
}

enum class DiffKind { l, j, chi, js, jo, k_boost };

/// First-order differential operators on sections, with k-derivatives taken
/// by one extra dual level of the operand:
///   L_a = -i (k x grad)_a                    (componentwise)
///   J_a = S_a + L_a
///   chi = k_hat . J
///   Js_a = k_hat_a chi,  Jo_a = J_a - Js_a
///   K_a = i (k_hat_a + |k| d_a + e_a x (k_hat x .))
struct DiffOpSection final : SectionExpr {
  SectionPtr inner;
  DiffKind kind;
  int axis;

  DiffOpSection(SectionPtr s, DiffKind dk, int a)
      : inner(std::move(s)), kind(dk), axis(a) {}

  template <class S>
  Vec3<complexify_t<S>> at(const Vec3<S>& k) const {
    using C = complexify_t<S>;
    const auto lifted = lift(k);
    const auto w = section_eval(*inner, lifted);
    const Vec3<C> val{w[0].v, w[1].v, w[2].v};
    // grad[i] is the gradient of component i w.r.t. (kx, ky, kz).
    const Vec3<C> grad[3] = {Vec3<C>{w[0].d[0], w[0].d[1], w[0].d[2]},
                             Vec3<C>{w[1].d[0], w[1].d[1], w[1].d[2]},
                             Vec3<C>{w[2].d[0], w[2].d[1], w[2].d[2]}};
    const Vec3<C> kc = to_cplx(k);
    const S rn = sqrt(dot(k, k));
    const C r = to_cplx(rn);
    const Vec3<C> khat{kc[0] / r, kc[1] / r, kc[2] / r};
    const C mi = C(-kImag);

    const auto l_component = [&](int a) {
      Vec3<C> out;
      for (int i = 0; i < 3; ++i) out[i] = mi * cross(kc, grad[i])[a];
      return out;
    };
    const auto j_component = [&](int a) { return spin_apply(a, val) + l_component(a); };

    switch (kind) {
      case DiffKind::l:
        return l_component(axis);
      case DiffKind::j:
        return j_component(axis);
      case DiffKind::chi:
      case DiffKind::js:
      case DiffKind::jo: {
        Vec3<C> chi;
        for (int a = 0; a < 3; ++a) chi += khat[a] * j_component(a);
        if (kind == DiffKind::chi) return chi;
        if (kind == DiffKind::js) return khat[axis] * chi;
        return j_component(axis) - khat[axis] * chi;
      }
      case DiffKind::k_boost: {
        const Vec3<C> da{grad[0][axis], grad[1][axis], grad[2][axis]};
        Vec3<C> e;
        e[axis] = C(1.0);
        const Vec3<C> raw = khat[axis] * val + r * da + cross(e, cross(khat, val));
        return C(kImag) * raw;
      }
    }
    return {};
  }

  Vec3<cplx> eval0(const Vec3<double>& k) const override { return at(k); }
  Vec3<C1> eval1(const Vec3<R1>& k) const override { return at(k); }
  Vec3<C2> eval2(const Vec3<R2>& k) const override { return at(k); }
  Vec3<C3> eval3(const Vec3<R3>&) const override {
    throw NonDifferentiableSection("operator stack exceeds the supported depth");
  }
};

struct SpinSection final : SectionExpr {
  SectionPtr inner;
  int axis;
  SpinSection(SectionPtr s, int a) : inner(std::move(s)), axis(a) {}
  template <class S>
  Vec3<complexify_t<S>> at(const Vec3<S>& k) const {
    return spin_apply(axis, section_eval(*inner, k));
  }
  Vec3<cplx> eval0(const Vec3<double>& k) const override { return at(k); }
  Vec3<C1> eval1(const Vec3<R1>& k) const override { return at(k); }
  Vec3<C2> eval2(const Vec3<R2>& k) const override { return at(k); }
  Vec3<C3> eval3(const Vec3<R3>& k) const override { return at(k); }
};

enum class MultKind { hamiltonian, momentum };

/// Multiplication operators: H s = |k| s and P_a s = k_a s.
struct MultSection final : SectionExpr {
  SectionPtr inner;
  MultKind kind;
  int axis;
  MultSection(SectionPtr s, MultKind mk, int a) : inner(std::move(s)), kind(mk), axis(a) {}
  template <class S>
  Vec3<complexify_t<S>> at(const Vec3<S>& k) const {
    using C = complexify_t<S>;
    const auto w = section_eval(*inner, k);
    const C factor =
        kind == MultKind::hamiltonian ? to_cplx(sqrt(dot(k, k))) : to_cplx(k[axis]);
    return factor * w;
  }
  Vec3<cplx> eval0(const Vec3<double>& k) const override { return at(k); }
  Vec3<C1> eval1(const Vec3<R1>& k) const override { return at(k); }
  Vec3<C2> eval2(const Vec3<R2>& k) const override { return at(k); }
  Vec3<C3> eval3(const Vec3<R3>& k) const override { return at(k); }
};

}  // namespace detail

/// A linear operator on sections. Composable; applying it yields a section
/// that can itself be differentiated (one dual level deeper per application).
class Operator {
 public:
  using Apply = std::function<Section(const Section&)>;

  Operator(std::string name, Apply apply)
      : name_(std::move(name)), apply_(std::move(apply)) {}

  const std::string& name() const { return name_; }

  Section operator()(const Section& s) const { return apply_(s); }

  Vec3c operator()(const Section& s, const WaveVector& k) const {
    return apply_(s)(k);
  }

  friend Operator operator*(const Operator& a, const Operator& b) {
    return Operator(a.name_ + "*" + b.name_,
                    [a, b](const Section& s) { return a(b(s)); });
  }
  friend Operator operator+(const Operator& a, const Operator& b) {
    return Operator(a.name_ + "+" + b.name_,
                    [a, b](const Section& s) { return a(s) + b(s); });
  }
  friend Operator operator-(const Operator& a, const Operator& b) {
    return Operator(a.name_ + "-" + b.name_,
                    [a, b](const Section& s) { return a(s) - b(s); });
  }
  friend Operator operator*(cplx c, const Operator& a) {
    return Operator("c*" + a.name_, [c, a](const Section& s) { return c * a(s); });
  }

  static Operator zero() {
    return Operator("0", [](const Section& s) { return cplx(0.0) * s; });
  }

 private:
  std::string name_;
  Apply apply_;
};

inline Operator commutator(const Operator& a, const Operator& b) {
  return a * b - b * a;
}

namespace detail {

inline Operator make_diff_op(const std::string& name, DiffKind kind, int axis) {
  return Operator(name, [kind, axis](const Section& s) {
    return Section(std::make_shared<DiffOpSection>(s.expr(), kind, axis));
  });
}

}  // namespace detail

static const char* const kAxisNames[3] = {"x", "y", "z"};

inline Operator op_S(int axis) {
  return Operator(std::string("S") + kAxisNames[axis], [axis](const Section& s) {
    return Section(std::make_shared<detail::SpinSection>(s.expr(), axis));
  });
}
inline Operator op_L(int axis) {
  return detail::make_diff_op(std::string("L") + kAxisNames[axis],
                              detail::DiffKind::l, axis);
}
inline Operator op_J(int axis) {
  return detail::make_diff_op(std::string("J") + kAxisNames[axis],
                              detail::DiffKind::j, axis);
}
inline Operator op_helicity() {
  return detail::make_diff_op("chi", detail::DiffKind::chi, 0);
}
inline Operator op_Js(int axis) {
  return detail::make_diff_op(std::string("Js") + kAxisNames[axis],
                              detail::DiffKind::js, axis);
}
inline Operator op_Jo(int axis) {
  return detail::make_diff_op(std::string("Jo") + kAxisNames[axis],
                              detail::DiffKind::jo, axis);
}
inline Operator op_K(int axis) {
  return detail::make_diff_op(std::string("K") + kAxisNames[axis],
                              detail::DiffKind::k_boost, axis);
}
inline Operator op_H() {
  return Operator("H", [](const Section& s) {
    return Section(
        std::make_shared<detail::MultSection>(s.expr(), detail::MultKind::hamiltonian, 0));
  });
}
inline Operator op_P(int axis) {
  return Operator(std::string("P") + kAxisNames[axis], [axis](const Section& s) {
    return Section(
        std::make_shared<detail::MultSection>(s.expr(), detail::MultKind::momentum, axis));
  });
}

namespace detail {

inline Vec3c maybe_project(const Vec3c& raw, const WaveVector& k, bool project) {
  if (!project) return raw;
  return transverse_part(to_complex(k.unit()), raw);
}

}  // namespace detail

// Pointwise evaluation helpers matching the per-operator call signatures.
// Raw outputs are generally not transverse (that non-transversality of S and
// L is itself exhibited by the tests); pass project = true to post-project.

inline Vec3c op_S(int axis, const Section& s, const WaveVector& k, bool project = false) {
  return detail::maybe_project(op_S(axis)(s, k), k, project);
}
inline Vec3c op_L(int axis, const Section& s, const WaveVector& k, bool project = false) {
  return detail::maybe_project(op_L(axis)(s, k), k, project);
}
inline Vec3c op_J(int axis, const Section& s, const WaveVector& k, bool project = false) {
  return detail::maybe_project(op_J(axis)(s, k), k, project);
}
inline Vec3c op_helicity(const Section& s, const WaveVector& k, bool project = false) {
  return detail::maybe_project(op_helicity()(s, k), k, project);
}
inline Vec3c op_Js(int axis, const Section& s, const WaveVector& k, bool project = false) {
  return detail::maybe_project(op_Js(axis)(s, k), k, project);
}
inline Vec3c op_Jo(int axis, const Section& s, const WaveVector& k, bool project = false) {
  return detail::maybe_project(op_Jo(axis)(s, k), k, project);
}
inline Vec3c op_K(int axis, const Section& s, const WaveVector& k, bool project = false) {
  return detail::maybe_project(op_K(axis)(s, k), k, project);
}

/// Max over sections and sample points of
/// ||[A,B]s - expected(s)|| / (1 + ||s||).
inline double commutator_check(const Operator& op_a, const Operator& op_b,
                               const Operator& expected,
                               const std::vector<Section>& sections,
                               const std::vector<WaveVector>& points) {
  const Operator comm = commutator(op_a, op_b);
  double worst = 0.0;
  for (const Section& s : sections) {
    const Section lhs = comm(s);
    const Section rhs = expected(s);
    for (const WaveVector& k : points) {
      const double denom = 1.0 + pb::norm(s(k));
      const double r = pb::norm(lhs(k) - rhs(k)) / denom;
      if (r > worst) worst = r;
    }
  }
  return worst;
}

/// Same scaling for a single operator identity test: max ||A s - B s||/(1+||s||).
inline double operator_identity_check(const Operator& op_a, const Operator& op_b,
                                      const std::vector<Section>& sections,
                                      const std::vector<WaveVector>& points) {
  double worst = 0.0;
  for (const Section& s : sections) {
    const Section lhs = op_a(s);
    const Section rhs = op_b(s);
    for (const WaveVector& k : points) {
      const double denom = 1.0 + pb::norm(s(k));
      const double r = pb::norm(lhs(k) - rhs(k)) / denom;
      if (r > worst) worst = r;
    }
  }
  return worst;
}

}  // namespace pb
