#pragma once

#include <functional>
#include <memory>
#include <utility>

#include "photonbundle/core.hpp"
#include "photonbundle/dual.hpp"
#include "photonbundle/errors.hpp"
#include "photonbundle/mesh.hpp"
#include "photonbundle/threads.hpp"

namespace pb {

/// A momentum-space field k -> C^3, evaluable at up to three nested dual
/// levels so that first, second, and third k-derivatives are exact.
struct SectionExpr {
  virtual ~SectionExpr() = default;
  virtual Vec3<cplx> eval0(const Vec3<double>& k) const = 0;
  virtual Vec3<C1> eval1(const Vec3<R1>& k) const = 0;
  virtual Vec3<C2> eval2(const Vec3<R2>& k) const = 0;
  virtual Vec3<C3> eval3(const Vec3<R3>& k) const = 0;
};

using SectionPtr = std::shared_ptr<const SectionExpr>;

inline Vec3<cplx> section_eval(const SectionExpr& s, const Vec3<double>& k) {
  return s.eval0(k);
}
inline Vec3<C1> section_eval(const SectionExpr& s, const Vec3<R1>& k) {
  return s.eval1(k);
}
inline Vec3<C2> section_eval(const SectionExpr& s, const Vec3<R2>& k) {
  return s.eval2(k);
}
inline Vec3<C3> section_eval(const SectionExpr& s, const Vec3<R3>& k) {
  return s.eval3(k);
}

namespace detail {

template <class F>
struct AnalyticSection final : SectionExpr {
  F f;
  explicit AnalyticSection(F fn) : f(std::move(fn)) {}
  Vec3<cplx> eval0(const Vec3<double>& k) const override { return f(k); }
  Vec3<C1> eval1(const Vec3<R1>& k) const override { return f(k); }
  Vec3<C2> eval2(const Vec3<R2>& k) const override { return f(k); }
  Vec3<C3> eval3(const Vec3<R3>& k) const override { return f(k); }
};

struct FunctionSection final : SectionExpr {
  std::function<Vec3c(const WaveVector&)> f;
  explicit FunctionSection(std::function<Vec3c(const WaveVector&)> fn)
      : f(std::move(fn)) {}
  Vec3<cplx> eval0(const Vec3<double>& k) const override {
    return f(WaveVector(k));
  }
  [[noreturn]] static Vec3<C1> no_dual() {
    throw NonDifferentiableSection(
        "section defined by a plain evaluator has no dual-number path");
  }
  Vec3<C1> eval1(const Vec3<R1>&) const override { no_dual(); }
  Vec3<C2> eval2(const Vec3<R2>&) const override { no_dual(); }
  Vec3<C3> eval3(const Vec3<R3>&) const override { no_dual(); }
};

struct SumSection final : SectionExpr {
  SectionPtr a, b;
  cplx ca, cb;
  SumSection(SectionPtr x, cplx sx, SectionPtr y, cplx sy)
      : a(std::move(x)), b(std::move(y)), ca(sx), cb(sy) {}
  template <class S>
  Vec3<complexify_t<S>> at(const Vec3<S>& k) const {
    using C = complexify_t<S>;
    return C(ca) * section_eval(*a, k) + C(cb) * section_eval(*b, k);
  }
  Vec3<cplx> eval0(const Vec3<double>& k) const override { return at(k); }
  Vec3<C1> eval1(const Vec3<R1>& k) const override { return at(k); }
  Vec3<C2> eval2(const Vec3<R2>& k) const override { return at(k); }
  Vec3<C3> eval3(const Vec3<R3>& k) const override { return at(k); }
};

struct ScaledSection final : SectionExpr {
  SectionPtr a;
  cplx s;
  ScaledSection(SectionPtr x, cplx c) : a(std::move(x)), s(c) {}
  template <class S>
  Vec3<complexify_t<S>> at(const Vec3<S>& k) const {
    using C = complexify_t<S>;
    return C(s) * section_eval(*a, k);
  }
  Vec3<cplx> eval0(const Vec3<double>& k) const override { return at(k); }
  Vec3<C1> eval1(const Vec3<R1>& k) const override { return at(k); }
  Vec3<C2> eval2(const Vec3<R2>& k) const override { return at(k); }
  Vec3<C3> eval3(const Vec3<R3>& k) const override { return at(k); }
};

}  // namespace detail

/// Value-semantic handle to a section of (a superset of) the photon bundle.
class Section {
 public:
  Section() = default;
  explicit Section(SectionPtr impl) : impl_(std::move(impl)) {}

  /// Section from a generic evaluator f(Vec3<S>) -> Vec3<complexify_t<S>>;
  /// supports all derivative levels.
  template <class F>
  static Section analytic(F f) {
    return Section(std::make_shared<detail::AnalyticSection<F>>(std::move(f)));
  }

  /// Section from a plain pointwise evaluator; no derivative support.
  static Section sampled(std::function<Vec3c(const WaveVector&)> f) {
    return Section(std::make_shared<detail::FunctionSection>(std::move(f)));
  }

  const SectionPtr& expr() const { return impl_; }
  bool valid() const { return impl_ != nullptr; }

  Vec3c operator()(const WaveVector& k) const { return impl_->eval0(k.vec()); }
  Vec3c operator()(const Vec3d& k) const { return impl_->eval0(k); }

  template <class S>
  Vec3<complexify_t<S>> at(const Vec3<S>& k) const {
    return section_eval(*impl_, k);
  }

  friend Section operator+(const Section& a, const Section& b) {
    return Section(std::make_shared<detail::SumSection>(a.impl_, 1.0, b.impl_, 1.0));
  }
  friend Section operator-(const Section& a, const Section& b) {
    return Section(std::make_shared<detail::SumSection>(a.impl_, 1.0, b.impl_, -1.0));
  }
  friend Section operator*(cplx c, const Section& a) {
    return Section(std::make_shared<detail::ScaledSection>(a.impl_, c));
  }

 private:
  SectionPtr impl_;
};

/// Quadrature approximation of the invariant-measure inner product
/// integral of <s1, s2> d^3k/|k| over the radial shell [r0, r1] times S^2.
/// Conjugate-linear in the first slot. The reduction order is fixed, so the
/// result is bit-identical across thread counts.
inline cplx sectional_inner_product(const Section& s1, const Section& s2,
                                    const SphereMesh& mesh, int radial_samples,
                                    double r0 = 1.0, double r1 = 2.0) {
  mesh.require_weights_cover_sphere();
  if (radial_samples < 1 || !(r1 > r0) || !(r0 > 0.0)) {
    throw DomainError("sectional_inner_product: bad radial shell");
  }
  const double dr = (r1 - r0) / radial_samples;
  const std::size_t n = mesh.size() * static_cast<std::size_t>(radial_samples);
  const auto map = [&](std::size_t begin, std::size_t end) {
    cplx acc = 0.0;
    for (std::size_t idx = begin; idx < end; ++idx) {
      const std::size_t m = idx / mesh.size();
      const std::size_t node = idx % mesh.size();
      const double r = r0 + (static_cast<double>(m) + 0.5) * dr;
      const Vec3d k = r * mesh.nodes[node].unit();
      // d^3k/|k| = r dr dA on the unit-sphere area element dA.
      const double w = mesh.weights[node] * r * dr;
      acc += w * hdot(s1(k), s2(k));
    }
    return acc;
  };
  return parallel_chunk_reduce<cplx>(
      n, 8192, cplx(0.0), map, [](cplx a, cplx b) { return a + b; });
}

}  // namespace pb
