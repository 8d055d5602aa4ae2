#pragma once

#include "omni2/linalg.hpp"
#include "omni2/report.hpp"

namespace omni2 {

/// Two-term complex d : V1 -> V0 of rational vector spaces.  The associated
/// 2-vector space has object space V0 and morphism space V0 ⊕ V1, where
/// (u, m) is the arrow u -> u + d m.
struct TwoTermComplex {
  std::size_t dim_v0 = 0;
  std::size_t dim_v1 = 0;
  RatMatrix d; // dim_v0 x dim_v1

  TwoTermComplex() = default;
  TwoTermComplex(std::size_t v0, std::size_t v1, RatMatrix dd)
      : dim_v0(v0), dim_v1(v1), d(std::move(dd)) {
    if (d.rows() != dim_v0 || d.cols() != dim_v1)
      throw std::invalid_argument("differential shape mismatch");
  }

  std::size_t mor_dim() const { return dim_v0 + dim_v1; }
  bool operator==(const TwoTermComplex& o) const {
    return dim_v0 == o.dim_v0 && dim_v1 == o.dim_v1 && d == o.d;
  }
};

/// Arrow (u, m) : u -> u + d m.
struct Morphism2 {
  RatVec u; // source object
  RatVec m; // V1 component

  bool operator==(const Morphism2& o) const { return u == o.u && m == o.m; }
};

inline Morphism2 identity_of(const TwoTermComplex& c, const RatVec& u) {
  return {u, vzero(c.dim_v1)};
}

inline RatVec source(const TwoTermComplex&, const Morphism2& f) { return f.u; }

inline RatVec target(const TwoTermComplex& c, const Morphism2& f) {
  return vadd(f.u, c.d.apply(f.m));
}

/// Vertical composite of f : u -> u' followed by g : u' -> u''.
inline Morphism2 compose(const TwoTermComplex& c, const Morphism2& f, const Morphism2& g) {
  if (g.u != target(c, f)) throw std::invalid_argument("morphisms not composable");
  return {f.u, vadd(f.m, g.m)};
}

/// Linear functor between the 2-vector spaces of two complexes: a chain map
/// (f0, f1) with f0 d = d' f1.
struct LinearFunctor {
  RatMatrix f0; // dim_v0' x dim_v0
  RatMatrix f1; // dim_v1' x dim_v1
};

inline CheckReport check_linear_functor(const TwoTermComplex& dom, const TwoTermComplex& cod,
                                        const LinearFunctor& f) {
  CheckReport rep;
  if (f.f0.rows() != cod.dim_v0 || f.f0.cols() != dom.dim_v0 || f.f1.rows() != cod.dim_v1 ||
      f.f1.cols() != dom.dim_v1) {
    rep.fail("functor-shapes", "component shapes do not match the complexes");
    return rep;
  }
  const RatMatrix lhs = f.f0 * dom.d;
  const RatMatrix rhs = cod.d * f.f1;
  bool good = true;
  for (std::size_t j = 0; j < dom.dim_v1 && good; ++j) {
    RatVec cl = lhs.col(j), cr = rhs.col(j);
    if (cl != cr) {
      rep.fail("chain-map",
               "on basis vector " + std::to_string(j) + " of V1: f0(d m) = " + vec_to_string(cl) +
                   " but d(f1 m) = " + vec_to_string(cr));
      good = false;
    }
  }
  if (good) rep.pass("chain-map");
  return rep;
}

inline Morphism2 apply_functor(const LinearFunctor& f, const Morphism2& g) {
  return {f.f0.apply(g.u), f.f1.apply(g.m)};
}

} // namespace omni2
