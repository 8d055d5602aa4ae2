#pragma once

#include "omni2/glv.hpp"

namespace omni2 {

/// Skew bilinear bracket on a 2-vector space, stored as basis tensors:
///   f00[i][j] = bracket of object basis vectors e_i, e_j          (in V0)
///   f01[i][p] = bracket of e_i with kernel basis vector f_p       (in V1)
///   f10[p][i] = bracket of f_p with e_i                           (in V1)
/// The V1 x V1 component of the arrow-level bracket is not free: it is
/// forced to f01(d m, n) by functoriality.
struct BilinearFunctor {
  std::vector<std::vector<RatVec>> f00;
  std::vector<std::vector<RatVec>> f01;
  std::vector<std::vector<RatVec>> f10;

  static BilinearFunctor zero(const TwoTermComplex& c) {
    BilinearFunctor f;
    f.f00.assign(c.dim_v0, std::vector<RatVec>(c.dim_v0, vzero(c.dim_v0)));
    f.f01.assign(c.dim_v0, std::vector<RatVec>(c.dim_v1, vzero(c.dim_v1)));
    f.f10.assign(c.dim_v1, std::vector<RatVec>(c.dim_v0, vzero(c.dim_v1)));
    return f;
  }

  bool operator==(const BilinearFunctor& o) const {
    return f00 == o.f00 && f01 == o.f01 && f10 == o.f10;
  }
};

inline RatVec eval00(const BilinearFunctor& f, const RatVec& u, const RatVec& v) {
  RatVec r = f.f00.empty() ? RatVec{} : vzero(f.f00[0][0].size());
  for (std::size_t i = 0; i < u.size(); ++i) {
    if (u[i] == 0) continue;
    for (std::size_t j = 0; j < v.size(); ++j)
      if (v[j] != 0) r = vadd(r, vscale(u[i] * v[j], f.f00[i][j]));
  }
  return r;
}

inline RatVec eval01(const BilinearFunctor& f, const RatVec& u, const RatVec& n,
                     std::size_t dim_v1) {
  RatVec r = vzero(dim_v1);
  for (std::size_t i = 0; i < u.size(); ++i) {
    if (u[i] == 0) continue;
    for (std::size_t p = 0; p < n.size(); ++p)
      if (n[p] != 0) r = vadd(r, vscale(u[i] * n[p], f.f01[i][p]));
  }
  return r;
}

inline RatVec eval10(const BilinearFunctor& f, const RatVec& m, const RatVec& v,
                     std::size_t dim_v1) {
  RatVec r = vzero(dim_v1);
  for (std::size_t p = 0; p < m.size(); ++p) {
    if (m[p] == 0) continue;
    for (std::size_t i = 0; i < v.size(); ++i)
      if (v[i] != 0) r = vadd(r, vscale(m[p] * v[i], f.f10[p][i]));
  }
  return r;
}

/// Arrow-level bracket (the functor on morphisms).  The f01(d m, n) term is
/// what makes sources, targets and composition come out right.
inline Morphism2 eval_mor(const TwoTermComplex& c, const BilinearFunctor& f, const Morphism2& x,
                          const Morphism2& y) {
  RatVec kpart = vadd(vadd(eval01(f, x.u, y.m, c.dim_v1), eval10(f, x.m, y.u, c.dim_v1)),
                      eval01(f, c.d.apply(x.m), y.m, c.dim_v1));
  return {eval00(f, x.u, y.u), std::move(kpart)};
}

inline CheckReport check_skew(const TwoTermComplex& c, const BilinearFunctor& f) {
  CheckReport rep;
  bool obj = true, mixed = true;
  std::string w_obj, w_mixed;
  for (std::size_t i = 0; i < c.dim_v0 && obj; ++i)
    for (std::size_t j = 0; j < c.dim_v0 && obj; ++j)
      if (!vis_zero(vadd(f.f00[i][j], f.f00[j][i]))) {
        obj = false;
        w_obj = "f00 not skew at basis pair (" + std::to_string(i) + "," + std::to_string(j) + ")";
      }
  for (std::size_t p = 0; p < c.dim_v1 && mixed; ++p)
    for (std::size_t i = 0; i < c.dim_v0 && mixed; ++i)
      if (!vis_zero(vadd(f.f10[p][i], f.f01[i][p]))) {
        mixed = false;
        w_mixed = "f10(f_" + std::to_string(p) + ", e_" + std::to_string(i) +
                  ") ≠ −f01(e_" + std::to_string(i) + ", f_" + std::to_string(p) + ")";
      }
  rep.record("skew-objects", obj, w_obj);
  rep.record("skew-mixed", mixed, w_mixed);
  return rep;
}

inline CheckReport check_d_compat(const TwoTermComplex& c, const BilinearFunctor& f) {
  CheckReport rep;
  bool left = true, right = true, ker = true;
  std::string w_left, w_right, w_ker;
  for (std::size_t p = 0; p < c.dim_v1; ++p)
    for (std::size_t i = 0; i < c.dim_v0; ++i) {
      RatVec dm = c.d.col(p);
      if (left && eval00(f, dm, unit_vec(c.dim_v0, i)) != c.d.apply(f.f10[p][i])) {
        left = false;
        w_left = "f00(d f_" + std::to_string(p) + ", e_" + std::to_string(i) + ") ≠ d f10(f_" +
                 std::to_string(p) + ", e_" + std::to_string(i) + ")";
      }
      if (right && eval00(f, unit_vec(c.dim_v0, i), dm) != c.d.apply(f.f01[i][p])) {
        right = false;
        w_right = "f00(e_" + std::to_string(i) + ", d f_" + std::to_string(p) +
                  ") ≠ d f01(e_" + std::to_string(i) + ", f_" + std::to_string(p) + ")";
      }
    }
  for (std::size_t p = 0; p < c.dim_v1; ++p)
    for (std::size_t q = 0; q < c.dim_v1; ++q) {
      RatVec dm = c.d.col(p);
      RatVec dn = c.d.col(q);
      if (ker && eval10(f, unit_vec(c.dim_v1, p), dn, c.dim_v1) !=
                     eval01(f, dm, unit_vec(c.dim_v1, q), c.dim_v1)) {
        ker = false;
        w_ker = "f10(f_" + std::to_string(p) + ", d f_" + std::to_string(q) + ") ≠ f01(d f_" +
                std::to_string(p) + ", f_" + std::to_string(q) + ")";
      }
    }
  rep.record("d-compat-left", left, w_left);
  rep.record("d-compat-right", right, w_right);
  rep.record("d-compat-kernel", ker, w_ker);
  return rep;
}

/// Adjoint images of the bracket.  For a d-compatible bracket, ad of an
/// object is a chain endomorphism and ad of a kernel element lands in
/// Hom(V0, V1), with δ(ad m) = ad(d m).
inline GlPair ad_object(const TwoTermComplex& c, const BilinearFunctor& f, const RatVec& u) {
  RatMatrix a0(c.dim_v0, c.dim_v0), a1(c.dim_v1, c.dim_v1);
  for (std::size_t j = 0; j < c.dim_v0; ++j) a0.set_col(j, eval00(f, u, unit_vec(c.dim_v0, j)));
  for (std::size_t q = 0; q < c.dim_v1; ++q)
    a1.set_col(q, eval01(f, u, unit_vec(c.dim_v1, q), c.dim_v1));
  return {std::move(a0), std::move(a1)};
}

inline RatMatrix ad_kernel(const TwoTermComplex& c, const BilinearFunctor& f, const RatVec& m) {
  RatMatrix phi(c.dim_v1, c.dim_v0);
  for (std::size_t j = 0; j < c.dim_v0; ++j)
    phi.set_col(j, eval10(f, m, unit_vec(c.dim_v0, j), c.dim_v1));
  return phi;
}

/// Linear functor from the base 2-space to the endomorphism 2-space, in
/// coordinates: columns are ad of basis vectors.
struct GlValuedFunctor {
  RatMatrix g0; // end0_dim x dim_v0
  RatMatrix g1; // end1_dim x dim_v1
};

/// The endomorphism 2-space as a complex in canonical coordinates, so that
/// linear-functor machinery applies to gl-valued functors.
inline TwoTermComplex gl_complex(const EndBases& eb) {
  return {eb.end0_dim(), eb.end1_dim(), eb.delta_mat()};
}

inline GlValuedFunctor ad_functor(const EndBases& eb, const BilinearFunctor& f) {
  const auto& c = eb.complex();
  GlValuedFunctor g{RatMatrix(eb.end0_dim(), c.dim_v0), RatMatrix(eb.end1_dim(), c.dim_v1)};
  for (std::size_t i = 0; i < c.dim_v0; ++i)
    g.g0.set_col(i, eb.coords_of_checked(ad_object(c, f, unit_vec(c.dim_v0, i))));
  for (std::size_t p = 0; p < c.dim_v1; ++p)
    g.g1.set_col(p, flatten_matrix(ad_kernel(c, f, unit_vec(c.dim_v1, p))));
  return g;
}

inline CheckReport check_gl_valued_functor(const EndBases& eb, const GlValuedFunctor& g) {
  return check_linear_functor(eb.complex(), gl_complex(eb), {g.g0, g.g1});
}

inline GlPair gl_value_obj(const EndBases& eb, const GlValuedFunctor& g, const RatVec& u) {
  return eb.pair_of(g.g0.apply(u));
}

inline RatMatrix gl_value_ker(const EndBases& eb, const GlValuedFunctor& g, const RatVec& m) {
  const auto& c = eb.complex();
  return unflatten_matrix(g.g1.apply(m), c.dim_v1, c.dim_v0);
}

/// Bracket tensors induced by a gl-valued functor: bracket with u acts by
/// the chain endomorphism g0(u), bracket with m acts by the map g1(m).
/// d-compatibility is automatic when g is a chain functor; skewness is not.
inline BilinearFunctor bilinear_from_gl_valued(const EndBases& eb, const GlValuedFunctor& g) {
  const auto& c = eb.complex();
  BilinearFunctor f = BilinearFunctor::zero(c);
  for (std::size_t i = 0; i < c.dim_v0; ++i) {
    GlPair a = gl_value_obj(eb, g, unit_vec(c.dim_v0, i));
    for (std::size_t j = 0; j < c.dim_v0; ++j) f.f00[i][j] = a.a0.col(j);
    for (std::size_t p = 0; p < c.dim_v1; ++p) f.f01[i][p] = a.a1.col(p);
  }
  for (std::size_t p = 0; p < c.dim_v1; ++p) {
    RatMatrix phi = gl_value_ker(eb, g, unit_vec(c.dim_v1, p));
    for (std::size_t i = 0; i < c.dim_v0; ++i) f.f10[p][i] = phi.col(i);
  }
  return f;
}

} // namespace omni2
