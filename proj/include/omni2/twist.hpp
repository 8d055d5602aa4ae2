#pragma once

#include "omni2/dirac.hpp"

namespace omni2 {

// ---------------------------------------------------------------------------
// Twists: self-morphisms of the endomorphism 2-algebra

inline Lie2Morphism identity_twist(const EndBases& eb) {
  return Lie2Morphism::identity(gl_complex(eb));
}

/// A twist is valid when it is a coherent self-morphism of gl.
inline CheckReport check_twist(const EndBases& eb, const Lie2Morphism& mu) {
  Lie2Structure gl = gl_as_lie2(eb);
  return morphism_coherence(gl, gl, mu);
}

/// Identity legs with χ = dα for a 1-cochain α on the endomorphism
/// 2-algebra.  Needs a zero differential on the base: only then does δ on
/// endomorphisms vanish, making every coboundary χ coherent as a twist.
inline Lie2Morphism mu_from_alpha(const EndBases& eb, const RatMatrix& alpha) {
  if (!eb.complex().d.is_zero())
    throw std::invalid_argument("coboundary twists need a zero differential on the base");
  if (alpha.rows() != eb.end1_dim() || alpha.cols() != eb.end0_dim())
    throw std::invalid_argument("cochain shape mismatch: expected end1 x end0");
  Lie2Morphism m = Lie2Morphism::identity(gl_complex(eb));
  m.chi = ce_differential(gl_as_lie2(eb), alpha);
  return m;
}

/// Conjugation by an invertible chain automorphism, with χ = 0.
inline Lie2Morphism twist_from_chain_auto(const EndBases& eb, const GlPair& g) {
  const auto& c = eb.complex();
  if (!is_chain_endo(c, g)) throw std::invalid_argument("conjugator must be a chain map");
  auto inv0 = inverse(g.a0);
  auto inv1 = inverse(g.a1);
  if (!inv0 || !inv1) throw std::invalid_argument("conjugator must be invertible");
  Lie2Morphism m = Lie2Morphism::identity(gl_complex(eb));
  for (std::size_t i = 0; i < eb.end0_dim(); ++i) {
    const GlPair& p = eb.basis_pairs()[i];
    GlPair conj{g.a0 * p.a0 * *inv0, g.a1 * p.a1 * *inv1};
    m.mu0.set_col(i, eb.coords_of_checked(conj));
  }
  for (std::size_t p = 0; p < eb.end1_dim(); ++p) {
    RatMatrix phi = unflatten_matrix(unit_vec(eb.end1_dim(), p), c.dim_v1, c.dim_v0);
    m.mu1.set_col(p, flatten_matrix(g.a1 * phi * *inv0));
  }
  return m;
}

// ---------------------------------------------------------------------------
// Twisted operations: the gl part is untwisted, the base part acts through μ

inline GlPair twist_pair(const EndBases& eb, const Lie2Morphism& mu, const GlPair& a) {
  return eb.pair_of(mu.mu0.apply(eb.coords_of_checked(a)));
}

inline GlMorphism twist_arrow(const EndBases& eb, const Lie2Morphism& mu, const GlMorphism& x) {
  RatVec a = mu.mu0.apply(eb.coords_of_checked(x.a));
  RatVec p = mu.mu1.apply(flatten_matrix(x.phi));
  return eb.mor_from_coords(vcat(a, p));
}

inline Morphism2 twisted_pairing(const OmniAmbient& oa, const Lie2Morphism& mu,
                                 const OmniMorphism& e1, const OmniMorphism& e2) {
  const auto& c = oa.complex();
  Morphism2 r1 = act(c, twist_arrow(oa.ends(), mu, e1.x), e2.f);
  Morphism2 r2 = act(c, twist_arrow(oa.ends(), mu, e2.x), e1.f);
  return {vscale(Rat(1, 2), vadd(r1.u, r2.u)), vscale(Rat(1, 2), vadd(r1.m, r2.m))};
}

inline RatVec twisted_pairing_obj(const OmniAmbient& oa, const Lie2Morphism& mu,
                                  const OmniObject& o1, const OmniObject& o2) {
  return vscale(Rat(1, 2), vadd(act_obj(twist_pair(oa.ends(), mu, o1.a), o2.u),
                                act_obj(twist_pair(oa.ends(), mu, o2.a), o1.u)));
}

inline OmniMorphism twisted_courant(const OmniAmbient& oa, const Lie2Morphism& mu,
                                    const OmniMorphism& e1, const OmniMorphism& e2) {
  const auto& c = oa.complex();
  Morphism2 r1 = act(c, twist_arrow(oa.ends(), mu, e1.x), e2.f);
  Morphism2 r2 = act(c, twist_arrow(oa.ends(), mu, e2.x), e1.f);
  return {gl_bracket(c, e1.x, e2.x),
          {vscale(Rat(1, 2), vsub(r1.u, r2.u)), vscale(Rat(1, 2), vsub(r1.m, r2.m))}};
}

inline OmniObject twisted_courant_obj(const OmniAmbient& oa, const Lie2Morphism& mu,
                                      const OmniObject& o1, const OmniObject& o2) {
  RatVec v = vscale(Rat(1, 2), vsub(act_obj(twist_pair(oa.ends(), mu, o1.a), o2.u),
                                    act_obj(twist_pair(oa.ends(), mu, o2.a), o1.u)));
  return {gl_commutator(o1.a, o2.a), std::move(v)};
}

inline OmniMorphism twisted_dorfman(const OmniAmbient& oa, const Lie2Morphism& mu,
                                    const OmniMorphism& e1, const OmniMorphism& e2) {
  const auto& c = oa.complex();
  Morphism2 r = act(c, twist_arrow(oa.ends(), mu, e1.x), e2.f);
  return {gl_bracket(c, e1.x, e2.x), r};
}

inline OmniObject twisted_dorfman_obj(const OmniAmbient& oa, const Lie2Morphism& mu,
                                      const OmniObject& o1, const OmniObject& o2) {
  return {gl_commutator(o1.a, o2.a), act_obj(twist_pair(oa.ends(), mu, o1.a), o2.u)};
}

// ---------------------------------------------------------------------------
// Twisted Dirac structures

inline RatMatrix twisted_pairing_block(const OmniAmbient& oa, const Lie2Morphism& mu,
                                       const RatVec& y) {
  const std::size_t n = oa.amb().mor_dim();
  RatMatrix block(oa.v_amb().mor_dim(), n);
  OmniMorphism ym = oa.decode(y);
  for (std::size_t i = 0; i < n; ++i) {
    Morphism2 p = twisted_pairing(oa, mu, oa.decode(unit_vec(n, i)), ym);
    block.set_col(i, make_mor(p.u, p.m));
  }
  return block;
}

inline Sub2 twisted_perp(const OmniAmbient& oa, const Lie2Morphism& mu, const Sub2& l) {
  const std::size_t n = oa.amb().mor_dim();
  Subspace lm = morphism_space(l);
  if (lm.is_zero()) return full_sub2(oa.amb());
  RatMatrix stacked(0, n);
  for (const auto& b : lm.basis()) stacked = vstack(stacked, twisted_pairing_block(oa, mu, b));
  auto split = split_morphism_space(oa.amb(), kernel_subspace(stacked));
  if (!split)
    throw std::logic_error("twisted orthogonal complement is not of product form; the input "
                           "was not a sub-2-space");
  return *split;
}

inline bool is_twisted_isotropic(const OmniAmbient& oa, const Lie2Morphism& mu, const Sub2& l) {
  Subspace lm = morphism_space(l);
  for (std::size_t i = 0; i < lm.dim(); ++i)
    for (std::size_t j = i; j < lm.dim(); ++j) {
      Morphism2 p = twisted_pairing(oa, mu, oa.decode(lm.basis()[i]), oa.decode(lm.basis()[j]));
      if (!vis_zero(p.u) || !vis_zero(p.m)) return false;
    }
  return true;
}

inline DiracDiag twisted_dirac_diagnose(const OmniAmbient& oa, const Lie2Morphism& mu,
                                        const Sub2& l) {
  DiracDiag diag;
  diag.maximal_isotropic = twisted_perp(oa, mu, l) == l;
  if (!diag.maximal_isotropic) diag.witness = "not equal to its twisted orthogonal complement";
  Subspace lm = morphism_space(l);
  diag.courant_closed = true;
  diag.dorfman_closed = true;
  for (std::size_t i = 0; i < lm.dim() && diag.courant_closed && diag.dorfman_closed; ++i)
    for (std::size_t j = 0; j < lm.dim(); ++j) {
      OmniMorphism a = oa.decode(lm.basis()[i]), b = oa.decode(lm.basis()[j]);
      if (!lm.contains(oa.encode(twisted_courant(oa, mu, a, b)))) {
        diag.courant_closed = false;
        diag.witness = "twisted skew bracket of basis arrows " + std::to_string(i) + ", " +
                       std::to_string(j) + " escapes";
        break;
      }
      if (!lm.contains(oa.encode(twisted_dorfman(oa, mu, a, b)))) {
        diag.dorfman_closed = false;
        diag.witness = "twisted Leibniz bracket of basis arrows " + std::to_string(i) + ", " +
                       std::to_string(j) + " escapes";
        break;
      }
    }
  return diag;
}

inline bool is_twisted_dirac(const OmniAmbient& oa, const Lie2Morphism& mu, const Sub2& l) {
  return twisted_dirac_diagnose(oa, mu, l).ok();
}

/// Structure induced on the base by a twisted graph: binary brackets through
/// μ∘F, the trilinear part through χ along F.
inline Lie2Structure lie2_from_twisted_graph(const OmniAmbient& oa, const Lie2Morphism& mu,
                                             const GlValuedFunctor& f) {
  const auto& c = oa.complex();
  const auto& eb = oa.ends();
  GlValuedFunctor mf{mu.mu0 * f.g0, mu.mu1 * f.g1};
  BilinearFunctor l2 = bilinear_from_gl_valued(eb, mf);
  Trilinear l3 = Trilinear::zero(c);
  for (std::size_t i = 0; i < c.dim_v0; ++i)
    for (std::size_t j = 0; j < c.dim_v0; ++j) {
      RatVec flat = eval_chi(mu, f.g0.col(i), f.g0.col(j), eb.end1_dim());
      RatMatrix phi = unflatten_matrix(flat, c.dim_v1, c.dim_v0);
      for (std::size_t k = 0; k < c.dim_v0; ++k) l3.t[i][j][k] = phi.col(k);
    }
  return {c, std::move(l2), std::move(l3)};
}

// ---------------------------------------------------------------------------
// Quadratic Lie algebras and the string-type construction

/// Finite-dimensional Lie algebra with an invariant inner product.
struct QuadraticLieAlgebra {
  std::size_t dim = 0;
  std::vector<std::vector<RatVec>> br; // br[i][j] ∈ Q^dim
  RatMatrix ip;                        // dim x dim, symmetric, invertible

  RatVec bracket(const RatVec& x, const RatVec& y) const {
    RatVec r(dim);
    for (std::size_t i = 0; i < dim; ++i) {
      if (x[i] == 0) continue;
      for (std::size_t j = 0; j < dim; ++j)
        if (y[j] != 0) r = vadd(r, vscale(x[i] * y[j], br[i][j]));
    }
    return r;
  }

  Rat pair(const RatVec& x, const RatVec& y) const {
    Rat r = 0;
    for (std::size_t i = 0; i < dim; ++i)
      for (std::size_t j = 0; j < dim; ++j) r += x[i] * ip.at(i, j) * y[j];
    return r;
  }
};

inline CheckReport check_quadratic(const QuadraticLieAlgebra& q) {
  CheckReport rep;
  const std::size_t n = q.dim;
  bool skew = true, jac = true, symm = true, inv = true;
  std::string w_skew, w_jac, w_symm, w_inv;
  for (std::size_t i = 0; i < n && skew; ++i)
    for (std::size_t j = 0; j < n && skew; ++j)
      if (!vis_zero(vadd(q.br[i][j], q.br[j][i]))) {
        skew = false;
        w_skew = "[e_" + std::to_string(i) + ", e_" + std::to_string(j) + "] is not skew";
      }
  for (std::size_t i = 0; i < n && jac; ++i)
    for (std::size_t j = 0; j < n && jac; ++j)
      for (std::size_t k = 0; k < n && jac; ++k) {
        RatVec s = q.bracket(q.br[i][j], unit_vec(n, k));
        s = vadd(s, q.bracket(q.br[j][k], unit_vec(n, i)));
        s = vadd(s, q.bracket(q.br[k][i], unit_vec(n, j)));
        if (!vis_zero(s)) {
          jac = false;
          w_jac = "Jacobi fails on (e_" + std::to_string(i) + ", e_" + std::to_string(j) +
                  ", e_" + std::to_string(k) + ")";
        }
      }
  if (!(q.ip == q.ip.transpose())) {
    symm = false;
    w_symm = "inner product matrix is not symmetric";
  }
  rep.record("bracket-skew", skew, w_skew);
  rep.record("bracket-jacobi", jac, w_jac);
  rep.record("form-symmetric", symm, w_symm);
  rep.record("form-nondegenerate", rank(q.ip) == n, "inner product matrix is singular");
  for (std::size_t i = 0; i < n && inv; ++i)
    for (std::size_t j = 0; j < n && inv; ++j)
      for (std::size_t k = 0; k < n && inv; ++k) {
        Rat lhs = q.pair(q.br[i][j], unit_vec(n, k));
        Rat rhs = q.pair(unit_vec(n, i), q.br[j][k]);
        if (lhs != rhs) {
          inv = false;
          w_inv = "<[e_" + std::to_string(i) + ", e_" + std::to_string(j) + "], e_" +
                  std::to_string(k) + "> breaks invariance";
        }
      }
  rep.record("form-invariant", inv, w_inv);
  return rep;
}

/// [e1,e2] = 1/2 e3 cyclic, with the standard inner product.
inline QuadraticLieAlgebra so3_quadratic() {
  QuadraticLieAlgebra q;
  q.dim = 3;
  q.br.assign(3, std::vector<RatVec>(3, vzero(3)));
  auto set = [&](std::size_t i, std::size_t j, std::size_t k) {
    q.br[i][j][k] = Rat(1, 2);
    q.br[j][i][k] = Rat(-1, 2);
  };
  set(0, 1, 2);
  set(1, 2, 0);
  set(2, 0, 1);
  q.ip = RatMatrix::identity(3);
  return q;
}

/// All the data of the string-type construction over a quadratic Lie
/// algebra: the base complex g ⊕ Q[1] with zero differential, the non-strict
/// structure with l3(u,v,w) = <[u,v], w>, the adjoint functor into gl, the
/// 1-cochain α(ad_u + r) = <u, ->, and the coboundary twist it generates.
struct StringTypeBundle {
  TwoTermComplex c;
  Lie2Structure lie2;
  GlValuedFunctor f;
  RatMatrix alpha;
  Lie2Morphism mu;
};

inline StringTypeBundle string_type(const QuadraticLieAlgebra& q) {
  CheckReport qrep = check_quadratic(q);
  if (!qrep.ok)
    throw std::invalid_argument("not a quadratic Lie algebra: " + qrep.summary());
  TwoTermComplex c(q.dim, 1, RatMatrix(q.dim, 1));
  EndBases eb(c);

  BilinearFunctor l2 = BilinearFunctor::zero(c);
  for (std::size_t i = 0; i < q.dim; ++i)
    for (std::size_t j = 0; j < q.dim; ++j) l2.f00[i][j] = q.br[i][j];
  GlValuedFunctor f = ad_functor(eb, l2);
  if (rank(f.g0) != q.dim)
    throw std::invalid_argument("string construction needs a centerless algebra: the adjoint "
                                "is not injective");

  // α sends ad_u to <u, -> and a fixed complement of the adjoint image to 0
  Subspace ad_img = image_subspace(f.g0);
  Subspace comp = complement(ad_img);
  RatMatrix decomp(eb.end0_dim(), q.dim + comp.dim());
  for (std::size_t i = 0; i < q.dim; ++i) decomp.set_col(i, f.g0.col(i));
  for (std::size_t i = 0; i < comp.dim(); ++i) decomp.set_col(q.dim + i, comp.basis()[i]);
  RatMatrix alpha(eb.end1_dim(), eb.end0_dim());
  for (std::size_t k = 0; k < eb.end0_dim(); ++k) {
    auto coeff = solve(decomp, unit_vec(eb.end0_dim(), k));
    if (!coeff) throw std::logic_error("adjoint image and its complement fail to span");
    RatVec u = vzero(q.dim);
    for (std::size_t i = 0; i < q.dim; ++i)
      if ((*coeff)[i] != 0) u = vadd(u, vscale((*coeff)[i], unit_vec(q.dim, i)));
    // φ = <u, -> : V0 -> Q, flat of a 1 x dim matrix is ip·u as a row
    alpha.set_col(k, q.ip.apply(u));
  }

  Trilinear l3 = Trilinear::zero(c);
  for (std::size_t i = 0; i < q.dim; ++i)
    for (std::size_t j = 0; j < q.dim; ++j)
      for (std::size_t k = 0; k < q.dim; ++k)
        l3.t[i][j][k] = RatVec{q.pair(q.br[i][j], unit_vec(q.dim, k))};

  StringTypeBundle b{c, {c, std::move(l2), std::move(l3)}, std::move(f), alpha,
                     mu_from_alpha(eb, alpha)};
  return b;
}

} // namespace omni2
