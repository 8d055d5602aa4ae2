#pragma once

#include "omni2/sampler.hpp"
#include "omni2/sub2.hpp"

#include <functional>

namespace omni2 {

/// Chain endomorphism of d : V1 -> V0, i.e. a pair with a0 d = d a1.  These
/// are the objects of the endomorphism 2-algebra.
struct GlPair {
  RatMatrix a0; // dim_v0 x dim_v0
  RatMatrix a1; // dim_v1 x dim_v1
  bool operator==(const GlPair& o) const { return a0 == o.a0 && a1 == o.a1; }
};

/// Arrow A -> A + δφ of the endomorphism 2-algebra, recorded as the pair
/// (source object, φ) with φ : V0 -> V1.
struct GlMorphism {
  GlPair a;
  RatMatrix phi; // dim_v1 x dim_v0
  bool operator==(const GlMorphism& o) const { return a == o.a && phi == o.phi; }
};

inline GlPair gl_zero_pair(const TwoTermComplex& c) {
  return {RatMatrix(c.dim_v0, c.dim_v0), RatMatrix(c.dim_v1, c.dim_v1)};
}

inline GlPair gl_identity_pair(const TwoTermComplex& c) {
  return {RatMatrix::identity(c.dim_v0), RatMatrix::identity(c.dim_v1)};
}

inline bool is_chain_endo(const TwoTermComplex& c, const GlPair& a) {
  return (a.a0 * c.d - c.d * a.a1).is_zero();
}

/// δφ = (d φ, φ d); always a chain endomorphism.
inline GlPair delta(const TwoTermComplex& c, const RatMatrix& phi) {
  return {c.d * phi, phi * c.d};
}

inline GlPair gl_source(const GlMorphism& x) { return x.a; }

inline GlPair gl_target(const TwoTermComplex& c, const GlMorphism& x) {
  GlPair dphi = delta(c, x.phi);
  return {x.a.a0 + dphi.a0, x.a.a1 + dphi.a1};
}

inline GlPair gl_pair_add(const GlPair& a, const GlPair& b) { return {a.a0 + b.a0, a.a1 + b.a1}; }
inline GlPair gl_pair_sub(const GlPair& a, const GlPair& b) { return {a.a0 - b.a0, a.a1 - b.a1}; }
inline GlPair gl_pair_scale(const Rat& r, const GlPair& a) { return {a.a0 * r, a.a1 * r}; }

inline GlMorphism gl_mor_add(const GlMorphism& x, const GlMorphism& y) {
  return {gl_pair_add(x.a, y.a), x.phi + y.phi};
}
inline GlMorphism gl_mor_sub(const GlMorphism& x, const GlMorphism& y) {
  return {gl_pair_sub(x.a, y.a), x.phi - y.phi};
}
inline GlMorphism gl_mor_scale(const Rat& r, const GlMorphism& x) {
  return {gl_pair_scale(r, x.a), x.phi * r};
}

/// Componentwise commutator of chain endomorphisms.
inline GlPair gl_commutator(const GlPair& a, const GlPair& b) {
  return {a.a0 * b.a0 - b.a0 * a.a0, a.a1 * b.a1 - b.a1 * a.a1};
}

/// Mixed brackets making the morphism space a Lie algebra:
///   [A, ψ] = a1 ψ − ψ a0,   [φ, B] = φ b0 − b1 φ,   [φ, ψ] = φ d ψ − ψ d φ.
inline RatMatrix bracket_pair_phi(const GlPair& a, const RatMatrix& psi) {
  return a.a1 * psi - psi * a.a0;
}
inline RatMatrix bracket_phi_pair(const RatMatrix& phi, const GlPair& b) {
  return phi * b.a0 - b.a1 * phi;
}
inline RatMatrix bracket_phi_phi(const TwoTermComplex& c, const RatMatrix& phi,
                                 const RatMatrix& psi) {
  return phi * c.d * psi - psi * c.d * phi;
}

inline GlMorphism gl_bracket(const TwoTermComplex& c, const GlMorphism& x, const GlMorphism& y) {
  RatMatrix phi = bracket_pair_phi(x.a, y.phi) + bracket_phi_pair(x.phi, y.a) +
                  bracket_phi_phi(c, x.phi, y.phi);
  return {gl_commutator(x.a, y.a), std::move(phi)};
}

/// Action of an endomorphism arrow on a base arrow:
///   (A + φ)(u, m) = (a0 u, a1 m + φ(u + d m)).
inline Morphism2 act(const TwoTermComplex& c, const GlMorphism& x, const Morphism2& f) {
  RatVec tgt = vadd(f.u, c.d.apply(f.m));
  return {x.a.a0.apply(f.u), vadd(x.a.a1.apply(f.m), x.phi.apply(tgt))};
}

inline RatVec act_obj(const GlPair& a, const RatVec& u) { return a.a0.apply(u); }

/// Canonical coordinates for the endomorphism 2-algebra: a kernel basis of
/// the chain-map constraint on gl(V0) ⊕ gl(V1) indexes the objects, flat
/// Hom(V0, V1) matrices index the kernel directions.
class EndBases {
public:
  explicit EndBases(TwoTermComplex c) : c_(std::move(c)), end0_(Subspace::zero(0)) {
    const std::size_t n0 = c_.dim_v0, n1 = c_.dim_v1;
    // rows: entries of a0 d − d a1 (an n0 x n1 matrix); cols: flat (a0, a1)
    RatMatrix m(n0 * n1, n0 * n0 + n1 * n1);
    for (std::size_t i = 0; i < n0; ++i)
      for (std::size_t j = 0; j < n1; ++j) {
        const std::size_t row = i * n1 + j;
        for (std::size_t k = 0; k < n0; ++k) m.at(row, i * n0 + k) += c_.d.at(k, j);
        for (std::size_t k = 0; k < n1; ++k) m.at(row, n0 * n0 + k * n1 + j) -= c_.d.at(i, k);
      }
    end0_ = kernel_subspace(m);
    for (const auto& b : end0_.basis()) basis_pairs_.push_back(unflatten_pair(b));

    delta_mat_ = RatMatrix(end0_dim(), end1_dim());
    for (std::size_t p = 0; p < n1; ++p)
      for (std::size_t q = 0; q < n0; ++q) {
        RatMatrix e(n1, n0);
        e.at(p, q) = 1;
        auto col = coords_of(delta(c_, e));
        if (!col) throw std::logic_error("δ image escaped the chain-endomorphism space");
        delta_mat_.set_col(p * n0 + q, *col);
      }
  }

  const TwoTermComplex& complex() const { return c_; }
  std::size_t end0_dim() const { return end0_.dim(); }
  std::size_t end1_dim() const { return c_.dim_v1 * c_.dim_v0; }
  const Subspace& end0_space() const { return end0_; }
  const std::vector<GlPair>& basis_pairs() const { return basis_pairs_; }
  const RatMatrix& delta_mat() const { return delta_mat_; }

  TwoVectorAmbient ambient() const { return {end0_dim(), end1_dim(), delta_mat_}; }

  GlPair pair_of(const RatVec& coords) const {
    if (coords.size() != end0_dim()) throw std::invalid_argument("endomorphism coordinate size");
    GlPair a = gl_zero_pair(c_);
    for (std::size_t i = 0; i < coords.size(); ++i)
      if (coords[i] != 0) a = gl_pair_add(a, gl_pair_scale(coords[i], basis_pairs_[i]));
    return a;
  }

  std::optional<RatVec> coords_of(const GlPair& a) const {
    return end0_.coordinates_of(flatten_pair(a));
  }

  RatVec coords_of_checked(const GlPair& a) const {
    auto c = coords_of(a);
    if (!c) throw std::invalid_argument("matrix pair is not a chain endomorphism");
    return *c;
  }

  RatVec mor_coords(const GlMorphism& x) const {
    return make_mor(coords_of_checked(x.a), flatten_matrix(x.phi));
  }

  GlMorphism mor_from_coords(const RatVec& v) const {
    const TwoVectorAmbient amb = ambient();
    return {pair_of(mor_source(amb, v)),
            unflatten_matrix(mor_kpart(amb, v), c_.dim_v1, c_.dim_v0)};
  }

private:
  RatVec flatten_pair(const GlPair& a) const {
    return vcat(flatten_matrix(a.a0), flatten_matrix(a.a1));
  }
  GlPair unflatten_pair(const RatVec& v) const {
    const std::size_t n0 = c_.dim_v0;
    return {unflatten_matrix(vslice(v, 0, n0 * n0), n0, n0),
            unflatten_matrix(vslice(v, n0 * n0, c_.dim_v1 * c_.dim_v1), c_.dim_v1, c_.dim_v1)};
  }

  TwoTermComplex c_;
  Subspace end0_;
  std::vector<GlPair> basis_pairs_;
  RatMatrix delta_mat_;
};

inline GlMorphism sample_gl_morphism(const EndBases& eb, Sampler& smp) {
  const auto& c = eb.complex();
  return {eb.pair_of(smp.vec(eb.end0_dim())), smp.matrix(c.dim_v1, c.dim_v0)};
}

using GlBracketFn =
    std::function<GlMorphism(const TwoTermComplex&, const GlMorphism&, const GlMorphism&)>;

/// Structural identities of the endomorphism 2-algebra, sampled: the arrow
/// bracket is a Lie bracket, compatible with targets, and δ intertwines the
/// mixed brackets (equivariance and the Peiffer identity).
inline CheckReport check_dgla(const EndBases& eb, Sampler& smp, int samples,
                              const GlBracketFn& br = {}) {
  const auto& c = eb.complex();
  const GlBracketFn fn = br ? br : GlBracketFn(
      [](const TwoTermComplex& cc, const GlMorphism& x, const GlMorphism& y) {
        return gl_bracket(cc, x, y);
      });
  CheckReport rep;
  bool skew = true, jacobi = true, tgt = true, equiv = true, peiffer = true, closure = true;
  std::string w_skew, w_jacobi, w_tgt, w_equiv, w_peiffer, w_closure;
  for (int s = 0; s < samples; ++s) {
    GlMorphism x = sample_gl_morphism(eb, smp);
    GlMorphism y = sample_gl_morphism(eb, smp);
    GlMorphism z = sample_gl_morphism(eb, smp);

    GlMorphism xy = fn(c, x, y);
    if (closure && !(is_chain_endo(c, xy.a) && eb.coords_of(xy.a).has_value())) {
      closure = false;
      w_closure = "bracket object part left the chain-endomorphism space at sample " +
                  std::to_string(s);
    }
    GlMorphism yx = fn(c, y, x);
    if (skew && !(gl_mor_add(xy, yx).a.a0.is_zero() && gl_mor_add(xy, yx).a.a1.is_zero() &&
                  (xy.phi + yx.phi).is_zero())) {
      skew = false;
      w_skew = "[x,y] + [y,x] ≠ 0 at sample " + std::to_string(s);
    }
    GlMorphism j = gl_mor_add(gl_mor_add(fn(c, xy, z), fn(c, fn(c, y, z), x)),
                              fn(c, fn(c, z, x), y));
    if (jacobi && !(j.a.a0.is_zero() && j.a.a1.is_zero() && j.phi.is_zero())) {
      jacobi = false;
      w_jacobi = "Jacobi sum ≠ 0 at sample " + std::to_string(s);
    }
    GlPair lhs = gl_target(c, xy);
    GlPair rhs = gl_commutator(gl_target(c, x), gl_target(c, y));
    if (tgt && !(lhs == rhs)) {
      tgt = false;
      w_tgt = "target([x,y]) ≠ [target x, target y] at sample " + std::to_string(s);
    }
    // δ[A,ψ] = [A, δψ] with both sides expanded as chain endomorphisms
    GlPair e_lhs = delta(c, bracket_pair_phi(x.a, y.phi));
    GlPair e_rhs = gl_commutator(x.a, delta(c, y.phi));
    if (equiv && !(e_lhs == e_rhs)) {
      equiv = false;
      w_equiv = "δ[A,ψ] ≠ [A,δψ] at sample " + std::to_string(s);
    }
    // [δφ, ψ] = [φ, δψ] (= [φ,ψ])
    RatMatrix p_lhs = bracket_pair_phi(delta(c, x.phi), y.phi);
    RatMatrix p_rhs = bracket_phi_pair(x.phi, delta(c, y.phi));
    RatMatrix p_def = bracket_phi_phi(c, x.phi, y.phi);
    if (peiffer && !((p_lhs - p_rhs).is_zero() && (p_lhs - p_def).is_zero())) {
      peiffer = false;
      w_peiffer = "[δφ,ψ], [φ,δψ], [φ,ψ] disagree at sample " + std::to_string(s);
    }
  }
  rep.record("bracket-closure", closure, w_closure);
  rep.record("bracket-skew", skew, w_skew);
  rep.record("bracket-jacobi", jacobi, w_jacobi);
  rep.record("bracket-target", tgt, w_tgt);
  rep.record("delta-equivariance", equiv, w_equiv);
  rep.record("peiffer", peiffer, w_peiffer);
  return rep;
}

} // namespace omni2
