#pragma once

#include "omni2/lie2.hpp"

namespace omni2 {

/// Element of gl(V) ⊕ V at object level.
struct OmniObject {
  GlPair a;
  RatVec u;
};

/// Element of gl(V) ⊕ V at arrow level.
struct OmniMorphism {
  GlMorphism x;
  Morphism2 f;
};

/// Coordinate bundle for the omni 2-algebra over one complex: the
/// endomorphism 2-space, the base 2-space, and their direct sum, together
/// with encoders between the structured and flat pictures.  Morphism
/// coordinates are laid out as [end0 | V0 | end1-flat | V1].
class OmniAmbient {
public:
  explicit OmniAmbient(TwoTermComplex c)
      : eb_(std::move(c)), gl_amb_(eb_.ambient()), v_amb_(ambient_of(eb_.complex())),
        amb_(direct_sum(gl_amb_, v_amb_)) {}

  const TwoTermComplex& complex() const { return eb_.complex(); }
  const EndBases& ends() const { return eb_; }
  const TwoVectorAmbient& gl_amb() const { return gl_amb_; }
  const TwoVectorAmbient& v_amb() const { return v_amb_; }
  const TwoVectorAmbient& amb() const { return amb_; }

  RatVec encode(const OmniMorphism& e) const {
    return make_mor(vcat(eb_.coords_of_checked(e.x.a), e.f.u),
                    vcat(flatten_matrix(e.x.phi), e.f.m));
  }
  OmniMorphism decode(const RatVec& v) const {
    const auto& c = complex();
    RatVec obj = mor_source(amb_, v), ker = mor_kpart(amb_, v);
    return {{eb_.pair_of(vslice(obj, 0, eb_.end0_dim())),
             unflatten_matrix(vslice(ker, 0, eb_.end1_dim()), c.dim_v1, c.dim_v0)},
            {vslice(obj, eb_.end0_dim(), c.dim_v0), vslice(ker, eb_.end1_dim(), c.dim_v1)}};
  }

  RatVec encode_obj(const OmniObject& o) const {
    return vcat(eb_.coords_of_checked(o.a), o.u);
  }
  OmniObject decode_obj(const RatVec& v) const {
    return {eb_.pair_of(vslice(v, 0, eb_.end0_dim())),
            vslice(v, eb_.end0_dim(), complex().dim_v0)};
  }

  /// Embeddings of the two summands at arrow level.
  RatVec encode_gl(const GlMorphism& x) const {
    return encode({x, {vzero(complex().dim_v0), vzero(complex().dim_v1)}});
  }
  RatVec encode_v(const Morphism2& f) const {
    return encode({{gl_zero_pair(complex()), RatMatrix(complex().dim_v1, complex().dim_v0)}, f});
  }

private:
  EndBases eb_;
  TwoVectorAmbient gl_amb_, v_amb_, amb_;
};

/// ⟨e1, e2⟩ = (X1(f2) + X2(f1)) / 2, an arrow of the base 2-space.
inline Morphism2 omni_pairing(const OmniAmbient& oa, const OmniMorphism& e1,
                              const OmniMorphism& e2) {
  const auto& c = oa.complex();
  Morphism2 s = act(c, e1.x, e2.f), t = act(c, e2.x, e1.f);
  return {vscale(Rat(1, 2), vadd(s.u, t.u)), vscale(Rat(1, 2), vadd(s.m, t.m))};
}

inline RatVec omni_pairing_obj(const OmniAmbient&, const OmniObject& o1, const OmniObject& o2) {
  return vscale(Rat(1, 2), vadd(act_obj(o1.a, o2.u), act_obj(o2.a, o1.u)));
}

/// ⟦e1, e2⟧ = ([X1, X2], (X1(f2) − X2(f1)) / 2), the skew bracket.
inline OmniMorphism omni_courant(const OmniAmbient& oa, const OmniMorphism& e1,
                                 const OmniMorphism& e2) {
  const auto& c = oa.complex();
  Morphism2 s = act(c, e1.x, e2.f), t = act(c, e2.x, e1.f);
  return {gl_bracket(c, e1.x, e2.x),
          {vscale(Rat(1, 2), vsub(s.u, t.u)), vscale(Rat(1, 2), vsub(s.m, t.m))}};
}

inline OmniObject omni_courant_obj(const OmniAmbient&, const OmniObject& o1,
                                   const OmniObject& o2) {
  return {gl_commutator(o1.a, o2.a),
          vscale(Rat(1, 2), vsub(act_obj(o1.a, o2.u), act_obj(o2.a, o1.u)))};
}

/// {e1, e2} = ([X1, X2], X1(f2)), the left-Leibniz bracket; equals the skew
/// bracket plus the pairing in the base component.
inline OmniMorphism omni_dorfman(const OmniAmbient& oa, const OmniMorphism& e1,
                                 const OmniMorphism& e2) {
  return {gl_bracket(oa.complex(), e1.x, e2.x), act(oa.complex(), e1.x, e2.f)};
}

inline OmniObject omni_dorfman_obj(const OmniAmbient&, const OmniObject& o1,
                                   const OmniObject& o2) {
  return {gl_commutator(o1.a, o2.a), act_obj(o1.a, o2.u)};
}

inline OmniMorphism sample_omni(const OmniAmbient& oa, Sampler& smp) {
  const auto& c = oa.complex();
  return {sample_gl_morphism(oa.ends(), smp), {smp.vec(c.dim_v0), smp.vec(c.dim_v1)}};
}

/// Cyclic failure of the Jacobi identity for the skew bracket.  The nested
/// sum has no gl component and its base component is the quarter formula
/// ([X1,X2](f3) + [X2,X3](f1) + [X3,X1](f2)) / 4.
struct AnomalyResult {
  OmniMorphism nested;
  Morphism2 quarter;
  bool gl_part_zero = false;
  bool matches = false;
};

inline AnomalyResult jacobi_anomaly(const OmniAmbient& oa, const OmniMorphism& e1,
                                    const OmniMorphism& e2, const OmniMorphism& e3) {
  const auto& c = oa.complex();
  auto nest = [&](const OmniMorphism& a, const OmniMorphism& b, const OmniMorphism& cc) {
    return omni_courant(oa, omni_courant(oa, a, b), cc);
  };
  OmniMorphism n1 = nest(e1, e2, e3), n2 = nest(e2, e3, e1), n3 = nest(e3, e1, e2);
  OmniMorphism nested{
      {gl_pair_add(gl_pair_add(n1.x.a, n2.x.a), n3.x.a), n1.x.phi + n2.x.phi + n3.x.phi},
      {vadd(vadd(n1.f.u, n2.f.u), n3.f.u), vadd(vadd(n1.f.m, n2.f.m), n3.f.m)}};

  auto quarter_term = [&](const OmniMorphism& a, const OmniMorphism& b, const OmniMorphism& cc) {
    return act(c, gl_bracket(c, a.x, b.x), cc.f);
  };
  Morphism2 q1 = quarter_term(e1, e2, e3), q2 = quarter_term(e2, e3, e1),
            q3 = quarter_term(e3, e1, e2);
  Morphism2 quarter{vscale(Rat(1, 4), vadd(vadd(q1.u, q2.u), q3.u)),
                    vscale(Rat(1, 4), vadd(vadd(q1.m, q2.m), q3.m))};

  AnomalyResult r{std::move(nested), std::move(quarter)};
  r.gl_part_zero = r.nested.x.a.a0.is_zero() && r.nested.x.a.a1.is_zero() &&
                   r.nested.x.phi.is_zero();
  r.matches = r.gl_part_zero && r.nested.f.u == r.quarter.u && r.nested.f.m == r.quarter.m;
  return r;
}

// ---------------------------------------------------------------------------
// Generic functoriality checking over ambient coordinates.

using CoordBiOp = std::function<RatVec(const RatVec&, const RatVec&)>;

/// Check that a bilinear operation on arrow coordinates is a bilinear
/// functor: compatible with sources and targets of its object-level shadow,
/// with composition (interchange), and linear in each slot.
inline CheckReport check_bilinear_functor(const TwoVectorAmbient& a, const TwoVectorAmbient& b,
                                          const TwoVectorAmbient& out, const CoordBiOp& mor_op,
                                          const CoordBiOp& obj_op, Sampler& smp, int samples,
                                          const std::string& prefix) {
  CheckReport rep;
  bool src = true, tgt = true, inter = true, lin = true;
  std::string w_src, w_tgt, w_inter, w_lin;
  for (int s = 0; s < samples; ++s) {
    RatVec f = smp.vec(a.mor_dim()), g = smp.vec(b.mor_dim());
    RatVec fg = mor_op(f, g);
    if (src && mor_source(out, fg) != obj_op(mor_source(a, f), mor_source(b, g))) {
      src = false;
      w_src = "source mismatch at sample " + std::to_string(s);
    }
    if (tgt && mor_target(out, fg) != obj_op(mor_target(a, f), mor_target(b, g))) {
      tgt = false;
      w_tgt = "target mismatch at sample " + std::to_string(s);
    }
    // interchange on a composable square built over f, g
    RatVec f2 = make_mor(mor_target(a, f), smp.vec(a.ker_dim));
    RatVec g2 = make_mor(mor_target(b, g), smp.vec(b.ker_dim));
    RatVec lhs = mor_op(compose_mor(a, f, f2), compose_mor(b, g, g2));
    RatVec rhs = compose_mor(out, fg, mor_op(f2, g2));
    if (inter && lhs != rhs) {
      inter = false;
      w_inter = "interchange fails at sample " + std::to_string(s);
    }
    // bilinearity in both slots
    RatVec f3 = smp.vec(a.mor_dim()), g3 = smp.vec(b.mor_dim());
    const Rat lam(3, 2);
    RatVec left = mor_op(vadd(f, vscale(lam, f3)), g);
    RatVec right = vadd(fg, vscale(lam, mor_op(f3, g)));
    bool lin_l = left == right;
    left = mor_op(f, vadd(g, vscale(lam, g3)));
    right = vadd(fg, vscale(lam, mor_op(f, g3)));
    if (lin && (!lin_l || left != right)) {
      lin = false;
      w_lin = "bilinearity fails at sample " + std::to_string(s);
    }
  }
  rep.record(prefix + "-source", src, w_src);
  rep.record(prefix + "-target", tgt, w_tgt);
  rep.record(prefix + "-interchange", inter, w_inter);
  rep.record(prefix + "-bilinear", lin, w_lin);
  return rep;
}

/// Coordinate closures for the three operations and the action.
inline CoordBiOp pairing_mor_op(const OmniAmbient& oa) {
  return [&oa](const RatVec& x, const RatVec& y) {
    Morphism2 p = omni_pairing(oa, oa.decode(x), oa.decode(y));
    return make_mor(p.u, p.m);
  };
}
inline CoordBiOp pairing_obj_op(const OmniAmbient& oa) {
  return [&oa](const RatVec& x, const RatVec& y) {
    return omni_pairing_obj(oa, oa.decode_obj(x), oa.decode_obj(y));
  };
}
inline CoordBiOp courant_mor_op(const OmniAmbient& oa) {
  return [&oa](const RatVec& x, const RatVec& y) {
    return oa.encode(omni_courant(oa, oa.decode(x), oa.decode(y)));
  };
}
inline CoordBiOp courant_obj_op(const OmniAmbient& oa) {
  return [&oa](const RatVec& x, const RatVec& y) {
    return oa.encode_obj(omni_courant_obj(oa, oa.decode_obj(x), oa.decode_obj(y)));
  };
}
inline CoordBiOp dorfman_mor_op(const OmniAmbient& oa) {
  return [&oa](const RatVec& x, const RatVec& y) {
    return oa.encode(omni_dorfman(oa, oa.decode(x), oa.decode(y)));
  };
}
inline CoordBiOp dorfman_obj_op(const OmniAmbient& oa) {
  return [&oa](const RatVec& x, const RatVec& y) {
    return oa.encode_obj(omni_dorfman_obj(oa, oa.decode_obj(x), oa.decode_obj(y)));
  };
}

/// One report covering functoriality of all three operations and the action,
/// the symmetry/decomposition identities, Leibniz, and the anomaly formula.
inline CheckReport check_omni_structure(const OmniAmbient& oa, Sampler& smp, int samples) {
  CheckReport rep;
  rep.merge(check_bilinear_functor(oa.amb(), oa.amb(), oa.v_amb(), pairing_mor_op(oa),
                                   pairing_obj_op(oa), smp, samples, "pairing"));
  rep.merge(check_bilinear_functor(oa.amb(), oa.amb(), oa.amb(), courant_mor_op(oa),
                                   courant_obj_op(oa), smp, samples, "courant"));
  rep.merge(check_bilinear_functor(oa.amb(), oa.amb(), oa.amb(), dorfman_mor_op(oa),
                                   dorfman_obj_op(oa), smp, samples, "dorfman"));
  {
    const auto& c = oa.complex();
    CoordBiOp act_mor = [&oa](const RatVec& x, const RatVec& f) {
      Morphism2 r = act(oa.complex(), oa.ends().mor_from_coords(x),
                        {mor_source(oa.v_amb(), f), mor_kpart(oa.v_amb(), f)});
      return make_mor(r.u, r.m);
    };
    CoordBiOp act_obj_op = [&oa](const RatVec& x, const RatVec& u) {
      return act_obj(oa.ends().pair_of(x), u);
    };
    (void)c;
    rep.merge(check_bilinear_functor(oa.gl_amb(), oa.v_amb(), oa.v_amb(), act_mor, act_obj_op,
                                     smp, samples, "action"));
  }

  bool symm = true, decomp = true, leibniz = true, anomaly = true;
  std::string w_symm, w_decomp, w_leibniz, w_anomaly;
  for (int s = 0; s < samples; ++s) {
    OmniMorphism e1 = sample_omni(oa, smp), e2 = sample_omni(oa, smp),
                 e3 = sample_omni(oa, smp);
    Morphism2 p12 = omni_pairing(oa, e1, e2), p21 = omni_pairing(oa, e2, e1);
    if (symm && !(p12 == p21)) {
      symm = false;
      w_symm = "pairing not symmetric at sample " + std::to_string(s);
    }
    OmniMorphism cr = omni_courant(oa, e1, e2), dr = omni_dorfman(oa, e1, e2);
    if (decomp && !(dr.x == cr.x && dr.f.u == vadd(cr.f.u, p12.u) &&
                    dr.f.m == vadd(cr.f.m, p12.m))) {
      decomp = false;
      w_decomp = "Leibniz bracket ≠ skew bracket + pairing at sample " + std::to_string(s);
    }
    // {e1, {e2, e3}} = {{e1, e2}, e3} + {e2, {e1, e3}}
    OmniMorphism lhs = omni_dorfman(oa, e1, omni_dorfman(oa, e2, e3));
    OmniMorphism r1 = omni_dorfman(oa, omni_dorfman(oa, e1, e2), e3);
    OmniMorphism r2 = omni_dorfman(oa, e2, omni_dorfman(oa, e1, e3));
    OmniMorphism rhs{{gl_pair_add(r1.x.a, r2.x.a), r1.x.phi + r2.x.phi},
                     {vadd(r1.f.u, r2.f.u), vadd(r1.f.m, r2.f.m)}};
    if (leibniz && !(lhs.x == rhs.x && lhs.f == rhs.f)) {
      leibniz = false;
      w_leibniz = "Leibniz identity fails at sample " + std::to_string(s);
    }
    AnomalyResult an = jacobi_anomaly(oa, e1, e2, e3);
    if (anomaly && !an.matches) {
      anomaly = false;
      w_anomaly = "anomaly ≠ quarter formula at sample " + std::to_string(s);
    }
  }
  rep.record("pairing-symmetric", symm, w_symm);
  rep.record("dorfman-decomposition", decomp, w_decomp);
  rep.record("dorfman-leibniz", leibniz, w_leibniz);
  rep.record("jacobi-anomaly-quarter", anomaly, w_anomaly);
  return rep;
}

/// Linear map x ↦ coordinates of ⟨x, y⟩ for fixed y, as a matrix acting on
/// arrow coordinates.  Rows of stacked blocks of this kind cut out
/// orthogonal complements.
inline RatMatrix pairing_block(const OmniAmbient& oa, const RatVec& y) {
  const std::size_t n = oa.amb().mor_dim();
  const std::size_t out = oa.v_amb().mor_dim();
  RatMatrix block(out, n);
  OmniMorphism ym = oa.decode(y);
  for (std::size_t i = 0; i < n; ++i) {
    Morphism2 p = omni_pairing(oa, oa.decode(unit_vec(n, i)), ym);
    block.set_col(i, make_mor(p.u, p.m));
  }
  return block;
}

/// Arrow-level radical { x : ⟨x, y⟩ = 0 for all y }; trivial iff the pairing
/// is nondegenerate.
inline Subspace pairing_radical(const OmniAmbient& oa) {
  const std::size_t n = oa.amb().mor_dim();
  RatMatrix stacked(0, n);
  for (std::size_t j = 0; j < n; ++j)
    stacked = vstack(stacked, pairing_block(oa, unit_vec(n, j)));
  return kernel_subspace(stacked);
}

} // namespace omni2
