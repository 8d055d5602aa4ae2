#pragma once

#include "omni2/omni.hpp"

namespace omni2 {

/// Subspace of coordinates [from, from+len) inside Q^total, i.e. vectors
/// supported there, usable for slicing intersections.
inline Subspace coord_band(std::size_t total, std::size_t from, std::size_t len) {
  std::vector<RatVec> rows;
  for (std::size_t i = 0; i < len; ++i) rows.push_back(unit_vec(total, from + i));
  return Subspace::from_rows(total, rows);
}

/// { slice(x) : x ∈ s, x supported on the band } — the part of s living
/// purely inside a coordinate band.
inline Subspace band_slice(const Subspace& s, std::size_t from, std::size_t len) {
  Subspace inter = intersect(s, coord_band(s.ambient(), from, len));
  std::vector<RatVec> rows;
  for (const auto& b : inter.basis()) rows.push_back(vslice(b, from, len));
  return Subspace::from_rows(len, rows);
}

/// Projection of s onto a coordinate band (forgetting the rest).
inline Subspace band_project(const Subspace& s, std::size_t from, std::size_t len) {
  std::vector<RatVec> rows;
  for (const auto& b : s.basis()) rows.push_back(vslice(b, from, len));
  return Subspace::from_rows(len, rows);
}

// ---------------------------------------------------------------------------
// Orthogonality

/// Orthogonal complement of a sub-2-space: arrow-level kernel of the pairing
/// against l, split back into a sub-2-space.  Splitness holds whenever l is a
/// genuine sub-2-space (target-closed), hence the hard failure otherwise.
inline Sub2 perp(const OmniAmbient& oa, const Sub2& l) {
  const std::size_t n = oa.amb().mor_dim();
  Subspace lm = morphism_space(l);
  if (lm.is_zero()) return full_sub2(oa.amb());
  RatMatrix stacked(0, n);
  for (const auto& b : lm.basis()) stacked = vstack(stacked, pairing_block(oa, b));
  Subspace ker = kernel_subspace(stacked);
  auto split = split_morphism_space(oa.amb(), ker);
  if (!split)
    throw std::logic_error("orthogonal complement is not of product form; the input was not a "
                           "sub-2-space");
  return *split;
}

inline CheckReport isotropy_report(const OmniAmbient& oa, const Sub2& l) {
  CheckReport rep;
  Subspace lm = morphism_space(l);
  for (std::size_t i = 0; i < lm.dim(); ++i)
    for (std::size_t j = i; j < lm.dim(); ++j) {
      Morphism2 p = omni_pairing(oa, oa.decode(lm.basis()[i]), oa.decode(lm.basis()[j]));
      if (!vis_zero(p.u) || !vis_zero(p.m)) {
        rep.fail("isotropy", "basis arrows " + std::to_string(i) + ", " + std::to_string(j) +
                                 " pair to " + vec_to_string(p.u));
        return rep;
      }
    }
  rep.pass("isotropy");
  return rep;
}

inline bool is_isotropic(const OmniAmbient& oa, const Sub2& l) {
  return isotropy_report(oa, l).ok;
}

inline bool is_maximal_isotropic(const OmniAmbient& oa, const Sub2& l) {
  return perp(oa, l) == l;
}

struct DiracDiag {
  bool maximal_isotropic = false;
  bool courant_closed = false;
  bool dorfman_closed = false;
  std::string witness;
  bool ok() const { return maximal_isotropic && courant_closed && dorfman_closed; }
};

/// Dirac test: maximal isotropy plus closure under both brackets (they agree
/// on isotropic subspaces; checking both guards the implementation).
inline DiracDiag dirac_diagnose(const OmniAmbient& oa, const Sub2& l) {
  DiracDiag diag;
  diag.maximal_isotropic = is_maximal_isotropic(oa, l);
  if (!diag.maximal_isotropic) diag.witness = "not equal to its orthogonal complement";
  Subspace lm = morphism_space(l);
  diag.courant_closed = true;
  diag.dorfman_closed = true;
  for (std::size_t i = 0; i < lm.dim() && diag.courant_closed && diag.dorfman_closed; ++i)
    for (std::size_t j = 0; j < lm.dim(); ++j) {
      OmniMorphism a = oa.decode(lm.basis()[i]), b = oa.decode(lm.basis()[j]);
      if (!lm.contains(oa.encode(omni_courant(oa, a, b)))) {
        diag.courant_closed = false;
        diag.witness = "skew bracket of basis arrows " + std::to_string(i) + ", " +
                       std::to_string(j) + " escapes";
        break;
      }
      if (!lm.contains(oa.encode(omni_dorfman(oa, a, b)))) {
        diag.dorfman_closed = false;
        diag.witness = "Leibniz bracket of basis arrows " + std::to_string(i) + ", " +
                       std::to_string(j) + " escapes";
        break;
      }
    }
  return diag;
}

inline bool is_dirac(const OmniAmbient& oa, const Sub2& l) { return dirac_diagnose(oa, l).ok(); }

// ---------------------------------------------------------------------------
// Graphs

/// Graph {g(x) + x : x} of a gl-valued functor, as a sub-2-space of the sum.
inline Sub2 graph_of(const OmniAmbient& oa, const GlValuedFunctor& g) {
  CheckReport chain = check_gl_valued_functor(oa.ends(), g);
  if (!chain.ok)
    throw std::invalid_argument("graph requires a chain functor: " + chain.summary());
  const auto& c = oa.complex();
  std::vector<RatVec> s0_rows, k_rows;
  for (std::size_t i = 0; i < c.dim_v0; ++i)
    s0_rows.push_back(vcat(g.g0.col(i), unit_vec(c.dim_v0, i)));
  for (std::size_t p = 0; p < c.dim_v1; ++p)
    k_rows.push_back(vcat(g.g1.col(p), unit_vec(c.dim_v1, p)));
  return make_sub2(oa.amb(), Subspace::from_rows(oa.amb().obj_dim, s0_rows),
                   Subspace::from_rows(oa.amb().ker_dim, k_rows));
}

inline Sub2 graph_of(const OmniAmbient& oa, const BilinearFunctor& f) {
  return graph_of(oa, ad_functor(oa.ends(), f));
}

/// The two summands as sub-2-spaces of the sum.
inline Sub2 gl_summand(const OmniAmbient& oa) {
  return make_sub2(oa.amb(), coord_band(oa.amb().obj_dim, 0, oa.ends().end0_dim()),
                   coord_band(oa.amb().ker_dim, 0, oa.ends().end1_dim()));
}

inline Sub2 v_summand(const OmniAmbient& oa) {
  const auto& c = oa.complex();
  return make_sub2(oa.amb(),
                   coord_band(oa.amb().obj_dim, oa.ends().end0_dim(), c.dim_v0),
                   coord_band(oa.amb().ker_dim, oa.ends().end1_dim(), c.dim_v1));
}

/// Embeddings of subs of the two summands into the sum.
inline Sub2 embed_gl_sub(const OmniAmbient& oa, const Sub2& g) {
  const auto& c = oa.complex();
  std::vector<RatVec> s0_rows, k_rows;
  for (const auto& b : g.s0.basis()) s0_rows.push_back(vcat(b, vzero(c.dim_v0)));
  for (const auto& b : g.k.basis()) k_rows.push_back(vcat(b, vzero(c.dim_v1)));
  return make_sub2(oa.amb(), Subspace::from_rows(oa.amb().obj_dim, s0_rows),
                   Subspace::from_rows(oa.amb().ker_dim, k_rows));
}

inline Sub2 embed_v_sub(const OmniAmbient& oa, const Sub2& w) {
  const auto& eb = oa.ends();
  std::vector<RatVec> s0_rows, k_rows;
  for (const auto& b : w.s0.basis()) s0_rows.push_back(vcat(vzero(eb.end0_dim()), b));
  for (const auto& b : w.k.basis()) k_rows.push_back(vcat(vzero(eb.end1_dim()), b));
  return make_sub2(oa.amb(), Subspace::from_rows(oa.amb().obj_dim, s0_rows),
                   Subspace::from_rows(oa.amb().ker_dim, k_rows));
}

// ---------------------------------------------------------------------------
// Characteristic pairs

/// l ∩ gl as a sub-2-space of the endomorphism 2-space.
inline Sub2 intersect_gl(const OmniAmbient& oa, const Sub2& l) {
  const std::size_t e0 = oa.ends().end0_dim(), e1 = oa.ends().end1_dim();
  return make_sub2(oa.gl_amb(), band_slice(l.s0, 0, e0), band_slice(l.k, 0, e1));
}

/// Part of the base 2-space on which every arrow of the gl sub-2-space d
/// acts as zero.
inline Sub2 null_space(const OmniAmbient& oa, const Sub2& d) {
  const auto& c = oa.complex();
  const auto& eb = oa.ends();
  std::vector<RatVec> obj_rows, ker_rows;
  for (const auto& a : d.s0.basis()) {
    GlPair p = eb.pair_of(a);
    for (std::size_t r = 0; r < c.dim_v0; ++r) obj_rows.push_back(p.a0.row(r));
    for (std::size_t r = 0; r < c.dim_v1; ++r) ker_rows.push_back(p.a1.row(r));
  }
  for (const auto& ph : d.k.basis()) {
    RatMatrix phi = unflatten_matrix(ph, c.dim_v1, c.dim_v0);
    for (std::size_t r = 0; r < c.dim_v1; ++r) obj_rows.push_back(phi.row(r));
    RatMatrix phid = phi * c.d;
    for (std::size_t r = 0; r < c.dim_v1; ++r) ker_rows.push_back(phid.row(r));
  }
  Subspace s0 = obj_rows.empty() ? Subspace::full(c.dim_v0)
                                 : kernel_subspace(RatMatrix::from_rows(obj_rows, c.dim_v0));
  Subspace k = ker_rows.empty() ? Subspace::full(c.dim_v1)
                                : kernel_subspace(RatMatrix::from_rows(ker_rows, c.dim_v1));
  return make_sub2(oa.v_amb(), std::move(s0), std::move(k));
}

/// Gl-arrows vanishing on a sub-2-space w of the base: object level kills
/// w's objects and kernel, kernel level kills w's objects and d-images.
inline Sub2 annihilator(const OmniAmbient& oa, const Sub2& w) {
  const auto& c = oa.complex();
  const auto& eb = oa.ends();
  // object level: rows are the linear conditions on end0 coordinates
  std::vector<RatVec> obj_rows;
  for (const auto& wv : w.s0.basis())
    for (std::size_t r = 0; r < c.dim_v0; ++r) {
      RatVec row(eb.end0_dim());
      for (std::size_t i = 0; i < eb.end0_dim(); ++i)
        row[i] = eb.basis_pairs()[i].a0.apply(wv)[r];
      obj_rows.push_back(std::move(row));
    }
  for (const auto& wn : w.k.basis())
    for (std::size_t r = 0; r < c.dim_v1; ++r) {
      RatVec row(eb.end0_dim());
      for (std::size_t i = 0; i < eb.end0_dim(); ++i)
        row[i] = eb.basis_pairs()[i].a1.apply(wn)[r];
      obj_rows.push_back(std::move(row));
    }
  Subspace s0 = obj_rows.empty() ? Subspace::full(eb.end0_dim())
                                 : kernel_subspace(RatMatrix::from_rows(obj_rows, eb.end0_dim()));

  // kernel level: φ must kill w.s0 and d(w.k)
  Subspace targets = sum(w.s0, image(c.d, w.k));
  std::vector<RatVec> ker_rows;
  for (const auto& x : targets.basis())
    for (std::size_t r = 0; r < c.dim_v1; ++r) {
      RatVec row(eb.end1_dim());
      for (std::size_t col = 0; col < c.dim_v0; ++col) row[r * c.dim_v0 + col] = x[col];
      ker_rows.push_back(std::move(row));
    }
  Subspace k = ker_rows.empty() ? Subspace::full(eb.end1_dim())
                                : kernel_subspace(RatMatrix::from_rows(ker_rows, eb.end1_dim()));
  return make_sub2(oa.gl_amb(), std::move(s0), std::move(k));
}

/// Characteristic data of a maximal isotropic sub-2-space: its gl part d,
/// the base part h = null(d), and the induced map π : h -> gl recorded in
/// the canonical bases of h, reduced to canonical representatives mod d.
struct CharacteristicPair {
  Sub2 d;          // over the gl ambient
  Sub2 h;          // over the base ambient
  RatMatrix pi0;   // end0_dim x h.s0.dim()
  RatMatrix pi1;   // end1_dim x h.k.dim()
};

inline CharacteristicPair characteristic_pair(const OmniAmbient& oa, const Sub2& l) {
  const auto& c = oa.complex();
  const std::size_t e0 = oa.ends().end0_dim(), e1 = oa.ends().end1_dim();
  Sub2 d = intersect_gl(oa, l);
  Sub2 h = null_space(oa, d);

  auto lift = [](const Subspace& space, std::size_t gl_len, std::size_t v_len,
                 const RatVec& target) -> std::optional<RatVec> {
    // find x ∈ space with v-slice = target; return its gl-slice
    RatMatrix m(v_len, space.dim());
    for (std::size_t i = 0; i < space.dim(); ++i)
      m.set_col(i, vslice(space.basis()[i], gl_len, v_len));
    auto coeff = solve(m, target);
    if (!coeff) return std::nullopt;
    RatVec x(gl_len);
    for (std::size_t i = 0; i < space.dim(); ++i)
      if ((*coeff)[i] != 0)
        x = vadd(x, vscale((*coeff)[i], vslice(space.basis()[i], 0, gl_len)));
    return x;
  };

  CharacteristicPair cp{std::move(d), std::move(h), RatMatrix(e0, 0), RatMatrix(e1, 0)};
  cp.pi0 = RatMatrix(e0, cp.h.s0.dim());
  for (std::size_t i = 0; i < cp.h.s0.dim(); ++i) {
    auto x = lift(l.s0, e0, c.dim_v0, cp.h.s0.basis()[i]);
    if (!x) throw std::invalid_argument("base projection of the subspace misses its null part; "
                                        "the input is not maximal isotropic");
    cp.pi0.set_col(i, cp.d.s0.reduce(*x));
  }
  cp.pi1 = RatMatrix(e1, cp.h.k.dim());
  for (std::size_t p = 0; p < cp.h.k.dim(); ++p) {
    auto x = lift(l.k, e1, c.dim_v1, cp.h.k.basis()[p]);
    if (!x) throw std::invalid_argument("kernel projection of the subspace misses its null part; "
                                        "the input is not maximal isotropic");
    cp.pi1.set_col(p, cp.d.k.reduce(*x));
  }
  return cp;
}

inline bool char_pairs_equal(const CharacteristicPair& a, const CharacteristicPair& b) {
  return a.d == b.d && a.h == b.h && a.pi0 == b.pi0 && a.pi1 == b.pi1;
}

/// Rebuild the sub-2-space described by a characteristic pair:
/// d embedded in gl plus the graph of π over h.
inline Sub2 sub_of_characteristic_pair(const OmniAmbient& oa, const CharacteristicPair& cp) {
  const auto& c = oa.complex();
  std::vector<RatVec> s0_rows, k_rows;
  for (const auto& b : cp.d.s0.basis()) s0_rows.push_back(vcat(b, vzero(c.dim_v0)));
  for (std::size_t i = 0; i < cp.h.s0.dim(); ++i)
    s0_rows.push_back(vcat(cp.pi0.col(i), cp.h.s0.basis()[i]));
  for (const auto& b : cp.d.k.basis()) k_rows.push_back(vcat(b, vzero(c.dim_v1)));
  for (std::size_t p = 0; p < cp.h.k.dim(); ++p)
    k_rows.push_back(vcat(cp.pi1.col(p), cp.h.k.basis()[p]));
  return make_sub2(oa.amb(), Subspace::from_rows(oa.amb().obj_dim, s0_rows),
                   Subspace::from_rows(oa.amb().ker_dim, k_rows));
}

inline CheckReport check_characteristic_pair(const OmniAmbient& oa, const Sub2& l,
                                             const CharacteristicPair& cp) {
  CheckReport rep;
  rep.record("reconstruction", sub_of_characteristic_pair(oa, cp) == l,
             "d ⊕ graph(π) does not rebuild the subspace");
  rep.record("projection-is-null",
             band_project(l.s0, oa.ends().end0_dim(), oa.complex().dim_v0) == cp.h.s0 &&
                 band_project(l.k, oa.ends().end1_dim(), oa.complex().dim_v1) == cp.h.k,
             "base projection differs from the null part of d");
  bool skew = true;
  std::string w_skew;
  for (std::size_t i = 0; i < cp.h.s0.dim() && skew; ++i)
    for (std::size_t j = 0; j < cp.h.s0.dim() && skew; ++j) {
      OmniObject a{oa.ends().pair_of(cp.pi0.col(i)), cp.h.s0.basis()[i]};
      OmniObject b{oa.ends().pair_of(cp.pi0.col(j)), cp.h.s0.basis()[j]};
      if (!vis_zero(omni_pairing_obj(oa, a, b))) {
        skew = false;
        w_skew = "π is not skew on basis objects " + std::to_string(i) + ", " + std::to_string(j);
      }
    }
  rep.record("pi-skew", skew, w_skew);
  return rep;
}

/// Strict structure induced on h by π: brackets are the action of π-values.
inline Lie2Structure induced_lie2(const OmniAmbient& oa, const CharacteristicPair& cp) {
  const auto& c = oa.complex();
  const std::size_t h0 = cp.h.s0.dim(), h1 = cp.h.k.dim();
  RatMatrix dh(h0, h1);
  for (std::size_t p = 0; p < h1; ++p) {
    auto col = cp.h.s0.coordinates_of(c.d.apply(cp.h.k.basis()[p]));
    if (!col) throw std::logic_error("null part is not closed under the differential");
    dh.set_col(p, *col);
  }
  TwoTermComplex ch(h0, h1, std::move(dh));
  BilinearFunctor f = BilinearFunctor::zero(ch);
  auto obj_coords = [&](const RatVec& v) {
    auto r = cp.h.s0.coordinates_of(v);
    if (!r) throw std::logic_error("induced bracket escapes the base projection");
    return *r;
  };
  auto ker_coords = [&](const RatVec& v) {
    auto r = cp.h.k.coordinates_of(v);
    if (!r) throw std::logic_error("induced bracket escapes the kernel projection");
    return *r;
  };
  for (std::size_t i = 0; i < h0; ++i) {
    GlPair a = oa.ends().pair_of(cp.pi0.col(i));
    for (std::size_t j = 0; j < h0; ++j) f.f00[i][j] = obj_coords(a.a0.apply(cp.h.s0.basis()[j]));
    for (std::size_t q = 0; q < h1; ++q) f.f01[i][q] = ker_coords(a.a1.apply(cp.h.k.basis()[q]));
  }
  for (std::size_t p = 0; p < h1; ++p) {
    RatMatrix phi = unflatten_matrix(cp.pi1.col(p), c.dim_v1, c.dim_v0);
    for (std::size_t j = 0; j < h0; ++j) f.f10[p][j] = ker_coords(phi.apply(cp.h.s0.basis()[j]));
  }
  return strict_lie2(std::move(ch), std::move(f));
}

// ---------------------------------------------------------------------------
// From a structured subspace back to a Dirac structure

/// The complex carried by a sub-2-space of the base, in its canonical bases.
inline TwoTermComplex sub_complex(const OmniAmbient& oa, const Sub2& w) {
  RatMatrix dw(w.s0.dim(), w.k.dim());
  for (std::size_t p = 0; p < w.k.dim(); ++p) {
    auto col = w.s0.coordinates_of(oa.complex().d.apply(w.k.basis()[p]));
    if (!col) throw std::invalid_argument("subspace is not closed under the differential");
    dw.set_col(p, *col);
  }
  return {w.s0.dim(), w.k.dim(), std::move(dw)};
}

/// Build the maximal isotropic sub-2-space carrying a given strict structure
/// on a sub-2-space w of the base: the annihilator of w plus a graph of
/// extended adjoint arrows.  Requires w to be saturated, i.e. every base
/// kernel element mapping into w's objects already lies in w's kernel part
/// up to ker d; otherwise no extension is maximal and the input is rejected.
inline Sub2 dirac_from_lie2(const OmniAmbient& oa, const Sub2& w, const Lie2Structure& s) {
  const auto& c = oa.complex();
  const auto& eb = oa.ends();
  if (!is_strict(s)) throw std::invalid_argument("structure on the subspace must be strict");
  {
    TwoTermComplex cw = sub_complex(oa, w);
    if (!(cw == s.c))
      throw std::invalid_argument("structure complex does not match the subspace");
  }
  {
    Subspace preim = preimage(c.d, w.s0);
    Subspace reachable = sum(w.k, kernel_subspace(c.d));
    if (!(preim == reachable))
      throw std::invalid_argument(
          "subspace is not saturated: d^{-1}(objects) exceeds kernel part + ker d, so every "
          "extension misses maximality");
  }

  Sub2 ann = annihilator(oa, w);

  // extended adjoint of each object basis vector: a chain endomorphism
  // prescribed on w and solved (free variables zero) elsewhere
  const std::size_t n0 = c.dim_v0, n1 = c.dim_v1;
  const std::size_t unknowns = n0 * n0 + n1 * n1;
  std::vector<RatVec> s0_rows, k_rows;
  for (std::size_t wi = 0; wi < w.s0.dim(); ++wi) {
    std::vector<RatVec> rows;
    RatVec rhs;
    auto push_row = [&](const RatVec& row, const Rat& b) {
      rows.push_back(row);
      rhs.push_back(b);
    };
    // a0 (w_j) = value in V0 coordinates
    for (std::size_t wj = 0; wj < w.s0.dim(); ++wj) {
      RatVec val(n0);
      {
        RatVec coords = s.l2.f00[wi][wj];
        for (std::size_t t = 0; t < w.s0.dim(); ++t)
          if (coords[t] != 0) val = vadd(val, vscale(coords[t], w.s0.basis()[t]));
      }
      for (std::size_t r = 0; r < n0; ++r) {
        RatVec row(unknowns);
        for (std::size_t cidx = 0; cidx < n0; ++cidx)
          row[r * n0 + cidx] = w.s0.basis()[wj][cidx];
        push_row(row, val[r]);
      }
    }
    // a1 (n_q) = value in V1 coordinates
    for (std::size_t q = 0; q < w.k.dim(); ++q) {
      RatVec val(n1);
      {
        RatVec coords = s.l2.f01[wi][q];
        for (std::size_t t = 0; t < w.k.dim(); ++t)
          if (coords[t] != 0) val = vadd(val, vscale(coords[t], w.k.basis()[t]));
      }
      for (std::size_t r = 0; r < n1; ++r) {
        RatVec row(unknowns);
        for (std::size_t cidx = 0; cidx < n1; ++cidx)
          row[n0 * n0 + r * n1 + cidx] = w.k.basis()[q][cidx];
        push_row(row, val[r]);
      }
    }
    // chain condition a0 d = d a1
    for (std::size_t r = 0; r < n0; ++r)
      for (std::size_t j = 0; j < n1; ++j) {
        RatVec row(unknowns);
        for (std::size_t kk = 0; kk < n0; ++kk) row[r * n0 + kk] += c.d.at(kk, j);
        for (std::size_t kk = 0; kk < n1; ++kk) row[n0 * n0 + kk * n1 + j] -= c.d.at(r, kk);
        push_row(row, Rat(0));
      }
    auto sol = solve(RatMatrix::from_rows(rows, unknowns), rhs);
    if (!sol)
      throw std::invalid_argument("adjoint of an object does not extend to a chain "
                                  "endomorphism; the structure is not d-compatible");
    GlPair ext{unflatten_matrix(vslice(*sol, 0, n0 * n0), n0, n0),
               unflatten_matrix(vslice(*sol, n0 * n0, n1 * n1), n1, n1)};
    s0_rows.push_back(vcat(eb.coords_of_checked(ext), w.s0.basis()[wi]));
  }

  // kernel level: zero-extension off w of the prescribed map into V1
  for (std::size_t p = 0; p < w.k.dim(); ++p) {
    RatMatrix phi(n1, n0);
    // φ(w_j) = f10(n_p, w_j) expanded in V1; φ = that composed with the
    // canonical projection onto w's objects (coordinates at pivot columns)
    for (std::size_t wj = 0; wj < w.s0.dim(); ++wj) {
      RatVec val(n1);
      RatVec coords = s.l2.f10[p][wj];
      for (std::size_t t = 0; t < w.k.dim(); ++t)
        if (coords[t] != 0) val = vadd(val, vscale(coords[t], w.k.basis()[t]));
      // add val ⊗ (dual functional of w_j supported on pivot coordinates)
      for (std::size_t r = 0; r < n1; ++r) phi.at(r, w.s0.pivots()[wj]) += val[r];
    }
    k_rows.push_back(vcat(flatten_matrix(phi), w.k.basis()[p]));
  }

  for (const auto& b : ann.s0.basis()) s0_rows.push_back(vcat(b, vzero(c.dim_v0)));
  for (const auto& b : ann.k.basis()) k_rows.push_back(vcat(b, vzero(c.dim_v1)));
  return make_sub2(oa.amb(), Subspace::from_rows(oa.amb().obj_dim, s0_rows),
                   Subspace::from_rows(oa.amb().ker_dim, k_rows));
}

// ---------------------------------------------------------------------------
// Normalizer and derivations

/// Gl arrows ξ with {ξ, k} ∈ K for every arrow k of K, as a sub-2-space of
/// the endomorphism 2-space.  One stacked kernel computation: the condition
/// is linear in ξ.
inline Sub2 normalizer(const OmniAmbient& oa, const Sub2& k) {
  const std::size_t gn = oa.gl_amb().mor_dim();
  Subspace km = morphism_space(k);
  RatMatrix resid = residual_map(km);
  RatMatrix stacked(0, gn);
  for (const auto& kb : km.basis()) {
    OmniMorphism ke = oa.decode(kb);
    RatMatrix t(oa.amb().mor_dim(), gn);
    for (std::size_t i = 0; i < gn; ++i) {
      GlMorphism xi = oa.ends().mor_from_coords(unit_vec(gn, i));
      t.set_col(i, oa.encode(omni_dorfman(oa, {xi, {vzero(oa.complex().dim_v0),
                                                    vzero(oa.complex().dim_v1)}},
                                          ke)));
    }
    stacked = vstack(stacked, resid * t);
  }
  Subspace ker = km.is_zero() ? Subspace::full(gn) : kernel_subspace(stacked);
  auto split = split_morphism_space(oa.gl_amb(), ker);
  if (!split) throw std::logic_error("normalizer is not of product form");
  return *split;
}

/// Gl arrows acting as derivations of a strict structure on the base:
/// ξ(bracket(f, g)) = bracket(ξ f, g) + bracket(f, ξ g) on all basis arrows.
inline Sub2 derivations(const OmniAmbient& oa, const Lie2Structure& s) {
  if (!is_strict(s)) throw std::invalid_argument("derivations require a strict structure");
  const auto& c = oa.complex();
  if (!(s.c == c)) throw std::invalid_argument("structure must live on the ambient complex");
  const std::size_t gn = oa.gl_amb().mor_dim();
  const std::size_t vn = oa.v_amb().mor_dim();
  std::vector<RatVec> rows;
  for (std::size_t a = 0; a < vn; ++a)
    for (std::size_t b = 0; b < vn; ++b) {
      RatVec fa = unit_vec(vn, a), fb = unit_vec(vn, b);
      Morphism2 f{vslice(fa, 0, c.dim_v0), vslice(fa, c.dim_v0, c.dim_v1)};
      Morphism2 g{vslice(fb, 0, c.dim_v0), vslice(fb, c.dim_v0, c.dim_v1)};
      Morphism2 fg = eval_mor(c, s.l2, f, g);
      RatMatrix t(vn, gn);
      for (std::size_t i = 0; i < gn; ++i) {
        GlMorphism xi = oa.ends().mor_from_coords(unit_vec(gn, i));
        Morphism2 lhs = act(c, xi, fg);
        Morphism2 r1 = eval_mor(c, s.l2, act(c, xi, f), g);
        Morphism2 r2 = eval_mor(c, s.l2, f, act(c, xi, g));
        t.set_col(i, vsub(make_mor(lhs.u, lhs.m),
                          vadd(make_mor(r1.u, r1.m), make_mor(r2.u, r2.m))));
      }
      for (std::size_t r = 0; r < vn; ++r) rows.push_back(t.row(r));
    }
  Subspace ker = kernel_subspace(RatMatrix::from_rows(rows, gn));
  auto split = split_morphism_space(oa.gl_amb(), ker);
  if (!split) throw std::logic_error("derivation space is not of product form");
  return *split;
}

} // namespace omni2
