#pragma once

#include "omni2/bilinear.hpp"

namespace omni2 {

/// Trilinear alternating map V0^3 -> V1.
struct Trilinear {
  std::vector<std::vector<std::vector<RatVec>>> t; // t[i][j][k] ∈ V1

  static Trilinear zero(const TwoTermComplex& c) {
    Trilinear l3;
    l3.t.assign(c.dim_v0, std::vector<std::vector<RatVec>>(
                              c.dim_v0, std::vector<RatVec>(c.dim_v0, vzero(c.dim_v1))));
    return l3;
  }

  bool is_zero() const {
    for (const auto& a : t)
      for (const auto& b : a)
        for (const auto& v : b)
          if (!vis_zero(v)) return false;
    return true;
  }

  bool operator==(const Trilinear& o) const { return t == o.t; }
};

inline RatVec eval3(const Trilinear& l3, const RatVec& u, const RatVec& v, const RatVec& w,
                    std::size_t dim_v1) {
  RatVec r = vzero(dim_v1);
  for (std::size_t i = 0; i < u.size(); ++i) {
    if (u[i] == 0) continue;
    for (std::size_t j = 0; j < v.size(); ++j) {
      if (v[j] == 0) continue;
      for (std::size_t k = 0; k < w.size(); ++k)
        if (w[k] != 0) r = vadd(r, vscale(u[i] * v[j] * w[k], l3.t[i][j][k]));
    }
  }
  return r;
}

/// A 2-term L-infinity structure: differential, bracket tensors, homotopy.
/// Strict means the homotopy vanishes.
struct Lie2Structure {
  TwoTermComplex c;
  BilinearFunctor l2;
  Trilinear l3;
};

inline bool is_strict(const Lie2Structure& L) { return L.l3.is_zero(); }

inline Lie2Structure strict_lie2(TwoTermComplex c, BilinearFunctor l2) {
  Trilinear l3 = Trilinear::zero(c);
  return {std::move(c), std::move(l2), std::move(l3)};
}

namespace detail {

/// Homogeneous element: a vector in V0 (degree 0) or V1 (degree 1).
struct Graded {
  int deg;
  RatVec v;
};

/// Apply l_k to homogeneous arguments.  Returns nullopt when the result
/// degree falls outside the complex, i.e. the component is identically zero.
inline std::optional<Graded> l_apply(const Lie2Structure& L, const std::vector<Graded>& args) {
  const std::size_t k = args.size();
  int deg = static_cast<int>(k) - 2;
  for (const auto& a : args) deg += a.deg;
  if (deg != 0 && deg != 1) return std::nullopt;
  if (k == 1) return Graded{0, L.c.d.apply(args[0].v)};
  if (k == 2) {
    if (args[0].deg == 0 && args[1].deg == 0)
      return Graded{0, eval00(L.l2, args[0].v, args[1].v)};
    if (args[0].deg == 0) return Graded{1, eval01(L.l2, args[0].v, args[1].v, L.c.dim_v1)};
    return Graded{1, eval10(L.l2, args[0].v, args[1].v, L.c.dim_v1)};
  }
  if (k == 3) return Graded{1, eval3(L.l3, args[0].v, args[1].v, args[2].v, L.c.dim_v1)};
  return std::nullopt;
}

/// Σ_{i+j=n+1} (−1)^{i(j−1)} Σ_σ χ(σ) l_j(l_i(x_σ(1..i)), x_σ(i+1..n)) for one
/// homogeneous tuple; χ(σ) contributes (−1)^{1+deg_p deg_q} per inversion.
inline std::optional<Graded> relation_sum(const Lie2Structure& L,
                                          const std::vector<Graded>& args) {
  const std::size_t n = args.size();
  std::optional<Graded> acc;
  for (std::size_t i = 1; i <= n; ++i) {
    const std::size_t j = n + 1 - i;
    Rat lead = ((i * (j - 1)) % 2 == 0) ? 1 : -1;
    // iterate over ascending i-subsets of {0..n-1}
    std::vector<std::size_t> sel(i);
    for (std::size_t s = 0; s < i; ++s) sel[s] = s;
    while (true) {
      Rat sgn = lead;
      // combined permutation/Koszul sign: (−1)^{1+deg_p deg_q} per inverted pair
      std::vector<bool> in_sel(n, false);
      for (auto s : sel) in_sel[s] = true;
      for (std::size_t q : sel)
        for (std::size_t p = 0; p < q; ++p)
          if (!in_sel[p]) sgn *= (args[p].deg * args[q].deg) % 2 == 0 ? Rat(-1) : Rat(1);
      std::vector<Graded> inner_args;
      for (auto s : sel) inner_args.push_back(args[s]);
      auto inner = l_apply(L, inner_args);
      if (inner) {
        std::vector<Graded> outer_args{*inner};
        for (std::size_t p = 0; p < n; ++p)
          if (!in_sel[p]) outer_args.push_back(args[p]);
        auto term = l_apply(L, outer_args);
        if (term) {
          if (!acc) acc = Graded{term->deg, vzero(term->v.size())};
          acc->v = vadd(acc->v, vscale(sgn, term->v));
        }
      }
      // next subset
      std::size_t s = i;
      while (s > 0 && sel[s - 1] == n - i + (s - 1)) --s;
      if (s == 0) break;
      ++sel[s - 1];
      for (std::size_t t = s; t < i; ++t) sel[t] = sel[t - 1] + 1;
    }
  }
  return acc;
}

} // namespace detail

/// Full structure check: well-formedness of the tensors, then the n-ary
/// coherence identities for n = 1..4 on every homogeneous basis tuple.
inline CheckReport linfty_check(const Lie2Structure& L) {
  CheckReport rep;
  rep.merge(check_skew(L.c, L.l2));
  rep.merge(check_d_compat(L.c, L.l2));

  bool alt = true;
  std::string w_alt;
  for (std::size_t i = 0; i < L.c.dim_v0 && alt; ++i)
    for (std::size_t j = 0; j < L.c.dim_v0 && alt; ++j)
      for (std::size_t k = 0; k < L.c.dim_v0 && alt; ++k) {
        if (!vis_zero(vadd(L.l3.t[i][j][k], L.l3.t[j][i][k])) ||
            !vis_zero(vadd(L.l3.t[i][j][k], L.l3.t[i][k][j]))) {
          alt = false;
          w_alt = "l3 not alternating at basis triple (" + std::to_string(i) + "," +
                  std::to_string(j) + "," + std::to_string(k) + ")";
        }
      }
  rep.record("l3-alternating", alt, w_alt);

  const std::size_t nb = L.c.dim_v0 + L.c.dim_v1;
  auto basis_elem = [&](std::size_t idx) {
    if (idx < L.c.dim_v0) return detail::Graded{0, unit_vec(L.c.dim_v0, idx)};
    return detail::Graded{1, unit_vec(L.c.dim_v1, idx - L.c.dim_v0)};
  };
  for (std::size_t n = 1; n <= 4; ++n) {
    bool good = true;
    std::string witness;
    std::vector<std::size_t> tup(n, 0);
    while (good && nb > 0) {
      std::vector<detail::Graded> args;
      for (auto t : tup) args.push_back(basis_elem(t));
      auto sum = detail::relation_sum(L, args);
      if (sum && !vis_zero(sum->v)) {
        good = false;
        std::string ids;
        for (std::size_t t = 0; t < n; ++t)
          ids += (t ? "," : "") + std::string(tup[t] < L.c.dim_v0 ? "e" : "f") + "_" +
                 std::to_string(tup[t] < L.c.dim_v0 ? tup[t] : tup[t] - L.c.dim_v0);
        witness = "vanishing fails on (" + ids + "): residue " + vec_to_string(sum->v);
      }
      std::size_t pos = n;
      while (pos > 0 && tup[pos - 1] == nb - 1) --pos;
      if (pos == 0) break;
      ++tup[pos - 1];
      for (std::size_t t = pos; t < n; ++t) tup[t] = 0;
    }
    rep.record("identity-n" + std::to_string(n), good, witness);
  }
  return rep;
}

/// The endomorphism 2-algebra as a strict structure in canonical coordinates.
inline Lie2Structure gl_as_lie2(const EndBases& eb) {
  const auto& c = eb.complex();
  TwoTermComplex gc = gl_complex(eb);
  BilinearFunctor f = BilinearFunctor::zero(gc);
  const auto& bp = eb.basis_pairs();
  for (std::size_t i = 0; i < eb.end0_dim(); ++i)
    for (std::size_t j = 0; j < eb.end0_dim(); ++j)
      f.f00[i][j] = eb.coords_of_checked(gl_commutator(bp[i], bp[j]));
  for (std::size_t i = 0; i < eb.end0_dim(); ++i)
    for (std::size_t p = 0; p < eb.end1_dim(); ++p) {
      RatMatrix e = unflatten_matrix(unit_vec(eb.end1_dim(), p), c.dim_v1, c.dim_v0);
      f.f01[i][p] = flatten_matrix(bracket_pair_phi(bp[i], e));
      f.f10[p][i] = flatten_matrix(bracket_phi_pair(e, bp[i]));
    }
  return strict_lie2(gc, std::move(f));
}

/// Morphism of strict structures: linear components plus a skew 2-form χ
/// measuring the failure of μ0 to preserve brackets.
struct Lie2Morphism {
  RatMatrix mu0; // cod_v0 x dom_v0
  RatMatrix mu1; // cod_v1 x dom_v1
  std::vector<std::vector<RatVec>> chi; // chi[i][j] ∈ cod V1

  static Lie2Morphism identity(const TwoTermComplex& c) {
    Lie2Morphism m;
    m.mu0 = RatMatrix::identity(c.dim_v0);
    m.mu1 = RatMatrix::identity(c.dim_v1);
    m.chi.assign(c.dim_v0, std::vector<RatVec>(c.dim_v0, vzero(c.dim_v1)));
    return m;
  }
};

inline RatVec eval_chi(const Lie2Morphism& m, const RatVec& u, const RatVec& v,
                       std::size_t cod_v1) {
  RatVec r = vzero(cod_v1);
  for (std::size_t i = 0; i < u.size(); ++i) {
    if (u[i] == 0) continue;
    for (std::size_t j = 0; j < v.size(); ++j)
      if (v[j] != 0) r = vadd(r, vscale(u[i] * v[j], m.chi[i][j]));
  }
  return r;
}

/// Conditions for (μ0, μ1, χ) to be a morphism of strict structures.
inline CheckReport morphism_coherence(const Lie2Structure& dom, const Lie2Structure& cod,
                                      const Lie2Morphism& m) {
  if (!is_strict(dom) || !is_strict(cod))
    throw std::invalid_argument("morphism coherence requires strict structures");
  CheckReport rep;
  rep.record("chain-map", (m.mu0 * dom.c.d - cod.c.d * m.mu1).is_zero(),
             "μ0 d ≠ d' μ1");

  bool skew = true, natural = true, kernel = true, coher = true;
  std::string w_skew, w_nat, w_ker, w_coh;
  const std::size_t n0 = dom.c.dim_v0;
  auto mu0e = [&](std::size_t i) { return m.mu0.col(i); };
  for (std::size_t i = 0; i < n0; ++i)
    for (std::size_t j = 0; j < n0; ++j) {
      if (skew && !vis_zero(vadd(m.chi[i][j], m.chi[j][i]))) {
        skew = false;
        w_skew = "χ not skew at (" + std::to_string(i) + "," + std::to_string(j) + ")";
      }
      RatVec want = vsub(eval00(cod.l2, mu0e(i), mu0e(j)), m.mu0.apply(dom.l2.f00[i][j]));
      if (natural && cod.c.d.apply(m.chi[i][j]) != want) {
        natural = false;
        w_nat = "d'χ(e_" + std::to_string(i) + ",e_" + std::to_string(j) +
                ") ≠ [μe_i,μe_j]' − μ[e_i,e_j]";
      }
    }
  for (std::size_t i = 0; i < n0 && kernel; ++i)
    for (std::size_t p = 0; p < dom.c.dim_v1 && kernel; ++p) {
      RatVec lhs = eval_chi(m, unit_vec(n0, i), dom.c.d.col(p), cod.c.dim_v1);
      RatVec rhs = vsub(eval01(cod.l2, mu0e(i), m.mu1.col(p), cod.c.dim_v1),
                        m.mu1.apply(dom.l2.f01[i][p]));
      if (lhs != rhs) {
        kernel = false;
        w_ker = "χ(e_" + std::to_string(i) + ", d f_" + std::to_string(p) +
                ") ≠ [μe_i, μf_p]' − μ[e_i, f_p]";
      }
    }
  for (std::size_t i = 0; i < n0 && coher; ++i)
    for (std::size_t j = 0; j < n0 && coher; ++j)
      for (std::size_t k = 0; k < n0 && coher; ++k) {
        const RatVec ei = unit_vec(n0, i), ej = unit_vec(n0, j), ek = unit_vec(n0, k);
        RatVec lhs = vadd(eval_chi(m, dom.l2.f00[i][j], ek, cod.c.dim_v1),
                          eval10(cod.l2, m.chi[i][j], mu0e(k), cod.c.dim_v1));
        RatVec rhs = eval_chi(m, ei, dom.l2.f00[j][k], cod.c.dim_v1);
        rhs = vadd(rhs, eval_chi(m, ej, eval00(dom.l2, ek, ei), cod.c.dim_v1));
        rhs = vadd(rhs, eval01(cod.l2, mu0e(i), m.chi[j][k], cod.c.dim_v1));
        rhs = vadd(rhs, eval01(cod.l2, mu0e(j), eval_chi(m, ek, ei, cod.c.dim_v1), cod.c.dim_v1));
        if (lhs != rhs) {
          coher = false;
          w_coh = "2-cocycle-type coherence fails at basis triple (" + std::to_string(i) + "," +
                  std::to_string(j) + "," + std::to_string(k) + ")";
        }
      }
  rep.record("chi-skew", skew, w_skew);
  rep.record("naturality", natural, w_nat);
  rep.record("kernel-naturality", kernel, w_ker);
  rep.record("coherence", coher, w_coh);
  return rep;
}

/// Differential of a 1-cochain α : V0 -> V1 over a strict structure:
///   (dα)(u, v) = [u, α v] − [v, α u] − α[u, v].  Always a 2-cocycle.
inline std::vector<std::vector<RatVec>> ce_differential(const Lie2Structure& L,
                                                        const RatMatrix& alpha) {
  if (!is_strict(L)) throw std::invalid_argument("cochain differential requires a strict structure");
  const std::size_t n0 = L.c.dim_v0;
  std::vector<std::vector<RatVec>> chi(n0, std::vector<RatVec>(n0, vzero(L.c.dim_v1)));
  for (std::size_t i = 0; i < n0; ++i)
    for (std::size_t j = 0; j < n0; ++j) {
      RatVec r = eval01(L.l2, unit_vec(n0, i), alpha.col(j), L.c.dim_v1);
      r = vsub(r, eval01(L.l2, unit_vec(n0, j), alpha.col(i), L.c.dim_v1));
      r = vsub(r, alpha.apply(L.l2.f00[i][j]));
      chi[i][j] = std::move(r);
    }
  return chi;
}

/// Cyclic 2-cocycle condition for a skew 2-cochain over a strict structure:
///   Σ_cyc [u, χ(v, w)] − Σ_cyc χ([u, v], w) = 0.
inline CheckReport check_two_cocycle(const Lie2Structure& L,
                                     const std::vector<std::vector<RatVec>>& chi) {
  if (!is_strict(L)) throw std::invalid_argument("cocycle check requires a strict structure");
  CheckReport rep;
  const std::size_t n0 = L.c.dim_v0;
  auto chi_at = [&](const RatVec& u, const RatVec& v) {
    RatVec r = vzero(L.c.dim_v1);
    for (std::size_t i = 0; i < n0; ++i) {
      if (u[i] == 0) continue;
      for (std::size_t j = 0; j < n0; ++j)
        if (v[j] != 0) r = vadd(r, vscale(u[i] * v[j], chi[i][j]));
    }
    return r;
  };
  bool skew = true, cocycle = true;
  std::string w_skew, w_coc;
  for (std::size_t i = 0; i < n0 && skew; ++i)
    for (std::size_t j = 0; j < n0 && skew; ++j)
      if (!vis_zero(vadd(chi[i][j], chi[j][i]))) {
        skew = false;
        w_skew = "cochain not skew at (" + std::to_string(i) + "," + std::to_string(j) + ")";
      }
  for (std::size_t i = 0; i < n0 && cocycle; ++i)
    for (std::size_t j = 0; j < n0 && cocycle; ++j)
      for (std::size_t k = 0; k < n0 && cocycle; ++k) {
        const RatVec u = unit_vec(n0, i), v = unit_vec(n0, j), w = unit_vec(n0, k);
        RatVec s = eval01(L.l2, u, chi_at(v, w), L.c.dim_v1);
        s = vadd(s, eval01(L.l2, v, chi_at(w, u), L.c.dim_v1));
        s = vadd(s, eval01(L.l2, w, chi_at(u, v), L.c.dim_v1));
        s = vsub(s, chi_at(eval00(L.l2, u, v), w));
        s = vsub(s, chi_at(eval00(L.l2, v, w), u));
        s = vsub(s, chi_at(eval00(L.l2, w, u), v));
        if (!vis_zero(s)) {
          cocycle = false;
          w_coc = "cocycle sum ≠ 0 at (" + std::to_string(i) + "," + std::to_string(j) + "," +
                  std::to_string(k) + ")";
        }
      }
  rep.record("cochain-skew", skew, w_skew);
  rep.record("two-cocycle", cocycle, w_coc);
  return rep;
}

} // namespace omni2
