#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "omni2/dirac.hpp"
#include "omni2/sampler.hpp"

#include <stdexcept>
#include <string>

using namespace omni2;

namespace {

// Q^2 included into Q^3: d f1 = e1, d f2 = e2.  Injective d, cokernel e3.
TwoTermComplex incl_complex() {
  RatMatrix d(3, 2);
  d.at(0, 0) = 1;
  d.at(1, 1) = 1;
  return {3, 2, d};
}

// three objects, no kernel directions
TwoTermComplex pt3_complex() { return {3, 0, RatMatrix(3, 0)}; }

// zero differential with a one-dimensional kernel level
TwoTermComplex string_complex() { return {3, 1, RatMatrix(3, 1)}; }

// [e1,e2] = 1/2 e3 and cyclic
BilinearFunctor so3_bracket(const TwoTermComplex& c) {
  BilinearFunctor f = BilinearFunctor::zero(c);
  auto set = [&](std::size_t i, std::size_t j, std::size_t k) {
    f.f00[i][j][k] = Rat(1, 2);
    f.f00[j][i][k] = Rat(-1, 2);
  };
  set(0, 1, 2);
  set(1, 2, 0);
  set(2, 0, 1);
  return f;
}

// e3 scales everything else: [e3,e1]=e1, [e3,e2]=e2, [e3,f_p]=f_p
BilinearFunctor action_bracket(const TwoTermComplex& c) {
  BilinearFunctor f = BilinearFunctor::zero(c);
  f.f00[2][0][0] = 1;
  f.f00[0][2][0] = -1;
  f.f00[2][1][1] = 1;
  f.f00[1][2][1] = -1;
  f.f01[2][0][0] = 1;
  f.f01[2][1][1] = 1;
  f.f10[0][2][0] = -1;
  f.f10[1][2][1] = -1;
  return f;
}

// skew but non-Jacobi: [e1,e2]=e1, [e2,e3]=e2
BilinearFunctor broken_bracket(const TwoTermComplex& c) {
  BilinearFunctor f = BilinearFunctor::zero(c);
  f.f00[0][1][0] = 1;
  f.f00[1][0][0] = -1;
  f.f00[1][2][1] = 1;
  f.f00[2][1][1] = -1;
  return f;
}

Sub2 embed_v(const OmniAmbient& oa, const Sub2& w) {
  std::vector<RatVec> s0_rows, k_rows;
  for (const auto& b : w.s0.basis())
    s0_rows.push_back(vcat(vzero(oa.ends().end0_dim()), b));
  for (const auto& b : w.k.basis()) k_rows.push_back(vcat(vzero(oa.ends().end1_dim()), b));
  return make_sub2(oa.amb(), Subspace::from_rows(oa.amb().obj_dim, s0_rows),
                   Subspace::from_rows(oa.amb().ker_dim, k_rows));
}

Sub2 v_sub(const OmniAmbient& oa, const std::vector<RatVec>& objs,
           const std::vector<RatVec>& kers) {
  return make_sub2(oa.v_amb(), Subspace::from_rows(oa.complex().dim_v0, objs),
                   Subspace::from_rows(oa.complex().dim_v1, kers));
}

} // namespace

TEST_CASE("orthogonal complements of the summands and extreme subspaces") {
  OmniAmbient oa(incl_complex());
  CHECK(perp(oa, zero_sub2(oa.amb())) == full_sub2(oa.amb()));
  CHECK(perp(oa, full_sub2(oa.amb())) == zero_sub2(oa.amb()));
  CHECK(perp(oa, gl_summand(oa)) == gl_summand(oa));
  CHECK(perp(oa, v_summand(oa)) == v_summand(oa));

  // single mixed generator over the kernel-free complex
  OmniAmbient ob(pt3_complex());
  std::vector<RatVec> rows{vcat(vzero(9), unit_vec(3, 0))};
  Sub2 line = make_sub2(ob.amb(), Subspace::from_rows(12, rows), Subspace::zero(0));
  Sub2 p = perp(ob, line);
  CHECK(p.s0.dim() == 9);
  CHECK(p.k.dim() == 0);
  CHECK(p.s0.contains(vcat(vzero(9), unit_vec(3, 1))));
  GlPair id = gl_identity_pair(ob.complex());
  CHECK_FALSE(p.s0.contains(vcat(ob.ends().coords_of_checked(id), vzero(3))));
}

TEST_CASE("both summands are Dirac structures") {
  for (const auto& c : {incl_complex(), pt3_complex(), string_complex()}) {
    OmniAmbient oa(c);
    DiracDiag g = dirac_diagnose(oa, gl_summand(oa));
    CHECK(g.maximal_isotropic);
    CHECK(g.courant_closed);
    CHECK(g.dorfman_closed);
    CHECK(is_dirac(oa, v_summand(oa)));
  }
}

TEST_CASE("graph of a functor is Dirac exactly when the structure is valid") {
  struct Row {
    TwoTermComplex c;
    BilinearFunctor f;
  };
  std::vector<Row> corpus;
  corpus.push_back({pt3_complex(), so3_bracket(pt3_complex())});
  corpus.push_back({incl_complex(), action_bracket(incl_complex())});
  corpus.push_back({incl_complex(), BilinearFunctor::zero(incl_complex())});
  corpus.push_back({pt3_complex(), broken_bracket(pt3_complex())});
  corpus.push_back({string_complex(), broken_bracket(string_complex())});
  for (const auto& row : corpus) {
    OmniAmbient oa(row.c);
    bool valid = linfty_check(strict_lie2(row.c, row.f)).ok;
    Sub2 g = graph_of(oa, row.f);
    CHECK(is_dirac(oa, g) == valid);
    // skewness alone already forces maximal isotropy
    CHECK(dirac_diagnose(oa, g).maximal_isotropic);
  }

  // Jacobi failure shows up exactly as bracket-closure failure
  OmniAmbient oa(pt3_complex());
  DiracDiag diag = dirac_diagnose(oa, graph_of(oa, broken_bracket(pt3_complex())));
  CHECK(diag.maximal_isotropic);
  CHECK_FALSE(diag.courant_closed);

  // the zero functor's graph is the base summand
  OmniAmbient ob(incl_complex());
  CHECK(graph_of(ob, BilinearFunctor::zero(incl_complex())) == v_summand(ob));

  // graphs only exist over chain functors
  GlValuedFunctor bad{RatMatrix(ob.ends().end0_dim(), 3), RatMatrix(ob.ends().end1_dim(), 2)};
  bad.g0.set_col(0, ob.ends().coords_of_checked(gl_identity_pair(ob.complex())));
  CHECK_THROWS_AS(graph_of(ob, bad), std::invalid_argument);
}

TEST_CASE("isotropy diagnostics name the offending generators") {
  OmniAmbient oa(pt3_complex());
  std::vector<RatVec> rows{
      vcat(oa.ends().coords_of_checked(gl_identity_pair(oa.complex())), unit_vec(3, 0))};
  Sub2 line = make_sub2(oa.amb(), Subspace::from_rows(12, rows), Subspace::zero(0));
  CheckReport rep = isotropy_report(oa, line);
  CHECK_FALSE(rep.ok);
  CHECK(rep.items[0].witness.find("basis arrows 0, 0") != std::string::npos);
  CHECK_FALSE(is_maximal_isotropic(oa, line));
}

TEST_CASE("annihilator then null: saturation decides recovery") {
  OmniAmbient oa(incl_complex());

  // kernel-free differential: the double operation saturates the kernel part
  Sub2 w = v_sub(oa, {unit_vec(3, 0)}, {});
  Sub2 dbl = null_space(oa, annihilator(oa, w));
  CHECK(dbl.s0 == w.s0);
  CHECK(dbl.k == Subspace::from_rows(2, {unit_vec(2, 0)}));
  CHECK(dbl.k == preimage(oa.complex().d, w.s0));
  CHECK_FALSE(dbl == w);

  // the saturated subspace is recovered exactly
  Sub2 ws = v_sub(oa, {unit_vec(3, 0)}, {unit_vec(2, 0)});
  CHECK(null_space(oa, annihilator(oa, ws)) == ws);

  // with a nonzero kernel of d every sub-2-space is recovered
  OmniAmbient os(string_complex());
  RatVec mix = vadd(unit_vec(3, 0), vscale(Rat(2), unit_vec(3, 1)));
  for (const Sub2& u :
       {v_sub(os, {mix}, {}), v_sub(os, {unit_vec(3, 0)}, {unit_vec(1, 0)}),
        v_sub(os, {}, {unit_vec(1, 0)})}) {
    CHECK(null_space(os, annihilator(os, u)) == u);
  }

  // no kernel level at all: always recovered
  OmniAmbient op(pt3_complex());
  Sub2 u = v_sub(op, {vadd(unit_vec(3, 1), unit_vec(3, 2))}, {});
  CHECK(null_space(op, annihilator(op, u)) == u);

  // the annihilator is the gl part of the orthogonal complement of the base embedding
  CHECK(intersect_gl(oa, perp(oa, embed_v(oa, ws))) == annihilator(oa, ws));
}

TEST_CASE("characteristic pair of a graph has trivial gl part and recovers the tensors") {
  OmniAmbient oa(pt3_complex());
  BilinearFunctor f = so3_bracket(pt3_complex());
  Sub2 g = graph_of(oa, f);
  CharacteristicPair cp = characteristic_pair(oa, g);
  CHECK(cp.d == zero_sub2(oa.gl_amb()));
  CHECK(cp.h == full_sub2(oa.v_amb()));
  CHECK(cp.pi0 == ad_functor(oa.ends(), f).g0);
  CHECK(check_characteristic_pair(oa, g, cp).ok);
  CHECK(sub_of_characteristic_pair(oa, cp) == g);
  Lie2Structure ind = induced_lie2(oa, cp);
  CHECK(ind.c == oa.complex());
  CHECK(ind.l2 == f);

  OmniAmbient ob(incl_complex());
  BilinearFunctor fa = action_bracket(incl_complex());
  Sub2 ga = graph_of(ob, fa);
  CharacteristicPair ca = characteristic_pair(ob, ga);
  GlValuedFunctor va = ad_functor(ob.ends(), fa);
  CHECK(ca.pi0 == va.g0);
  CHECK(ca.pi1 == va.g1);
  CHECK(induced_lie2(ob, ca).l2 == fa);
  CHECK(check_characteristic_pair(ob, ga, ca).ok);
}

TEST_CASE("characteristic pair of the gl summand is pure gl") {
  OmniAmbient oa(incl_complex());
  CharacteristicPair cp = characteristic_pair(oa, gl_summand(oa));
  CHECK(cp.d == full_sub2(oa.gl_amb()));
  CHECK(cp.h.s0.dim() == 0);
  CHECK(cp.h.k.dim() == 0);
  Lie2Structure ind = induced_lie2(oa, cp);
  CHECK(ind.c.dim_v0 == 0);
  CHECK(ind.c.dim_v1 == 0);
  CHECK(sub_of_characteristic_pair(oa, cp) == gl_summand(oa));
  CHECK(check_characteristic_pair(oa, gl_summand(oa), cp).ok);
}

TEST_CASE("building from a structure on the full base or the zero subspace") {
  OmniAmbient oa(pt3_complex());
  Sub2 full_w = full_sub2(oa.v_amb());
  Lie2Structure so3 = strict_lie2(pt3_complex(), so3_bracket(pt3_complex()));
  CHECK(dirac_from_lie2(oa, full_w, so3) == graph_of(oa, so3.l2));

  TwoTermComplex c0(0, 0, RatMatrix(0, 0));
  Lie2Structure trivial = strict_lie2(c0, BilinearFunctor::zero(c0));
  CHECK(dirac_from_lie2(oa, zero_sub2(oa.v_amb()), trivial) == gl_summand(oa));
}

TEST_CASE("building from a structure on a proper subspace") {
  OmniAmbient oa(pt3_complex());
  Sub2 w = v_sub(oa, {unit_vec(3, 2)}, {});
  TwoTermComplex cw(1, 0, RatMatrix(1, 0));
  Lie2Structure ab = strict_lie2(cw, BilinearFunctor::zero(cw));
  Sub2 l = dirac_from_lie2(oa, w, ab);
  CHECK(l.s0.dim() == 7);
  CHECK(is_dirac(oa, l));
  CharacteristicPair cp = characteristic_pair(oa, l);
  CHECK(cp.d == annihilator(oa, w));
  CHECK(cp.h == w);
  CHECK(induced_lie2(oa, cp).l2 == ab.l2);

  // one kernel direction inside the inclusion complex
  OmniAmbient ob(incl_complex());
  Sub2 ws = v_sub(ob, {unit_vec(3, 0)}, {unit_vec(2, 0)});
  TwoTermComplex cs(1, 1, RatMatrix::identity(1));
  Lie2Structure abs = strict_lie2(cs, BilinearFunctor::zero(cs));
  CHECK(sub_complex(ob, ws) == cs);
  Sub2 ls = dirac_from_lie2(ob, ws, abs);
  CHECK(is_dirac(ob, ls));
  CharacteristicPair cps = characteristic_pair(ob, ls);
  CHECK(cps.h == ws);
  CHECK(induced_lie2(ob, cps).l2 == abs.l2);

  // adding annihilator arrows to a generator does not change the subspace
  Sampler smp(11);
  Sub2 ann = annihilator(ob, ws);
  RatVec pert = vzero(ob.amb().obj_dim);
  for (const auto& a : ann.s0.basis())
    pert = vadd(pert, vscale(smp.rat(), vcat(a, vzero(3))));
  std::vector<RatVec> rows;
  for (const auto& b : ls.s0.basis()) rows.push_back(b);
  rows[0] = vadd(rows[0], pert);
  Sub2 lp = make_sub2(ob.amb(), Subspace::from_rows(ob.amb().obj_dim, rows), ls.k);
  CHECK(lp == ls);
}

TEST_CASE("a non-Jacobi structure still yields a maximal isotropic non-Dirac subspace") {
  OmniAmbient oa(pt3_complex());
  Lie2Structure bad = strict_lie2(pt3_complex(), broken_bracket(pt3_complex()));
  Sub2 l = dirac_from_lie2(oa, full_sub2(oa.v_amb()), bad);
  DiracDiag diag = dirac_diagnose(oa, l);
  CHECK(diag.maximal_isotropic);
  CHECK_FALSE(diag.courant_closed);
}

TEST_CASE("building rejects unsaturated or mismatched input") {
  OmniAmbient oa(incl_complex());
  Sub2 w = v_sub(oa, {unit_vec(3, 0)}, {});
  TwoTermComplex cw(1, 0, RatMatrix(1, 0));
  Lie2Structure ab = strict_lie2(cw, BilinearFunctor::zero(cw));
  try {
    dirac_from_lie2(oa, w, ab);
    CHECK_MESSAGE(false, "expected a saturation failure");
  } catch (const std::invalid_argument& e) {
    CHECK(std::string(e.what()).find("not saturated") != std::string::npos);
  }

  // wrong structure complex
  TwoTermComplex c2(2, 0, RatMatrix(2, 0));
  Lie2Structure ab2 = strict_lie2(c2, BilinearFunctor::zero(c2));
  CHECK_THROWS_AS(dirac_from_lie2(oa, w, ab2), std::invalid_argument);

  // non-strict structure on the subspace
  OmniAmbient os(string_complex());
  Sub2 wf = full_sub2(os.v_amb());
  Lie2Structure soft = strict_lie2(string_complex(), BilinearFunctor::zero(string_complex()));
  soft.l3.t[0][1][2][0] = 1;
  CHECK_THROWS_AS(dirac_from_lie2(os, wf, soft), std::invalid_argument);
}

TEST_CASE("normalizer of a graph equals the derivation arrows of its structure") {
  OmniAmbient oa(pt3_complex());
  BilinearFunctor f = so3_bracket(pt3_complex());
  Sub2 n = normalizer(oa, graph_of(oa, f));
  Sub2 der = derivations(oa, strict_lie2(pt3_complex(), f));
  CHECK(n == der);
  CHECK(morphism_space(n).dim() == 3);
  for (std::size_t i = 0; i < 3; ++i)
    CHECK(n.s0.contains(ad_functor(oa.ends(), f).g0.col(i)));

  OmniAmbient ob(incl_complex());
  BilinearFunctor fa = action_bracket(incl_complex());
  Sub2 na = normalizer(ob, graph_of(ob, fa));
  CHECK(na == derivations(ob, strict_lie2(incl_complex(), fa)));
  // inner arrows normalize
  GlValuedFunctor va = ad_functor(ob.ends(), fa);
  Subspace nam = morphism_space(na);
  for (std::size_t i = 0; i < 3; ++i)
    CHECK(nam.contains(vcat(va.g0.col(i), vzero(ob.ends().end1_dim()))));
  for (std::size_t p = 0; p < 2; ++p)
    CHECK(nam.contains(vcat(vzero(ob.ends().end0_dim()), va.g1.col(p))));
}

TEST_CASE("normalizer extremes") {
  OmniAmbient oa(incl_complex());
  CHECK(normalizer(oa, zero_sub2(oa.amb())) == full_sub2(oa.gl_amb()));
  CHECK(normalizer(oa, full_sub2(oa.amb())) == full_sub2(oa.gl_amb()));
  CHECK(normalizer(oa, gl_summand(oa)) == full_sub2(oa.gl_amb()));
  // abelian structures are normalized by everything
  CHECK(normalizer(oa, v_summand(oa)) == full_sub2(oa.gl_amb()));
  CHECK(derivations(oa, strict_lie2(incl_complex(), BilinearFunctor::zero(incl_complex()))) ==
        full_sub2(oa.gl_amb()));
}
