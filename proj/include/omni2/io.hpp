#pragma once

#include "omni2/dirac.hpp"
#include "omni2/twist.hpp"

#include "json.hpp"

#include <cstdint>
#include <string>
#include <variant>
#include <vector>

namespace omni2 {

using Json = nlohmann::ordered_json;

/// Error in a structure document, carrying a JSON path to the offending node.
struct ParseError : std::runtime_error {
  std::string path;
  ParseError(std::string p, const std::string& msg)
      : std::runtime_error(p + ": " + msg), path(std::move(p)) {}
};

// ---------------------------------------------------------------------------
// Rational scalars, vectors, flat row-major matrices

namespace jio {

inline const Json& member(const Json& j, const char* key, const std::string& path) {
  if (!j.is_object()) throw ParseError(path, "expected an object");
  auto it = j.find(key);
  if (it == j.end()) throw ParseError(path, std::string("missing field '") + key + "'");
  return *it;
}

inline const Json* opt_member(const Json& j, const char* key) {
  if (!j.is_object()) return nullptr;
  auto it = j.find(key);
  return it == j.end() ? nullptr : &*it;
}

inline std::size_t dim_at(const Json& j, const std::string& path) {
  if (!j.is_number_integer() || j.get<std::int64_t>() < 0)
    throw ParseError(path, "expected a non-negative integer");
  return static_cast<std::size_t>(j.get<std::int64_t>());
}

inline Rat rat_at(const Json& j, const std::string& path) {
  if (j.is_number_integer()) return Rat(j.get<std::int64_t>());
  if (!j.is_string()) throw ParseError(path, "expected a rational string \"p/q\" or \"n\"");
  try {
    return parse_rational(j.get<std::string>());
  } catch (const std::invalid_argument& e) {
    throw ParseError(path, e.what());
  }
}

inline const Json& array_at(const Json& j, std::size_t len, const std::string& path) {
  if (!j.is_array()) throw ParseError(path, "expected an array");
  if (j.size() != len)
    throw ParseError(path, "expected " + std::to_string(len) + " entries, got " +
                               std::to_string(j.size()));
  return j;
}

inline RatVec vec_at(const Json& j, std::size_t len, const std::string& path) {
  array_at(j, len, path);
  RatVec v(len);
  for (std::size_t i = 0; i < len; ++i)
    v[i] = rat_at(j[i], path + "[" + std::to_string(i) + "]");
  return v;
}

inline RatMatrix mat_at(const Json& j, std::size_t rows, std::size_t cols,
                        const std::string& path) {
  array_at(j, rows * cols, path);
  RatMatrix m(rows, cols);
  for (std::size_t r = 0; r < rows; ++r)
    for (std::size_t c = 0; c < cols; ++c)
      m.at(r, c) = rat_at(j[r * cols + c], path + "[" + std::to_string(r * cols + c) + "]");
  return m;
}

inline Json rat_json(const Rat& r) { return format_rational(r); }

inline Json vec_json(const RatVec& v) {
  Json a = Json::array();
  for (const auto& x : v) a.push_back(rat_json(x));
  return a;
}

inline Json mat_json(const RatMatrix& m) {
  Json a = Json::array();
  for (std::size_t r = 0; r < m.rows(); ++r)
    for (std::size_t c = 0; c < m.cols(); ++c) a.push_back(rat_json(m.at(r, c)));
  return a;
}

// tensors indexed by one or more basis slots, with vector values
inline std::vector<std::vector<RatVec>> tensor2_at(const Json& j, std::size_t n, std::size_t m,
                                                   std::size_t len, const std::string& path) {
  array_at(j, n, path);
  std::vector<std::vector<RatVec>> t(n);
  for (std::size_t i = 0; i < n; ++i) {
    const std::string pi = path + "[" + std::to_string(i) + "]";
    array_at(j[i], m, pi);
    t[i].reserve(m);
    for (std::size_t k = 0; k < m; ++k)
      t[i].push_back(vec_at(j[i][k], len, pi + "[" + std::to_string(k) + "]"));
  }
  return t;
}

inline Json tensor2_json(const std::vector<std::vector<RatVec>>& t) {
  Json a = Json::array();
  for (const auto& row : t) {
    Json r = Json::array();
    for (const auto& v : row) r.push_back(vec_json(v));
    a.push_back(std::move(r));
  }
  return a;
}

} // namespace jio

// ---------------------------------------------------------------------------
// Payloads, one per document kind

inline TwoTermComplex parse_complex(const Json& j, const std::string& path) {
  const std::size_t v0 = jio::dim_at(jio::member(j, "dim_v0", path), path + ".dim_v0");
  const std::size_t v1 = jio::dim_at(jio::member(j, "dim_v1", path), path + ".dim_v1");
  RatMatrix d = jio::mat_at(jio::member(j, "d", path), v0, v1, path + ".d");
  return {v0, v1, std::move(d)};
}

inline Json complex_payload(const TwoTermComplex& c) {
  Json j = Json::object();
  j["dim_v0"] = c.dim_v0;
  j["dim_v1"] = c.dim_v1;
  j["d"] = jio::mat_json(c.d);
  return j;
}

inline BilinearFunctor parse_bilinear_tensors(const Json& j, const TwoTermComplex& c,
                                              const std::string& path) {
  BilinearFunctor f;
  f.f00 = jio::tensor2_at(jio::member(j, "f00", path), c.dim_v0, c.dim_v0, c.dim_v0,
                          path + ".f00");
  f.f01 = jio::tensor2_at(jio::member(j, "f01", path), c.dim_v0, c.dim_v1, c.dim_v1,
                          path + ".f01");
  f.f10 = jio::tensor2_at(jio::member(j, "f10", path), c.dim_v1, c.dim_v0, c.dim_v1,
                          path + ".f10");
  return f;
}

inline Json bilinear_tensors_json(const BilinearFunctor& f) {
  Json j = Json::object();
  j["f00"] = jio::tensor2_json(f.f00);
  j["f01"] = jio::tensor2_json(f.f01);
  j["f10"] = jio::tensor2_json(f.f10);
  return j;
}

inline Lie2Structure parse_lie2(const Json& j, const std::string& path) {
  TwoTermComplex c = parse_complex(jio::member(j, "complex", path), path + ".complex");
  BilinearFunctor l2 = parse_bilinear_tensors(jio::member(j, "l2", path), c, path + ".l2");
  Trilinear l3 = Trilinear::zero(c);
  if (const Json* jl3 = jio::opt_member(j, "l3")) {
    const std::string p3 = path + ".l3";
    jio::array_at(*jl3, c.dim_v0, p3);
    for (std::size_t i = 0; i < c.dim_v0; ++i)
      l3.t[i] = jio::tensor2_at((*jl3)[i], c.dim_v0, c.dim_v0, c.dim_v1,
                                p3 + "[" + std::to_string(i) + "]");
  }
  return {std::move(c), std::move(l2), std::move(l3)};
}

inline Json lie2_payload(const Lie2Structure& s) {
  Json j = Json::object();
  j["complex"] = complex_payload(s.c);
  j["l2"] = bilinear_tensors_json(s.l2);
  if (!s.l3.is_zero()) {
    Json a = Json::array();
    for (const auto& plane : s.l3.t) a.push_back(jio::tensor2_json(plane));
    j["l3"] = std::move(a);
  }
  return j;
}

/// Bracket tensors promising functoriality; the d-compatibility identities
/// are invariants of the kind and are validated at parse time.
struct FunctorFile {
  TwoTermComplex c;
  BilinearFunctor f;
};

inline FunctorFile parse_functor_file(const Json& j, const std::string& path) {
  TwoTermComplex c = parse_complex(jio::member(j, "complex", path), path + ".complex");
  BilinearFunctor f = parse_bilinear_tensors(j, c, path);
  CheckReport rep = check_d_compat(c, f);
  if (!rep.ok)
    throw ParseError(path, "tensors are not a bilinear functor: " + rep.summary());
  return {std::move(c), std::move(f)};
}

inline Json functor_payload(const FunctorFile& ff) {
  Json j = Json::object();
  j["complex"] = complex_payload(ff.c);
  Json t = bilinear_tensors_json(ff.f);
  j["f00"] = std::move(t["f00"]);
  j["f01"] = std::move(t["f01"]);
  j["f10"] = std::move(t["f10"]);
  return j;
}

/// A sub-2-space of gl(V) ⊕ V, given by generators: object-level entries
/// (a0, a1, u) and kernel-level entries (phi, m).  Components over gl must be
/// chain endomorphisms; kernel targets must close into the object span.
struct OmniSubFile {
  TwoTermComplex c;
  Sub2 sub; // over OmniAmbient(c).amb()
};

inline OmniSubFile parse_omni_sub(const Json& j, const std::string& path) {
  TwoTermComplex c = parse_complex(jio::member(j, "complex", path), path + ".complex");
  OmniAmbient oa(c);
  const std::size_t n0 = c.dim_v0, n1 = c.dim_v1;

  std::vector<RatVec> s0_rows;
  const Json& objs = jio::member(j, "objects", path);
  if (!objs.is_array()) throw ParseError(path + ".objects", "expected an array");
  for (std::size_t i = 0; i < objs.size(); ++i) {
    const std::string pi = path + ".objects[" + std::to_string(i) + "]";
    GlPair a{jio::mat_at(jio::member(objs[i], "a0", pi), n0, n0, pi + ".a0"),
             jio::mat_at(jio::member(objs[i], "a1", pi), n1, n1, pi + ".a1")};
    auto coords = oa.ends().coords_of(a);
    if (!coords) throw ParseError(pi, "pair is not a chain endomorphism (a0 d ≠ d a1)");
    RatVec u = jio::vec_at(jio::member(objs[i], "u", pi), n0, pi + ".u");
    s0_rows.push_back(vcat(*coords, u));
  }

  std::vector<RatVec> k_rows;
  const Json& kers = jio::member(j, "kernel", path);
  if (!kers.is_array()) throw ParseError(path + ".kernel", "expected an array");
  for (std::size_t i = 0; i < kers.size(); ++i) {
    const std::string pi = path + ".kernel[" + std::to_string(i) + "]";
    RatMatrix phi = jio::mat_at(jio::member(kers[i], "phi", pi), n1, n0, pi + ".phi");
    RatVec m = jio::vec_at(jio::member(kers[i], "m", pi), n1, pi + ".m");
    k_rows.push_back(vcat(flatten_matrix(phi), m));
  }

  try {
    Sub2 sub = make_sub2(oa.amb(), Subspace::from_rows(oa.amb().obj_dim, s0_rows),
                         Subspace::from_rows(oa.amb().ker_dim, k_rows));
    return {std::move(c), std::move(sub)};
  } catch (const std::invalid_argument& e) {
    throw ParseError(path, e.what());
  }
}

inline Json omni_sub_payload(const OmniAmbient& oa, const Sub2& sub) {
  const auto& c = oa.complex();
  const std::size_t e0 = oa.ends().end0_dim(), e1 = oa.ends().end1_dim();
  Json j = Json::object();
  j["complex"] = complex_payload(c);
  Json objs = Json::array();
  for (const auto& b : sub.s0.basis()) {
    GlPair a = oa.ends().pair_of(vslice(b, 0, e0));
    Json o = Json::object();
    o["a0"] = jio::mat_json(a.a0);
    o["a1"] = jio::mat_json(a.a1);
    o["u"] = jio::vec_json(vslice(b, e0, c.dim_v0));
    objs.push_back(std::move(o));
  }
  j["objects"] = std::move(objs);
  Json kers = Json::array();
  for (const auto& b : sub.k.basis()) {
    Json o = Json::object();
    o["phi"] = jio::vec_json(vslice(b, 0, e1));
    o["m"] = jio::vec_json(vslice(b, e1, c.dim_v1));
    kers.push_back(std::move(o));
  }
  j["kernel"] = std::move(kers);
  return j;
}

inline Json omni_sub_payload(const OmniSubFile& f) {
  OmniAmbient oa(f.c);
  return omni_sub_payload(oa, f.sub);
}

inline QuadraticLieAlgebra parse_quadratic(const Json& j, const std::string& path) {
  QuadraticLieAlgebra q;
  q.dim = jio::dim_at(jio::member(j, "dim", path), path + ".dim");
  q.br = jio::tensor2_at(jio::member(j, "bracket", path), q.dim, q.dim, q.dim,
                         path + ".bracket");
  q.ip = jio::mat_at(jio::member(j, "ip", path), q.dim, q.dim, path + ".ip");
  return q;
}

inline Json quadratic_payload(const QuadraticLieAlgebra& q) {
  Json j = Json::object();
  j["dim"] = q.dim;
  j["bracket"] = jio::tensor2_json(q.br);
  j["ip"] = jio::mat_json(q.ip);
  return j;
}

// ---------------------------------------------------------------------------
// Documents over the endomorphism 2-algebra carry an explicit object basis,
// so hand-written files need not reproduce this library's canonical kernel
// basis.  Parsing converts to canonical coordinates; serialization always
// writes the canonical basis, so parse ∘ serialize is the identity.

/// Change-of-basis matrix: column i holds canonical coordinates of the i-th
/// listed pair.  Rejects lists that do not form a basis of End⁰.
inline RatMatrix parse_end0_basis(const Json& j, const EndBases& eb, const std::string& path) {
  const auto& c = eb.complex();
  jio::array_at(j, eb.end0_dim(), path);
  RatMatrix cb(eb.end0_dim(), eb.end0_dim());
  for (std::size_t i = 0; i < eb.end0_dim(); ++i) {
    const std::string pi = path + "[" + std::to_string(i) + "]";
    GlPair a{jio::mat_at(jio::member(j[i], "a0", pi), c.dim_v0, c.dim_v0, pi + ".a0"),
             jio::mat_at(jio::member(j[i], "a1", pi), c.dim_v1, c.dim_v1, pi + ".a1")};
    auto coords = eb.coords_of(a);
    if (!coords) throw ParseError(pi, "pair is not a chain endomorphism (a0 d ≠ d a1)");
    cb.set_col(i, *coords);
  }
  if (!inverse(cb))
    throw ParseError(path, "listed pairs do not form a basis of the chain endomorphisms");
  return cb;
}

inline Json end0_basis_json(const EndBases& eb) {
  Json a = Json::array();
  for (const auto& p : eb.basis_pairs()) {
    Json o = Json::object();
    o["a0"] = jio::mat_json(p.a0);
    o["a1"] = jio::mat_json(p.a1);
    a.push_back(std::move(o));
  }
  return a;
}

/// A linear map End⁰ -> End¹ in the listed basis (End¹ values are flat
/// row-major matrices V0 -> V1).
struct AlphaFile {
  TwoTermComplex c;
  RatMatrix alpha; // end1_dim x end0_dim, canonical coordinates
};

inline AlphaFile parse_alpha(const Json& j, const std::string& path) {
  TwoTermComplex c = parse_complex(jio::member(j, "complex", path), path + ".complex");
  EndBases eb(c);
  RatMatrix cb = parse_end0_basis(jio::member(j, "end0_basis", path), eb, path + ".end0_basis");
  RatMatrix given = jio::mat_at(jio::member(j, "alpha", path), eb.end1_dim(), eb.end0_dim(),
                                path + ".alpha");
  return {std::move(c), given * *inverse(cb)};
}

inline Json alpha_payload(const EndBases& eb, const RatMatrix& alpha) {
  Json j = Json::object();
  j["complex"] = complex_payload(eb.complex());
  j["end0_basis"] = end0_basis_json(eb);
  j["alpha"] = jio::mat_json(alpha);
  return j;
}

inline Json alpha_payload(const AlphaFile& f) { return alpha_payload(EndBases(f.c), f.alpha); }

/// A self-morphism (mu0, mu1, chi) of the endomorphism 2-algebra: mu0 in the
/// listed object basis, mu1 on flat V0 -> V1 matrices, chi a basis-indexed
/// table of flat End¹ values.
struct MuFile {
  TwoTermComplex c;
  Lie2Morphism mu; // canonical coordinates on gl of c
};

inline MuFile parse_mu(const Json& j, const std::string& path) {
  TwoTermComplex c = parse_complex(jio::member(j, "complex", path), path + ".complex");
  EndBases eb(c);
  const std::size_t k = eb.end0_dim(), e1 = eb.end1_dim();
  RatMatrix cb = parse_end0_basis(jio::member(j, "end0_basis", path), eb, path + ".end0_basis");
  RatMatrix cbi = *inverse(cb);
  RatMatrix mu0 = jio::mat_at(jio::member(j, "mu0", path), k, k, path + ".mu0");
  RatMatrix mu1 = jio::mat_at(jio::member(j, "mu1", path), e1, e1, path + ".mu1");
  auto chi_given = jio::tensor2_at(jio::member(j, "chi", path), k, k, e1, path + ".chi");

  Lie2Morphism mu;
  mu.mu0 = cb * mu0 * cbi;
  mu.mu1 = std::move(mu1);
  mu.chi.assign(k, std::vector<RatVec>(k, vzero(e1)));
  for (std::size_t a = 0; a < k; ++a)
    for (std::size_t b = 0; b < k; ++b) {
      // canonical basis pair (a, b) has listed-basis coordinates cbi.col(a), cbi.col(b)
      RatVec acc = vzero(e1);
      for (std::size_t p = 0; p < k; ++p) {
        if (cbi.at(p, a) == 0) continue;
        for (std::size_t q = 0; q < k; ++q)
          if (cbi.at(q, b) != 0)
            acc = vadd(acc, vscale(cbi.at(p, a) * cbi.at(q, b), chi_given[p][q]));
      }
      mu.chi[a][b] = std::move(acc);
    }
  return {std::move(c), std::move(mu)};
}

inline Json mu_payload(const EndBases& eb, const Lie2Morphism& mu) {
  Json j = Json::object();
  j["complex"] = complex_payload(eb.complex());
  j["end0_basis"] = end0_basis_json(eb);
  j["mu0"] = jio::mat_json(mu.mu0);
  j["mu1"] = jio::mat_json(mu.mu1);
  j["chi"] = jio::tensor2_json(mu.chi);
  return j;
}

inline Json mu_payload(const MuFile& f) { return mu_payload(EndBases(f.c), f.mu); }

// ---------------------------------------------------------------------------
// Whole documents

struct StructureFile {
  std::string kind;
  std::variant<TwoTermComplex, Lie2Structure, FunctorFile, OmniSubFile, QuadraticLieAlgebra,
               AlphaFile, MuFile>
      payload;
  std::vector<std::string> basis_labels;
};

inline StructureFile parse_structure_file(const Json& doc) {
  const Json& jkind = jio::member(doc, "kind", "$");
  if (!jkind.is_string()) throw ParseError("$.kind", "expected a string");
  const std::string kind = jkind.get<std::string>();
  const Json& p = jio::member(doc, "payload", "$");

  StructureFile f;
  f.kind = kind;
  if (const Json* labels = jio::opt_member(doc, "basis_labels")) {
    if (!labels->is_array()) throw ParseError("$.basis_labels", "expected an array of strings");
    for (std::size_t i = 0; i < labels->size(); ++i) {
      if (!(*labels)[i].is_string())
        throw ParseError("$.basis_labels[" + std::to_string(i) + "]", "expected a string");
      f.basis_labels.push_back((*labels)[i].get<std::string>());
    }
  }

  const std::string path = "$.payload";
  if (kind == "complex")
    f.payload = parse_complex(p, path);
  else if (kind == "lie2")
    f.payload = parse_lie2(p, path);
  else if (kind == "bilinear_functor")
    f.payload = parse_functor_file(p, path);
  else if (kind == "omni_sub")
    f.payload = parse_omni_sub(p, path);
  else if (kind == "quadratic")
    f.payload = parse_quadratic(p, path);
  else if (kind == "alpha")
    f.payload = parse_alpha(p, path);
  else if (kind == "mu")
    f.payload = parse_mu(p, path);
  else
    throw ParseError("$.kind", "unknown kind '" + kind + "'");
  return f;
}

inline Json serialize_structure_file(const StructureFile& f) {
  Json doc = Json::object();
  doc["kind"] = f.kind;
  doc["payload"] = std::visit(
      [](const auto& p) -> Json {
        using T = std::decay_t<decltype(p)>;
        if constexpr (std::is_same_v<T, TwoTermComplex>)
          return complex_payload(p);
        else if constexpr (std::is_same_v<T, Lie2Structure>)
          return lie2_payload(p);
        else if constexpr (std::is_same_v<T, FunctorFile>)
          return functor_payload(p);
        else if constexpr (std::is_same_v<T, OmniSubFile>)
          return omni_sub_payload(p);
        else if constexpr (std::is_same_v<T, QuadraticLieAlgebra>)
          return quadratic_payload(p);
        else if constexpr (std::is_same_v<T, AlphaFile>)
          return alpha_payload(p);
        else
          return mu_payload(p);
      },
      f.payload);
  if (!f.basis_labels.empty()) doc["basis_labels"] = f.basis_labels;
  return doc;
}

// ---------------------------------------------------------------------------
// Run reports

struct Witness {
  std::string identity;
  std::vector<std::size_t> basis; // indices of the instantiating basis tuple, when known
  std::string residual;
};

struct RunReport {
  std::string command;
  std::string verdict; // "pass" | "fail" | "value"
  std::vector<Witness> witnesses;
  std::vector<CheckItem> checks; // every identity examined, pass or fail
  double timing_ms = 0;
  Json result; // payload for "value" verdicts, diagnostics otherwise

  int exit_code() const { return verdict == "fail" ? 1 : 0; }
};

inline void absorb_check(RunReport& r, const CheckReport& rep) {
  for (const auto& it : rep.items) {
    r.checks.push_back(it);
    if (!it.ok) r.witnesses.push_back({it.name, {}, it.witness});
  }
}

inline Json report_json(const RunReport& r) {
  Json j = Json::object();
  j["command"] = r.command;
  j["verdict"] = r.verdict;
  Json ws = Json::array();
  for (const auto& w : r.witnesses) {
    Json o = Json::object();
    o["identity"] = w.identity;
    o["basis"] = w.basis;
    o["residual"] = w.residual;
    ws.push_back(std::move(o));
  }
  j["witnesses"] = std::move(ws);
  Json cs = Json::array();
  for (const auto& c : r.checks) {
    Json o = Json::object();
    o["identity"] = c.name;
    o["ok"] = c.ok;
    cs.push_back(std::move(o));
  }
  j["checks"] = std::move(cs);
  j["timing_ms"] = r.timing_ms;
  if (!r.result.is_null()) j["result"] = r.result;
  return j;
}

inline std::string report_pretty(const RunReport& r) {
  std::string out = "omni2 " + r.command + ": ";
  if (r.verdict == "pass")
    out += "PASS";
  else if (r.verdict == "fail")
    out += "FAIL";
  else
    out += "VALUE";
  out += " (" + std::to_string(r.checks.size()) + " identities, " +
         std::to_string(r.timing_ms) + " ms)\n";
  for (const auto& w : r.witnesses) {
    out += "  " + w.identity;
    if (!w.basis.empty()) {
      out += " at (";
      for (std::size_t i = 0; i < w.basis.size(); ++i)
        out += (i ? ", " : "") + std::to_string(w.basis[i]);
      out += ")";
    }
    out += ": " + w.residual + "\n";
  }
  if (!r.result.is_null()) out += r.result.dump(2) + "\n";
  return out;
}

} // namespace omni2
