#pragma once

#include "omni2/complex.hpp"

#include <optional>

namespace omni2 {

/// Coordinate picture shared by every 2-vector space in this library: objects
/// live in Q^obj_dim, morphisms are pairs (x, k) ∈ Q^obj_dim ⊕ Q^ker_dim with
/// source x and target x + t k.  The same struct covers the base 2-space
/// (t = d), the endomorphism 2-algebra (t = δ in coordinates) and direct
/// sums of the two (t block diagonal).
struct TwoVectorAmbient {
  std::size_t obj_dim = 0;
  std::size_t ker_dim = 0;
  RatMatrix t_map; // obj_dim x ker_dim

  std::size_t mor_dim() const { return obj_dim + ker_dim; }
};

inline TwoVectorAmbient ambient_of(const TwoTermComplex& c) {
  return {c.dim_v0, c.dim_v1, c.d};
}

inline TwoVectorAmbient direct_sum(const TwoVectorAmbient& a, const TwoVectorAmbient& b) {
  RatMatrix t(a.obj_dim + b.obj_dim, a.ker_dim + b.ker_dim);
  for (std::size_t i = 0; i < a.obj_dim; ++i)
    for (std::size_t j = 0; j < a.ker_dim; ++j) t.at(i, j) = a.t_map.at(i, j);
  for (std::size_t i = 0; i < b.obj_dim; ++i)
    for (std::size_t j = 0; j < b.ker_dim; ++j) t.at(a.obj_dim + i, a.ker_dim + j) = b.t_map.at(i, j);
  return {a.obj_dim + b.obj_dim, a.ker_dim + b.ker_dim, std::move(t)};
}

inline RatVec make_mor(const RatVec& x, const RatVec& k) { return vcat(x, k); }

inline RatVec mor_source(const TwoVectorAmbient& amb, const RatVec& f) {
  return vslice(f, 0, amb.obj_dim);
}

inline RatVec mor_kpart(const TwoVectorAmbient& amb, const RatVec& f) {
  return vslice(f, amb.obj_dim, amb.ker_dim);
}

inline RatVec mor_target(const TwoVectorAmbient& amb, const RatVec& f) {
  return vadd(mor_source(amb, f), amb.t_map.apply(mor_kpart(amb, f)));
}

inline RatVec identity_mor(const TwoVectorAmbient& amb, const RatVec& x) {
  return make_mor(x, vzero(amb.ker_dim));
}

inline RatVec compose_mor(const TwoVectorAmbient& amb, const RatVec& f, const RatVec& g) {
  if (mor_source(amb, g) != mor_target(amb, f))
    throw std::invalid_argument("morphisms not composable");
  return make_mor(mor_source(amb, f), vadd(mor_kpart(amb, f), mor_kpart(amb, g)));
}

/// Sub-2-vector space, stored as its canonical pair: the object subspace s0
/// and the kernel part k = { f : source(f) = 0 }.  Validity requires the
/// targets of kernel elements to land back in s0; then the morphism space is
/// exactly s0 ⊕ k in coordinates.
struct Sub2 {
  TwoVectorAmbient amb;
  Subspace s0;
  Subspace k;

  std::size_t dim() const { return s0.dim() + k.dim(); }
  bool operator==(const Sub2& o) const { return s0 == o.s0 && k == o.k; }
  bool operator!=(const Sub2& o) const { return !(*this == o); }
};

inline bool target_closed(const TwoVectorAmbient& amb, const Subspace& s0, const Subspace& k) {
  for (const auto& kb : k.basis())
    if (!s0.contains(amb.t_map.apply(kb))) return false;
  return true;
}

inline Sub2 make_sub2(const TwoVectorAmbient& amb, Subspace s0, Subspace k) {
  if (s0.ambient() != amb.obj_dim || k.ambient() != amb.ker_dim)
    throw std::invalid_argument("sub-2-space ambient mismatch");
  if (!target_closed(amb, s0, k))
    throw std::invalid_argument("kernel-part targets escape the object subspace");
  return {amb, std::move(s0), std::move(k)};
}

inline Sub2 full_sub2(const TwoVectorAmbient& amb) {
  return {amb, Subspace::full(amb.obj_dim), Subspace::full(amb.ker_dim)};
}

inline Sub2 zero_sub2(const TwoVectorAmbient& amb) {
  return {amb, Subspace::zero(amb.obj_dim), Subspace::zero(amb.ker_dim)};
}

inline bool sub2_contains_mor(const Sub2& s, const RatVec& f) {
  return s.s0.contains(mor_source(s.amb, f)) && s.k.contains(mor_kpart(s.amb, f));
}

inline Sub2 intersect(const Sub2& a, const Sub2& b) {
  return {a.amb, intersect(a.s0, b.s0), intersect(a.k, b.k)};
}

inline Sub2 sum(const Sub2& a, const Sub2& b) {
  return {a.amb, sum(a.s0, b.s0), sum(a.k, b.k)};
}

/// Morphism space of the sub as one subspace of Q^{obj+ker}.
inline Subspace morphism_space(const Sub2& s) {
  std::vector<RatVec> rows;
  for (const auto& b : s.s0.basis()) rows.push_back(make_mor(b, vzero(s.amb.ker_dim)));
  for (const auto& b : s.k.basis()) rows.push_back(make_mor(vzero(s.amb.obj_dim), b));
  return Subspace::from_rows(s.amb.mor_dim(), rows);
}

/// Split a subspace M ⊆ Q^{obj+ker} into (source projection, kernel slice).
/// Returns nullopt when M is not of product form s0 ⊕ k or when the slice
/// fails target-closure — either way M is not the morphism space of a sub.
inline std::optional<Sub2> split_morphism_space(const TwoVectorAmbient& amb, const Subspace& m) {
  std::vector<RatVec> src_rows;
  for (const auto& b : m.basis()) src_rows.push_back(mor_source(amb, b));
  Subspace s0 = Subspace::from_rows(amb.obj_dim, src_rows);

  // k = slice { k : (0, k) ∈ M }
  std::vector<RatVec> zrows;
  for (std::size_t j = 0; j < amb.ker_dim; ++j)
    zrows.push_back(make_mor(vzero(amb.obj_dim), unit_vec(amb.ker_dim, j)));
  const Subspace zero_source = intersect(m, Subspace::from_rows(amb.mor_dim(), zrows));
  std::vector<RatVec> k_rows;
  for (const auto& b : zero_source.basis()) k_rows.push_back(mor_kpart(amb, b));
  Subspace k = Subspace::from_rows(amb.ker_dim, k_rows);

  // Product form must be checked by comparing subspaces: a diagonal line like
  // span{(x, k)} matches the dimension count without being split.
  if (!target_closed(amb, s0, k)) return std::nullopt;
  Sub2 candidate{amb, std::move(s0), std::move(k)};
  if (morphism_space(candidate) != m) return std::nullopt;
  return candidate;
}

} // namespace omni2
