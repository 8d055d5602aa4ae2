#pragma once

#include "omni2/matrix.hpp"

#include <algorithm>
#include <optional>
#include <vector>

namespace omni2 {

struct RrefResult {
  RatMatrix mat;
  std::vector<std::size_t> pivots; // pivot column of each nonzero row, ascending
};

/// Reduced row echelon form over the rationals (exact).
inline RrefResult rref(RatMatrix m) {
  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  for (std::size_t c = 0; c < m.cols() && r < m.rows(); ++c) {
    std::size_t piv = r;
    while (piv < m.rows() && m.at(piv, c) == 0) ++piv;
    if (piv == m.rows()) continue;
    if (piv != r)
      for (std::size_t j = 0; j < m.cols(); ++j) std::swap(m.at(piv, j), m.at(r, j));
    const Rat inv = Rat(1) / m.at(r, c);
    for (std::size_t j = c; j < m.cols(); ++j) m.at(r, j) *= inv;
    for (std::size_t i = 0; i < m.rows(); ++i) {
      if (i == r || m.at(i, c) == 0) continue;
      const Rat f = m.at(i, c);
      for (std::size_t j = c; j < m.cols(); ++j) m.at(i, j) -= f * m.at(r, j);
    }
    pivots.push_back(c);
    ++r;
  }
  return {std::move(m), std::move(pivots)};
}

inline std::size_t rank(const RatMatrix& m) { return rref(m).pivots.size(); }

/// Basis of { x : m x = 0 }, one vector per free column, RREF-canonical rows.
inline std::vector<RatVec> kernel_basis(const RatMatrix& m) {
  const auto rr = rref(m);
  std::vector<bool> is_pivot(m.cols(), false);
  for (auto c : rr.pivots) is_pivot[c] = true;
  std::vector<RatVec> out;
  for (std::size_t free_c = 0; free_c < m.cols(); ++free_c) {
    if (is_pivot[free_c]) continue;
    RatVec v(m.cols());
    v[free_c] = 1;
    for (std::size_t i = 0; i < rr.pivots.size(); ++i) v[rr.pivots[i]] = -rr.mat.at(i, free_c);
    out.push_back(std::move(v));
  }
  return out;
}

/// One solution of m x = b with free variables set to zero, or nullopt.
inline std::optional<RatVec> solve(const RatMatrix& m, const RatVec& b) {
  if (b.size() != m.rows()) throw std::invalid_argument("solve shape mismatch");
  RatMatrix aug(m.rows(), m.cols() + 1);
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < m.cols(); ++j) aug.at(i, j) = m.at(i, j);
    aug.at(i, m.cols()) = b[i];
  }
  const auto rr = rref(std::move(aug));
  RatVec x(m.cols());
  for (std::size_t i = 0; i < rr.pivots.size(); ++i) {
    if (rr.pivots[i] == m.cols()) return std::nullopt; // pivot in the constant column
    x[rr.pivots[i]] = rr.mat.at(i, m.cols());
  }
  return x;
}

/// Inverse of a square matrix, or nullopt when singular.
inline std::optional<RatMatrix> inverse(const RatMatrix& m) {
  if (m.rows() != m.cols()) throw std::invalid_argument("inverse of non-square matrix");
  const std::size_t n = m.rows();
  RatMatrix aug(n, 2 * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) aug.at(i, j) = m.at(i, j);
    aug.at(i, n + i) = 1;
  }
  auto rr = rref(std::move(aug));
  if (rr.pivots.size() != n || (n && rr.pivots.back() != n - 1)) return std::nullopt;
  RatMatrix inv(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) inv.at(i, j) = rr.mat.at(i, n + j);
  return inv;
}

/// Subspace of Q^ambient held in canonical form: RREF rows as basis.  Two
/// subspaces are equal iff their canonical bases are identical vectors.
class Subspace {
public:
  explicit Subspace(std::size_t ambient) : ambient_(ambient) {}

  static Subspace from_rows(std::size_t ambient, const std::vector<RatVec>& rows) {
    Subspace s(ambient);
    if (!rows.empty()) {
      auto rr = rref(RatMatrix::from_rows(rows, ambient));
      for (std::size_t i = 0; i < rr.pivots.size(); ++i) s.basis_.push_back(rr.mat.row(i));
      s.pivots_ = std::move(rr.pivots);
    }
    return s;
  }

  static Subspace full(std::size_t ambient) {
    std::vector<RatVec> rows;
    for (std::size_t i = 0; i < ambient; ++i) rows.push_back(unit_vec(ambient, i));
    return from_rows(ambient, rows);
  }

  static Subspace zero(std::size_t ambient) { return Subspace(ambient); }

  std::size_t ambient() const { return ambient_; }
  std::size_t dim() const { return basis_.size(); }
  const std::vector<RatVec>& basis() const { return basis_; }
  const std::vector<std::size_t>& pivots() const { return pivots_; }
  bool is_full() const { return dim() == ambient_; }
  bool is_zero() const { return basis_.empty(); }

  /// Residual of v after eliminating along the canonical basis; zero iff v is a member.
  RatVec reduce(const RatVec& v) const {
    if (v.size() != ambient_) throw std::invalid_argument("reduce shape mismatch");
    RatVec r = v;
    for (std::size_t i = 0; i < basis_.size(); ++i) {
      const Rat c = r[pivots_[i]];
      if (c != 0) r = vsub(r, vscale(c, basis_[i]));
    }
    return r;
  }

  bool contains(const RatVec& v) const { return vis_zero(reduce(v)); }
  bool contains(const Subspace& o) const {
    for (const auto& b : o.basis_)
      if (!contains(b)) return false;
    return true;
  }

  /// Coefficients of v in the canonical basis, or nullopt if v is outside.
  std::optional<RatVec> coordinates_of(const RatVec& v) const {
    if (!contains(v)) return std::nullopt;
    RatVec c(basis_.size());
    for (std::size_t i = 0; i < basis_.size(); ++i) c[i] = v[pivots_[i]];
    return c;
  }

  bool operator==(const Subspace& o) const {
    return ambient_ == o.ambient_ && basis_ == o.basis_;
  }
  bool operator!=(const Subspace& o) const { return !(*this == o); }

private:
  std::size_t ambient_;
  std::vector<RatVec> basis_;
  std::vector<std::size_t> pivots_;
};

inline Subspace sum(const Subspace& a, const Subspace& b) {
  if (a.ambient() != b.ambient()) throw std::invalid_argument("subspace ambient mismatch");
  std::vector<RatVec> rows = a.basis();
  rows.insert(rows.end(), b.basis().begin(), b.basis().end());
  return Subspace::from_rows(a.ambient(), rows);
}

/// a ∩ b via the kernel of [A^T | -B^T]: a coefficient pair (x, y) with
/// A^T x = B^T y names a common vector.
inline Subspace intersect(const Subspace& a, const Subspace& b) {
  if (a.ambient() != b.ambient()) throw std::invalid_argument("subspace ambient mismatch");
  if (a.is_zero() || b.is_zero()) return Subspace::zero(a.ambient());
  const std::size_t da = a.dim(), db = b.dim();
  RatMatrix m(a.ambient(), da + db);
  for (std::size_t j = 0; j < da; ++j) m.set_col(j, a.basis()[j]);
  for (std::size_t j = 0; j < db; ++j) {
    RatVec col = vneg(b.basis()[j]);
    m.set_col(da + j, col);
  }
  std::vector<RatVec> rows;
  for (const auto& k : kernel_basis(m)) {
    RatVec v(a.ambient());
    for (std::size_t j = 0; j < da; ++j)
      if (k[j] != 0) v = vadd(v, vscale(k[j], a.basis()[j]));
    rows.push_back(std::move(v));
  }
  return Subspace::from_rows(a.ambient(), rows);
}

/// Deterministic complement: greedily extend the basis of s by standard unit
/// vectors in index order.  With s in RREF this picks exactly the non-pivot
/// coordinates.
inline Subspace complement(const Subspace& s) {
  std::vector<bool> is_pivot(s.ambient(), false);
  for (auto c : s.pivots()) is_pivot[c] = true;
  std::vector<RatVec> rows;
  for (std::size_t j = 0; j < s.ambient(); ++j)
    if (!is_pivot[j]) rows.push_back(unit_vec(s.ambient(), j));
  return Subspace::from_rows(s.ambient(), rows);
}

/// Matrix R with R v = 0  iff  v ∈ s.  Since the basis is RREF, reduce() is
/// the single linear map v ↦ v − Σ_i v[p_i]·b_i, i.e. I − Σ_i b_i e_{p_i}^T;
/// its pivot rows vanish and the non-pivot rows are the residual functionals.
inline RatMatrix residual_map(const Subspace& s) {
  RatMatrix m = RatMatrix::identity(s.ambient());
  for (std::size_t i = 0; i < s.dim(); ++i)
    for (std::size_t r = 0; r < s.ambient(); ++r)
      m.at(r, s.pivots()[i]) -= s.basis()[i][r];
  std::vector<RatVec> rows;
  for (std::size_t r = 0; r < s.ambient(); ++r) {
    RatVec v = m.row(r);
    if (!vis_zero(v)) rows.push_back(std::move(v));
  }
  return RatMatrix::from_rows(rows, s.ambient());
}

/// Preimage { x : m x ∈ s } as a subspace of the domain.
inline Subspace preimage(const RatMatrix& m, const Subspace& s) {
  if (s.ambient() != m.rows()) throw std::invalid_argument("preimage shape mismatch");
  const RatMatrix r = residual_map(s);
  std::vector<RatVec> rows = kernel_basis(r * m);
  return Subspace::from_rows(m.cols(), rows);
}

/// Image of s under m.
inline Subspace image(const RatMatrix& m, const Subspace& s) {
  if (s.ambient() != m.cols()) throw std::invalid_argument("image shape mismatch");
  std::vector<RatVec> rows;
  for (const auto& b : s.basis()) rows.push_back(m.apply(b));
  return Subspace::from_rows(m.rows(), rows);
}

inline Subspace kernel_subspace(const RatMatrix& m) {
  return Subspace::from_rows(m.cols(), kernel_basis(m));
}

inline Subspace image_subspace(const RatMatrix& m) {
  return image(m, Subspace::full(m.cols()));
}

} // namespace omni2
