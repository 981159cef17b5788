#pragma once

#include <vector>

#include "koszul/sparse.hpp"

namespace koszul {

// A subspace of k^n, stored as an RREF basis so equal subspaces have equal
// representations.
template <class K>
class Subspace {
 public:
  Subspace() : ambient_(0) {}
  explicit Subspace(int ambient) : ambient_(ambient) {
    basis_.mat = SparseMat<K>(0, ambient);
  }
  Subspace(int ambient, const SparseMat<K>& spanning_rows)
      : ambient_(ambient), basis_(rref(spanning_rows)) {
    if (spanning_rows.cols() != ambient)
      throw std::invalid_argument("subspace ambient mismatch");
  }

  static Subspace full(int ambient) {
    return Subspace(ambient, SparseMat<K>::identity(ambient));
  }

  int ambient() const { return ambient_; }
  int dim() const { return basis_.rank(); }
  const SparseMat<K>& basis() const { return basis_.mat; }
  const std::vector<int>& pivots() const { return basis_.pivots; }

  bool contains(const std::vector<K>& v) const { return basis_.contains(v); }

  bool contains(const Subspace& other) const {
    for (int i = 0; i < other.dim(); ++i)
      if (!contains(other.basis().dense_row(i))) return false;
    return true;
  }

  std::vector<K> reduce(std::vector<K> v) const {
    return basis_.reduce(std::move(v));
  }

  friend bool operator==(const Subspace& a, const Subspace& b) {
    return a.ambient_ == b.ambient_ && a.basis_.mat == b.basis_.mat;
  }

  // Coordinates of v in the basis rows; throws when v is outside.
  std::vector<K> coordinates(const std::vector<K>& v) const {
    std::vector<K> coords(dim(), K(0));
    std::vector<K> w = v;
    for (int r = 0; r < dim(); ++r) {
      K c = w[basis_.pivots[r]];
      coords[r] = c;
      if (is_zero(c)) continue;
      for (const auto& [j, x] : basis_.mat.row(r)) w[j] -= c * x;
    }
    for (const auto& x : w)
      if (!is_zero(x))
        throw std::domain_error("vector not in subspace");
    return coords;
  }

 private:
  int ambient_;
  Rref<K> basis_;
};

template <class K>
Subspace<K> subspace_sum(const Subspace<K>& a, const Subspace<K>& b) {
  if (a.ambient() != b.ambient())
    throw std::invalid_argument("subspace ambient mismatch");
  return Subspace<K>(a.ambient(), SparseMat<K>::vstack(a.basis(), b.basis()));
}

template <class K>
Subspace<K> subspace_intersection(const Subspace<K>& a, const Subspace<K>& b) {
  if (a.ambient() != b.ambient())
    throw std::invalid_argument("subspace ambient mismatch");
  const int ra = a.dim(), rb = b.dim();
  if (ra == 0 || rb == 0) return Subspace<K>(a.ambient());
  // x in both row spaces:  x = alpha A = beta B.  Solve A^T alpha = B^T beta
  // via the kernel of [A^T | -B^T].
  SparseMat<K> n = SparseMat<K>::hstack(a.basis().transpose(),
                                        b.basis().transpose().scaled(K(-1)));
  SparseMat<K> ker = kernel_basis(n);
  SparseMat<K> vecs(ker.rows(), a.ambient());
  for (int i = 0; i < ker.rows(); ++i) {
    std::map<int, K> acc;
    for (const auto& [j, c] : ker.row(i)) {
      if (j >= ra) break;
      for (const auto& [col, v] : a.basis().row(j)) {
        auto [it, fresh] = acc.try_emplace(col, K(0));
        it->second += c * v;
      }
    }
    SparseRow<K> row;
    for (auto& [col, v] : acc)
      if (!is_zero(v)) row.emplace_back(col, v);
    vecs.set_row(i, std::move(row));
  }
  return Subspace<K>(a.ambient(), vecs);
}

// Pinned complement of r inside k^ambient: the standard basis vectors at
// non-pivot columns, in index order, together with the projection matrix
// onto their coordinates.  projection . inclusion = identity and the kernel
// of the projection is exactly r.
template <class K>
struct QuotientData {
  std::vector<int> complement_cols;
  SparseMat<K> projection;  // (ambient - dim r) x ambient
};

template <class K>
QuotientData<K> quotient_data(int ambient_dim, const Subspace<K>& r) {
  if (r.ambient() != ambient_dim)
    throw std::invalid_argument("quotient ambient mismatch");
  std::vector<bool> is_pivot(ambient_dim, false);
  for (int p : r.pivots()) is_pivot[p] = true;
  QuotientData<K> out;
  std::vector<int> comp_index(ambient_dim, -1);
  for (int c = 0; c < ambient_dim; ++c)
    if (!is_pivot[c]) {
      comp_index[c] = static_cast<int>(out.complement_cols.size());
      out.complement_cols.push_back(c);
    }
  const int m = static_cast<int>(out.complement_cols.size());
  out.projection = SparseMat<K>(m, ambient_dim);
  // reduce each e_c modulo r and read off the free coordinates
  for (int c = 0; c < ambient_dim; ++c) {
    if (!is_pivot[c]) {
      out.projection.add(comp_index[c], c, K(1));
    } else {
      // e_c reduces to -(free part of the pivot row)
      int row = -1;
      const auto& piv = r.pivots();
      for (std::size_t i = 0; i < piv.size(); ++i)
        if (piv[i] == c) row = static_cast<int>(i);
      for (const auto& [j, v] : r.basis().row(row))
        if (j != c) out.projection.add(comp_index[j], c, -v);
    }
  }
  return out;
}

}  // namespace koszul
