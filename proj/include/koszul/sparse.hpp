#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <stdexcept>
#include <vector>

#include "koszul/field.hpp"

namespace koszul {

// Sparse row: entries sorted by column, no explicit zeros.
template <class K>
using SparseRow = std::vector<std::pair<int, K>>;

template <class K>
SparseRow<K> row_axpy(const SparseRow<K>& a, const K& c,
                      const SparseRow<K>& b) {
  // a + c*b
  SparseRow<K> out;
  out.reserve(a.size() + b.size());
  std::size_t i = 0, j = 0;
  while (i < a.size() || j < b.size()) {
    if (j == b.size() || (i < a.size() && a[i].first < b[j].first)) {
      out.push_back(a[i++]);
    } else if (i == a.size() || b[j].first < a[i].first) {
      K v = c * b[j].second;
      if (!is_zero(v)) out.emplace_back(b[j].first, v);
      ++j;
    } else {
      K v = a[i].second + c * b[j].second;
      if (!is_zero(v)) out.emplace_back(a[i].first, v);
      ++i;
      ++j;
    }
  }
  return out;
}

template <class K>
class SparseMat {
 public:
  SparseMat() : rows_(0), cols_(0) {}
  SparseMat(int rows, int cols) : rows_(rows), cols_(cols), data_(rows) {}

  static SparseMat identity(int n) {
    SparseMat m(n, n);
    for (int i = 0; i < n; ++i) m.data_[i].emplace_back(i, K(1));
    return m;
  }

  int rows() const { return rows_; }
  int cols() const { return cols_; }

  const SparseRow<K>& row(int i) const { return data_[i]; }
  SparseRow<K>& row(int i) { return data_[i]; }

  void set(int r, int c, const K& v) {
    check(r, c);
    auto& row = data_[r];
    auto it = std::lower_bound(
        row.begin(), row.end(), c,
        [](const std::pair<int, K>& e, int col) { return e.first < col; });
    if (it != row.end() && it->first == c) {
      if (is_zero(v))
        row.erase(it);
      else
        it->second = v;
    } else if (!is_zero(v)) {
      row.insert(it, {c, v});
    }
  }

  void add(int r, int c, const K& v) {
    if (is_zero(v)) return;
    check(r, c);
    auto& row = data_[r];
    auto it = std::lower_bound(
        row.begin(), row.end(), c,
        [](const std::pair<int, K>& e, int col) { return e.first < col; });
    if (it != row.end() && it->first == c) {
      it->second += v;
      if (is_zero(it->second)) row.erase(it);
    } else {
      row.insert(it, {c, v});
    }
  }

  K get(int r, int c) const {
    check(r, c);
    const auto& row = data_[r];
    auto it = std::lower_bound(
        row.begin(), row.end(), c,
        [](const std::pair<int, K>& e, int col) { return e.first < col; });
    if (it != row.end() && it->first == c) return it->second;
    return K(0);
  }

  bool is_zero_matrix() const {
    for (const auto& r : data_)
      if (!r.empty()) return false;
    return true;
  }

  std::size_t nnz() const {
    std::size_t n = 0;
    for (const auto& r : data_) n += r.size();
    return n;
  }

  friend bool operator==(const SparseMat& a, const SparseMat& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
  }

  SparseMat transpose() const {
    SparseMat t(cols_, rows_);
    for (int i = 0; i < rows_; ++i)
      for (const auto& [c, v] : data_[i]) t.data_[c].emplace_back(i, v);
    return t;
  }

  friend SparseMat operator*(const SparseMat& a, const SparseMat& b) {
    if (a.cols_ != b.rows_) throw std::invalid_argument("matmul shape");
    SparseMat out(a.rows_, b.cols_);
    for (int i = 0; i < a.rows_; ++i) {
      std::map<int, K> acc;
      for (const auto& [k, av] : a.data_[i])
        for (const auto& [j, bv] : b.data_[k]) {
          auto [it, fresh] = acc.try_emplace(j, K(0));
          it->second += av * bv;
        }
      auto& row = out.data_[i];
      for (auto& [j, v] : acc)
        if (!is_zero(v)) row.emplace_back(j, v);
    }
    return out;
  }

  friend SparseMat operator+(const SparseMat& a, const SparseMat& b) {
    if (a.rows_ != b.rows_ || a.cols_ != b.cols_)
      throw std::invalid_argument("matadd shape");
    SparseMat out(a.rows_, a.cols_);
    for (int i = 0; i < a.rows_; ++i)
      out.data_[i] = row_axpy(a.data_[i], K(1), b.data_[i]);
    return out;
  }

  friend SparseMat operator-(const SparseMat& a, const SparseMat& b) {
    if (a.rows_ != b.rows_ || a.cols_ != b.cols_)
      throw std::invalid_argument("matsub shape");
    SparseMat out(a.rows_, a.cols_);
    for (int i = 0; i < a.rows_; ++i)
      out.data_[i] = row_axpy(a.data_[i], K(-1), b.data_[i]);
    return out;
  }

  SparseMat scaled(const K& c) const {
    SparseMat out(rows_, cols_);
    if (is_zero(c)) return out;
    for (int i = 0; i < rows_; ++i) {
      out.data_[i] = data_[i];
      for (auto& [j, v] : out.data_[i]) v = v * c;
    }
    return out;
  }

  std::vector<K> apply(const std::vector<K>& x) const {
    if (static_cast<int>(x.size()) != cols_)
      throw std::invalid_argument("matvec shape");
    std::vector<K> y(rows_, K(0));
    for (int i = 0; i < rows_; ++i)
      for (const auto& [j, v] : data_[i]) y[i] += v * x[j];
    return y;
  }

  void set_row(int i, SparseRow<K> r) { data_[i] = std::move(r); }

  std::vector<K> dense_row(int i) const {
    std::vector<K> out(cols_, K(0));
    for (const auto& [j, v] : data_[i]) out[j] = v;
    return out;
  }

  static SparseMat vstack(const SparseMat& a, const SparseMat& b) {
    if (a.cols_ != b.cols_) throw std::invalid_argument("vstack shape");
    SparseMat out(a.rows_ + b.rows_, a.cols_);
    for (int i = 0; i < a.rows_; ++i) out.data_[i] = a.data_[i];
    for (int i = 0; i < b.rows_; ++i) out.data_[a.rows_ + i] = b.data_[i];
    return out;
  }

  static SparseMat hstack(const SparseMat& a, const SparseMat& b) {
    if (a.rows_ != b.rows_) throw std::invalid_argument("hstack shape");
    SparseMat out(a.rows_, a.cols_ + b.cols_);
    for (int i = 0; i < a.rows_; ++i) {
      out.data_[i] = a.data_[i];
      for (const auto& [j, v] : b.data_[i])
        out.data_[i].emplace_back(a.cols_ + j, v);
    }
    return out;
  }

 private:
  void check(int r, int c) const {
    if (r < 0 || r >= rows_ || c < 0 || c >= cols_)
      throw std::out_of_range("matrix index");
  }

  int rows_, cols_;
  std::vector<SparseRow<K>> data_;
};

// Reduced row echelon form.  Pivot columns are the lexicographically first
// possible ones, which makes the result unique; all downstream bases and
// representatives inherit their determinism from this.
template <class K>
struct Rref {
  SparseMat<K> mat;          // rank many RREF rows
  std::vector<int> pivots;   // pivot column of each row, increasing
  int rank() const { return static_cast<int>(pivots.size()); }

  // Reduce a dense vector modulo the row space; the result is supported on
  // non-pivot columns only.
  std::vector<K> reduce(std::vector<K> v) const {
    for (int r = 0; r < rank(); ++r) {
      const K& c = v[pivots[r]];
      if (is_zero(c)) continue;
      K coef = c;  // pivot entries are 1
      for (const auto& [j, w] : mat.row(r)) v[j] -= coef * w;
    }
    return v;
  }

  bool contains(const std::vector<K>& v) const {
    auto r = reduce(v);
    for (const auto& x : r)
      if (!is_zero(x)) return false;
    return true;
  }
};

template <class K>
Rref<K> rref(const SparseMat<K>& m) {
  struct Work {
    SparseRow<K> row;
  };
  // bucket rows by leading column
  std::vector<std::vector<SparseRow<K>>> byLead(m.cols() + 1);
  for (int i = 0; i < m.rows(); ++i) {
    const auto& r = m.row(i);
    if (!r.empty()) byLead[r.front().first].push_back(r);
  }
  std::vector<SparseRow<K>> done;
  std::vector<int> pivots;
  for (int c = 0; c < m.cols(); ++c) {
    auto& bucket = byLead[c];
    if (bucket.empty()) continue;
    // smallest row as pivot keeps fill-in down; result is unique anyway
    std::size_t best = 0;
    for (std::size_t i = 1; i < bucket.size(); ++i)
      if (bucket[i].size() < bucket[best].size()) best = i;
    SparseRow<K> piv = std::move(bucket[best]);
    bucket.erase(bucket.begin() + best);
    K lead = piv.front().second;
    if (!(lead == K(1)))
      for (auto& [j, v] : piv) v = v / lead;
    for (auto& r : bucket) {
      K coef = -r.front().second;
      auto nr = row_axpy(r, coef, piv);
      if (!nr.empty()) byLead[nr.front().first].push_back(std::move(nr));
    }
    bucket.clear();
    done.push_back(std::move(piv));
    pivots.push_back(c);
  }
  // back substitution
  for (int i = static_cast<int>(done.size()) - 1; i >= 0; --i) {
    for (int j = i - 1; j >= 0; --j) {
      // eliminate pivot i from row j
      const int pc = pivots[i];
      auto it = std::lower_bound(
          done[j].begin(), done[j].end(), pc,
          [](const std::pair<int, K>& e, int col) { return e.first < col; });
      if (it != done[j].end() && it->first == pc) {
        K coef = -it->second;
        done[j] = row_axpy(done[j], coef, done[i]);
      }
    }
  }
  Rref<K> out;
  out.mat = SparseMat<K>(static_cast<int>(done.size()), m.cols());
  for (std::size_t i = 0; i < done.size(); ++i)
    out.mat.set_row(static_cast<int>(i), std::move(done[i]));
  out.pivots = std::move(pivots);
  return out;
}

template <class K>
int rank(const SparseMat<K>& m) {
  return rref(m).rank();
}

// RREF basis of the null space {x : m x = 0}.
template <class K>
SparseMat<K> kernel_basis(const SparseMat<K>& m) {
  auto r = rref(m);
  std::vector<bool> is_pivot(m.cols(), false);
  for (int p : r.pivots) is_pivot[p] = true;
  std::vector<int> free_cols;
  for (int c = 0; c < m.cols(); ++c)
    if (!is_pivot[c]) free_cols.push_back(c);
  SparseMat<K> ker(static_cast<int>(free_cols.size()), m.cols());
  for (std::size_t i = 0; i < free_cols.size(); ++i) {
    int f = free_cols[i];
    std::map<int, K> entries;
    entries[f] = K(1);
    for (int row = 0; row < r.rank(); ++row) {
      K v = r.mat.get(row, f);
      if (!is_zero(v)) entries[r.pivots[row]] = -v;
    }
    SparseRow<K> sr(entries.begin(), entries.end());
    ker.set_row(static_cast<int>(i), std::move(sr));
  }
  auto normalized = rref(ker);
  return normalized.mat;
}

// Any particular solution of m x = b, with free variables pinned to zero
// under the column order.  Empty optional when b is not in the image.
template <class K>
std::optional<std::vector<K>> solve(const SparseMat<K>& m,
                                    const std::vector<K>& b) {
  if (static_cast<int>(b.size()) != m.rows())
    throw std::invalid_argument("solve: rhs length");
  SparseMat<K> aug(m.rows(), m.cols() + 1);
  for (int i = 0; i < m.rows(); ++i) {
    SparseRow<K> r = m.row(i);
    if (!is_zero(b[i])) r.emplace_back(m.cols(), b[i]);
    aug.set_row(i, std::move(r));
  }
  auto r = rref(aug);
  std::vector<K> x(m.cols(), K(0));
  for (int i = 0; i < r.rank(); ++i) {
    if (r.pivots[i] == m.cols()) return std::nullopt;  // 0 = 1 row
    x[r.pivots[i]] = r.mat.get(i, m.cols());
  }
  return x;
}

template <class K>
SparseMat<K> from_dense_rows(const std::vector<std::vector<K>>& rows,
                             int cols) {
  SparseMat<K> m(static_cast<int>(rows.size()), cols);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    SparseRow<K> r;
    for (int j = 0; j < cols; ++j)
      if (!is_zero(rows[i][j])) r.emplace_back(j, rows[i][j]);
    m.set_row(static_cast<int>(i), std::move(r));
  }
  return m;
}

}  // namespace koszul
