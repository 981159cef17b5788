#pragma once

// Tiny dense reference implementations used as independent oracles in the
// tests.  Deliberately naive and separate from the library's sparse
// elimination path.

#include <vector>

#include "koszul/field.hpp"

namespace oracle {

template <class K>
using DenseMat = std::vector<std::vector<K>>;

template <class K>
int dense_rank(DenseMat<K> m) {
  using koszul::is_zero;
  if (m.empty()) return 0;
  const int rows = static_cast<int>(m.size());
  const int cols = static_cast<int>(m[0].size());
  int r = 0;
  for (int c = 0; c < cols && r < rows; ++c) {
    int piv = -1;
    for (int i = r; i < rows; ++i)
      if (!is_zero(m[i][c])) {
        piv = i;
        break;
      }
    if (piv < 0) continue;
    std::swap(m[r], m[piv]);
    for (int i = 0; i < rows; ++i) {
      if (i == r || is_zero(m[i][c])) continue;
      K f = m[i][c] / m[r][c];
      for (int j = c; j < cols; ++j) m[i][j] = m[i][j] - f * m[r][j];
    }
    ++r;
  }
  return r;
}

}  // namespace oracle
