#pragma once

#include <string>
#include <vector>

namespace koszul {

// Words over a d-letter alphabet, enumerated lexicographically within each
// length; this order pins every monomial basis in the library.
using Word = std::vector<int>;

inline long word_count(int d, int n) {
  long c = 1;
  for (int i = 0; i < n; ++i) c *= d;
  return c;
}

inline long word_index(const Word& w, int d) {
  long idx = 0;
  for (int g : w) idx = idx * d + g;
  return idx;
}

inline Word index_word(long idx, int n, int d) {
  Word w(n);
  for (int i = n - 1; i >= 0; --i) {
    w[i] = static_cast<int>(idx % d);
    idx /= d;
  }
  return w;
}

inline Word concat(const Word& a, const Word& b) {
  Word w = a;
  w.insert(w.end(), b.begin(), b.end());
  return w;
}

inline std::string word_label(const Word& w,
                              const std::vector<std::string>& names) {
  if (w.empty()) return "1";
  bool short_names = true;
  for (const auto& n : names)
    if (n.size() != 1) short_names = false;
  std::string s;
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (i && !short_names) s += ".";
    s += names[w[i]];
  }
  return s;
}

// All compositions of n into k positive parts, lexicographic.
inline void compositions_rec(int n, int k, std::vector<int>& cur,
                             std::vector<std::vector<int>>& out) {
  if (k == 1) {
    if (n >= 1) {
      cur.push_back(n);
      out.push_back(cur);
      cur.pop_back();
    }
    return;
  }
  for (int first = 1; first + (k - 1) <= n; ++first) {
    cur.push_back(first);
    compositions_rec(n - first, k - 1, cur, out);
    cur.pop_back();
  }
}

inline std::vector<std::vector<int>> compositions(int n, int k) {
  std::vector<std::vector<int>> out;
  if (k == 0) {
    if (n == 0) out.push_back({});
    return out;
  }
  std::vector<int> cur;
  compositions_rec(n, k, cur, out);
  return out;
}

}  // namespace koszul
