#pragma once

#include "koszul/hochschild.hpp"

namespace koszul {

// Normalized Hochschild cochains of a graded algebra, stored as value
// tables on the pinned bar-word basis.  A basis cochain (w, s) sends the
// word w to the output s and every other word to zero; it is housed at
// bidegree (bidegree of s) - (bidegree of w), so the coboundary has
// complete degree (-1, 0) in the homological storage.
//
// Two sign flavors:
//  * classic  - the alternating-sum coboundary and the (-1)^{nm} cup of
//    degree-zero algebras (used for the primary algebra side);
//  * koszul   - the twisted-convolution signs for genuinely graded
//    algebras (used for the dual-algebra side).
enum class CochainSigns { classic, koszul };

template <class K>
struct CochainModel {
  const GradedAlgebra<K>* S = nullptr;
  BarWords<K> bar;
  CochainSigns signs = CochainSigns::classic;
  using Letter = typename GradedAlgebra<K>::Elem;
  using Word = typename BarWords<K>::Word;
  struct Basis {
    Bideg wb;   // bar word bidegree
    int w;      // word index
    Letter s;   // output
  };
  std::unique_ptr<BigradedFamily> fam = std::make_unique<BigradedFamily>();
  std::map<Bideg, std::vector<Basis>> basis;
  // (word bidegree, word index, output bidegree, output index) -> position
  std::map<Bideg, std::map<std::vector<int>, int>> index;
  ChainMap<K> delta;  // shift (-1, 0)

  int pos(Bideg at, Bideg wb, int w, const Letter& s) const {
    auto itb = index.find(at);
    if (itb == index.end()) return -1;
    auto it = itb->second.find({wb.deg, wb.wt, w, s.b.deg, s.b.wt, s.k});
    return it == itb->second.end() ? -1 : it->second;
  }
};

// Value of a cochain (coordinate vector at one bidegree) on a single word,
// as an expansion over algebra basis elements.
template <class K>
typename GradedAlgebra<K>::Expansion cochain_value(
    const CochainModel<K>& M, Bideg at, const std::vector<K>& coords,
    Bideg wb, int w) {
  typename GradedAlgebra<K>::Expansion out;
  auto it = M.basis.find(at);
  if (it == M.basis.end()) return out;
  for (std::size_t i = 0; i < it->second.size(); ++i) {
    const auto& e = it->second[i];
    if (e.wb == wb && e.w == w && !is_zero(coords[i]))
      out.push_back({e.s, coords[i]});
  }
  return out;
}

template <class K>
CochainModel<K> cochain_model(const GradedAlgebra<K>& S, int word_weight_cap,
                              int length_cap, CochainSigns signs) {
  CochainModel<K> out;
  out.S = &S;
  out.signs = signs;
  out.bar = bar_words(S, word_weight_cap, length_cap);
  if (signs == CochainSigns::classic) {
    for (const auto& [b, labels] : S.fam->support())
      if (b.deg != 0)
        throw consistency_error(
            "classic cochain signs require a degree-zero algebra");
  }
  using Letter = typename GradedAlgebra<K>::Elem;
  for (const auto& [wb, ws] : out.bar.words)
    for (int w = 0; w < static_cast<int>(ws.size()); ++w)
      for (const auto& [sb, labels] : S.fam->support())
        for (int k = 0; k < S.dim(sb); ++k) {
          Bideg at = sb - wb;
          auto& vec = out.basis[at];
          out.index[at][{wb.deg, wb.wt, w, sb.deg, sb.wt, k}] =
              static_cast<int>(vec.size());
          vec.push_back({wb, w, Letter{sb, k}});
        }
  for (const auto& [b, vec] : out.basis) {
    std::vector<std::string> labels;
    for (const auto& e : vec) {
      std::string s = "[";
      const auto& word = out.bar.words.at(e.wb)[e.w];
      for (std::size_t i = 0; i < word.size(); ++i) {
        if (i) s += "|";
        s += S.label(word[i]);
      }
      s += "]->" + S.label(e.s);
      labels.push_back(s);
    }
    out.fam->set_basis(b, labels);
  }
  out.delta = ChainMap<K>(out.fam.get(), out.fam.get(), {-1, 0});
  // delta of the basis cochain (w, s), assembled by scanning target words
  // w' of length k+1 and decomposing the three structural terms.
  for (const auto& [at, vec] : out.basis) {
    const Bideg tb = at + Bideg{-1, 0};
    auto itt = out.basis.find(tb);
    const int rows = itt == out.basis.end()
                         ? 0
                         : static_cast<int>(itt->second.size());
    SparseMat<K> m(rows, static_cast<int>(vec.size()));
    if (rows > 0)
      for (std::size_t col = 0; col < vec.size(); ++col) {
        const auto& e = vec[col];
        const auto& word = out.bar.words.at(e.wb)[e.w];
        const int k = static_cast<int>(word.size());
        if (out.bar.length_cap && k + 1 > out.bar.length_cap) continue;
        const long fdeg = at.deg;  // complete degree of the cochain
        // (a) first-letter action: w' = [x | word], value x . s
        for (const auto& [xb, labels] : S.fam->support()) {
          if (xb == Bideg{0, 0}) continue;
          for (int xk = 0; xk < S.dim(xb); ++xk) {
            typename BarWords<K>::Word w2;
            w2.push_back({xb, xk});
            w2.insert(w2.end(), word.begin(), word.end());
            Bideg w2b = BarWords<K>::word_bidegree(w2);
            int wpos = out.bar.pos(w2b, w2);
            if (wpos < 0) continue;
            if (!S.product_in_cap(xb, e.s.b)) continue;  // target not stored
            K sgn(1);
            if (signs == CochainSigns::koszul)
              sgn = (detail::par(fdeg * (xb.deg + 1)) == 0) ? K(1) : K(-1);
            for (const auto& [ps, v] : S.product({xb, xk}, e.s)) {
              int p = out.pos(tb, w2b, wpos, ps);
              if (p >= 0) m.add(p, static_cast<int>(col), sgn * v);
            }
          }
        }
        // (b) merges: w' of length k+1 merging at position i gives word
        for (const auto& [w2b, w2s] : out.bar.words) {
          if (w2b.wt != e.wb.wt) continue;
          for (int w2i = 0; w2i < static_cast<int>(w2s.size()); ++w2i) {
            const auto& w2 = w2s[w2i];
            if (static_cast<int>(w2.size()) != k + 1) continue;
            long eprefix = 0;
            for (int i = 0; i + 1 <= k; ++i) {
              // merge letters i, i+1 of w2; compare with word
              bool match = true;
              for (int j = 0; j < i && match; ++j)
                if (!(w2[j] == word[j])) match = false;
              for (int j = i + 1; j < k && match; ++j)
                if (!(w2[j + 1] == word[j])) match = false;
              if (match) {
                for (const auto& [ml, v] : S.product(w2[i], w2[i + 1])) {
                  if (!(ml == word[i])) continue;
                  K sgn;
                  if (signs == CochainSigns::classic) {
                    sgn = (i % 2 == 0) ? K(-1) : K(1);  // (-1)^{i+1}, 0-based
                  } else {
                    // -(-1)^{|f|} (-1)^{eprefix + |x_i|}
                    long ex = fdeg + eprefix + w2[i].b.deg;
                    sgn = (detail::par(ex) == 0) ? K(-1) : K(1);
                  }
                  int p = out.pos(tb, w2b, w2i, e.s);
                  if (p >= 0) m.add(p, static_cast<int>(col), sgn * v);
                }
              }
              eprefix += w2[i].b.deg + 1;
            }
          }
        }
        // (c) last-letter action: w' = [word | x], value s . x
        for (const auto& [xb, labels] : S.fam->support()) {
          if (xb == Bideg{0, 0} || S.dim(xb) == 0) continue;
          for (int xk = 0; xk < S.dim(xb); ++xk) {
            auto w2 = word;
            w2.push_back({xb, xk});
            Bideg w2b = BarWords<K>::word_bidegree(w2);
            int wpos = out.bar.pos(w2b, w2);
            if (wpos < 0) continue;
            if (!S.product_in_cap(e.s.b, xb)) continue;  // target not stored
            K sgn;
            if (signs == CochainSigns::classic) {
              sgn = (k % 2 == 0) ? K(-1) : K(1);  // (-1)^{k+1}
            } else {
              // -(-1)^{|f|} (-1)^{sum of shifted letter degrees of word}
              long ew = 0;
              for (const auto& l : word) ew += l.b.deg + 1;
              sgn = (detail::par(fdeg + ew) == 0) ? K(-1) : K(1);
            }
            for (const auto& [ps, v] : S.product(e.s, {xb, xk})) {
              int p = out.pos(tb, w2b, wpos, ps);
              if (p >= 0) m.add(p, static_cast<int>(col), sgn * v);
            }
          }
        }
      }
    out.delta.set(at, std::move(m));
  }
  auto sq = check_square_zero(out.delta);
  if (!sq.ok)
    throw consistency_error("cochain coboundary fails delta^2 = 0 at " +
                            to_string(sq.failure) + " for " + S.name);
  return out;
}

// Cup product of two cochain coordinate vectors: split the target word,
// evaluate, multiply.  Classic: (f u g)(w) = (-1)^{nm} f(front) g(back);
// koszul: convolution signs.
template <class K>
std::vector<K> cochain_cup(const CochainModel<K>& M, Bideg b1,
                           const std::vector<K>& v1, Bideg b2,
                           const std::vector<K>& v2) {
  const Bideg tb = b1 + b2;
  auto itt = M.basis.find(tb);
  std::vector<K> out(itt == M.basis.end() ? 0 : itt->second.size(), K(0));
  if (out.empty()) return out;
  // collect the nonzero values of f and g by word
  struct Val {
    Bideg wb;
    int w;
    typename GradedAlgebra<K>::Elem s;
    K c;
  };
  auto collect = [&](Bideg b, const std::vector<K>& v) {
    std::vector<Val> vals;
    auto it = M.basis.find(b);
    if (it == M.basis.end()) return vals;
    for (std::size_t i = 0; i < it->second.size(); ++i)
      if (!is_zero(v[i]))
        vals.push_back({it->second[i].wb, it->second[i].w, it->second[i].s,
                        v[i]});
    return vals;
  };
  auto fv = collect(b1, v1);
  auto gv = collect(b2, v2);
  for (const auto& F : fv)
    for (const auto& G : gv) {
      const auto& wf = M.bar.words.at(F.wb)[F.w];
      const auto& wg = M.bar.words.at(G.wb)[G.w];
      // target word = wf . wg
      auto w = wf;
      w.insert(w.end(), wg.begin(), wg.end());
      Bideg wb = BarWords<K>::word_bidegree(w);
      int wpos = M.bar.pos(wb, w);
      if (wpos < 0) continue;  // outside the stored window
      if (!M.S->product_in_cap(F.s.b, G.s.b)) continue;
      K sgn;
      if (M.signs == CochainSigns::classic) {
        long nm = static_cast<long>(wf.size()) * static_cast<long>(wg.size());
        sgn = (detail::par(nm) == 0) ? K(1) : K(-1);
      } else {
        // Koszul convolution: g (degree |g|) passes the front word
        long front = 0;
        for (const auto& l : wf) front += l.b.deg + 1;
        sgn = (detail::par(b2.deg * front) == 0) ? K(1) : K(-1);
      }
      for (const auto& [ps, v] : M.S->product(F.s, G.s)) {
        int p = M.pos(tb, wb, wpos, ps);
        if (p >= 0) out[p] += sgn * F.c * G.c * v;
      }
    }
  return out;
}

// Gerstenhaber circle product and bracket (classic signs; degree-zero
// algebras only).  f o g splices g's value into each slot of f.
template <class K>
std::vector<K> cochain_circle(const CochainModel<K>& M, Bideg b1,
                              const std::vector<K>& v1, Bideg b2,
                              const std::vector<K>& v2) {
  if (M.signs != CochainSigns::classic)
    throw consistency_error("circle product implemented for classic signs");
  const Bideg tb = b1 + b2 + Bideg{1, 0};
  auto itt = M.basis.find(tb);
  std::vector<K> out(itt == M.basis.end() ? 0 : itt->second.size(), K(0));
  if (out.empty()) return out;
  auto it1 = M.basis.find(b1);
  auto it2 = M.basis.find(b2);
  if (it1 == M.basis.end() || it2 == M.basis.end()) return out;
  for (std::size_t i1 = 0; i1 < it1->second.size(); ++i1) {
    if (is_zero(v1[i1])) continue;
    const auto& F = it1->second[i1];
    const auto& wf = M.bar.words.at(F.wb)[F.w];
    const int n = static_cast<int>(wf.size());
    for (std::size_t i2 = 0; i2 < it2->second.size(); ++i2) {
      if (is_zero(v2[i2])) continue;
      const auto& G = it2->second[i2];
      const auto& wg = M.bar.words.at(G.wb)[G.w];
      const int mlen = static_cast<int>(wg.size());
      // if g's output is a multiple of the unit the splice dies in the
      // normalized model
      if (G.s.b == Bideg{0, 0}) continue;
      for (int slot = 1; slot <= n; ++slot) {
        // target word: wf with letter (slot-1) replaced by wg, provided
        // the letter matches g's output
        if (!(wf[slot - 1] == G.s)) continue;
        auto w = wf;
        w.erase(w.begin() + (slot - 1));
        w.insert(w.begin() + (slot - 1), wg.begin(), wg.end());
        Bideg wb = BarWords<K>::word_bidegree(w);
        int wpos = M.bar.pos(wb, w);
        if (wpos < 0) continue;
        long ex = static_cast<long>(mlen - 1) * (slot - 1);
        K sgn = (detail::par(ex) == 0) ? K(1) : K(-1);
        int p = M.pos(tb, wb, wpos, F.s);
        if (p >= 0) out[p] += sgn * v1[i1] * v2[i2];
      }
    }
  }
  return out;
}

template <class K>
std::vector<K> cochain_bracket(const CochainModel<K>& M, Bideg b1,
                               const std::vector<K>& v1, Bideg b2,
                               const std::vector<K>& v2) {
  auto fg = cochain_circle(M, b1, v1, b2, v2);
  auto gf = cochain_circle(M, b2, v2, b1, v1);
  // {f,g} = f o g - (-1)^{(n-1)(m-1)} g o f with n, m the word lengths,
  // i.e. the negated complete degrees here
  long n = -b1.deg, mm = -b2.deg;
  K sgn = (detail::par((n - 1) * (mm - 1)) == 0) ? K(-1) : K(1);
  std::vector<K> out(fg.size(), K(0));
  for (std::size_t i = 0; i < fg.size(); ++i) out[i] = fg[i] + sgn * gf[i];
  return out;
}

}  // namespace koszul
