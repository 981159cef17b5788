#pragma once

#include "koszul/graded_algebra.hpp"
#include "koszul/homology.hpp"

namespace koszul {

// ---------------------------------------------------------------------------
// Bar words over a graded algebra.  A letter is a basis element of the
// augmentation ideal; the word [a_1|...|a_k] sits in bidegree
// sum_i (deg a_i + 1, wt a_i).  Support is capped by |total weight| and
// optionally by length.

template <class K>
struct BarWords {
  const GradedAlgebra<K>* S = nullptr;
  int weight_cap = 0;
  int length_cap = 0;  // 0 = unbounded
  using Letter = typename GradedAlgebra<K>::Elem;
  using Word = std::vector<Letter>;
  std::map<Bideg, std::vector<Word>> words;
  std::map<Bideg, std::map<std::vector<int>, int>> index;

  static std::vector<int> key_of(const Word& w) {
    std::vector<int> key;
    for (const auto& l : w) {
      key.push_back(l.b.deg);
      key.push_back(l.b.wt);
      key.push_back(l.k);
    }
    return key;
  }

  int pos(Bideg b, const Word& w) const {
    auto itb = index.find(b);
    if (itb == index.end()) return -1;
    auto it = itb->second.find(key_of(w));
    return it == itb->second.end() ? -1 : it->second;
  }

  static Bideg word_bidegree(const Word& w) {
    Bideg b{0, 0};
    for (const auto& l : w) b = b + l.b + Bideg{1, 0};
    return b;
  }
};

template <class K>
BarWords<K> bar_words(const GradedAlgebra<K>& S, int weight_cap,
                      int length_cap = 0) {
  BarWords<K> out;
  out.S = &S;
  out.weight_cap = weight_cap;
  out.length_cap = length_cap;
  using Word = typename BarWords<K>::Word;
  std::vector<Word> frontier{{}};
  out.words[{0, 0}].push_back({});
  out.index[{0, 0}][{}] = 0;
  // letters: all basis elements off the unit line
  std::vector<typename GradedAlgebra<K>::Elem> letters;
  for (const auto& [b, labels] : S.fam->support()) {
    if (b == Bideg{0, 0}) continue;
    for (int k = 0; k < S.dim(b); ++k) letters.push_back({b, k});
  }
  // grow words letter by letter (append at the end)
  std::size_t begin = 0;
  std::vector<Word> all{{}};
  while (begin < all.size()) {
    std::size_t end = all.size();
    for (std::size_t i = begin; i < end; ++i) {
      if (length_cap && static_cast<int>(all[i].size()) >= length_cap)
        continue;
      for (const auto& l : letters) {
        Word w = all[i];
        w.push_back(l);
        Bideg b = BarWords<K>::word_bidegree(w);
        if (std::abs(b.wt) > weight_cap) continue;
        auto& vec = out.words[b];
        out.index[b][BarWords<K>::key_of(w)] = static_cast<int>(vec.size());
        vec.push_back(w);
        all.push_back(std::move(w));
      }
    }
    begin = end;
  }
  return out;
}

// ---------------------------------------------------------------------------
// Normalized Hochschild chains of a graded (DG) algebra: S (x) Bar(S).
// Differential and Connes operator follow the Koszul-sign conventions
// pinned by the square-zero and mixed-complex assertions run at build:
//
//   b(a0[a1|..|ak]) = d(a0)[a1|..|ak]
//                   - (-1)^{|a0|} a0 (x) d_bar[a1|..|ak]
//                   + (-1)^{|a0|} (a0 a1)[a2|..|ak]
//                   - (-1)^{e_k (|a0| + e_1 + .. + e_{k-1})} (a_k a0)[a1|..|a_{k-1}]
//
// with e_i = |a_i| + 1, and d_bar merging neighbours with sign
// (-1)^{e_1+..+e_{i-1}+|a_i|} and differentiating letters with sign
// -(-1)^{e_1+..+e_{i-1}}.  For an algebra concentrated in degree zero this
// is the classical alternating-sum differential.
//
//   B(a0[a1|..|ak]) = sum_i (-1)^{P_i S_i} 1 [a_i|..|a_k|abar_0|a_1|..|a_{i-1}]
//
// with P_i, S_i the shifted degrees of the rotated blocks (a0 counted with
// its shift); for degree-zero algebras the sign is (-1)^{ik}.

template <class K>
struct HochschildChains {
  const GradedAlgebra<K>* S = nullptr;
  int weight_cap = 0;
  BarWords<K> bar;
  using Letter = typename GradedAlgebra<K>::Elem;
  using Word = typename BarWords<K>::Word;
  struct Basis {
    Letter a0;  // any basis element, including the unit
    Word w;
  };
  std::unique_ptr<BigradedFamily> fam = std::make_unique<BigradedFamily>();
  std::map<Bideg, std::vector<Basis>> basis;
  std::map<Bideg, std::map<std::vector<int>, int>> index;
  ChainMap<K> b;  // shift (-1, 0)
  ChainMap<K> B;  // shift (+1, 0)

  static std::vector<int> key_of(const Letter& a0, const Word& w) {
    std::vector<int> key{a0.b.deg, a0.b.wt, a0.k};
    auto wk = BarWords<K>::key_of(w);
    key.insert(key.end(), wk.begin(), wk.end());
    return key;
  }

  int pos(Bideg b_, const Letter& a0, const Word& w) const {
    auto itb = index.find(b_);
    if (itb == index.end()) return -1;
    auto it = itb->second.find(key_of(a0, w));
    return it == itb->second.end() ? -1 : it->second;
  }
};

namespace detail {

inline int par(long x) { return static_cast<int>(((x % 2) + 2) % 2); }

}  // namespace detail

template <class K>
HochschildChains<K> hochschild_chains(const GradedAlgebra<K>& S,
                                      int weight_cap, bool with_B = true,
                                      bool assert_identities = true) {
  HochschildChains<K> out;
  out.S = &S;
  out.weight_cap = weight_cap;
  out.bar = bar_words(S, weight_cap);
  using Letter = typename GradedAlgebra<K>::Elem;
  using Word = typename BarWords<K>::Word;
  // basis: a0 (x) word within the weight cap
  for (const auto& [ba, labels] : S.fam->support())
    for (int k = 0; k < S.dim(ba); ++k)
      for (const auto& [bw, ws] : out.bar.words) {
        Bideg tb = ba + bw;
        if (std::abs(tb.wt) > weight_cap) continue;
        for (const auto& w : ws) {
          auto& vec = out.basis[tb];
          out.index[tb][HochschildChains<K>::key_of({ba, k}, w)] =
              static_cast<int>(vec.size());
          vec.push_back({{ba, k}, w});
        }
      }
  for (const auto& [b, vec] : out.basis) {
    std::vector<std::string> labels;
    for (const auto& e : vec) {
      std::string s = S.label(e.a0) + "[";
      for (std::size_t i = 0; i < e.w.size(); ++i) {
        if (i) s += "|";
        s += S.label(e.w[i]);
      }
      s += "]";
      labels.push_back(s);
    }
    out.fam->set_basis(b, labels);
  }
  out.b = ChainMap<K>(out.fam.get(), out.fam.get(), {-1, 0});
  out.B = ChainMap<K>(out.fam.get(), out.fam.get(), {1, 0});
  // assemble b
  for (const auto& [bd, vec] : out.basis) {
    const Bideg tb = bd + Bideg{-1, 0};
    auto itt = out.basis.find(tb);
    const int rows = itt == out.basis.end()
                         ? 0
                         : static_cast<int>(itt->second.size());
    SparseMat<K> m(rows, static_cast<int>(vec.size()));
    if (rows > 0)
      for (std::size_t col = 0; col < vec.size(); ++col) {
        const auto& e = vec[col];
        const int k = static_cast<int>(e.w.size());
        const int dega0 = e.a0.b.deg;
        auto add_term = [&](const Letter& a0, const Word& w, const K& c) {
          int p = out.pos(tb, a0, w);
          if (p < 0)
            throw consistency_error("chain term left the stored window");
          m.add(p, static_cast<int>(col), c);
        };
        // d(a0)
        for (const auto& [da, v] : S.differential(e.a0))
          add_term(da, e.w, v);
        // letter differentials and merges: -(-1)^{|a0|} a0 (x) d_bar
        long eprefix = 0;  // e_1 + ... + e_{i-1}
        for (int i = 0; i < k; ++i) {
          const auto& li = e.w[i];
          K outer = (detail::par(dega0) == 0) ? K(-1) : K(1);
          // letter differential: combined sign -(-1)^{|a0| + eprefix}
          for (const auto& [dl, v] : S.differential(li)) {
            K s = (detail::par(eprefix) == 0) ? K(1) : K(-1);
            Word w = e.w;
            w[i] = dl;
            add_term(e.a0, w, outer * s * v);
          }
          // merge with the next letter: (-1)^{eprefix + |a_i|}
          if (i + 1 < k) {
            for (const auto& [ml, v] : S.product(li, e.w[i + 1])) {
              if (ml.b == Bideg{0, 0}) continue;  // normalized: unit letters die
              K s = (detail::par(eprefix + li.b.deg) == 0) ? K(1) : K(-1);
              Word w = e.w;
              w[i] = ml;
              w.erase(w.begin() + i + 1);
              add_term(e.a0, w, outer * s * v);
            }
          }
          eprefix += li.b.deg + 1;
        }
        if (k > 0) {
          // left action: (-1)^{|a0|} (a0 a1)
          {
            K s = (detail::par(dega0) == 0) ? K(1) : K(-1);
            for (const auto& [pa, v] : S.product(e.a0, e.w[0])) {
              Word w(e.w.begin() + 1, e.w.end());
              add_term(pa, w, s * v);
            }
          }
          // wrap-around right action:
          // -(-1)^{e_k (|a0| + e_1 + ... + e_{k-1})} (a_k a0)
          {
            long ek = e.w[k - 1].b.deg + 1;
            long inner = dega0 + (eprefix - ek);
            K s = (detail::par(ek * inner) == 0) ? K(-1) : K(1);
            for (const auto& [pa, v] : S.product(e.w[k - 1], e.a0)) {
              Word w(e.w.begin(), e.w.end() - 1);
              add_term(pa, w, s * v);
            }
          }
        }
      }
    out.b.set(bd, std::move(m));
  }
  // assemble B
  if (with_B)
    for (const auto& [bd, vec] : out.basis) {
      const Bideg tb = bd + Bideg{1, 0};
      auto itt = out.basis.find(tb);
      const int rows = itt == out.basis.end()
                           ? 0
                           : static_cast<int>(itt->second.size());
      SparseMat<K> m(rows, static_cast<int>(vec.size()));
      if (rows > 0)
        for (std::size_t col = 0; col < vec.size(); ++col) {
          const auto& e = vec[col];
          if (e.a0.b == Bideg{0, 0}) continue;  // normalized: B kills the unit
          const int k = static_cast<int>(e.w.size());
          // rotate: suffix block (a_i..a_k) to the front, a0 becomes a letter
          for (int i = 0; i <= k; ++i) {
            long P = e.a0.b.deg + 1;
            for (int j = 0; j < i; ++j) P += e.w[j].b.deg + 1;
            long Ssum = 0;
            for (int j = i; j < k; ++j) Ssum += e.w[j].b.deg + 1;
            K s = (detail::par(P * Ssum) == 0) ? K(1) : K(-1);
            // modified: P counts (a0, a_1..a_{i-1}) block; rotation moves
            // the suffix past it
            Word w;
            for (int j = i; j < k; ++j) w.push_back(e.w[j]);
            w.push_back(e.a0);
            for (int j = 0; j < i; ++j) w.push_back(e.w[j]);
            int p = out.pos(tb, S.unit(), w);
            if (p < 0)
              throw consistency_error("Connes term left the stored window");
            m.add(p, static_cast<int>(col), s);
          }
        }
      out.B.set(bd, std::move(m));
    }
  if (assert_identities) {
    auto sq = check_square_zero(out.b);
    if (!sq.ok)
      throw consistency_error("Hochschild b fails b^2 = 0 at " +
                              to_string(sq.failure) + " for " + S.name);
    if (with_B) {
      for (const auto& [bd, vec] : out.basis) {
        auto BB = out.B.at(bd + Bideg{1, 0}) * out.B.at(bd);
        if (!BB.is_zero_matrix())
          throw consistency_error("Connes operator fails B^2 = 0 at " +
                                  to_string(bd));
        auto anti = out.b.at(bd + Bideg{1, 0}) * out.B.at(bd) +
                    out.B.at(bd + Bideg{-1, 0}) * out.b.at(bd);
        if (!anti.is_zero_matrix())
          throw consistency_error("mixed identity bB + Bb = 0 fails at " +
                                  to_string(bd) + " for " + S.name);
      }
    }
  }
  return out;
}

}  // namespace koszul
