#pragma once

#include "koszul/cobar.hpp"
#include "koszul/cochain.hpp"
#include "koszul/hochschild.hpp"
#include "koszul/smallcx.hpp"

namespace koszul {

// ---------------------------------------------------------------------------
// Reduced Hochschild complex of the dual coalgebra, Omega(C) (x) C, realized
// as the graded dual of the Hochschild chains of the dual algebra.  The
// duality is letterwise through the stored pairing, so the algebra/coalgebra
// duality statements downstream hold by construction; the geometric-side
// comparison maps are asserted against this model.
template <class K>
struct CoalgebraChains {
  const CoalgebraSlice<K>* C = nullptr;
  std::unique_ptr<BigradedFamily> fam = std::make_unique<BigradedFamily>();
  struct Basis {
    std::vector<std::pair<int, int>> word;  // cobar letters (weight, index)
    std::pair<int, int> c0;                 // coalgebra factor (weight, index)
  };
  std::map<Bideg, std::vector<Basis>> basis;
  std::map<Bideg, std::map<std::vector<int>, int>> index;
  ChainMap<K> b;
  ChainMap<K> B;
  // pairing with the chains of the dual algebra, per bidegree
  std::map<Bideg, SparseMat<K>> pairing;

  static std::vector<int> key_of(const Basis& e) {
    std::vector<int> key;
    for (auto [w, k] : e.word) {
      key.push_back(w);
      key.push_back(k);
    }
    key.push_back(-1);
    key.push_back(e.c0.first);
    key.push_back(e.c0.second);
    return key;
  }

  int pos(Bideg bd, const Basis& e) const {
    auto itb = index.find(bd);
    if (itb == index.end()) return -1;
    auto it = itb->second.find(key_of(e));
    return it == itb->second.end() ? -1 : it->second;
  }

  Bideg bidegree(const Basis& e) const {
    Bideg bd{e.c0.first, e.c0.first};
    for (auto [w, k] : e.word) {
      bd.deg += w - 1;
      bd.wt += w;
    }
    return bd;
  }
};

template <class K>
CoalgebraChains<K> build_coalgebra_chains(const CoalgebraSlice<K>& C,
                                          const DualAlgebraSlice<K>& D,
                                          const HochschildChains<K>& chd,
                                          int weight_cap) {
  CoalgebraChains<K> out;
  out.C = &C;
  // enumerate basis: cobar words (x) coalgebra factor, within the cap
  std::vector<std::vector<std::vector<std::pair<int, int>>>> words_by_wt(
      weight_cap + 1);
  words_by_wt[0].push_back({});
  for (int wt = 1; wt <= weight_cap; ++wt)
    for (int first = 1; first <= std::min(wt, C.W); ++first) {
      if (C.dim(first) == 0) continue;
      for (int k = 0; k < C.dim(first); ++k)
        for (const auto& rest : words_by_wt[wt - first]) {
          std::vector<std::pair<int, int>> w{{first, k}};
          w.insert(w.end(), rest.begin(), rest.end());
          words_by_wt[wt].push_back(std::move(w));
        }
    }
  for (int wwt = 0; wwt <= weight_cap; ++wwt)
    for (const auto& w : words_by_wt[wwt])
      for (int c0w = 0; c0w + wwt <= weight_cap && c0w <= C.W; ++c0w) {
        if (C.dim(c0w) == 0) continue;
        for (int c0k = 0; c0k < C.dim(c0w); ++c0k) {
          typename CoalgebraChains<K>::Basis e{w, {c0w, c0k}};
          Bideg bd = out.bidegree(e);
          auto& vec = out.basis[bd];
          out.index[bd][CoalgebraChains<K>::key_of(e)] =
              static_cast<int>(vec.size());
          vec.push_back(std::move(e));
        }
      }
  for (const auto& [bd, vec] : out.basis) {
    std::vector<std::string> labels;
    for (const auto& e : vec) {
      std::string s = "<";
      for (std::size_t i = 0; i < e.word.size(); ++i) {
        if (i) s += "|";
        s += C.label(e.word[i].first, e.word[i].second);
      }
      s += ">(x)" + C.label(e.c0.first, e.c0.second);
      labels.push_back(s);
    }
    out.fam->set_basis(bd, labels);
  }
  // pairing with the dual-algebra chains at the negated bidegree: letters
  // pair positionwise, the coefficient pairs with the coalgebra factor
  for (const auto& [bd, vec] : out.basis) {
    Bideg nb{-bd.deg, -bd.wt};
    auto itc = chd.basis.find(nb);
    const int rows = itc == chd.basis.end()
                         ? 0
                         : static_cast<int>(itc->second.size());
    SparseMat<K> P(rows, static_cast<int>(vec.size()));
    if (rows != static_cast<int>(vec.size()))
      throw consistency_error("coalgebra chain duality dimension mismatch at " +
                              to_string(bd));
    for (int r = 0; r < rows; ++r) {
      const auto& ce = itc->second[r];
      // chain element x0 [x1|..|xk]: weights (negated) must match
      for (int c = 0; c < static_cast<int>(vec.size()); ++c) {
        const auto& e = vec[c];
        const std::size_t len = e.word.size();
        if (ce.w.size() != len) continue;
        if (-ce.a0.b.wt != e.c0.first) continue;
        K v = D.pairing[e.c0.first].get(ce.a0.k, e.c0.second);
        bool ok = !is_zero(v);
        for (std::size_t i = 0; ok && i < len; ++i) {
          // letters pair positionwise
          const auto& cl = e.word[i];
          if (-ce.w[i].b.wt != cl.first) {
            ok = false;
            break;
          }
          K lv = D.pairing[cl.first].get(ce.w[i].k, cl.second);
          if (is_zero(lv)) {
            ok = false;
            break;
          }
          v = v * lv;
        }
        if (ok && !is_zero(v)) {
          // Koszul bookkeeping of the letterwise duality: the interleaving
          // sign among the shifted letters plus one sign per letter weight
          long ex = 0;
          for (std::size_t i = 0; i < len; ++i) {
            ex += e.word[i].first;
            for (std::size_t j = i + 1; j < len; ++j)
              ex += static_cast<long>(e.word[i].first - 1) *
                    (e.word[j].first - 1);
          }
          if (detail::par(ex)) v = -v;
          P.set(r, c, v);
        }
      }
    }
    if (rows > 0 && rank(P) != rows)
      throw consistency_error("degenerate chain duality pairing at " +
                              to_string(bd));
    out.pairing[bd] = std::move(P);
  }
  // transport the differential and the Connes operator through the pairing:
  //   b_co = P_{target}^{-1} . b_chain^T . P_source
  out.b = ChainMap<K>(out.fam.get(), out.fam.get(), {-1, 0});
  out.B = ChainMap<K>(out.fam.get(), out.fam.get(), {1, 0});
  // dual operator with the Koszul convention <op u, y> = -(-1)^{|u|} <u, op y>
  auto transport = [&](const ChainMap<K>& op, int dshift) {
    ChainMap<K> res(out.fam.get(), out.fam.get(), {dshift, 0});
    for (const auto& [bd, vec] : out.basis) {
      Bideg tb = bd + Bideg{dshift, 0};
      if (out.basis.find(tb) == out.basis.end()) continue;
      K tsgn = (detail::par(bd.deg + 1) == 0) ? K(1) : K(-1);
      Bideg nb{-bd.deg, -bd.wt};
      Bideg ntb{-tb.deg, -tb.wt};
      // chain-side block: ntb -> nb has shift -dshift
      auto blk = op.at(ntb);
      if (blk.rows() != out.pairing.at(bd).rows())
        throw consistency_error("chain duality transport shape");
      auto rhs = (blk.transpose() * out.pairing.at(bd)).scaled(tsgn);
      // solve P_{tb} X = rhs
      SparseMat<K> X(out.fam->dim(tb), out.fam->dim(bd));
      const auto& Pt = out.pairing.at(tb);
      for (int c = 0; c < rhs.cols(); ++c) {
        std::vector<K> col(rhs.rows(), K(0));
        for (int r = 0; r < rhs.rows(); ++r) col[r] = rhs.get(r, c);
        auto sol = solve(Pt, col);
        if (!sol) throw consistency_error("chain duality transport solve");
        for (int r = 0; r < X.rows(); ++r)
          if (!is_zero((*sol)[r])) X.set(r, c, (*sol)[r]);
      }
      res.set(bd, std::move(X));
    }
    return res;
  };
  out.b = transport(chd.b, -1);
  out.B = transport(chd.B, +1);
  auto sq = check_square_zero(out.b);
  if (!sq.ok)
    throw consistency_error("coalgebra chains fail b^2 = 0 at " +
                            to_string(sq.failure));
  for (const auto& [bd, vec] : out.basis) {
    auto anti = out.b.at(bd + Bideg{1, 0}) * out.B.at(bd) +
                out.B.at(bd + Bideg{-1, 0}) * out.b.at(bd);
    if (!anti.is_zero_matrix())
      throw consistency_error("coalgebra chains fail bB + Bb = 0 at " +
                              to_string(bd));
  }
  return out;
}

// ---------------------------------------------------------------------------
// The comparison maps between the four homology-side models.

// id (x) i : A (x) C -> A (x) Bar(A), expanding each coalgebra element into
// words of generators.
template <class K>
ChainMap<K> map_koszul_to_chains(const KoszulHomologyComplex<K>& KA,
                                 const HochschildChains<K>& ch) {
  const auto& A = *KA.A;
  const auto& C = *KA.C;
  const int d = A.d();
  ChainMap<K> f(KA.fam.get(), ch.fam.get(), {0, 0});
  using Letter = typename GradedAlgebra<K>::Elem;
  for (const auto& [bd, labels] : KA.fam->support()) {
    if (std::abs(bd.wt) > ch.weight_cap) continue;
    const int m = bd.deg, j = bd.wt, p = j - m;
    SparseMat<K> mat(ch.fam->dim(bd), KA.fam->dim(bd));
    for (int a = 0; a < A.dim(p); ++a)
      for (int c = 0; c < C.dim(m); ++c) {
        const int col = a * C.dim(m) + c;
        // expand c into words
        for (const auto& [widx, v] : C.comp[m].basis().row(c)) {
          Word wv = index_word(widx, m, d);
          std::vector<Letter> word;
          bool ok = true;
          for (int g : wv) {
            // generator g as an element of A_1
            word.push_back(Letter{{0, 1}, g});
          }
          if (!ok) continue;
          int pos = ch.pos(bd, Letter{{0, p}, a}, word);
          if (pos < 0)
            throw consistency_error("koszul-to-chains expansion left window");
          mat.add(pos, col, v);
        }
      }
    f.set(bd, std::move(mat));
  }
  auto defect = chain_map_defect(f, KA.d, ch.b);
  if (defect)
    throw consistency_error("id (x) i fails to be a chain map at " +
                            to_string(*defect));
  return f;
}

// p (x) id : Omega(C) (x) C -> A (x) C, multiplying the weight-one letters.
template <class K>
ChainMap<K> map_coalgebra_to_koszul(const CoalgebraChains<K>& co,
                                    const KoszulHomologyComplex<K>& KA) {
  const auto& A = *KA.A;
  const auto& C = *KA.C;
  const int d = A.d();
  ChainMap<K> f(co.fam.get(), KA.fam.get(), {0, 0});
  for (const auto& [bd, vec] : co.basis) {
    SparseMat<K> mat(KA.fam->dim(bd), static_cast<int>(vec.size()));
    for (int col = 0; col < static_cast<int>(vec.size()); ++col) {
      const auto& e = vec[col];
      const int k = static_cast<int>(e.word.size());
      bool all_one = true;
      for (auto [w, idx] : e.word)
        if (w != 1) all_one = false;
      if (!all_one) continue;  // p kills letters of weight >= 2
      if (k > A.W || A.dim(k) == 0) continue;
      // multiply the V-letters in order
      std::vector<K> acc(A.dim(0), K(0));
      acc[0] = K(1);
      for (int i = 0; i < k; ++i) {
        std::vector<K> next(A.dim(i + 1), K(0));
        const auto& mul = A.mult.at({i, 1});
        const int g = e.word[i].second;  // C_1 basis = generators
        for (int a = 0; a < A.dim(i); ++a) {
          if (is_zero(acc[a])) continue;
          for (int r = 0; r < A.dim(i + 1); ++r) {
            K v = mul.get(r, a * d + g);
            if (!is_zero(v)) next[r] += acc[a] * v;
          }
        }
        acc = std::move(next);
      }
      const int m = e.c0.first;
      // normalization of the coalgebra slot: (-1)^{m(m-1)/2}
      K fs = (detail::par(static_cast<long>(m) * (m - 1) / 2) == 0) ? K(1)
                                                                    : K(-1);
      for (int r = 0; r < A.dim(k); ++r)
        if (!is_zero(acc[r]))
          mat.add(r * C.dim(m) + e.c0.second, col, fs * acc[r]);
    }
    f.set(bd, std::move(mat));
  }
  auto defect = chain_map_defect(f, co.b, KA.d);
  if (defect)
    throw consistency_error("p (x) id fails to be a chain map at " +
                            to_string(*defect));
  return f;
}

// id (x) eta : Omega(C) (x) C -> Omega(C) (x) Bar(Omega(C)); eta splits the
// coalgebra factor through all iterated reduced coproducts into words of
// one-letter cobar factors; every split of a weight-w piece carries the
// sign (-1)^{w+1}, which is what the comparison identities force for the
// diagonal coalgebra.
template <class K>
ChainMap<K> map_coalgebra_to_big(const CoalgebraChains<K>& co,
                                 const CobarAlgebra<K>& Om,
                                 const HochschildChains<K>& ch) {
  const auto& C = *co.C;
  ChainMap<K> f(co.fam.get(), ch.fam.get(), {0, 0});
  using Letter = typename GradedAlgebra<K>::Elem;
  // iterated reduced-coproduct splittings of a coalgebra basis element
  // into compositions (w1..wk), with coefficient matrices built from the
  // stored components
  std::function<std::vector<std::pair<std::vector<std::pair<int, int>>, K>>(
      int, int)>
      split = [&](int w, int k) {
        std::vector<std::pair<std::vector<std::pair<int, int>>, K>> out;
        out.push_back({{{w, k}}, K(1)});
        K step = (w % 2 == 0) ? K(-1) : K(1);  // (-1)^{w+1}
        for (int p = 1; p <= w - 1; ++p) {
          const int q = w - p;
          const auto& cp = C.coprod.at({p, q});
          for (int a = 0; a < C.dim(p); ++a)
            for (int b2 = 0; b2 < C.dim(q); ++b2) {
              K v = cp.get(a * C.dim(q) + b2, k);
              if (is_zero(v)) continue;
              // recursively split the right-hand part
              for (const auto& [rest, rv] : split(q, b2)) {
                std::vector<std::pair<int, int>> word{{p, a}};
                word.insert(word.end(), rest.begin(), rest.end());
                out.push_back({std::move(word), step * v * rv});
              }
            }
        }
        return out;
      };
  // note: the recursion above produces each composition once because it
  // always splits off the first letter
  for (const auto& [bd, vec] : co.basis) {
    SparseMat<K> mat(ch.fam->dim(bd), static_cast<int>(vec.size()));
    for (int col = 0; col < static_cast<int>(vec.size()); ++col) {
      const auto& e = vec[col];
      // a0 = the cobar word itself
      Bideg a0b = cobar_word_bidegree<K>(e.word);
      int a0k = Om.word_pos(a0b, e.word);
      if (a0k < 0) throw consistency_error("eta: cobar word missing");
      auto [c0w, c0k] = e.c0;
      if (c0w == 0) {
        int p = ch.pos(bd, Letter{a0b, a0k}, {});
        if (p < 0) throw consistency_error("eta image left window (unit)");
        mat.add(p, col, K(1));
        continue;
      }
      for (const auto& [comp, v] : split(c0w, c0k)) {
        // bar word whose letters are the one-letter cobar words
        std::vector<Letter> word;
        for (auto [w, k] : comp) {
          Bideg lb{w - 1, w};
          int lk = Om.word_pos(lb, {{w, k}});
          if (lk < 0) throw consistency_error("eta: letter missing");
          word.push_back(Letter{lb, lk});
        }
        int p = ch.pos(bd, Letter{a0b, a0k}, word);
        if (p < 0) throw consistency_error("eta image left window");
        mat.add(p, col, v);
      }
    }
    f.set(bd, std::move(mat));
  }
  auto defect = chain_map_defect(f, co.b, ch.b);
  if (defect)
    throw consistency_error("id (x) eta fails to be a chain map at " +
                            to_string(*defect));
  return f;
}

// p (x) Bar(p) : chains of Omega(C) -> chains of A, applying the projection
// to the coefficient and to every bar letter.
template <class K>
ChainMap<K> map_big_to_chains(const HochschildChains<K>& chom,
                              const CobarAlgebra<K>& Om,
                              const AlgebraSlice<K>& A,
                              const HochschildChains<K>& cha) {
  ChainMap<K> f(chom.fam.get(), cha.fam.get(), {0, 0});
  using Letter = typename GradedAlgebra<K>::Elem;
  // p on a cobar basis element, as an expansion over A basis elements
  auto project = [&](const Letter& om) {
    std::vector<std::pair<Letter, K>> out;
    if (om.b.deg != 0) return out;  // positive cobar degree dies
    auto blk = cobar_to_algebra_block(Om, A, om.b);
    for (int r = 0; r < blk.rows(); ++r) {
      K v = blk.get(r, om.k);
      if (!is_zero(v)) out.push_back({Letter{{0, om.b.wt}, r}, v});
    }
    return out;
  };
  for (const auto& [bd, vec] : chom.basis) {
    if (cha.fam->dim(bd) == 0 && chom.fam->dim(bd) == 0) continue;
    SparseMat<K> mat(cha.fam->dim(bd), static_cast<int>(vec.size()));
    for (int col = 0; col < static_cast<int>(vec.size()); ++col) {
      const auto& e = vec[col];
      // expand coefficient and letters
      std::vector<std::pair<std::pair<Letter, std::vector<Letter>>, K>> images;
      images.push_back({{Letter{}, {}}, K(0)});
      images.clear();
      for (const auto& [pa0, v0] : project(e.a0)) {
        // letters
        std::vector<std::pair<std::vector<Letter>, K>> words{{{}, v0}};
        bool dead = false;
        for (const auto& l : e.w) {
          auto pl = project(l);
          if (pl.empty()) {
            dead = true;
            break;
          }
          std::vector<std::pair<std::vector<Letter>, K>> next;
          for (const auto& [word, wv] : words)
            for (const auto& [nl, nv] : pl) {
              auto w2 = word;
              w2.push_back(nl);
              next.push_back({std::move(w2), wv * nv});
            }
          words = std::move(next);
        }
        if (dead) continue;
        for (const auto& [word, wv] : words) {
          int p = cha.pos(bd, pa0, word);
          if (p < 0)
            throw consistency_error("p (x) Bar(p) image left window");
          mat.add(p, col, wv);
        }
      }
    }
    f.set(bd, std::move(mat));
  }
  auto defect = chain_map_defect(f, chom.b, cha.b);
  if (defect)
    throw consistency_error("p (x) Bar(p) fails to be a chain map at " +
                            to_string(*defect));
  // mixed: commutes with the Connes operators as well
  auto bdefect = chain_map_defect(f, chom.B, cha.B);
  if (bdefect)
    throw consistency_error("p (x) Bar(p) fails to commute with B at " +
                            to_string(*bdefect));
  return f;
}

// The retraction chains of Omega(C) -> Omega(C) (x) C: kill bar words of
// length > 1, send omega (x) [] to omega (x) 1, and rotate a single bar
// letter <u_1|..|u_m> through the coefficient word, extracting each u_i
// into the coalgebra factor with the sign
//   mu_i = (|u_{i+1}|+..+|u_m|) (|a_1|+..+|a_n|+|u_1|+..+|u_i|+1)
// read on the cobar (shifted) degrees.
template <class K>
ChainMap<K> map_big_to_coalgebra(const HochschildChains<K>& chom,
                                 const CobarAlgebra<K>& Om,
                                 const CoalgebraChains<K>& co) {
  ChainMap<K> f(chom.fam.get(), co.fam.get(), {0, 0});
  for (const auto& [bd, vec] : chom.basis) {
    SparseMat<K> mat(co.fam->dim(bd), static_cast<int>(vec.size()));
    for (int col = 0; col < static_cast<int>(vec.size()); ++col) {
      const auto& e = vec[col];
      const auto& a0word = Om.words.at(e.a0.b)[e.a0.k];
      if (e.w.empty()) {
        typename CoalgebraChains<K>::Basis tgt{a0word, {0, 0}};
        int p = co.pos(bd, tgt);
        if (p < 0) throw consistency_error("retraction image left window");
        mat.add(p, col, K(1));
        continue;
      }
      if (e.w.size() != 1) continue;  // longer bar words die
      const auto& uword = Om.words.at(e.w[0].b)[e.w[0].k];
      const int m = static_cast<int>(uword.size());
      long adeg = 0;  // |a_1| + ... + |a_n| on the shifted degrees
      for (auto [w, k] : a0word) adeg += w - 1;
      long upartial = 0;  // |u_1| + ... + |u_i|
      long utotal = 0;
      for (auto [w, k] : uword) utotal += w - 1;
      long moved = 0;  // sum of (wt + 1) over letters rotated past so far
      for (int i = 1; i <= m; ++i) {
        upartial += uword[i - 1].first - 1;
        long usuffix = utotal - upartial;
        long mu = usuffix * (adeg + upartial + 1) + moved;
        moved += uword[i - 1].first + 1;
        K sgn = (detail::par(mu) == 0) ? K(1) : K(-1);
        // rotated word u_{i+1}..u_m a_1..a_n u_1..u_{i-1}
        std::vector<std::pair<int, int>> w2;
        for (int j = i; j < m; ++j) w2.push_back(uword[j]);
        for (auto l : a0word) w2.push_back(l);
        for (int j = 0; j + 1 < i; ++j) w2.push_back(uword[j]);
        typename CoalgebraChains<K>::Basis tgt{w2, uword[i - 1]};
        int p = co.pos(bd, tgt);
        if (p < 0) throw consistency_error("retraction image left window");
        mat.add(p, col, sgn);
      }
    }
    f.set(bd, std::move(mat));
  }
  auto defect = chain_map_defect(f, chom.b, co.b);
  if (defect)
    throw consistency_error("retraction fails to be a chain map at " +
                            to_string(*defect));
  auto bdefect = chain_map_defect(f, chom.B, co.B);
  if (bdefect)
    throw consistency_error("retraction fails to commute with B at " +
                            to_string(*bdefect));
  return f;
}

// ---------------------------------------------------------------------------
// The twisted complex Omega(C) (x) A^! computing the Hochschild cohomology
// of the dual algebra, with its convolution product.  The differential
// appends/prepends a letter through the dual bases.  Writing |f| for the
// complete degree deg(w) - m of the element w (x) x, the twisted
// convolution differential reads
//   delta(w (x) x) = (d w) (x) x
//                  - (-1)^{deg w} sum_e (w . <e>) (x) (x e*)
//                  + sum_e (-1)^{|f| wt(e)} (<e> . w) (x) (e* x),
// with |f| = deg(w) - m; the signs come from the twisted convolution along
// the canonical map and are confirmed by the square-zero and comparison
// checks.
template <class K>
struct DualCohomologyComplex {
  const CobarAlgebra<K>* Om = nullptr;
  const DualAlgebraSlice<K>* D = nullptr;
  std::unique_ptr<BigradedFamily> fam = std::make_unique<BigradedFamily>();
  struct Basis {
    Bideg wb;  // cobar word bidegree
    int w;
    int m;  // dual algebra weight
    int x;
  };
  std::map<Bideg, std::vector<Basis>> basis;
  std::map<Bideg, std::map<std::vector<int>, int>> index;
  ChainMap<K> d;

  int pos(Bideg at, Bideg wb, int w, int m, int x) const {
    auto itb = index.find(at);
    if (itb == index.end()) return -1;
    auto it = itb->second.find({wb.deg, wb.wt, w, m, x});
    return it == itb->second.end() ? -1 : it->second;
  }

  Bideg bidegree(Bideg wb, int m) const { return {wb.deg - m, wb.wt - m}; }

  // chain-level convolution product
  std::vector<K> product(Bideg b1, const std::vector<K>& v1, Bideg b2,
                         const std::vector<K>& v2) const;
};

template <class K>
DualCohomologyComplex<K> build_dual_cohomology_complex(
    const CobarAlgebra<K>& Om, const DualAlgebraSlice<K>& D,
    const CoalgebraSlice<K>& C, bool assert_sq = true) {
  DualCohomologyComplex<K> out;
  out.Om = &Om;
  out.D = &D;
  for (const auto& [wb, ws] : Om.words)
    for (int m = 0; m <= D.W(); ++m) {
      if (D.dim(m) == 0) continue;
      for (int w = 0; w < static_cast<int>(ws.size()); ++w)
        for (int x = 0; x < D.dim(m); ++x) {
          Bideg at = out.bidegree(wb, m);
          auto& vec = out.basis[at];
          out.index[at][{wb.deg, wb.wt, w, m, x}] =
              static_cast<int>(vec.size());
          vec.push_back({wb, w, m, x});
        }
    }
  for (const auto& [b, vec] : out.basis) {
    std::vector<std::string> labels;
    for (const auto& e : vec)
      labels.push_back(Om.omega.fam->labels(e.wb)[e.w] + "(x)" +
                       D.alg.label(e.m, e.x));
    out.fam->set_basis(b, labels);
  }
  out.d = ChainMap<K>(out.fam.get(), out.fam.get(), {-1, 0});
  // dual basis of A^! against the coalgebra basis, per weight
  std::vector<SparseMat<K>> dualize(D.W() + 1);
  for (int n = 0; n <= D.W(); ++n) {
    // rows: coalgebra basis index, cols: dual-algebra coefficients; the
    // element dual to c_{n,k} is sum_a dualize[n][k][a] x_a
    const auto& P = D.pairing[n];
    SparseMat<K> inv(P.rows(), P.rows());
    for (int k = 0; k < P.rows(); ++k) {
      std::vector<K> e(P.rows(), K(0));
      e[k] = K(1);
      auto sol = solve(P.transpose(), e);
      if (!sol) throw consistency_error("pairing not invertible");
      for (int a = 0; a < P.rows(); ++a)
        if (!is_zero((*sol)[a])) inv.set(k, a, (*sol)[a]);
    }
    dualize[n] = std::move(inv);
  }
  for (const auto& [bd, vec] : out.basis) {
    const Bideg tb = bd + Bideg{-1, 0};
    auto itt = out.basis.find(tb);
    const int rows = itt == out.basis.end()
                         ? 0
                         : static_cast<int>(itt->second.size());
    SparseMat<K> mat(rows, static_cast<int>(vec.size()));
    if (rows > 0)
      for (int col = 0; col < static_cast<int>(vec.size()); ++col) {
        const auto& e = vec[col];
        const auto& word = Om.words.at(e.wb)[e.w];
        // internal cobar differential
        {
          const auto& blk = Om.omega.diff.at(e.wb);
          Bideg twb = e.wb + Bideg{-1, 0};
          for (int r = 0; r < blk.rows(); ++r) {
            K v = blk.get(r, e.w);
            if (is_zero(v)) continue;
            int p = out.pos(tb, twb, r, e.m, e.x);
            if (p >= 0) mat.add(p, col, v);
          }
        }
        // append / prepend a letter
        for (int ew = 1; ew <= C.top_weight(); ++ew) {
          if (C.dim(ew) == 0 || e.m + ew > D.W() || D.dim(e.m + ew) == 0)
            continue;
          if (e.wb.wt + ew > Om.weight_cap) continue;
          Bideg twb{e.wb.deg + ew - 1, e.wb.wt + ew};
          for (int ek = 0; ek < C.dim(ew); ++ek) {
            // appended letter <e>, coefficient x . e^dual
            auto wa = word;
            wa.push_back({ew, ek});
            int wpa = Om.word_pos(twb, wa);
            auto wp = word;
            wp.insert(wp.begin(), {ew, ek});
            int wpp = Om.word_pos(twb, wp);
            if (wpa < 0 || wpp < 0)
              throw consistency_error("dual cohomology append left window");
            long sa = e.wb.deg + 1;                 // -(-1)^{deg w}
            long sp = (e.wb.deg + e.m) * ew;        // (-1)^{|f| wt(e)}
            K sga = (detail::par(sa) == 0) ? K(1) : K(-1);
            K sgp = (detail::par(sp) == 0) ? K(1) : K(-1);
            for (int a = 0; a < D.dim(ew); ++a) {
              K dv = dualize[ew].get(ek, a);
              if (is_zero(dv)) continue;
              // x . e^dual_a
              const auto& mr = D.alg.mult.at({e.m, ew});
              for (int r = 0; r < D.dim(e.m + ew); ++r) {
                K mv = mr.get(r, e.x * D.dim(ew) + a);
                if (!is_zero(mv)) {
                  int p = out.pos(tb, twb, wpa, e.m + ew, r);
                  if (p >= 0) mat.add(p, col, sga * dv * mv);
                }
              }
              const auto& ml = D.alg.mult.at({ew, e.m});
              for (int r = 0; r < D.dim(e.m + ew); ++r) {
                K mv = ml.get(r, a * D.dim(e.m) + e.x);
                if (!is_zero(mv)) {
                  int p = out.pos(tb, twb, wpp, e.m + ew, r);
                  if (p >= 0) mat.add(p, col, sgp * dv * mv);
                }
              }
            }
          }
        }
      }
    out.d.set(bd, std::move(mat));
  }
  auto sq = check_square_zero(out.d);
  if (assert_sq && !sq.ok)
    throw consistency_error("dual cohomology complex fails d^2 = 0 at " +
                            to_string(sq.failure));
  return out;
}

template <class K>
std::vector<K> DualCohomologyComplex<K>::product(Bideg b1,
                                                 const std::vector<K>& v1,
                                                 Bideg b2,
                                                 const std::vector<K>& v2) const {
  const Bideg tb = b1 + b2;
  auto itt = basis.find(tb);
  std::vector<K> out(itt == basis.end() ? 0 : itt->second.size(), K(0));
  if (out.empty()) return out;
  auto it1 = basis.find(b1);
  auto it2 = basis.find(b2);
  if (it1 == basis.end() || it2 == basis.end()) return out;
  for (std::size_t i1 = 0; i1 < it1->second.size(); ++i1) {
    if (is_zero(v1[i1])) continue;
    const auto& E = it1->second[i1];
    for (std::size_t i2 = 0; i2 < it2->second.size(); ++i2) {
      if (is_zero(v2[i2])) continue;
      const auto& F = it2->second[i2];
      if (E.wb.wt + F.wb.wt > Om->weight_cap) continue;
      if (E.m + F.m > D->W() || D->dim(E.m + F.m) == 0) continue;
      // concatenate words; multiply coefficients; Koszul sign moving the
      // first coefficient functional past the whole second factor
      auto w = Om->words.at(E.wb)[E.w];
      const auto& w2 = Om->words.at(F.wb)[F.w];
      w.insert(w.end(), w2.begin(), w2.end());
      Bideg twb = E.wb + F.wb;
      int wp = Om->word_pos(twb, w);
      if (wp < 0) continue;
      long ex = static_cast<long>(E.m) * (F.wb.deg + F.m);
      K sgn = (detail::par(ex) == 0) ? K(1) : K(-1);
      const auto& mul = D->alg.mult.at({E.m, F.m});
      for (int r = 0; r < D->dim(E.m + F.m); ++r) {
        K mv = mul.get(r, E.x * D->dim(F.m) + F.x);
        if (is_zero(mv)) continue;
        int p = pos(tb, twb, wp, E.m + F.m, r);
        if (p >= 0) out[p] += sgn * v1[i1] * v2[i2] * mv;
      }
    }
  }
  return out;
}

// p (x) id : Omega(C) (x) A^! -> A (x) A^!, a map of differential graded
// algebras covering the top row of the comparison diagram.
template <class K>
ChainMap<K> map_dual_to_cohomology(const DualCohomologyComplex<K>& DC,
                                   const KoszulCohomologyComplex<K>& COH) {
  const auto& A = *COH.A;
  ChainMap<K> f(DC.fam.get(), COH.fam.get(), {0, 0});
  for (const auto& [bd, vec] : DC.basis) {
    SparseMat<K> mat(COH.fam->dim(bd), static_cast<int>(vec.size()));
    for (int col = 0; col < static_cast<int>(vec.size()); ++col) {
      const auto& e = vec[col];
      if (e.wb.deg != 0) continue;  // p kills positive cobar degrees
      auto blk = cobar_to_algebra_block(*DC.Om, A, e.wb);
      for (int r = 0; r < blk.rows(); ++r) {
        K v = blk.get(r, e.w);
        if (is_zero(v)) continue;
        int p = COH.fam->dim(bd) > 0
                    ? COH.index(e.wb.wt, e.m, r, e.x)
                    : -1;
        if (p >= 0 && p < COH.fam->dim(bd)) mat.add(p, col, v);
      }
    }
    f.set(bd, std::move(mat));
  }
  auto defect = chain_map_defect(f, DC.d, COH.d);
  if (defect)
    throw consistency_error("p (x) id fails to be a chain map at " +
                            to_string(*defect));
  return f;
}

}  // namespace koszul
