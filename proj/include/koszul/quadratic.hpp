#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "koszul/bigraded.hpp"
#include "koszul/homology.hpp"
#include "koszul/subspace.hpp"
#include "koszul/words.hpp"

namespace koszul {

struct consistency_error : std::logic_error {
  using std::logic_error::logic_error;
};

// A presentation (V, R) with an optional linear part.  The relation space
// is the quadratic part qR in RREF; when phi is present the actual
// relations are X - phi(X) for X in qR, which makes R and V intersect
// trivially by construction.
template <class K>
struct QuadraticDatum {
  std::vector<std::string> generators;
  Subspace<K> relations;             // qR inside V (x) V, ambient d^2
  std::optional<SparseMat<K>> phi;   // d x dim(qR), column j = phi(basis row j)

  int dim() const { return static_cast<int>(generators.size()); }
  bool linear_quadratic() const { return phi.has_value(); }
};

// Build a datum from raw spanning rows (and an optional linear part given
// on those raw rows).  The linear part is re-expressed on the pinned RREF
// basis; inconsistent assignments on dependent rows are rejected.
template <class K>
QuadraticDatum<K> make_datum(std::vector<std::string> generators,
                             const SparseMat<K>& raw_rows,
                             const SparseMat<K>* raw_phi = nullptr) {
  QuadraticDatum<K> out;
  out.generators = std::move(generators);
  const int d = static_cast<int>(out.generators.size());
  if (raw_rows.cols() != d * d)
    throw std::invalid_argument("relation rows must live in V (x) V");
  out.relations = Subspace<K>(d * d, raw_rows);
  if (raw_phi) {
    if (raw_phi->rows() != d || raw_phi->cols() != raw_rows.rows())
      throw std::invalid_argument("linear part shape");
    // phi on the RREF basis: express each basis row in the raw rows and
    // push the combination through raw_phi.
    auto rawT = raw_rows.transpose();
    SparseMat<K> phi(d, out.relations.dim());
    for (int k = 0; k < out.relations.dim(); ++k) {
      auto comb = solve(rawT, out.relations.basis().dense_row(k));
      if (!comb) throw consistency_error("linear part: basis not expressible");
      auto img = raw_phi->apply(*comb);
      for (int i = 0; i < d; ++i)
        if (!is_zero(img[i])) phi.set(i, k, img[i]);
    }
    // consistency: raw relations that are linearly dependent must carry
    // compatible linear parts, i.e. phi factors through the row space.
    for (int j = 0; j < raw_rows.rows(); ++j) {
      auto coords = out.relations.coordinates(raw_rows.dense_row(j));
      auto img = phi.apply(coords);
      for (int i = 0; i < d; ++i)
        if (!(img[i] == raw_phi->get(i, j)))
          throw consistency_error("linear part inconsistent on dependent relations");
    }
    out.phi = std::move(phi);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Algebra slice A = T(V)/(R) up to a weight cap.

template <class K>
struct AlgebraSlice {
  std::vector<std::string> generators;
  int W = 0;
  std::vector<std::vector<Word>> basis_words;     // per weight
  std::vector<SparseMat<K>> normal_form;          // V^{(x)n} -> A_n coords
  std::map<std::pair<int, int>, SparseMat<K>> mult;  // (i,j): A_i (x) A_j -> A_{i+j}

  int dim(int n) const {
    if (n < 0 || n > W) return 0;
    return static_cast<int>(basis_words[n].size());
  }
  int d() const { return static_cast<int>(generators.size()); }

  std::string label(int n, int k) const {
    return word_label(basis_words[n][k], generators);
  }

  // product of basis elements, as a coordinate vector in A_{i+j}
  std::vector<K> product(int i, int a, int j, int b) const {
    const auto& m = mult.at({i, j});
    std::vector<K> out(dim(i + j), K(0));
    const int col = a * dim(j) + b;
    for (int r = 0; r < m.rows(); ++r) {
      K v = m.get(r, col);
      if (!is_zero(v)) out[r] = v;
    }
    return out;
  }

  std::vector<int> dims() const {
    std::vector<int> out;
    for (int n = 0; n <= W; ++n) out.push_back(dim(n));
    return out;
  }
};

// Span of sum_{i+2+j=n} V^i (x) R (x) V^j inside V^{(x)n}.
template <class K>
SparseMat<K> relation_span_rows(const QuadraticDatum<K>& datum, int n) {
  const int d = datum.dim();
  const long dn = word_count(d, n);
  const auto& rel = datum.relations.basis();
  std::vector<SparseRow<K>> rows;
  for (int i = 0; i + 2 <= n; ++i) {
    const int j = n - 2 - i;
    const long di = word_count(d, i), dj = word_count(d, j);
    for (long u = 0; u < di; ++u)
      for (long w = 0; w < dj; ++w)
        for (int r = 0; r < rel.rows(); ++r) {
          SparseRow<K> row;
          for (const auto& [ab, v] : rel.row(r)) {
            // word u . ab . w
            long idx = (u * d * d + ab) * dj + w;
            row.emplace_back(static_cast<int>(idx), v);
          }
          std::sort(row.begin(), row.end());
          rows.push_back(std::move(row));
        }
  }
  SparseMat<K> m(static_cast<int>(rows.size()), static_cast<int>(dn));
  for (std::size_t r = 0; r < rows.size(); ++r)
    m.set_row(static_cast<int>(r), std::move(rows[r]));
  return m;
}

template <class K>
AlgebraSlice<K> build_algebra(const QuadraticDatum<K>& datum, int W) {
  AlgebraSlice<K> out;
  out.generators = datum.generators;
  out.W = W;
  const int d = datum.dim();
  out.basis_words.resize(W + 1);
  out.normal_form.resize(W + 1);
  for (int n = 0; n <= W; ++n) {
    Subspace<K> rel(static_cast<int>(word_count(d, n)));
    if (n >= 2)
      rel = Subspace<K>(static_cast<int>(word_count(d, n)),
                        relation_span_rows(datum, n));
    auto qd = quotient_data(static_cast<int>(word_count(d, n)), rel);
    for (int c : qd.complement_cols)
      out.basis_words[n].push_back(index_word(c, n, d));
    out.normal_form[n] = std::move(qd.projection);
  }
  for (int i = 0; i <= W; ++i)
    for (int j = 0; i + j <= W; ++j) {
      const int n = i + j;
      SparseMat<K> m(out.dim(n), out.dim(i) * out.dim(j));
      for (int a = 0; a < out.dim(i); ++a)
        for (int b = 0; b < out.dim(j); ++b) {
          Word w = concat(out.basis_words[i][a], out.basis_words[j][b]);
          long idx = word_index(w, d);
          // column `idx` of the normal form matrix
          for (int r = 0; r < out.dim(n); ++r) {
            K v = out.normal_form[n].get(r, static_cast<int>(idx));
            if (!is_zero(v)) m.set(r, a * out.dim(j) + b, v);
          }
        }
      out.mult[{i, j}] = std::move(m);
    }
  return out;
}

// ---------------------------------------------------------------------------
// Koszul dual coalgebra slice C_n = intersections of V^i (x) R (x) V^j.

template <class K>
struct CoalgebraSlice {
  std::vector<std::string> generators;
  int W = 0;
  std::vector<Subspace<K>> comp;  // comp[n] inside V^{(x)n}; comp[0] = k
  std::map<std::pair<int, int>, SparseMat<K>> coprod;  // C_{p+q} -> C_p (x) C_q
  // first/last letter contractions: [n][g]: C_n -> C_{n-1}
  std::vector<std::vector<SparseMat<K>>> contr_first;
  std::vector<std::vector<SparseMat<K>>> contr_last;
  std::optional<std::vector<SparseMat<K>>> d_phi;  // [n]: C_n -> C_{n-1}

  int d() const { return static_cast<int>(generators.size()); }
  int dim(int n) const {
    if (n < 0 || n > W) return 0;
    return comp[n].dim();
  }
  int top_weight() const {
    for (int n = W; n >= 0; --n)
      if (dim(n) > 0) return n;
    return 0;
  }
  std::vector<int> dims() const {
    std::vector<int> out;
    for (int n = 0; n <= W; ++n) out.push_back(dim(n));
    return out;
  }
  std::string label(int n, int k) const {
    return "c" + std::to_string(n) + "_" + std::to_string(k);
  }
};

template <class K>
CoalgebraSlice<K> build_dual_coalgebra(const QuadraticDatum<K>& datum, int W) {
  CoalgebraSlice<K> out;
  out.generators = datum.generators;
  out.W = W;
  const int d = datum.dim();
  out.comp.resize(W + 1);
  out.comp[0] = Subspace<K>::full(1);
  if (W >= 1) out.comp[1] = Subspace<K>::full(d);
  if (W >= 2) out.comp[2] = datum.relations;
  for (int n = 3; n <= W; ++n) {
    // C_n = (C_{n-1} (x) V) cap (V^{(x)(n-2)} (x) R)
    const long dn = word_count(d, n);
    SparseMat<K> left(out.comp[n - 1].dim() * d, static_cast<int>(dn));
    for (int k = 0; k < out.comp[n - 1].dim(); ++k)
      for (int g = 0; g < d; ++g) {
        SparseRow<K> row;
        for (const auto& [idx, v] : out.comp[n - 1].basis().row(k))
          row.emplace_back(static_cast<int>(idx) * d + g, v);
        left.set_row(k * d + g, std::move(row));
      }
    const auto& rel = datum.relations.basis();
    const long dj = word_count(d, n - 2);
    SparseMat<K> right(static_cast<int>(dj) * rel.rows(),
                       static_cast<int>(dn));
    for (long u = 0; u < dj; ++u)
      for (int r = 0; r < rel.rows(); ++r) {
        SparseRow<K> row;
        for (const auto& [ab, v] : rel.row(r))
          row.emplace_back(static_cast<int>(u * d * d + ab), v);
        right.set_row(static_cast<int>(u) * rel.rows() + r, std::move(row));
      }
    out.comp[n] =
        subspace_intersection(Subspace<K>(static_cast<int>(dn), left),
                              Subspace<K>(static_cast<int>(dn), right));
  }
  // contractions
  out.contr_first.resize(W + 1);
  out.contr_last.resize(W + 1);
  for (int n = 1; n <= W; ++n) {
    out.contr_first[n].resize(d);
    out.contr_last[n].resize(d);
    const long dm = word_count(d, n - 1);
    for (int g = 0; g < d; ++g) {
      SparseMat<K> first(out.dim(n - 1), out.dim(n));
      SparseMat<K> last(out.dim(n - 1), out.dim(n));
      for (int k = 0; k < out.dim(n); ++k) {
        std::vector<K> vf(dm, K(0)), vl(dm, K(0));
        for (const auto& [idx, v] : out.comp[n].basis().row(k)) {
          long i = idx;
          int last_letter = static_cast<int>(i % d);
          long init = i / d;
          long tail = i % dm;
          int first_letter = static_cast<int>(i / dm);
          if (first_letter == g) vf[tail] += v;
          if (last_letter == g) vl[init] += v;
        }
        auto cf = out.comp[n - 1].coordinates(vf);
        auto cl = out.comp[n - 1].coordinates(vl);
        for (int r = 0; r < out.dim(n - 1); ++r) {
          if (!is_zero(cf[r])) first.set(r, k, cf[r]);
          if (!is_zero(cl[r])) last.set(r, k, cl[r]);
        }
      }
      out.contr_first[n][g] = std::move(first);
      out.contr_last[n][g] = std::move(last);
    }
  }
  // coproduct components
  for (int n = 0; n <= W; ++n)
    for (int p = 0; p <= n; ++p) {
      const int q = n - p;
      if (p == 0 || q == 0) {
        out.coprod[{p, q}] = SparseMat<K>::identity(out.dim(n));
        continue;
      }
      // express each basis element of C_n in the products C_p (x) C_q
      SparseMat<K> prod(out.dim(p) * out.dim(q),
                        static_cast<int>(word_count(d, n)));
      const long dq = word_count(d, q);
      for (int a = 0; a < out.dim(p); ++a)
        for (int b = 0; b < out.dim(q); ++b) {
          std::map<int, K> acc;
          for (const auto& [ia, va] : out.comp[p].basis().row(a))
            for (const auto& [ib, vb] : out.comp[q].basis().row(b))
              acc[static_cast<int>(ia * dq + ib)] = va * vb;
          SparseRow<K> row(acc.begin(), acc.end());
          prod.set_row(a * out.dim(q) + b, std::move(row));
        }
      auto prodT = prod.transpose();
      SparseMat<K> m(out.dim(p) * out.dim(q), out.dim(n));
      for (int k = 0; k < out.dim(n); ++k) {
        auto sol = solve(prodT, out.comp[n].basis().dense_row(k));
        if (!sol)
          throw consistency_error("coalgebra coproduct failed to split");
        for (int r = 0; r < m.rows(); ++r)
          if (!is_zero((*sol)[r])) m.set(r, k, (*sol)[r]);
      }
      out.coprod[{p, q}] = std::move(m);
    }
  // coderivation from the linear part
  if (datum.linear_quadratic()) {
    const auto& phi = *datum.phi;
    // extend phi to V (x) V by zero off the pinned complement of R
    SparseMat<K> pivot_select(datum.relations.dim(), d * d);
    for (int k = 0; k < datum.relations.dim(); ++k)
      pivot_select.set(k, datum.relations.pivots()[k], K(1));
    SparseMat<K> phi_ext = phi * pivot_select;  // d x d^2
    std::vector<SparseMat<K>> dphi(W + 1);
    for (int n = 0; n <= W; ++n) {
      SparseMat<K> m(out.dim(n - 1 >= 0 ? n - 1 : 0), out.dim(n));
      if (n >= 2) {
        const long dm = word_count(d, n - 1);
        for (int k = 0; k < out.dim(n); ++k) {
          std::vector<K> img(dm, K(0));
          auto cvec = out.comp[n].basis().dense_row(k);
          for (int pos = 0; pos + 2 <= n; ++pos) {
            K sgn = (pos % 2 == 0) ? K(1) : K(-1);
            // apply phi_ext at letters (pos, pos+1)
            const long dpost = word_count(d, n - 2 - pos);
            for (long idx = 0; idx < word_count(d, n); ++idx) {
              const K& v = cvec[idx];
              if (is_zero(v)) continue;
              long post = idx % dpost;
              long mid = (idx / dpost) % (d * d);
              long pre = idx / (dpost * d * d);
              for (int g = 0; g < d; ++g) {
                K pv = phi_ext.get(g, static_cast<int>(mid));
                if (is_zero(pv)) continue;
                long tgt = (pre * d + g) * dpost + post;
                img[tgt] += sgn * v * pv;
              }
            }
          }
          std::vector<K> coords;
          try {
            coords = out.comp[n - 1].coordinates(img);
          } catch (const std::domain_error&) {
            throw consistency_error(
                "linear part does not restrict to the dual coalgebra");
          }
          for (int r = 0; r < out.dim(n - 1); ++r)
            if (!is_zero(coords[r])) m.set(r, k, coords[r]);
        }
      }
      dphi[n] = std::move(m);
    }
    out.d_phi = std::move(dphi);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Koszul dual algebra slice, with the pairing against the dual coalgebra.

template <class K>
struct DualAlgebraSlice {
  AlgebraSlice<K> alg;                    // presentation (V*, R_perp)
  std::vector<SparseMat<K>> pairing;      // [n]: dim A!_n x dim C_n
  std::optional<std::vector<SparseMat<K>>> diff;  // [n]: A!_n -> A!_{n+1}

  int dim(int n) const { return alg.dim(n); }
  int W() const { return alg.W; }
  std::vector<int> dims() const { return alg.dims(); }
};

template <class K>
QuadraticDatum<K> dual_datum(const QuadraticDatum<K>& datum) {
  QuadraticDatum<K> out;
  for (const auto& g : datum.generators) out.generators.push_back(g + "*");
  const int d = datum.dim();
  // R_perp = kernel of the evaluation pairing against R
  out.relations = Subspace<K>(d * d, kernel_basis(datum.relations.basis()));
  return out;
}

template <class K>
DualAlgebraSlice<K> build_dual_algebra(const QuadraticDatum<K>& datum, int W,
                                       const CoalgebraSlice<K>& co) {
  DualAlgebraSlice<K> out;
  out.alg = build_algebra(dual_datum(datum), W);
  const int d = datum.dim();
  out.pairing.resize(W + 1);
  for (int n = 0; n <= W; ++n) {
    SparseMat<K> p(out.alg.dim(n), co.dim(n));
    for (int a = 0; a < out.alg.dim(n); ++a) {
      long widx = word_index(out.alg.basis_words[n][a], d);
      for (int k = 0; k < co.dim(n); ++k) {
        K v = co.comp[n].basis().get(k, static_cast<int>(widx));
        if (!is_zero(v)) p.set(a, k, v);
      }
    }
    if (out.alg.dim(n) != co.dim(n))
      throw consistency_error("graded duality dimension mismatch at weight " +
                              std::to_string(n));
    if (out.alg.dim(n) > 0 && rank(p) != out.alg.dim(n))
      throw consistency_error("degenerate duality pairing at weight " +
                              std::to_string(n));
    out.pairing[n] = std::move(p);
  }
  if (co.d_phi) {
    // dual differential: <d x, c> = - <x, d_phi c>
    std::vector<SparseMat<K>> diff(W + 1);
    for (int n = 0; n + 1 <= W; ++n) {
      // solve P_{n+1}^T (dx) = - D_{n+1}^T P_n^T-ish, columnwise
      const auto& P1 = out.pairing[n + 1];
      const auto& P0 = out.pairing[n];
      const auto& D = (*co.d_phi)[n + 1];  // C_{n+1} -> C_n
      SparseMat<K> m(out.alg.dim(n + 1), out.alg.dim(n));
      // For basis x_a of A!_n: row vector (over C_{n+1}-basis k):
      //   rhs[k] = - <x_a, D c_k> = - (P0 row a) . (D col k)
      auto P1T = P1.transpose();
      for (int a = 0; a < out.alg.dim(n); ++a) {
        std::vector<K> rhs(co.dim(n + 1), K(0));
        for (int k = 0; k < co.dim(n + 1); ++k) {
          K s(0);
          for (int r = 0; r < co.dim(n); ++r) {
            K dv = D.get(r, k);
            if (!is_zero(dv)) s += P0.get(a, r) * dv;
          }
          rhs[k] = -s;
        }
        auto sol = solve(P1T, rhs);
        if (!sol) throw consistency_error("dual differential solve failed");
        for (int r = 0; r < out.alg.dim(n + 1); ++r)
          if (!is_zero((*sol)[r])) m.set(r, a, (*sol)[r]);
      }
      diff[n] = std::move(m);
    }
    diff[W] = SparseMat<K>(0, out.alg.dim(W));
    out.diff = std::move(diff);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Koszulness up to the weight cap, via the twisted complex A (x) C with the
// one-sided differential contracting the first coalgebra letter.

struct KoszulnessReport {
  bool koszul_up_to_W = true;
  std::optional<Bideg> first_failure;
};

template <class K>
struct TwistedOneSided {
  std::unique_ptr<BigradedFamily> fam = std::make_unique<BigradedFamily>();
  ChainMap<K> d;
};

template <class K>
TwistedOneSided<K> one_sided_koszul_complex(const AlgebraSlice<K>& A,
                                            const CoalgebraSlice<K>& C) {
  TwistedOneSided<K> out;
  const int W = A.W;
  for (int j = 0; j <= W; ++j)
    for (int m = 0; m <= j; ++m) {
      const int p = j - m;
      if (A.dim(p) == 0 || C.dim(m) == 0) continue;
      std::vector<std::string> labels;
      for (int a = 0; a < A.dim(p); ++a)
        for (int c = 0; c < C.dim(m); ++c)
          labels.push_back(A.label(p, a) + "(x)" + C.label(m, c));
      out.fam->set_basis({m, j}, std::move(labels));
    }
  out.d = ChainMap<K>(out.fam.get(), out.fam.get(), {-1, 0});
  const int d = A.d();
  for (const auto& [b, labels] : out.fam->support()) {
    const int m = b.deg, j = b.wt, p = j - m;
    if (m == 0) continue;
    const int dimC = C.dim(m), dimCt = C.dim(m - 1), dimAt = A.dim(p + 1);
    if (dimCt == 0 || dimAt == 0) continue;
    SparseMat<K> mat(dimAt * dimCt, A.dim(p) * dimC);
    const auto& mult = A.mult.at({p, 1});
    K sgn = (m % 2 == 0) ? K(1) : K(-1);
    for (int a = 0; a < A.dim(p); ++a)
      for (int c = 0; c < dimC; ++c)
        for (int g = 0; g < d; ++g) {
          const auto& contr = C.contr_first[m][g];
          for (int cc = 0; cc < dimCt; ++cc) {
            K cv = contr.get(cc, c);
            if (is_zero(cv)) continue;
            for (int aa = 0; aa < dimAt; ++aa) {
              K av = mult.get(aa, a * d + g);
              if (is_zero(av)) continue;
              mat.add(aa * dimCt + cc, a * dimC + c, sgn * av * cv);
            }
          }
        }
    out.d.set(b, std::move(mat));
  }
  auto sq = check_square_zero(out.d);
  if (!sq.ok)
    throw consistency_error("one-sided Koszul complex differential fails d^2=0 at " +
                            to_string(sq.failure));
  return out;
}

template <class K>
KoszulnessReport koszulness_check(const AlgebraSlice<K>& A,
                                  const CoalgebraSlice<K>& C) {
  auto cx = one_sided_koszul_complex(A, C);
  Homology<K> h(cx.d);
  KoszulnessReport rep;
  for (const auto& [b, dim] : h.dim_table()) {
    if (b == Bideg{0, 0} && dim == 1) continue;
    rep.koszul_up_to_W = false;
    if (!rep.first_failure || b.wt < rep.first_failure->wt ||
        (b.wt == rep.first_failure->wt && b.deg < rep.first_failure->deg))
      rep.first_failure = b;
  }
  return rep;
}

template <class K>
KoszulnessReport koszulness_check(const QuadraticDatum<K>& datum, int W) {
  QuadraticDatum<K> qdatum{datum.generators, datum.relations, std::nullopt};
  auto A = build_algebra(qdatum, W);
  auto C = build_dual_coalgebra(qdatum, W);
  return koszulness_check(A, C);
}

// Necessary condition: the Hilbert series of A and of A^! multiply to 1 up
// to the cap (with alternating signs on the dual side).
template <class K>
bool hilbert_product_check(const QuadraticDatum<K>& datum, int W) {
  QuadraticDatum<K> qdatum{datum.generators, datum.relations, std::nullopt};
  auto A = build_algebra(qdatum, W);
  auto C = build_dual_coalgebra(qdatum, W);
  for (int n = 0; n <= W; ++n) {
    long coef = 0;
    for (int k = 0; k <= n; ++k) {
      long term = static_cast<long>(A.dim(k)) * C.dim(n - k);
      coef += ((n - k) % 2 == 0) ? term : -term;
    }
    if (coef != (n == 0 ? 1 : 0)) return false;
  }
  return true;
}

// Linear-quadratic admissibility: combinations of R (x) V and V (x) R with
// vanishing cubic part must land in ker(phi) inside qR, and the quadratic
// part must be Koszul.  On success the coderivation on the dual coalgebra
// squares to zero; this is asserted, not assumed.
template <class K>
bool linquad_check(const QuadraticDatum<K>& datum, int W) {
  if (!datum.linear_quadratic())
    throw std::invalid_argument("linquad_check needs a linear part");
  const int d = datum.dim();
  const auto& qr = datum.relations.basis();
  const auto& phi = *datum.phi;
  const int nr = qr.rows();
  const long d2 = d * d, d3 = d2 * d;
  SparseMat<K> m2(2 * nr * d, static_cast<int>(d2));
  SparseMat<K> m3(2 * nr * d, static_cast<int>(d3));
  int row = 0;
  for (int r = 0; r < nr; ++r) {
    std::vector<K> ph(d, K(0));
    for (int i = 0; i < d; ++i) ph[i] = phi.get(i, r);
    for (int g = 0; g < d; ++g) {
      // (X - phi(X)) (x) e_g
      for (const auto& [ab, v] : qr.row(r))
        m3.add(row, static_cast<int>(ab * d + g), v);
      for (int i = 0; i < d; ++i)
        if (!is_zero(ph[i])) m2.add(row, static_cast<int>(i * d + g), -ph[i]);
      ++row;
      // e_g (x) (X - phi(X))
      for (const auto& [ab, v] : qr.row(r))
        m3.add(row, static_cast<int>(g * d2 + ab), v);
      for (int i = 0; i < d; ++i)
        if (!is_zero(ph[i])) m2.add(row, static_cast<int>(g * d + i), -ph[i]);
      ++row;
    }
  }
  auto combos = kernel_basis(m3.transpose());
  for (int k = 0; k < combos.rows(); ++k) {
    // quadratic part of the combination
    std::vector<K> s(d2, K(0));
    for (const auto& [r, c] : combos.row(k))
      for (const auto& [j, v] : m2.row(r)) s[j] += c * v;
    if (!datum.relations.contains(s)) return false;
    auto coords = datum.relations.coordinates(s);
    auto img = phi.apply(coords);
    for (const auto& v : img)
      if (!is_zero(v)) return false;
  }
  auto qrep = koszulness_check(datum, W);
  if (!qrep.koszul_up_to_W) return false;
  // materialize the coderivation and assert it squares to zero
  auto C = build_dual_coalgebra(datum, W);
  for (int n = 2; n <= W; ++n) {
    auto dd = (*C.d_phi)[n - 1] * (*C.d_phi)[n];
    if (!dd.is_zero_matrix())
      throw consistency_error("coderivation square is nonzero at weight " +
                              std::to_string(n));
  }
  return true;
}

}  // namespace koszul
