#pragma once

#include "koszul/workspace.hpp"

namespace koszul {

// ---------------------------------------------------------------------------
// Cyclic pairings on the dual algebra and the induced duality data.

template <class K>
struct CyclicPairing {
  int n = 0;
  std::vector<K> omega;            // functional on the top weight component
  std::vector<SparseMat<K>> gram;  // [k]: dim A!_k x dim A!_{n-k}
};

enum class CyclicVerdict {
  cyclic,
  not_cyclic,           // decided: no nondegenerate invariant pairing
  budget_exhausted,     // honest failure: search budget ran out undecided
  unbounded_dual,       // dual coalgebra does not vanish below the cap
};

inline std::string to_string(CyclicVerdict v) {
  switch (v) {
    case CyclicVerdict::cyclic: return "cyclic";
    case CyclicVerdict::not_cyclic: return "not cyclic";
    case CyclicVerdict::budget_exhausted: return "no nondegenerate point found within budget";
    case CyclicVerdict::unbounded_dual: return "unbounded dual";
  }
  return "?";
}

template <class K>
struct CyclicSearch {
  CyclicVerdict verdict = CyclicVerdict::not_cyclic;
  std::optional<CyclicPairing<K>> pairing;
  bool search_complete = false;
  std::string reason;
};

// omega(x * y) as a matrix entry table for a candidate functional.
template <class K>
std::vector<SparseMat<K>> gram_matrices(const DualAlgebraSlice<K>& D, int n,
                                        const std::vector<K>& omega) {
  std::vector<SparseMat<K>> out(n + 1);
  for (int k = 0; k <= n; ++k) {
    SparseMat<K> g(D.dim(k), D.dim(n - k));
    const auto& mul = D.alg.mult.at({k, n - k});
    for (int a = 0; a < D.dim(k); ++a)
      for (int b = 0; b < D.dim(n - k); ++b) {
        K v(0);
        for (int r = 0; r < D.dim(n); ++r) {
          K mv = mul.get(r, a * D.dim(n - k) + b);
          if (!is_zero(mv)) v += mv * omega[r];
        }
        if (!is_zero(v)) g.set(a, b, v);
      }
    out[k] = std::move(g);
  }
  return out;
}

// Search for a nondegenerate graded-cyclic functional on A!_n.  The
// invariance conditions are linear; the sweep over the solution space is
// deterministic: basis vectors first, then integer combinations in
// increasing L1 order.  Over the rationals the sweep is complete once it
// covers a grid of side (total Gram size + 1), by polynomial identity
// testing on the product of the Gram determinants.
template <class K>
CyclicSearch<K> find_cyclic_pairing(const DualAlgebraSlice<K>& D,
                                    const CoalgebraSlice<K>& C, int n,
                                    long budget = 20000) {
  CyclicSearch<K> out;
  if (C.top_weight() >= C.W && C.dim(C.W) > 0) {
    out.verdict = CyclicVerdict::unbounded_dual;
    out.reason = "dual coalgebra still nonzero at the cap";
    return out;
  }
  // dimension symmetry is necessary
  for (int k = 0; k <= n; ++k)
    if (D.dim(k) != D.dim(n - k)) {
      out.verdict = CyclicVerdict::not_cyclic;
      out.reason = "graded dimensions are not symmetric about n/2";
      out.search_complete = true;
      return out;
    }
  const int dn = D.dim(n);
  if (dn == 0) {
    out.verdict = CyclicVerdict::not_cyclic;
    out.reason = "top component vanishes";
    out.search_complete = true;
    return out;
  }
  // linear constraints on omega
  std::vector<SparseRow<K>> rows;
  auto add_row = [&](const std::vector<K>& r) {
    SparseRow<K> row;
    for (int i = 0; i < dn; ++i)
      if (!is_zero(r[i])) row.emplace_back(i, r[i]);
    if (!row.empty()) rows.push_back(std::move(row));
  };
  for (int k = 0; k <= n; ++k) {
    const auto& mul = D.alg.mult.at({k, n - k});
    const auto& mul2 = D.alg.mult.at({n - k, k});
    for (int a = 0; a < D.dim(k); ++a)
      for (int b = 0; b < D.dim(n - k); ++b) {
        // omega(ab) - (-1)^{k(n-k)} omega(ba) = 0
        std::vector<K> r(dn, K(0));
        for (int t = 0; t < dn; ++t) r[t] += mul.get(t, a * D.dim(n - k) + b);
        K sgn = (detail::par(static_cast<long>(k) * (n - k)) == 0) ? K(-1)
                                                                   : K(1);
        for (int t = 0; t < dn; ++t)
          r[t] += sgn * mul2.get(t, b * D.dim(k) + a);
        add_row(r);
      }
  }
  if (D.diff) {
    // <d a, b> + (-1)^{|a|} <a, d b> = 0 with |a| = -wt(a)
    for (int k = 0; k + 1 <= n; ++k) {
      const int l = n - 1 - k;
      if (D.dim(k) == 0 || D.dim(l) == 0) continue;
      const auto& dk = (*D.diff)[k];
      const auto& dl = (*D.diff)[l];
      const auto& mulA = D.alg.mult.at({k + 1, l});
      const auto& mulB = D.alg.mult.at({k, l + 1});
      for (int a = 0; a < D.dim(k); ++a)
        for (int b = 0; b < D.dim(l); ++b) {
          std::vector<K> r(dn, K(0));
          for (int t = 0; t < D.dim(k + 1); ++t) {
            K dv = dk.get(t, a);
            if (is_zero(dv)) continue;
            for (int s = 0; s < dn; ++s)
              r[s] += dv * mulA.get(s, t * D.dim(l) + b);
          }
          K sgn = (k % 2 == 0) ? K(1) : K(-1);
          for (int t = 0; t < D.dim(l + 1); ++t) {
            K dv = dl.get(t, b);
            if (is_zero(dv)) continue;
            for (int s = 0; s < dn; ++s)
              r[s] += sgn * dv * mulB.get(s, a * D.dim(l + 1) + t);
          }
          add_row(r);
        }
    }
  }
  SparseMat<K> con(static_cast<int>(rows.size()), dn);
  for (std::size_t i = 0; i < rows.size(); ++i)
    con.set_row(static_cast<int>(i), std::move(rows[i]));
  auto sol = kernel_basis(con);
  const int sdim = sol.rows();
  if (sdim == 0) {
    out.verdict = CyclicVerdict::not_cyclic;
    out.reason = "no invariant functional";
    out.search_complete = true;
    return out;
  }
  long gram_total = 0;
  for (int k = 0; k <= n; ++k) gram_total += D.dim(k);
  auto nondegenerate = [&](const std::vector<K>& omega)
      -> std::optional<std::vector<SparseMat<K>>> {
    auto g = gram_matrices(D, n, omega);
    for (int k = 0; k <= n; ++k)
      if (rank(g[k]) != D.dim(k)) return std::nullopt;
    return g;
  };
  auto accept = [&](const std::vector<K>& omega) {
    auto g = nondegenerate(omega);
    if (!g) return false;
    CyclicPairing<K> p;
    p.n = n;
    p.omega = omega;
    p.gram = std::move(*g);
    out.pairing = std::move(p);
    out.verdict = CyclicVerdict::cyclic;
    return true;
  };
  long tried = 0;
  // 1. solution basis vectors
  for (int i = 0; i < sdim && tried < budget; ++i) {
    ++tried;
    if (accept(sol.dense_row(i))) return out;
  }
  // 2. grid of nonnegative integer combinations, in increasing L1 order;
  //    covering {0..gram_total}^sdim decides the search over Q
  const long side = gram_total + 1;
  bool covered = true;
  for (long l1 = 1; tried < budget; ++l1) {
    // enumerate coefficient vectors with entries in [0, side) and sum l1
    std::vector<long> coef(sdim, 0);
    std::function<bool(int, long)> rec = [&](int pos, long rem) -> bool {
      if (tried >= budget) {
        covered = false;
        return false;
      }
      if (pos == sdim - 1) {
        if (rem >= side) return false;
        coef[pos] = rem;
        ++tried;
        std::vector<K> omega(dn, K(0));
        for (int i = 0; i < sdim; ++i) {
          if (coef[i] == 0) continue;
          auto row = sol.dense_row(i);
          for (int t = 0; t < dn; ++t) omega[t] += K(coef[i]) * row[t];
        }
        return accept(omega);
      }
      for (long c = std::min<long>(rem, side - 1); c >= 0; --c) {
        coef[pos] = c;
        if (rec(pos + 1, rem - c)) return true;
      }
      return false;
    };
    if (rec(0, l1)) return out;
    if (l1 >= side * sdim) break;  // grid exhausted
  }
  out.search_complete = covered;
  out.verdict = covered ? CyclicVerdict::not_cyclic
                        : CyclicVerdict::budget_exhausted;
  out.reason = covered ? "solution space exhausted, all points degenerate"
                       : "budget exhausted before covering the grid";
  return out;
}

// ---------------------------------------------------------------------------
// Certificate: pairing + the duality map psi and its compatibility square.

template <class K>
struct CYCertificate {
  CyclicVerdict verdict = CyclicVerdict::not_cyclic;
  bool is_cy = false;
  int n = 0;
  std::string reason;
  std::optional<CyclicPairing<K>> pairing;
  std::vector<SparseMat<K>> psi;  // [i]: dim C_{n-i} x dim A!_i
  bool search_complete = false;
};

// psi(x)(y) = omega(x y), identified with the dual coalgebra through the
// stored pairing.
template <class K>
std::vector<SparseMat<K>> build_psi(const DualAlgebraSlice<K>& D,
                                    const CoalgebraSlice<K>& C, int n,
                                    const std::vector<K>& omega) {
  std::vector<SparseMat<K>> psi(n + 1);
  for (int i = 0; i <= n; ++i) {
    const int j = n - i;
    SparseMat<K> m(C.dim(j), D.dim(i));
    const auto& mul = D.alg.mult.at({i, j});
    auto PT = D.pairing[j].transpose();
    for (int x = 0; x < D.dim(i); ++x) {
      // rhs over the A!_j basis: y |-> omega(x y)
      std::vector<K> rhs(D.dim(j), K(0));
      for (int y = 0; y < D.dim(j); ++y)
        for (int t = 0; t < D.dim(n); ++t) {
          K mv = mul.get(t, x * D.dim(j) + y);
          if (!is_zero(mv)) rhs[y] += mv * omega[t];
        }
      auto s = solve(PT, rhs);
      if (!s) throw consistency_error("psi: pairing solve failed");
      for (int r = 0; r < C.dim(j); ++r)
        if (!is_zero((*s)[r])) m.set(r, x, (*s)[r]);
    }
    psi[i] = std::move(m);
  }
  return psi;
}

// The bimodule compatibility of psi, stated through the coproduct:
//   sum_e e (x) psi(x e*) = Delta(psi x)   and
//   sum_e e (x) psi(e* x) = Koszul swap of Delta(psi x),
// asserted matrix-exactly on every weight split.
template <class K>
void assert_psi_bimodule(const DualAlgebraSlice<K>& D,
                         const CoalgebraSlice<K>& C, int n,
                         const std::vector<SparseMat<K>>& psi) {
  // dual basis coefficients per weight
  std::vector<SparseMat<K>> dualize(n + 1);
  for (int w = 0; w <= n; ++w) {
    const auto& P = D.pairing[w];
    SparseMat<K> inv(P.rows(), P.rows());
    for (int k = 0; k < P.rows(); ++k) {
      std::vector<K> e(P.rows(), K(0));
      e[k] = K(1);
      auto s = solve(P.transpose(), e);
      if (!s) throw consistency_error("pairing not invertible");
      for (int a = 0; a < P.rows(); ++a)
        if (!is_zero((*s)[a])) inv.set(k, a, (*s)[a]);
    }
    dualize[w] = std::move(inv);
  }
  for (int i = 0; i <= n; ++i) {
    const int j = n - i;
    for (int x = 0; x < D.dim(i); ++x) {
      // psi(x) in C_j coordinates
      std::vector<K> px(C.dim(j), K(0));
      for (int r = 0; r < C.dim(j); ++r) px[r] = psi[i].get(r, x);
      for (int k = 1; k <= j; ++k) {
        const int l = j - k;
        if (C.dim(k) == 0 || C.dim(l) == 0 || D.dim(i + k) == 0) continue;
        // LHS right: sum over C_k basis e: e (x) psi(x . e*)
        SparseMat<K> lhsR(C.dim(k) * C.dim(l), 1);
        SparseMat<K> lhsL(C.dim(k) * C.dim(l), 1);
        const auto& mulR = D.alg.mult.at({i, k});
        const auto& mulL = D.alg.mult.at({k, i});
        for (int e = 0; e < C.dim(k); ++e)
          for (int a = 0; a < D.dim(k); ++a) {
            K dv = dualize[k].get(e, a);
            if (is_zero(dv)) continue;
            for (int t = 0; t < D.dim(i + k); ++t) {
              K mr = mulR.get(t, x * D.dim(k) + a);
              if (!is_zero(mr))
                for (int r = 0; r < C.dim(l); ++r) {
                  K pv = psi[i + k].get(r, t);
                  if (!is_zero(pv))
                    lhsR.add(e * C.dim(l) + r, 0, dv * mr * pv);
                }
              K ml = mulL.get(t, a * D.dim(i) + x);
              if (!is_zero(ml))
                for (int r = 0; r < C.dim(l); ++r) {
                  K pv = psi[i + k].get(r, t);
                  if (!is_zero(pv))
                    lhsL.add(e * C.dim(l) + r, 0, dv * ml * pv);
                }
            }
          }
        // RHS: coproduct components of psi(x)
        const auto& cpKL = C.coprod.at({k, l});
        const auto& cpLK = C.coprod.at({l, k});
        SparseMat<K> rhsR(C.dim(k) * C.dim(l), 1);
        SparseMat<K> rhsSw(C.dim(k) * C.dim(l), 1);
        for (int c = 0; c < C.dim(j); ++c) {
          if (is_zero(px[c])) continue;
          for (int u = 0; u < C.dim(k); ++u)
            for (int w = 0; w < C.dim(l); ++w) {
              K v = cpKL.get(u * C.dim(l) + w, c);
              if (!is_zero(v)) rhsR.add(u * C.dim(l) + w, 0, px[c] * v);
            }
          // cyclic permutation sign of moving the weight-k letter around
          K sw = (detail::par(static_cast<long>(k) * (n - k)) == 0) ? K(1)
                                                                    : K(-1);
          for (int u = 0; u < C.dim(l); ++u)
            for (int w = 0; w < C.dim(k); ++w) {
              K v = cpLK.get(u * C.dim(k) + w, c);
              if (!is_zero(v)) rhsSw.add(w * C.dim(l) + u, 0, sw * px[c] * v);
            }
        }
        if (!(lhsR == rhsR))
          throw consistency_error(
              "psi bimodule square (right action) fails at weight split " +
              std::to_string(k) + "," + std::to_string(l));
        if (!(lhsL == rhsSw))
          throw consistency_error(
              "psi bimodule square (left action) fails at weight split " +
              std::to_string(k) + "," + std::to_string(l));
      }
    }
  }
}

template <class K>
CYCertificate<K> cy_check(const AlgebraSlice<K>& A, const CoalgebraSlice<K>& C,
                          const DualAlgebraSlice<K>& D, long budget = 20000) {
  CYCertificate<K> cert;
  auto koszul = koszulness_check(A, C);
  if (!koszul.koszul_up_to_W)
    throw consistency_error("cy_check requires Koszulness up to the cap");
  cert.n = C.top_weight();
  auto search = find_cyclic_pairing(D, C, cert.n, budget);
  cert.verdict = search.verdict;
  cert.reason = search.reason;
  cert.search_complete = search.search_complete;
  if (search.verdict != CyclicVerdict::cyclic) return cert;
  cert.pairing = search.pairing;
  cert.psi = build_psi(D, C, cert.n, cert.pairing->omega);
  for (int i = 0; i <= cert.n; ++i)
    if (rank(cert.psi[i]) != D.dim(i))
      throw consistency_error("psi is not an isomorphism at weight " +
                              std::to_string(i));
  assert_psi_bimodule(D, C, cert.n, cert.psi);
  if (D.diff) {
    // psi intertwines the differentials up to a consistent sign
    std::optional<K> sgn;
    for (int i = 0; i + 1 <= cert.n; ++i) {
      // d_phi . psi_i : A!_i -> C_{n-i-1}, psi_{i+1} . d : same
      const auto& dphi = (*C.d_phi)[cert.n - i];
      auto lhs = dphi * cert.psi[i];
      auto rhs = cert.psi[i + 1] * (*D.diff)[i];
      if (lhs.is_zero_matrix() && rhs.is_zero_matrix()) continue;
      std::optional<K> here;
      for (const K& s : {K(1), K(-1)})
        if (lhs == rhs.scaled(s)) here = s;
      if (!here) throw consistency_error("psi is not a chain map");
      if (sgn && !(*sgn == *here))
        throw consistency_error("psi chain-map sign inconsistent");
      sgn = here;
    }
  }
  cert.is_cy = true;
  return cert;
}

// ---------------------------------------------------------------------------
// Poincare duality at chain level: id (x) psi identifies the cohomology
// model with the homology model shifted by (n, n), up to a weight-indexed
// sign eliminated by solving the chain condition block by block.

template <class K>
ChainMap<K> pd_chain_iso(const Workspace<K>& ws, const CYCertificate<K>& cert) {
  const int n = cert.n;
  ChainMap<K> raw(ws.COH.fam.get(), ws.KA.fam.get(), {n, n});
  for (const auto& [b, labels] : ws.COH.fam->support()) {
    auto [p, m] = ws.COH.pm(b);
    if (m > n) continue;
    Bideg tb = b + Bideg{n, n};
    if (ws.KA.fam->dim(tb) == 0) continue;
    const int dimC = ws.C.dim(n - m);
    SparseMat<K> mat(ws.A.dim(p) * dimC, ws.A.dim(p) * ws.D.dim(m));
    for (int a = 0; a < ws.A.dim(p); ++a)
      for (int x = 0; x < ws.D.dim(m); ++x)
        for (int r = 0; r < dimC; ++r) {
          K v = cert.psi[m].get(r, x);
          if (!is_zero(v)) mat.add(a * dimC + r, a * ws.D.dim(m) + x, v);
        }
    raw.set(b, std::move(mat));
  }
  // solve the per-weight sign making it a strict chain map
  std::map<int, K> sigma;
  sigma[0] = K(1);
  for (int m = 0; m + 1 <= n; ++m) {
    // compare raw . delta with b . raw on any block with source dual weight m
    std::optional<K> ratio;
    for (const auto& [b, labels] : ws.COH.fam->support()) {
      auto [p, mm] = ws.COH.pm(b);
      if (mm != m) continue;
      auto lhs = raw.at(b + Bideg{-1, 0}) * ws.COH.d.at(b);
      auto rhs = ws.KA.d.at(b + Bideg{n, n}) * raw.at(b);
      if (lhs.is_zero_matrix() && rhs.is_zero_matrix()) continue;
      std::optional<K> here;
      for (const K& s : {K(1), K(-1)})
        if (lhs == rhs.scaled(s)) here = s;
      if (!here)
        throw consistency_error("duality iso is not proportional to a chain map at " +
                                to_string(b));
      if (ratio && !(*ratio == *here))
        throw consistency_error("duality sign inconsistent at dual weight " +
                                std::to_string(m));
      ratio = here;
    }
    // sigma(m+1) = sigma(m) * ratio: lhs block carries sigma(m+1), rhs sigma(m)
    sigma[m + 1] = sigma[m] * (ratio ? *ratio : K(1));
  }
  ChainMap<K> out(ws.COH.fam.get(), ws.KA.fam.get(), {n, n});
  for (const auto& [b, blk] : raw.blocks()) {
    auto [p, m] = ws.COH.pm(b);
    out.set(b, blk.scaled(sigma.at(m)));
  }
  auto defect = chain_map_defect(out, ws.COH.d, ws.KA.d);
  if (defect)
    throw consistency_error("duality iso fails to be a chain map at " +
                            to_string(*defect));
  return out;
}

// The dual-side analogue: id (x) psi from the dual cohomology model to the
// coalgebra chain model, shifted by (n, n).
template <class K>
ChainMap<K> pd_dual_chain_iso(const Workspace<K>& ws,
                              const CYCertificate<K>& cert,
                              int prescale_parity = 1) {
  const int n = cert.n;
  ChainMap<K> raw(ws.DCOH.fam.get(), ws.COA.fam.get(), {n, n});
  for (const auto& [b, vec] : ws.DCOH.basis) {
    Bideg tb = b + Bideg{n, n};
    if (tb.wt > ws.W) continue;  // coalgebra model is capped at W
    if (ws.COA.fam->dim(tb) == 0) continue;
    SparseMat<K> mat(ws.COA.fam->dim(tb), static_cast<int>(vec.size()));
    for (int col = 0; col < static_cast<int>(vec.size()); ++col) {
      const auto& e = vec[col];
      const auto& word = ws.Om.words.at(e.wb)[e.w];
      K pre = (detail::par(static_cast<long>(prescale_parity) * (e.m + 1)) == 0)
                  ? K(1)
                  : K(-1);
      for (int r = 0; r < ws.C.dim(n - e.m); ++r) {
        K v = cert.psi[e.m].get(r, e.x);
        if (is_zero(v)) continue;
        typename CoalgebraChains<K>::Basis tgt{word, {n - e.m, r}};
        int p = ws.COA.pos(tb, tgt);
        if (p < 0)
          throw consistency_error("dual duality image missing");
        mat.add(p, col, pre * v);
      }
    }
    raw.set(b, std::move(mat));
  }
  // Per-dual-weight signs solved from the chain condition.  A target row of
  // the raw map determines the dual weight it came from, so every nonzero
  // entry of (raw d) against (b raw) relates the signs at two dual weights;
  // the relations are propagated from weight zero and must be consistent.
  std::map<std::pair<int, int>, K> edge;  // (from, to) -> required ratio
  for (const auto& [b, vec] : ws.DCOH.basis) {
    Bideg tb = b + Bideg{n, n};
    if (tb.wt > ws.W) continue;
    auto lhs = raw.at(b + Bideg{-1, 0}) * ws.DCOH.d.at(b);
    auto rhs = ws.COA.b.at(tb) * raw.at(b);
    Bideg rb = tb + Bideg{-1, 0};
    auto itr = ws.COA.basis.find(rb);
    if (itr == ws.COA.basis.end()) continue;
    for (int col = 0; col < static_cast<int>(vec.size()); ++col) {
      const int m_src = vec[col].m;
      for (int r = 0; r < lhs.rows(); ++r) {
        K lv = lhs.get(r, col), rv = rhs.get(r, col);
        if (is_zero(lv) && is_zero(rv)) continue;
        if (is_zero(lv) || is_zero(rv))
          throw consistency_error("dual duality iso not proportional at " +
                                  to_string(b));
        K here = lv / rv;  // = sigma(m_src) / sigma(m_row)
        if (!(here == K(1)) && !(here == K(-1)))
          throw consistency_error("dual duality iso ratio not a sign");
        const int m_row = n - itr->second[r].c0.first;
        auto key = std::make_pair(m_src, m_row);
        auto [it, fresh] = edge.try_emplace(key, here);
        if (!fresh && !(it->second == here))
          throw consistency_error("dual duality sign inconsistent");
      }
    }
  }
  std::map<int, K> sigma;
  sigma[0] = K(1);
  bool progress = true;
  while (progress) {
    progress = false;
    for (const auto& [key, ratio] : edge) {
      auto [from, to] = key;
      if (sigma.count(from) && !sigma.count(to)) {
        sigma[to] = sigma[from] / ratio;  // lhs sigma(to) = ratio sigma(from)... solve below
        progress = true;
      } else if (sigma.count(to) && !sigma.count(from)) {
        sigma[from] = sigma[to] * ratio;
        progress = true;
      } else if (sigma.count(from) && sigma.count(to)) {
        if (!(sigma.at(from) == sigma.at(to) * ratio))
          throw consistency_error("dual duality sign graph inconsistent");
      }
    }
  }
  for (int m = 0; m <= n; ++m)
    if (!sigma.count(m)) sigma[m] = K(1);
  ChainMap<K> out(ws.DCOH.fam.get(), ws.COA.fam.get(), {n, n});
  for (const auto& [b, vec] : ws.DCOH.basis) {
    auto blk = raw.at(b);
    if (blk.rows() == 0 || blk.cols() == 0) continue;
    SparseMat<K> scaled(blk.rows(), blk.cols());
    for (int col = 0; col < static_cast<int>(vec.size()); ++col) {
      K s = sigma.at(vec[col].m);
      for (int r = 0; r < blk.rows(); ++r) {
        K v = blk.get(r, col);
        if (!is_zero(v)) scaled.set(r, col, s * v);
      }
    }
    out.set(b, std::move(scaled));
  }
  auto defect = chain_map_defect(out, ws.DCOH.d, ws.COA.b);
  if (defect)
    throw consistency_error("dual duality iso fails to be a chain map at " +
                            to_string(*defect));
  return out;
}

}  // namespace koszul
