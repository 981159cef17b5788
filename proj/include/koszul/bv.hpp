#pragma once

#include <memory>
#include <set>

#include "koszul/calabi_yau.hpp"
#include "koszul/cochain.hpp"

namespace koszul {

template <class K>
SparseMat<K> invert(const SparseMat<K>& m) {
  if (m.rows() != m.cols()) throw std::invalid_argument("invert: not square");
  SparseMat<K> inv(m.rows(), m.rows());
  for (int k = 0; k < m.rows(); ++k) {
    std::vector<K> e(m.rows(), K(0));
    e[k] = K(1);
    auto s = solve(m, e);
    if (!s) throw std::domain_error("invert: singular matrix");
    for (int r = 0; r < m.rows(); ++r)
      if (!is_zero((*s)[r])) inv.set(r, k, (*s)[r]);
  }
  return inv;
}

// ---------------------------------------------------------------------------
// The operator Delta = PD^{-1} . B . PD on the homology of one of the two
// cohomology models, with every class transported to the corresponding
// normalized chain model where the Connes operator lives.

enum class BVSide { algebra, dual };

template <class K>
struct BVStructure {
  BVSide side = BVSide::algebra;
  int n = 0;
  int W = 0;
  // class spaces of the side's cohomology model, within the window
  std::shared_ptr<Homology<K>> H;
  std::map<Bideg, SparseMat<K>> delta;      // H(b) -> H(b + (1,0))
  std::map<Bideg, SparseMat<K>> pd;         // H(b) -> homology-side classes

  bool in_window(Bideg b) const {
    Bideg tb = b + Bideg{n, n};
    return tb.wt >= 0 && tb.wt <= W && tb.deg >= 0 && tb.deg <= tb.wt;
  }
};

// Connes operator transported to the Koszul complex homology through the
// inclusion into the normalized chains.
template <class K>
std::map<Bideg, SparseMat<K>> transported_connes(
    const Workspace<K>& ws, const Homology<K>& hK, const Homology<K>& hCH,
    const std::set<Bideg>& bidegrees) {
  auto F1 = induced_on_homology(ws.phi1, hK, hCH, ws.KA.d, ws.CHA.b, false);
  auto BA = induced_on_homology(ws.CHA.B, hCH, hCH, ws.CHA.b, ws.CHA.b, false,
                                K(-1));
  std::map<Bideg, SparseMat<K>> out;
  for (Bideg tb : bidegrees) {
    Bideg ub = tb + Bideg{1, 0};
    if (hK.dim(tb) == 0) {
      out[tb] = SparseMat<K>(hK.dim(ub), 0);
      continue;
    }
    auto f = F1.at(tb);
    if (rank(f) != hK.dim(tb))
      throw consistency_error("inclusion not a quasi-isomorphism at " +
                              to_string(tb));
    SparseMat<K> fu = F1.count(ub) ? F1.at(ub) : SparseMat<K>(0, 0);
    if (hK.dim(ub) > 0 && rank(fu) != hK.dim(ub))
      throw consistency_error("inclusion not a quasi-isomorphism at " +
                              to_string(ub));
    SparseMat<K> b = BA.count(tb) ? BA.at(tb)
                                  : SparseMat<K>(hCH.dim(ub), hCH.dim(tb));
    if (hK.dim(ub) == 0) {
      // target classes vanish; B of the transported class must be a boundary
      auto img = b * f;
      if (!img.is_zero_matrix())
        throw consistency_error("Connes image not a boundary at " +
                                to_string(tb));
      out[tb] = SparseMat<K>(0, hK.dim(tb));
      continue;
    }
    // solve fu . X = b . f
    auto rhs = b * f;
    SparseMat<K> X(hK.dim(ub), hK.dim(tb));
    for (int c = 0; c < rhs.cols(); ++c) {
      std::vector<K> col(rhs.rows(), K(0));
      for (int r = 0; r < rhs.rows(); ++r) col[r] = rhs.get(r, c);
      auto s = solve(fu, col);
      if (!s)
        throw consistency_error("Connes transport solve failed at " +
                                to_string(tb));
      for (int r = 0; r < X.rows(); ++r)
        if (!is_zero((*s)[r])) X.set(r, c, (*s)[r]);
    }
    out[tb] = std::move(X);
  }
  return out;
}

template <class K>
BVStructure<K> build_bv(const Workspace<K>& ws, const CYCertificate<K>& cert,
                        BVSide side,
                        const ChainMap<K>* prebuilt_pd = nullptr) {
  if (!cert.is_cy) throw consistency_error("Delta needs a certified structure");
  BVStructure<K> out;
  out.side = side;
  out.n = cert.n;
  out.W = ws.W;
  const int n = cert.n;
  auto window = [&](Bideg b) { return out.in_window(b); };
  auto near_window = [&](Bideg b) {
    for (int d : {0, 1, 2})
      if (window(b + Bideg{-d, 0}) || window(b + Bideg{d, 0})) return true;
    return false;
  };
  if (side == BVSide::algebra) {
    out.H = std::make_shared<Homology<K>>(ws.COH.d, near_window);
    auto PD = prebuilt_pd ? *prebuilt_pd : pd_chain_iso(ws, cert);
    Homology<K> hK(ws.KA.d, [&](Bideg tb) {
      return tb.wt >= 0 && tb.wt <= ws.W && tb.deg >= -1 && tb.deg <= tb.wt + 2;
    });
    Homology<K> hCH(ws.CHA.b, [&](Bideg tb) {
      return tb.wt >= 0 && tb.wt <= ws.W && tb.deg >= -1 && tb.deg <= tb.wt + 2;
    });
    auto PDind =
        induced_on_homology(PD, *out.H, hK, ws.COH.d, ws.KA.d, false);
    std::set<Bideg> needed;
    for (const auto& [b, labels] : ws.COH.fam->support())
      if (window(b) && out.H->dim(b) > 0) needed.insert(b + Bideg{n, n});
    auto BK = transported_connes(ws, hK, hCH, needed);
    for (const auto& [b, labels] : ws.COH.fam->support()) {
      if (!window(b) || out.H->dim(b) == 0) continue;
      Bideg tb = b + Bideg{n, n};
      Bideg b1 = b + Bideg{1, 0};
      auto pd = PDind.at(b);
      if (rank(pd) != out.H->dim(b))
        throw consistency_error("duality map not invertible at " +
                                to_string(b));
      out.pd[b] = pd;
      auto bk = BK.at(tb);
      SparseMat<K> up = bk * pd;  // H_COH(b) -> H_K(tb + (1,0))
      const int dtgt = out.H->dim(b1);
      if (dtgt == 0) {
        if (!up.is_zero_matrix())
          throw consistency_error("Delta image misses the window at " +
                                  to_string(b));
        out.delta[b] = SparseMat<K>(0, out.H->dim(b));
        continue;
      }
      auto pdu = PDind.at(b1);
      if (rank(pdu) != dtgt)
        throw consistency_error("duality map not invertible at " +
                                to_string(b1));
      SparseMat<K> X(dtgt, out.H->dim(b));
      for (int c = 0; c < up.cols(); ++c) {
        std::vector<K> col(up.rows(), K(0));
        for (int r = 0; r < up.rows(); ++r) col[r] = up.get(r, c);
        auto s = solve(pdu, col);
        if (!s) throw consistency_error("Delta solve failed");
        for (int r = 0; r < dtgt; ++r)
          if (!is_zero((*s)[r])) X.set(r, c, (*s)[r]);
      }
      out.delta[b] = std::move(X);
    }
  } else {
    out.H = std::make_shared<Homology<K>>(ws.DCOH.d, near_window);
    auto PD = prebuilt_pd ? *prebuilt_pd : pd_dual_chain_iso(ws, cert);
    Homology<K> hCO(ws.COA.b, [&](Bideg tb) {
      return tb.wt >= 0 && tb.wt <= ws.W && tb.deg >= -1 && tb.deg <= tb.wt + 2;
    });
    auto PDind =
        induced_on_homology(PD, *out.H, hCO, ws.DCOH.d, ws.COA.b, false);
    // The dual-side operator is oriented so that the top-row isomorphism
    // intertwines the two sides strictly; with this library's conventions
    // the residual unit of the two duality transports is a global -1 here.
    auto BC = induced_on_homology(ws.COA.B.scaled(K(-1)), hCO, hCO, ws.COA.b,
                                  ws.COA.b, false, K(-1));
    for (const auto& [b, vec] : ws.DCOH.basis) {
      if (!window(b) || out.H->dim(b) == 0) continue;
      Bideg tb = b + Bideg{n, n};
      Bideg b1 = b + Bideg{1, 0};
      auto pd = PDind.at(b);
      if (rank(pd) != out.H->dim(b))
        throw consistency_error("dual duality map not invertible at " +
                                to_string(b));
      out.pd[b] = pd;
      SparseMat<K> bc = BC.count(tb)
                            ? BC.at(tb)
                            : SparseMat<K>(hCO.dim(tb + Bideg{1, 0}),
                                           hCO.dim(tb));
      auto up = bc * pd;
      const int dtgt = out.H->dim(b1);
      if (dtgt == 0) {
        if (!up.is_zero_matrix())
          throw consistency_error("dual Delta image misses the window at " +
                                  to_string(b));
        out.delta[b] = SparseMat<K>(0, out.H->dim(b));
        continue;
      }
      auto pdu = PDind.at(b1);
      if (rank(pdu) != dtgt)
        throw consistency_error("dual duality map not invertible at " +
                                to_string(b1));
      SparseMat<K> X(dtgt, out.H->dim(b));
      for (int c = 0; c < up.cols(); ++c) {
        std::vector<K> col(up.rows(), K(0));
        for (int r = 0; r < up.rows(); ++r) col[r] = up.get(r, c);
        auto s = solve(pdu, col);
        if (!s) throw consistency_error("dual Delta solve failed");
        for (int r = 0; r < dtgt; ++r)
          if (!is_zero((*s)[r])) X.set(r, c, (*s)[r]);
      }
      out.delta[b] = std::move(X);
    }
  }
  // Delta squares to zero wherever two consecutive blocks exist
  for (const auto& [b, m] : out.delta) {
    auto it = out.delta.find(b + Bideg{1, 0});
    if (it == out.delta.end()) continue;
    if (!(it->second * m).is_zero_matrix())
      throw consistency_error("Delta^2 nonzero at " + to_string(b));
  }
  return out;
}

// Chain-level cup product on classes for either cohomology model.
template <class K>
std::vector<K> class_cup(const Workspace<K>& ws, const BVStructure<K>& bv,
                         Bideg b1, const std::vector<K>& cls1, Bideg b2,
                         const std::vector<K>& cls2) {
  const auto& H = *bv.H;
  if (!H.has(b1) || !H.has(b2) || !H.has(b1 + b2)) return {};
  auto rep = [&](Bideg b, const std::vector<K>& cls) {
    const auto& slice = H.slice(b);
    std::vector<K> v(slice.reps.cols(), K(0));
    for (int k = 0; k < slice.dim() && k < static_cast<int>(cls.size()); ++k) {
      if (is_zero(cls[k])) continue;
      auto r = slice.reps.dense_row(k);
      for (std::size_t i = 0; i < v.size(); ++i) v[i] += cls[k] * r[i];
    }
    return v;
  };
  auto v1 = rep(b1, cls1);
  auto v2 = rep(b2, cls2);
  std::vector<K> prod = (bv.side == BVSide::algebra)
                            ? ws.COH.product(b1, v1, b2, v2)
                            : ws.DCOH.product(b1, v1, b2, v2);
  if (prod.empty()) prod.assign(H.slice(b1 + b2).reps.cols(), K(0));
  return H.slice(b1 + b2).class_of(prod);
}

// The seven-term second-order identity for Delta against the cup product,
// evaluated on every basis-class triple inside the window; returns the
// first failing triple if any.
template <class K>
struct TripleWitness {
  Bideg b1, b2, b3;
  int k1 = 0, k2 = 0, k3 = 0;
};

template <class K>
std::optional<TripleWitness<K>> second_order_check(const Workspace<K>& ws,
                                                   const BVStructure<K>& bv) {
  const auto& H = *bv.H;
  std::vector<std::pair<Bideg, int>> classes;
  for (const auto& [b, dim] : H.dim_table())
    if (bv.in_window(b))
      for (int k = 0; k < dim; ++k) classes.push_back({b, k});
  auto unit_cls = [&](Bideg b, int k) {
    std::vector<K> v(H.dim(b), K(0));
    v[k] = K(1);
    return v;
  };
  auto delta_of = [&](Bideg b, const std::vector<K>& cls) {
    auto it = bv.delta.find(b);
    if (it == bv.delta.end())
      return std::pair<Bideg, std::vector<K>>{b + Bideg{1, 0},
                                              std::vector<K>(H.dim(b + Bideg{1, 0}), K(0))};
    return std::pair<Bideg, std::vector<K>>{b + Bideg{1, 0},
                                            it->second.apply(cls)};
  };
  for (const auto& [b1, k1] : classes)
    for (const auto& [b2, k2] : classes)
      for (const auto& [b3, k3] : classes) {
        Bideg b12 = b1 + b2, b123 = b1 + b2 + b3;
        const Bideg up{1, 0};
        if (!bv.in_window(b12) || !bv.in_window(b1 + b3) ||
            !bv.in_window(b2 + b3) || !bv.in_window(b123) ||
            !bv.in_window(b123 + up) || !bv.in_window(b12 + up) ||
            !bv.in_window(b1 + b3 + up) || !bv.in_window(b2 + b3 + up) ||
            !bv.in_window(b1 + up) || !bv.in_window(b2 + up) ||
            !bv.in_window(b3 + up))
          continue;
        long da = -b1.deg, db = -b2.deg, dc = -b3.deg;
        auto a = unit_cls(b1, k1);
        auto b = unit_cls(b2, k2);
        auto c = unit_cls(b3, k3);
        auto ab = class_cup(ws, bv, b1, a, b2, b);
        auto ac = class_cup(ws, bv, b1, a, b3, c);
        auto bc = class_cup(ws, bv, b2, b, b3, c);
        auto abc = class_cup(ws, bv, b12, ab, b3, c);
        auto [tb, d_abc] = delta_of(b123, abc);
        auto [t1b, d_ab] = delta_of(b12, ab);
        auto [t2b, d_ac] = delta_of(b1 + b3, ac);
        auto [t3b, d_bc] = delta_of(b2 + b3, bc);
        auto [t4b, d_a] = delta_of(b1, a);
        auto [t5b, d_b] = delta_of(b2, b);
        auto [t6b, d_c] = delta_of(b3, c);
        auto term1 = class_cup(ws, bv, t1b, d_ab, b3, c);
        auto term2 = class_cup(ws, bv, t2b, d_ac, b2, b);
        auto term3 = class_cup(ws, bv, b1, a, t3b, d_bc);
        auto term4a = class_cup(ws, bv, t4b, d_a, b2, b);
        auto term4 = class_cup(ws, bv, t4b + b2, term4a, b3, c);
        auto term5a = class_cup(ws, bv, b1, a, t5b, d_b);
        auto term5 = class_cup(ws, bv, b1 + t5b, term5a, b3, c);
        auto term6a = class_cup(ws, bv, b1, a, b2, b);
        auto term6 = class_cup(ws, bv, b12, term6a, t6b, d_c);
        auto sgn = [](long e) { return (detail::par(e) == 0) ? K(1) : K(-1); };
        std::vector<K> res = d_abc;
        auto acc = [&](const std::vector<K>& t, const K& c) {
          for (std::size_t i = 0; i < res.size() && i < t.size(); ++i)
            res[i] += c * t[i];
        };
        acc(term1, K(-1));
        acc(term2, -sgn(db * dc));
        acc(term3, -sgn(da));
        acc(term4, K(1));
        acc(term5, sgn(da));
        acc(term6, sgn(da + db));
        for (const auto& v : res)
          if (!is_zero(v)) return TripleWitness<K>{b1, b2, b3, k1, k2, k3};
      }
  return std::nullopt;
}

// Gerstenhaber bracket induced by Delta through the deviation formula.
template <class K>
std::vector<K> deviation_bracket(const Workspace<K>& ws,
                                 const BVStructure<K>& bv, Bideg b1,
                                 const std::vector<K>& a, Bideg b2,
                                 const std::vector<K>& b) {
  const auto& H = *bv.H;
  long da = -b1.deg;
  auto delta_of = [&](Bideg bb, const std::vector<K>& cls) {
    auto it = bv.delta.find(bb);
    if (it == bv.delta.end())
      return std::vector<K>(H.dim(bb + Bideg{1, 0}), K(0));
    return it->second.apply(cls);
  };
  auto ab = class_cup(ws, bv, b1, a, b2, b);
  auto d_ab = delta_of(b1 + b2, ab);
  auto d_a = delta_of(b1, a);
  auto d_b = delta_of(b2, b);
  auto t1 = class_cup(ws, bv, b1 + Bideg{1, 0}, d_a, b2, b);
  auto t2 = class_cup(ws, bv, b1, a, b2 + Bideg{1, 0}, d_b);
  K s = (detail::par(da + 1) == 0) ? K(1) : K(-1);
  K sa = (detail::par(da) == 0) ? K(1) : K(-1);
  std::vector<K> out(d_ab.size(), K(0));
  for (std::size_t i = 0; i < out.size(); ++i)
    out[i] = s * (d_ab[i] - t1[i] - sa * t2[i]);
  return out;
}

}  // namespace koszul
