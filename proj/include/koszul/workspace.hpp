#pragma once

#include "koszul/comparison.hpp"

namespace koszul {

// Everything the verification pipelines need for one quadratic datum, built
// once with consistent caps.  W is the report window on homology-side
// weights; the slices run to W + (top dual weight) so that every window
// computation is complete.
template <class K>
struct Workspace {
  QuadraticDatum<K> datum;
  int W = 0;
  int WA = 0;      // slice cap
  int n_top = 0;   // top weight of the dual coalgebra within the cap

  AlgebraSlice<K> A;
  CoalgebraSlice<K> C;
  DualAlgebraSlice<K> D;
  GradedAlgebra<K> SA;
  GradedAlgebra<K> SD;
  CobarAlgebra<K> Om;

  KoszulHomologyComplex<K> KA;
  KoszulCohomologyComplex<K> COH;
  HochschildChains<K> CHA;
  HochschildChains<K> CHOm;
  HochschildChains<K> CHDual;
  CoalgebraChains<K> COA;
  DualCohomologyComplex<K> DCOH;

  // comparison maps
  ChainMap<K> phi1;  // K(A) -> chains of A
  ChainMap<K> phi2;  // coalgebra model -> K(A)
  ChainMap<K> q2;    // coalgebra model -> chains of Omega
  ChainMap<K> p1;    // chains of Omega -> chains of A
  ChainMap<K> p2;    // chains of Omega -> coalgebra model
  ChainMap<K> P;     // dual cohomology model -> cohomology model
};

template <class K>
Workspace<K> build_workspace(const QuadraticDatum<K>& datum, int W,
                             bool with_big_models = true) {
  Workspace<K> out;
  out.datum = datum;
  out.W = W;
  {
    auto probe = build_dual_coalgebra(datum, W);
    out.n_top = probe.top_weight();
  }
  out.WA = W + out.n_top;
  out.A = build_algebra(datum, out.WA);
  out.C = build_dual_coalgebra(datum, out.WA);
  out.D = build_dual_algebra(datum, out.WA, out.C);
  out.SA = as_graded_algebra(out.A);
  out.SD = as_graded_algebra(out.D);
  out.Om = build_cobar(out.C, out.WA);
  out.KA = build_koszul_complex(out.A, out.C);
  out.COH = build_cohomology_complex(out.A, out.D);
  out.DCOH = build_dual_cohomology_complex(out.Om, out.D, out.C);
  out.P = map_dual_to_cohomology(out.DCOH, out.COH);
  if (with_big_models) {
    out.CHA = hochschild_chains(out.SA, W);
    out.CHOm = hochschild_chains(out.Om.omega, W);
    out.CHDual = hochschild_chains(out.SD, W);
    out.COA = build_coalgebra_chains(out.C, out.D, out.CHDual, W);
    out.phi1 = map_koszul_to_chains(out.KA, out.CHA);
    out.phi2 = map_coalgebra_to_koszul(out.COA, out.KA);
    out.q2 = map_coalgebra_to_big(out.COA, out.Om, out.CHOm);
    out.p1 = map_big_to_chains(out.CHOm, out.Om, out.A, out.CHA);
    out.p2 = map_big_to_coalgebra(out.CHOm, out.Om, out.COA);
  }
  return out;
}

// The retraction is a one-sided inverse: p2 . q2 = id.
template <class K>
bool retraction_is_identity(const Workspace<K>& ws) {
  auto comp = compose(ws.p2, ws.q2);
  for (const auto& [b, vec] : ws.COA.basis) {
    auto m = comp.at(b);
    if (!(m == SparseMat<K>::identity(static_cast<int>(vec.size()))))
      return false;
  }
  return true;
}

// The square p1 . q2 = phi1 . phi2 commutes at chain level.
template <class K>
bool comparison_square_commutes(const Workspace<K>& ws) {
  auto lhs = compose(ws.p1, ws.q2);
  auto rhs = compose(ws.phi1, ws.phi2);
  for (const auto& [b, vec] : ws.COA.basis)
    if (!(lhs.at(b) == rhs.at(b))) return false;
  return true;
}

// Bigraded comparison of the three homology models and the transported
// Connes operators, within the report window.
struct CanIsoReport {
  bool dims_match = true;
  bool connes_match = true;
  std::optional<Bideg> first_mismatch;
};

template <class K>
CanIsoReport verify_canonical_isomorphisms(const Workspace<K>& ws,
                                           int deg_cap, int wt_cap) {
  CanIsoReport rep;
  Homology<K> hK(ws.KA.d, [&](Bideg b) {
    return b.wt <= wt_cap && b.deg <= deg_cap + 1;
  });
  Homology<K> hA(ws.CHA.b, [&](Bideg b) {
    return b.wt <= wt_cap && b.deg <= deg_cap + 1;
  });
  Homology<K> hC(ws.COA.b, [&](Bideg b) {
    return b.wt <= wt_cap && b.deg <= deg_cap + 1;
  });
  for (int deg = 0; deg <= deg_cap; ++deg)
    for (int wt = 0; wt <= wt_cap; ++wt) {
      Bideg b{deg, wt};
      if (!(hK.dim(b) == hA.dim(b) && hK.dim(b) == hC.dim(b))) {
        rep.dims_match = false;
        if (!rep.first_mismatch) rep.first_mismatch = b;
      }
    }
  if (!rep.dims_match) return rep;
  // induced isomorphisms and the Connes intertwining
  auto f1 = induced_on_homology(ws.phi1, hK, hA, ws.KA.d, ws.CHA.b, false);
  auto f2 = induced_on_homology(ws.phi2, hC, hK, ws.COA.b, ws.KA.d, false);
  auto BA = induced_on_homology(ws.CHA.B, hA, hA, ws.CHA.b, ws.CHA.b, false);
  auto BC = induced_on_homology(ws.COA.B, hC, hC, ws.COA.b, ws.COA.b, false);
  for (int deg = 0; deg <= deg_cap; ++deg)
    for (int wt = 0; wt <= wt_cap; ++wt) {
      Bideg b{deg, wt};
      if (hC.dim(b) == 0 && hC.dim(b + Bideg{1, 0}) == 0) continue;
      if (b.deg + 1 > deg_cap + 1 || hA.dim(b + Bideg{1, 0}) != hC.dim(b + Bideg{1, 0}))
        continue;
      // T = f1 . f2 on homology intertwines the two Connes operators
      auto T = f1.count(b) && f2.count(b) ? f1.at(b) * f2.at(b)
                                          : SparseMat<K>(hA.dim(b), hC.dim(b));
      Bideg b1 = b + Bideg{1, 0};
      SparseMat<K> T1 = (f1.count(b1) && f2.count(b1))
                            ? f1.at(b1) * f2.at(b1)
                            : SparseMat<K>(hA.dim(b1), hC.dim(b1));
      auto lhs = BA.count(b) ? BA.at(b) * T : SparseMat<K>(hA.dim(b1), hC.dim(b));
      auto rhs = BC.count(b) ? T1 * BC.at(b) : SparseMat<K>(hA.dim(b1), hC.dim(b));
      if (!(lhs == rhs)) {
        rep.connes_match = false;
        if (!rep.first_mismatch) rep.first_mismatch = b;
        return rep;
      }
    }
  return rep;
}

}  // namespace koszul
