#pragma once
#include <functional>

#include <map>
#include <stdexcept>
#include <vector>

#include "koszul/bigraded.hpp"

namespace koszul {

// Homology of a square-zero family at one bidegree: pinned cycle
// representatives plus a solver expressing any cycle in them modulo
// boundaries.
template <class K>
struct HomologySlice {
  SparseMat<K> reps;       // one row per class, RREF after boundary reduction
  Rref<K> boundaries;      // RREF of the image of the incoming differential
  std::vector<int> rep_pivots;

  int dim() const { return reps.rows(); }

  // Coordinates of a cycle's class in the representative basis.
  std::vector<K> class_of(const std::vector<K>& cycle) const {
    std::vector<K> v = boundaries.reduce(cycle);
    std::vector<K> coords(dim(), K(0));
    for (int r = 0; r < dim(); ++r) {
      K c = v[rep_pivots[r]];
      coords[r] = c;
      if (is_zero(c)) continue;
      for (const auto& [j, x] : reps.row(r)) v[j] -= c * x;
    }
    for (const auto& x : v)
      if (!is_zero(x))
        throw std::domain_error("class_of: vector is not a cycle mod boundaries");
    return coords;
  }
};

template <class K>
class Homology {
 public:
  Homology() = default;
  // d must satisfy d.shift() == (-1, 0) (or (+1, 0) for cohomologically
  // indexed data) and d^2 = 0.  The optional filter restricts the
  // bidegrees at which slices are computed.
  explicit Homology(const ChainMap<K>& d,
                    std::function<bool(Bideg)> filter = nullptr)
      : family_(d.source()) {
    const Bideg s = d.shift();
    for (const auto& [b, labels] : family_->support()) {
      if (filter && !filter(b)) continue;
      auto z = kernel_basis(d.at(b));                    // cycles
      auto img = rref(d.at(b - s).transpose());          // boundaries as rows
      HomologySlice<K> slice;
      slice.boundaries = img;
      // reduce cycle basis modulo boundaries, then RREF to pin representatives
      SparseMat<K> reduced(z.rows(), z.cols());
      for (int i = 0; i < z.rows(); ++i) {
        auto v = img.reduce(z.dense_row(i));
        SparseRow<K> row;
        for (int j = 0; j < z.cols(); ++j)
          if (!is_zero(v[j])) row.emplace_back(j, v[j]);
        reduced.set_row(i, std::move(row));
      }
      auto rr = rref(reduced);
      slice.reps = rr.mat;
      slice.rep_pivots = rr.pivots;
      slices_[b] = std::move(slice);
    }
  }

  const BigradedFamily* family() const { return family_; }

  int dim(Bideg b) const {
    auto it = slices_.find(b);
    return it == slices_.end() ? 0 : it->second.dim();
  }

  const HomologySlice<K>& slice(Bideg b) const {
    auto it = slices_.find(b);
    if (it == slices_.end())
      throw std::out_of_range("no homology slice at " + to_string(b));
    return it->second;
  }

  bool has(Bideg b) const { return slices_.count(b) > 0; }

  std::map<Bideg, int> dim_table() const {
    std::map<Bideg, int> t;
    for (const auto& [b, s] : slices_)
      if (s.dim() > 0) t[b] = s.dim();
    return t;
  }

  int total_dim() const {
    int n = 0;
    for (const auto& [b, s] : slices_) n += s.dim();
    return n;
  }

  std::vector<K> representative(Bideg b, int k) const {
    return slice(b).reps.dense_row(k);
  }

 private:
  const BigradedFamily* family_ = nullptr;
  std::map<Bideg, HomologySlice<K>> slices_;
};

// Matrix of the map induced on homology by a chain map f, per bidegree of
// the source homology.  `sign` as in chain_map_defect; the defect check can
// be skipped when the caller has already asserted it.
template <class K>
std::map<Bideg, SparseMat<K>> induced_on_homology(
    const ChainMap<K>& f, const Homology<K>& hs, const Homology<K>& ht,
    const ChainMap<K>& d_src, const ChainMap<K>& d_tgt, bool check_chain_map,
    const K& sign = K(1)) {
  if (check_chain_map) {
    auto defect = chain_map_defect(f, d_src, d_tgt, sign);
    if (defect)
      throw std::domain_error("not a chain map at " + to_string(*defect));
  }
  std::map<Bideg, SparseMat<K>> out;
  for (const auto& [b, labels] : f.source()->support()) {
    int hd = hs.dim(b);
    int hd_t = ht.dim(b + f.shift());
    SparseMat<K> m(hd_t, hd);
    if (hd > 0 && ht.has(b + f.shift())) {
      auto fb = f.at(b);
      for (int k = 0; k < hd; ++k) {
        auto img = fb.apply(hs.representative(b, k));
        auto coords = ht.slice(b + f.shift()).class_of(img);
        for (int r = 0; r < hd_t; ++r)
          if (!is_zero(coords[r])) m.set(r, k, coords[r]);
      }
    }
    if (hd > 0 || hd_t > 0) out[b] = std::move(m);
  }
  return out;
}

// Given a quasi-isomorphism f and a cycle z in the target at bidegree b,
// produce a cycle w in the source with f(w) - z a boundary, together with
// the bounding element u.  Solved as one linear system in (w, u).
template <class K>
struct LiftResult {
  std::vector<K> cycle;     // w
  std::vector<K> bounding;  // u with f(w) - z = d_tgt(u)
};

template <class K>
LiftResult<K> lift_through_quasi_iso(const ChainMap<K>& f,
                                     const ChainMap<K>& d_src,
                                     const ChainMap<K>& d_tgt, Bideg b_src,
                                     const std::vector<K>& z) {
  const Bideg b_tgt = b_src + f.shift();
  const int ns = f.source()->dim(b_src);
  const int nt = f.target()->dim(b_tgt);
  const int nu = f.target()->dim(b_tgt + Bideg{1, 0});
  const int nd = f.source()->dim(b_src + d_src.shift());
  if (static_cast<int>(z.size()) != nt)
    throw std::invalid_argument("lift: cycle length");
  // rows: [ f(w) - d_tgt(u) = z ; d_src(w) = 0 ], unknowns (w, u)
  SparseMat<K> top = SparseMat<K>::hstack(
      f.at(b_src), d_tgt.at(b_tgt + Bideg{1, 0}).scaled(K(-1)));
  SparseMat<K> bottom =
      SparseMat<K>::hstack(d_src.at(b_src), SparseMat<K>(nd, nu));
  SparseMat<K> sys = SparseMat<K>::vstack(top, bottom);
  std::vector<K> rhs = z;
  rhs.resize(nt + nd, K(0));
  auto sol = solve(sys, rhs);
  if (!sol)
    throw std::domain_error("lift_through_quasi_iso: no solution (map is not a quasi-isomorphism here)");
  LiftResult<K> out;
  out.cycle.assign(sol->begin(), sol->begin() + ns);
  out.bounding.assign(sol->begin() + ns, sol->end());
  return out;
}

}  // namespace koszul
