#pragma once

#include <functional>
#include <map>
#include <memory>
#include <vector>

#include "koszul/bigraded.hpp"
#include "koszul/quadratic.hpp"

namespace koszul {

// A finite-per-bidegree augmented (differential) bigraded algebra with a
// pinned basis: the shared substrate for bar constructions, Hochschild
// chains and cochains.  The unit spans bidegree (0,0); everything else is
// the augmentation ideal.
template <class K>
struct GradedAlgebra {
  std::unique_ptr<BigradedFamily> fam = std::make_unique<BigradedFamily>();
  // product blocks: (b1, b2) -> matrix dim(b1+b2) x dim(b1)*dim(b2)
  std::map<std::pair<Bideg, Bideg>, SparseMat<K>> mult;
  // optional differential of complete degree (-1, 0): blocks per bidegree
  std::map<Bideg, SparseMat<K>> diff;
  std::string name;
  // weights with |wt| <= wt_cap are fully represented: a missing product
  // block inside the cap means the product is zero, outside it is unknown
  int wt_cap = 0;

  int dim(Bideg b) const { return fam->dim(b); }

  bool has_diff() const { return !diff.empty(); }

  struct Elem {
    Bideg b;
    int k;
    friend auto operator<=>(const Elem&, const Elem&) = default;
  };

  Elem unit() const { return {{0, 0}, 0}; }

  using Expansion = std::vector<std::pair<Elem, K>>;

  // whether the product of elements at these bidegrees is fully
  // represented inside the cap
  bool product_in_cap(Bideg b1, Bideg b2) const {
    return std::abs((b1 + b2).wt) <= wt_cap;
  }

  Expansion product(const Elem& x, const Elem& y) const {
    auto it = mult.find({x.b, y.b});
    if (it == mult.end()) {
      if (std::abs((x.b + y.b).wt) <= wt_cap) return {};
      throw consistency_error("product block missing in " + name + " at " +
                              to_string(x.b) + "*" + to_string(y.b));
    }
    Expansion out;
    const int dy = dim(y.b);
    const Bideg tb = x.b + y.b;
    for (int r = 0; r < it->second.rows(); ++r) {
      K v = it->second.get(r, x.k * dy + y.k);
      if (!is_zero(v)) out.push_back({Elem{tb, r}, v});
    }
    return out;
  }

  Expansion differential(const Elem& x) const {
    Expansion out;
    auto it = diff.find(x.b);
    if (it == diff.end()) return out;
    const Bideg tb = x.b + Bideg{-1, 0};
    for (int r = 0; r < it->second.rows(); ++r) {
      K v = it->second.get(r, x.k);
      if (!is_zero(v)) out.push_back({Elem{tb, r}, v});
    }
    return out;
  }

  std::string label(const Elem& x) const {
    return fam->labels(x.b)[x.k];
  }
};

// View of an AlgebraSlice as a graded algebra concentrated in degree zero.
template <class K>
GradedAlgebra<K> as_graded_algebra(const AlgebraSlice<K>& A,
                                   std::string name = "A") {
  GradedAlgebra<K> out;
  out.name = std::move(name);
  out.wt_cap = A.W;
  for (int n = 0; n <= A.W; ++n) {
    if (A.dim(n) == 0) continue;
    std::vector<std::string> labels;
    for (int k = 0; k < A.dim(n); ++k) labels.push_back(A.label(n, k));
    out.fam->set_basis({0, n}, std::move(labels));
  }
  for (const auto& [key, m] : A.mult) {
    auto [i, j] = key;
    if (A.dim(i) == 0 || A.dim(j) == 0 || A.dim(i + j) == 0) continue;
    out.mult[{Bideg{0, i}, Bideg{0, j}}] = m;
  }
  return out;
}

// View of the Koszul dual algebra: weight n sits in complete degree
// (-n, -n); an optional differential (linear-quadratic case) is carried
// along with complete degree (-1, -1) folded into the diagonal as (-1,0)
// relative to the stored grading -- the dual slice of a quadratic datum has
// none, and the Chevalley-Eilenberg route does not pass through here.
template <class K>
GradedAlgebra<K> as_graded_algebra(const DualAlgebraSlice<K>& D,
                                   std::string name = "A!") {
  if (D.diff)
    throw consistency_error(
        "dual algebra with differential is not supported as a graded-algebra view");
  GradedAlgebra<K> out;
  out.name = std::move(name);
  out.wt_cap = D.alg.W;
  const auto& A = D.alg;
  for (int n = 0; n <= A.W; ++n) {
    if (A.dim(n) == 0) continue;
    std::vector<std::string> labels;
    for (int k = 0; k < A.dim(n); ++k) labels.push_back(A.label(n, k));
    out.fam->set_basis({-n, -n}, std::move(labels));
  }
  for (const auto& [key, m] : A.mult) {
    auto [i, j] = key;
    if (A.dim(i) == 0 || A.dim(j) == 0 || A.dim(i + j) == 0) continue;
    out.mult[{Bideg{-i, -i}, Bideg{-j, -j}}] = m;
  }
  return out;
}

}  // namespace koszul
