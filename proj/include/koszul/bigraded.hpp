#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "koszul/sparse.hpp"

namespace koszul {

// Complete degree (degree, weight).  Differentials have complete degree
// (-1, 0): they preserve the weight and lower the degree by one.
struct Bideg {
  int deg = 0;
  int wt = 0;
  friend auto operator<=>(const Bideg&, const Bideg&) = default;
  Bideg operator+(const Bideg& o) const { return {deg + o.deg, wt + o.wt}; }
  Bideg operator-(const Bideg& o) const { return {deg - o.deg, wt - o.wt}; }
};

inline std::string to_string(const Bideg& b) {
  return "(" + std::to_string(b.deg) + "," + std::to_string(b.wt) + ")";
}

// Finite-dimensional vector space with a pinned, labeled basis at every
// bidegree; zero outside the stored support.
class BigradedFamily {
 public:
  void set_basis(Bideg b, std::vector<std::string> labels) {
    if (labels.empty()) return;
    basis_[b] = std::move(labels);
  }

  int dim(Bideg b) const {
    auto it = basis_.find(b);
    return it == basis_.end() ? 0 : static_cast<int>(it->second.size());
  }

  const std::vector<std::string>& labels(Bideg b) const {
    static const std::vector<std::string> empty;
    auto it = basis_.find(b);
    return it == basis_.end() ? empty : it->second;
  }

  const std::map<Bideg, std::vector<std::string>>& support() const {
    return basis_;
  }

  int total_dim() const {
    int n = 0;
    for (const auto& [b, v] : basis_) n += static_cast<int>(v.size());
    return n;
  }

 private:
  std::map<Bideg, std::vector<std::string>> basis_;
};

// A family of matrices between two bigraded families, one per source
// bidegree, all of the same complete degree.
template <class K>
class ChainMap {
 public:
  ChainMap() = default;
  ChainMap(const BigradedFamily* src, const BigradedFamily* tgt, Bideg shift)
      : src_(src), tgt_(tgt), shift_(shift) {}

  const BigradedFamily* source() const { return src_; }
  const BigradedFamily* target() const { return tgt_; }
  Bideg shift() const { return shift_; }

  void set(Bideg b, SparseMat<K> m) {
    if (m.cols() != src_->dim(b) || m.rows() != tgt_->dim(b + shift_))
      throw std::invalid_argument("chain map block shape at " + to_string(b));
    if (!m.is_zero_matrix()) mats_[b] = std::move(m);
  }

  SparseMat<K> at(Bideg b) const {
    auto it = mats_.find(b);
    if (it != mats_.end()) return it->second;
    return SparseMat<K>(tgt_->dim(b + shift_), src_->dim(b));
  }

  const std::map<Bideg, SparseMat<K>>& blocks() const { return mats_; }

  // g after f; shifts add.
  friend ChainMap compose(const ChainMap& g, const ChainMap& f) {
    if (f.tgt_ != g.src_)
      throw std::invalid_argument("chain map composition mismatch");
    ChainMap out(f.src_, g.tgt_, f.shift_ + g.shift_);
    for (const auto& [b, m] : f.mats_) {
      auto gm = g.at(b + f.shift_);
      if (gm.rows() == 0) continue;
      out.set(b, gm * m);
    }
    return out;
  }

  friend ChainMap operator+(const ChainMap& a, const ChainMap& b) {
    if (a.src_ != b.src_ || a.tgt_ != b.tgt_ || !(a.shift_ == b.shift_))
      throw std::invalid_argument("chain map sum mismatch");
    ChainMap out(a.src_, a.tgt_, a.shift_);
    std::map<Bideg, bool> keys;
    for (const auto& [k, m] : a.mats_) keys[k] = true;
    for (const auto& [k, m] : b.mats_) keys[k] = true;
    for (const auto& [k, _] : keys) out.set(k, a.at(k) + b.at(k));
    return out;
  }

  ChainMap scaled(const K& c) const {
    ChainMap out(src_, tgt_, shift_);
    for (const auto& [k, m] : mats_) out.set(k, m.scaled(c));
    return out;
  }

  bool is_zero() const { return mats_.empty(); }

 private:
  const BigradedFamily* src_ = nullptr;
  const BigradedFamily* tgt_ = nullptr;
  Bideg shift_{};
  std::map<Bideg, SparseMat<K>> mats_;
};

template <class K>
struct SquareZeroReport {
  bool ok = true;
  Bideg failure{};
  std::vector<K> witness;  // source vector with d(d(v)) != 0
};

template <class K>
SquareZeroReport<K> check_square_zero(const ChainMap<K>& d) {
  SquareZeroReport<K> rep;
  for (const auto& [b, m] : d.blocks()) {
    auto dd = d.at(b + d.shift()) * m;
    if (!dd.is_zero_matrix()) {
      rep.ok = false;
      rep.failure = b;
      // first basis vector whose image under d^2 is nonzero
      for (int c = 0; c < dd.cols(); ++c) {
        bool hit = false;
        for (int r = 0; r < dd.rows() && !hit; ++r)
          if (!is_zero(dd.get(r, c))) hit = true;
        if (hit) {
          rep.witness.assign(dd.cols(), K(0));
          rep.witness[c] = K(1);
          break;
        }
      }
      return rep;
    }
  }
  return rep;
}

// f d_src = sign . d_tgt f at every bidegree (sign = +1 for chain maps of
// even degree, -1 for odd ones such as the Connes operator).
template <class K>
std::optional<Bideg> chain_map_defect(const ChainMap<K>& f,
                                      const ChainMap<K>& d_src,
                                      const ChainMap<K>& d_tgt,
                                      const K& sign = K(1)) {
  for (const auto& [b, v] : f.source()->support()) {
    Bideg bs = b;
    auto lhs = f.at(bs + d_src.shift()) * d_src.at(bs);
    auto rhs = (d_tgt.at(bs + f.shift()) * f.at(bs)).scaled(sign);
    if (!(lhs == rhs)) return bs;
  }
  return std::nullopt;
}

}  // namespace koszul
