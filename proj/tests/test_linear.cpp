#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "koszul/sparse.hpp"
#include "koszul/subspace.hpp"
#include "oracle_dense.hpp"

using namespace koszul;
using Q = Rational;

namespace {

SparseMat<Q> mat(int rows, int cols, std::vector<std::vector<long>> entries) {
  SparseMat<Q> m(rows, cols);
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j)
      if (entries[i][j] != 0) m.set(i, j, Q(entries[i][j]));
  return m;
}

}  // namespace

TEST_CASE("rank basics") {
  CHECK(rank(SparseMat<Q>::identity(2)) == 2);
  CHECK(rank(SparseMat<Q>(3, 4)) == 0);
  CHECK(rank(mat(2, 2, {{1, 1}, {2, 2}})) == 1);
}

TEST_CASE("kernel basis is RREF and annihilated") {
  auto m = mat(1, 2, {{1, 1}});
  auto k = kernel_basis(m);
  REQUIRE(k.rows() == 1);
  CHECK(k.get(0, 0) == Q(1));
  CHECK(k.get(0, 1) == Q(-1));

  CHECK(kernel_basis(SparseMat<Q>::identity(4)).rows() == 0);

  auto m2 = mat(1, 3, {{1, 2, 3}});
  auto k2 = kernel_basis(m2);
  REQUIRE(k2.rows() == 2);
  for (int i = 0; i < k2.rows(); ++i) {
    auto img = m2.apply(k2.dense_row(i));
    for (const auto& v : img) CHECK(is_zero(v));
  }
}

TEST_CASE("solve returns pinned particular solutions") {
  auto id = SparseMat<Q>::identity(3);
  std::vector<Q> e1{Q(1), Q(0), Q(0)};
  auto s = solve(id, e1);
  REQUIRE(s);
  CHECK(*s == e1);

  auto m = mat(1, 2, {{1, 1}});
  auto s2 = solve(m, {Q(1)});
  REQUIRE(s2);
  CHECK((*s2)[0] == Q(1));  // free variable pinned to 0
  CHECK((*s2)[1] == Q(0));

  auto z = SparseMat<Q>(1, 1);
  CHECK(!solve(z, {Q(1)}));
}

TEST_CASE("solve certifies by multiplication on random systems") {
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<int> val(-4, 4);
  for (int trial = 0; trial < 25; ++trial) {
    int n = 3 + static_cast<int>(rng() % 3);
    int m = 3 + static_cast<int>(rng() % 3);
    SparseMat<Q> a(n, m);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < m; ++j)
        if (rng() % 2) a.set(i, j, Q(val(rng)));
    std::vector<Q> x(m);
    for (auto& v : x) v = Q(val(rng));
    auto b = a.apply(x);
    auto s = solve(a, b);
    REQUIRE(s);
    CHECK(a.apply(*s) == b);
  }
}

TEST_CASE("rank + nullity and oracle agreement on random matrices") {
  std::mt19937_64 rng(11);
  std::uniform_int_distribution<int> val(-5, 5);
  for (int trial = 0; trial < 30; ++trial) {
    int n = 2 + static_cast<int>(rng() % 5);
    int m = 2 + static_cast<int>(rng() % 5);
    SparseMat<Q> a(n, m);
    oracle::DenseMat<Q> d(n, std::vector<Q>(m, Q(0)));
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < m; ++j)
        if (rng() % 3) {
          int v = val(rng);
          a.set(i, j, Q(v));
          d[i][j] = Q(v);
        }
    int r = rank(a);
    CHECK(r == oracle::dense_rank(d));
    CHECK(r + kernel_basis(a).rows() == m);
  }
}

TEST_CASE("ranks agree over Q and a large prime field") {
  std::mt19937_64 rng(13);
  std::uniform_int_distribution<int> val(-6, 6);
  const std::uint64_t p = 1000003;
  for (int trial = 0; trial < 20; ++trial) {
    int n = 2 + static_cast<int>(rng() % 5);
    int m = 2 + static_cast<int>(rng() % 5);
    SparseMat<Q> a(n, m);
    SparseMat<Fp> b(n, m);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < m; ++j)
        if (rng() % 2) {
          int v = val(rng);
          a.set(i, j, Q(v));
          b.set(i, j, Fp(v, p));
        }
    CHECK(rank(a) == rank(b));
  }
}

TEST_CASE("subspace intersection") {
  auto span12 = Subspace<Q>(3, mat(2, 3, {{1, 0, 0}, {0, 1, 0}}));
  auto diag = Subspace<Q>(3, mat(1, 3, {{1, 1, 0}}));
  auto inter = subspace_intersection(span12, diag);
  CHECK(inter.dim() == 1);
  CHECK(inter == diag);

  CHECK(subspace_intersection(span12, span12) == span12);

  // dimension formula on random subspaces of a 5-dim space
  std::mt19937_64 rng(17);
  std::uniform_int_distribution<int> val(-3, 3);
  for (int trial = 0; trial < 10; ++trial) {
    SparseMat<Q> ra(3, 5), rb(3, 5);
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 5; ++j) {
        if (rng() % 2) ra.set(i, j, Q(val(rng)));
        if (rng() % 2) rb.set(i, j, Q(val(rng)));
      }
    Subspace<Q> a(5, ra), b(5, rb);
    auto s = subspace_sum(a, b);
    auto i = subspace_intersection(a, b);
    CHECK(i.dim() == a.dim() + b.dim() - s.dim());
    CHECK(a.contains(i));
    CHECK(b.contains(i));
  }
}

TEST_CASE("quotient data") {
  // r = 0: complement is everything, projection is the identity
  auto q0 = quotient_data<Q>(3, Subspace<Q>(3));
  CHECK(q0.complement_cols == std::vector<int>{0, 1, 2});
  CHECK(q0.projection == SparseMat<Q>::identity(3));

  // ambient dim 2, r = span{e1 - e2}: complement {e2}?  Pivot of the RREF
  // row (1,-1) is column 0, so the complement is column 1 and e1 projects
  // to e2's coordinate.
  auto r = Subspace<Q>(2, mat(1, 2, {{1, -1}}));
  auto q = quotient_data<Q>(2, r);
  REQUIRE(q.complement_cols == std::vector<int>{1});
  CHECK(q.projection.get(0, 0) == Q(1));
  CHECK(q.projection.get(0, 1) == Q(1));

  // r = ambient: zero complement
  auto qf = quotient_data<Q>(2, Subspace<Q>::full(2));
  CHECK(qf.complement_cols.empty());

  // projection . inclusion = identity; kernel of projection = r
  std::mt19937_64 rng(23);
  std::uniform_int_distribution<int> val(-3, 3);
  for (int trial = 0; trial < 10; ++trial) {
    SparseMat<Q> rr(2, 5);
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 5; ++j)
        if (rng() % 2) rr.set(i, j, Q(val(rng)));
    Subspace<Q> rs(5, rr);
    auto qd = quotient_data<Q>(5, rs);
    const int m = static_cast<int>(qd.complement_cols.size());
    CHECK(m == 5 - rs.dim());
    SparseMat<Q> incl(5, m);
    for (int k = 0; k < m; ++k) incl.set(qd.complement_cols[k], k, Q(1));
    CHECK(qd.projection * incl == SparseMat<Q>::identity(m));
    CHECK(Subspace<Q>(5, kernel_basis(qd.projection)) == rs);
  }
}
