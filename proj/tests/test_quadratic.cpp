#include <catch2/catch_amalgamated.hpp>

#include "datum_helpers.hpp"
#include "koszul/quadratic.hpp"

using namespace koszul;
using examples::Q;

TEST_CASE("algebra slice dimensions") {
  auto plane = examples::polynomial(2);
  auto A = build_algebra(plane, 3);
  CHECK(A.dims() == std::vector<int>{1, 2, 3, 4});

  auto free2 = examples::free_algebra(2);
  auto F = build_algebra(free2, 3);
  CHECK(F.dims() == std::vector<int>{1, 2, 4, 8});

  auto dn = examples::dual_numbers();
  auto D = build_algebra(dn, 4);
  CHECK(D.dims() == std::vector<int>{1, 1, 0, 0, 0});
}

TEST_CASE("multiplication is associative within the cap") {
  for (auto datum : {examples::polynomial(2), examples::free_algebra(2)}) {
    auto A = build_algebra(datum, 4);
    for (int i = 0; i <= 2; ++i)
      for (int j = 0; i + j <= 3; ++j)
        for (int k = 0; i + j + k <= 4; ++k)
          for (int a = 0; a < A.dim(i); ++a)
            for (int b = 0; b < A.dim(j); ++b)
              for (int c = 0; c < A.dim(k); ++c) {
                // (ab)c
                auto ab = A.product(i, a, j, b);
                std::vector<Q> lhs(A.dim(i + j + k), Q(0));
                for (int t = 0; t < A.dim(i + j); ++t) {
                  if (is_zero(ab[t])) continue;
                  auto tc = A.product(i + j, t, k, c);
                  for (int r = 0; r < A.dim(i + j + k); ++r)
                    lhs[r] += ab[t] * tc[r];
                }
                // a(bc)
                auto bc = A.product(j, b, k, c);
                std::vector<Q> rhs(A.dim(i + j + k), Q(0));
                for (int t = 0; t < A.dim(j + k); ++t) {
                  if (is_zero(bc[t])) continue;
                  auto at = A.product(i, a, j + k, t);
                  for (int r = 0; r < A.dim(i + j + k); ++r)
                    rhs[r] += bc[t] * at[r];
                }
                REQUIRE(lhs == rhs);
              }
  }
}

TEST_CASE("dual coalgebra dimensions") {
  auto C = build_dual_coalgebra(examples::polynomial(2), 3);
  CHECK(C.dims() == std::vector<int>{1, 2, 1, 0});

  auto Cf = build_dual_coalgebra(examples::free_algebra(2), 3);
  CHECK(Cf.dims() == std::vector<int>{1, 2, 0, 0});

  auto Cd = build_dual_coalgebra(examples::dual_numbers(), 4);
  CHECK(Cd.dims() == std::vector<int>{1, 1, 1, 1, 1});

  auto C3 = build_dual_coalgebra(examples::polynomial(3), 4);
  CHECK(C3.dims() == std::vector<int>{1, 3, 3, 1, 0});
}

TEST_CASE("coproduct components are coassociative") {
  auto C = build_dual_coalgebra(examples::polynomial(2), 4);
  // (split p,q then split p into r,s) vs (split r, s+q then split)
  for (int n = 2; n <= 4; ++n)
    for (int p = 1; p < n; ++p)
      for (int r = 1; r < p; ++r) {
        const int q = n - p, s = p - r;
        // C_n -> C_p (x) C_q -> (C_r (x) C_s) (x) C_q
        auto first = C.coprod.at({p, q});
        auto second = C.coprod.at({r, s});
        SparseMat<Q> lhs(C.dim(r) * C.dim(s) * C.dim(q), C.dim(n));
        for (int k = 0; k < C.dim(n); ++k)
          for (int a = 0; a < C.dim(p); ++a)
            for (int b = 0; b < C.dim(q); ++b) {
              Q v = first.get(a * C.dim(q) + b, k);
              if (is_zero(v)) continue;
              for (int u = 0; u < C.dim(r); ++u)
                for (int w = 0; w < C.dim(s); ++w) {
                  Q v2 = second.get(u * C.dim(s) + w, a);
                  if (!is_zero(v2))
                    lhs.add((u * C.dim(s) + w) * C.dim(q) + b, k, v * v2);
                }
            }
        // C_n -> C_r (x) C_{s+q} -> C_r (x) (C_s (x) C_q)
        auto firstB = C.coprod.at({r, s + q});
        auto secondB = C.coprod.at({s, q});
        SparseMat<Q> rhs(C.dim(r) * C.dim(s) * C.dim(q), C.dim(n));
        for (int k = 0; k < C.dim(n); ++k)
          for (int u = 0; u < C.dim(r); ++u)
            for (int t = 0; t < C.dim(s + q); ++t) {
              Q v = firstB.get(u * C.dim(s + q) + t, k);
              if (is_zero(v)) continue;
              for (int w = 0; w < C.dim(s); ++w)
                for (int b = 0; b < C.dim(q); ++b) {
                  Q v2 = secondB.get(w * C.dim(q) + b, t);
                  if (!is_zero(v2))
                    rhs.add((u * C.dim(s) + w) * C.dim(q) + b, k, v * v2);
                }
            }
        REQUIRE(lhs == rhs);
      }
}

TEST_CASE("dual algebra dimensions and duality pairing") {
  auto plane = examples::polynomial(2);
  auto C = build_dual_coalgebra(plane, 4);
  auto D = build_dual_algebra(plane, 4, C);
  CHECK(D.dims() == std::vector<int>{1, 2, 1, 0, 0});

  auto fr = examples::free_algebra(2);
  auto Cf = build_dual_coalgebra(fr, 3);
  auto Df = build_dual_algebra(fr, 3, Cf);
  CHECK(Df.dims() == std::vector<int>{1, 2, 0, 0});

  auto dn = examples::dual_numbers();
  auto Cd = build_dual_coalgebra(dn, 4);
  auto Dd = build_dual_algebra(dn, 4, Cd);
  CHECK(Dd.dims() == std::vector<int>{1, 1, 1, 1, 1});
}

TEST_CASE("dual of the dual reproduces the algebra") {
  for (auto datum : {examples::polynomial(2), examples::polynomial(3),
                     examples::free_algebra(2), examples::dual_numbers()}) {
    auto dd = dual_datum(dual_datum(datum));
    CHECK(dd.relations == datum.relations);
    auto A = build_algebra(datum, 3);
    auto B = build_algebra(dd, 3);
    CHECK(A.dims() == B.dims());
    for (const auto& [key, m] : A.mult) CHECK(B.mult.at(key) == m);
  }
}

TEST_CASE("multiplication is dual to deconcatenation") {
  auto plane = examples::polynomial(2);
  auto C = build_dual_coalgebra(plane, 4);
  auto D = build_dual_algebra(plane, 4, C);
  for (int p = 0; p <= 2; ++p)
    for (int q = 0; p + q <= 4 && q <= 2; ++q) {
      const int n = p + q;
      for (int a = 0; a < D.dim(p); ++a)
        for (int b = 0; b < D.dim(q); ++b)
          for (int k = 0; k < C.dim(n); ++k) {
            auto prod = D.alg.product(p, a, q, b);
            Q lhs(0);
            for (int t = 0; t < D.dim(n); ++t)
              lhs += prod[t] * D.pairing[n].get(t, k);
            Q rhs(0);
            const auto& cp = C.coprod.at({p, q});
            for (int u = 0; u < C.dim(p); ++u)
              for (int w = 0; w < C.dim(q); ++w) {
                Q v = cp.get(u * C.dim(q) + w, k);
                if (!is_zero(v))
                  rhs += D.pairing[p].get(a, u) * D.pairing[q].get(b, w) * v;
              }
            REQUIRE(lhs == rhs);
          }
    }
}

TEST_CASE("koszulness verdicts") {
  CHECK(koszulness_check(examples::polynomial(2), 6).koszul_up_to_W);
  CHECK(koszulness_check(examples::free_algebra(2), 4).koszul_up_to_W);
  CHECK(koszulness_check(examples::dual_numbers(), 5).koszul_up_to_W);
}

TEST_CASE("hilbert product check") {
  CHECK(hilbert_product_check(examples::polynomial(2), 6));
  CHECK(hilbert_product_check(examples::polynomial(3), 5));
  CHECK(hilbert_product_check(examples::free_algebra(2), 4));
  CHECK(hilbert_product_check(examples::dual_numbers(), 6));
}

TEST_CASE("linear-quadratic admissibility") {
  // abelian: phi = 0
  auto ab = examples::polynomial(2);
  SparseMat<Q> zero_phi(2, 1);
  auto abl = make_datum(ab.generators, ab.relations.basis(), &zero_phi);
  CHECK(linquad_check(abl, 4));

  CHECK(linquad_check(examples::nonabelian2(), 4));
  CHECK(linquad_check(examples::heisenberg(), 4));

  // d_phi on weight 2 sends the commutator class to the bracket
  auto C = build_dual_coalgebra(examples::nonabelian2(), 3);
  REQUIRE(C.d_phi);
  const auto& d2 = (*C.d_phi)[2];
  REQUIRE(d2.rows() == 2);
  REQUIRE(d2.cols() == 1);
  // relation basis row is x(x)y - y(x)x and phi of it is x
  CHECK(d2.get(0, 0) == Q(1));
  CHECK(d2.get(1, 0) == Q(0));

  // a non-Jacobi linear part must be rejected: [x,y] = z, [x,z] = x,
  // [y,z] = y violates Jacobi
  SparseMat<Q> rows(3, 9);
  examples::add_commutator(rows, 0, 3, 0, 1);
  examples::add_commutator(rows, 1, 3, 0, 2);
  examples::add_commutator(rows, 2, 3, 1, 2);
  SparseMat<Q> phi(3, 3);
  phi.set(2, 0, Q(1));  // [x,y] = z
  phi.set(0, 1, Q(1));  // [x,z] = x
  phi.set(1, 2, Q(1));  // [y,z] = y
  auto bad = make_datum({"x", "y", "z"}, rows, &phi);
  CHECK(!linquad_check(bad, 4));
}
