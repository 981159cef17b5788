#include <catch2/catch_amalgamated.hpp>

#include "datum_helpers.hpp"
#include "koszul/lie.hpp"

using namespace koszul;
using Q = Rational;

namespace {

LieAlgebraData<Q> abelian(int n) {
  std::vector<std::string> names;
  for (int i = 0; i < n; ++i) names.push_back("x" + std::to_string(i + 1));
  return make_lie<Q>(names);
}

LieAlgebraData<Q> nonabelian2() {
  auto L = make_lie<Q>({"x", "y"});
  set_bracket(L, 0, 1, {Q(1), Q(0)});  // [x,y] = x
  return L;
}

LieAlgebraData<Q> heisenberg() {
  auto L = make_lie<Q>({"x", "y", "z"});
  set_bracket(L, 0, 1, {Q(0), Q(0), Q(1)});  // [x,y] = z
  return L;
}

LieAlgebraData<Q> sl2() {
  auto L = make_lie<Q>({"h", "e", "f"});
  set_bracket(L, 0, 1, {Q(0), Q(2), Q(0)});
  set_bracket(L, 0, 2, {Q(0), Q(0), Q(-2)});
  set_bracket(L, 1, 2, {Q(1), Q(0), Q(0)});
  return L;
}

}  // namespace

TEST_CASE("unimodularity verdicts") {
  CHECK(unimodularity_check(abelian(3)).unimodular);
  auto rep = unimodularity_check(nonabelian2());
  CHECK(!rep.unimodular);
  CHECK(rep.traces[1] == Q(-1));  // Tr(ad_y) = -1
  CHECK(unimodularity_check(heisenberg()).unimodular);
  CHECK(unimodularity_check(sl2()).unimodular);
}

TEST_CASE("Chevalley-Eilenberg boundaries square to zero and match d_phi") {
  for (auto L : {nonabelian2(), heisenberg(), sl2()}) {
    auto ce = build_ce(L);  // d^2 = 0 asserted inside
    // the coderivation on the dual coalgebra agrees with the CE boundary
    // under the antisymmetrizer identification
    auto datum = to_linquad_datum(L);
    auto C = build_dual_coalgebra(datum, L.dim());
    REQUIRE(C.d_phi);
    for (int k = 1; k <= L.dim(); ++k)
      CHECK(C.dim(k) == static_cast<int>(ce.basis[k].size()));
  }
}

TEST_CASE("cap duality against the top chain detects unimodularity") {
  CHECK(ce_duality_check(abelian(2)));
  CHECK(ce_duality_check(abelian(3)));
  CHECK(!ce_duality_check(nonabelian2()));
  CHECK(ce_duality_check(heisenberg()));
  CHECK(ce_duality_check(sl2()));
  std::mt19937_64 rng(2024);
  for (int trial = 0; trial < 12; ++trial) {
    auto L = random_lie_algebra<Q>(rng);
    REQUIRE(jacobi_holds(L));
    ce_duality_check(L);  // equivalence with the trace test asserted inside
  }
}

TEST_CASE("enveloping algebras: certification matches unimodularity") {
  auto c1 = ue_cy_check(abelian(2), 4);
  CHECK(c1.is_cy);
  CHECK(c1.n == 2);

  auto c2 = ue_cy_check(nonabelian2(), 4);
  CHECK(!c2.is_cy);

  auto c3 = ue_cy_check(heisenberg(), 5);
  CHECK(c3.is_cy);
  CHECK(c3.n == 3);
}

TEST_CASE("random enveloping algebras agree with unimodularity (seeded)") {
  std::mt19937_64 rng(77);
  int done = 0;
  while (done < 6) {
    auto L = random_lie_algebra<Q>(rng);
    if (!jacobi_holds(L)) continue;
    ue_cy_check(L, L.dim() + 2);  // verdict equality asserted inside
    ++done;
  }
}
