#include <catch2/catch_amalgamated.hpp>

#include "datum_helpers.hpp"
#include "koszul/workspace.hpp"

using namespace koszul;
using examples::Q;

TEST_CASE("workspace builds with all chain-map assertions for the plane") {
  auto ws = build_workspace(examples::polynomial(2), 3);
  CHECK(ws.n_top == 2);
  CHECK(retraction_is_identity(ws));
  CHECK(comparison_square_commutes(ws));
}

TEST_CASE("canonical isomorphisms with Connes intertwining, k[x]") {
  auto ws = build_workspace(examples::free_algebra(1), 4);
  auto rep = verify_canonical_isomorphisms(ws, 4, 4);
  CHECK(rep.dims_match);
  CHECK(rep.connes_match);
}

TEST_CASE("canonical isomorphisms with Connes intertwining, plane") {
  auto ws = build_workspace(examples::polynomial(2), 4);
  auto rep = verify_canonical_isomorphisms(ws, 4, 4);
  CHECK(rep.dims_match);
  CHECK(rep.connes_match);
}

TEST_CASE("dual cohomology model is quasi-isomorphic to the cohomology model") {
  auto ws = build_workspace(examples::polynomial(2), 3, false);
  Homology<Q> h1(ws.DCOH.d, [&](Bideg b) {
    return b.wt >= ws.n_top - ws.W && b.wt <= ws.W && -b.deg <= ws.W;
  });
  Homology<Q> h2(ws.COH.d, [&](Bideg b) {
    return b.wt >= ws.n_top - ws.W && b.wt <= ws.W && -b.deg <= ws.W;
  });
  auto ind = induced_on_homology(ws.P, h1, h2, ws.DCOH.d, ws.COH.d, false);
  for (const auto& [b, m] : ind) {
    if (b.wt < ws.n_top - ws.W || -b.deg > ws.W - 1 ||
        (b.wt - b.deg) + 1 > ws.WA)
      continue;
    CHECK(h1.dim(b) == h2.dim(b));
    if (h1.dim(b) > 0) CHECK(rank(m) == h1.dim(b));
  }
}
