#pragma once

// Shared example presentations for the test suites.

#include <vector>

#include "koszul/quadratic.hpp"

namespace examples {

using koszul::QuadraticDatum;
using koszul::Rational;
using koszul::SparseMat;

using Q = Rational;

// commutator x(x)y - y(x)x for generators (i, j) in a d-letter alphabet
inline void add_commutator(SparseMat<Q>& rows, int r, int d, int i, int j) {
  rows.set(r, i * d + j, Q(1));
  rows.set(r, j * d + i, Q(-1));
}

// polynomial algebra k[x_1..x_d]
inline QuadraticDatum<Q> polynomial(int d) {
  std::vector<std::string> names;
  const char* pool = "xyzw";
  for (int i = 0; i < d; ++i) names.push_back(std::string(1, pool[i]));
  int npairs = d * (d - 1) / 2;
  SparseMat<Q> rows(npairs, d * d);
  int r = 0;
  for (int i = 0; i < d; ++i)
    for (int j = i + 1; j < d; ++j) add_commutator(rows, r++, d, i, j);
  return koszul::make_datum(names, rows);
}

// free algebra on d generators
inline QuadraticDatum<Q> free_algebra(int d) {
  std::vector<std::string> names;
  const char* pool = "abcd";
  for (int i = 0; i < d; ++i) names.push_back(std::string(1, pool[i]));
  return koszul::make_datum(names, SparseMat<Q>(0, d * d));
}

// dual numbers k[x]/(x^2)
inline QuadraticDatum<Q> dual_numbers() {
  SparseMat<Q> rows(1, 1);
  rows.set(0, 0, Q(1));
  return koszul::make_datum({"x"}, rows);
}

// universal enveloping of the nonabelian 2-dim Lie algebra [x,y] = x
inline QuadraticDatum<Q> nonabelian2() {
  SparseMat<Q> rows(1, 4);
  add_commutator(rows, 0, 2, 0, 1);
  SparseMat<Q> phi(2, 1);
  phi.set(0, 0, Q(1));
  return koszul::make_datum({"x", "y"}, rows, &phi);
}

// universal enveloping of the Heisenberg algebra [x,y] = z
inline QuadraticDatum<Q> heisenberg() {
  SparseMat<Q> rows(3, 9);
  add_commutator(rows, 0, 3, 0, 1);  // [x,y]
  add_commutator(rows, 1, 3, 0, 2);  // [x,z]
  add_commutator(rows, 2, 3, 1, 2);  // [y,z]
  SparseMat<Q> phi(3, 3);
  phi.set(2, 0, Q(1));  // phi(x(x)y - y(x)x) = z
  return koszul::make_datum({"x", "y", "z"}, rows, &phi);
}

}  // namespace examples
