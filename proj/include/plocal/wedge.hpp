#pragma once

// The commutator calculus behind the Scholz number knot: commutators of
// words in a free pro-p group, taken modulo [R,F], become alternating wedge
// products of exponent vectors.  Each rank-2 decomposition group contributes
// one wedge row; the knot is trivial iff those rows span the wedge space
// mod p.

#include <string>
#include <vector>

#include "plocal/model.hpp"

namespace plocal {

// Coordinates indexed by pairs (i,j), i<j, in lexicographic order.
struct WedgeVector {
  std::size_t ambient_rank;
  std::vector<Rational> coords;

  static std::size_t dimension(std::size_t n) { return n * (n - 1) / 2; }

  static std::size_t index_of(std::size_t i, std::size_t j, std::size_t n) {
    if (i >= j || j >= n) throw std::invalid_argument("wedge index out of range");
    // pairs (0,1),(0,2),...,(0,n-1),(1,2),...
    return i * n - i * (i + 1) / 2 + (j - i - 1);
  }

  const Rational& at(std::size_t i, std::size_t j) const { return coords[index_of(i, j, ambient_rank)]; }
};

inline WedgeVector wedge(const std::vector<Rational>& u, const std::vector<Rational>& v) {
  if (u.size() != v.size()) throw std::invalid_argument("wedge: length mismatch");
  const std::size_t n = u.size();
  WedgeVector w{n, std::vector<Rational>(WedgeVector::dimension(n), Rational(0))};
  std::size_t k = 0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) w.coords[k++] = u[i] * v[j] - u[j] * v[i];
  return w;
}

// Basis labels of the knot matrix columns.  For the degree-4 models the
// paper's basis {[g,x],[g,y],[x,y]} is already lexicographic; the degree-6
// basis ends with [y,z],[z,x], so the lexicographic [x,z] column moves last
// and flips sign.
inline std::vector<std::string> knot_basis_labels(const GaloisModel& m) {
  if (m.ambient_rank == 3) return {"[gamma,x]", "[gamma,y]", "[x,y]"};
  return {"[gamma,x]", "[gamma,y]", "[gamma,z]", "[x,y]", "[y,z]", "[z,x]"};
}

// One row per prime, in the model's sigma-orbit order: the wedge of the
// inertia generator with the second decomposition generator, written in the
// paper's basis so the displayed matrices are reproduced entrywise.
inline Matrix knot_matrix(const GaloisModel& m) {
  const std::size_t n = m.ambient_rank;
  const std::size_t dim = WedgeVector::dimension(n);
  Matrix k(m.primes.size(), dim, m.prime());
  for (std::size_t r = 0; r < m.primes.size(); ++r) {
    WedgeVector w = wedge(m.primes[r].inertia_gen, m.primes[r].second_gen);
    if (n == 3) {
      for (std::size_t j = 0; j < dim; ++j) k.at(r, j) = w.coords[j];
    } else {
      k.at(r, 0) = w.at(0, 1);
      k.at(r, 1) = w.at(0, 2);
      k.at(r, 2) = w.at(0, 3);
      k.at(r, 3) = w.at(1, 2);
      k.at(r, 4) = w.at(2, 3);
      k.at(r, 5) = -w.at(1, 3);  // [z,x] = -[x,z]
    }
  }
  return k;
}

struct KnotInvariants {
  bool trivial;
  QuotientInvariants cokernel;
};

inline KnotInvariants knot_invariants(const GaloisModel& m) {
  Matrix k = knot_matrix(m);
  const std::size_t dim = k.cols();
  std::vector<std::vector<Rational>> rows;
  for (std::size_t i = 0; i < k.rows(); ++i) rows.push_back(k.row(i));
  Lattice span = Lattice::from_generators(dim, rows, m.prime());
  QuotientInvariants q = quotient_invariants(Lattice::full(dim, m.prime()), span);
  return KnotInvariants{rank_mod_p(k) == dim, std::move(q)};
}

}  // namespace plocal
