#pragma once

#include <random>
#include <vector>

#include "plocal/lattice.hpp"

namespace test_helpers {

using plocal::Int;
using plocal::Lattice;
using plocal::Matrix;
using plocal::Rational;

inline Matrix random_matrix(std::mt19937& rng, std::size_t rows, std::size_t cols, long long p,
                            long long lo = -25, long long hi = 25) {
  std::uniform_int_distribution<long long> d(lo, hi);
  Matrix m(rows, cols, p);
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j) m.at(i, j) = d(rng);
  return m;
}

inline Lattice random_lattice(std::mt19937& rng, std::size_t ambient, std::size_t gens, long long p,
                              long long lo = -25, long long hi = 25) {
  std::uniform_int_distribution<long long> d(lo, hi);
  std::vector<std::vector<Rational>> cols(gens, std::vector<Rational>(ambient));
  for (auto& c : cols)
    for (auto& x : c) x = d(rng);
  return Lattice::from_generators(ambient, cols, p);
}

// a generating set of the same span: shuffled, duplicated, and recombined by
// unimodular column operations
inline std::vector<std::vector<Rational>> scramble_generators(std::mt19937& rng, const Lattice& l) {
  std::vector<std::vector<Rational>> cols;
  for (std::size_t j = 0; j < l.rank(); ++j) cols.push_back(l.generators().column(j));
  if (cols.empty()) return cols;
  std::uniform_int_distribution<long long> small(-3, 3);
  std::uniform_int_distribution<std::size_t> pick(0, cols.size() - 1);
  for (int op = 0; op < 12; ++op) {
    std::size_t i = pick(rng), j = pick(rng);
    if (i == j) continue;
    long long f = small(rng);
    for (std::size_t r = 0; r < l.ambient_rank(); ++r) cols[i][r] += Rational(f) * cols[j][r];
  }
  cols.push_back(cols[pick(rng)]);  // redundant duplicate
  std::shuffle(cols.begin(), cols.end(), rng);
  return cols;
}

}  // namespace test_helpers
