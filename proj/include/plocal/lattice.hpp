#pragma once

// Z_(p)-submodules of Z_(p)^n ("lattices"), kept in a canonical column
// echelon form: pivot entries are exact powers of p, entries above a pivot
// are zero, entries left of a pivot are reduced to their canonical residue
// modulo the pivot.  Equal spans produce bit-identical canonical matrices,
// so equality is a plain comparison.

#include <cstddef>
#include <utility>
#include <vector>

#include "plocal/matrix.hpp"

namespace plocal {

// Invariant factors of a quotient module: direct sum of Z/p^{e_i} (torsion,
// ascending positive exponents) and Z_(p)^{free_rank}.
struct QuotientInvariants {
  std::vector<long long> torsion;
  std::size_t free_rank = 0;

  bool trivial() const { return torsion.empty() && free_rank == 0; }
  bool operator==(const QuotientInvariants& o) const = default;

  Int torsion_order(long long p) const {
    Int o = 1;
    for (long long e : torsion)
      for (long long i = 0; i < e; ++i) o *= p;
    return o;
  }
};

class Lattice {
 public:
  static Lattice from_generators(std::size_t ambient, const std::vector<std::vector<Rational>>& vectors,
                                 long long p) {
    for (const auto& v : vectors)
      if (v.size() != ambient) throw std::invalid_argument("generator length does not match ambient rank");
    Lattice l(ambient, p);
    l.canonicalize(vectors);
    return l;
  }

  static Lattice zero(std::size_t ambient, long long p) { return Lattice(ambient, p); }

  static Lattice full(std::size_t ambient, long long p) {
    std::vector<std::vector<Rational>> e(ambient, std::vector<Rational>(ambient, Rational(0)));
    for (std::size_t i = 0; i < ambient; ++i) e[i][i] = 1;
    return from_generators(ambient, e, p);
  }

  std::size_t ambient_rank() const { return ambient_; }
  std::size_t rank() const { return gens_.cols(); }
  long long prime() const { return p_; }
  bool is_zero() const { return rank() == 0; }
  const Matrix& generators() const { return gens_; }
  const std::vector<std::size_t>& pivot_rows() const { return pivot_rows_; }
  const std::vector<long long>& pivot_exponents() const { return pivot_exps_; }

  bool contains(const std::vector<Rational>& v) const { return coordinates(v).has_value(); }

  // Coordinates of v in the canonical generator basis, or nullopt if v is
  // outside the lattice.
  std::optional<std::vector<Rational>> coordinates(const std::vector<Rational>& v) const {
    if (v.size() != ambient_) throw std::invalid_argument("vector length does not match ambient rank");
    std::vector<Rational> w = v;
    std::vector<Rational> coeff(rank(), Rational(0));
    for (std::size_t j = 0; j < rank(); ++j) {
      const Rational& t = w[pivot_rows_[j]];
      if (t == 0) continue;
      if (*valuation(t, p_) < pivot_exps_[j]) return std::nullopt;
      Rational q = t / pivot_power(j);
      coeff[j] = q;
      for (std::size_t i = pivot_rows_[j]; i < ambient_; ++i) w[i] -= q * gens_.at(i, j);
    }
    for (const Rational& x : w)
      if (x != 0) return std::nullopt;
    return coeff;
  }

  bool operator==(const Lattice& o) const {
    return ambient_ == o.ambient_ && p_ == o.p_ && gens_ == o.gens_;
  }
  bool operator!=(const Lattice& o) const { return !(*this == o); }

 private:
  Lattice(std::size_t ambient, long long p) : ambient_(ambient), p_(p), gens_(ambient, 0, p) {}

  Rational pivot_power(std::size_t j) const {
    Rational pw = 1;
    for (long long t = 0; t < pivot_exps_[j]; ++t) pw *= p_;
    return pw;
  }

  void canonicalize(const std::vector<std::vector<Rational>>& vectors) {
    std::vector<std::vector<Rational>> cols;
    for (const auto& v : vectors) {
      bool nonzero = false;
      for (const auto& x : v) {
        if (!is_p_integral(x, p_)) throw std::domain_error("not p-integral");
        if (x != 0) nonzero = true;
      }
      if (nonzero) cols.push_back(v);
    }

    pivot_rows_.clear();
    pivot_exps_.clear();
    std::size_t placed = 0;
    for (std::size_t r = 0; r < ambient_ && placed < cols.size(); ++r) {
      // among not-yet-placed columns pick minimal valuation at row r
      std::size_t best = cols.size();
      long long best_e = 0;
      for (std::size_t j = placed; j < cols.size(); ++j) {
        if (cols[j][r] == 0) continue;
        long long e = *valuation(cols[j][r], p_);
        if (best == cols.size() || e < best_e) {
          best = j;
          best_e = e;
        }
      }
      if (best == cols.size()) continue;
      std::swap(cols[placed], cols[best]);
      for (std::size_t j = placed + 1; j < cols.size(); ++j) {
        if (cols[j][r] == 0) continue;
        Rational q = cols[j][r] / cols[placed][r];
        for (std::size_t i = r; i < ambient_; ++i) cols[j][i] -= q * cols[placed][i];
      }
      Rational ppow = 1;
      for (long long t = 0; t < best_e; ++t) ppow *= p_;
      Rational unit = cols[placed][r] / ppow;
      for (std::size_t i = r; i < ambient_; ++i) cols[placed][i] /= unit;
      pivot_rows_.push_back(r);
      pivot_exps_.push_back(best_e);
      ++placed;
    }
    cols.resize(placed);

    // reduce entries left of each pivot to the canonical residue mod p^e
    for (std::size_t j2 = 0; j2 < placed; ++j2) {
      const std::size_t r = pivot_rows_[j2];
      Int mod = 1;
      for (long long t = 0; t < pivot_exps_[j2]; ++t) mod *= p_;
      for (std::size_t j1 = 0; j1 < j2; ++j1) {
        const Rational& t = cols[j1][r];
        Rational rep(residue_mod(t, mod));
        if (t == rep) continue;
        Rational q = (t - rep) / Rational(mod);
        for (std::size_t i = r; i < ambient_; ++i) cols[j1][i] -= q * cols[j2][i];
      }
    }

    gens_ = Matrix::from_columns(cols, ambient_, p_);
  }

  std::size_t ambient_;
  long long p_;
  Matrix gens_;
  std::vector<std::size_t> pivot_rows_;
  std::vector<long long> pivot_exps_;
};

inline void check_same_space(const Lattice& a, const Lattice& b) {
  if (a.ambient_rank() != b.ambient_rank()) throw std::invalid_argument("ambient rank mismatch");
  if (a.prime() != b.prime()) throw std::invalid_argument("prime mismatch");
}

inline bool is_subset(const Lattice& a, const Lattice& b) {
  check_same_space(a, b);
  for (std::size_t j = 0; j < a.rank(); ++j)
    if (!b.contains(a.generators().column(j))) return false;
  return true;
}

inline Lattice sum(const Lattice& a, const Lattice& b) {
  check_same_space(a, b);
  std::vector<std::vector<Rational>> gens;
  for (std::size_t j = 0; j < a.rank(); ++j) gens.push_back(a.generators().column(j));
  for (std::size_t j = 0; j < b.rank(); ++j) gens.push_back(b.generators().column(j));
  return Lattice::from_generators(a.ambient_rank(), gens, a.prime());
}

// Intersection via the saturated kernel of the block matrix [G1 | -G2]: the
// first block of each kernel vector gives coefficients of an element common
// to both spans.
inline Lattice intersect(const Lattice& a, const Lattice& b) {
  check_same_space(a, b);
  if (a.is_zero() || b.is_zero()) return Lattice::zero(a.ambient_rank(), a.prime());
  const std::size_t n = a.ambient_rank(), ma = a.rank(), mb = b.rank();
  Matrix block(n, ma + mb, a.prime());
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < ma; ++j) block.at(i, j) = a.generators().at(i, j);
    for (std::size_t j = 0; j < mb; ++j) block.at(i, ma + j) = -b.generators().at(i, j);
  }
  std::vector<std::vector<Rational>> gens;
  for (const auto& k : kernel_basis(block)) {
    std::vector<Rational> u(k.begin(), k.begin() + ma);
    gens.push_back(a.generators().apply(u));
  }
  return Lattice::from_generators(n, gens, a.prime());
}

inline QuotientInvariants invariants_from_exponents(const std::vector<Valuation>& exps, std::size_t sup_rank) {
  QuotientInvariants q;
  std::size_t finite = 0;
  for (const auto& e : exps) {
    if (!e.has_value()) continue;
    ++finite;
    if (*e > 0) q.torsion.push_back(*e);
  }
  std::sort(q.torsion.begin(), q.torsion.end());
  q.free_rank = sup_rank - finite;
  return q;
}

// Invariant factors of sup/sub.  Errors unless sub is contained in sup.
inline QuotientInvariants quotient_invariants(const Lattice& sup, const Lattice& sub) {
  check_same_space(sup, sub);
  if (sub.is_zero()) return QuotientInvariants{{}, sup.rank()};
  std::vector<std::vector<Rational>> coords;
  for (std::size_t j = 0; j < sub.rank(); ++j) {
    auto c = sup.coordinates(sub.generators().column(j));
    if (!c) throw std::domain_error("quotient_invariants: not a sublattice");
    coords.push_back(std::move(*c));
  }
  Matrix cmat = Matrix::from_columns(coords, sup.rank(), sup.prime());
  return invariants_from_exponents(smith_p_local(cmat).exponents, sup.rank());
}

// Smallest overlattice with torsion-free quotient in the ambient: strip the
// p-power diagonal out of the Smith factorization of the generator matrix.
inline Lattice saturate(const Lattice& l) {
  if (l.is_zero()) return l;
  SmithData s = smith_p_local(l.generators());
  std::vector<std::vector<Rational>> gens;
  for (std::size_t j = 0; j < l.rank(); ++j) gens.push_back(s.left_inverse.column(j));
  return Lattice::from_generators(l.ambient_rank(), gens, l.prime());
}

// Image of a lattice under a matrix acting on exponent vectors.
inline Lattice apply(const Matrix& m, const Lattice& l) {
  if (m.cols() != l.ambient_rank()) throw std::invalid_argument("apply: shape mismatch");
  std::vector<std::vector<Rational>> gens;
  for (std::size_t j = 0; j < l.rank(); ++j) gens.push_back(m.apply(l.generators().column(j)));
  return Lattice::from_generators(m.rows(), gens, l.prime());
}

}  // namespace plocal
