#pragma once

// Brute-force verification of lattice operations by exhaustive enumeration in
// (Z/p^k)^n.  Finite images can alias distinct lattices at shallow depth, so
// the comparisons either escalate the depth until the image stabilizes or
// refuse with "depth insufficient"; they never report false agreement.

#include <array>
#include <cstdlib>
#include <random>
#include <string>
#include <vector>

#include "plocal/lattice.hpp"

namespace plocal {

inline std::size_t oracle_budget() {
  static const std::size_t budget = [] {
    if (const char* env = std::getenv("CMKNOT_ORACLE_BUDGET")) {
      char* end = nullptr;
      unsigned long long v = std::strtoull(env, &end, 10);
      if (end && *end == '\0' && v > 0) return static_cast<std::size_t>(v);
    }
    return static_cast<std::size_t>(10'000'000);
  }();
  return budget;
}

// Subset of (Z/p^depth)^n as a bitmask over mixed-radix encodings
// sum_i c_i * modulus^i.
struct FiniteSpan {
  long long p;
  long long depth;
  std::size_t ambient_rank;
  unsigned long long modulus;       // p^depth
  unsigned long long ambient_size;  // modulus^ambient_rank
  std::vector<unsigned long long> mask;
  std::size_t count = 0;

  std::size_t size() const { return count; }

  bool contains_encoded(unsigned long long e) const { return (mask[e >> 6] >> (e & 63)) & 1; }

  void insert(unsigned long long e) {
    unsigned long long& w = mask[e >> 6];
    unsigned long long bit = 1ull << (e & 63);
    if (!(w & bit)) {
      w |= bit;
      ++count;
    }
  }

  std::vector<unsigned long long> decode(unsigned long long e) const {
    std::vector<unsigned long long> v(ambient_rank);
    for (std::size_t i = 0; i < ambient_rank; ++i) {
      v[i] = e % modulus;
      e /= modulus;
    }
    return v;
  }

  // ascending encodings; mainly for tests and small spans
  std::vector<unsigned long long> elements_sorted() const {
    std::vector<unsigned long long> out;
    out.reserve(count);
    for (unsigned long long e = 0; e < ambient_size; ++e)
      if (contains_encoded(e)) out.push_back(e);
    return out;
  }
};

namespace detail {

inline unsigned long long pow_check_budget(long long p, long long k, std::size_t n, std::size_t budget) {
  unsigned long long total = 1;
  for (std::size_t t = 0; t < n * static_cast<std::size_t>(k); ++t) {
    total *= static_cast<unsigned long long>(p);
    if (total > budget) throw std::domain_error("enumeration budget exceeded");
  }
  return total;
}

inline FiniteSpan empty_span(long long p, long long depth, std::size_t n, std::size_t budget) {
  if (depth < 1) throw std::invalid_argument("enumeration depth must be >= 1");
  unsigned long long ambient = pow_check_budget(p, depth, n, budget);
  Int mod = 1;
  for (long long t = 0; t < depth; ++t) mod *= p;
  FiniteSpan s{p, depth, n, static_cast<unsigned long long>(mod), ambient, {}, 0};
  s.mask.assign((ambient + 63) / 64, 0);
  return s;
}

inline std::vector<unsigned long long> reduce_generator(const std::vector<Rational>& g, const Int& mod) {
  std::vector<unsigned long long> r(g.size());
  for (std::size_t i = 0; i < g.size(); ++i) r[i] = static_cast<unsigned long long>(residue_mod(g[i], mod));
  return r;
}

// digit-vector addition mod the coordinate modulus
inline void add_digits(std::vector<unsigned long long>& a, const std::vector<unsigned long long>& b,
                       unsigned long long modulus) {
  for (std::size_t i = 0; i < a.size(); ++i) {
    a[i] += b[i];
    if (a[i] >= modulus) a[i] -= modulus;
  }
}

inline unsigned long long encode_digits(const std::vector<unsigned long long>& d, unsigned long long modulus) {
  unsigned long long e = 0;
  for (std::size_t i = d.size(); i > 0; --i) e = e * modulus + d[i - 1];
  return e;
}

}  // namespace detail

// Image of the lattice in (Z/p^depth)^n.  The Smith basis makes the
// enumeration injective: every element is produced exactly once, so the
// element count is itself a brute-force witness.
inline FiniteSpan enumerate_span(const Lattice& l, long long depth, std::size_t budget = oracle_budget()) {
  FiniteSpan s = detail::empty_span(l.prime(), depth, l.ambient_rank(), budget);
  const std::size_t n = l.ambient_rank();
  Int mod = 1;
  for (long long t = 0; t < depth; ++t) mod *= l.prime();

  struct BasisVec {
    std::vector<unsigned long long> digits;
    unsigned long long multiplicity;
  };
  std::vector<BasisVec> basis;
  if (!l.is_zero()) {
    SmithData sd = smith_p_local(l.generators());
    for (std::size_t j = 0; j < l.rank(); ++j) {
      long long e = *sd.exponents[j];  // canonical generators have full column rank
      if (e >= depth) continue;
      Rational pe = 1;
      for (long long t = 0; t < e; ++t) pe *= l.prime();
      std::vector<Rational> w(n);
      for (std::size_t i = 0; i < n; ++i) w[i] = sd.left_inverse.at(i, j) * pe;
      unsigned long long mult = 1;
      for (long long t = 0; t < depth - e; ++t) mult *= static_cast<unsigned long long>(l.prime());
      basis.push_back({detail::reduce_generator(w, mod), mult});
    }
  }

  std::vector<unsigned long long> current(n, 0);
  // mixed-radix product over the basis multiplicities
  auto gen = [&](auto&& self, std::size_t i) -> void {
    if (i == basis.size()) {
      s.insert(detail::encode_digits(current, s.modulus));
      return;
    }
    std::vector<unsigned long long> saved = current;
    for (unsigned long long t = 0; t < basis[i].multiplicity; ++t) {
      self(self, i + 1);
      detail::add_digits(current, basis[i].digits, s.modulus);
    }
    current = saved;
  };
  gen(gen, 0);
  return s;
}

// |span(sup) mod p^k| / |span(sub) mod p^k|.  For a finite quotient the
// ratio must already be stable from depth k-1 to k; for an infinite quotient
// it grows by exactly p^(rank difference) per depth, and any other growth
// means torsion has not saturated yet.
inline unsigned long long oracle_quotient_order(const Lattice& sup, const Lattice& sub, long long depth,
                                                std::size_t budget = oracle_budget()) {
  check_same_space(sup, sub);
  if (depth < 2) throw std::invalid_argument("oracle_quotient_order: depth must be >= 2");
  auto ratio_at = [&](long long k) {
    FiniteSpan a = enumerate_span(sup, k, budget);
    FiniteSpan b = enumerate_span(sub, k, budget);
    if (b.size() == 0 || a.size() % b.size() != 0)
      throw std::domain_error("depth insufficient");
    return static_cast<unsigned long long>(a.size() / b.size());
  };
  unsigned long long shallow = ratio_at(depth - 1), deep = ratio_at(depth);
  unsigned long long expected_growth = 1;
  if (sup.rank() > sub.rank())
    for (std::size_t t = sub.rank(); t < sup.rank(); ++t) expected_growth *= static_cast<unsigned long long>(sup.prime());
  if (deep != shallow * expected_growth) throw std::domain_error("depth insufficient");
  return deep;
}

enum class OracleOp { Intersect, Sum, ContainsSample };

namespace detail {

inline bool mask_subset(const FiniteSpan& a, const FiniteSpan& b) {
  for (std::size_t w = 0; w < a.mask.size(); ++w)
    if (a.mask[w] & ~b.mask[w]) return false;
  return true;
}

inline FiniteSpan mask_intersection(const FiniteSpan& a, const FiniteSpan& b) {
  FiniteSpan out = a;
  out.count = 0;
  for (std::size_t w = 0; w < out.mask.size(); ++w) {
    out.mask[w] &= b.mask[w];
    out.count += static_cast<std::size_t>(__builtin_popcountll(out.mask[w]));
  }
  return out;
}

// re-encode every element of a depth-K span at depth k
inline FiniteSpan reduce_span(const FiniteSpan& deep, long long k, std::size_t budget) {
  FiniteSpan out = empty_span(deep.p, k, deep.ambient_rank, budget);
  for (unsigned long long e = 0; e < deep.ambient_size; ++e) {
    if (!deep.contains_encoded(e)) continue;
    unsigned long long r = 0, stride = 1, rest = e;
    for (std::size_t i = 0; i < deep.ambient_rank; ++i) {
      r += (rest % deep.modulus % out.modulus) * stride;
      rest /= deep.modulus;
      stride *= out.modulus;
    }
    out.insert(r);
  }
  return out;
}

// closure of the raw generator union under addition: the definitional
// brute-force side of the sum comparison
inline FiniteSpan bfs_closure(const std::vector<std::vector<Rational>>& gens, long long p, long long depth,
                              std::size_t n, std::size_t budget) {
  FiniteSpan s = empty_span(p, depth, n, budget);
  Int mod = 1;
  for (long long t = 0; t < depth; ++t) mod *= p;
  std::vector<std::vector<unsigned long long>> g2;
  for (const auto& g : gens) g2.push_back(reduce_generator(g, mod));
  std::vector<unsigned long long> queue = {0};
  s.insert(0);
  std::vector<unsigned long long> cur(n), t(n);
  for (std::size_t head = 0; head < queue.size(); ++head) {
    unsigned long long rest = queue[head];
    for (std::size_t i = 0; i < n; ++i) {
      cur[i] = rest % s.modulus;
      rest /= s.modulus;
    }
    for (const auto& g : g2) {
      t = cur;
      add_digits(t, g, s.modulus);
      unsigned long long e = encode_digits(t, s.modulus);
      if (!s.contains_encoded(e)) {
        s.insert(e);
        queue.push_back(e);
      }
    }
  }
  return s;
}

}  // namespace detail

// Compare a lattice-module computation against set arithmetic in (Z/p^k)^n.
// A definite mismatch returns false; an uncertifiable sample (aliasing that
// cannot be resolved within the budget) throws "depth insufficient".
inline bool oracle_agree(const Lattice& l1, const Lattice& l2, long long depth, OracleOp op,
                         unsigned long long seed = 0x9e3779b97f4a7c15ull, std::size_t budget = oracle_budget()) {
  check_same_space(l1, l2);
  const long long p = l1.prime();
  const std::size_t n = l1.ambient_rank();

  switch (op) {
    case OracleOp::Sum: {
      std::vector<std::vector<Rational>> gens;
      for (std::size_t j = 0; j < l1.rank(); ++j) gens.push_back(l1.generators().column(j));
      for (std::size_t j = 0; j < l2.rank(); ++j) gens.push_back(l2.generators().column(j));
      FiniteSpan set_side = detail::bfs_closure(gens, p, depth, n, budget);
      FiniteSpan lattice_side = enumerate_span(sum(l1, l2), depth, budget);
      return lattice_side.mask == set_side.mask;
    }

    case OracleOp::Intersect: {
      Lattice r = intersect(l1, l2);
      FiniteSpan image = enumerate_span(r, depth, budget);
      // Artin-Rees style guide for how deep aliasing can persist
      long long extra = 0;
      {
        Matrix block(n, l1.rank() + l2.rank(), p);
        for (std::size_t i = 0; i < n; ++i) {
          for (std::size_t j = 0; j < l1.rank(); ++j) block.at(i, j) = l1.generators().at(i, j);
          for (std::size_t j = 0; j < l2.rank(); ++j) block.at(i, l1.rank() + j) = -l2.generators().at(i, j);
        }
        if (block.cols() > 0)
          for (const auto& e : smith_p_local(block).exponents)
            if (e.has_value() && *e > extra) extra = *e;
      }
      for (long long deep = depth; deep <= depth + extra; ++deep) {
        FiniteSpan cap_reduced = [&] {
          FiniteSpan s1 = enumerate_span(l1, deep, budget);
          FiniteSpan s2 = enumerate_span(l2, deep, budget);
          return detail::reduce_span(detail::mask_intersection(s1, s2), depth, budget);
        }();
        if (!detail::mask_subset(image, cap_reduced)) return false;
        if (image.mask == cap_reduced.mask) return true;
      }
      throw std::domain_error("depth insufficient");
    }

    case OracleOp::ContainsSample: {
      std::mt19937_64 rng(seed);
      Int mod = 1;
      for (long long t = 0; t < depth; ++t) mod *= p;
      FiniteSpan span1 = enumerate_span(l1, depth, budget);
      const long long bound = static_cast<long long>(mod);
      std::uniform_int_distribution<long long> coeff(-bound, bound);
      // members built independently from the generators must test positive
      for (int trial = 0; trial < 20; ++trial) {
        std::vector<Rational> v(n, Rational(0));
        for (std::size_t j = 0; j < l1.rank(); ++j) {
          Rational c(coeff(rng));
          for (std::size_t i = 0; i < n; ++i) v[i] += c * l1.generators().at(i, j);
        }
        if (!l1.contains(v)) return false;
      }
      // arbitrary vectors: a claimed member must appear in the finite image
      for (int trial = 0; trial < 20; ++trial) {
        std::vector<Rational> v(n);
        for (std::size_t i = 0; i < n; ++i) v[i] = coeff(rng);
        bool claimed = l1.contains(v);
        unsigned long long enc = 0, stride = 1;
        for (std::size_t i = 0; i < n; ++i) {
          enc += static_cast<unsigned long long>(residue_mod(v[i], mod)) * stride;
          stride *= span1.modulus;
        }
        bool in_image = span1.contains_encoded(enc);
        if (claimed && !in_image) return false;
        // !claimed && in_image is inconclusive aliasing; not a disagreement
      }
      return true;
    }
  }
  throw std::logic_error("unreachable");
}

}  // namespace plocal
