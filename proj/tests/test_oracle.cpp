#include <catch2/catch_amalgamated.hpp>

#include "helpers.hpp"
#include "plocal/oracle.hpp"

using namespace plocal;
using test_helpers::random_lattice;

TEST_CASE("span enumeration") {
  FiniteSpan s = enumerate_span(Lattice::from_generators(2, {{1, 2}}, 3), 2);
  CHECK(s.size() == 9);  // multiples of (1,2) mod 9
  CHECK(enumerate_span(Lattice::zero(2, 3), 2).size() == 1);
  CHECK(enumerate_span(Lattice::full(2, 3), 1).size() == 9);
}

TEST_CASE("budget is enforced up front") {
  Lattice l = Lattice::full(4, 5);
  CHECK_THROWS_WITH(enumerate_span(l, 3, 1000), "enumeration budget exceeded");
}

TEST_CASE("span cardinality matches the smith exponent count") {
  std::mt19937 rng(211);
  for (int trial = 0; trial < 30; ++trial) {
    long long p = trial % 2 ? 3 : 5;
    std::size_t n = 2 + rng() % 2;
    long long k = 2 + static_cast<long long>(rng() % 2);
    Lattice l = random_lattice(rng, n, 1 + rng() % n, p);
    FiniteSpan s = enumerate_span(l, k);
    unsigned long long expect = 1;
    if (!l.is_zero())
      for (const auto& e : smith_p_local(l.generators()).exponents) {
        long long free_exp = e.has_value() ? std::max<long long>(k - *e, 0) : 0;
        for (long long t = 0; t < free_exp; ++t) expect *= static_cast<unsigned long long>(p);
      }
    CHECK(s.size() == expect);
  }
}

TEST_CASE("quotient order examples") {
  Lattice amb2 = Lattice::full(2, 3);
  Lattice l = Lattice::from_generators(2, {{1, 2}}, 3);
  CHECK(oracle_quotient_order(amb2, l, 2) == 9);  // 81 / 9; free quotient of rank 1
  CHECK(oracle_quotient_order(l, l, 2) == 1);

  // degree-4 ambient over P_n with (a,b) = (1,2), p = 3: cyclic of order 3
  Lattice amb3 = Lattice::full(3, 3);
  Lattice pn = Lattice::from_generators(3, {{1, 0, 0}, {0, 1, 0}, {0, 0, 3}}, 3);
  CHECK(oracle_quotient_order(amb3, pn, 2) == 3);
  CHECK(quotient_invariants(amb3, pn).torsion_order(3) == 3);
}

TEST_CASE("quotient order refuses unsaturated torsion") {
  // torsion exponent 2 is invisible below depth 3
  Lattice amb = Lattice::full(2, 3);
  Lattice l = Lattice::from_generators(2, {{9, 0}, {0, 1}}, 3);
  CHECK_THROWS_WITH(oracle_quotient_order(amb, l, 2), "depth insufficient");
  CHECK(oracle_quotient_order(amb, l, 4) == 9);
}

TEST_CASE("oracle agreement on trivial configurations") {
  Lattice e1 = Lattice::from_generators(2, {{1, 0}}, 3);
  Lattice e2 = Lattice::from_generators(2, {{0, 1}}, 3);
  CHECK(oracle_agree(e1, e2, 3, OracleOp::Intersect));  // intersection {0}
  CHECK(oracle_agree(e1, e1, 3, OracleOp::Intersect));
  CHECK(oracle_agree(e1, e1, 3, OracleOp::Sum));
  CHECK(oracle_agree(e1, e1, 3, OracleOp::ContainsSample));
}

TEST_CASE("intersection aliasing is resolved by escalating the depth") {
  // images of <(1,0)> and <(1,27)> coincide below depth 4
  Lattice l1 = Lattice::from_generators(2, {{1, 0}}, 3);
  Lattice l2 = Lattice::from_generators(2, {{1, 27}}, 3);
  CHECK(intersect(l1, l2).is_zero());
  CHECK(oracle_agree(l1, l2, 3, OracleOp::Intersect));
}

TEST_CASE("random lattice pairs agree with the finite oracle") {
  std::mt19937 rng(223);
  int done = 0, redrawn = 0;
  while (done < 40) {
    long long p = rng() % 2 ? 3 : 5;
    std::size_t n = 2 + rng() % (p == 5 ? 2 : 3);
    Lattice l1 = random_lattice(rng, n, 1 + rng() % n, p, -p * p, p * p);
    Lattice l2 = random_lattice(rng, n, 1 + rng() % n, p, -p * p, p * p);
    try {
      CHECK(oracle_agree(l1, l2, 3, OracleOp::Sum, rng()));
      CHECK(oracle_agree(l1, l2, 3, OracleOp::Intersect, rng()));
      CHECK(oracle_agree(l1, l2, 3, OracleOp::ContainsSample, rng()));
      ++done;
    } catch (const std::domain_error&) {
      ++redrawn;
      REQUIRE(redrawn < 200);
    }
  }
}
