#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "plocal/wedge.hpp"

using namespace plocal;

namespace {

// the displayed 4x3 matrix of the degree-4 knot lemma
Matrix paper_knot_deg4(long long a, long long b, long long p) {
  return Matrix::from_rows({{1, 0, 0}, {0, 1, a}, {-1, 0, a + b}, {0, -1, b}}, 3, p);
}

// the displayed 6x6 matrix of the degree-6 knot lemma, rows D1, D2bar-orbit
// order, columns {[g,x],[g,y],[g,z],[x,y],[y,z],[z,x]}
Matrix paper_knot_deg6(long long a, long long b, long long c, long long p) {
  return Matrix::from_rows(
      {
          {1, 0, 0, 0, 0, 0},
          {0, 1, 0, a, -c, 0},
          {0, 0, 1, 0, a + b, c - a},
          {-1, 0, 0, a + b - c, 0, -a - b - c},
          {0, -1, 0, b + c, a + b, 0},
          {0, 0, -1, 0, c, -b},
      },
      6, p);
}

std::vector<Rational> rand_vec(std::mt19937& rng, std::size_t n) {
  std::uniform_int_distribution<long long> d(-20, 20);
  std::vector<Rational> v(n);
  for (auto& x : v) x = d(rng);
  return v;
}

}  // namespace

TEST_CASE("wedge coordinates") {
  // [gamma x^a y^b, y] = [gamma,y][x,y]^a
  WedgeVector w = wedge({1, 2, 7}, {0, 0, 1});
  CHECK(w.at(0, 1) == 0);
  CHECK(w.at(0, 2) == 1);
  CHECK(w.at(1, 2) == 2);
  CHECK_THROWS_AS(wedge({1, 0}, {1, 0, 0}), std::invalid_argument);
}

TEST_CASE("wedge is alternating and bilinear") {
  std::mt19937 rng(4242);
  for (int trial = 0; trial < 30; ++trial) {
    std::size_t n = 3 + trial % 2;
    auto u = rand_vec(rng, n), v = rand_vec(rng, n), u2 = rand_vec(rng, n);
    for (const auto& x : wedge(u, u).coords) CHECK(x == 0);
    WedgeVector uv = wedge(u, v), vu = wedge(v, u);
    for (std::size_t i = 0; i < uv.coords.size(); ++i) CHECK(uv.coords[i] == -vu.coords[i]);
    std::vector<Rational> s(n);
    for (std::size_t i = 0; i < n; ++i) s[i] = u[i] + u2[i];
    WedgeVector left = wedge(s, v), r1 = wedge(u, v), r2 = wedge(u2, v);
    for (std::size_t i = 0; i < left.coords.size(); ++i) CHECK(left.coords[i] == r1.coords[i] + r2.coords[i]);
  }
}

TEST_CASE("knot matrix reproduces the displayed degree-4 matrix") {
  std::mt19937 rng(555);
  std::uniform_int_distribution<long long> d(-50, 50);
  for (int trial = 0; trial < 25; ++trial) {
    long long a = d(rng), b = d(rng);
    GaloisModel m = build_model(ModelParams{Variant::Deg4NonGalois, 5, a, b, 0}, false);
    CHECK(knot_matrix(m) == paper_knot_deg4(a, b, 5));
  }
}

TEST_CASE("knot matrix reproduces the displayed degree-6 matrix") {
  std::mt19937 rng(556);
  std::uniform_int_distribution<long long> d(-50, 50);
  for (int trial = 0; trial < 25; ++trial) {
    long long a = d(rng), b = d(rng), c = d(rng);
    GaloisModel m = build_model(ModelParams{Variant::Deg6, 7, a, b, c}, false);
    CHECK(knot_matrix(m) == paper_knot_deg6(a, b, c, 7));
  }
}

TEST_CASE("degenerate model wedges against unit vectors") {
  GaloisModel m = build_model(ModelParams{Variant::Deg4NonGalois, 5, 0, 0, 0}, false);
  Matrix k = knot_matrix(m);
  // with a = b = 0 every row is +-[gamma, .]
  for (std::size_t i = 0; i < k.rows(); ++i) {
    CHECK(k.at(i, 2) == 0);
    Rational sum = k.at(i, 0) * k.at(i, 0) + k.at(i, 1) * k.at(i, 1);
    CHECK(sum == 1);
  }
}

TEST_CASE("knot invariants on the classification examples") {
  GaloisModel s5 = build_model(ModelParams{Variant::Deg6, 5, 1, 1, 1}, true);
  CHECK(knot_invariants(s5).trivial);

  GaloisModel s7 = build_model(ModelParams{Variant::Deg6, 7, 1, 1, 1}, true);
  KnotInvariants k7 = knot_invariants(s7);
  CHECK_FALSE(k7.trivial);

  GaloisModel d4 = build_model(ModelParams{Variant::Deg4NonGalois, 5, 1, 4, 0}, true);
  KnotInvariants k4 = knot_invariants(d4);
  CHECK_FALSE(k4.trivial);
  CHECK(k4.cokernel.torsion == std::vector<long long>{1});  // cokernel of order 5
  CHECK(k4.cokernel.free_rank == 0);
}

TEST_CASE("degree-4 closed form: full rank iff a+b is a unit") {
  for (long long p : {3, 5, 7, 11}) {
    for (long long a = 0; a < p; ++a)
      for (long long b = 0; b < p; ++b) {
        GaloisModel m = build_model(ModelParams{Variant::Deg4NonGalois, p, a, b, 0}, false);
        CHECK((rank_mod_p(knot_matrix(m)) == 3) == ((a + b) % p != 0));
      }
  }
}

TEST_CASE("biquadratic closed form: full rank iff a-b is a unit") {
  for (long long p : {3, 5, 7}) {
    for (long long a = 0; a < p; ++a)
      for (long long b = 0; b < p; ++b) {
        GaloisModel m = build_model(ModelParams{Variant::Deg4Biquadratic, p, a, b, 0}, false);
        CHECK((rank_mod_p(knot_matrix(m)) == 3) == ((a - b) % p != 0));
      }
  }
}

TEST_CASE("degree-6 closed form: full rank iff |K| is a unit, exhaustive") {
  for (long long p : {3, 5}) {
    for (long long a = 0; a < p; ++a)
      for (long long b = 0; b < p; ++b)
        for (long long c = 0; c < p; ++c) {
          GaloisModel m = build_model(ModelParams{Variant::Deg6, p, a, b, c}, false);
          long long k = (2 * (a + b) * ((a + b) * (a + b) + 3 * c * c)) % p;
          CHECK((rank_mod_p(knot_matrix(m)) == 6) == (k != 0));
        }
  }
}
