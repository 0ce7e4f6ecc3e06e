#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "plocal/criteria.hpp"

using namespace plocal;

namespace {

GaloisModel deg6(long long p, long long a, long long b, long long c, bool checked = true) {
  return build_model(ModelParams{Variant::Deg6, p, Int(a), Int(b), Int(c)}, checked);
}
GaloisModel deg4ng(long long p, long long a, long long b, bool checked = true) {
  return build_model(ModelParams{Variant::Deg4NonGalois, p, Int(a), Int(b), 0}, checked);
}
GaloisModel deg4bq(long long p, long long a, long long b, bool checked = true) {
  return build_model(ModelParams{Variant::Deg4Biquadratic, p, Int(a), Int(b), 0}, checked);
}

}  // namespace

TEST_CASE("class group structure from the corollaries") {
  CHECK(class_group_structure(deg4ng(5, 1, 1)).tag == ClassTag::Trivial);  // a^2+b^2 = 2
  ClassGroupStructure cyc = class_group_structure(deg4ng(5, 2, 1));        // a^2+b^2 = 5
  CHECK(cyc.tag == ClassTag::Cyclic);
  CHECK(cyc.dim_mod_p == 1);
  ClassGroupStructure t = class_group_structure(deg6(5, 1, 4, 0));  // |A| = -63 = 2 mod 5
  CHECK(t.tag == ClassTag::Trivial);
  CHECK(class_group_structure(deg6(5, 1, 4, 1)).tag == ClassTag::TwoGenerated);
  // exploration only: all residues zero
  GaloisModel degenerate = deg6(5, 0, 0, 0, false);
  CHECK(class_group_structure(degenerate).tag == ClassTag::ThreeGenerated);
}

TEST_CASE("class-group matrix has the same invariants as the inertia span") {
  std::mt19937 rng(71);
  std::uniform_int_distribution<long long> d(-30, 30);
  for (Variant v : {Variant::Deg4NonGalois, Variant::Deg4Biquadratic, Variant::Deg6}) {
    for (int trial = 0; trial < 25; ++trial) {
      long long p = trial % 2 ? 3 : 7;
      GaloisModel m = build_model(ModelParams{v, p, Int(d(rng)), Int(d(rng)), Int(d(rng))}, false);
      QuotientInvariants from_lattice =
          quotient_invariants(Lattice::full(m.ambient_rank, p), sum_of_inertia_lattices(m));
      CHECK(class_group_structure(m).invariants == from_lattice);
    }
  }
}

TEST_CASE("closed form values") {
  ClosedForms s = closed_form_values(deg6(5, 1, 1, 1));
  CHECK(s.det_K.value() == 28);
  CHECK(s.det_A.value() == 4);
  ClosedForms bq = closed_form_values(deg4bq(5, 1, 6));
  CHECK(bq.det_K.value() == -5);
  CHECK(closed_form_values(deg4ng(5, 1, 4)).det_K.value() == 5);
  CHECK(closed_form_values(deg6(5, 1, 4, 0)).det_A.value() == -63);
}

TEST_CASE("|K| is the determinant of the knot matrix up to sign") {
  std::mt19937 rng(73);
  std::uniform_int_distribution<long long> d(-40, 40);
  for (int trial = 0; trial < 25; ++trial) {
    GaloisModel m = deg6(7, d(rng), d(rng), d(rng), false);
    CHECK(determinant(knot_matrix(m)).value() == -closed_form_values(m).det_K.value());
  }
}

TEST_CASE("the |K| factorization identity") {
  std::mt19937 rng(79);
  std::uniform_int_distribution<long long> d(-1000, 1000);
  for (int trial = 0; trial < 200; ++trial) {
    Int a = d(rng), b = d(rng), c = d(rng);
    Int plus = a + b + c, minus = a + b - c;
    CHECK(plus * plus * plus + minus * minus * minus == 2 * (a + b) * ((a + b) * (a + b) + 3 * c * c));
  }
}

TEST_CASE("condition (iii) by lattice computation") {
  CHECK(condition_iii(deg6(5, 1, 1, 1)));
  CHECK_FALSE(condition_iii(deg6(7, 1, 1, 1)));  // |K| = 28 = 0 mod 7
  CHECK_FALSE(condition_iii(deg4ng(5, 1, 4)));   // a+b = 5
  CHECK(condition_iii(deg4ng(5, 1, 1)));
  CHECK(condition_iii(deg4bq(5, 1, 2)));
}

TEST_CASE("classification reports") {
  ClassificationReport r1 = classify(deg6(5, 1, 1, 1));
  CHECK(r1.case_tag == CaseTag::Sufficient);
  CHECK(r1.x_tilde_trivial == std::optional<bool>(true));
  CHECK(r1.knot_trivial);
  CHECK(r1.condition_iii);
  CHECK(r1.constraints_ok);

  ClassificationReport r2 = classify(deg6(7, 1, 1, 1));
  CHECK(r2.case_tag == CaseTag::CaseA);
  CHECK(r2.x_tilde_trivial == std::optional<bool>(false));
  CHECK(r2.class_group.dim_mod_p <= 1);

  ClassificationReport r3 = classify(deg6(5, 1, 4, 0));
  CHECK(r3.case_tag == CaseTag::CaseB);
  CHECK(r3.x_tilde_trivial == std::optional<bool>(false));
  CHECK(r3.class_group.tag == ClassTag::Trivial);

  ClassificationReport r4 = classify(deg4ng(5, 1, 2));
  CHECK(r4.case_tag == CaseTag::NotApplicable);

  // exploration tuple violating existence: report flags it, verdict omitted
  ClassificationReport r5 = classify(deg4ng(5, 0, 1, false));
  CHECK_FALSE(r5.constraints_ok);
  CHECK_FALSE(r5.x_tilde_trivial.has_value());
}

TEST_CASE("x_tilde_trivial equals the knot verdict on checked models") {
  std::mt19937 rng(83);
  std::uniform_int_distribution<long long> d(-30, 30);
  int seen = 0;
  for (int trial = 0; trial < 400 && seen < 120; ++trial) {
    Variant v = static_cast<Variant>(trial % 3);
    long long p = (trial % 2) ? 5 : 7;
    ModelParams params{v, p, Int(d(rng)), Int(d(rng)), Int(d(rng))};
    if (!params.constraints_hold()) continue;
    ClassificationReport r = classify(build_model(params, true));
    if (!r.constraints_ok) continue;  // dim 3 exploration-like tuples
    ++seen;
    REQUIRE(r.x_tilde_trivial.has_value());
    CHECK(*r.x_tilde_trivial == r.knot_trivial);
    CHECK((r.params.variant != Variant::Deg6 || r.knot_trivial == r.condition_iii));
  }
  CHECK(seen >= 100);
}

TEST_CASE("prime behavior diagnostics") {
  GaloisModel m = deg4ng(5, 1, 4);
  Lattice kinf = named_construction(m, "k_inf");
  for (const auto& pr : m.primes) {
    PrimeBehavior b = prime_behavior(kinf, m, pr.label);
    CHECK(b.non_split);
    CHECK_FALSE(b.unramified);
  }

  GaloisModel m6 = deg6(5, 1, 4, 0);
  Lattice r1 = named_construction(m6, "R_m_1");
  CHECK(prime_behavior(r1, m6, "p1").splits_completely);
  CHECK(prime_behavior(r1, m6, "p1bar").splits_completely);
  CHECK(prime_behavior(r1, m6, "p2").totally_ramified);

  Lattice full = Lattice::full(3, 5);
  for (const auto& pr : m.primes) {
    PrimeBehavior b = prime_behavior(full, m, pr.label);
    CHECK(b.splits_completely);
    CHECK(b.unramified);
    CHECK(b.image_invariants.trivial());
  }
}

TEST_CASE("J acts as inverse on the right quotients") {
  GaloisModel m = deg6(5, 1, 1, 1);
  CHECK(j_inverse_on_quotient(m, named_construction(m, "DD")));
  CHECK(j_inverse_on_quotient(m, Lattice::full(4, 5)));

  GaloisModel m4 = deg4ng(5, 1, 4);
  CHECK(j_inverse_on_quotient(m4, named_construction(m4, "L_prime")));
  CHECK(j_inverse_on_quotient(m4, named_construction(m4, "k_inf")));

  // D_p alone is not J-stable
  CHECK_THROWS_WITH(j_inverse_on_quotient(m4, decomposition_lattice(m4, "p")),
                    "action undefined: subgroup is not J-stable");

  // J is NOT inverse on the whole group modulo the zero lattice (gamma maps
  // to gamma times a word, not to gamma^-1)
  CHECK_FALSE(j_inverse_on_quotient(m4, Lattice::zero(3, 5)));
}

TEST_CASE("genus bound") {
  CHECK(genus_bound(0, 2, 0) == 2);
  CHECK(genus_bound(0, 3, 0) == 2);
  CHECK(genus_bound(0, 1, 0) == 1);
  CHECK(genus_bound(1, 0, 1) == 2);  // radicand 9
  CHECK(genus_bound(0, 0, 0) == 0);  // negative radicand edge
}

TEST_CASE("theorem (II): cyclic class group forces a+b nonzero mod p") {
  for (long long p : {3, 5, 7, 11, 13}) {
    for (long long a = 0; a < p; ++a)
      for (long long b = 0; b < p; ++b) {
        GaloisModel m = deg4ng(p, a, b, false);
        if (class_group_structure(m).tag == ClassTag::Cyclic) CHECK((a + b) % p != 0);
      }
  }
}

TEST_CASE("p=3 specialization: |K| nonzero iff a+b nonzero") {
  for (long long a = 0; a < 3; ++a)
    for (long long b = 0; b < 3; ++b)
      for (long long c = 0; c < 3; ++c) {
        GaloisModel m = deg6(3, a, b, c, false);
        CHECK(closed_form_x_tilde_trivial(m) == ((a + b) % 3 != 0));
      }
}

TEST_CASE("verify_lemma harnesses") {
  CHECK(verify_lemma(deg6(5, 1, 4, 0), "R_m_patterns").passed());
  CHECK(verify_lemma(deg6(5, 1, 1, 1), "M_properties").passed());
  CHECK(verify_lemma(deg6(5, 1, 1, 1), "N_intersection").passed());
  CHECK(verify_lemma(deg6(5, 1, 1, 1), "T_chain_inert").passed());
  CHECK(verify_lemma(deg4ng(3, 1, 1), "ki_deg4").passed());
  CHECK(verify_lemma(deg4bq(5, 2, 1), "ki_deg4").passed());
  CHECK(verify_lemma(deg6(7, 1, 1, 1), "ki_deg6_caseA").passed());
  CHECK(verify_lemma(deg6(5, 1, 1, 1), "sigma_permutation").passed());
  CHECK(verify_lemma(deg6(5, 1, 1, 1), "iii_iff_detK").passed());
  CHECK(verify_lemma(deg6(5, 1, 1, 1), "j_inverse_dd").passed());
  CHECK_THROWS_AS(verify_lemma(deg6(5, 1, 1, 1), "no_such_lemma"), std::invalid_argument);

  // hypothesis failures skip with a reason instead of failing
  LemmaReport skip = verify_lemma(deg6(5, 1, 1, 1), "R_m_patterns");
  CHECK_FALSE(skip.applicable);
  CHECK_FALSE(skip.skip_reason.empty());
  CHECK(skip.passed());
  LemmaReport skip2 = verify_lemma(deg6(5, 1, 1, 1), "ki_deg6_caseA");
  CHECK_FALSE(skip2.applicable);
}

TEST_CASE("itemized lemma checks carry claims") {
  LemmaReport r = verify_lemma(deg6(5, 1, 4, 0), "R_m_patterns");
  CHECK(r.applicable);
  CHECK(r.checks.size() > 10);
  for (const auto& c : r.checks) {
    CHECK_FALSE(c.claim.empty());
    CHECK(c.pass);
  }
}
