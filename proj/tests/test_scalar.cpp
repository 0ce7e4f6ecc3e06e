#include <catch2/catch_amalgamated.hpp>

#include "plocal/scalar.hpp"

using namespace plocal;

TEST_CASE("valuation of integers and rationals") {
  CHECK(Scalar(50, 5).valuation() == Valuation(2));  // 50 = 2 * 5^2
  CHECK(Scalar(0, 5).valuation() == std::nullopt);
  CHECK(Scalar(Rational(3, 4), 5).valuation() == Valuation(0));
  CHECK(Scalar(-75, 5).valuation() == Valuation(2));
  CHECK(Scalar(Rational(10, 3), 5).valuation() == Valuation(1));
}

TEST_CASE("scalars stay reduced with positive denominator") {
  Scalar s(Rational(4) / Rational(-6), 5);
  CHECK(s.numerator() == -2);
  CHECK(s.denominator() == 3);
}

TEST_CASE("denominator divisible by p is rejected") {
  CHECK_THROWS_AS(Scalar(Rational(1, 5), 5), std::domain_error);
  CHECK_THROWS_AS(Scalar(Rational(3, 10), 5), std::domain_error);
  CHECK_NOTHROW(Scalar(Rational(3, 10), 3));
}

TEST_CASE("ring arithmetic") {
  Scalar a(Rational(3, 4), 5), b(Rational(1, 2), 5);
  CHECK((a + b).value() == Rational(5, 4));
  CHECK((a - b).value() == Rational(1, 4));
  CHECK((a * b).value() == Rational(3, 8));
  CHECK((a / b).value() == Rational(3, 2));
  CHECK((-a).value() == Rational(-3, 4));
  CHECK_THROWS_AS(Scalar(1, 3) + Scalar(1, 5), std::invalid_argument);
}

TEST_CASE("division by a non-unit is an error, not a Q_p element") {
  CHECK_THROWS_AS(Scalar(6, 3) / Scalar(3, 3), std::domain_error);
  CHECK_THROWS_AS(Scalar(1, 5) / Scalar(0, 5), std::domain_error);
  CHECK((Scalar(6, 5) / Scalar(3, 5)).value() == 2);  // 3 is a unit in Z_(5)
}

TEST_CASE("residues") {
  CHECK(Scalar(7, 5).residue() == 2);
  CHECK(Scalar(-1, 5).residue() == 4);
  CHECK(Scalar(Rational(1, 2), 5).residue() == 3);  // 2 * 3 = 6 = 1 mod 5
  CHECK(residue_mod(Rational(1, 2), Int(25)) == 13);
}

TEST_CASE("residue_mod requires an invertible denominator") {
  CHECK_THROWS_AS(residue_mod(Rational(1, 3), Int(9)), std::domain_error);
  CHECK(residue_mod(Rational(5, 2), Int(9)) == 7);  // 2^{-1} = 5 mod 9, 5*5 = 25 = 7
}

TEST_CASE("unit and zero predicates") {
  CHECK(Scalar(3, 5).is_unit());
  CHECK_FALSE(Scalar(10, 5).is_unit());
  CHECK(Scalar(0, 5).is_zero());
}

TEST_CASE("odd prime detection") {
  CHECK(is_odd_prime(3));
  CHECK(is_odd_prime(104729));
  CHECK_FALSE(is_odd_prime(2));
  CHECK_FALSE(is_odd_prime(9));
  CHECK_FALSE(is_odd_prime(1));
  CHECK_THROWS_AS(require_odd_prime(4), std::invalid_argument);
}
