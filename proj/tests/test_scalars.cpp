#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "dynwha/scalars.hpp"

using namespace dynwha;

TEST_CASE("cyclotomic polynomial construction") {
  // Phi_3 = x^2 + x + 1, computed by dividing x^3 - 1 by x - 1.
  const CycloField* f3 = CycloField::get(3);
  CHECK(f3->degree() == 2);
  CHECK(f3->modulus()[0] == 1);
  CHECK(f3->modulus()[1] == 1);
  CHECK(f3->modulus()[2] == 1);

  CHECK(CycloField::get(5)->degree() == 4);
  CHECK(CycloField::get(7)->degree() == 6);
  CHECK(CycloField::get(9)->degree() == 6);  // Phi_9 = x^6 + x^3 + 1
  CHECK(CycloField::get(15)->degree() == 8);

  CHECK_THROWS_AS(CycloField::get(4), Error);
  CHECK_THROWS_AS(CycloField::get(1), Error);
}

TEST_CASE("field arithmetic basics") {
  const CycloField* f = CycloField::get(3);
  Cyclo q = Cyclo::q_power(f, 1);
  Cyclo one = Cyclo::one(f);

  // q * q^(l-1) = 1
  CHECK(q * Cyclo::q_power(f, 2) == one);
  // 1 / q = q^(l-1)
  CHECK(one / q == Cyclo::q_power(f, 2));
  // 1 + q + q^2 = 0 (Phi_3 at q)
  CHECK((one + q + q * q).is_zero());
  CHECK_THROWS_AS(one / Cyclo::zero(f), Error);
}

TEST_CASE("q combinatorics") {
  const CycloField* f = CycloField::get(5);
  Cyclo one = Cyclo::one(f);
  CHECK(q_combinatorics(f, 1, QKind::q_int) == one);
  // [2]_q = q + q^-1
  CHECK(q_combinatorics(f, 2, QKind::q_int) ==
        Cyclo::q_power(f, 1) + Cyclo::q_power(f, -1));
  // [l]_q = 0 at a primitive l-th root
  CHECK(q_combinatorics(f, 5, QKind::q_int).is_zero());
  CHECK_THROWS_AS(q_factorial_nonzero(f, 5), Error);
  CHECK_FALSE(q_factorial_nonzero(f, 4).is_zero());

  // [n]_q (q - q^-1) = q^n - q^-n for 0 <= n < 2l
  for (long n = 0; n < 10; ++n) {
    Cyclo lhs = q_combinatorics(f, n, QKind::q_int) *
                (Cyclo::q_power(f, 1) - Cyclo::q_power(f, -1));
    Cyclo rhs = Cyclo::q_power(f, n) - Cyclo::q_power(f, -n);
    CHECK(lhs == rhs);
  }
}

TEST_CASE("division round trip on random scalars") {
  std::mt19937_64 rng(42);
  for (long ell : {3L, 5L, 7L}) {
    const CycloField* f = CycloField::get(ell);
    for (int trial = 0; trial < 40; ++trial) {
      std::vector<Rat> cs;
      for (int i = 0; i < f->degree(); ++i)
        cs.push_back(Rat(static_cast<long>(rng() % 7) - 3) /
                     Rat(1 + static_cast<long>(rng() % 4)));
      Cyclo a = Cyclo::from_coeffs(f, cs);
      if (a.is_zero()) continue;
      Cyclo r = (Cyclo::one(f) / a) * a;
      CHECK(r == Cyclo::one(f));
    }
  }
}

TEST_CASE("canonicality") {
  const CycloField* f = CycloField::get(7);
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<Rat> cs;
    for (int i = 0; i < f->degree(); ++i) cs.emplace_back(static_cast<long>(rng() % 9) - 4);
    Cyclo a = Cyclo::from_coeffs(f, cs);
    CHECK(a + Cyclo::zero(f) == a);
    // two reduction orders: (a*q)*q^-1 vs a*(q*q^-1)
    Cyclo q = Cyclo::q_power(f, 1);
    CHECK((a * q) * Cyclo::q_power(f, -1) == a * (q * Cyclo::q_power(f, -1)));
  }
}

TEST_CASE("genericity check") {
  std::set<std::vector<long>> weights{{1}, {2}};
  CHECK(genericity_check(LambdaParam({Rat(2)}), weights, 3).pass);
  auto r = genericity_check(LambdaParam({Rat(1)}), {{1}}, 3);
  CHECK_FALSE(r.pass);
  CHECK(r.witness == std::vector<long>{1});
  auto r2 = genericity_check(LambdaParam({Rat(2), Rat(1, 2)}), {{1, 0}, {1, 1}}, 3);
  CHECK_FALSE(r2.pass);
  CHECK(r2.witness == std::vector<long>({1, 1}));
  // -1 is not an odd-order root of unity, but is one of even order
  CHECK(genericity_check(LambdaParam({Rat(-1)}), {{1}}, 3, 1).pass);
  CHECK_FALSE(genericity_check(LambdaParam({Rat(-1)}), {{1}}, 3, 2).pass);
  CHECK_THROWS_AS(LambdaParam({Rat(0)}), Error);
}

TEST_CASE("genericity equals exhaustive root enumeration in small fields") {
  // pass <=> no (l*f)-th root of unity zeta with Lambda_alpha * zeta = 1.
  for (long ell : {3L, 5L}) {
    for (long f : {1L, 2L}) {
      const CycloField* F = CycloField::get(ell * f % 2 == 0 ? 2 * ell * f + 1 : ell * f);
      (void)F;
      for (Rat lam : {Rat(2), Rat(1), Rat(-1), Rat(1, 2), Rat(-2)}) {
        bool expect = true;
        // enumerate rational roots of unity of order dividing l*f: 1 and,
        // for even l*f, -1; irrational roots cannot multiply a rational to 1.
        if (lam == 1) expect = false;
        if (lam == -1 && (ell * f) % 2 == 0) expect = false;
        auto res = genericity_check(LambdaParam({lam}), {{1}}, ell, f);
        CHECK(res.pass == expect);
      }
    }
  }
}
