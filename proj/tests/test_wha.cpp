#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "dynwha/wha.hpp"

using namespace dynwha;

namespace {
const CycloField* F3() { return CycloField::get(3); }
}  // namespace

TEST_CASE("groupoid algebra passes all axioms") {
  auto kG = groupoid_full(F3(), 3);
  CHECK(kG->dim() == 9);
  Report rep = verify_axioms(*kG, SampleSpec{}, "kG3");
  CHECK(rep.all_pass());
  CHECK_FALSE(kG->is_ordinary_hopf);

  // two objects: dim 4, unit = id_X + id_Y
  auto kG2 = groupoid_full(F3(), 2);
  CHECK(kG2->dim() == 4);
  CHECK(kG2->unit_vec().size() == 2);
  CHECK(verify_axioms(*kG2, SampleSpec{}, "kG2").all_pass());

  // one object, group Z/2: an ordinary Hopf algebra
  auto z2 = groupoid_cyclic(F3(), 2);
  Report rz = verify_axioms(*z2, SampleSpec{}, "kZ2");
  CHECK(rz.all_pass());
  CHECK(z2->is_ordinary_hopf);
}

TEST_CASE("non-composable arrow spec is rejected") {
  // arrows 0->1 and 1->2 without 0->2 closure
  std::vector<std::pair<int, int>> arrows{{0, 0}, {1, 1}, {2, 2}, {1, 0}, {0, 1}, {2, 1}, {1, 2}};
  CHECK_THROWS_AS(groupoid_custom(F3(), 3, arrows), Error);
}

TEST_CASE("broken antipode is caught with a witness") {
  auto kG = groupoid_full(F3(), 3);
  auto bad = std::make_shared<Wha>(kG->dim(), kG->field(), kG->unit_vec());
  bad->mul_rule = [kG](Label a, Label b) { return kG->mul_labels(a, b); };
  bad->comul_rule = [kG](Label a) { return kG->comul(a); };
  bad->counit_rule = [kG](Label a) { return kG->counit(a); };
  bad->antipode_rule = [kG](Label a) -> SparseVec {
    return {{a, Cyclo::one(kG->field())}};  // identity instead of inversion
  };
  Report rep = verify_axioms(*bad, SampleSpec{}, "kG3-bad-S");
  CHECK_FALSE(rep.all_pass());
  bool found = false;
  for (const auto& c : rep.items)
    if (!c.pass && !c.witness.empty()) found = true;
  CHECK(found);
}

TEST_CASE("counital data of the groupoid algebra") {
  auto kG = groupoid_full(F3(), 3);
  CounitalData cd = counital_data(*kG, SampleSpec{}, "kG3");
  CHECK(cd.checks.all_pass());
  // base = span of the identity arrows: dimension 3
  CHECK(cd.ht_basis.size() == 3);
  CHECK(cd.hs_basis.size() == 3);
  // eps_t(g) = id at the target object
  for (Label a = 0; a < kG->dim(); ++a) {
    Tensor x(kG->dim(), 1);
    x.add_term(std::uint64_t{a}, Cyclo::one(F3()));
    Tensor et = cd.eps_t(x);
    CHECK(et.terms() == 1);
    // idempotent arrows satisfy eps_t(g) g = g
    Tensor prod = mul(*kG, et, x);
    CHECK(prod == x);
  }
}

TEST_CASE("dual weak Hopf algebra") {
  auto kG = groupoid_full(F3(), 2);
  auto D = dual_wha(kG);
  Report rep = verify_axioms(*D, SampleSpec{}, "kG2-dual");
  CHECK(rep.all_pass());
  // delta functions multiply as projections: p_g p_h = delta p_g
  for (Label a = 0; a < D->dim(); ++a)
    for (Label b = 0; b < D->dim(); ++b) {
      const SparseVec& mv = D->mul_labels(a, b);
      if (a == b) {
        REQUIRE(mv.size() == 1);
        CHECK(mv[0].first == a);
        CHECK(mv[0].second.is_one());
      } else {
        CHECK(mv.empty());
      }
    }
  // Delta(p_g) = sum over factorizations uv = g
  const Tensor& dp = D->comul(0);
  std::size_t count = 0;
  for (const auto& [k, c] : dp.terms_map()) {
    count++;
    const SparseVec& mv = kG->mul_labels(dp.slot_of(k, 0), dp.slot_of(k, 1));
    REQUIRE(mv.size() == 1);
    CHECK(mv[0].first == 0);
  }
  CHECK(count > 0);

  // dual of dual has the original structure constants
  auto DD = dual_wha(std::shared_ptr<const Wha>(D));
  for (Label a = 0; a < kG->dim(); ++a) {
    for (Label b = 0; b < kG->dim(); ++b) {
      CHECK(DD->mul_labels(a, b) == kG->mul_labels(a, b));
    }
    CHECK(DD->comul(a) == kG->comul(a));
    CHECK(DD->counit(a) == kG->counit(a));
    CHECK(DD->antipode(a) == kG->antipode(a));
  }
}

TEST_CASE("functional products") {
  auto kG = groupoid_full(F3(), 2);
  // epsilon is the unit of the dual
  Functional eps;
  eps.values.assign(kG->dim(), Cyclo::one(F3()));
  for (Label a = 0; a < kG->dim(); ++a) {
    Functional phi = functional_from_dual_label(*kG, a);
    Functional prod = functional_dual_product(*kG, eps, phi);
    for (Label h = 0; h < kG->dim(); ++h) CHECK(prod.values[h] == phi.values[h]);
  }
  // order-swapped product matches the dual of the opposite multiplication
  auto D = dual_wha(kG);
  for (Label a = 0; a < kG->dim(); ++a)
    for (Label b = 0; b < kG->dim(); ++b) {
      Functional fa = functional_from_dual_label(*kG, a);
      Functional fb = functional_from_dual_label(*kG, b);
      Functional swapped = functional_dual_product(*kG, fa, fb, true);
      Functional direct = functional_dual_product(*kG, fb, fa, false);
      for (Label h = 0; h < kG->dim(); ++h) CHECK(swapped.values[h] == direct.values[h]);
    }
}

TEST_CASE("trivial twist and gauge") {
  auto kG = groupoid_full(F3(), 3);
  TwistPair triv{kG->delta_one(), kG->delta_one()};
  Report rep = verify_twist(*kG, triv, "kG3-trivial");
  CHECK(rep.all_pass());
  TwistedAlgebra tw = apply_twist(*kG, triv);
  for (Label a = 0; a < kG->dim(); ++a) {
    CHECK(tw.wha->comul(a) == kG->comul(a));
    CHECK(tw.wha->antipode(a) == kG->antipode(a));
  }
  // perturbing one coefficient breaks a named identity
  TwistPair broken = triv;
  auto key = broken.theta.terms_map().begin()->first;
  broken.theta.terms_map().begin()->second =
      broken.theta.terms_map().begin()->second.scaled(Rat(2));
  (void)key;
  Report rep2 = verify_twist(*kG, broken, "kG3-broken");
  CHECK_FALSE(rep2.all_pass());

  // gauge transform with x = 1 leaves the twist unchanged
  Tensor one = unit_tensor(*kG, 1);
  GaugeResult g = gauge_transform(*kG, triv, one, SampleSpec{}, "kG3-gauge1");
  CHECK(g.twisted.theta == triv.theta);
  CHECK(g.twisted.theta_bar == triv.theta_bar);
  CHECK(g.morphism.all_pass());

  // x violating the counital condition is rejected
  Tensor badx(kG->dim(), 1);
  badx.add_term(std::uint64_t{0}, Cyclo::from_rat(F3(), Rat(2)));
  CHECK_THROWS_AS(gauge_transform(*kG, triv, badx, SampleSpec{}, "bad"), Error);
}

TEST_CASE("quasitriangular structure on a trivial algebra") {
  auto k = groupoid_cyclic(F3(), 1);  // the ground field
  QTStructure qt{unit_tensor(*k, 2), unit_tensor(*k, 2)};
  Report rep = verify_quasitriangular(*k, qt, SampleSpec{}, "k-trivial");
  CHECK(rep.all_pass());
  RhoResult rho = rho_map(*k, qt, 1, SampleSpec{}, "k-trivial");
  CHECK(rho.rank == 1);
  CHECK(rho.checks.all_pass());
}

TEST_CASE("algebroid structure of groupoid algebras") {
  auto kG = groupoid_full(F3(), 3);
  Report rep = algebroid_from_wha(*kG, SampleSpec{}, "kG3");
  CHECK(rep.all_pass());
  auto z2 = groupoid_cyclic(F3(), 2);
  CHECK(algebroid_from_wha(*z2, SampleSpec{}, "kZ2").all_pass());
}

TEST_CASE("morphism checker flags a broken map") {
  auto kG = groupoid_full(F3(), 2);
  auto image_id = [&](Label a) {
    Tensor t(kG->dim(), 1);
    t.add_term(std::uint64_t{a}, Cyclo::one(F3()));
    return t;
  };
  CHECK(check_wha_morphism(*kG, *kG, image_id, SampleSpec{}, "identity").all_pass());
  auto image_bad = [&](Label a) {
    Tensor t(kG->dim(), 1);
    t.add_term(std::uint64_t{(a + 1) % kG->dim()}, Cyclo::one(F3()));
    return t;
  };
  CHECK_FALSE(check_wha_morphism(*kG, *kG, image_bad, SampleSpec{}, "shift").all_pass());
}
