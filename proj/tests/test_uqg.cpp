#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "dynwha/uqg.hpp"

using namespace dynwha;

namespace {
std::shared_ptr<Uq> U3() {
  static std::shared_ptr<Uq> u = build_uq(CartanDatum::A(1), 3);
  return u;
}
}  // namespace

TEST_CASE("construction and dimension") {
  auto U = U3();
  CHECK(U->wha()->dim() == 27);
  CHECK_THROWS_AS(build_uq(CartanDatum::A(2), 3), Error);  // det A2 = 3
  CHECK_THROWS_AS(build_uq(CartanDatum::A(1), 4), Error);
  CHECK_THROWS_AS(build_uq(CartanDatum::A(2), 5), Error);  // no rank-2 table
  // A2 datum itself is fine for torus-level use
  CartanDatum a2 = CartanDatum::A(2);
  CHECK(a2.positive_roots.size() == 3);
  CHECK(a2.positive_roots[1] == TVec{1, 1});  // normal order (a1, a1+a2, a2)
  CHECK(a2.det() == 3);
  CHECK(CartanDatum::A(1).det() == 2);
}

TEST_CASE("defining relations in normal form") {
  auto U = U3();
  const Wha& W = *U->wha();
  Label E = U->gen_E(0), F = U->gen_F(0), K = U->gen_K(0);
  const CycloField* f = U->field();
  // E F = F E + (K - K^-1)/(q - q^-1)
  Tensor ef = from_vec(W, W.mul_labels(E, F));
  Tensor fe = from_vec(W, W.mul_labels(F, E));
  Tensor kk(W.dim(), 1);
  Cyclo den = Cyclo::q_power(f, 1) - Cyclo::q_power(f, -1);
  kk.add_term(std::uint64_t{U->gen_K(0, 1)}, Cyclo::one(f) / den);
  kk.add_term(std::uint64_t{U->gen_K(0, -1)}, -(Cyclo::one(f) / den));
  CHECK(ef == fe + kk);
  // K E = q^2 E K
  Tensor ke = from_vec(W, W.mul_labels(K, E));
  Tensor ek = from_vec(W, W.mul_labels(E, K)).scaled(Cyclo::q_power(f, 2));
  CHECK(ke == ek);
  // E^(l-1) * E = 0
  Label El1 = U->label_of({0}, {0}, {2});
  CHECK(W.mul_labels(El1, E).empty());
  // K^l = 1
  Label Kl1 = U->gen_K(0, 2);
  const SparseVec& kl = W.mul_labels(Kl1, K);
  REQUIRE(kl.size() == 1);
  CHECK(kl[0].first == U->unit_label());
}

TEST_CASE("confluence of normalization") {
  auto U = U3();
  std::mt19937_64 rng(2024);
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<GenPower> word;
    int len = 2 + static_cast<int>(rng() % 5);
    for (int i = 0; i < len; ++i) {
      Gen g = static_cast<Gen>(rng() % 4);
      word.push_back({g, 0, 1 + static_cast<long>(rng() % 2)});
    }
    // normalize left-to-right
    Tensor a = U->normalize(word);
    // normalize right-to-left: build the suffix product then multiply by the
    // leading generator expansions one step at a time from the right
    Tensor b = unit_tensor(*U->wha(), 1);
    for (auto it = word.rbegin(); it != word.rend(); ++it) {
      Tensor factor = U->normalize({*it});
      b = mul(*U->wha(), factor, b);
    }
    CHECK(a == b);
  }
}

TEST_CASE("coalgebra structure on generators") {
  auto U = U3();
  const Wha& W = *U->wha();
  const CycloField* f = U->field();
  Label E = U->gen_E(0), F = U->gen_F(0), K = U->gen_K(0);
  // Delta(K) = K x K
  Tensor dk = W.comul(K);
  CHECK(dk.terms() == 1);
  CHECK(dk.find(static_cast<std::uint64_t>(K) * W.dim() + K) != nullptr);
  // eps(E) = 0, eps(K) = 1
  CHECK(W.counit(E).is_zero());
  CHECK(W.counit(K).is_one());
  // m(S x id)Delta(F) = eps(F) 1 = 0
  Tensor dF = W.comul(F);
  Tensor acc(W.dim(), 1);
  for (const auto& [k, c] : dF.terms_map())
    for (const auto& [sl, sc] : W.antipode(dF.slot_of(k, 0)))
      for (const auto& [ml, mc] : W.mul_labels(sl, dF.slot_of(k, 1)))
        acc.add_term(std::uint64_t{ml}, c * sc * mc);
  acc.compact();
  CHECK(acc.empty_or_zero());
  (void)f;
}

TEST_CASE("U is an ordinary Hopf algebra (full axioms at l=3)") {
  auto U = U3();
  Report rep = verify_axioms(*U->wha(), SampleSpec{}, "Uq-sl2-l3");
  CHECK(rep.all_pass());
  CHECK(U->wha()->is_ordinary_hopf);
}

TEST_CASE("antipode inverse") {
  auto U = U3();
  const Wha& W = *U->wha();
  for (Label l = 0; l < W.dim(); ++l) {
    Tensor x(W.dim(), 1);
    x.add_term(std::uint64_t{l}, Cyclo::one(U->field()));
    CHECK(W.apply_antipode(W.apply_antipode_inv(x)) == x);
    CHECK(W.apply_antipode_inv(W.apply_antipode(x)) == x);
  }
}

TEST_CASE("gradings") {
  auto U = U3();
  Label E = U->gen_E(0), F = U->gen_F(0), K = U->gen_K(0);
  // E F K has weight 0 and degree 0
  Tensor efk = U->normalize({{Gen::E, 0, 1}, {Gen::F, 0, 1}, {Gen::K, 0, 1}});
  CHECK(U->is_zero_weight(efk));
  // E^2 has weight 2 alpha and degree 2
  Label E2 = U->label_of({0}, {0}, {2});
  CHECK(U->weight(E2) == TVec{2});
  CHECK(U->zdegree(E2) == 2);
  CHECK(U->zdegree(E) == 1);
  CHECK(U->zdegree(F) == -1);
  CHECK(U->zdegree(K) == 0);
  // Omega has zero weight
  CHECK(U->is_zero_weight(U->omega2()));
}

TEST_CASE("Lambda automorphism and torus adjoint") {
  auto U = U3();
  LambdaParam lam({Rat(2)});
  Label E = U->gen_E(0), F = U->gen_F(0), K = U->gen_K(0);
  Tensor e(U->wha()->dim(), 1), f(U->wha()->dim(), 1), k(U->wha()->dim(), 1);
  e.add_term(std::uint64_t{E}, Cyclo::one(U->field()));
  f.add_term(std::uint64_t{F}, Cyclo::one(U->field()));
  k.add_term(std::uint64_t{K}, Cyclo::one(U->field()));
  CHECK(U->apply_lambda(lam, e, 0, false) == e.scaled(Cyclo::from_rat(U->field(), Rat(2))));
  CHECK(U->apply_lambda(lam, f, 0, false) ==
        f.scaled(Cyclo::from_rat(U->field(), Rat(1) / Rat(2))));
  CHECK(U->apply_lambda(lam, k, 0, false) == k);
  // Lambda(EF) = EF (weight zero)
  Tensor ef = U->normalize({{Gen::E, 0, 1}, {Gen::F, 0, 1}});
  CHECK(U->apply_lambda(lam, U->apply_lambda(lam, ef, 0, false), 1, false) == ef);
  // ad K_lambda on E: q^(2 lambda) E for sl2
  CHECK(U->apply_ad_k({1}, e, 0, false) == e.scaled(Cyclo::q_power(U->field(), 2)));
}

TEST_CASE("universal R-matrix") {
  auto U = U3();
  const Wha& W = *U->wha();
  const Tensor& R = U->universal_R();
  // (eps x id) R = 1 = (id x eps) R
  Tensor l = contract_slot(R, 0, [&](Label a) { return W.counit(a); });
  Tensor r = contract_slot(R, 1, [&](Label a) { return W.counit(a); });
  CHECK(l == unit_tensor(W, 1));
  CHECK(r == unit_tensor(W, 1));
  // intertwining on the generator E exactly
  Label E = U->gen_E(0);
  Tensor dE = W.comul(E);
  CHECK(mul(W, permute(dE, {1, 0}), R) == mul(W, R, dE));
  // degree->0 part of R - Omega vanishes: R = Omega + strictly positive part
  Tensor diff = R - U->omega2();
  for (const auto& [k, c] : diff.terms_map()) CHECK(U->zdegree(diff.slot_of(k, 0)) > 0);
  // full quasitriangularity suite incl. QYBE (exact, 27^3 sparse)
  QTStructure qt{R, U->universal_R_inv()};
  Report rep = verify_quasitriangular(W, qt, SampleSpec{}, "R-sl2-l3");
  CHECK(rep.all_pass());
}

TEST_CASE("I+ weights for genericity") {
  auto U = U3();
  auto w = U->iplus_weights();
  CHECK(w == std::set<std::vector<long>>{{1}, {2}});
}
