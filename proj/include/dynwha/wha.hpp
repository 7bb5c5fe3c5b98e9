#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <random>

#include "dynwha/report.hpp"
#include "dynwha/tensor.hpp"

namespace dynwha {

struct SampleSpec {
  std::uint32_t full_threshold = 512;
  int n_random = 64;
  std::uint64_t seed = 0;
};

/// A finite-dimensional weak Hopf algebra presented by structure rules on a
/// fixed basis.  Rules are closures over labels; results are memoized.
class Wha : public AlgebraOps {
 public:
  Wha(std::uint32_t dim, const CycloField* f, SparseVec unit);

  std::uint32_t dim() const override { return dim_; }
  const CycloField* field() const override { return f_; }
  const SparseVec& unit_vec() const override { return unit_; }
  const SparseVec& mul_labels(Label a, Label b) const override;
  bool mul_known_zero(Label a, Label b) const override {
    return zero_mul_hint && zero_mul_hint(a, b);
  }
  std::string label_name(Label a) const override {
    return namer ? namer(a) : "#" + std::to_string(a);
  }

  // Structure rules (set before use).
  std::function<SparseVec(Label, Label)> mul_rule;
  std::function<Tensor(Label)> comul_rule;  // rank-2 tensor
  std::function<Cyclo(Label)> counit_rule;
  std::function<SparseVec(Label)> antipode_rule;
  std::function<SparseVec(Label)> antipode_inv_rule;  // optional
  std::function<bool(Label, Label)> zero_mul_hint;     // optional
  std::function<std::string(Label)> namer;             // optional
  std::vector<Label> generators;                       // used by samplers

  const Tensor& comul(Label a) const;
  Cyclo counit(Label a) const { return counit_rule(a); }
  const SparseVec& antipode(Label a) const;
  const SparseVec& antipode_inv(Label a) const;

  // Element-level conveniences (rank-1 tensors).
  Tensor apply_antipode(const Tensor& x) const;
  Tensor apply_antipode_inv(const Tensor& x) const;
  Tensor comul_elem(const Tensor& x) const;  // rank-1 -> rank-2
  Cyclo counit_elem(const Tensor& x) const;
  Tensor delta_one() const;  // comul of the unit, rank 2

  // Flags discovered by verify_axioms.
  mutable bool is_ordinary_hopf = false;

 private:
  std::uint32_t dim_;
  const CycloField* f_;
  SparseVec unit_;
  mutable std::unordered_map<std::uint64_t, SparseVec> mul_cache_;
  mutable std::unordered_map<Label, Tensor> comul_cache_;
  mutable std::unordered_map<Label, SparseVec> antipode_cache_;
  mutable std::unordered_map<Label, SparseVec> antipode_inv_cache_;
};

/// Seeded sparse elements and element pairs for sampled verification.
struct Sampler {
  Sampler(const Wha& W, const SampleSpec& spec);
  /// Basis labels (full) or empty when sampling mode is active.
  std::vector<Label> singles_full;
  std::vector<Tensor> singles;         // elements to test linear axioms on
  std::vector<std::pair<Tensor, Tensor>> pairs;   // for homomorphism axioms
  std::vector<std::array<Tensor, 3>> triples;     // for the counit identity
  bool full_mode = false;
};

/// Verifies the weak bialgebra and antipode axioms; failures carry witnesses.
Report verify_axioms(const Wha& W, const SampleSpec& spec, const std::string& instance);

struct CounitalData {
  Tensor e_t, e_s;                      // separability idempotents, rank 2
  std::vector<SparseVec> ht_basis, hs_basis;
  std::function<Tensor(const Tensor&)> eps_t, eps_s;
  Report checks;
};
CounitalData counital_data(const Wha& W, const SampleSpec& spec, const std::string& instance);

/// Structure-constant dual (transpose tables); dimension-guarded.
std::shared_ptr<Wha> dual_wha(std::shared_ptr<const Wha> W, std::uint32_t table_threshold = 1024);

/// Target and source counital maps applied to rank-1 elements.
Tensor eps_t_elem(const Wha& W, const Tensor& x);
Tensor eps_s_elem(const Wha& W, const Tensor& x);

/// Lazily multiplied functionals on W: phi*psi evaluated via the coproduct,
/// optionally in the opposite order.
struct Functional {
  std::vector<Cyclo> values;  // on basis labels
};
Functional functional_from_dual_label(const Wha& W, Label a);
Functional functional_dual_product(const Wha& W, const Functional& a, const Functional& b,
                                   bool opposite = false);
Cyclo functional_eval(const CycloField* f, const Functional& fn, const Tensor& x);

struct TwistPair {
  Tensor theta, theta_bar;
};

Report verify_twist(const Wha& W, const TwistPair& tw, const std::string& instance);

struct TwistedAlgebra {
  std::shared_ptr<Wha> wha;
  Tensor v, v_inv;  // rank-1
  std::function<Tensor(const Tensor&)> eps_t_twisted, eps_s_twisted;
};
/// Twisted comultiplication h -> theta_bar * Delta(h) * theta, antipode
/// conjugated by v = m(S x id)(theta); requires verify_twist to pass.
TwistedAlgebra apply_twist(const Wha& W, const TwistPair& tw);

/// Gauge-transformed twist plus the morphism check for h -> x^-1 h x.
struct GaugeResult {
  TwistPair twisted;
  Tensor x_inv;
  Report morphism;
};
GaugeResult gauge_transform(const Wha& W, const TwistPair& tw, const Tensor& x,
                            const SampleSpec& spec, const std::string& instance);

struct QTStructure {
  Tensor R, Rbar;
};
Report verify_quasitriangular(const Wha& W, const QTStructure& qt, const SampleSpec& spec,
                              const std::string& instance);

/// rho_1: phi -> (id x phi) R  or  rho_2: phi -> (phi x id) R, as a dim x dim
/// matrix over the dual basis, with sampled morphism checks and exact rank.
struct RhoResult {
  std::vector<std::vector<Cyclo>> matrix;  // column j = image of dual basis j
  long rank = 0;
  Report checks;
};
RhoResult rho_map(const Wha& W, const QTStructure& qt, int which, const SampleSpec& spec,
                  const std::string& instance);

/// Hopf-algebroid realization over the base H_t with the section
/// gamma(x) = Delta(1) x; verifies the algebroid axioms.
Report algebroid_from_wha(const Wha& W, const SampleSpec& spec, const std::string& instance);

/// Groupoid algebra fixtures.
std::shared_ptr<Wha> groupoid_full(const CycloField* f, int n_objects);
std::shared_ptr<Wha> groupoid_cyclic(const CycloField* f, int order);
/// Thin groupoid from an arrow list (src, dst); throws NotAGroupoid unless the
/// list is closed under identities, inverses and composition.
std::shared_ptr<Wha> groupoid_custom(const CycloField* f, int n_objects,
                                     const std::vector<std::pair<int, int>>& arrows);

/// Morphism checks for a linear map given by images of basis labels.
Report check_wha_morphism(const Wha& src, const Wha& dst,
                          const std::function<Tensor(Label)>& image, const SampleSpec& spec,
                          const std::string& instance, bool opposite_mul = false);

/// Dump helper for witnesses.
std::string tensor_brief(const AlgebraOps& W, const Tensor& t, std::size_t max_terms = 4);

}  // namespace dynwha
