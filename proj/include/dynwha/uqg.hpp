#pragma once

#include <memory>
#include <set>

#include "dynwha/torus.hpp"
#include "dynwha/wha.hpp"

namespace dynwha {

/// Simply laced Cartan datum with a fixed convex normal ordering of the
/// positive roots.
struct CartanDatum {
  std::string type;
  int m = 0;
  std::vector<std::vector<long>> cartan;
  std::vector<TVec> positive_roots;  // expansions in simple roots, normal order

  static CartanDatum A(int n);
  static CartanDatum from_name(const std::string& name);  // "A1", "A2", ...
  long det() const;
};

enum class Gen { E, F, K, Kinv };
struct GenPower {
  Gen g;
  int index = 0;  // which simple root
  long power = 1;
};

/// The finite-dimensional quantum group at a primitive ell-th root of unity,
/// with PBW basis F^a K^c E^b.  Products are rank-1 only; higher-rank data
/// builds the torus-level machinery but has no straightening table.
class Uq {
 public:
  Uq(const CartanDatum& datum, long ell);

  const CartanDatum& datum() const { return datum_; }
  long ell() const { return ell_; }
  int m() const { return datum_.m; }
  int n_pos() const { return static_cast<int>(datum_.positive_roots.size()); }
  const CycloField* field() const { return f_; }
  const Torus& torus() const { return *torus_; }
  std::shared_ptr<Wha> wha() const { return W_; }

  struct Parts {
    std::vector<long> f, e;  // exponents per positive root
    TVec k;
  };
  Parts parts(Label l) const;
  Label label_of(const std::vector<long>& f, const TVec& k, const std::vector<long>& e) const;
  std::string name(Label l) const;

  const TVec& weight(Label l) const { return weights_[l]; }
  long zdegree(Label l) const { return degrees_[l]; }
  long first_slot_degree(const Tensor& t) const;

  /// Normal form of a generator word (left-to-right product).
  Tensor normalize(const std::vector<GenPower>& word) const;

  /// Weight-homogeneous components and the Z-degree decomposition.
  std::map<TVec, Tensor> weight_components(const Tensor& x) const;
  std::map<long, Tensor> degree_components_slot(const Tensor& x, int slot) const;
  bool is_zero_weight(const Tensor& x) const;

  /// Torus subalgebra embedding (labels with zero E and F parts).
  Tensor from_torus(const TorusTensor& t) const;
  TorusTensor to_torus(const Tensor& t) const;
  Tensor P_mu(const TVec& mu) const;  // rank-1 weight idempotent

  /// Diagonal actions on one tensor slot.
  Tensor apply_lambda(const LambdaParam& L, const Tensor& x, int slot, bool inverse) const;
  Tensor apply_ad_k(const TVec& lam, const Tensor& x, int slot, bool inverse) const;
  Rat lambda_weight(const LambdaParam& L, const TVec& w) const;

  /// Universal R-matrix and its exact two-sided inverse.
  const Tensor& universal_R() const;
  const Tensor& universal_R_inv() const;
  Tensor omega2() const;
  Tensor omega2_inv() const;

  /// Weights of the nonzero components of I_+ (for genericity checks).
  std::set<std::vector<long>> iplus_weights() const;

  Label unit_label() const { return label_of(zero_fe_, TVec(datum_.m, 0), zero_fe_); }
  Label gen_E(int i) const;
  Label gen_F(int i) const;
  Label gen_K(int i, long power = 1) const;

 private:
  SparseVec right_mul_gen(Label l, Gen g, int index) const;
  void build_wha();

  CartanDatum datum_;
  long ell_;
  const CycloField* f_;
  std::unique_ptr<Torus> torus_;
  std::shared_ptr<Wha> W_;
  std::uint32_t dim_;
  std::vector<TVec> weights_;
  std::vector<long> degrees_;
  std::vector<long> zero_fe_;
  mutable Tensor R_, R_inv_;
  mutable bool R_built_ = false;
  mutable std::vector<std::vector<Tensor>> comul_pow_cache_;
};

std::shared_ptr<Uq> build_uq(const CartanDatum& datum, long ell);

}  // namespace dynwha
