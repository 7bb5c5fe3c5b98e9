#pragma once

#include <optional>

#include "dynwha/uqg.hpp"

namespace dynwha {

/// Generalized Belavin-Drinfeld triple with its derived lattice data and the
/// induced torus automorphism.
struct BDTriple {
  CartanDatum datum;
  long ell = 0;
  std::vector<int> gamma1, gamma2;
  std::map<int, int> Tmap;  // simple-root index map Gamma1 -> Gamma2
  bool nilpotent = false;
  long order = 1;                        // n(T) for non-nilpotent triples
  std::vector<std::vector<int>> cycles;  // periodic orbits in cycle order
  SublatticeCalc lattices;
  std::vector<std::vector<long>> tau;      // matrix of the torus automorphism mod ell
  std::vector<std::vector<long>> tau_inv;  // its inverse mod ell

  TVec tau_apply(const Torus& T, const TVec& v, bool inverse = false) const;
  bool is_full_identity() const;  // Gamma1 = Gamma2 = Gamma with T = id
};

BDTriple bd_build(const CartanDatum& datum, long ell, const std::vector<int>& gamma1,
                  const std::vector<int>& gamma2, const std::map<int, int>& tmap);

/// A function from the parameter grid (the torus, or its T_L subgroup in the
/// twisted case) to tensors over U.
struct Dyn {
  std::vector<TVec> grid;
  std::map<TVec, Tensor> vals;
  std::optional<BDTriple> triple;  // present when the domain is T_L
  int rank() const { return vals.empty() ? 0 : vals.begin()->second.rank(); }
  const Tensor& at(const TVec& l) const { return vals.at(l); }
};

Dyn dyn_on_full_grid(const Uq& U, int rank);

/// Shift by the slot weights: value at lambda becomes
/// sum over mu (P_mu factors in the shifted slots) X(lambda + sum c_i mu_i).
Dyn shift_apply(const Uq& U, const Dyn& X, const std::vector<long>& coeffs);
/// Embed every value into a larger tensor power at the given slots.
Dyn embed_dyn(const Uq& U, const Dyn& X, int target_rank, const std::vector<int>& positions);

enum class AbrrOp { L2, R2, L3, R3 };

struct SolverConfig {
  const Uq* U = nullptr;
  LambdaParam lambda{std::vector<Rat>{Rat(2)}};
  std::optional<BDTriple> triple;
};

/// One application of the two- or three-slot fixed-point operator at a grid
/// point.
Tensor abrr_operator(const SolverConfig& cfg, const Tensor& X, const TVec& lambda, AbrrOp which);

/// Degree-by-degree direct solve of the fixed-point equation; asserts the
/// solution is fixed by both two-slot operators and has zero weight.
Dyn solve_abrr(const SolverConfig& cfg);

/// The rank-1 closed form, truncated at ell terms.
Tensor sl2_closed_form_at(const Uq& U, const LambdaParam& lam, const TVec& lambda);
Dyn sl2_closed_form(const Uq& U, const LambdaParam& lam);

/// Inverse of a dynamical element of the shape Z0 + (positive-degree part).
Dyn invert_dynamical(const Uq& U, const Dyn& X);

/// curly J(lambda) = J(2 lambda + h^(1) + h^(2)).
Dyn dynamical_from_shifted(const Uq& U, const Dyn& J);

Report abrr_certificates(const SolverConfig& cfg, const Dyn& J, const std::string& instance);
Report verify_shifted_twist(const SolverConfig& cfg, const Dyn& J, const std::string& instance);
Report verify_dynamical_twist(const Uq& U, const Dyn& cj, const std::string& instance);

/// Gauge transform of a dynamical twist by an invertible zero-weight
/// counit-normalized function x(lambda).
Dyn dynamical_gauge(const Uq& U, const Dyn& cj, const std::map<TVec, Tensor>& x,
                    const std::map<TVec, Tensor>& x_inv);
/// Seeded random gauge data (x and its inverse per grid point).
std::pair<std::map<TVec, Tensor>, std::map<TVec, Tensor>> random_dynamical_gauge(
    const Uq& U, std::uint64_t seed);

// --- closed-form coefficient layer (torus level) --------------------------

TorusTensor b_i_closed(const Torus& T, const std::vector<std::vector<long>>& cartan,
                       const LambdaParam& lam, const TVec& lambda, int i);
TorusTensor c_00(const Torus& T);
TorusTensor c_0_delta_i(const Torus& T, const LambdaParam& lam, const TVec& lambda, int i);
TorusTensor c_delta_i_0(const Torus& T, const std::vector<std::vector<long>>& cartan,
                        const LambdaParam& lam, const TVec& lambda, int i);

/// b_i extracted from a solver output at a grid point (coefficient of
/// E_i x F_i).
TorusTensor b_i_from_solution(const Uq& U, const Tensor& Jval, int i);

/// Z = ((id - T)^{-1} T x id) Omega_{L_perp} for an automorphism triple.
TorusTensor bd_Z(const Torus& T, const BDTriple& triple);
/// Closed form b_{ij} for an automorphism triple, lambda in T_L.
TorusTensor bd_b_ij(const Torus& T, const BDTriple& triple, const LambdaParam& lam,
                    const TVec& lambda, int i, int j);
/// Coefficients of (J_T)^{-1}_{21} at degree one, derived from b_{ij} and Z.
TorusTensor bd_b_tilde_ij(const Torus& T, const BDTriple& triple, const LambdaParam& lam,
                          const TVec& lambda, int i, int j);

/// Orbit-block analysis of the degree-one coefficient matrices: pattern
/// equivalence, exact normalized determinant, and invertibility for every
/// idempotent pair and every lambda in T_L.
Report matrix_44_check(const CartanDatum& datum, long ell, const LambdaParam& lam,
                       const BDTriple& triple, const std::string& instance);

/// (T_+ x id) Omega_L = (id x T_-) Omega_L, checked exactly.
Report check_tau_omega_identity(const Torus& T, const BDTriple& triple,
                                const std::string& instance);

}  // namespace dynwha
