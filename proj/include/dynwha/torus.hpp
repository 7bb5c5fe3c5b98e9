#pragma once

#include <map>
#include <optional>
#include <vector>

#include "dynwha/scalars.hpp"

namespace dynwha {

using TVec = std::vector<long>;

/// The parameter group (Z/ell)^m with the q-exponent pairing (b,g) = b^T A g
/// coming from a symmetric integer matrix A (the Cartan matrix upstream).
class Torus {
 public:
  Torus(int m, long ell, std::vector<std::vector<long>> form);

  int m() const { return m_; }
  long ell() const { return ell_; }
  long size() const { return size_; }
  const CycloField* field() const { return f_; }
  const std::vector<std::vector<long>>& form() const { return form_; }
  bool pairing_invertible() const { return pairing_invertible_; }

  long index_of(const TVec& v) const;
  TVec vec_of(long idx) const;
  TVec reduce(const TVec& v) const;
  TVec add(const TVec& a, const TVec& b) const;
  TVec neg(const TVec& a) const;

  /// b^T A g over the integers.
  long pair_raw(const TVec& b, const TVec& g) const;
  Cyclo q_pair(const TVec& b, const TVec& g) const { return Cyclo::q_power(f_, pair_raw(b, g)); }

 private:
  int m_;
  long ell_;
  long size_;
  std::vector<std::vector<long>> form_;
  const CycloField* f_;
  bool pairing_invertible_;
};

enum class TorusBasis { group, idempotent };

/// Dense rank-n tensor over the torus group algebra, in either the group
/// basis {K_b} or the joint idempotent basis {P_x}.  Grids are small, so the
/// representation is a flat dense array in mixed-radix index order.
class TorusTensor {
 public:
  TorusTensor() : T_(nullptr), rank_(0) {}
  TorusTensor(const Torus* T, int rank, TorusBasis basis);

  static TorusTensor unit(const Torus* T, int rank);
  /// Basis element K_{b_1} x ... x K_{b_n}.
  static TorusTensor group_elem(const Torus* T, const std::vector<TVec>& bs, const Cyclo& coeff);

  const Torus* torus() const { return T_; }
  int rank() const { return rank_; }
  TorusBasis basis() const { return basis_; }
  long entries() const { return static_cast<long>(a_.size()); }
  Cyclo& at(long flat) { return a_[static_cast<std::size_t>(flat)]; }
  const Cyclo& at(long flat) const { return a_[static_cast<std::size_t>(flat)]; }
  long flat_index(const std::vector<TVec>& key) const;
  std::vector<TVec> key_of(long flat) const;

  TorusTensor to_basis(TorusBasis b) const;
  TorusTensor operator+(const TorusTensor& o) const;
  TorusTensor operator-(const TorusTensor& o) const;
  TorusTensor operator*(const TorusTensor& o) const;  // algebra product
  TorusTensor scaled(const Cyclo& c) const;
  /// Componentwise inverse in the joint idempotent basis; throws
  /// SingularTorusTensor naming a vanishing component.
  TorusTensor inverse() const;
  bool operator==(const TorusTensor& o) const;
  bool is_zero() const;

 private:
  const Torus* T_;
  int rank_;
  TorusBasis basis_;
  std::vector<Cyclo> a_;
};

/// A subgroup of the torus given by integer generators, with its enumerated
/// image mod ell.
struct Sublattice {
  std::vector<TVec> gens_z;       // generators over Z
  std::vector<TVec> elements;     // image subgroup, sorted canonical reps
  bool contains(const Torus& T, const TVec& v) const;
};

Sublattice make_sublattice(const Torus& T, const std::vector<TVec>& gens);

/// {P_b}: orthogonal idempotents summing to 1.  Requires the pairing to be
/// invertible mod ell.
std::vector<TorusTensor> torus_idempotents(const Torus& T);

/// Rank-1 idempotent P_b as a group-basis tensor.
TorusTensor idempotent_elem(const Torus& T, const TVec& b);

/// Omega over the full torus, or over a subgroup normalized by 1/|subgroup|.
TorusTensor omega(const Torus& T, const std::optional<Sublattice>& restrict_to = std::nullopt);

/// Check T = A + B as an inner direct sum; returns the decomposition table
/// index_of(t) -> (a in A, b in B), or throws BadSublattice.
std::vector<std::pair<TVec, TVec>> direct_sum_decomposition(const Torus& T, const Sublattice& A,
                                                            const Sublattice& B);

// Integer lattice utilities (exact, small matrices).
using ZMat = std::vector<std::vector<mpz_class>>;

/// Basis of the integer kernel {x : M x = 0}.
std::vector<TVec> z_kernel(const ZMat& M);
/// Index of the sublattice of Z^m spanned by the given vectors; throws
/// BadSublattice when the span has rank < m.
long lattice_index(int m, const std::vector<TVec>& gens);
/// Solve M x = b over the integers; nullopt when unsolvable.
std::optional<std::vector<mpz_class>> z_solve(const ZMat& M, const std::vector<mpz_class>& b);

struct SublatticeCalc {
  Sublattice L;        // fixed lattice of the triple
  Sublattice Lperp;    // orthogonal complement
  long n1 = 0;         // [Q : Q1 + L]
  long n2 = 0;         // [Q : Lperp + L]
  std::vector<TVec> L_basis_z;
  std::vector<TVec> Lperp_basis_z;
};

/// L = {v : (v, a) = (v, Ta) for all a in Gamma1}, its orthogonal complement,
/// and the two finite indices; bails out if ell divides either index.
SublatticeCalc sublattice_calculus(const Torus& T, const std::vector<int>& gamma1,
                                   const std::map<int, int>& Tmap);

}  // namespace dynwha
