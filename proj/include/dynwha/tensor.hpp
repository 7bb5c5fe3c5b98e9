#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <unordered_map>
#include <vector>

#include "dynwha/scalars.hpp"

namespace dynwha {

using Label = std::uint32_t;
/// Sorted-by-label sparse combination of basis elements, no zero coefficients.
using SparseVec = std::vector<std::pair<Label, Cyclo>>;

SparseVec sv_normalize(SparseVec v);
SparseVec sv_add(const SparseVec& a, const SparseVec& b);
SparseVec sv_scale(const SparseVec& a, const Cyclo& c);

/// Multiplication oracle for a finite-dimensional algebra with a fixed basis.
class AlgebraOps {
 public:
  virtual ~AlgebraOps() = default;
  virtual std::uint32_t dim() const = 0;
  virtual const CycloField* field() const = 0;
  virtual const SparseVec& unit_vec() const = 0;
  virtual const SparseVec& mul_labels(Label a, Label b) const = 0;
  /// Cheap structural test that the product of two basis labels vanishes.
  virtual bool mul_known_zero(Label, Label) const { return false; }
  virtual std::string label_name(Label a) const { return "#" + std::to_string(a); }
};

/// Rank-n element of the algebra's tensor power, sparse over basis tuples.
class Tensor {
 public:
  Tensor() : dim_(0), rank_(0) {}
  Tensor(std::uint32_t dim, int rank) : dim_(dim), rank_(rank) {}

  std::uint32_t dim() const { return dim_; }
  int rank() const { return rank_; }
  std::size_t terms() const { return t_.size(); }
  bool empty_or_zero() const;

  std::uint64_t encode(const std::vector<Label>& key) const;
  std::vector<Label> decode(std::uint64_t k) const;
  Label slot_of(std::uint64_t k, int slot) const;

  void add_term(std::uint64_t key, const Cyclo& c);
  void add_term(const std::vector<Label>& key, const Cyclo& c) { add_term(encode(key), c); }
  const Cyclo* find(std::uint64_t key) const;
  void compact();

  const std::unordered_map<std::uint64_t, Cyclo>& terms_map() const { return t_; }
  std::unordered_map<std::uint64_t, Cyclo>& terms_map() { return t_; }
  /// Deterministic (key-sorted) view of the terms.
  std::vector<std::pair<std::uint64_t, Cyclo>> sorted_terms() const;

  Tensor operator+(const Tensor& o) const;
  Tensor operator-(const Tensor& o) const;
  Tensor scaled(const Cyclo& c) const;
  bool operator==(const Tensor& o) const;

 private:
  std::uint32_t dim_;
  int rank_;
  std::unordered_map<std::uint64_t, Cyclo> t_;
};

/// Product in the n-th tensor power of the algebra.
Tensor mul(const AlgebraOps& W, const Tensor& A, const Tensor& B);
/// Product of a list, left to right.
Tensor mul_chain(const AlgebraOps& W, const std::vector<const Tensor*>& factors);

Tensor unit_tensor(const AlgebraOps& W, int rank);
/// Rank-1 tensor from a sparse vector.
Tensor from_vec(const AlgebraOps& W, const SparseVec& v);
SparseVec to_vec(const Tensor& t);

/// Apply a label-linear map to one slot.
Tensor map_slot(const Tensor& A, int slot, const std::function<SparseVec(Label)>& f);
/// Scale every term by a label-dependent scalar in one slot.
Tensor scale_slot(const Tensor& A, int slot, const std::function<Cyclo(Label)>& f);
/// Replace slot `slot` by the rank-2 expansion f(label)  (coproduct splice).
Tensor expand_slot(const Tensor& A, int slot, const std::function<const Tensor&(Label)>& f);
/// Contract slot `slot` with a scalar functional.
Tensor contract_slot(const Tensor& A, int slot, const std::function<Cyclo(Label)>& f);
/// Target slot i takes source slot src_of[i].
Tensor permute(const Tensor& A, const std::vector<int>& src_of);
/// Embed a rank-k tensor into rank N at the given slot positions, filling the
/// rest with the unit.
Tensor embed(const AlgebraOps& W, const Tensor& A, int N, const std::vector<int>& positions);

/// Exact rank by Gaussian elimination over Q(zeta) with per-row content
/// stripping to keep coefficients small.
long exact_rank(std::vector<std::vector<Cyclo>> M);

}  // namespace dynwha
