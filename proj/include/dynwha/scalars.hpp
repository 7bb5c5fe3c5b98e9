#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "dynwha/error.hpp"

namespace dynwha {

using Rat = mpq_class;

/// The cyclotomic field Q(zeta_ell) for odd ell >= 3, presented as
/// Q[x] / (Phi_ell) with Phi_ell the ell-th cyclotomic polynomial.
/// Instances are interned and immutable; scalars keep raw pointers to them.
class CycloField {
 public:
  static const CycloField* get(long ell);

  long ell() const { return ell_; }
  int degree() const { return degree_; }
  /// Monic modulus, coefficient i of x^i, size degree()+1.
  const std::vector<Rat>& modulus() const { return modulus_; }
  /// x^k reduced mod Phi_ell, for 0 <= k <= 2*degree()-2.
  const std::vector<Rat>& reduced_power(int k) const { return reduced_powers_[k]; }

 private:
  explicit CycloField(long ell);
  long ell_;
  int degree_;
  std::vector<Rat> modulus_;
  std::vector<std::vector<Rat>> reduced_powers_;
};

/// Exact element of Q(zeta_ell): a residue mod Phi_ell in canonical form.
class Cyclo {
 public:
  Cyclo() : f_(nullptr) {}
  static Cyclo zero(const CycloField* f);
  static Cyclo one(const CycloField* f);
  static Cyclo from_rat(const CycloField* f, const Rat& r);
  static Cyclo from_int(const CycloField* f, long n) { return from_rat(f, Rat(n)); }
  /// q^n with q = zeta_ell; n may be any integer (reduced mod ell).
  static Cyclo q_power(const CycloField* f, long n);
  static Cyclo from_coeffs(const CycloField* f, std::vector<Rat> coeffs);

  const CycloField* field() const { return f_; }
  const std::vector<Rat>& coeffs() const { return c_; }
  bool is_zero() const;
  bool is_one() const;
  bool operator==(const Cyclo& o) const { return f_ == o.f_ && c_ == o.c_; }
  bool operator!=(const Cyclo& o) const { return !(*this == o); }

  Cyclo operator+(const Cyclo& o) const;
  Cyclo operator-(const Cyclo& o) const;
  Cyclo operator-() const;
  Cyclo operator*(const Cyclo& o) const;
  Cyclo operator/(const Cyclo& o) const;
  Cyclo& operator+=(const Cyclo& o);
  Cyclo& operator-=(const Cyclo& o);
  Cyclo& operator*=(const Cyclo& o);
  Cyclo inv() const;
  Cyclo scaled(const Rat& r) const;

  std::string str() const;

 private:
  const CycloField* f_;
  std::vector<Rat> c_;  // size = degree
};

enum class QKind { q_int, q_factorial, q_power };

/// [n]_q, [n]_q! and q^n in Q(zeta_ell).  [n]_q = (q^n - q^-n)/(q - q^-1),
/// evaluated as the Laurent sum q^{n-1} + q^{n-3} + ... + q^{1-n}.
Cyclo q_combinatorics(const CycloField* f, long n, QKind kind);
/// [n]_q! for use as a divisor; throws ZeroQFactorial when it vanishes.
Cyclo q_factorial_nonzero(const CycloField* f, long n);

/// The deformation parameters Lambda_1..Lambda_m, nonzero rationals.
struct LambdaParam {
  std::vector<Rat> values;

  explicit LambdaParam(std::vector<Rat> v);
  static LambdaParam constant(int m, const Rat& r = Rat(2));
  int m() const { return static_cast<int>(values.size()); }
  /// Lambda_beta = prod Lambda_i^{beta_i} for an integer vector beta.
  Rat weight_value(const std::vector<long>& beta) const;
};

struct GenericityResult {
  bool pass = true;
  std::vector<long> witness;  // offending weight when pass == false
};

/// Passes iff (Lambda_alpha)^(order_factor*ell) != 1 for every weight alpha
/// in the set; for rational Lambda this means Lambda_alpha != 1 and, when
/// order_factor*ell is even, Lambda_alpha != -1.
GenericityResult genericity_check(const LambdaParam& lambda,
                                  const std::set<std::vector<long>>& weights, long ell,
                                  long order_factor = 1);

std::string rat_str(const Rat& r);

}  // namespace dynwha
