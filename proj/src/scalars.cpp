#include "dynwha/scalars.hpp"

#include <mutex>
#include <sstream>

namespace dynwha {

const char* err_name(Err e) {
  switch (e) {
    case Err::EvenOrSmallEll: return "EvenOrSmallEll";
    case Err::DivisionByZero: return "DivisionByZero";
    case Err::ZeroQFactorial: return "ZeroQFactorial";
    case Err::NonGenericLambda: return "NonGenericLambda";
    case Err::NonInvertibleForm: return "NonInvertibleForm";
    case Err::BadSublattice: return "BadSublattice";
    case Err::SingularTorusTensor: return "SingularTorusTensor";
    case Err::EllNotCoprime: return "EllNotCoprime";
    case Err::DimensionTooLarge: return "DimensionTooLarge";
    case Err::TwistInvalid: return "TwistInvalid";
    case Err::BadGauge: return "BadGauge";
    case Err::NotAGroupoid: return "NotAGroupoid";
    case Err::CoprimalityViolation: return "CoprimalityViolation";
    case Err::UnsupportedType: return "UnsupportedType";
    case Err::NotUnitriangular: return "NotUnitriangular";
    case Err::SingularZ: return "SingularZ";
    case Err::NotInnerProductPreserving: return "NotInnerProductPreserving";
    case Err::RankDeficient: return "RankDeficient";
    case Err::Internal: return "Internal";
  }
  return "Unknown";
}

namespace {

// Dense polynomial helpers over Q, little-endian coefficients.
using Poly = std::vector<Rat>;

void trim(Poly& p) {
  while (!p.empty() && p.back() == 0) p.pop_back();
}

Poly poly_mul(const Poly& a, const Poly& b) {
  if (a.empty() || b.empty()) return {};
  Poly r(a.size() + b.size() - 1, Rat(0));
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
  }
  trim(r);
  return r;
}

// Exact division of polynomials; remainder must vanish.
Poly poly_divexact(Poly num, const Poly& den) {
  Poly q(num.size() >= den.size() ? num.size() - den.size() + 1 : 0, Rat(0));
  while (num.size() >= den.size() && !num.empty()) {
    Rat c = num.back() / den.back();
    std::size_t shift = num.size() - den.size();
    q[shift] = c;
    for (std::size_t i = 0; i < den.size(); ++i) num[shift + i] -= c * den[i];
    trim(num);
  }
  if (!num.empty()) fail(Err::Internal, "non-exact polynomial division");
  return q;
}

// num mod den, den monic not required.
Poly poly_mod(Poly num, const Poly& den) {
  while (num.size() >= den.size() && !num.empty()) {
    Rat c = num.back() / den.back();
    std::size_t shift = num.size() - den.size();
    for (std::size_t i = 0; i < den.size(); ++i) num[shift + i] -= c * den[i];
    trim(num);
  }
  return num;
}

Poly cyclotomic(long n);

Poly x_pow_minus_one(long n) {
  Poly p(n + 1, Rat(0));
  p[0] = -1;
  p[n] = 1;
  return p;
}

// Phi_n by dividing x^n - 1 by the product of Phi_d over proper divisors d.
Poly cyclotomic(long n) {
  Poly num = x_pow_minus_one(n);
  Poly den{Rat(1)};
  for (long d = 1; d < n; ++d) {
    if (n % d == 0) den = poly_mul(den, cyclotomic(d));
  }
  return poly_divexact(num, den);
}

}  // namespace

CycloField::CycloField(long ell) : ell_(ell) {
  if (ell < 3 || ell % 2 == 0) fail(Err::EvenOrSmallEll, "ell must be odd and >= 3, got " + std::to_string(ell));
  modulus_ = cyclotomic(ell);
  degree_ = static_cast<int>(modulus_.size()) - 1;
  // Reduction table for x^k, k up to 2*degree-2 (enough for products of residues).
  reduced_powers_.resize(2 * degree_ - 1);
  for (int k = 0; k < 2 * degree_ - 1; ++k) {
    Poly p(k + 1, Rat(0));
    p[k] = 1;
    Poly r = poly_mod(p, modulus_);
    r.resize(degree_, Rat(0));
    reduced_powers_[k] = std::move(r);
  }
}

const CycloField* CycloField::get(long ell) {
  static std::map<long, const CycloField*> cache;
  auto it = cache.find(ell);
  if (it != cache.end()) return it->second;
  const CycloField* f = new CycloField(ell);
  cache.emplace(ell, f);
  return f;
}

Cyclo Cyclo::zero(const CycloField* f) {
  Cyclo x;
  x.f_ = f;
  x.c_.assign(f->degree(), Rat(0));
  return x;
}

Cyclo Cyclo::one(const CycloField* f) { return from_rat(f, Rat(1)); }

Cyclo Cyclo::from_rat(const CycloField* f, const Rat& r) {
  Cyclo x = zero(f);
  x.c_[0] = r;
  return x;
}

Cyclo Cyclo::q_power(const CycloField* f, long n) {
  long k = n % f->ell();
  if (k < 0) k += f->ell();
  Cyclo x = zero(f);
  if (k < f->degree()) {
    x.c_[static_cast<std::size_t>(k)] = 1;
  } else {
    // x^k with degree <= k < ell: fold via repeated squaring is overkill at
    // these sizes; reduce by multiplying tabulated powers.
    Cyclo acc = one(f);
    Cyclo q = zero(f);
    q.c_[1] = 1;
    for (long i = 0; i < k; ++i) acc = acc * q;
    return acc;
  }
  return x;
}

Cyclo Cyclo::from_coeffs(const CycloField* f, std::vector<Rat> coeffs) {
  if (static_cast<int>(coeffs.size()) != f->degree()) fail(Err::Internal, "bad coefficient count");
  Cyclo x;
  x.f_ = f;
  x.c_ = std::move(coeffs);
  for (Rat& r : x.c_) r.canonicalize();
  return x;
}

bool Cyclo::is_zero() const {
  for (const Rat& r : c_)
    if (r != 0) return false;
  return true;
}

bool Cyclo::is_one() const {
  if (c_.empty() || c_[0] != 1) return false;
  for (std::size_t i = 1; i < c_.size(); ++i)
    if (c_[i] != 0) return false;
  return true;
}

Cyclo Cyclo::operator+(const Cyclo& o) const {
  Cyclo r = *this;
  r += o;
  return r;
}

Cyclo& Cyclo::operator+=(const Cyclo& o) {
  for (std::size_t i = 0; i < c_.size(); ++i) c_[i] += o.c_[i];
  return *this;
}

Cyclo Cyclo::operator-(const Cyclo& o) const {
  Cyclo r = *this;
  r -= o;
  return r;
}

Cyclo& Cyclo::operator-=(const Cyclo& o) {
  for (std::size_t i = 0; i < c_.size(); ++i) c_[i] -= o.c_[i];
  return *this;
}

Cyclo Cyclo::operator-() const {
  Cyclo r = *this;
  for (Rat& x : r.c_) x = -x;
  return r;
}

Cyclo Cyclo::operator*(const Cyclo& o) const {
  const int d = f_->degree();
  std::vector<Rat> prod(2 * d - 1, Rat(0));
  for (int i = 0; i < d; ++i) {
    if (c_[i] == 0) continue;
    for (int j = 0; j < d; ++j) {
      if (o.c_[j] == 0) continue;
      prod[i + j] += c_[i] * o.c_[j];
    }
  }
  Cyclo r = zero(f_);
  for (int k = 0; k < 2 * d - 1; ++k) {
    if (prod[k] == 0) continue;
    if (k < d) {
      r.c_[k] += prod[k];
    } else {
      const std::vector<Rat>& red = f_->reduced_power(k);
      for (int i = 0; i < d; ++i)
        if (red[i] != 0) r.c_[i] += prod[k] * red[i];
    }
  }
  return r;
}

Cyclo& Cyclo::operator*=(const Cyclo& o) {
  *this = *this * o;
  return *this;
}

Cyclo Cyclo::scaled(const Rat& r) const {
  Cyclo x = *this;
  for (Rat& v : x.c_) v *= r;
  return x;
}

Cyclo Cyclo::inv() const {
  if (is_zero()) fail(Err::DivisionByZero, "inverse of zero in Q(zeta)");
  // Extended Euclid in Q[x]: find u with u*this + v*Phi = 1.
  Poly a(c_.begin(), c_.end());
  trim(a);
  Poly b = f_->modulus();
  Poly u0{Rat(1)}, u1{};
  while (!b.empty()) {
    // a = q*b + r
    Poly r = a;
    Poly q(r.size() >= b.size() ? r.size() - b.size() + 1 : 0, Rat(0));
    while (r.size() >= b.size() && !r.empty()) {
      Rat c = r.back() / b.back();
      std::size_t shift = r.size() - b.size();
      q[shift] += c;
      for (std::size_t i = 0; i < b.size(); ++i) r[shift + i] -= c * b[i];
      trim(r);
    }
    trim(q);
    Poly u2 = u0;
    Poly qu1 = poly_mul(q, u1);
    if (qu1.size() < u2.size()) qu1.resize(u2.size(), Rat(0));
    if (u2.size() < qu1.size()) u2.resize(qu1.size(), Rat(0));
    for (std::size_t i = 0; i < u2.size(); ++i) u2[i] -= qu1[i];
    trim(u2);
    u0 = std::move(u1);
    u1 = std::move(u2);
    a = std::move(b);
    b = std::move(r);
  }
  // a is the gcd (a nonzero constant since Phi is irreducible over Q).
  if (a.size() != 1) fail(Err::Internal, "gcd with modulus not constant");
  Rat scale = Rat(1) / a[0];
  Poly res = poly_mod(u0, f_->modulus());
  res.resize(f_->degree(), Rat(0));
  Cyclo r = zero(f_);
  for (int i = 0; i < f_->degree(); ++i) r.c_[i] = res[i] * scale;
  return r;
}

Cyclo Cyclo::operator/(const Cyclo& o) const {
  if (o.is_zero()) fail(Err::DivisionByZero, "division by zero in Q(zeta)");
  return *this * o.inv();
}

std::string rat_str(const Rat& r) {
  std::ostringstream os;
  os << r;
  return os.str();
}

std::string Cyclo::str() const {
  std::ostringstream os;
  os << "[";
  for (std::size_t i = 0; i < c_.size(); ++i) {
    if (i) os << ",";
    os << c_[i];
  }
  os << "]";
  return os.str();
}

Cyclo q_combinatorics(const CycloField* f, long n, QKind kind) {
  switch (kind) {
    case QKind::q_power:
      return Cyclo::q_power(f, n);
    case QKind::q_int: {
      if (n < 0) fail(Err::Internal, "q_int of negative n");
      Cyclo acc = Cyclo::zero(f);
      for (long k = 0; k < n; ++k) acc += Cyclo::q_power(f, n - 1 - 2 * k);
      return acc;
    }
    case QKind::q_factorial: {
      if (n < 0) fail(Err::Internal, "q_factorial of negative n");
      Cyclo acc = Cyclo::one(f);
      for (long k = 1; k <= n; ++k) acc *= q_combinatorics(f, k, QKind::q_int);
      return acc;
    }
  }
  fail(Err::Internal, "bad QKind");
}

Cyclo q_factorial_nonzero(const CycloField* f, long n) {
  if (n < 0 || n >= f->ell())
    fail(Err::ZeroQFactorial, "[n]_q! vanishes or is out of range for n=" + std::to_string(n));
  Cyclo v = q_combinatorics(f, n, QKind::q_factorial);
  if (v.is_zero()) fail(Err::ZeroQFactorial, "[n]_q! = 0 for n=" + std::to_string(n));
  return v;
}

LambdaParam::LambdaParam(std::vector<Rat> v) : values(std::move(v)) {
  for (Rat& r : values) {
    r.canonicalize();
    if (r == 0) fail(Err::NonGenericLambda, "Lambda entries must be nonzero");
  }
}

LambdaParam LambdaParam::constant(int m, const Rat& r) {
  return LambdaParam(std::vector<Rat>(static_cast<std::size_t>(m), r));
}

Rat LambdaParam::weight_value(const std::vector<long>& beta) const {
  Rat acc(1);
  for (std::size_t i = 0; i < values.size(); ++i) {
    long e = i < beta.size() ? beta[i] : 0;
    if (e >= 0) {
      for (long k = 0; k < e; ++k) acc *= values[i];
    } else {
      for (long k = 0; k < -e; ++k) acc /= values[i];
    }
  }
  return acc;
}

GenericityResult genericity_check(const LambdaParam& lambda,
                                  const std::set<std::vector<long>>& weights, long ell,
                                  long order_factor) {
  GenericityResult res;
  const long power = ell * order_factor;
  for (const auto& alpha : weights) {
    Rat v = lambda.weight_value(alpha);
    bool root_of_unity = (v == 1) || (v == -1 && power % 2 == 0);
    if (root_of_unity) {
      res.pass = false;
      res.witness = alpha;
      return res;
    }
  }
  return res;
}

}  // namespace dynwha
