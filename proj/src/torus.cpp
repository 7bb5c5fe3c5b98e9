#include "dynwha/torus.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <sstream>

namespace dynwha {

namespace {

long det_mod(const std::vector<std::vector<long>>& a, long mod) {
  int n = static_cast<int>(a.size());
  std::vector<std::vector<Rat>> m(n, std::vector<Rat>(n));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) m[i][j] = a[i][j];
  Rat det(1);
  for (int col = 0; col < n; ++col) {
    int piv = -1;
    for (int r = col; r < n; ++r)
      if (m[r][col] != 0) {
        piv = r;
        break;
      }
    if (piv < 0) return 0;
    if (piv != col) {
      std::swap(m[piv], m[col]);
      det = -det;
    }
    det *= m[col][col];
    for (int r = col + 1; r < n; ++r) {
      if (m[r][col] == 0) continue;
      Rat f = m[r][col] / m[col][col];
      for (int c = col; c < n; ++c) m[r][c] -= f * m[col][c];
    }
  }
  mpz_class d = det.get_num();  // det of an integer matrix is an integer
  mpz_class r = d % mod;
  if (r < 0) r += mod;
  return r.get_si();
}

std::string vec_str(const TVec& v) {
  std::ostringstream os;
  os << "(";
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) os << ",";
    os << v[i];
  }
  os << ")";
  return os.str();
}

}  // namespace

Torus::Torus(int m, long ell, std::vector<std::vector<long>> form)
    : m_(m), ell_(ell), form_(std::move(form)), f_(CycloField::get(ell)) {
  size_ = 1;
  for (int i = 0; i < m_; ++i) size_ *= ell_;
  long d = det_mod(form_, ell_);
  pairing_invertible_ = std::gcd(d, ell_) == 1;
}

long Torus::index_of(const TVec& v) const {
  long idx = 0;
  for (int i = 0; i < m_; ++i) {
    long c = v[i] % ell_;
    if (c < 0) c += ell_;
    idx = idx * ell_ + c;
  }
  return idx;
}

TVec Torus::vec_of(long idx) const {
  TVec v(m_);
  for (int i = m_ - 1; i >= 0; --i) {
    v[i] = idx % ell_;
    idx /= ell_;
  }
  return v;
}

TVec Torus::reduce(const TVec& v) const { return vec_of(index_of(v)); }

TVec Torus::add(const TVec& a, const TVec& b) const {
  TVec v(m_);
  for (int i = 0; i < m_; ++i) v[i] = (a[i] + b[i]) % ell_;
  return reduce(v);
}

TVec Torus::neg(const TVec& a) const {
  TVec v(m_);
  for (int i = 0; i < m_; ++i) v[i] = (ell_ - a[i] % ell_) % ell_;
  return v;
}

long Torus::pair_raw(const TVec& b, const TVec& g) const {
  long s = 0;
  for (int i = 0; i < m_; ++i)
    for (int j = 0; j < m_; ++j) s += b[i] * form_[i][j] * g[j];
  return s;
}

TorusTensor::TorusTensor(const Torus* T, int rank, TorusBasis basis)
    : T_(T), rank_(rank), basis_(basis) {
  long n = 1;
  for (int i = 0; i < rank; ++i) n *= T->size();
  a_.assign(static_cast<std::size_t>(n), Cyclo::zero(T->field()));
}

TorusTensor TorusTensor::unit(const Torus* T, int rank) {
  TorusTensor t(T, rank, TorusBasis::group);
  t.a_[0] = Cyclo::one(T->field());  // flat index 0 = K_0 x ... x K_0
  return t;
}

TorusTensor TorusTensor::group_elem(const Torus* T, const std::vector<TVec>& bs,
                                    const Cyclo& coeff) {
  TorusTensor t(T, static_cast<int>(bs.size()), TorusBasis::group);
  t.at(t.flat_index(bs)) = coeff;
  return t;
}

long TorusTensor::flat_index(const std::vector<TVec>& key) const {
  long idx = 0;
  for (int i = 0; i < rank_; ++i) idx = idx * T_->size() + T_->index_of(key[i]);
  return idx;
}

std::vector<TVec> TorusTensor::key_of(long flat) const {
  std::vector<TVec> key(rank_);
  for (int i = rank_ - 1; i >= 0; --i) {
    key[i] = T_->vec_of(flat % T_->size());
    flat /= T_->size();
  }
  return key;
}

TorusTensor TorusTensor::to_basis(TorusBasis b) const {
  if (b == basis_) return *this;
  // Slotwise exact character transform.
  // group -> idempotent: d(x) = sum_c f(c) q^{-(x,c)}
  // idempotent -> group: f(c) = (1/|T|) sum_x d(x) q^{(x,c)}
  TorusTensor cur = *this;
  const long n = T_->size();
  Cyclo invn = Cyclo::from_rat(T_->field(), Rat(1) / Rat(n));
  for (int slot = 0; slot < rank_; ++slot) {
    TorusTensor next(T_, rank_, b);
    long stride = 1;
    for (int i = slot + 1; i < rank_; ++i) stride *= n;
    long outer = static_cast<long>(a_.size()) / (n * stride);
    for (long o = 0; o < outer; ++o) {
      for (long s = 0; s < stride; ++s) {
        long base = o * n * stride + s;
        for (long x = 0; x < n; ++x) {
          Cyclo acc = Cyclo::zero(T_->field());
          for (long c = 0; c < n; ++c) {
            const Cyclo& v = cur.a_[static_cast<std::size_t>(base + c * stride)];
            if (v.is_zero()) continue;
            long p = T_->pair_raw(T_->vec_of(x), T_->vec_of(c));
            if (b == TorusBasis::idempotent)
              acc += v * Cyclo::q_power(T_->field(), -p);
            else
              acc += v * Cyclo::q_power(T_->field(), p);
          }
          if (b == TorusBasis::group) acc = acc * invn;
          next.a_[static_cast<std::size_t>(base + x * stride)] = acc;
        }
      }
    }
    cur.a_ = std::move(next.a_);
  }
  cur.basis_ = b;
  return cur;
}

TorusTensor TorusTensor::operator+(const TorusTensor& o) const {
  TorusTensor rhs = o.basis() == basis_ ? o : o.to_basis(basis_);
  TorusTensor r = *this;
  for (std::size_t i = 0; i < a_.size(); ++i) r.a_[i] += rhs.a_[i];
  return r;
}

TorusTensor TorusTensor::operator-(const TorusTensor& o) const {
  TorusTensor rhs = o.basis() == basis_ ? o : o.to_basis(basis_);
  TorusTensor r = *this;
  for (std::size_t i = 0; i < a_.size(); ++i) r.a_[i] -= rhs.a_[i];
  return r;
}

TorusTensor TorusTensor::operator*(const TorusTensor& o) const {
  TorusTensor a = to_basis(TorusBasis::idempotent);
  TorusTensor b = o.to_basis(TorusBasis::idempotent);
  for (std::size_t i = 0; i < a.a_.size(); ++i) a.a_[i] *= b.a_[i];
  return a;
}

TorusTensor TorusTensor::scaled(const Cyclo& c) const {
  TorusTensor r = *this;
  for (auto& v : r.a_) v *= c;
  return r;
}

TorusTensor TorusTensor::inverse() const {
  TorusTensor a = to_basis(TorusBasis::idempotent);
  for (std::size_t i = 0; i < a.a_.size(); ++i) {
    if (a.a_[i].is_zero()) {
      std::ostringstream os;
      os << "vanishing idempotent component at ";
      auto key = key_of(static_cast<long>(i));
      for (const auto& v : key) os << vec_str(v);
      fail(Err::SingularTorusTensor, os.str());
    }
    a.a_[i] = a.a_[i].inv();
  }
  return a;
}

bool TorusTensor::operator==(const TorusTensor& o) const {
  TorusTensor d = *this - o;
  return d.is_zero();
}

bool TorusTensor::is_zero() const {
  for (const auto& v : a_)
    if (!v.is_zero()) return false;
  return true;
}

bool Sublattice::contains(const Torus& T, const TVec& v) const {
  TVec r = T.reduce(v);
  return std::binary_search(elements.begin(), elements.end(), r);
}

Sublattice make_sublattice(const Torus& T, const std::vector<TVec>& gens) {
  Sublattice s;
  s.gens_z = gens;
  std::set<TVec> seen;
  std::vector<TVec> frontier{TVec(T.m(), 0)};
  seen.insert(T.reduce(frontier[0]));
  while (!frontier.empty()) {
    std::vector<TVec> next;
    for (const auto& v : frontier) {
      for (const auto& g : gens) {
        TVec w = T.add(v, T.reduce(g));
        if (seen.insert(w).second) next.push_back(w);
      }
    }
    frontier = std::move(next);
  }
  s.elements.assign(seen.begin(), seen.end());
  return s;
}

std::vector<TorusTensor> torus_idempotents(const Torus& T) {
  if (!T.pairing_invertible())
    fail(Err::NonInvertibleForm, "pairing degenerate mod ell; idempotents unavailable");
  std::vector<TorusTensor> ps;
  ps.reserve(static_cast<std::size_t>(T.size()));
  for (long b = 0; b < T.size(); ++b) ps.push_back(idempotent_elem(T, T.vec_of(b)));
  return ps;
}

TorusTensor idempotent_elem(const Torus& T, const TVec& b) {
  TorusTensor t(&T, 1, TorusBasis::group);
  Cyclo invn = Cyclo::from_rat(T.field(), Rat(1) / Rat(T.size()));
  for (long c = 0; c < T.size(); ++c) {
    TVec lam = T.vec_of(c);
    t.at(c) = Cyclo::q_power(T.field(), T.pair_raw(b, lam)) * invn;
  }
  return t;
}

TorusTensor omega(const Torus& T, const std::optional<Sublattice>& restrict_to) {
  TorusTensor t(&T, 2, TorusBasis::group);
  if (!restrict_to) {
    Cyclo invn = Cyclo::from_rat(T.field(), Rat(1) / Rat(T.size()));
    for (long b = 0; b < T.size(); ++b)
      for (long g = 0; g < T.size(); ++g) {
        long p = T.pair_raw(T.vec_of(b), T.vec_of(g));
        t.at(b * T.size() + g) = Cyclo::q_power(T.field(), p) * invn;
      }
    return t;
  }
  const auto& sub = restrict_to->elements;
  Cyclo invn = Cyclo::from_rat(T.field(), Rat(1) / Rat(sub.size()));
  for (const auto& b : sub)
    for (const auto& g : sub) {
      long p = T.pair_raw(b, g);
      t.at(T.index_of(b) * T.size() + T.index_of(g)) += Cyclo::q_power(T.field(), p) * invn;
    }
  return t;
}

std::vector<std::pair<TVec, TVec>> direct_sum_decomposition(const Torus& T, const Sublattice& A,
                                                            const Sublattice& B) {
  std::vector<std::pair<TVec, TVec>> table(static_cast<std::size_t>(T.size()));
  std::vector<int> hits(static_cast<std::size_t>(T.size()), 0);
  for (const auto& a : A.elements)
    for (const auto& b : B.elements) {
      long i = T.index_of(T.add(a, b));
      if (hits[static_cast<std::size_t>(i)]++ == 0) table[static_cast<std::size_t>(i)] = {a, b};
    }
  for (long i = 0; i < T.size(); ++i)
    if (hits[static_cast<std::size_t>(i)] != 1)
      fail(Err::BadSublattice, "not an inner direct sum at " + vec_str(T.vec_of(i)));
  return table;
}

// ---------------------------------------------------------------------------
// Integer lattice utilities: Smith normal form on small matrices.

namespace {

struct Snf {
  ZMat S;  // diagonalized
  ZMat U;  // rows transform: S = U * M * V
  ZMat V;
};

ZMat z_identity(int n) {
  ZMat I(n, std::vector<mpz_class>(n, 0));
  for (int i = 0; i < n; ++i) I[i][i] = 1;
  return I;
}

Snf smith(ZMat M) {
  int rows = static_cast<int>(M.size());
  int cols = rows ? static_cast<int>(M[0].size()) : 0;
  Snf s{M, z_identity(rows), z_identity(cols)};
  auto& A = s.S;
  int t = 0;
  while (t < rows && t < cols) {
    // Find a nonzero pivot in the remaining block.
    int pr = -1, pc = -1;
    for (int i = t; i < rows && pr < 0; ++i)
      for (int j = t; j < cols; ++j)
        if (A[i][j] != 0) {
          pr = i;
          pc = j;
          break;
        }
    if (pr < 0) break;
    std::swap(A[pr], A[t]);
    std::swap(s.U[pr], s.U[t]);
    for (int i = 0; i < rows; ++i) std::swap(A[i][pc], A[i][t]);
    for (int i = 0; i < cols; ++i) std::swap(s.V[i][pc], s.V[i][t]);
    bool again = true;
    while (again) {
      again = false;
      for (int i = t + 1; i < rows; ++i) {
        while (A[i][t] != 0) {
          mpz_class q = A[i][t] / A[t][t];
          for (int j = 0; j < cols; ++j) A[i][j] -= q * A[t][j];
          for (int j = 0; j < rows; ++j) s.U[i][j] -= q * s.U[t][j];
          if (A[i][t] != 0) {
            std::swap(A[i], A[t]);
            std::swap(s.U[i], s.U[t]);
          }
        }
      }
      for (int j = t + 1; j < cols; ++j) {
        while (A[t][j] != 0) {
          mpz_class q = A[t][j] / A[t][t];
          for (int i = 0; i < rows; ++i) A[i][j] -= q * A[i][t];
          for (int i = 0; i < cols; ++i) s.V[i][j] -= q * s.V[i][t];
          if (A[t][j] != 0) {
            for (int i = 0; i < rows; ++i) std::swap(A[i][j], A[i][t]);
            for (int i = 0; i < cols; ++i) std::swap(s.V[i][j], s.V[i][t]);
          }
        }
      }
      for (int i = t + 1; i < rows && !again; ++i)
        if (A[i][t] != 0) again = true;
    }
    ++t;
  }
  return s;
}

}  // namespace

std::vector<TVec> z_kernel(const ZMat& M) {
  if (M.empty()) return {};
  int cols = static_cast<int>(M[0].size());
  Snf s = smith(M);
  int rank = 0;
  int t = std::min(static_cast<int>(M.size()), cols);
  for (int i = 0; i < t; ++i)
    if (s.S[i][i] != 0) ++rank;
  std::vector<TVec> basis;
  for (int j = rank; j < cols; ++j) {
    TVec v(cols);
    for (int i = 0; i < cols; ++i) v[i] = s.V[i][j].get_si();
    basis.push_back(v);
  }
  return basis;
}

long lattice_index(int m, const std::vector<TVec>& gens) {
  ZMat M(m, std::vector<mpz_class>(gens.size()));
  for (std::size_t j = 0; j < gens.size(); ++j)
    for (int i = 0; i < m; ++i) M[i][j] = gens[j][i];
  Snf s = smith(M);
  mpz_class idx = 1;
  int t = std::min(m, static_cast<int>(gens.size()));
  int rank = 0;
  for (int i = 0; i < t; ++i)
    if (s.S[i][i] != 0) {
      idx *= abs(s.S[i][i]);
      ++rank;
    }
  if (rank < m) fail(Err::BadSublattice, "generators do not span a finite-index sublattice");
  return idx.get_si();
}

std::optional<std::vector<mpz_class>> z_solve(const ZMat& M, const std::vector<mpz_class>& b) {
  if (M.empty()) return std::nullopt;
  int rows = static_cast<int>(M.size());
  int cols = static_cast<int>(M[0].size());
  Snf s = smith(M);
  // S = U M V, so M x = b  <=>  S y = U b with x = V y.
  std::vector<mpz_class> ub(rows, 0);
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < rows; ++j) ub[i] += s.U[i][j] * b[j];
  std::vector<mpz_class> y(cols, 0);
  int t = std::min(rows, cols);
  for (int i = 0; i < rows; ++i) {
    if (i < t && s.S[i][i] != 0) {
      if (ub[i] % s.S[i][i] != 0) return std::nullopt;
      y[i] = ub[i] / s.S[i][i];
    } else if (ub[i] != 0) {
      return std::nullopt;
    }
  }
  std::vector<mpz_class> x(cols, 0);
  for (int i = 0; i < cols; ++i)
    for (int j = 0; j < cols; ++j) x[i] += s.V[i][j] * y[j];
  return x;
}

SublatticeCalc sublattice_calculus(const Torus& T, const std::vector<int>& gamma1,
                                   const std::map<int, int>& Tmap) {
  const int m = T.m();
  const auto& A = T.form();
  // Rows: for each a in Gamma1 the condition v^T A (e_a - e_{Ta}) = 0.
  ZMat M;
  for (int a : gamma1) {
    int ta = Tmap.at(a);
    std::vector<mpz_class> row(m, 0);
    for (int i = 0; i < m; ++i) row[i] = A[i][a] - A[i][ta];
    M.push_back(row);
  }
  SublatticeCalc out;
  std::vector<TVec> Lbasis = M.empty() ? std::vector<TVec>{} : z_kernel(M);
  if (M.empty()) {
    for (int i = 0; i < m; ++i) {
      TVec e(m, 0);
      e[i] = 1;
      Lbasis.push_back(e);
    }
  }
  out.L_basis_z = Lbasis;
  out.L = make_sublattice(T, Lbasis);
  // Lperp = {v : v^T A l = 0 for all l in Lbasis}.
  ZMat Mp;
  for (const auto& l : Lbasis) {
    std::vector<mpz_class> row(m, 0);
    for (int i = 0; i < m; ++i)
      for (int j = 0; j < m; ++j) row[i] += mpz_class(A[i][j]) * l[j];
    Mp.push_back(row);
  }
  std::vector<TVec> Pbasis = Mp.empty() ? std::vector<TVec>{} : z_kernel(Mp);
  if (Mp.empty()) Pbasis.clear();
  out.Lperp_basis_z = Pbasis;
  out.Lperp = make_sublattice(T, Pbasis);
  // n1 = [Q : Q1 + L]
  std::vector<TVec> q1l = Lbasis;
  for (int a : gamma1) {
    TVec e(m, 0);
    e[a] = 1;
    q1l.push_back(e);
  }
  out.n1 = lattice_index(m, q1l);
  // n2 = [Q : Lperp + L]
  std::vector<TVec> lperpl = Lbasis;
  lperpl.insert(lperpl.end(), Pbasis.begin(), Pbasis.end());
  out.n2 = lattice_index(m, lperpl);
  if (std::gcd(out.n1, T.ell()) != 1 || std::gcd(out.n2, T.ell()) != 1)
    fail(Err::EllNotCoprime, "ell shares a factor with n1=" + std::to_string(out.n1) +
                                 " or n2=" + std::to_string(out.n2));
  return out;
}

}  // namespace dynwha
