#include "dynwha/tensor.hpp"

#include <algorithm>
#include <map>

namespace dynwha {

SparseVec sv_normalize(SparseVec v) {
  std::sort(v.begin(), v.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
  SparseVec out;
  for (auto& [l, c] : v) {
    if (!out.empty() && out.back().first == l)
      out.back().second += c;
    else
      out.emplace_back(l, c);
  }
  out.erase(std::remove_if(out.begin(), out.end(),
                           [](const auto& p) { return p.second.is_zero(); }),
            out.end());
  return out;
}

SparseVec sv_add(const SparseVec& a, const SparseVec& b) {
  SparseVec v = a;
  v.insert(v.end(), b.begin(), b.end());
  return sv_normalize(std::move(v));
}

SparseVec sv_scale(const SparseVec& a, const Cyclo& c) {
  if (c.is_zero()) return {};
  SparseVec v;
  v.reserve(a.size());
  for (const auto& [l, x] : a) {
    Cyclo y = x * c;
    if (!y.is_zero()) v.emplace_back(l, y);
  }
  return v;
}

bool Tensor::empty_or_zero() const {
  for (const auto& [k, c] : t_)
    if (!c.is_zero()) return false;
  return true;
}

std::uint64_t Tensor::encode(const std::vector<Label>& key) const {
  std::uint64_t k = 0;
  for (int i = 0; i < rank_; ++i) k = k * dim_ + key[static_cast<std::size_t>(i)];
  return k;
}

std::vector<Label> Tensor::decode(std::uint64_t k) const {
  std::vector<Label> key(static_cast<std::size_t>(rank_));
  for (int i = rank_ - 1; i >= 0; --i) {
    key[static_cast<std::size_t>(i)] = static_cast<Label>(k % dim_);
    k /= dim_;
  }
  return key;
}

Label Tensor::slot_of(std::uint64_t k, int slot) const {
  for (int i = rank_ - 1; i > slot; --i) k /= dim_;
  return static_cast<Label>(k % dim_);
}

void Tensor::add_term(std::uint64_t key, const Cyclo& c) {
  if (c.is_zero()) return;
  auto it = t_.find(key);
  if (it == t_.end())
    t_.emplace(key, c);
  else
    it->second += c;
}

const Cyclo* Tensor::find(std::uint64_t key) const {
  auto it = t_.find(key);
  return it == t_.end() ? nullptr : &it->second;
}

void Tensor::compact() {
  for (auto it = t_.begin(); it != t_.end();) {
    if (it->second.is_zero())
      it = t_.erase(it);
    else
      ++it;
  }
}

std::vector<std::pair<std::uint64_t, Cyclo>> Tensor::sorted_terms() const {
  std::vector<std::pair<std::uint64_t, Cyclo>> v(t_.begin(), t_.end());
  std::sort(v.begin(), v.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
  return v;
}

Tensor Tensor::operator+(const Tensor& o) const {
  Tensor r = *this;
  for (const auto& [k, c] : o.t_) r.add_term(k, c);
  r.compact();
  return r;
}

Tensor Tensor::operator-(const Tensor& o) const {
  Tensor r = *this;
  for (const auto& [k, c] : o.t_) r.add_term(k, -c);
  r.compact();
  return r;
}

Tensor Tensor::scaled(const Cyclo& c) const {
  Tensor r(dim_, rank_);
  if (c.is_zero()) return r;
  for (const auto& [k, v] : t_) r.add_term(k, v * c);
  r.compact();
  return r;
}

bool Tensor::operator==(const Tensor& o) const { return (*this - o).empty_or_zero(); }

Tensor mul(const AlgebraOps& W, const Tensor& A, const Tensor& B) {
  Tensor R(A.dim(), A.rank());
  const int n = A.rank();
  std::vector<Label> ka(static_cast<std::size_t>(n)), kb(static_cast<std::size_t>(n));
  std::vector<const SparseVec*> rows(static_cast<std::size_t>(n));
  for (const auto& [akey, ac] : A.terms_map()) {
    std::uint64_t tmp = akey;
    for (int i = n - 1; i >= 0; --i) {
      ka[static_cast<std::size_t>(i)] = static_cast<Label>(tmp % A.dim());
      tmp /= A.dim();
    }
    for (const auto& [bkey, bc] : B.terms_map()) {
      tmp = bkey;
      bool dead = false;
      for (int i = n - 1; i >= 0; --i) {
        kb[static_cast<std::size_t>(i)] = static_cast<Label>(tmp % B.dim());
        tmp /= B.dim();
      }
      for (int i = 0; i < n && !dead; ++i)
        if (W.mul_known_zero(ka[static_cast<std::size_t>(i)], kb[static_cast<std::size_t>(i)]))
          dead = true;
      if (dead) continue;
      for (int i = 0; i < n && !dead; ++i) {
        rows[static_cast<std::size_t>(i)] =
            &W.mul_labels(ka[static_cast<std::size_t>(i)], kb[static_cast<std::size_t>(i)]);
        if (rows[static_cast<std::size_t>(i)]->empty()) dead = true;
      }
      if (dead) continue;
      // Cartesian product over the per-slot expansion rows.
      Cyclo base = ac * bc;
      std::vector<std::size_t> pos(static_cast<std::size_t>(n), 0);
      while (true) {
        Cyclo coeff = base;
        std::uint64_t key = 0;
        for (int i = 0; i < n; ++i) {
          const auto& [l, c] = (*rows[static_cast<std::size_t>(i)])[pos[static_cast<std::size_t>(i)]];
          key = key * A.dim() + l;
          coeff *= c;
        }
        R.add_term(key, coeff);
        int i = n - 1;
        while (i >= 0) {
          if (++pos[static_cast<std::size_t>(i)] < rows[static_cast<std::size_t>(i)]->size()) break;
          pos[static_cast<std::size_t>(i)] = 0;
          --i;
        }
        if (i < 0) break;
      }
    }
  }
  R.compact();
  return R;
}

Tensor mul_chain(const AlgebraOps& W, const std::vector<const Tensor*>& factors) {
  Tensor acc = *factors.front();
  for (std::size_t i = 1; i < factors.size(); ++i) acc = mul(W, acc, *factors[i]);
  return acc;
}

Tensor unit_tensor(const AlgebraOps& W, int rank) {
  Tensor one(W.dim(), rank);
  const SparseVec& u = W.unit_vec();
  std::vector<std::size_t> pos(static_cast<std::size_t>(rank), 0);
  while (true) {
    std::uint64_t key = 0;
    Cyclo c = Cyclo::one(W.field());
    for (int i = 0; i < rank; ++i) {
      const auto& [l, x] = u[pos[static_cast<std::size_t>(i)]];
      key = key * W.dim() + l;
      c *= x;
    }
    one.add_term(key, c);
    int i = rank - 1;
    while (i >= 0) {
      if (++pos[static_cast<std::size_t>(i)] < u.size()) break;
      pos[static_cast<std::size_t>(i)] = 0;
      --i;
    }
    if (i < 0) break;
  }
  return one;
}

Tensor from_vec(const AlgebraOps& W, const SparseVec& v) {
  Tensor t(W.dim(), 1);
  for (const auto& [l, c] : v) t.add_term(static_cast<std::uint64_t>(l), c);
  return t;
}

SparseVec to_vec(const Tensor& t) {
  SparseVec v;
  for (const auto& [k, c] : t.terms_map())
    if (!c.is_zero()) v.emplace_back(static_cast<Label>(k), c);
  return sv_normalize(std::move(v));
}

Tensor map_slot(const Tensor& A, int slot, const std::function<SparseVec(Label)>& f) {
  Tensor R(A.dim(), A.rank());
  std::uint64_t hi_div = 1;
  for (int i = A.rank() - 1; i > slot; --i) hi_div *= A.dim();
  for (const auto& [k, c] : A.terms_map()) {
    Label l = static_cast<Label>((k / hi_div) % A.dim());
    std::uint64_t base = k - static_cast<std::uint64_t>(l) * hi_div;
    SparseVec img = f(l);
    for (const auto& [l2, c2] : img)
      R.add_term(base + static_cast<std::uint64_t>(l2) * hi_div, c * c2);
  }
  R.compact();
  return R;
}

Tensor scale_slot(const Tensor& A, int slot, const std::function<Cyclo(Label)>& f) {
  Tensor R(A.dim(), A.rank());
  std::uint64_t hi_div = 1;
  for (int i = A.rank() - 1; i > slot; --i) hi_div *= A.dim();
  for (const auto& [k, c] : A.terms_map()) {
    Label l = static_cast<Label>((k / hi_div) % A.dim());
    R.add_term(k, c * f(l));
  }
  R.compact();
  return R;
}

Tensor expand_slot(const Tensor& A, int slot, const std::function<const Tensor&(Label)>& f) {
  Tensor R(A.dim(), A.rank() + 1);
  for (const auto& [k, c] : A.terms_map()) {
    std::vector<Label> key = A.decode(k);
    const Tensor& d = f(key[static_cast<std::size_t>(slot)]);
    for (const auto& [dk, dc] : d.terms_map()) {
      Label x = d.slot_of(dk, 0), y = d.slot_of(dk, 1);
      std::vector<Label> nk;
      nk.reserve(static_cast<std::size_t>(A.rank() + 1));
      for (int i = 0; i < A.rank(); ++i) {
        if (i == slot) {
          nk.push_back(x);
          nk.push_back(y);
        } else {
          nk.push_back(key[static_cast<std::size_t>(i)]);
        }
      }
      R.add_term(nk, c * dc);
    }
  }
  R.compact();
  return R;
}

Tensor contract_slot(const Tensor& A, int slot, const std::function<Cyclo(Label)>& f) {
  Tensor R(A.dim(), A.rank() - 1);
  for (const auto& [k, c] : A.terms_map()) {
    std::vector<Label> key = A.decode(k);
    Cyclo s = f(key[static_cast<std::size_t>(slot)]);
    if (s.is_zero()) continue;
    std::vector<Label> nk;
    for (int i = 0; i < A.rank(); ++i)
      if (i != slot) nk.push_back(key[static_cast<std::size_t>(i)]);
    R.add_term(nk, c * s);
  }
  R.compact();
  return R;
}

Tensor permute(const Tensor& A, const std::vector<int>& src_of) {
  Tensor R(A.dim(), A.rank());
  for (const auto& [k, c] : A.terms_map()) {
    std::vector<Label> key = A.decode(k);
    std::vector<Label> nk(key.size());
    for (std::size_t i = 0; i < key.size(); ++i)
      nk[i] = key[static_cast<std::size_t>(src_of[i])];
    R.add_term(nk, c);
  }
  return R;
}

Tensor embed(const AlgebraOps& W, const Tensor& A, int N, const std::vector<int>& positions) {
  std::vector<bool> used(static_cast<std::size_t>(N), false);
  for (int p : positions) used[static_cast<std::size_t>(p)] = true;
  const SparseVec& u = W.unit_vec();
  Tensor R(W.dim(), N);
  std::vector<int> free_slots;
  for (int i = 0; i < N; ++i)
    if (!used[static_cast<std::size_t>(i)]) free_slots.push_back(i);
  for (const auto& [k, c] : A.terms_map()) {
    std::vector<Label> key = A.decode(k);
    std::vector<Label> nk(static_cast<std::size_t>(N), 0);
    for (std::size_t i = 0; i < positions.size(); ++i)
      nk[static_cast<std::size_t>(positions[i])] = key[i];
    std::vector<std::size_t> pos(free_slots.size(), 0);
    while (true) {
      Cyclo coeff = c;
      for (std::size_t i = 0; i < free_slots.size(); ++i) {
        const auto& [l, x] = u[pos[i]];
        nk[static_cast<std::size_t>(free_slots[i])] = l;
        coeff *= x;
      }
      R.add_term(nk, coeff);
      if (free_slots.empty()) break;
      std::size_t i = free_slots.size();
      bool done = false;
      while (i-- > 0) {
        if (++pos[i] < u.size()) break;
        pos[i] = 0;
        if (i == 0) done = true;
      }
      if (done || free_slots.empty()) break;
    }
  }
  R.compact();
  return R;
}

namespace {

// Content of a row: gcd of numerators / lcm of denominators across all
// cyclotomic coordinates; dividing by it keeps entries integral and small.
Rat row_content(const std::vector<Cyclo>& row) {
  mpz_class g = 0, l = 1;
  for (const Cyclo& c : row)
    for (const Rat& r : c.coeffs()) {
      if (r == 0) continue;
      mpz_class num = abs(r.get_num());
      mpz_class den = r.get_den();
      mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), num.get_mpz_t());
      mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), den.get_mpz_t());
    }
  if (g == 0) return Rat(1);
  return Rat(g) / Rat(l);
}

}  // namespace

long exact_rank(std::vector<std::vector<Cyclo>> M) {
  if (M.empty()) return 0;
  const std::size_t rows = M.size(), cols = M[0].size();
  long rank = 0;
  std::size_t rr = 0;
  for (std::size_t col = 0; col < cols && rr < rows; ++col) {
    std::size_t piv = rows;
    for (std::size_t r = rr; r < rows; ++r)
      if (!M[r][col].is_zero()) {
        piv = r;
        break;
      }
    if (piv == rows) continue;
    std::swap(M[piv], M[rr]);
    Rat cont = row_content(M[rr]);
    if (cont != 1) {
      Rat inv = Rat(1) / cont;
      for (auto& c : M[rr]) c = c.scaled(inv);
    }
    Cyclo pinv = M[rr][col].inv();
    for (std::size_t r = rr + 1; r < rows; ++r) {
      if (M[r][col].is_zero()) continue;
      Cyclo f = M[r][col] * pinv;
      for (std::size_t c = col; c < cols; ++c) M[r][c] -= f * M[rr][c];
    }
    ++rank;
    ++rr;
  }
  return rank;
}

}  // namespace dynwha
