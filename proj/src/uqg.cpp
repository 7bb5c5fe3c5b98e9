#include "dynwha/uqg.hpp"

#include <numeric>
#include <sstream>

namespace dynwha {

CartanDatum CartanDatum::A(int n) {
  CartanDatum d;
  d.type = "A" + std::to_string(n);
  d.m = n;
  d.cartan.assign(n, std::vector<long>(n, 0));
  for (int i = 0; i < n; ++i) {
    d.cartan[i][i] = 2;
    if (i + 1 < n) d.cartan[i][i + 1] = d.cartan[i + 1][i] = -1;
  }
  // Positive roots alpha_i + ... + alpha_j, ordered by start then end; this
  // lexicographic ordering is convex and pins A2 as (a1, a1+a2, a2).
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j) {
      TVec r(n, 0);
      for (int k = i; k <= j; ++k) r[k] = 1;
      d.positive_roots.push_back(r);
    }
  return d;
}

CartanDatum CartanDatum::from_name(const std::string& name) {
  if (name.size() >= 2 && name[0] == 'A') {
    int n = std::stoi(name.substr(1));
    if (n >= 1) return A(n);
  }
  fail(Err::UnsupportedType, "no Cartan datum shipped for type " + name);
}

long CartanDatum::det() const {
  std::vector<std::vector<Rat>> a(m, std::vector<Rat>(m));
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) a[i][j] = cartan[i][j];
  Rat det(1);
  for (int col = 0; col < m; ++col) {
    int piv = -1;
    for (int r = col; r < m; ++r)
      if (a[r][col] != 0) {
        piv = r;
        break;
      }
    if (piv < 0) return 0;
    if (piv != col) {
      std::swap(a[piv], a[col]);
      det = -det;
    }
    det *= a[col][col];
    for (int r = col + 1; r < m; ++r) {
      if (a[r][col] == 0) continue;
      Rat f = a[r][col] / a[col][col];
      for (int c = col; c < m; ++c) a[r][c] -= f * a[col][c];
    }
  }
  return det.get_num().get_si();
}

Uq::Uq(const CartanDatum& datum, long ell) : datum_(datum), ell_(ell) {
  if (ell < 3 || ell % 2 == 0)
    fail(Err::EvenOrSmallEll, "ell must be odd >= 3, got " + std::to_string(ell));
  long det = datum_.det();
  if (std::gcd(std::abs(det), ell) != 1)
    fail(Err::CoprimalityViolation, "gcd(det Cartan, ell) = " +
                                        std::to_string(std::gcd(std::abs(det), ell)));
  f_ = CycloField::get(ell);
  torus_ = std::make_unique<Torus>(datum_.m, ell, datum_.cartan);
  if (datum_.m != 1)
    fail(Err::UnsupportedType,
         "PBW straightening table only ships for rank 1; " + datum_.type + " has rank " +
             std::to_string(datum_.m));
  const int N = n_pos();
  std::uint64_t dim = 1;
  for (int i = 0; i < 2 * N + datum_.m; ++i) dim *= static_cast<std::uint64_t>(ell);
  dim_ = static_cast<std::uint32_t>(dim);
  zero_fe_.assign(static_cast<std::size_t>(N), 0);
  weights_.resize(dim_);
  degrees_.resize(dim_);
  for (Label l = 0; l < dim_; ++l) {
    Parts p = parts(l);
    TVec w(datum_.m, 0);
    long deg = 0;
    for (int s = 0; s < N; ++s) {
      for (int i = 0; i < datum_.m; ++i)
        w[i] += (p.e[static_cast<std::size_t>(s)] - p.f[static_cast<std::size_t>(s)]) *
                datum_.positive_roots[static_cast<std::size_t>(s)][static_cast<std::size_t>(i)];
      long ht = 0;
      for (int i = 0; i < datum_.m; ++i)
        ht += datum_.positive_roots[static_cast<std::size_t>(s)][static_cast<std::size_t>(i)];
      deg += (p.e[static_cast<std::size_t>(s)] - p.f[static_cast<std::size_t>(s)]) * ht;
    }
    weights_[l] = w;
    degrees_[l] = deg;
  }
  build_wha();
}

Uq::Parts Uq::parts(Label l) const {
  const int N = n_pos();
  Parts p;
  p.f.resize(static_cast<std::size_t>(N));
  p.e.resize(static_cast<std::size_t>(N));
  p.k.resize(static_cast<std::size_t>(datum_.m));
  std::uint64_t x = l;
  for (int i = N - 1; i >= 0; --i) {
    p.e[static_cast<std::size_t>(i)] = static_cast<long>(x % ell_);
    x /= ell_;
  }
  for (int i = datum_.m - 1; i >= 0; --i) {
    p.k[static_cast<std::size_t>(i)] = static_cast<long>(x % ell_);
    x /= ell_;
  }
  for (int i = N - 1; i >= 0; --i) {
    p.f[static_cast<std::size_t>(i)] = static_cast<long>(x % ell_);
    x /= ell_;
  }
  return p;
}

Label Uq::label_of(const std::vector<long>& fexp, const TVec& k,
                   const std::vector<long>& eexp) const {
  std::uint64_t x = 0;
  const int N = n_pos();
  for (int i = 0; i < N; ++i) x = x * ell_ + fexp[static_cast<std::size_t>(i)];
  for (int i = 0; i < datum_.m; ++i) {
    long c = k[static_cast<std::size_t>(i)] % ell_;
    if (c < 0) c += ell_;
    x = x * ell_ + c;
  }
  for (int i = 0; i < N; ++i) x = x * ell_ + eexp[static_cast<std::size_t>(i)];
  return static_cast<Label>(x);
}

std::string Uq::name(Label l) const {
  Parts p = parts(l);
  std::ostringstream os;
  bool any = false;
  for (int s = 0; s < n_pos(); ++s)
    if (p.f[static_cast<std::size_t>(s)]) {
      os << "F" << (n_pos() > 1 ? std::to_string(s) : "") << "^"
         << p.f[static_cast<std::size_t>(s)];
      any = true;
    }
  for (int i = 0; i < datum_.m; ++i)
    if (p.k[static_cast<std::size_t>(i)]) {
      os << "K" << (datum_.m > 1 ? std::to_string(i) : "") << "^"
         << p.k[static_cast<std::size_t>(i)];
      any = true;
    }
  for (int s = 0; s < n_pos(); ++s)
    if (p.e[static_cast<std::size_t>(s)]) {
      os << "E" << (n_pos() > 1 ? std::to_string(s) : "") << "^"
         << p.e[static_cast<std::size_t>(s)];
      any = true;
    }
  if (!any) os << "1";
  return os.str();
}

// Rank-1 straightening: right multiplication of F^a K^c E^b by one generator.
SparseVec Uq::right_mul_gen(Label l, Gen g, int) const {
  Parts p = parts(l);
  long a = p.f[0], c = p.k[0], b = p.e[0];
  SparseVec out;
  auto qp = [this](long n) { return Cyclo::q_power(f_, n); };
  switch (g) {
    case Gen::E: {
      if (b + 1 >= ell_) return {};
      out.emplace_back(label_of({a}, {c}, {b + 1}), Cyclo::one(f_));
      return out;
    }
    case Gen::K: {
      out.emplace_back(label_of({a}, {(c + 1) % ell_}, {b}), qp(-2 * b));
      return out;
    }
    case Gen::Kinv: {
      out.emplace_back(label_of({a}, {(c - 1 + ell_) % ell_}, {b}), qp(2 * b));
      return out;
    }
    case Gen::F: {
      // F^a K^c E^b F = q^{-2c} F^{a+1} K^c E^b
      //   + [b] (q^{-(b-1)} F^a K^{c+1} E^{b-1} - q^{b-1} F^a K^{c-1} E^{b-1})/(q - q^-1)
      if (a + 1 < ell_) out.emplace_back(label_of({a + 1}, {c}, {b}), qp(-2 * c));
      if (b > 0) {
        Cyclo nb = q_combinatorics(f_, b, QKind::q_int);
        Cyclo denom = qp(1) - qp(-1);
        Cyclo fac = nb / denom;
        out.emplace_back(label_of({a}, {(c + 1) % ell_}, {b - 1}), fac * qp(-(b - 1)));
        out.emplace_back(label_of({a}, {(c - 1 + ell_) % ell_}, {b - 1}),
                         (-fac) * qp(b - 1));
      }
      return out;
    }
  }
  return out;
}

void Uq::build_wha() {
  SparseVec unit{{unit_label(), Cyclo::one(f_)}};
  W_ = std::make_shared<Wha>(dim_, f_, unit);
  const Uq* self = this;
  W_->mul_rule = [self](Label x, Label y) -> SparseVec {
    Parts py = self->parts(y);
    SparseVec cur{{x, Cyclo::one(self->f_)}};
    auto step = [self, &cur](Gen g, int idx, long times) {
      for (long t = 0; t < times; ++t) {
        SparseVec next;
        for (const auto& [l, c] : cur)
          for (const auto& [l2, c2] : self->right_mul_gen(l, g, idx))
            next.emplace_back(l2, c * c2);
        cur = sv_normalize(std::move(next));
        if (cur.empty()) break;
      }
    };
    for (int s = 0; s < self->n_pos() && !cur.empty(); ++s)
      step(Gen::F, s, py.f[static_cast<std::size_t>(s)]);
    for (int i = 0; i < self->datum_.m && !cur.empty(); ++i)
      step(Gen::K, i, py.k[static_cast<std::size_t>(i)]);
    for (int s = 0; s < self->n_pos() && !cur.empty(); ++s)
      step(Gen::E, s, py.e[static_cast<std::size_t>(s)]);
    return cur;
  };
  W_->counit_rule = [self](Label l) {
    Parts p = self->parts(l);
    for (long v : p.f)
      if (v) return Cyclo::zero(self->f_);
    for (long v : p.e)
      if (v) return Cyclo::zero(self->f_);
    return Cyclo::one(self->f_);
  };
  // Coproduct via cached powers of the generator coproducts.
  W_->comul_rule = [self](Label l) -> Tensor {
    auto& pc = self->comul_pow_cache_;
    const Wha& W = *self->W_;
    if (pc.empty()) {
      // pc[0]: powers of Delta(F), pc[1]: Delta(K), pc[2]: Delta(E)
      pc.assign(3, std::vector<Tensor>());
      auto mk2 = [&](std::initializer_list<std::pair<std::pair<Label, Label>, Cyclo>> terms) {
        Tensor t(self->dim_, 2);
        for (const auto& [lab, c] : terms)
          t.add_term(static_cast<std::uint64_t>(lab.first) * self->dim_ + lab.second, c);
        return t;
      };
      Label one = self->unit_label();
      Label E = self->gen_E(0), F = self->gen_F(0), K = self->gen_K(0), Ki = self->gen_K(0, -1);
      Cyclo c1 = Cyclo::one(self->f_);
      Tensor dF = mk2({{{F, Ki}, c1}, {{one, F}, c1}});
      Tensor dK = mk2({{{K, K}, c1}});
      Tensor dE = mk2({{{E, one}, c1}, {{K, E}, c1}});
      for (int which = 0; which < 3; ++which) {
        const Tensor& base = which == 0 ? dF : which == 1 ? dK : dE;
        pc[static_cast<std::size_t>(which)].push_back(unit_tensor(W, 2));
        for (long p = 1; p < self->ell_; ++p)
          pc[static_cast<std::size_t>(which)].push_back(
              mul(W, pc[static_cast<std::size_t>(which)].back(), base));
      }
    }
    Parts p = self->parts(l);
    Tensor acc = pc[0][static_cast<std::size_t>(p.f[0])];
    acc = mul(W, acc, pc[1][static_cast<std::size_t>(p.k[0])]);
    acc = mul(W, acc, pc[2][static_cast<std::size_t>(p.e[0])]);
    return acc;
  };
  W_->antipode_rule = [self](Label l) -> SparseVec {
    // S(F^a K^c E^b) = S(E)^b S(K)^c S(F)^a with S(E) = -K^-1 E, S(F) = -F K.
    Parts p = self->parts(l);
    std::vector<GenPower> word;
    for (long t = 0; t < p.e[0]; ++t) {
      word.push_back({Gen::Kinv, 0, 1});
      word.push_back({Gen::E, 0, 1});
    }
    word.push_back({Gen::Kinv, 0, p.k[0]});
    for (long t = 0; t < p.f[0]; ++t) {
      word.push_back({Gen::F, 0, 1});
      word.push_back({Gen::K, 0, 1});
    }
    Tensor r = self->normalize(word);
    long sign = (p.e[0] + p.f[0]) % 2;
    SparseVec v = to_vec(r);
    if (sign) v = sv_scale(v, -Cyclo::one(self->f_));
    return v;
  };
  W_->antipode_inv_rule = [self](Label l) -> SparseVec {
    // S^-1(F^a K^c E^b) = S^-1(E)^b S^-1(K)^c S^-1(F)^a,
    // S^-1(E) = -E K^-1, S^-1(F) = -K F.
    Parts p = self->parts(l);
    std::vector<GenPower> word;
    for (long t = 0; t < p.e[0]; ++t) {
      word.push_back({Gen::E, 0, 1});
      word.push_back({Gen::Kinv, 0, 1});
    }
    word.push_back({Gen::Kinv, 0, p.k[0]});
    for (long t = 0; t < p.f[0]; ++t) {
      word.push_back({Gen::K, 0, 1});
      word.push_back({Gen::F, 0, 1});
    }
    Tensor r = self->normalize(word);
    long sign = (p.e[0] + p.f[0]) % 2;
    SparseVec v = to_vec(r);
    if (sign) v = sv_scale(v, -Cyclo::one(self->f_));
    return v;
  };
  W_->namer = [self](Label l) { return self->name(l); };
  W_->generators = {gen_E(0), gen_F(0), gen_K(0)};
}

Label Uq::gen_E(int i) const {
  std::vector<long> e = zero_fe_;
  // the generator E_i is the root vector at the simple root alpha_i
  for (int s = 0; s < n_pos(); ++s) {
    long ht = 0;
    for (int j = 0; j < datum_.m; ++j) ht += datum_.positive_roots[static_cast<std::size_t>(s)][static_cast<std::size_t>(j)];
    if (ht == 1 && datum_.positive_roots[static_cast<std::size_t>(s)][static_cast<std::size_t>(i)] == 1) {
      e[static_cast<std::size_t>(s)] = 1;
      break;
    }
  }
  return label_of(zero_fe_, TVec(datum_.m, 0), e);
}

Label Uq::gen_F(int i) const {
  std::vector<long> fexp = zero_fe_;
  for (int s = 0; s < n_pos(); ++s) {
    long ht = 0;
    for (int j = 0; j < datum_.m; ++j) ht += datum_.positive_roots[static_cast<std::size_t>(s)][static_cast<std::size_t>(j)];
    if (ht == 1 && datum_.positive_roots[static_cast<std::size_t>(s)][static_cast<std::size_t>(i)] == 1) {
      fexp[static_cast<std::size_t>(s)] = 1;
      break;
    }
  }
  return label_of(fexp, TVec(datum_.m, 0), zero_fe_);
}

Label Uq::gen_K(int i, long power) const {
  TVec k(datum_.m, 0);
  long c = power % ell_;
  if (c < 0) c += ell_;
  k[static_cast<std::size_t>(i)] = c;
  return label_of(zero_fe_, k, zero_fe_);
}

Tensor Uq::normalize(const std::vector<GenPower>& word) const {
  Tensor acc = unit_tensor(*W_, 1);
  for (const auto& gp : word) {
    for (long t = 0; t < gp.power; ++t) {
      Tensor next(dim_, 1);
      for (const auto& [k, c] : acc.terms_map())
        for (const auto& [l2, c2] : right_mul_gen(static_cast<Label>(k), gp.g, gp.index))
          next.add_term(static_cast<std::uint64_t>(l2), c * c2);
      next.compact();
      acc = std::move(next);
    }
  }
  return acc;
}

std::map<TVec, Tensor> Uq::weight_components(const Tensor& x) const {
  std::map<TVec, Tensor> out;
  for (const auto& [k, c] : x.terms_map()) {
    TVec total(datum_.m, 0);
    std::uint64_t kk = k;
    for (int s = x.rank() - 1; s >= 0; --s) {
      Label l = static_cast<Label>(kk % dim_);
      kk /= dim_;
      for (int i = 0; i < datum_.m; ++i) total[static_cast<std::size_t>(i)] += weights_[l][static_cast<std::size_t>(i)];
    }
    auto it = out.try_emplace(total, Tensor(dim_, x.rank())).first;
    it->second.add_term(k, c);
  }
  return out;
}

std::map<long, Tensor> Uq::degree_components_slot(const Tensor& x, int slot) const {
  std::map<long, Tensor> out;
  for (const auto& [k, c] : x.terms_map()) {
    Label l = x.slot_of(k, slot);
    auto it = out.try_emplace(degrees_[l], Tensor(dim_, x.rank())).first;
    it->second.add_term(k, c);
  }
  return out;
}

long Uq::first_slot_degree(const Tensor& t) const {
  long d = 0;
  for (const auto& [k, c] : t.terms_map()) d = std::max(d, degrees_[t.slot_of(k, 0)]);
  return d;
}

bool Uq::is_zero_weight(const Tensor& x) const {
  // commuting with Delta^n(K_gamma) for all torus generators means the total
  // weight pairs to zero mod ell against every generator
  for (const auto& [k, c] : x.terms_map()) {
    TVec total(datum_.m, 0);
    std::uint64_t kk = k;
    for (int s = x.rank() - 1; s >= 0; --s) {
      Label l = static_cast<Label>(kk % dim_);
      kk /= dim_;
      for (int i = 0; i < datum_.m; ++i) total[static_cast<std::size_t>(i)] += weights_[l][static_cast<std::size_t>(i)];
    }
    for (int i = 0; i < datum_.m; ++i) {
      TVec ei(datum_.m, 0);
      ei[static_cast<std::size_t>(i)] = 1;
      if (torus_->pair_raw(total, ei) % ell_ != 0) return false;
    }
  }
  return true;
}

Tensor Uq::from_torus(const TorusTensor& t) const {
  TorusTensor g = t.to_basis(TorusBasis::group);
  Tensor out(dim_, g.rank());
  for (long flat = 0; flat < g.entries(); ++flat) {
    if (g.at(flat).is_zero()) continue;
    auto key = g.key_of(flat);
    std::vector<Label> labels;
    for (const auto& kv : key) labels.push_back(label_of(zero_fe_, kv, zero_fe_));
    out.add_term(labels, g.at(flat));
  }
  return out;
}

TorusTensor Uq::to_torus(const Tensor& t) const {
  TorusTensor out(torus_.get(), t.rank(), TorusBasis::group);
  for (const auto& [k, c] : t.terms_map()) {
    std::vector<TVec> key;
    std::uint64_t kk = k;
    std::vector<Label> labels(static_cast<std::size_t>(t.rank()));
    for (int s = t.rank() - 1; s >= 0; --s) {
      labels[static_cast<std::size_t>(s)] = static_cast<Label>(kk % dim_);
      kk /= dim_;
    }
    for (Label l : labels) {
      Parts p = parts(l);
      for (long v : p.f)
        if (v) fail(Err::Internal, "tensor is not torus-valued");
      for (long v : p.e)
        if (v) fail(Err::Internal, "tensor is not torus-valued");
      key.push_back(p.k);
    }
    out.at(out.flat_index(key)) += c;
  }
  return out;
}

Tensor Uq::P_mu(const TVec& mu) const {
  TorusTensor p = idempotent_elem(*torus_, mu);
  return from_torus(p);
}

Rat Uq::lambda_weight(const LambdaParam& L, const TVec& w) const {
  std::vector<long> beta(w.begin(), w.end());
  return L.weight_value(beta);
}

Tensor Uq::apply_lambda(const LambdaParam& L, const Tensor& x, int slot, bool inverse) const {
  return scale_slot(x, slot, [&](Label l) {
    Rat v = lambda_weight(L, weights_[l]);
    if (inverse) v = Rat(1) / v;
    return Cyclo::from_rat(f_, v);
  });
}

Tensor Uq::apply_ad_k(const TVec& lam, const Tensor& x, int slot, bool inverse) const {
  return scale_slot(x, slot, [&](Label l) {
    long p = torus_->pair_raw(weights_[l], lam);
    return Cyclo::q_power(f_, inverse ? -p : p);
  });
}

Tensor Uq::omega2() const { return from_torus(omega(*torus_)); }

Tensor Uq::omega2_inv() const { return from_torus(omega(*torus_).inverse()); }

const Tensor& Uq::universal_R() const {
  if (R_built_) return R_;
  const Wha& W = *W_;
  Tensor acc = unit_tensor(W, 2);
  Cyclo one = Cyclo::one(f_);
  Cyclo q = Cyclo::q_power(f_, 1);
  for (int s = n_pos() - 1; s >= 0; --s) {
    // exponential factor for the root beta_s (rank 1: the single root)
    Tensor factor(dim_, 2);
    for (long n = 0; n < ell_; ++n) {
      Cyclo coeff = Cyclo::q_power(f_, -(n * (n + 1)) / 2);
      Cyclo pw = one;
      for (long t = 0; t < n; ++t) pw *= (one - q * q);
      coeff = coeff * pw / q_factorial_nonzero(f_, n);
      std::vector<long> e = zero_fe_, fx = zero_fe_;
      e[static_cast<std::size_t>(s)] = n;
      fx[static_cast<std::size_t>(s)] = n;
      Label l1 = label_of(zero_fe_, TVec(datum_.m, 0), e);
      Label l2 = label_of(fx, TVec(datum_.m, 0), zero_fe_);
      factor.add_term(static_cast<std::uint64_t>(l1) * dim_ + l2, coeff);
    }
    acc = mul(W, factor, acc);
  }
  R_ = mul(W, acc, omega2());
  // inverse: omega^-1 times reversed factor inverses (each factor is
  // unipotent, so the Neumann series terminates)
  Tensor inv_acc = omega2_inv();
  for (int s = 0; s < n_pos(); ++s) {
    Tensor factor(dim_, 2);
    for (long n = 1; n < ell_; ++n) {
      Cyclo coeff = Cyclo::q_power(f_, -(n * (n + 1)) / 2);
      Cyclo pw = one;
      for (long t = 0; t < n; ++t) pw *= (one - q * q);
      coeff = coeff * pw / q_factorial_nonzero(f_, n);
      std::vector<long> e = zero_fe_, fx = zero_fe_;
      e[static_cast<std::size_t>(s)] = n;
      fx[static_cast<std::size_t>(s)] = n;
      factor.add_term(static_cast<std::uint64_t>(label_of(zero_fe_, TVec(datum_.m, 0), e)) * dim_ +
                          label_of(fx, TVec(datum_.m, 0), zero_fe_),
                      coeff);
    }
    // (1 + N)^-1 = sum (-N)^k
    Tensor finv = unit_tensor(W, 2);
    Tensor pw = unit_tensor(W, 2);
    for (long k = 1; k < ell_; ++k) {
      pw = mul(W, pw, factor).scaled(-one);
      if (pw.empty_or_zero()) break;
      finv = finv + pw;
    }
    inv_acc = mul(W, inv_acc, finv);
  }
  R_inv_ = inv_acc;
  Tensor lhs = mul(W, R_, R_inv_);
  Tensor rhs = mul(W, R_inv_, R_);
  Tensor one2 = unit_tensor(W, 2);
  if (!(lhs == one2) || !(rhs == one2)) fail(Err::Internal, "R-matrix inverse check failed");
  R_built_ = true;
  return R_;
}

const Tensor& Uq::universal_R_inv() const {
  universal_R();
  return R_inv_;
}

std::set<std::vector<long>> Uq::iplus_weights() const {
  // weights of monomials K^c E^b with some b nonzero and every exponent < ell
  std::set<std::vector<long>> out;
  const int N = n_pos();
  std::vector<long> b(static_cast<std::size_t>(N), 0);
  while (true) {
    bool nonzero = false;
    for (long v : b)
      if (v) nonzero = true;
    if (nonzero) {
      std::vector<long> w(static_cast<std::size_t>(datum_.m), 0);
      for (int s = 0; s < N; ++s)
        for (int i = 0; i < datum_.m; ++i)
          w[static_cast<std::size_t>(i)] +=
              b[static_cast<std::size_t>(s)] *
              datum_.positive_roots[static_cast<std::size_t>(s)][static_cast<std::size_t>(i)];
      out.insert(w);
    }
    int i = N - 1;
    while (i >= 0) {
      if (++b[static_cast<std::size_t>(i)] < ell_) break;
      b[static_cast<std::size_t>(i)] = 0;
      --i;
    }
    if (i < 0) break;
  }
  return out;
}

std::shared_ptr<Uq> build_uq(const CartanDatum& datum, long ell) {
  return std::make_shared<Uq>(datum, ell);
}

}  // namespace dynwha
