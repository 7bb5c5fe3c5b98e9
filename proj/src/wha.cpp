#include "dynwha/wha.hpp"

#include <algorithm>
#include <array>
#include <map>
#include <set>
#include <sstream>

namespace dynwha {

Wha::Wha(std::uint32_t dim, const CycloField* f, SparseVec unit)
    : dim_(dim), f_(f), unit_(std::move(unit)) {}

const SparseVec& Wha::mul_labels(Label a, Label b) const {
  std::uint64_t key = static_cast<std::uint64_t>(a) * dim_ + b;
  auto it = mul_cache_.find(key);
  if (it != mul_cache_.end()) return it->second;
  return mul_cache_.emplace(key, sv_normalize(mul_rule(a, b))).first->second;
}

const Tensor& Wha::comul(Label a) const {
  auto it = comul_cache_.find(a);
  if (it != comul_cache_.end()) return it->second;
  return comul_cache_.emplace(a, comul_rule(a)).first->second;
}

const SparseVec& Wha::antipode(Label a) const {
  auto it = antipode_cache_.find(a);
  if (it != antipode_cache_.end()) return it->second;
  return antipode_cache_.emplace(a, sv_normalize(antipode_rule(a))).first->second;
}

const SparseVec& Wha::antipode_inv(Label a) const {
  auto it = antipode_inv_cache_.find(a);
  if (it != antipode_inv_cache_.end()) return it->second;
  if (!antipode_inv_rule) fail(Err::Internal, "antipode inverse rule not provided");
  return antipode_inv_cache_.emplace(a, sv_normalize(antipode_inv_rule(a))).first->second;
}

Tensor Wha::apply_antipode(const Tensor& x) const {
  return map_slot(x, 0, [this](Label a) { return antipode(a); });
}

Tensor Wha::apply_antipode_inv(const Tensor& x) const {
  return map_slot(x, 0, [this](Label a) { return antipode_inv(a); });
}

Tensor Wha::comul_elem(const Tensor& x) const {
  Tensor r(dim_, 2);
  for (const auto& [k, c] : x.terms_map()) {
    const Tensor& d = comul(static_cast<Label>(k));
    for (const auto& [dk, dc] : d.terms_map()) r.add_term(dk, c * dc);
  }
  r.compact();
  return r;
}

Cyclo Wha::counit_elem(const Tensor& x) const {
  Cyclo acc = Cyclo::zero(f_);
  for (const auto& [k, c] : x.terms_map()) acc += c * counit_rule(static_cast<Label>(k));
  return acc;
}

Tensor Wha::delta_one() const {
  Tensor r(dim_, 2);
  for (const auto& [l, c] : unit_) {
    const Tensor& d = comul(l);
    for (const auto& [dk, dc] : d.terms_map()) r.add_term(dk, c * dc);
  }
  r.compact();
  return r;
}

namespace {

Tensor basis_elem(const Wha& W, Label a) {
  Tensor t(W.dim(), 1);
  t.add_term(static_cast<std::uint64_t>(a), Cyclo::one(W.field()));
  return t;
}

Cyclo pick_coeff(const Wha& W, std::mt19937_64& rng) {
  static const int nums[] = {1, 2, -1, 3, 1};
  static const int dens[] = {1, 1, 2, 1, 3};
  std::size_t i = rng() % 5;
  long qe = static_cast<long>(rng() % static_cast<std::uint64_t>(W.field()->ell()));
  return Cyclo::q_power(W.field(), qe).scaled(Rat(nums[i]) / Rat(dens[i]));
}

Tensor random_sparse(const Wha& W, std::mt19937_64& rng) {
  Tensor t(W.dim(), 1);
  int nterms = 1 + static_cast<int>(rng() % 3);
  for (int i = 0; i < nterms; ++i) {
    Label l = static_cast<Label>(rng() % W.dim());
    t.add_term(static_cast<std::uint64_t>(l), pick_coeff(W, rng));
  }
  t.compact();
  if (t.empty_or_zero()) t.add_term(std::uint64_t{0}, Cyclo::one(W.field()));
  return t;
}

}  // namespace

Sampler::Sampler(const Wha& W, const SampleSpec& spec) {
  std::mt19937_64 rng(spec.seed * 0x9e3779b97f4a7c15ULL + 0x2545F4914F6CDD1DULL);
  full_mode = W.dim() <= spec.full_threshold;
  if (full_mode) {
    for (Label a = 0; a < W.dim(); ++a) {
      singles_full.push_back(a);
      singles.push_back(basis_elem(W, a));
    }
  } else {
    for (Label g : W.generators) singles.push_back(basis_elem(W, g));
    for (int i = 0; i < spec.n_random; ++i) singles.push_back(random_sparse(W, rng));
  }
  if (full_mode) {
    // Pairs are enumerated by the callers directly over the basis.
  } else {
    for (Label g : W.generators)
      pairs.emplace_back(basis_elem(W, g), random_sparse(W, rng));
    for (int i = 0; i < spec.n_random; ++i)
      pairs.emplace_back(random_sparse(W, rng), random_sparse(W, rng));
  }
  int ntrip = std::max(8, spec.n_random / 2);
  for (int i = 0; i < ntrip; ++i)
    triples.push_back({random_sparse(W, rng), random_sparse(W, rng), random_sparse(W, rng)});
}

Tensor eps_t_elem(const Wha& W, const Tensor& x) {
  Tensor d1 = W.delta_one();
  Tensor prod = mul(W, d1, embed(W, x, 2, {0}));
  return contract_slot(prod, 0, [&W](Label a) { return W.counit(a); });
}

Tensor eps_s_elem(const Wha& W, const Tensor& x) {
  Tensor d1 = W.delta_one();
  Tensor prod = mul(W, embed(W, x, 2, {1}), d1);
  return contract_slot(prod, 1, [&W](Label a) { return W.counit(a); });
}

std::string tensor_brief(const AlgebraOps& W, const Tensor& t, std::size_t max_terms) {
  std::ostringstream os;
  auto v = t.sorted_terms();
  std::size_t n = std::min(max_terms, v.size());
  for (std::size_t i = 0; i < n; ++i) {
    if (i) os << " + ";
    os << v[i].second.str() << "*";
    std::uint64_t k = v[i].first;
    std::vector<Label> key = t.decode(k);
    for (std::size_t s = 0; s < key.size(); ++s) {
      if (s) os << "(x)";
      os << W.label_name(key[s]);
    }
  }
  if (v.size() > n) os << " + ... (" << v.size() << " terms)";
  if (v.empty()) os << "0";
  return os.str();
}

Report verify_axioms(const Wha& W, const SampleSpec& spec, const std::string& instance) {
  Report rep;
  Sampler smp(W, spec);
  Tensor d1 = W.delta_one();
  Tensor unit1 = unit_tensor(W, 1);

  {  // coassociativity
    Stopwatch sw;
    bool ok = true;
    std::string wit;
    for (const Tensor& x : smp.singles) {
      Tensor d = W.comul_elem(x);
      Tensor l = expand_slot(d, 0, [&W](Label a) -> const Tensor& { return W.comul(a); });
      Tensor r = expand_slot(d, 1, [&W](Label a) -> const Tensor& { return W.comul(a); });
      if (!(l == r)) {
        ok = false;
        wit = tensor_brief(W, x);
        break;
      }
    }
    rep.add("coassociativity", instance, ok, wit, sw.ms());
  }

  {  // Delta is multiplicative
    Stopwatch sw;
    bool ok = true;
    std::string wit;
    auto check_pair = [&](const Tensor& x, const Tensor& y) {
      Tensor xy = mul(W, x, y);
      Tensor lhs = W.comul_elem(xy);
      Tensor rhs = mul(W, W.comul_elem(x), W.comul_elem(y));
      if (!(lhs == rhs)) {
        ok = false;
        wit = tensor_brief(W, x) + " | " + tensor_brief(W, y);
        return false;
      }
      return true;
    };
    if (smp.full_mode) {
      for (Label a = 0; a < W.dim() && ok; ++a) {
        Tensor xa = basis_elem(W, a);
        Tensor da = W.comul_elem(xa);
        for (Label b = 0; b < W.dim(); ++b) {
          Tensor xb = basis_elem(W, b);
          Tensor lhs = W.comul_elem(mul(W, xa, xb));
          Tensor rhs = mul(W, da, W.comul(b));
          if (!(lhs == rhs)) {
            ok = false;
            wit = W.label_name(a) + " | " + W.label_name(b);
            break;
          }
        }
      }
    } else {
      for (const auto& [x, y] : smp.pairs)
        if (!check_pair(x, y)) break;
    }
    rep.add("comultiplication_multiplicative", instance, ok, wit, sw.ms());
  }

  {  // counit axiom
    Stopwatch sw;
    bool ok = true;
    std::string wit;
    for (const Tensor& x : smp.singles) {
      Tensor d = W.comul_elem(x);
      Tensor l = contract_slot(d, 0, [&W](Label a) { return W.counit(a); });
      Tensor r = contract_slot(d, 1, [&W](Label a) { return W.counit(a); });
      if (!(l == x) || !(r == x)) {
        ok = false;
        wit = tensor_brief(W, x);
        break;
      }
    }
    rep.add("counit", instance, ok, wit, sw.ms());
  }

  {  // weak counit multiplicativity on triples
    Stopwatch sw;
    bool ok = true;
    std::string wit;
    for (const auto& [h, g, f3] : smp.triples) {
      Cyclo lhs = W.counit_elem(mul(W, mul(W, h, g), f3));
      Tensor dg = W.comul_elem(g);
      Cyclo mid = Cyclo::zero(W.field());
      Cyclo mid_op = Cyclo::zero(W.field());
      for (const auto& [k, c] : dg.terms_map()) {
        Label g1 = dg.slot_of(k, 0), g2 = dg.slot_of(k, 1);
        Cyclo e1 = W.counit_elem(mul(W, h, basis_elem(W, g1)));
        Cyclo e2 = W.counit_elem(mul(W, basis_elem(W, g2), f3));
        mid += c * e1 * e2;
        Cyclo e1b = W.counit_elem(mul(W, h, basis_elem(W, g2)));
        Cyclo e2b = W.counit_elem(mul(W, basis_elem(W, g1), f3));
        mid_op += c * e1b * e2b;
      }
      if (!(lhs == mid) || !(lhs == mid_op)) {
        ok = false;
        wit = tensor_brief(W, h) + " | " + tensor_brief(W, g) + " | " + tensor_brief(W, f3);
        break;
      }
    }
    rep.add("counit_weak_multiplicativity", instance, ok, wit, sw.ms());
  }

  {  // Delta(1) coassociativity identities
    Stopwatch sw;
    Tensor lhs = expand_slot(d1, 0, [&W](Label a) -> const Tensor& { return W.comul(a); });
    Tensor r1 = mul(W, embed(W, d1, 3, {0, 1}), embed(W, d1, 3, {1, 2}));
    Tensor r2 = mul(W, embed(W, d1, 3, {1, 2}), embed(W, d1, 3, {0, 1}));
    bool ok = lhs == r1 && lhs == r2;
    rep.add("unit_comultiplication", instance, ok, ok ? "" : tensor_brief(W, lhs - r1), sw.ms());
  }

  {  // antipode axioms
    Stopwatch sw;
    bool ok_t = true, ok_s = true, ok_sid = true;
    std::string wit_t, wit_s, wit_sid;
    for (const Tensor& x : smp.singles) {
      Tensor d = W.comul_elem(x);
      // m(id x S) Delta(h) = eps_t(h)
      Tensor l1 = Tensor(W.dim(), 1);
      for (const auto& [k, c] : d.terms_map()) {
        const SparseVec& s2 = W.antipode(d.slot_of(k, 1));
        for (const auto& [sl, sc] : s2)
          for (const auto& [ml, mc] : W.mul_labels(d.slot_of(k, 0), sl))
            l1.add_term(static_cast<std::uint64_t>(ml), c * sc * mc);
      }
      l1.compact();
      if (ok_t && !(l1 == eps_t_elem(W, x))) {
        ok_t = false;
        wit_t = tensor_brief(W, x);
      }
      // m(S x id) Delta(h) = eps_s(h)
      Tensor l2 = Tensor(W.dim(), 1);
      for (const auto& [k, c] : d.terms_map()) {
        const SparseVec& s1 = W.antipode(d.slot_of(k, 0));
        for (const auto& [sl, sc] : s1)
          for (const auto& [ml, mc] : W.mul_labels(sl, d.slot_of(k, 1)))
            l2.add_term(static_cast<std::uint64_t>(ml), c * sc * mc);
      }
      l2.compact();
      if (ok_s && !(l2 == eps_s_elem(W, x))) {
        ok_s = false;
        wit_s = tensor_brief(W, x);
      }
      // S(h1) h2 S(h3) = S(h)
      Tensor d3 = expand_slot(d, 1, [&W](Label a) -> const Tensor& { return W.comul(a); });
      Tensor l3(W.dim(), 1);
      for (const auto& [k, c] : d3.terms_map()) {
        Label h1 = d3.slot_of(k, 0), h2 = d3.slot_of(k, 1), h3 = d3.slot_of(k, 2);
        for (const auto& [a1, c1] : W.antipode(h1))
          for (const auto& [m1, cm1] : W.mul_labels(a1, h2))
            for (const auto& [a3, c3] : W.antipode(h3))
              for (const auto& [m2, cm2] : W.mul_labels(m1, a3))
                l3.add_term(static_cast<std::uint64_t>(m2), c * c1 * cm1 * c3 * cm2);
      }
      l3.compact();
      if (ok_sid && !(l3 == W.apply_antipode(x))) {
        ok_sid = false;
        wit_sid = tensor_brief(W, x);
      }
      if (!ok_t && !ok_s && !ok_sid) break;
    }
    long ms = sw.ms();
    rep.add("antipode_target", instance, ok_t, wit_t, ms);
    rep.add("antipode_source", instance, ok_s, wit_s, ms);
    rep.add("antipode_s_id_s", instance, ok_sid, wit_sid, ms);
  }

  {  // ordinary Hopf detection
    Tensor one2 = unit_tensor(W, 2);
    W.is_ordinary_hopf = (d1 == one2);
    rep.add("ordinary_hopf_flag", instance + (W.is_ordinary_hopf ? " (ordinary)" : " (weak)"),
            true);
  }
  return rep;
}

// ---------------------------------------------------------------------------

namespace {

/// Row-reduce a list of dense rows and return a spanning subset in echelon
/// form (rows are modified by elimination).
std::vector<std::vector<Cyclo>> echelon_basis(std::vector<std::vector<Cyclo>> rows) {
  std::vector<std::vector<Cyclo>> basis;
  std::vector<std::size_t> pivots;
  for (auto& row : rows) {
    // reduce against existing pivots
    for (std::size_t i = 0; i < basis.size(); ++i) {
      if (!row[pivots[i]].is_zero()) {
        Cyclo f = row[pivots[i]] * basis[i][pivots[i]].inv();
        for (std::size_t c = 0; c < row.size(); ++c) row[c] -= f * basis[i][c];
      }
    }
    std::size_t piv = row.size();
    for (std::size_t c = 0; c < row.size(); ++c)
      if (!row[c].is_zero()) {
        piv = c;
        break;
      }
    if (piv == row.size()) continue;
    pivots.push_back(piv);
    basis.push_back(std::move(row));
  }
  return basis;
}

SparseVec dense_to_sv(const std::vector<Cyclo>& row) {
  SparseVec v;
  for (std::size_t i = 0; i < row.size(); ++i)
    if (!row[i].is_zero()) v.emplace_back(static_cast<Label>(i), row[i]);
  return v;
}

}  // namespace

CounitalData counital_data(const Wha& W, const SampleSpec& spec, const std::string& instance) {
  CounitalData cd;
  Tensor d1 = W.delta_one();
  cd.e_t = map_slot(d1, 0, [&W](Label a) { return W.antipode(a); });
  cd.e_s = map_slot(d1, 1, [&W](Label a) { return W.antipode(a); });
  cd.eps_t = [&W](const Tensor& x) { return eps_t_elem(W, x); };
  cd.eps_s = [&W](const Tensor& x) { return eps_s_elem(W, x); };

  // H_t = span {(phi x id) Delta(1)}, H_s = span {(id x phi) Delta(1)}.
  std::map<Label, std::vector<Cyclo>> t_rows, s_rows;
  for (const auto& [k, c] : d1.terms_map()) {
    Label a = d1.slot_of(k, 0), b = d1.slot_of(k, 1);
    auto& tr = t_rows.try_emplace(a, std::vector<Cyclo>(W.dim(), Cyclo::zero(W.field())))
                   .first->second;
    tr[b] += c;
    auto& sr = s_rows.try_emplace(b, std::vector<Cyclo>(W.dim(), Cyclo::zero(W.field())))
                   .first->second;
    sr[a] += c;
  }
  std::vector<std::vector<Cyclo>> trows, srows;
  for (auto& [a, r] : t_rows) trows.push_back(std::move(r));
  for (auto& [a, r] : s_rows) srows.push_back(std::move(r));
  for (auto& r : echelon_basis(std::move(trows))) cd.ht_basis.push_back(dense_to_sv(r));
  for (auto& r : echelon_basis(std::move(srows))) cd.hs_basis.push_back(dense_to_sv(r));

  Report& rep = cd.checks;
  {  // m(e_t) = m(e_s) = 1
    Stopwatch sw;
    auto mcontract = [&W](const Tensor& e) {
      Tensor r(W.dim(), 1);
      for (const auto& [k, c] : e.terms_map())
        for (const auto& [l, cc] : W.mul_labels(e.slot_of(k, 0), e.slot_of(k, 1)))
          r.add_term(static_cast<std::uint64_t>(l), c * cc);
      r.compact();
      return r;
    };
    Tensor one = unit_tensor(W, 1);
    bool ok = mcontract(cd.e_t) == one && mcontract(cd.e_s) == one;
    rep.add("separability_idempotent_unit", instance, ok, "", sw.ms());
  }
  {  // eps_t idempotent, S eps_t = eps_s S on the basis
    Stopwatch sw;
    bool ok1 = true, ok2 = true;
    std::string w1, w2;
    for (Label a = 0; a < W.dim(); ++a) {
      Tensor x = basis_elem(W, a);
      Tensor et = eps_t_elem(W, x);
      if (ok1 && !(eps_t_elem(W, et) == et)) {
        ok1 = false;
        w1 = W.label_name(a);
      }
      Tensor lhs = W.apply_antipode(et);
      Tensor rhs = eps_s_elem(W, W.apply_antipode(x));
      if (ok2 && !(lhs == rhs)) {
        ok2 = false;
        w2 = W.label_name(a);
      }
      if (!ok1 && !ok2) break;
    }
    rep.add("counital_idempotent", instance, ok1, w1, sw.ms());
    rep.add("antipode_swaps_counital", instance, ok2, w2, sw.ms());
  }
  {  // sliding identities on samples
    Stopwatch sw;
    Sampler smp(W, spec);
    bool okz = true, oky = true;
    std::string wz, wy;
    std::size_t nsamp = std::min<std::size_t>(smp.singles.size(), 12);
    for (std::size_t i = 0; i < nsamp && (okz || oky); ++i) {
      Tensor d = W.comul_elem(smp.singles[i]);
      for (const auto& z1 : cd.ht_basis)
        for (const auto& z2 : cd.ht_basis) {
          Tensor lhs = mul(W, mul(W, embed(W, from_vec(W, z1), 2, {1}), d),
                           embed(W, from_vec(W, z2), 2, {1}));
          Tensor rhs =
              mul(W, mul(W, embed(W, W.apply_antipode(from_vec(W, z1)), 2, {0}), d),
                  embed(W, W.apply_antipode(from_vec(W, z2)), 2, {0}));
          if (!(lhs == rhs)) {
            okz = false;
            wz = tensor_brief(W, smp.singles[i]);
          }
        }
      for (const auto& y1 : cd.hs_basis)
        for (const auto& y2 : cd.hs_basis) {
          Tensor lhs = mul(W, mul(W, embed(W, from_vec(W, y1), 2, {0}), d),
                           embed(W, from_vec(W, y2), 2, {0}));
          Tensor rhs =
              mul(W, mul(W, embed(W, W.apply_antipode(from_vec(W, y1)), 2, {1}), d),
                  embed(W, W.apply_antipode(from_vec(W, y2)), 2, {1}));
          if (!(lhs == rhs)) {
            oky = false;
            wy = tensor_brief(W, smp.singles[i]);
          }
        }
    }
    rep.add("target_sliding", instance, okz, wz, sw.ms());
    rep.add("source_sliding", instance, oky, wy, sw.ms());
  }
  return cd;
}

// ---------------------------------------------------------------------------

std::shared_ptr<Wha> dual_wha(std::shared_ptr<const Wha> W, std::uint32_t table_threshold) {
  if (W->dim() > table_threshold)
    fail(Err::DimensionTooLarge,
         "dual tables need dim <= " + std::to_string(table_threshold) + ", have " +
             std::to_string(W->dim()));
  const CycloField* f = W->field();
  SparseVec unit;
  for (Label a = 0; a < W->dim(); ++a) {
    Cyclo e = W->counit(a);
    if (!e.is_zero()) unit.emplace_back(a, e);
  }
  auto D = std::make_shared<Wha>(W->dim(), f, sv_normalize(std::move(unit)));
  D->mul_rule = [W](Label a, Label b) {
    SparseVec out;
    for (Label h = 0; h < W->dim(); ++h) {
      const Tensor& d = W->comul(h);
      const Cyclo* c = d.find(static_cast<std::uint64_t>(a) * W->dim() + b);
      if (c && !c->is_zero()) out.emplace_back(h, *c);
    }
    return out;
  };
  D->comul_rule = [W](Label a) {
    Tensor t(W->dim(), 2);
    for (Label h = 0; h < W->dim(); ++h)
      for (Label g = 0; g < W->dim(); ++g) {
        for (const auto& [l, c] : W->mul_labels(h, g))
          if (l == a) t.add_term(static_cast<std::uint64_t>(h) * W->dim() + g, c);
      }
    t.compact();
    return t;
  };
  D->counit_rule = [W](Label a) {
    for (const auto& [l, c] : W->unit_vec())
      if (l == a) return c;
    return Cyclo::zero(W->field());
  };
  D->antipode_rule = [W](Label a) {
    SparseVec out;
    for (Label h = 0; h < W->dim(); ++h)
      for (const auto& [l, c] : W->antipode(h))
        if (l == a) out.emplace_back(h, c);
    return out;
  };
  if (W->antipode_inv_rule)
    D->antipode_inv_rule = [W](Label a) {
      SparseVec out;
      for (Label h = 0; h < W->dim(); ++h)
        for (const auto& [l, c] : W->antipode_inv(h))
          if (l == a) out.emplace_back(h, c);
      return out;
    };
  D->namer = [W](Label a) { return W->label_name(a) + "*"; };
  return D;
}

Functional functional_from_dual_label(const Wha& W, Label a) {
  Functional f;
  f.values.assign(W.dim(), Cyclo::zero(W.field()));
  f.values[a] = Cyclo::one(W.field());
  return f;
}

Functional functional_dual_product(const Wha& W, const Functional& a, const Functional& b,
                                   bool opposite) {
  Functional r;
  r.values.assign(W.dim(), Cyclo::zero(W.field()));
  for (Label h = 0; h < W.dim(); ++h) {
    const Tensor& d = W.comul(h);
    Cyclo acc = Cyclo::zero(W.field());
    for (const auto& [k, c] : d.terms_map()) {
      Label h1 = d.slot_of(k, 0), h2 = d.slot_of(k, 1);
      if (opposite)
        acc += c * b.values[h1] * a.values[h2];
      else
        acc += c * a.values[h1] * b.values[h2];
    }
    r.values[h] = acc;
  }
  return r;
}

Cyclo functional_eval(const CycloField* f, const Functional& fn, const Tensor& x) {
  Cyclo acc = Cyclo::zero(f);
  for (const auto& [k, c] : x.terms_map()) acc += c * fn.values[static_cast<std::size_t>(k)];
  return acc;
}

// ---------------------------------------------------------------------------

Report verify_twist(const Wha& W, const TwistPair& tw, const std::string& instance) {
  Report rep;
  Tensor d1 = W.delta_one();
  const Tensor& th = tw.theta;
  const Tensor& tb = tw.theta_bar;
  {
    Stopwatch sw;
    bool ok = mul(W, d1, th) == th && mul(W, tb, d1) == tb && mul(W, th, tb) == d1;
    rep.add("twist_membership", instance, ok, ok ? "" : tensor_brief(W, mul(W, th, tb) - d1),
            sw.ms());
  }
  {
    Stopwatch sw;
    Tensor one = unit_tensor(W, 1);
    auto ceps = [&W](const Tensor& t, int slot) {
      return contract_slot(t, slot, [&W](Label a) { return W.counit(a); });
    };
    bool ok = ceps(th, 0) == one && ceps(th, 1) == one && ceps(tb, 0) == one && ceps(tb, 1) == one;
    rep.add("twist_counit", instance, ok, "", sw.ms());
  }
  auto dexp = [&W](const Tensor& t, int slot) {
    return expand_slot(t, slot, [&W](Label a) -> const Tensor& { return W.comul(a); });
  };
  {
    Stopwatch sw;
    Tensor lhs = mul(W, dexp(th, 0), embed(W, th, 3, {0, 1}));
    Tensor rhs = mul(W, dexp(th, 1), embed(W, th, 3, {1, 2}));
    bool ok = lhs == rhs;
    rep.add("twist_shifted_cocycle_pp", instance, ok, ok ? "" : tensor_brief(W, lhs - rhs),
            sw.ms());
  }
  {
    Stopwatch sw;
    Tensor lhs = mul(W, embed(W, tb, 3, {0, 1}), dexp(tb, 0));
    Tensor rhs = mul(W, embed(W, tb, 3, {1, 2}), dexp(tb, 1));
    bool ok = lhs == rhs;
    rep.add("twist_shifted_cocycle_mm", instance, ok, ok ? "" : tensor_brief(W, lhs - rhs),
            sw.ms());
  }
  {
    Stopwatch sw;
    Tensor lhs = mul(W, dexp(tb, 0), dexp(th, 1));
    Tensor rhs = mul(W, embed(W, th, 3, {0, 1}), embed(W, tb, 3, {1, 2}));
    bool ok = lhs == rhs;
    rep.add("twist_mixed_pm", instance, ok, ok ? "" : tensor_brief(W, lhs - rhs), sw.ms());
  }
  {
    Stopwatch sw;
    Tensor lhs = mul(W, dexp(tb, 1), dexp(th, 0));
    Tensor rhs = mul(W, embed(W, th, 3, {1, 2}), embed(W, tb, 3, {0, 1}));
    bool ok = lhs == rhs;
    rep.add("twist_mixed_mp", instance, ok, ok ? "" : tensor_brief(W, lhs - rhs), sw.ms());
  }
  return rep;
}

TwistedAlgebra apply_twist(const Wha& W, const TwistPair& tw) {
  TwistedAlgebra out;
  // v = m(S x id) theta, v_inv = theta_bar^(1) S(theta_bar^(2))
  Tensor v(W.dim(), 1), vinv(W.dim(), 1);
  for (const auto& [k, c] : tw.theta.terms_map()) {
    Label a = tw.theta.slot_of(k, 0), b = tw.theta.slot_of(k, 1);
    for (const auto& [sa, ca] : W.antipode(a))
      for (const auto& [m, cm] : W.mul_labels(sa, b)) v.add_term(static_cast<std::uint64_t>(m), c * ca * cm);
  }
  for (const auto& [k, c] : tw.theta_bar.terms_map()) {
    Label a = tw.theta_bar.slot_of(k, 0), b = tw.theta_bar.slot_of(k, 1);
    for (const auto& [sb, cb] : W.antipode(b))
      for (const auto& [m, cm] : W.mul_labels(a, sb))
        vinv.add_term(static_cast<std::uint64_t>(m), c * cb * cm);
  }
  v.compact();
  vinv.compact();
  Tensor one = unit_tensor(W, 1);
  if (!(mul(W, v, vinv) == one) || !(mul(W, vinv, v) == one))
    fail(Err::TwistInvalid, "m(S x id)(twist) is not invertible");
  out.v = v;
  out.v_inv = vinv;

  auto Wt = std::make_shared<Wha>(W.dim(), W.field(), W.unit_vec());
  const Wha* base = &W;
  Wt->mul_rule = [base](Label a, Label b) { return base->mul_labels(a, b); };
  Wt->counit_rule = [base](Label a) { return base->counit(a); };
  Wt->zero_mul_hint = [base](Label a, Label b) { return base->mul_known_zero(a, b); };
  Wt->namer = [base](Label a) { return base->label_name(a); };
  Wt->generators = W.generators;
  Tensor theta = tw.theta, theta_bar = tw.theta_bar;
  Wt->comul_rule = [base, theta, theta_bar](Label h) {
    Tensor dh = base->comul(h);
    return mul(*base, mul(*base, theta_bar, dh), theta);
  };
  Tensor vv = v, vvi = vinv;
  Wt->antipode_rule = [base, vv, vvi](Label h) {
    Tensor sh = from_vec(*base, base->antipode(h));
    return to_vec(mul(*base, mul(*base, vvi, sh), vv));
  };
  if (W.antipode_inv_rule) {
    Wt->antipode_inv_rule = [base, vv, vvi](Label h) {
      Tensor x = basis_elem(*base, h);
      Tensor conj = mul(*base, mul(*base, vv, x), vvi);
      return to_vec(base->apply_antipode_inv(conj));
    };
  }
  out.wha = Wt;
  out.eps_t_twisted = [base, theta](const Tensor& h) {
    Tensor prod = mul(*base, theta, embed(*base, h, 2, {0}));
    return contract_slot(prod, 0, [base](Label a) { return base->counit(a); });
  };
  out.eps_s_twisted = [base, theta_bar](const Tensor& h) {
    Tensor prod = mul(*base, embed(*base, h, 2, {1}), theta_bar);
    return contract_slot(prod, 1, [base](Label a) { return base->counit(a); });
  };
  return out;
}

// ---------------------------------------------------------------------------

namespace {

/// Two-sided inverse of a rank-1 element by solving the dense linear system
/// x * y = 1; returns nullopt when singular.
std::optional<Tensor> algebra_inverse(const Wha& W, const Tensor& x) {
  const std::uint32_t n = W.dim();
  // columns: y-basis, rows: result basis. M[r][y] = coeff of r in x * e_y.
  std::vector<std::vector<Cyclo>> M(n, std::vector<Cyclo>(n, Cyclo::zero(W.field())));
  for (const auto& [k, c] : x.terms_map()) {
    Label a = static_cast<Label>(k);
    for (Label y = 0; y < n; ++y)
      for (const auto& [l, cc] : W.mul_labels(a, y)) M[l][y] += c * cc;
  }
  // solve M ycoef = unit vector
  std::vector<Cyclo> rhs(n, Cyclo::zero(W.field()));
  for (const auto& [l, c] : W.unit_vec()) rhs[l] = c;
  // gaussian elimination with partial pivot
  std::vector<int> perm(n);
  for (std::uint32_t i = 0; i < n; ++i) perm[i] = static_cast<int>(i);
  for (std::uint32_t col = 0; col < n; ++col) {
    std::uint32_t piv = n;
    for (std::uint32_t r = col; r < n; ++r)
      if (!M[r][col].is_zero()) {
        piv = r;
        break;
      }
    if (piv == n) return std::nullopt;
    std::swap(M[piv], M[col]);
    std::swap(rhs[piv], rhs[col]);
    Cyclo pinv = M[col][col].inv();
    for (std::uint32_t r = 0; r < n; ++r) {
      if (r == col || M[r][col].is_zero()) continue;
      Cyclo f = M[r][col] * pinv;
      for (std::uint32_t c2 = col; c2 < n; ++c2) M[r][c2] -= f * M[col][c2];
      rhs[r] -= f * rhs[col];
    }
  }
  Tensor y(W.dim(), 1);
  for (std::uint32_t i = 0; i < n; ++i) y.add_term(std::uint64_t{i}, rhs[i] * M[i][i].inv());
  y.compact();
  Tensor one = unit_tensor(W, 1);
  if (!(mul(W, x, y) == one) || !(mul(W, y, x) == one)) return std::nullopt;
  return y;
}

}  // namespace

GaugeResult gauge_transform(const Wha& W, const TwistPair& tw, const Tensor& x,
                            const SampleSpec& spec, const std::string& instance) {
  Tensor one = unit_tensor(W, 1);
  if (!(eps_t_elem(W, x) == one) || !(eps_s_elem(W, x) == one))
    fail(Err::BadGauge, "gauge needs eps_t(x) = eps_s(x) = 1");
  auto xinv = algebra_inverse(W, x);
  if (!xinv) fail(Err::BadGauge, "gauge element not invertible");
  GaugeResult out;
  out.x_inv = *xinv;
  Tensor dxinv = W.comul_elem(*xinv);
  Tensor dx = W.comul_elem(x);
  Tensor xx = mul(W, embed(W, x, 2, {0}), embed(W, x, 2, {1}));
  Tensor xixi = mul(W, embed(W, *xinv, 2, {0}), embed(W, *xinv, 2, {1}));
  out.twisted.theta = mul(W, mul(W, dxinv, tw.theta), xx);
  out.twisted.theta_bar = mul(W, mul(W, xixi, tw.theta_bar), dx);

  // Morphism h -> x^-1 h x between the two twisted algebras.
  TwistedAlgebra A = apply_twist(W, tw);
  TwistedAlgebra B = apply_twist(W, out.twisted);
  Tensor xi = *xinv, xe = x;
  auto image = [&W, xi, xe](Label a) {
    return mul(W, mul(W, xi, basis_elem(W, a)), xe);
  };
  out.morphism = check_wha_morphism(*A.wha, *B.wha, image, spec, instance);
  return out;
}

// ---------------------------------------------------------------------------

Report verify_quasitriangular(const Wha& W, const QTStructure& qt, const SampleSpec& spec,
                              const std::string& instance) {
  Report rep;
  Tensor d1 = W.delta_one();
  Tensor d1op = permute(d1, {1, 0});
  {
    Stopwatch sw;
    bool ok = mul(W, mul(W, d1op, qt.R), d1) == qt.R &&
              mul(W, mul(W, d1, qt.Rbar), d1op) == qt.Rbar;
    rep.add("qt_membership", instance, ok, "", sw.ms());
  }
  {
    Stopwatch sw;
    Tensor rr = mul(W, qt.R, qt.Rbar);
    Tensor rrbar = mul(W, qt.Rbar, qt.R);
    bool ok = rr == d1op && rrbar == d1;
    rep.add("qt_inverses", instance, ok, ok ? "" : tensor_brief(W, rr - d1op), sw.ms());
  }
  {
    Stopwatch sw;
    Sampler smp(W, spec);
    bool ok = true;
    std::string wit;
    std::size_t nsamp = smp.full_mode ? smp.singles.size()
                                      : std::min<std::size_t>(smp.singles.size(), 24);
    for (std::size_t i = 0; i < nsamp; ++i) {
      const Tensor& h = smp.singles[i];
      Tensor d = W.comul_elem(h);
      Tensor dop = permute(d, {1, 0});
      if (!(mul(W, dop, qt.R) == mul(W, qt.R, d))) {
        ok = false;
        wit = tensor_brief(W, h);
        break;
      }
    }
    rep.add("qt_intertwines_coproduct", instance, ok, wit, sw.ms());
  }
  {
    Stopwatch sw;
    Tensor lhs = expand_slot(qt.R, 1, [&W](Label a) -> const Tensor& { return W.comul(a); });
    Tensor rhs = mul(W, permute(embed(W, qt.R, 3, {0, 1}), {0, 2, 1}),
                     embed(W, qt.R, 3, {0, 1}));
    bool ok1 = lhs == rhs;
    Tensor lhs2 = expand_slot(qt.R, 0, [&W](Label a) -> const Tensor& { return W.comul(a); });
    Tensor rhs2 = mul(W, permute(embed(W, qt.R, 3, {0, 1}), {0, 2, 1}),
                      embed(W, qt.R, 3, {1, 2}));
    bool ok2 = lhs2 == rhs2;
    rep.add("qt_coproduct_factorization_right", instance, ok1,
            ok1 ? "" : tensor_brief(W, lhs - rhs), sw.ms());
    rep.add("qt_coproduct_factorization_left", instance, ok2,
            ok2 ? "" : tensor_brief(W, lhs2 - rhs2), sw.ms());
  }
  {
    Stopwatch sw;
    Tensor r12 = embed(W, qt.R, 3, {0, 1});
    Tensor r13 = permute(embed(W, qt.R, 3, {0, 1}), {0, 2, 1});
    Tensor r23 = embed(W, qt.R, 3, {1, 2});
    Tensor lhs = mul(W, mul(W, r12, r13), r23);
    Tensor rhs = mul(W, mul(W, r23, r13), r12);
    bool ok = lhs == rhs;
    rep.add("qt_yang_baxter", instance, ok, ok ? "" : tensor_brief(W, lhs - rhs), sw.ms());
  }
  return rep;
}

RhoResult rho_map(const Wha& W, const QTStructure& qt, int which, const SampleSpec& spec,
                  const std::string& instance) {
  RhoResult out;
  const std::uint32_t n = W.dim();
  out.matrix.assign(n, std::vector<Cyclo>(n, Cyclo::zero(W.field())));
  for (const auto& [k, c] : qt.R.terms_map()) {
    Label a = qt.R.slot_of(k, 0), b = qt.R.slot_of(k, 1);
    if (which == 1)
      out.matrix[a][b] += c;  // (id x phi_b) R
    else
      out.matrix[b][a] += c;  // (phi_a x id) R
  }
  out.rank = exact_rank(out.matrix);

  // Sampled morphism checks: rho_1(phi psi) = rho_1(psi) rho_1(phi) in H,
  // and (rho x rho) Delta_{H*}(phi) = Delta^cop(rho(phi)).
  std::mt19937_64 rng(spec.seed + 7);
  auto rho_of = [&](const Functional& f) {
    Tensor img(W.dim(), 1);
    for (const auto& [k, c] : qt.R.terms_map()) {
      Label a = qt.R.slot_of(k, 0), b = qt.R.slot_of(k, 1);
      if (which == 1)
        img.add_term(std::uint64_t{a}, c * f.values[b]);
      else
        img.add_term(std::uint64_t{b}, c * f.values[a]);
    }
    img.compact();
    return img;
  };
  {
    Stopwatch sw;
    bool ok = true;
    std::string wit;
    for (int i = 0; i < 10 && ok; ++i) {
      Label la = static_cast<Label>(rng() % n), lb = static_cast<Label>(rng() % n);
      Functional fa = functional_from_dual_label(W, la);
      Functional fb = functional_from_dual_label(W, lb);
      Functional fab = functional_dual_product(W, fa, fb, false);
      Tensor lhs = rho_of(fab);
      Tensor rhs = which == 1 ? mul(W, rho_of(fb), rho_of(fa)) : mul(W, rho_of(fa), rho_of(fb));
      if (!(lhs == rhs)) {
        ok = false;
        wit = W.label_name(la) + "*, " + W.label_name(lb) + "*";
      }
    }
    out.checks.add(which == 1 ? "rho1_algebra_map_into_op" : "rho2_algebra_map", instance, ok,
                   wit, sw.ms());
  }
  {
    Stopwatch sw;
    bool ok = true;
    std::string wit;
    for (int i = 0; i < 6 && ok; ++i) {
      Label la = static_cast<Label>(rng() % n);
      // Delta_{H*}(phi_a)[h,g] = coeff of a in h*g
      Tensor dphi(W.dim(), 2);
      for (Label h = 0; h < n; ++h)
        for (Label g = 0; g < n; ++g) {
          if (W.mul_known_zero(h, g)) continue;
          for (const auto& [l, c] : W.mul_labels(h, g))
            if (l == la) dphi.add_term(static_cast<std::uint64_t>(h) * n + g, c);
        }
      dphi.compact();
      // (rho x rho) applied slotwise
      Tensor lhs(W.dim(), 2);
      for (const auto& [k, c] : dphi.terms_map()) {
        Functional f1 = functional_from_dual_label(W, dphi.slot_of(k, 0));
        Functional f2 = functional_from_dual_label(W, dphi.slot_of(k, 1));
        Tensor t1 = rho_of(f1), t2 = rho_of(f2);
        for (const auto& [k1, c1] : t1.terms_map())
          for (const auto& [k2, c2] : t2.terms_map())
            lhs.add_term(k1 * n + k2, c * c1 * c2);
      }
      lhs.compact();
      Tensor rimg = rho_of(functional_from_dual_label(W, la));
      Tensor rhs = permute(W.comul_elem(rimg), {1, 0});
      if (!(lhs == rhs)) {
        ok = false;
        wit = W.label_name(la) + "*";
      }
    }
    out.checks.add(which == 1 ? "rho1_coalgebra_map_into_cop" : "rho2_coalgebra_map", instance,
                   ok, wit, sw.ms());
  }
  return out;
}

// ---------------------------------------------------------------------------

Report algebroid_from_wha(const Wha& W, const SampleSpec& spec, const std::string& instance) {
  Report rep;
  CounitalData cd = counital_data(W, spec, instance);
  Sampler smp(W, spec);
  std::size_t nsamp = std::min<std::size_t>(smp.singles.size(), smp.full_mode ? 64 : 16);
  Tensor one = unit_tensor(W, 1);
  Tensor d1 = W.delta_one();

  auto beta = [&W](const Tensor& z) { return W.apply_antipode_inv(z); };

  {  // S^2 = id and S o S^-1 = id on the base
    Stopwatch sw;
    bool ok = true;
    std::string wit;
    for (const auto& zv : cd.ht_basis) {
      Tensor z = from_vec(W, zv);
      if (!(W.apply_antipode(W.apply_antipode(z)) == z) ||
          !(W.apply_antipode(W.apply_antipode_inv(z)) == z)) {
        ok = false;
        wit = tensor_brief(W, z);
        break;
      }
    }
    rep.add("algebroid_base_antipode_squared", instance, ok, wit, sw.ms());
  }
  {  // commuting images, beta anti-homomorphism
    Stopwatch sw;
    bool ok_comm = true, ok_anti = true;
    std::string w1, w2;
    for (const auto& z1v : cd.ht_basis)
      for (const auto& z2v : cd.ht_basis) {
        Tensor z1 = from_vec(W, z1v), z2 = from_vec(W, z2v);
        Tensor b2 = beta(z2);
        if (ok_comm && !(mul(W, z1, b2) == mul(W, b2, z1))) {
          ok_comm = false;
          w1 = tensor_brief(W, z1) + " | " + tensor_brief(W, z2);
        }
        if (ok_anti && !(beta(mul(W, z1, z2)) == mul(W, beta(z2), beta(z1)))) {
          ok_anti = false;
          w2 = tensor_brief(W, z1) + " | " + tensor_brief(W, z2);
        }
      }
    rep.add("algebroid_commuting_images", instance, ok_comm, w1, sw.ms());
    rep.add("algebroid_source_antihom", instance, ok_anti, w2, sw.ms());
  }
  {  // bimodule property of Delta and the compatibility relation
    Stopwatch sw;
    bool ok_bi = true, ok_comp = true;
    std::string w1, w2;
    for (std::size_t i = 0; i < nsamp && (ok_bi || ok_comp); ++i) {
      const Tensor& h = smp.singles[i];
      Tensor dh = W.comul_elem(h);
      for (const auto& av : cd.ht_basis) {
        Tensor a = from_vec(W, av);
        Tensor ba = beta(a);
        if (ok_bi) {
          Tensor l1 = W.comul_elem(mul(W, a, h));
          Tensor r1 = mul(W, embed(W, a, 2, {0}), dh);
          Tensor l2 = W.comul_elem(mul(W, ba, h));
          Tensor r2 = mul(W, embed(W, ba, 2, {1}), dh);
          if (!(l1 == r1) || !(l2 == r2)) {
            ok_bi = false;
            w1 = tensor_brief(W, h) + " | " + tensor_brief(W, a);
          }
        }
        if (ok_comp) {
          Tensor lhs = mul(W, dh, embed(W, ba, 2, {0}));
          Tensor rhs = mul(W, dh, embed(W, a, 2, {1}));
          if (!(lhs == rhs)) {
            ok_comp = false;
            w2 = tensor_brief(W, h) + " | " + tensor_brief(W, a);
          }
        }
      }
    }
    rep.add("algebroid_bimodule_comultiplication", instance, ok_bi, w1, sw.ms());
    rep.add("algebroid_compatibility", instance, ok_comp, w2, sw.ms());
  }
  {  // counit axioms for eps_t as the algebroid counit
    Stopwatch sw;
    bool ok = true;
    std::string wit;
    if (!(eps_t_elem(W, one) == one)) ok = false;
    for (std::size_t i = 0; i < nsamp && ok; ++i) {
      const Tensor& h = smp.singles[i];
      Tensor dh = W.comul_elem(h);
      // alpha(eps_t(h1)) h2 = h
      Tensor acc1(W.dim(), 1), acc2(W.dim(), 1);
      for (const auto& [k, c] : dh.terms_map()) {
        Tensor h1 = basis_elem(W, dh.slot_of(k, 0));
        Tensor h2 = basis_elem(W, dh.slot_of(k, 1));
        acc1 = acc1 + mul(W, eps_t_elem(W, h1), h2).scaled(c);
        acc2 = acc2 + mul(W, beta(eps_t_elem(W, h2)), h1).scaled(c);
      }
      if (!(acc1 == h) || !(acc2 == h)) {
        ok = false;
        wit = tensor_brief(W, h);
      }
      // bimodule: eps_t(alpha(a) beta(b) h) = a eps_t(h) b
      for (const auto& av : cd.ht_basis) {
        if (!ok) break;
        for (const auto& bv : cd.ht_basis) {
          Tensor a = from_vec(W, av), b = from_vec(W, bv);
          Tensor lhs = eps_t_elem(W, mul(W, mul(W, a, beta(b)), h));
          Tensor rhs = mul(W, mul(W, a, eps_t_elem(W, h)), b);
          if (!(lhs == rhs)) {
            ok = false;
            wit = tensor_brief(W, h) + " | " + tensor_brief(W, a) + " | " + tensor_brief(W, b);
            break;
          }
        }
      }
    }
    rep.add("algebroid_counit", instance, ok, wit, sw.ms());
  }
  {  // antipode axioms and the section gamma
    Stopwatch sw;
    bool ok1 = true, ok2 = true, ok3 = true;
    std::string w1, w2, w3;
    for (std::size_t i = 0; i < nsamp; ++i) {
      const Tensor& h = smp.singles[i];
      Tensor dh = W.comul_elem(h);
      // m(S x id) Delta(h) = beta(eps_t(S(h)))
      Tensor lhs(W.dim(), 1);
      for (const auto& [k, c] : dh.terms_map())
        for (const auto& [sa, ca] : W.antipode(dh.slot_of(k, 0)))
          for (const auto& [m, cm] : W.mul_labels(sa, dh.slot_of(k, 1)))
            lhs.add_term(std::uint64_t{m}, c * ca * cm);
      lhs.compact();
      Tensor rhs = beta(eps_t_elem(W, W.apply_antipode(h)));
      if (ok1 && !(lhs == rhs)) {
        ok1 = false;
        w1 = tensor_brief(W, h);
      }
      // m(id x S) gamma(Delta(h)) = alpha(eps_t(h)), gamma = Delta(1)-section
      Tensor gd = mul(W, d1, dh);
      Tensor lhs2(W.dim(), 1);
      for (const auto& [k, c] : gd.terms_map())
        for (const auto& [sb, cb] : W.antipode(gd.slot_of(k, 1)))
          for (const auto& [m, cm] : W.mul_labels(gd.slot_of(k, 0), sb))
            lhs2.add_term(std::uint64_t{m}, c * cb * cm);
      lhs2.compact();
      if (ok2 && !(lhs2 == eps_t_elem(W, h))) {
        ok2 = false;
        w2 = tensor_brief(W, h);
      }
      // projection is idempotent on the image and Delta lands in it
      if (ok3 && (!(mul(W, d1, gd) == gd) || !(mul(W, d1, dh) == dh))) {
        ok3 = false;
        w3 = tensor_brief(W, h);
      }
    }
    rep.add("algebroid_antipode_left", instance, ok1, w1, sw.ms());
    rep.add("algebroid_antipode_section", instance, ok2, w2, sw.ms());
    rep.add("algebroid_projection", instance, ok3, w3, sw.ms());
  }
  rep.merge(cd.checks);
  return rep;
}

// ---------------------------------------------------------------------------

namespace {

std::shared_ptr<Wha> groupoid_from_arrows(const CycloField* f, int n_objects,
                                          const std::vector<std::pair<int, int>>& arrows,
                                          bool full_check) {
  // Thin groupoid: at most one arrow per (dst, src) pair, composition
  // (a<-b) o (b<-c) = (a<-c).
  std::set<std::pair<int, int>> have(arrows.begin(), arrows.end());
  for (int x = 0; x < n_objects; ++x)
    if (full_check && !have.count({x, x})) fail(Err::NotAGroupoid, "missing identity arrow");
  if (full_check) {
    for (const auto& [a, b] : have)
      if (!have.count({b, a})) fail(Err::NotAGroupoid, "missing inverse arrow");
    for (const auto& [a, b] : have)
      for (const auto& [c, d] : have)
        if (b == c && !have.count({a, d})) fail(Err::NotAGroupoid, "composition escapes the set");
  }
  std::vector<std::pair<int, int>> lab(have.begin(), have.end());
  std::map<std::pair<int, int>, Label> idx;
  for (std::size_t i = 0; i < lab.size(); ++i) idx[lab[i]] = static_cast<Label>(i);
  SparseVec unit;
  for (int x = 0; x < n_objects; ++x) {
    auto it = idx.find({x, x});
    if (it != idx.end()) unit.emplace_back(it->second, Cyclo::one(f));
  }
  auto W = std::make_shared<Wha>(static_cast<std::uint32_t>(lab.size()), f,
                                 sv_normalize(std::move(unit)));
  W->mul_rule = [lab, idx, f](Label a, Label b) -> SparseVec {
    auto [t1, s1] = lab[a];
    auto [t2, s2] = lab[b];
    if (s1 != t2) return {};
    auto it = idx.find({t1, s2});
    if (it == idx.end()) return {};
    return {{it->second, Cyclo::one(f)}};
  };
  std::uint32_t dim = static_cast<std::uint32_t>(lab.size());
  W->comul_rule = [dim, f](Label a) {
    Tensor t(dim, 2);
    t.add_term(static_cast<std::uint64_t>(a) * dim + a, Cyclo::one(f));
    return t;
  };
  W->counit_rule = [f](Label) { return Cyclo::one(f); };
  W->antipode_rule = [lab, idx, f](Label a) -> SparseVec {
    auto [t1, s1] = lab[a];
    return {{idx.at({s1, t1}), Cyclo::one(f)}};
  };
  W->antipode_inv_rule = W->antipode_rule;
  W->namer = [lab](Label a) {
    return "g(" + std::to_string(lab[a].first) + "<-" + std::to_string(lab[a].second) + ")";
  };
  for (Label a = 0; a < dim; ++a) W->generators.push_back(a);
  return W;
}

}  // namespace

std::shared_ptr<Wha> groupoid_full(const CycloField* f, int n_objects) {
  std::vector<std::pair<int, int>> arrows;
  for (int a = 0; a < n_objects; ++a)
    for (int b = 0; b < n_objects; ++b) arrows.emplace_back(a, b);
  return groupoid_from_arrows(f, n_objects, arrows, true);
}

std::shared_ptr<Wha> groupoid_cyclic(const CycloField* f, int order) {
  // One object, group Z/order; labels are group elements.
  SparseVec unit{{0, Cyclo::one(f)}};
  auto W = std::make_shared<Wha>(static_cast<std::uint32_t>(order), f, unit);
  W->mul_rule = [order, f](Label a, Label b) -> SparseVec {
    return {{static_cast<Label>((a + b) % order), Cyclo::one(f)}};
  };
  std::uint32_t dim = static_cast<std::uint32_t>(order);
  W->comul_rule = [dim, f](Label a) {
    Tensor t(dim, 2);
    t.add_term(static_cast<std::uint64_t>(a) * dim + a, Cyclo::one(f));
    return t;
  };
  W->counit_rule = [f](Label) { return Cyclo::one(f); };
  W->antipode_rule = [order, f](Label a) -> SparseVec {
    return {{static_cast<Label>((order - a) % order), Cyclo::one(f)}};
  };
  W->antipode_inv_rule = W->antipode_rule;
  W->namer = [](Label a) { return "c" + std::to_string(a); };
  W->generators = {static_cast<Label>(1 % order)};
  return W;
}

std::shared_ptr<Wha> groupoid_custom(const CycloField* f, int n_objects,
                                     const std::vector<std::pair<int, int>>& arrows) {
  return groupoid_from_arrows(f, n_objects, arrows, true);
}

// ---------------------------------------------------------------------------

Report check_wha_morphism(const Wha& src, const Wha& dst,
                          const std::function<Tensor(Label)>& image, const SampleSpec& spec,
                          const std::string& instance, bool opposite_mul) {
  Report rep;
  auto phi = [&](const Tensor& x) {
    Tensor r(dst.dim(), 1);
    for (const auto& [k, c] : x.terms_map()) {
      Tensor img = image(static_cast<Label>(k));
      for (const auto& [ik, ic] : img.terms_map()) r.add_term(ik, c * ic);
    }
    r.compact();
    return r;
  };
  Sampler smp(src, spec);
  std::size_t nsamp = std::min<std::size_t>(smp.singles.size(), smp.full_mode ? 32 : 16);
  std::mt19937_64 rng(spec.seed + 99);
  {
    Stopwatch sw;
    bool ok = phi(unit_tensor(src, 1)) == unit_tensor(dst, 1);
    std::string wit;
    for (int i = 0; i < 24 && ok; ++i) {
      Label a = static_cast<Label>(rng() % src.dim());
      Label b = static_cast<Label>(rng() % src.dim());
      Tensor lhs = phi(from_vec(src, src.mul_labels(a, b)));
      Tensor ia = image(a), ib = image(b);
      Tensor rhs = opposite_mul ? mul(dst, ib, ia) : mul(dst, ia, ib);
      if (!(lhs == rhs)) {
        ok = false;
        wit = src.label_name(a) + " | " + src.label_name(b);
      }
    }
    rep.add("morphism_algebra", instance, ok, wit, sw.ms());
  }
  {
    Stopwatch sw;
    bool ok = true;
    std::string wit;
    for (std::size_t i = 0; i < nsamp && ok; ++i) {
      const Tensor& x = smp.singles[i];
      Tensor d = src.comul_elem(x);
      Tensor lhs(dst.dim(), 2);
      for (const auto& [k, c] : d.terms_map()) {
        Tensor i1 = image(d.slot_of(k, 0)), i2 = image(d.slot_of(k, 1));
        for (const auto& [k1, c1] : i1.terms_map())
          for (const auto& [k2, c2] : i2.terms_map()) lhs.add_term(k1 * dst.dim() + k2, c * c1 * c2);
      }
      lhs.compact();
      Tensor rhs = dst.comul_elem(phi(x));
      if (!(lhs == rhs)) {
        ok = false;
        wit = tensor_brief(src, x);
      }
      if (ok && !(dst.counit_elem(phi(x)) == src.counit_elem(x))) {
        ok = false;
        wit = tensor_brief(src, x);
      }
    }
    rep.add("morphism_coalgebra", instance, ok, wit, sw.ms());
  }
  {
    Stopwatch sw;
    bool ok = true;
    std::string wit;
    for (std::size_t i = 0; i < nsamp && ok; ++i) {
      const Tensor& x = smp.singles[i];
      Tensor lhs = phi(src.apply_antipode(x));
      Tensor rhs = opposite_mul ? dst.apply_antipode_inv(phi(x)) : dst.apply_antipode(phi(x));
      if (!(lhs == rhs)) {
        ok = false;
        wit = tensor_brief(src, x);
      }
    }
    rep.add("morphism_antipode", instance, ok, wit, sw.ms());
  }
  {
    Stopwatch sw;
    CounitalData cs = counital_data(src, spec, instance);
    CounitalData cdd = counital_data(dst, spec, instance);
    std::vector<std::vector<Cyclo>> rows;
    for (const auto& zv : cs.ht_basis) {
      Tensor img = phi(from_vec(src, zv));
      std::vector<Cyclo> row(dst.dim(), Cyclo::zero(dst.field()));
      for (const auto& [k, c] : img.terms_map()) row[static_cast<std::size_t>(k)] += c;
      rows.push_back(std::move(row));
    }
    long rank_img = exact_rank(rows);
    bool ok = rank_img == static_cast<long>(cs.ht_basis.size()) &&
              rank_img == static_cast<long>(cdd.ht_basis.size());
    rep.add("morphism_counital_bijection", instance, ok,
            ok ? "" : "rank " + std::to_string(rank_img), sw.ms());
  }
  return rep;
}

}  // namespace dynwha
