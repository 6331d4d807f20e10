#include "cw/qform.hpp"

#include <algorithm>
#include <cstring>
#include <deque>
#include <numeric>

namespace cw {

namespace {

uint64_t next_rand(uint64_t& s) {
  s += 0x9e3779b97f4a7c15ULL;
  uint64_t z = s;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

std::string qz_key(const std::vector<QZ>& t) {
  std::string s;
  s.resize(t.size() * 16);
  char* p = s.data();
  for (const auto& q : t) {
    std::memcpy(p, &q.num, 8);
    std::memcpy(p + 8, &q.den, 8);
    p += 16;
  }
  return s;
}

} // namespace

std::string BilForm::key() const { return qz_key(table); }
std::string QuadMap::key() const { return qz_key(table); }

BilForm make_bilform(std::shared_ptr<const FiniteModule> mod, std::vector<QZ> table, bool check) {
  size_t n = mod->size();
  if (table.size() != n * n) fail(Err::BadSpec, "bilinear table has wrong size");
  BilForm b{std::move(mod), std::move(table)};
  if (check) {
    auto at = [&](Elem v, Elem w) { return b.table[static_cast<size_t>(v) * n + w]; };
    auto check_triple = [&](Elem v, Elem vp, Elem w) {
      if (at(b.mod->add(v, vp), w) != at(v, w) + at(vp, w)) return false;
      if (at(w, b.mod->add(v, vp)) != at(w, v) + at(w, vp)) return false;
      return true;
    };
    if (n <= 256) {
      for (Elem v = 0; v < n; ++v)
        for (Elem vp = 0; vp < n; ++vp)
          for (Elem w = 0; w < n; ++w)
            if (!check_triple(v, vp, w)) fail(Err::NotBilinear, "table is not Z-bilinear");
    } else {
      uint64_t s = 0xb111ULL;
      for (int t = 0; t < 20000; ++t)
        if (!check_triple(static_cast<Elem>(next_rand(s) % n), static_cast<Elem>(next_rand(s) % n),
                          static_cast<Elem>(next_rand(s) % n)))
          fail(Err::NotBilinear, "table is not Z-bilinear");
    }
  }
  return b;
}

QuadMap make_quadmap(std::shared_ptr<const FiniteModule> mod, std::vector<QZ> table, bool check) {
  size_t n = mod->size();
  if (table.size() != n) fail(Err::BadSpec, "quadratic table has wrong size");
  QuadMap q{std::move(mod), std::move(table)};
  if (check) {
    if (!q.table[0].is_zero()) fail(Err::NotBilinear, "phi(0) != 0");
    auto cube = [&](Elem x, Elem y, Elem z) {
      const auto& mod2 = *q.mod;
      QZ s = q.table[mod2.add(mod2.add(x, y), z)] - q.table[mod2.add(x, y)] -
             q.table[mod2.add(x, z)] - q.table[mod2.add(y, z)] + q.table[x] + q.table[y] +
             q.table[z];
      return s.is_zero();
    };
    if (n <= 64) {
      for (Elem x = 0; x < n; ++x)
        for (Elem y = 0; y < n; ++y)
          for (Elem z = 0; z < n; ++z)
            if (!cube(x, y, z)) fail(Err::NotBilinear, "cube condition fails");
    } else {
      uint64_t s = 0xcbbeULL;
      for (int t = 0; t < 20000; ++t)
        if (!cube(static_cast<Elem>(next_rand(s) % n), static_cast<Elem>(next_rand(s) % n),
                  static_cast<Elem>(next_rand(s) % n)))
          fail(Err::NotBilinear, "cube condition fails");
    }
  }
  return q;
}

BilForm tau(const BilForm& b) {
  size_t n = b.mod->size();
  std::vector<QZ> t(n * n);
  for (size_t v = 0; v < n; ++v)
    for (size_t w = 0; w < n; ++w) t[v * n + w] = b.table[w * n + v];
  return BilForm{b.mod, std::move(t)};
}

QuadMap brace(const BilForm& b) {
  size_t n = b.mod->size();
  std::vector<QZ> t(n);
  for (size_t v = 0; v < n; ++v) t[v] = b.table[v * n + v];
  return QuadMap{b.mod, std::move(t)};
}

BilForm lambda_of(const QuadMap& phi) {
  // reject inputs outside Quad_0
  make_quadmap(phi.mod, phi.table, true);
  size_t n = phi.mod->size();
  std::vector<QZ> t(n * n);
  for (Elem v = 0; v < n; ++v)
    for (Elem w = 0; w < n; ++w)
      t[static_cast<size_t>(v) * n + w] = phi.table[phi.mod->add(v, w)] - phi.table[v] - phi.table[w];
  return BilForm{phi.mod, std::move(t)};
}

QuadMap qaction(const QuadMap& phi, Elem r) {
  size_t n = phi.mod->size();
  std::vector<QZ> t(n);
  for (Elem v = 0; v < n; ++v) t[v] = phi.table[phi.mod->act(r, v)];
  return QuadMap{phi.mod, std::move(t)};
}

BilForm bilaction(const BilForm& b, Elem r, Elem s) {
  size_t n = b.mod->size();
  std::vector<QZ> t(n * n);
  for (Elem v = 0; v < n; ++v)
    for (Elem w = 0; w < n; ++w)
      t[static_cast<size_t>(v) * n + w] =
          b.table[static_cast<size_t>(b.mod->act(r, v)) * n + b.mod->act(s, w)];
  return BilForm{b.mod, std::move(t)};
}

QuadMap quad_add(const QuadMap& a, const QuadMap& b) {
  std::vector<QZ> t(a.table.size());
  for (size_t i = 0; i < t.size(); ++i) t[i] = a.table[i] + b.table[i];
  return QuadMap{a.mod, std::move(t)};
}

BilForm bil_add(const BilForm& a, const BilForm& b) {
  std::vector<QZ> t(a.table.size());
  for (size_t i = 0; i < t.size(); ++i) t[i] = a.table[i] + b.table[i];
  return BilForm{a.mod, std::move(t)};
}

Admissibility admissibility(const BilForm& beta) {
  const auto& mod = *beta.mod;
  const auto& ring = *mod.ring();
  size_t n = mod.size();
  for (Elem v = 1; v < n; ++v) {
    bool zero_row = true;
    for (Elem w = 0; w < n && zero_row; ++w)
      if (!beta.table[static_cast<size_t>(v) * n + w].is_zero()) zero_row = false;
    if (zero_row) fail(Err::Singular, "beta(v,.) vanishes for nonzero v");
  }

  Admissibility adm;
  adm.M.reserve(ring.size());
  for (Elem r = 0; r < ring.size(); ++r) {
    std::vector<QZ> t(n * n);
    for (Elem v = 0; v < n; ++v)
      for (Elem w = 0; w < n; ++w)
        t[static_cast<size_t>(v) * n + w] = beta.table[static_cast<size_t>(v) * n + mod.act(r, w)];
    BilForm br{beta.mod, std::move(t)};
    auto k = br.key();
    if (adm.psi_inv.count(k)) fail(Err::PsiNotInjective, "psi(r) = psi(s) for r != s");
    adm.psi_inv.emplace(std::move(k), r);
    adm.M.push_back(std::move(br));
  }
  for (Elem r = 0; r < ring.size(); ++r) {
    if (!adm.psi_inv.count(tau(adm.M[r]).key()))
      fail(Err::MNotTauClosed, "tau(beta_r) is not in M");
  }
  // solve beta(rv,w) = beta(v, r^J w)
  adm.J.resize(ring.size());
  for (Elem r = 0; r < ring.size(); ++r) {
    std::vector<QZ> t(n * n);
    for (Elem v = 0; v < n; ++v)
      for (Elem w = 0; w < n; ++w)
        t[static_cast<size_t>(v) * n + w] = beta.table[static_cast<size_t>(mod.act(r, v)) * n + w];
    auto it = adm.psi_inv.find(qz_key(t));
    if (it == adm.psi_inv.end()) fail(Err::NoSuchJ, "no r^J with beta(rv,w) = beta(v,r^J w)");
    adm.J[r] = it->second;
  }
  // solve beta(v,w) = beta(w, eps v), i.e. psi(eps) = tau(beta)
  auto it = adm.psi_inv.find(tau(beta).key());
  if (it == adm.psi_inv.end()) fail(Err::NoSuchJ, "no eps with beta(v,w) = beta(w,eps v)");
  adm.eps = it->second;

  if (ring.mul(adm.J[adm.eps], adm.eps) != ring.one())
    fail(Err::AxiomViolation, "eps^J eps != 1");
  for (Elem r = 0; r < ring.size(); ++r)
    for (Elem s = 0; s < ring.size(); ++s)
      if (adm.J[ring.mul(r, s)] != ring.mul(adm.J[s], adm.J[r]))
        fail(Err::AxiomViolation, "J is not an anti-automorphism");
  for (Elem r = 0; r < ring.size(); ++r)
    if (ring.mul(ring.mul(adm.J[adm.eps], adm.J[adm.J[r]]), adm.eps) != r)
      fail(Err::AxiomViolation, "eps^J r^(J^2) eps != r");
  return adm;
}

std::vector<QuadMap> phi_closure(const std::vector<QuadMap>& gens, const FiniteRing& ring,
                                 size_t cap) {
  if (gens.empty()) fail(Err::BadSpec, "phi_closure needs a module context");
  auto mod = gens[0].mod;
  if (mod->size() > (1u << 12)) fail(Err::ClosureCapExceeded, "module too large for Phi tables");
  std::vector<QuadMap> set;
  std::unordered_map<std::string, int> idx;
  auto insert = [&](QuadMap q) -> bool {
    auto k = q.key();
    if (idx.count(k)) return false;
    if (set.size() >= cap) fail(Err::ClosureCapExceeded, "Phi closure exceeds cap");
    idx.emplace(std::move(k), static_cast<int>(set.size()));
    set.push_back(std::move(q));
    return true;
  };
  insert(QuadMap{mod, std::vector<QZ>(mod->size())}); // zero map
  for (const auto& g : gens) insert(g);
  size_t head = 0;
  while (head < set.size()) {
    QuadMap x = set[head++];
    for (Elem r = 0; r < ring.size(); ++r) insert(qaction(x, r));
    for (size_t yi = 0; yi < set.size(); ++yi) insert(quad_add(x, set[yi]));
  }
  return set;
}

void FormRing::finish(std::string name) {
  name_ = std::move(name);
  size_t n = mod_->size();
  for (size_t i = 0; i < phi_.size(); ++i) phi_idx_.emplace(phi_[i].key(), static_cast<int>(i));

  // {{M}} <= Phi
  brace_idx_.resize(ring_->size());
  for (Elem r = 0; r < ring_->size(); ++r) {
    auto it = phi_idx_.find(brace(adm_.M[r]).key());
    if (it == phi_idx_.end()) fail(Err::BraceNotInPhi, "{{beta_r}} not in Phi for r=" + std::to_string(r));
    brace_idx_[r] = it->second;
  }
  // lambda(Phi) <= M
  lambda_psi_inv_.resize(phi_.size());
  for (size_t i = 0; i < phi_.size(); ++i) {
    std::vector<QZ> t(n * n);
    for (Elem v = 0; v < n; ++v)
      for (Elem w = 0; w < n; ++w)
        t[static_cast<size_t>(v) * n + w] =
            phi_[i].table[mod_->add(v, w)] - phi_[i].table[v] - phi_[i].table[w];
    auto it = adm_.psi_inv.find(qz_key(t));
    if (it == adm_.psi_inv.end()) fail(Err::LambdaEscapesM, "lambda(phi) not in M");
    lambda_psi_inv_[i] = it->second;
  }
  tau_hat_.resize(ring_->size());
  for (Elem r = 0; r < ring_->size(); ++r) {
    auto it = adm_.psi_inv.find(tau(adm_.M[r]).key());
    tau_hat_[r] = it->second;
  }

  // conductor: lcm of value denominators, 8, and 4p for each prime p | |V|
  int64_t L = 8;
  for (const auto& q : beta_.table) L = std::lcm(L, q.den);
  for (const auto& p : phi_)
    for (const auto& q : p.table) L = std::lcm(L, q.den);
  size_t nv = mod_->size();
  for (int64_t p = 2; p <= static_cast<int64_t>(nv); ++p) {
    if (nv % p == 0) {
      L = std::lcm(L, 4 * p);
      while (nv % p == 0) nv /= p;
    }
  }
  conductor_ = L;
}

FormRing FormRing::validate(std::shared_ptr<const FiniteRing> ring,
                            std::shared_ptr<const FiniteModule> mod, BilForm beta,
                            std::vector<QuadMap> phi_gens, std::string name, size_t closure_cap) {
  FormRing fr;
  fr.ring_ = std::move(ring);
  fr.mod_ = std::move(mod);
  fr.beta_ = std::move(beta);
  fr.adm_ = admissibility(fr.beta_);
  std::vector<QuadMap> seeds = phi_gens;
  if (seeds.empty()) seeds.push_back(QuadMap{fr.mod_, std::vector<QZ>(fr.mod_->size())});
  fr.phi_ = phi_closure(seeds, *fr.ring_, closure_cap);
  std::unordered_map<std::string, int> tmp;
  for (size_t i = 0; i < fr.phi_.size(); ++i) tmp.emplace(fr.phi_[i].key(), static_cast<int>(i));
  for (const auto& g : phi_gens) fr.phi_gen_idx_.push_back(tmp.at(g.key()));
  fr.finish(std::move(name));
  return fr;
}

FormRing FormRing::validate_with_phi(std::shared_ptr<const FiniteRing> ring,
                                     std::shared_ptr<const FiniteModule> mod, BilForm beta,
                                     std::vector<QuadMap> phi, std::string name) {
  FormRing fr;
  fr.ring_ = std::move(ring);
  fr.mod_ = std::move(mod);
  fr.beta_ = std::move(beta);
  fr.adm_ = admissibility(fr.beta_);
  fr.phi_ = std::move(phi);
  fr.finish(std::move(name));
  return fr;
}

int FormRing::phi_index(const QuadMap& q) const {
  auto it = phi_idx_.find(q.key());
  return it == phi_idx_.end() ? -1 : it->second;
}

Elem FormRing::psi_inv(const BilForm& b) const {
  auto it = adm_.psi_inv.find(b.key());
  if (it == adm_.psi_inv.end()) fail(Err::LambdaEscapesM, "form not in M");
  return it->second;
}

bool FormRing::in_M(const BilForm& b) const { return adm_.psi_inv.count(b.key()) > 0; }

size_t FormRing::ker_lambda_size() const {
  size_t c = 0;
  for (size_t i = 0; i < phi_.size(); ++i)
    if (lambda_psi_inv_[i] == ring_->zero()) ++c;
  return c;
}

std::vector<SymIdem> symmetric_idempotents(const FormRing& fr, size_t cap) {
  const auto& R = *fr.ring();
  auto idem = R.idempotents(cap);
  std::vector<SymIdem> out;
  for (Elem iota : idem.elems) {
    if (iota == R.one()) {
      out.push_back({iota, R.one(), R.one()});
      continue;
    }
    Elem iotaJ = fr.J(iota);
    std::vector<Elem> uset, vset;
    {
      std::vector<bool> seen_u(R.size(), false), seen_v(R.size(), false);
      for (Elem r = 0; r < R.size(); ++r) {
        Elem u = R.mul(R.mul(iota, r), iotaJ);
        Elem v = R.mul(R.mul(iotaJ, r), iota);
        if (!seen_u[u]) { seen_u[u] = true; uset.push_back(u); }
        if (!seen_v[v]) { seen_v[v] = true; vset.push_back(v); }
      }
      std::sort(uset.begin(), uset.end());
      std::sort(vset.begin(), vset.end());
    }
    bool found = false;
    for (Elem u : uset) {
      for (Elem v : vset) {
        if (R.mul(u, v) == iota && R.mul(v, u) == iotaJ) {
          out.push_back({iota, u, v});
          found = true;
          break;
        }
      }
      if (found) break;
    }
  }
  return out;
}

FormRing matrix_lift(const FormRing& fr, int m, size_t cap) {
  if (m < 1) fail(Err::BadSpec, "matrix_lift requires m >= 1");
  auto matring = FiniteRing::mat_ring(m, fr.ring());
  auto vm = FiniteModule::power(fr.module(), m, matring);
  size_t nv = fr.module()->size();
  size_t nvm = vm->size();
  if (matring->size() * nvm * nvm > cap)
    fail(Err::CapExceeded, "matrix lift exceeds table cap");

  const auto& beta = fr.beta();
  std::vector<QZ> bt(nvm * nvm);
  for (Elem v = 0; v < nvm; ++v)
    for (Elem w = 0; w < nvm; ++w) {
      QZ s;
      for (int c = 0; c < m; ++c)
        s += beta.table[static_cast<size_t>(vm->component(v, c)) * nv + vm->component(w, c)];
      bt[static_cast<size_t>(v) * nvm + w] = s;
    }
  BilForm beta_m{vm, std::move(bt)};

  // Phi_m: diagonal tuple in Phi^m, strictly-upper entries in M
  const auto& Phi = fr.phi();
  size_t np = Phi.size();
  size_t nm = fr.ring()->size();
  int pairs = m * (m - 1) / 2;
  std::vector<QuadMap> phi_m;
  std::unordered_map<std::string, bool> seen;
  std::vector<size_t> diag(m, 0);
  std::vector<size_t> off(pairs, 0);
  double total = 1;
  for (int i = 0; i < m; ++i) total *= static_cast<double>(np);
  for (int i = 0; i < pairs; ++i) total *= static_cast<double>(nm);
  if (total > static_cast<double>(cap)) fail(Err::CapExceeded, "Phi_m too large");
  while (true) {
    std::vector<QZ> t(nvm);
    for (Elem v = 0; v < nvm; ++v) {
      QZ s;
      for (int i = 0; i < m; ++i) s += Phi[diag[i]].table[vm->component(v, i)];
      int pi = 0;
      for (int i = 0; i < m; ++i)
        for (int j = i + 1; j < m; ++j, ++pi) {
          const auto& mij = fr.M(static_cast<Elem>(off[pi]));
          s += mij.table[static_cast<size_t>(vm->component(v, i)) * nv + vm->component(v, j)];
        }
      t[v] = s;
    }
    QuadMap q{vm, std::move(t)};
    auto k = q.key();
    if (!seen.count(k)) {
      seen.emplace(std::move(k), true);
      phi_m.push_back(std::move(q));
    }
    // odometer over (diag, off)
    int i = m - 1;
    while (i >= 0 && ++diag[i] == np) diag[i--] = 0;
    if (i < 0) {
      int j = pairs - 1;
      while (j >= 0 && ++off[j] == nm) off[j--] = 0;
      if (j < 0) break;
      std::fill(diag.begin(), diag.end(), 0);
    }
  }

  FormRing lifted = FormRing::validate_with_phi(matring, vm, std::move(beta_m), std::move(phi_m),
                                                "Mat" + std::to_string(m) + "(" + fr.name() + ")");

  // cross-check: the direct construction is closed under the qmodule action
  if (m <= 2 && nvm <= 16 && matring->size() <= 4096) {
    for (Elem a = 0; a < matring->size(); ++a)
      for (const auto& q : lifted.phi())
        if (lifted.phi_index(qaction(q, a)) < 0)
          fail(Err::AxiomViolation, "Phi_m not closed under [A]");
    for (const auto& q1 : lifted.phi())
      for (const auto& q2 : lifted.phi())
        if (lifted.phi_index(quad_add(q1, q2)) < 0)
          fail(Err::AxiomViolation, "Phi_m not additively closed");
  }
  return lifted;
}

} // namespace cw
