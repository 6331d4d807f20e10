#include "cw/finring.hpp"

#include <algorithm>
#include <random>

namespace cw {

namespace {

// splitmix64, used for reproducible sampling in validation
uint64_t next_rand(uint64_t& s) {
  s += 0x9e3779b97f4a7c15ULL;
  uint64_t z = s;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

// ---- dense F_p polynomial helpers (coefficients ascending) ----

std::vector<int64_t> poly_mul_mod_p(const std::vector<int64_t>& a, const std::vector<int64_t>& b,
                                    int64_t p) {
  std::vector<int64_t> c(a.size() + b.size() - 1, 0);
  for (size_t i = 0; i < a.size(); ++i)
    for (size_t j = 0; j < b.size(); ++j) c[i + j] = (c[i + j] + a[i] * b[j]) % p;
  while (c.size() > 1 && c.back() == 0) c.pop_back();
  return c;
}

// remainder of a mod m (m monic), coefficients in F_p
std::vector<int64_t> poly_rem_mod_p(std::vector<int64_t> a, const std::vector<int64_t>& m,
                                    int64_t p) {
  int dm = static_cast<int>(m.size()) - 1;
  while (static_cast<int>(a.size()) - 1 >= dm) {
    int da = static_cast<int>(a.size()) - 1;
    int64_t c = a[da] % p;
    if (c != 0) {
      for (int i = 0; i <= dm; ++i) {
        a[da - dm + i] = ((a[da - dm + i] - c * m[i]) % p + p) % p;
      }
    }
    a.pop_back();
    while (a.size() > 1 && a.back() == 0) a.pop_back();
    if (a.empty()) { a.push_back(0); break; }
  }
  return a;
}

bool poly_is_zero(const std::vector<int64_t>& a) {
  for (auto c : a)
    if (c != 0) return false;
  return true;
}

// trial division by all monic polynomials of degree 1..deg/2
bool poly_irreducible(const std::vector<int64_t>& m, int64_t p) {
  int f = static_cast<int>(m.size()) - 1;
  for (int d = 1; 2 * d <= f; ++d) {
    int64_t count = 1;
    for (int i = 0; i < d; ++i) count *= p;
    for (int64_t code = 0; code < count; ++code) {
      std::vector<int64_t> div(d + 1, 0);
      int64_t c = code;
      for (int i = 0; i < d; ++i) { div[i] = c % p; c /= p; }
      div[d] = 1;
      if (poly_is_zero(poly_rem_mod_p(m, div, p))) return false;
    }
  }
  return true;
}

std::vector<int64_t> default_gf_poly(int64_t p, int64_t f) {
  struct Entry { int64_t p, f; std::vector<int64_t> poly; };
  static const std::vector<Entry> table = {
      {2, 2, {1, 1, 1}},          // x^2+x+1
      {2, 3, {1, 1, 0, 1}},       // x^3+x+1
      {2, 4, {1, 1, 0, 0, 1}},    // x^4+x+1
      {2, 5, {1, 0, 1, 0, 0, 1}}, // x^5+x^2+1
      {2, 6, {1, 1, 0, 0, 0, 0, 1}},
      {3, 2, {1, 0, 1}},          // x^2+1
      {3, 3, {1, 2, 0, 1}},       // x^3+2x+1
      {5, 2, {1, 1, 1}},
      {7, 2, {1, 0, 1}},
  };
  for (const auto& e : table)
    if (e.p == p && e.f == f) return e.poly;
  fail(Err::BadSpec, "no built-in irreducible polynomial for GF(" + std::to_string(p) + "," +
                         std::to_string(f) + "); supply one");
}

bool is_prime(int64_t n) {
  if (n < 2) return false;
  for (int64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

} // namespace

RingSpec RingSpec::Zn(int64_t n) {
  RingSpec s;
  s.kind = Kind::Zn;
  s.n = n;
  return s;
}
RingSpec RingSpec::GF(int64_t p, int64_t f, std::vector<int64_t> poly) {
  RingSpec s;
  s.kind = Kind::GF;
  s.p = p;
  s.f = f;
  s.poly = std::move(poly);
  return s;
}
RingSpec RingSpec::MatRing(int m, RingSpec base) {
  RingSpec s;
  s.kind = Kind::MatRing;
  s.m = m;
  s.sub.push_back(std::move(base));
  return s;
}
RingSpec RingSpec::QuaternionicU(int64_t q) {
  RingSpec s;
  s.kind = Kind::QuaternionicU;
  s.q = q;
  return s;
}
RingSpec RingSpec::DirectProduct(std::vector<RingSpec> factors) {
  RingSpec s;
  s.kind = Kind::DirectProduct;
  s.sub = std::move(factors);
  return s;
}

void FiniteRing::init(std::vector<int64_t> orders, std::vector<Elem> gen_prod, Elem one,
                      std::string name) {
  orders_ = std::move(orders);
  gen_prod_ = std::move(gen_prod);
  one_ = one;
  name_ = std::move(name);
  size_t k = orders_.size();
  strides_.assign(k, 1);
  for (int i = static_cast<int>(k) - 2; i >= 0; --i) strides_[i] = strides_[i + 1] * orders_[i + 1];
  size_ = 1;
  for (auto d : orders_) {
    if (d < 2) fail(Err::BadSpec, "additive generator order must be >= 2");
    size_ *= static_cast<size_t>(d);
    if (size_ > (1u << 24)) fail(Err::CapExceeded, "ring too large");
  }
  gens_.resize(k);
  for (size_t i = 0; i < k; ++i) gens_[i] = static_cast<Elem>(strides_[i]);

  if (size_ <= kTableCap) {
    neg_tab_.resize(size_);
    add_tab_.resize(size_ * size_);
    for (Elem a = 0; a < size_; ++a) {
      auto ra = residues(a);
      for (size_t i = 0; i < k; ++i) ra[i] = (orders_[i] - ra[i]) % orders_[i];
      neg_tab_[a] = from_residues(ra);
    }
    for (Elem a = 0; a < size_; ++a) {
      auto ra = residues(a);
      for (Elem b = 0; b < size_; ++b) {
        auto rb = residues(b);
        std::vector<int64_t> rc(k);
        for (size_t i = 0; i < k; ++i) rc[i] = (ra[i] + rb[i]) % orders_[i];
        add_tab_[a * size_ + b] = from_residues(rc);
      }
    }
    mul_tab_.resize(size_ * size_);
    for (Elem a = 0; a < size_; ++a)
      for (Elem b = 0; b < size_; ++b) mul_tab_[a * size_ + b] = mul_slow(a, b);
    inv_tab_.assign(size_, kNoInv);
    for (Elem a = 0; a < size_; ++a) {
      for (Elem b = 0; b < size_; ++b) {
        if (mul_tab_[a * size_ + b] == one_ && mul_tab_[b * size_ + a] == one_) {
          inv_tab_[a] = b;
          break;
        }
      }
    }
  }
  validate();
}

std::vector<int64_t> FiniteRing::residues(Elem a) const {
  size_t k = orders_.size();
  std::vector<int64_t> r(k);
  int64_t v = a;
  for (size_t i = 0; i < k; ++i) {
    r[i] = v / strides_[i];
    v %= strides_[i];
  }
  return r;
}

Elem FiniteRing::from_residues(std::span<const int64_t> r) const {
  int64_t v = 0;
  for (size_t i = 0; i < orders_.size(); ++i) v += (r[i] % orders_[i]) * strides_[i];
  return static_cast<Elem>(v);
}

Elem FiniteRing::add(Elem a, Elem b) const {
  if (!add_tab_.empty()) return add_tab_[a * size_ + b];
  auto ra = residues(a), rb = residues(b);
  for (size_t i = 0; i < orders_.size(); ++i) ra[i] = (ra[i] + rb[i]) % orders_[i];
  return from_residues(ra);
}

Elem FiniteRing::neg(Elem a) const {
  if (!neg_tab_.empty()) return neg_tab_[a];
  auto r = residues(a);
  for (size_t i = 0; i < orders_.size(); ++i) r[i] = (orders_[i] - r[i]) % orders_[i];
  return from_residues(r);
}

Elem FiniteRing::zmul(int64_t n, Elem a) const {
  auto r = residues(a);
  for (size_t i = 0; i < orders_.size(); ++i) {
    int64_t m = (n % orders_[i]) * r[i] % orders_[i];
    r[i] = (m + orders_[i]) % orders_[i];
  }
  return from_residues(r);
}

Elem FiniteRing::mul_slow(Elem a, Elem b) const {
  auto ra = residues(a), rb = residues(b);
  size_t k = orders_.size();
  Elem acc = 0;
  for (size_t i = 0; i < k; ++i) {
    if (ra[i] == 0) continue;
    for (size_t j = 0; j < k; ++j) {
      if (rb[j] == 0) continue;
      acc = add(acc, zmul(ra[i] * rb[j], gen_prod_[i * k + j]));
    }
  }
  return acc;
}

Elem FiniteRing::mul(Elem a, Elem b) const {
  if (!mul_tab_.empty()) return mul_tab_[a * size_ + b];
  return mul_slow(a, b);
}

Elem FiniteRing::pow(Elem a, uint64_t k) const {
  Elem r = one_;
  Elem base = a;
  while (k > 0) {
    if (k & 1) r = mul(r, base);
    base = mul(base, base);
    k >>= 1;
  }
  return r;
}

void FiniteRing::validate() const {
  size_t k = orders_.size();
  for (size_t i = 0; i < k; ++i)
    for (size_t j = 0; j < k; ++j)
      for (size_t l = 0; l < k; ++l)
        if (mul(mul(gens_[i], gens_[j]), gens_[l]) != mul(gens_[i], mul(gens_[j], gens_[l])))
          fail(Err::AxiomViolation, "generator products not associative in " + name_);
  for (Elem a = 0; a < size_; ++a)
    if (mul(one_, a) != a || mul(a, one_) != a)
      fail(Err::AxiomViolation, "1 is not a two-sided identity in " + name_);
  if (size_ <= 256) {
    for (Elem a = 0; a < size_; ++a)
      for (Elem b = 0; b < size_; ++b)
        for (Elem c = 0; c < size_; ++c)
          if (mul(mul(a, b), c) != mul(a, mul(b, c)))
            fail(Err::AxiomViolation, "multiplication not associative in " + name_);
  } else {
    uint64_t s = 0x5eedULL;
    for (int t = 0; t < 4000; ++t) {
      Elem a = static_cast<Elem>(next_rand(s) % size_);
      Elem b = static_cast<Elem>(next_rand(s) % size_);
      Elem c = static_cast<Elem>(next_rand(s) % size_);
      if (mul(mul(a, b), c) != mul(a, mul(b, c)))
        fail(Err::AxiomViolation, "multiplication not associative in " + name_);
    }
  }
}

std::vector<Elem> FiniteRing::units(size_t cap) const {
  if (size_ > cap) fail(Err::CapExceeded, "units: ring larger than cap");
  std::vector<Elem> us;
  for (Elem a = 0; a < size_; ++a)
    if (inverse(a)) us.push_back(a);
  return us;
}

std::optional<Elem> FiniteRing::inverse(Elem a) const {
  if (!inv_tab_.empty()) {
    Elem v = inv_tab_[a];
    if (v == kNoInv) return std::nullopt;
    return v;
  }
  for (Elem b = 0; b < size_; ++b)
    if (mul(a, b) == one_ && mul(b, a) == one_) return b;
  return std::nullopt;
}

IdempotentSet FiniteRing::idempotents(size_t cap) const {
  IdempotentSet out;
  if (size_ <= cap) {
    for (Elem a = 0; a < size_; ++a)
      if (mul(a, a) == a) out.elems.push_back(a);
    return out;
  }
  if (mat_base_) {
    // structured subset: diagonal matrices with idempotent entries
    auto base_idem = mat_base_->idempotents(cap);
    out.partial = true;
    int m = mat_dim_;
    std::vector<size_t> idx(m, 0);
    size_t nb = base_idem.elems.size();
    std::vector<Elem> entries(m * m, 0);
    while (true) {
      std::fill(entries.begin(), entries.end(), mat_base_->zero());
      for (int i = 0; i < m; ++i) entries[i * m + i] = base_idem.elems[idx[i]];
      out.elems.push_back(mat_from_entries(entries));
      int i = m - 1;
      while (i >= 0 && ++idx[i] == nb) idx[i--] = 0;
      if (i < 0) break;
    }
    std::sort(out.elems.begin(), out.elems.end());
    out.elems.erase(std::unique(out.elems.begin(), out.elems.end()), out.elems.end());
    return out;
  }
  fail(Err::CapExceeded, "idempotents: ring larger than cap");
}

Elem FiniteRing::mat_entry(Elem a, int i, int j) const {
  if (!mat_base_) fail(Err::BadSpec, "mat_entry on non-matrix ring");
  int kb = mat_base_->num_gens();
  auto r = residues(a);
  std::vector<int64_t> sub(r.begin() + (i * mat_dim_ + j) * kb,
                           r.begin() + (i * mat_dim_ + j + 1) * kb);
  return mat_base_->from_residues(sub);
}

Elem FiniteRing::mat_from_entries(std::span<const Elem> entries) const {
  if (!mat_base_) fail(Err::BadSpec, "mat_from_entries on non-matrix ring");
  int kb = mat_base_->num_gens();
  std::vector<int64_t> r(orders_.size());
  for (int e = 0; e < mat_dim_ * mat_dim_; ++e) {
    auto sub = mat_base_->residues(entries[e]);
    for (int t = 0; t < kb; ++t) r[e * kb + t] = sub[t];
  }
  return from_residues(r);
}

std::shared_ptr<const FiniteRing> FiniteRing::construct(const RingSpec& spec) {
  switch (spec.kind) {
    case RingSpec::Kind::Zn: {
      if (spec.n < 2) fail(Err::BadSpec, "Zn requires n >= 2");
      auto r = std::shared_ptr<FiniteRing>(new FiniteRing());
      r->spec_ = spec;
      r->init({spec.n}, {Elem(1)}, 1, "Z" + std::to_string(spec.n));
      return r;
    }
    case RingSpec::Kind::GF: {
      int64_t p = spec.p, f = spec.f;
      if (!is_prime(p) || f < 1) fail(Err::BadSpec, "GF requires prime p and f >= 1");
      if (f == 1) {
        auto r = std::shared_ptr<FiniteRing>(new FiniteRing());
        r->spec_ = spec;
        r->init({p}, {1}, 1, "F" + std::to_string(p));
        return r;
      }
      std::vector<int64_t> poly = spec.poly.empty() ? default_gf_poly(p, f) : spec.poly;
      if (static_cast<int64_t>(poly.size()) != f + 1 || poly.back() % p != 1)
        fail(Err::BadSpec, "GF polynomial must be monic of degree f");
      for (auto& c : poly) c = ((c % p) + p) % p;
      if (!poly_irreducible(poly, p)) fail(Err::NotIrreducible, "GF polynomial is reducible");

      // generator i represents x^(f-1-i); index order equals the natural
      // base-p integer order of polynomial values
      int k = static_cast<int>(f);
      std::vector<std::vector<int64_t>> pw(2 * k - 1);
      for (int e = 0; e < 2 * k - 1; ++e) {
        std::vector<int64_t> xe(e + 1, 0);
        xe[e] = 1;
        auto red = poly_rem_mod_p(xe, poly, p);
        red.resize(k, 0);
        pw[e] = red;
      }
      auto coeffs_to_res = [&](const std::vector<int64_t>& c) {
        std::vector<int64_t> r(k);
        for (int i = 0; i < k; ++i) r[i] = c[k - 1 - i];
        return r;
      };
      std::vector<Elem> gen_prod(k * k);
      auto ring = std::shared_ptr<FiniteRing>(new FiniteRing());
      ring->spec_ = spec;
      ring->spec_.poly = poly;
      // need strides before from_residues: compute manually
      std::vector<int64_t> orders(k, p);
      std::vector<int64_t> strides(k, 1);
      for (int i = k - 2; i >= 0; --i) strides[i] = strides[i + 1] * p;
      auto encode = [&](const std::vector<int64_t>& r) {
        int64_t v = 0;
        for (int i = 0; i < k; ++i) v += r[i] * strides[i];
        return static_cast<Elem>(v);
      };
      for (int i = 0; i < k; ++i)
        for (int j = 0; j < k; ++j)
          gen_prod[i * k + j] = encode(coeffs_to_res(pw[(k - 1 - i) + (k - 1 - j)]));
      Elem one = encode(coeffs_to_res(pw[0]));
      ring->init(orders, gen_prod, one,
                 "F" + std::to_string([&] { int64_t s = 1; for (int i = 0; i < f; ++i) s *= p; return s; }()));
      return ring;
    }
    case RingSpec::Kind::MatRing: {
      if (spec.sub.size() != 1) fail(Err::BadSpec, "MatRing requires a base ring");
      return mat_ring(spec.m, construct(spec.sub[0]));
    }
    case RingSpec::Kind::QuaternionicU: {
      int64_t q = spec.q;
      int64_t p = 0, e = 0;
      for (int64_t d = 2; d <= q; ++d) {
        if (q % d == 0) {
          p = d;
          int64_t t = q;
          while (t % d == 0) { t /= d; ++e; }
          if (t != 1) fail(Err::BadSpec, "QuaternionicU requires a prime power q");
          break;
        }
      }
      if (p == 0) fail(Err::BadSpec, "QuaternionicU requires q >= 2");
      auto field = construct(RingSpec::GF(p, 2 * e));
      int kf = field->num_gens();
      int k = 2 * kf;
      std::vector<int64_t> orders(k, p);
      std::vector<int64_t> strides(k, 1);
      for (int i = k - 2; i >= 0; --i) strides[i] = strides[i + 1] * orders[i + 1];
      // element = a + b u encoded with the a-part most significant
      auto embed = [&](Elem fe, bool upart) {
        auto rf = field->residues(fe);
        std::vector<int64_t> r(k, 0);
        for (int t = 0; t < kf; ++t) r[(upart ? kf : 0) + t] = rf[t];
        int64_t v = 0;
        for (int i = 0; i < k; ++i) v += r[i] * strides[i];
        return static_cast<Elem>(v);
      };
      std::vector<Elem> gen_prod(k * k, 0);
      for (int i = 0; i < k; ++i) {
        for (int j = 0; j < k; ++j) {
          bool ui = i >= kf, uj = j >= kf;
          Elem gi = field->gen(i % kf), gj = field->gen(j % kf);
          if (ui && uj) { gen_prod[i * k + j] = 0; continue; } // u^2 = 0
          if (!ui && !uj) gen_prod[i * k + j] = embed(field->mul(gi, gj), false);
          else if (!ui) gen_prod[i * k + j] = embed(field->mul(gi, gj), true); // a * (b u)
          else gen_prod[i * k + j] = embed(field->mul(gi, field->pow(gj, q)), true); // (a u) b = a b^q u
        }
      }
      auto ring = std::shared_ptr<FiniteRing>(new FiniteRing());
      ring->spec_ = spec;
      ring->init(orders, gen_prod, embed(field->one(), false),
                 "F" + std::to_string(q * q) + "+F" + std::to_string(q * q) + "u");
      // check the defining relation u a = a^q u on the whole field
      Elem u = embed(field->one(), true);
      for (Elem a = 0; a < field->size(); ++a) {
        Elem lhs = ring->mul(u, embed(a, false));
        Elem rhs = ring->mul(embed(field->pow(a, q), false), u);
        if (lhs != rhs) fail(Err::AxiomViolation, "u*a != a^q*u in " + ring->name());
      }
      return ring;
    }
    case RingSpec::Kind::DirectProduct: {
      if (spec.sub.empty()) fail(Err::BadSpec, "DirectProduct requires factors");
      std::vector<std::shared_ptr<const FiniteRing>> factors;
      for (const auto& s : spec.sub) factors.push_back(construct(s));
      std::vector<int64_t> orders;
      std::string name;
      for (const auto& fr : factors) {
        orders.insert(orders.end(), fr->gen_orders().begin(), fr->gen_orders().end());
        if (!name.empty()) name += "x";
        name += fr->name();
      }
      int k = static_cast<int>(orders.size());
      std::vector<int64_t> strides(k, 1);
      for (int i = k - 2; i >= 0; --i) strides[i] = strides[i + 1] * orders[i + 1];
      std::vector<Elem> gen_prod(k * k, 0);
      std::vector<int64_t> res(k, 0);
      int off = 0;
      std::vector<int> offsets;
      for (const auto& fr : factors) { offsets.push_back(off); off += fr->num_gens(); }
      auto encode = [&](const std::vector<int64_t>& r) {
        int64_t v = 0;
        for (int i = 0; i < k; ++i) v += r[i] * strides[i];
        return static_cast<Elem>(v);
      };
      for (size_t fi = 0; fi < factors.size(); ++fi) {
        const auto& fr = factors[fi];
        int kb = fr->num_gens();
        for (int i = 0; i < kb; ++i)
          for (int j = 0; j < kb; ++j) {
            auto rb = fr->residues(fr->mul(fr->gen(i), fr->gen(j)));
            std::fill(res.begin(), res.end(), 0);
            for (int t = 0; t < kb; ++t) res[offsets[fi] + t] = rb[t];
            gen_prod[(offsets[fi] + i) * k + (offsets[fi] + j)] = encode(res);
          }
      }
      std::fill(res.begin(), res.end(), 0);
      for (size_t fi = 0; fi < factors.size(); ++fi) {
        auto rb = factors[fi]->residues(factors[fi]->one());
        for (int t = 0; t < factors[fi]->num_gens(); ++t) res[offsets[fi] + t] = rb[t];
      }
      auto ring = std::shared_ptr<FiniteRing>(new FiniteRing());
      ring->spec_ = spec;
      ring->init(orders, gen_prod, encode(res), name);
      return ring;
    }
  }
  fail(Err::BadSpec, "unknown ring kind");
}

std::shared_ptr<const FiniteRing> FiniteRing::mat_ring(int m,
                                                       std::shared_ptr<const FiniteRing> base) {
  if (m < 1) fail(Err::BadSpec, "MatRing requires m >= 1");
  int kb = base->num_gens();
  int k = m * m * kb;
  std::vector<int64_t> orders(k);
  for (int e = 0; e < m * m; ++e)
    for (int t = 0; t < kb; ++t) orders[e * kb + t] = base->gen_orders()[t];
  std::vector<int64_t> strides(k, 1);
  for (int i = k - 2; i >= 0; --i) strides[i] = strides[i + 1] * orders[i + 1];
  auto encode_entry = [&](int a, int d, Elem be) {
    // matrix with single entry be at (a,d)
    std::vector<int64_t> r(k, 0);
    auto rb = base->residues(be);
    for (int t = 0; t < kb; ++t) r[(a * m + d) * kb + t] = rb[t];
    int64_t v = 0;
    for (int i = 0; i < k; ++i) v += r[i] * strides[i];
    return static_cast<Elem>(v);
  };
  std::vector<Elem> gen_prod(k * k, 0);
  for (int a = 0; a < m; ++a)
    for (int b = 0; b < m; ++b)
      for (int t = 0; t < kb; ++t) {
        int gi = (a * m + b) * kb + t;
        for (int c = 0; c < m; ++c)
          for (int d = 0; d < m; ++d)
            for (int s = 0; s < kb; ++s) {
              int gj = (c * m + d) * kb + s;
              if (b != c) { gen_prod[gi * k + gj] = 0; continue; }
              gen_prod[gi * k + gj] = encode_entry(a, d, base->mul(base->gen(t), base->gen(s)));
            }
      }
  // identity: sum over a of E_aa * 1
  std::vector<int64_t> rone(k, 0);
  auto r1 = base->residues(base->one());
  for (int a = 0; a < m; ++a)
    for (int t = 0; t < kb; ++t) rone[(a * m + a) * kb + t] = r1[t];
  auto ring = std::shared_ptr<FiniteRing>(new FiniteRing());
  ring->spec_ = RingSpec::MatRing(m, base->spec());
  ring->mat_base_ = base;
  ring->mat_dim_ = m;
  int64_t one_v = 0;
  for (int i = 0; i < k; ++i) one_v += rone[i] * strides[i];
  ring->init(orders, gen_prod, static_cast<Elem>(one_v),
             "Mat" + std::to_string(m) + "(" + base->name() + ")");
  return ring;
}

// ---------------------------------------------------------------------------
// FiniteModule

void FiniteModule::init(std::vector<int64_t> orders, std::vector<Elem> act_gen, std::string name) {
  orders_ = std::move(orders);
  act_gen_ = std::move(act_gen);
  name_ = std::move(name);
  size_t k = orders_.size();
  strides_.assign(k, 1);
  for (int i = static_cast<int>(k) - 2; i >= 0; --i) strides_[i] = strides_[i + 1] * orders_[i + 1];
  size_ = 1;
  for (auto d : orders_) {
    size_ *= static_cast<size_t>(d);
    if (size_ > (1u << 24)) fail(Err::CapExceeded, "module too large");
  }
  if (size_ <= kTableCap) {
    neg_tab_.resize(size_);
    add_tab_.resize(size_ * size_);
    for (Elem a = 0; a < size_; ++a) {
      auto ra = residues(a);
      for (size_t i = 0; i < k; ++i) ra[i] = (orders_[i] - ra[i]) % orders_[i];
      neg_tab_[a] = from_residues(ra);
    }
    for (Elem a = 0; a < size_; ++a) {
      auto ra = residues(a);
      for (Elem b = 0; b < size_; ++b) {
        auto rb = residues(b);
        std::vector<int64_t> rc(k);
        for (size_t i = 0; i < k; ++i) rc[i] = (ra[i] + rb[i]) % orders_[i];
        add_tab_[a * size_ + b] = from_residues(rc);
      }
    }
  }
  if (ring_->size() * size_ <= kActTableCap) {
    act_tab_.resize(ring_->size() * size_);
    for (Elem r = 0; r < ring_->size(); ++r)
      for (Elem v = 0; v < size_; ++v) act_tab_[r * size_ + v] = act_slow(r, v);
  }
  validate();
}

std::vector<int64_t> FiniteModule::residues(Elem a) const {
  size_t k = orders_.size();
  std::vector<int64_t> r(k);
  int64_t v = a;
  for (size_t i = 0; i < k; ++i) {
    r[i] = v / strides_[i];
    v %= strides_[i];
  }
  return r;
}

Elem FiniteModule::from_residues(std::span<const int64_t> r) const {
  int64_t v = 0;
  for (size_t i = 0; i < orders_.size(); ++i) v += (r[i] % orders_[i]) * strides_[i];
  return static_cast<Elem>(v);
}

Elem FiniteModule::add(Elem a, Elem b) const {
  if (!add_tab_.empty()) return add_tab_[a * size_ + b];
  auto ra = residues(a), rb = residues(b);
  for (size_t i = 0; i < orders_.size(); ++i) ra[i] = (ra[i] + rb[i]) % orders_[i];
  return from_residues(ra);
}

Elem FiniteModule::neg(Elem a) const {
  if (!neg_tab_.empty()) return neg_tab_[a];
  auto r = residues(a);
  for (size_t i = 0; i < orders_.size(); ++i) r[i] = (orders_[i] - r[i]) % orders_[i];
  return from_residues(r);
}

Elem FiniteModule::zmul(int64_t n, Elem a) const {
  auto r = residues(a);
  for (size_t i = 0; i < orders_.size(); ++i) {
    int64_t m = (n % orders_[i]) * r[i] % orders_[i];
    r[i] = (m + orders_[i]) % orders_[i];
  }
  return from_residues(r);
}

Elem FiniteModule::act_slow(Elem r, Elem v) const {
  auto rr = ring_->residues(r);
  auto rv = residues(v);
  size_t kr = rr.size(), kv = rv.size();
  Elem acc = 0;
  for (size_t i = 0; i < kr; ++i) {
    if (rr[i] == 0) continue;
    for (size_t j = 0; j < kv; ++j) {
      if (rv[j] == 0) continue;
      acc = add(acc, zmul(rr[i] * rv[j], act_gen_[i * kv + j]));
    }
  }
  return acc;
}

Elem FiniteModule::act(Elem r, Elem v) const {
  if (!act_tab_.empty()) return act_tab_[r * size_ + v];
  return act_slow(r, v);
}

void FiniteModule::validate() const {
  for (Elem v = 0; v < size_; ++v)
    if (act(ring_->one(), v) != v) fail(Err::AxiomViolation, "1*v != v in module " + name_);
  size_t r2v = ring_->size() * ring_->size() * size_;
  if (r2v <= kActTableCap) {
    for (Elem r = 0; r < ring_->size(); ++r)
      for (Elem s = 0; s < ring_->size(); ++s) {
        Elem rs = ring_->mul(r, s);
        for (Elem v = 0; v < size_; ++v)
          if (act(rs, v) != act(r, act(s, v)))
            fail(Err::AxiomViolation, "(rs)v != r(sv) in module " + name_);
      }
  } else {
    size_t kr = ring_->num_gens(), kv = orders_.size();
    for (size_t i = 0; i < kr; ++i)
      for (size_t j = 0; j < kr; ++j)
        for (size_t l = 0; l < kv; ++l) {
          Elem gi = ring_->gen(static_cast<int>(i)), gj = ring_->gen(static_cast<int>(j));
          Elem hl = static_cast<Elem>(strides_[l]);
          if (act(ring_->mul(gi, gj), hl) != act(gi, act(gj, hl)))
            fail(Err::AxiomViolation, "(rs)v != r(sv) on generators in module " + name_);
        }
    uint64_t s = 0xfeedULL;
    for (int t = 0; t < 4000; ++t) {
      Elem r = static_cast<Elem>(next_rand(s) % ring_->size());
      Elem q = static_cast<Elem>(next_rand(s) % ring_->size());
      Elem v = static_cast<Elem>(next_rand(s) % size_);
      if (act(ring_->mul(r, q), v) != act(r, act(q, v)))
        fail(Err::AxiomViolation, "(rs)v != r(sv) in module " + name_);
    }
  }
}

std::shared_ptr<const FiniteModule> FiniteModule::regular(std::shared_ptr<const FiniteRing> ring) {
  auto mod = std::shared_ptr<FiniteModule>(new FiniteModule());
  mod->ring_ = ring;
  mod->regular_ = true;
  int k = ring->num_gens();
  std::vector<Elem> act_gen(k * k);
  for (int i = 0; i < k; ++i)
    for (int j = 0; j < k; ++j) act_gen[i * k + j] = ring->mul(ring->gen(i), ring->gen(j));
  mod->init(ring->gen_orders(), act_gen, ring->name() + " (regular)");
  return mod;
}

std::shared_ptr<const FiniteModule> FiniteModule::power(std::shared_ptr<const FiniteModule> base,
                                                        int m,
                                                        std::shared_ptr<const FiniteRing> matring) {
  auto mod = std::shared_ptr<FiniteModule>(new FiniteModule());
  mod->ring_ = matring;
  mod->power_base_ = base;
  mod->power_m_ = m;
  int kv = base->num_gens();
  int kb = matring->mat_base()->num_gens();
  int kr = matring->num_gens(); // m*m*kb
  int kw = m * kv;
  std::vector<int64_t> orders(kw);
  for (int c = 0; c < m; ++c)
    for (int j = 0; j < kv; ++j) orders[c * kv + j] = base->gen_orders()[j];
  std::vector<int64_t> strides(kw, 1);
  for (int i = kw - 2; i >= 0; --i) strides[i] = strides[i + 1] * orders[i + 1];
  std::vector<Elem> act_gen(kr * kw, 0);
  for (int a = 0; a < m; ++a)
    for (int b = 0; b < m; ++b)
      for (int t = 0; t < kb; ++t) {
        int gi = (a * m + b) * kb + t;
        for (int c = 0; c < m; ++c)
          for (int j = 0; j < kv; ++j) {
            if (b != c) continue;
            Elem hj = static_cast<Elem>(base->strides_[j]);
            Elem w = base->act(matring->mat_base()->gen(t), hj);
            // place w into component a
            auto rw = base->residues(w);
            std::vector<int64_t> rr(kw, 0);
            for (int s = 0; s < kv; ++s) rr[a * kv + s] = rw[s];
            int64_t v = 0;
            for (int i = 0; i < kw; ++i) v += rr[i] * strides[i];
            act_gen[gi * kw + (c * kv + j)] = static_cast<Elem>(v);
          }
      }
  mod->init(orders, act_gen, base->ring()->name() + "-module^" + std::to_string(m));
  return mod;
}

Elem FiniteModule::component(Elem v, int c) const {
  if (!power_base_) {
    if (c == 0) return v;
    fail(Err::BadSpec, "component on non-power module");
  }
  int kv = power_base_->num_gens();
  auto r = residues(v);
  std::vector<int64_t> sub(r.begin() + c * kv, r.begin() + (c + 1) * kv);
  return power_base_->from_residues(sub);
}

Elem FiniteModule::from_components(std::span<const Elem> comps) const {
  if (!power_base_) {
    if (comps.size() == 1) return comps[0];
    fail(Err::BadSpec, "from_components on non-power module");
  }
  int kv = power_base_->num_gens();
  std::vector<int64_t> r(orders_.size());
  for (int c = 0; c < power_m_; ++c) {
    auto sub = power_base_->residues(comps[c]);
    for (int t = 0; t < kv; ++t) r[c * kv + t] = sub[t];
  }
  return from_residues(r);
}

} // namespace cw
