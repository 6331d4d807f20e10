#include "cw/codes.hpp"

#include <algorithm>
#include <cstring>
#include <unordered_map>
#include <unordered_set>

#include <gmpxx.h>

namespace cw {

namespace {

uint64_t splitmix(uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

uint64_t hash_word(const std::vector<Elem>& w) {
  uint64_t h = 0xcbf29ce484222325ULL;
  for (Elem e : w) {
    h ^= e;
    h *= 0x100000001b3ULL;
    h ^= h >> 29;
  }
  return h;
}

struct VecHash {
  size_t operator()(const std::vector<uint16_t>& v) const {
    uint64_t h = 0xcbf29ce484222325ULL;
    for (auto e : v) {
      h ^= e;
      h *= 0x100000001b3ULL;
    }
    return h;
  }
};

// |C| for a generator matrix over the regular module of Z/p^f by valuation
// pivoting; n = p^f
uint64_t chain_ring_span_size(std::vector<std::vector<int64_t>> m, int64_t n, int64_t p) {
  uint64_t size = 1;
  size_t rows = m.size();
  if (rows == 0) return 1;
  size_t cols = m[0].size();
  size_t r0 = 0;
  auto val = [&](int64_t x) -> int64_t {
    if (x % n == 0) return INT64_MAX;
    int64_t v = 0;
    while (x % p == 0) { x /= p; ++v; }
    return v;
  };
  auto inv_mod = [&](int64_t a) {
    int64_t t = 0, newt = 1, r = n, newr = a % n;
    while (newr != 0) {
      int64_t q = r / newr;
      int64_t tmp = t - q * newt;
      t = newt;
      newt = tmp;
      tmp = r - q * newr;
      r = newr;
      newr = tmp;
    }
    return ((t % n) + n) % n;
  };
  std::vector<bool> used_col(cols, false);
  while (r0 < rows) {
    // pivot of globally minimal valuation in the remaining submatrix
    size_t br = r0, bc = 0;
    int64_t bestv = INT64_MAX;
    for (size_t r = r0; r < rows; ++r)
      for (size_t c = 0; c < cols; ++c) {
        if (used_col[c]) continue;
        int64_t v = val(m[r][c]);
        if (v < bestv) { bestv = v; br = r; bc = c; }
      }
    if (bestv == INT64_MAX) break;
    std::swap(m[r0], m[br]);
    int64_t unit = m[r0][bc];
    for (int64_t i = 0; i < bestv; ++i) unit /= p;
    int64_t ui = inv_mod(unit);
    for (size_t cc = 0; cc < cols; ++cc) m[r0][cc] = m[r0][cc] * ui % n;
    int64_t piv = 1;
    for (int64_t i = 0; i < bestv; ++i) piv *= p;
    for (size_t r = r0 + 1; r < rows; ++r) {
      if (m[r][bc] % piv != 0) fail(Err::AxiomViolation, "pivot valuation not minimal");
      int64_t f = m[r][bc] / piv % n;
      for (size_t cc = 0; cc < cols; ++cc)
        m[r][cc] = ((m[r][cc] - f * m[r0][cc]) % n + n) % n;
    }
    used_col[bc] = true;
    size *= static_cast<uint64_t>(n / piv);
    ++r0;
  }
  return size;
}

// rank over GF via the ring's own arithmetic
uint64_t field_span_size(const FiniteRing& F, std::vector<std::vector<Elem>> m) {
  size_t rows = m.size();
  if (rows == 0) return 1;
  size_t cols = m[0].size();
  size_t r0 = 0;
  uint64_t size = 1;
  for (size_t c = 0; c < cols && r0 < rows; ++c) {
    size_t piv = r0;
    while (piv < rows && m[piv][c] == F.zero()) ++piv;
    if (piv == rows) continue;
    std::swap(m[r0], m[piv]);
    Elem inv = *F.inverse(m[r0][c]);
    for (size_t cc = 0; cc < cols; ++cc) m[r0][cc] = F.mul(inv, m[r0][cc]);
    for (size_t r = r0 + 1; r < rows; ++r) {
      Elem f = m[r][c];
      if (f == F.zero()) continue;
      for (size_t cc = 0; cc < cols; ++cc)
        m[r][cc] = F.sub(m[r][cc], F.mul(f, m[r0][cc]));
    }
    size *= F.size();
    ++r0;
  }
  return size;
}

} // namespace

long long SparsePoly::coefficient_sum() const {
  long long s = 0;
  for (const auto& [k, v] : terms) s += v;
  return s;
}

bool SparsePoly::is_homogeneous() const {
  for (const auto& [k, v] : terms) {
    int d = 0;
    for (auto e : k) d += e;
    if (d != degree) return false;
  }
  return true;
}

Code::Code(std::shared_ptr<const FormRing> fr, std::vector<std::vector<Elem>> rows)
    : fr_(std::move(fr)), rows_(std::move(rows)) {
  if (rows_.empty()) fail(Err::BadSpec, "code needs at least one generator row");
  N_ = static_cast<int>(rows_[0].size());
  for (const auto& r : rows_)
    if (static_cast<int>(r.size()) != N_) fail(Err::BadSpec, "ragged generator matrix");
  for (const auto& r : rows_)
    for (Elem v : r)
      if (v >= fr_->module()->size()) fail(Err::BadSpec, "row entry outside V");
}

uint64_t Code::fiber_count() const {
  uint64_t f = 1;
  for (size_t i = 0; i < rows_.size(); ++i) {
    f = f * fr_->ring()->size();
    if (f > (1ull << 40)) fail(Err::CapExceeded, "fiber count overflow");
  }
  return f;
}

void Code::enumerate(const std::function<void(const std::vector<Elem>&)>& cb,
                     uint64_t enum_cap) const {
  if (fiber_count() > enum_cap) fail(Err::CapExceeded, "enumeration exceeds cap");
  const auto& R = *fr_->ring();
  const auto& V = *fr_->module();
  size_t k = rows_.size();
  std::vector<std::vector<std::vector<Elem>>> scaled(k);
  for (size_t i = 0; i < k; ++i) {
    scaled[i].assign(R.size(), std::vector<Elem>(N_));
    for (Elem r = 0; r < R.size(); ++r)
      for (int t = 0; t < N_; ++t) scaled[i][r][t] = V.act(r, rows_[i][t]);
  }
  std::vector<std::vector<Elem>> buf(k + 1, std::vector<Elem>(N_, 0));
  auto rec = [&](auto&& self, size_t depth) -> void {
    if (depth == k) {
      cb(buf[k]);
      return;
    }
    for (Elem r = 0; r < R.size(); ++r) {
      const auto& add = scaled[depth][r];
      for (int t = 0; t < N_; ++t) buf[depth + 1][t] = V.add(buf[depth][t], add[t]);
      self(self, depth + 1);
    }
  };
  rec(rec, 0);
}

uint64_t Code::size(uint64_t enum_cap) const {
  if (cached_size_ != 0) return cached_size_;
  const auto& R = *fr_->ring();
  const auto& V = *fr_->module();
  const auto& spec = R.spec();
  if (V.is_regular() && spec.kind == RingSpec::Kind::Zn) {
    int64_t n = spec.n;
    int64_t p = 2;
    while (p <= n && n % p != 0) ++p;
    int64_t q = n;
    while (q % p == 0) q /= p;
    if (q == 1) { // prime power: chain ring fast path
      std::vector<std::vector<int64_t>> m;
      for (const auto& r : rows_) m.emplace_back(r.begin(), r.end());
      cached_size_ = chain_ring_span_size(std::move(m), n, p);
      return cached_size_;
    }
  }
  if (V.is_regular() && spec.kind == RingSpec::Kind::GF) {
    cached_size_ = field_span_size(R, rows_);
    return cached_size_;
  }
  // fallback: 64-bit-hash distinct count (false-merge risk ~ |C|^2 / 2^64)
  std::unordered_set<uint64_t> seen;
  enumerate([&](const std::vector<Elem>& w) { seen.insert(hash_word(w)); }, enum_cap);
  cached_size_ = seen.size();
  return cached_size_;
}

std::vector<std::vector<Elem>> Code::codewords(uint64_t enum_cap) const {
  std::vector<std::vector<Elem>> out;
  std::unordered_set<uint64_t> seen;
  enumerate(
      [&](const std::vector<Elem>& w) {
        if (seen.insert(hash_word(w)).second) out.push_back(w);
      },
      enum_cap);
  std::sort(out.begin(), out.end());
  return out;
}

DualityReport dual_and_selfdual_check(const Code& c) {
  const auto& fr = c.form_ring();
  const auto& beta = fr.beta();
  const auto& R = *fr.ring();
  const auto& V = *fr.module();
  DualityReport rep;
  rep.self_orthogonal = true;
  // the code is the Z-span of {w * row : w in R}, so bilinearity reduces
  // orthogonality to these pairs; beta(ua, vb) = beta(a, u^J v b) folds the
  // two ring factors into one
  for (const auto& a : c.rows()) {
    for (const auto& b : c.rows()) {
      for (Elem w = 0; w < R.size() && rep.self_orthogonal; ++w) {
        QZ s;
        for (int t = 0; t < c.length(); ++t) s += beta(a[t], V.act(w, b[t]));
        if (!s.is_zero()) rep.self_orthogonal = false;
      }
      if (!rep.self_orthogonal) break;
    }
    if (!rep.self_orthogonal) break;
  }
  if (rep.self_orthogonal) {
    // |C|^2 = |V|^N, valid because beta is nonsingular
    uint64_t sz = c.size();
    __int128 lhs = static_cast<__int128>(sz) * sz;
    __int128 rhs = 1;
    for (int t = 0; t < c.length(); ++t) rhs *= fr.module()->size();
    rep.self_dual = (lhs == rhs);
  }
  return rep;
}

bool isotropy_check(const Code& c, bool exhaustive, uint64_t enum_cap) {
  const auto& fr = c.form_ring();
  if (!exhaustive) {
    auto rep = dual_and_selfdual_check(c);
    if (rep.self_orthogonal) {
      // lambda(phi) vanishes on C x C, so each phi is additive on C, and Phi
      // is closed under [r]; checking all of Phi on the generator rows suffices
      for (const auto& phi : fr.phi()) {
        for (const auto& row : c.rows()) {
          QZ s;
          for (int t = 0; t < c.length(); ++t) s += phi(row[t]);
          if (!s.is_zero()) return false;
        }
      }
      return true;
    }
  }
  bool ok = true;
  c.enumerate(
      [&](const std::vector<Elem>& w) {
        if (!ok) return;
        for (const auto& phi : fr.phi()) {
          QZ s;
          for (Elem v : w) s += phi(v);
          if (!s.is_zero()) { ok = false; return; }
        }
      },
      enum_cap);
  return ok;
}

bool check_type(const Code& c) {
  auto rep = dual_and_selfdual_check(c);
  return rep.self_dual && isotropy_check(c);
}

SparsePoly cwe(const Code& c, uint64_t enum_cap) {
  const auto& V = *c.form_ring().module();
  SparsePoly p;
  p.nvars = static_cast<int>(V.size());
  p.degree = c.length();
  std::unordered_map<std::vector<uint16_t>, long long, VecHash> acc;
  std::vector<uint16_t> key(p.nvars);
  c.enumerate(
      [&](const std::vector<Elem>& w) {
        std::fill(key.begin(), key.end(), 0);
        for (Elem v : w) ++key[v];
        ++acc[key];
      },
      enum_cap);
  uint64_t mu = c.fiber_count() / c.size();
  if (c.fiber_count() % c.size() != 0) fail(Err::AxiomViolation, "non-uniform fibers");
  for (auto& [k, v] : acc) {
    if (v % static_cast<long long>(mu) != 0) fail(Err::AxiomViolation, "non-uniform fibers");
    p.terms.emplace(k, v / static_cast<long long>(mu));
  }
  return p;
}

SparsePoly cwe_m(const Code& c, int m, uint64_t enum_cap) {
  if (m < 1) fail(Err::BadSpec, "genus must be >= 1");
  if (m == 1) return cwe(c, enum_cap);
  const auto& V = *c.form_ring().module();
  auto words = c.codewords(enum_cap);
  size_t nc = words.size();
  double total = 1;
  for (int i = 0; i < m; ++i) total *= static_cast<double>(nc);
  if (total > static_cast<double>(enum_cap)) fail(Err::CapExceeded, "cwe_m exceeds cap");

  int64_t nv = static_cast<int64_t>(V.size());
  int64_t nvars = 1;
  for (int i = 0; i < m; ++i) {
    nvars *= nv;
    if (nvars > 4096) fail(Err::CapExceeded, "cwe_m variable set too large");
  }
  SparsePoly p;
  p.nvars = static_cast<int>(nvars);
  p.degree = c.length();
  std::unordered_map<std::vector<uint16_t>, long long, VecHash> acc;
  std::vector<size_t> idx(m, 0);
  std::vector<uint16_t> key(p.nvars);
  while (true) {
    std::fill(key.begin(), key.end(), 0);
    for (int t = 0; t < c.length(); ++t) {
      int64_t var = 0;
      for (int i = 0; i < m; ++i) var = var * nv + words[idx[i]][t];
      ++key[var];
    }
    ++acc[key];
    int i = m - 1;
    while (i >= 0 && ++idx[i] == nc) idx[i--] = 0;
    if (i < 0) break;
  }
  for (auto& [k, v] : acc) p.terms.emplace(k, v);
  return p;
}

SparsePoly swe(const SparsePoly& p, const std::vector<std::vector<int>>& orbits) {
  std::vector<int> orbit_of(p.nvars, -1);
  for (size_t o = 0; o < orbits.size(); ++o)
    for (int v : orbits[o]) {
      if (v < 0 || v >= p.nvars || orbit_of[v] >= 0)
        fail(Err::BadSpec, "orbits must partition the variables");
      orbit_of[v] = static_cast<int>(o);
    }
  for (int v = 0; v < p.nvars; ++v)
    if (orbit_of[v] < 0) fail(Err::BadSpec, "orbits must cover the variables");
  SparsePoly q;
  q.nvars = static_cast<int>(orbits.size());
  q.degree = p.degree;
  for (const auto& [k, coeff] : p.terms) {
    std::vector<uint16_t> nk(q.nvars, 0);
    for (int v = 0; v < p.nvars; ++v) nk[orbit_of[v]] += k[v];
    q.terms[nk] += coeff;
  }
  return q;
}

namespace {

using CycPolyMap = std::unordered_map<std::vector<uint16_t>, Cyc, VecHash>;

void expand_monomial_into(const CycMatrix& g, const std::vector<uint16_t>& exps,
                          const Cyc& coeff, CycPolyMap& out, uint64_t monomial_cap) {
  int n = g.dim();
  CycPolyMap cur;
  cur.emplace(std::vector<uint16_t>(n, 0), coeff);
  for (int v = 0; v < n; ++v) {
    if (exps[v] == 0) continue;
    std::vector<std::pair<int, Cyc>> form;
    for (int w = 0; w < n; ++w) {
      Cyc e = g.get(v, w);
      if (!e.is_zero()) form.emplace_back(w, e);
    }
    for (int rep = 0; rep < exps[v]; ++rep) {
      CycPolyMap next;
      next.reserve(cur.size() * form.size());
      for (const auto& [key, c] : cur) {
        for (const auto& [w, e] : form) {
          std::vector<uint16_t> nk = key;
          ++nk[w];
          auto it = next.find(nk);
          if (it == next.end())
            next.emplace(std::move(nk), c * e);
          else
            it->second += c * e;
        }
      }
      cur = std::move(next);
      if (cur.size() > monomial_cap) fail(Err::SizeExceeded, "symbolic expansion too large");
    }
  }
  for (auto& [key, c] : cur) {
    auto it = out.find(key);
    if (it == out.end())
      out.emplace(key, c);
    else
      it->second += c;
  }
}

bool symbolic_invariance(const SparsePoly& p, const CycMatrix& g, uint64_t monomial_cap) {
  const CycRing* ring = g.ring();
  CycPolyMap expanded;
  for (const auto& [key, coeff] : p.terms)
    expand_monomial_into(g, key, Cyc::from_rat(ring, Rat(coeff)), expanded, monomial_cap);
  size_t nonzero = 0;
  for (const auto& [key, c] : expanded) {
    if (c.is_zero()) continue;
    ++nonzero;
    auto it = p.terms.find(key);
    if (it == p.terms.end()) return false;
    if (!(c == Cyc::from_rat(ring, Rat(it->second)))) return false;
  }
  size_t pn = 0;
  for (const auto& [key, v] : p.terms)
    if (v != 0) ++pn;
  return nonzero == pn;
}

// exact evaluation with arbitrary-precision coordinates
struct BigCyc {
  const CycRing* ring;
  std::vector<mpq_class> c;
  explicit BigCyc(const CycRing* r) : ring(r), c(r->degree()) {}
};

BigCyc big_mul(const BigCyc& a, const BigCyc& b) {
  int deg = a.ring->degree();
  std::vector<mpq_class> conv(2 * deg - 1);
  for (int i = 0; i < deg; ++i) {
    if (a.c[i] == 0) continue;
    for (int j = 0; j < deg; ++j) {
      if (b.c[j] == 0) continue;
      conv[i + j] += a.c[i] * b.c[j];
    }
  }
  BigCyc r(a.ring);
  for (int i = 0; i < deg; ++i) r.c[i] = conv[i];
  for (int e = deg; e < 2 * deg - 1; ++e) {
    if (conv[e] == 0) continue;
    const auto& red = a.ring->power(e);
    for (int i = 0; i < deg; ++i)
      if (red[i] != 0) r.c[i] += conv[e] * red[i];
  }
  return r;
}

bool sampled_invariance(const SparsePoly& p, const CycMatrix& g, int samples, uint64_t seed) {
  int n = g.dim();
  const CycRing* ring = g.ring();
  for (int pt = 0; pt < samples; ++pt) {
    std::vector<mpz_class> x(n);
    for (int v = 0; v < n; ++v)
      x[v] = 1 + static_cast<unsigned long>(
                     splitmix(seed ^ (static_cast<uint64_t>(pt + 1) << 20) ^ v) & 0xffff);
    std::vector<BigCyc> y(n, BigCyc(ring));
    for (int v = 0; v < n; ++v)
      for (int w = 0; w < n; ++w) {
        Cyc e = g.get(v, w);
        for (int t = 0; t < ring->degree(); ++t)
          if (!e.c[t].is_zero())
            y[v].c[t] += mpq_class(e.c[t].num, e.c[t].den) * mpq_class(x[w]);
      }
    std::vector<std::vector<BigCyc>> pw(n);
    int maxe = p.degree;
    for (int v = 0; v < n; ++v) {
      pw[v].reserve(maxe + 1);
      BigCyc one(ring);
      one.c[0] = 1;
      pw[v].push_back(one);
      for (int e = 1; e <= maxe; ++e) pw[v].push_back(big_mul(pw[v].back(), y[v]));
    }
    BigCyc lhs(ring);
    mpz_class rhs_plain(0);
    for (const auto& [key, coeff] : p.terms) {
      BigCyc term(ring);
      term.c[0] = mpq_class(static_cast<long>(coeff));
      mpz_class plain(static_cast<long>(coeff));
      for (int v = 0; v < n; ++v) {
        if (key[v] == 0) continue;
        term = big_mul(term, pw[v][key[v]]);
        mpz_class xp;
        mpz_pow_ui(xp.get_mpz_t(), x[v].get_mpz_t(), key[v]);
        plain *= xp;
      }
      for (int t = 0; t < ring->degree(); ++t) lhs.c[t] += term.c[t];
      rhs_plain += plain;
    }
    if (lhs.c[0] != rhs_plain) return false;
    for (int t = 1; t < ring->degree(); ++t)
      if (lhs.c[t] != 0) return false;
  }
  return true;
}

} // namespace

bool invariance_check(const SparsePoly& p, const CycMatrix& g, const InvarianceOptions& opt) {
  if (p.nvars != g.dim()) fail(Err::BadSpec, "variable count mismatch");
  if (opt.mode == InvarianceMode::Symbolic) return symbolic_invariance(p, g, opt.monomial_cap);
  return sampled_invariance(p, g, opt.samples, opt.seed);
}

bool macwilliams_verify(const Code& c, uint64_t scan_cap) {
  const auto& fr = c.form_ring();
  const auto& V = *fr.module();
  const auto& beta = fr.beta();
  int N = c.length();
  uint64_t total = 1;
  for (int t = 0; t < N; ++t) {
    total *= V.size();
    if (total > scan_cap) fail(Err::CapExceeded, "dual scan exceeds cap");
  }
  auto words = c.codewords();

  std::vector<std::vector<Elem>> dual;
  std::vector<Elem> x(N, 0);
  while (true) {
    bool in_dual = true;
    for (const auto& cword : words) {
      QZ s;
      for (int t = 0; t < N; ++t) s += beta(x[t], cword[t]);
      if (!s.is_zero()) { in_dual = false; break; }
    }
    if (in_dual) dual.push_back(x);
    int t = N - 1;
    while (t >= 0) {
      if (++x[t] == V.size()) x[t--] = 0;
      else break;
    }
    if (t < 0) break;
  }

  SparsePoly dual_cwe;
  dual_cwe.nvars = static_cast<int>(V.size());
  dual_cwe.degree = N;
  for (const auto& w : dual) {
    std::vector<uint16_t> key(dual_cwe.nvars, 0);
    for (Elem v : w) ++key[v];
    ++dual_cwe.terms[key];
  }

  // sqrt(|V|) h has the integral entries exp(2 pi i beta(w, v))
  const CycRing* ring = CycRing::get(fr.conductor());
  int n = static_cast<int>(V.size());
  CycMatrix hs(ring, n);
  for (int v = 0; v < n; ++v)
    for (int w = 0; w < n; ++w)
      hs.set(v, w, phase(ring, beta(static_cast<Elem>(w), static_cast<Elem>(v))));
  hs.normalize();

  SparsePoly code_cwe = cwe(c);
  CycPolyMap expanded;
  for (const auto& [key, coeff] : code_cwe.terms)
    expand_monomial_into(hs, key, Cyc::from_rat(ring, Rat(coeff)), expanded, 1'000'000);

  Rat inv_size(1, static_cast<int64_t>(c.size()));
  size_t nonzero = 0;
  for (const auto& [key, val] : expanded) {
    if (val.is_zero()) continue;
    ++nonzero;
    auto it = dual_cwe.terms.find(key);
    if (it == dual_cwe.terms.end()) return false;
    Cyc scaled(ring);
    for (int t = 0; t < ring->degree(); ++t) scaled.c[t] = val.c[t] * inv_size;
    if (!(scaled == Cyc::from_rat(ring, Rat(it->second)))) return false;
  }
  return nonzero == dual_cwe.terms.size();
}

bool even_code_check(const Code& c, uint64_t enum_cap) {
  const auto& fr = c.form_ring();
  const auto& R = *fr.ring();
  const auto& spec = R.spec();
  bool binary_field = (spec.kind == RingSpec::Kind::Zn && spec.n == 2) ||
                      (spec.kind == RingSpec::Kind::GF && spec.p == 2);
  if (!binary_field || !fr.module()->is_regular())
    fail(Err::BadSpec, "even_code_check requires the regular module over F_2^f");
  bool ok = true;
  c.enumerate(
      [&](const std::vector<Elem>& w) {
        if (!ok) return;
        Elem sum = R.zero();
        Elem pairsum = R.zero();
        for (Elem v : w) {
          pairsum = R.add(pairsum, R.mul(v, sum)); // c_i * (c_1 + ... + c_{i-1})
          sum = R.add(sum, v);
        }
        if (sum != R.zero() || pairsum != R.zero()) ok = false;
      },
      enum_cap);
  return ok;
}

} // namespace cw
