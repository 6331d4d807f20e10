#include "cw/cwgroup.hpp"

#include <algorithm>
#include <cstring>
#include <istream>
#include <map>
#include <numeric>
#include <ostream>
#include <thread>

namespace cw {

CycMatrix gen_unit(const FormRing& fr, Elem r) {
  if (!fr.ring()->is_unit(r)) fail(Err::NotAUnit, "gen_unit requires a unit");
  const auto& mod = *fr.module();
  const CycRing* ring = CycRing::get(fr.conductor());
  int n = static_cast<int>(mod.size());
  CycMatrix m(ring, n);
  Cyc one = Cyc::one(ring);
  for (Elem v = 0; v < mod.size(); ++v) m.set(static_cast<int>(v), static_cast<int>(mod.act(r, v)), one);
  m.normalize();
  return m;
}

CycMatrix gen_quad(const FormRing& fr, const QuadMap& phi) {
  int idx = fr.phi_index(phi);
  if (idx < 0) fail(Err::PhiNotInPhi, "quadratic map is not in Phi");
  return gen_quad_idx(fr, idx);
}

CycMatrix gen_quad_idx(const FormRing& fr, int phi_idx) {
  const auto& mod = *fr.module();
  const CycRing* ring = CycRing::get(fr.conductor());
  int n = static_cast<int>(mod.size());
  CycMatrix m(ring, n);
  for (Elem v = 0; v < mod.size(); ++v)
    m.set(static_cast<int>(v), static_cast<int>(v), phase(ring, fr.phi_value(phi_idx, v)));
  m.normalize();
  return m;
}

CycMatrix gen_macwilliams(const FormRing& fr, const SymIdem& si) {
  const auto& mod = *fr.module();
  const auto& R = *fr.ring();
  const CycRing* ring = CycRing::get(fr.conductor());
  int n = static_cast<int>(mod.size());

  std::vector<Elem> iotaV;
  {
    std::vector<bool> seen(mod.size(), false);
    for (Elem v = 0; v < mod.size(); ++v) {
      Elem w = mod.act(si.iota, v);
      if (!seen[w]) { seen[w] = true; iotaV.push_back(w); }
    }
    std::sort(iotaV.begin(), iotaV.end());
  }
  auto [sq, sq_cond] = sqrt_int(static_cast<int64_t>(iotaV.size()));
  Cyc sqv = sq.embed(ring);
  // 1/sqrt(k) = sqrt(k)/k
  Cyc inv_sq(ring);
  for (size_t t = 0; t < inv_sq.c.size(); ++t)
    inv_sq.c[t] = sqv.c[t] * Rat(1, static_cast<int64_t>(iotaV.size()));

  Elem one_minus_iota = R.sub(R.one(), si.iota);
  const auto& beta = fr.beta();
  CycMatrix m(ring, n);
  for (Elem v = 0; v < mod.size(); ++v) {
    Elem rest = mod.act(one_minus_iota, v);
    Elem vi_v = mod.act(si.v, v);
    for (Elem w : iotaV) {
      Elem col = mod.add(w, rest);
      Cyc val = inv_sq * phase(ring, beta(w, vi_v));
      m.set(static_cast<int>(v), static_cast<int>(col), val);
    }
  }
  m.normalize();
  return m;
}

std::vector<Elem> unit_group_generators(const FiniteRing& R) {
  auto units = R.units();
  std::vector<bool> have(R.size(), false);
  have[R.one()] = true;
  size_t have_count = 1;
  std::vector<Elem> gens;
  for (Elem u : units) {
    if (have[u]) continue;
    gens.push_back(u);
    // close the subgroup generated so far
    std::vector<Elem> queue = {u};
    have[u] = true;
    ++have_count;
    while (!queue.empty()) {
      Elem x = queue.back();
      queue.pop_back();
      for (Elem y = 0; y < R.size(); ++y) {
        if (!have[y]) continue;
        for (Elem z : {R.mul(x, y), R.mul(y, x)}) {
          if (!have[z]) {
            have[z] = true;
            ++have_count;
            queue.push_back(z);
          }
        }
      }
    }
    if (have_count == units.size()) break;
  }
  return gens;
}

std::vector<int> phi_group_generators(const FormRing& fr) {
  const auto& Phi = fr.phi();
  size_t np = Phi.size();
  // index-level addition table rows built on demand
  auto add_idx = [&](int a, int b) { return fr.phi_index(quad_add(Phi[a], Phi[b])); };
  std::vector<bool> have(np, false);
  have[fr.phi_index(QuadMap{fr.module(), std::vector<QZ>(fr.module()->size())})] = true;
  size_t have_count = 1;
  std::vector<int> gens;
  for (size_t i = 0; i < np && have_count < np; ++i) {
    if (have[i]) continue;
    gens.push_back(static_cast<int>(i));
    std::vector<int> queue = {static_cast<int>(i)};
    have[i] = true;
    ++have_count;
    while (!queue.empty()) {
      int x = queue.back();
      queue.pop_back();
      for (size_t y = 0; y < np; ++y) {
        if (!have[y]) continue;
        int z = add_idx(x, static_cast<int>(y));
        if (!have[z]) {
          have[z] = true;
          ++have_count;
          queue.push_back(z);
        }
      }
    }
  }
  return gens;
}

std::vector<CWGenerator> cw_generators(const FormRing& fr, bool reduced) {
  std::vector<CWGenerator> gens;
  const auto& R = *fr.ring();

  std::vector<Elem> units = reduced ? unit_group_generators(R) : R.units();
  for (Elem u : units)
    gens.push_back({CWGenerator::Kind::Unit, u, -1, gen_unit(fr, u)});

  std::vector<int> quads;
  if (reduced) {
    quads = phi_group_generators(fr);
  } else {
    quads.resize(fr.phi().size());
    std::iota(quads.begin(), quads.end(), 0);
  }
  for (int qi : quads)
    gens.push_back({CWGenerator::Kind::Quad, 0, qi, gen_quad_idx(fr, qi)});

  for (const auto& si : symmetric_idempotents(fr))
    gens.push_back({CWGenerator::Kind::MacWilliams, si.iota, -1, gen_macwilliams(fr, si)});

  // drop identities and duplicates, preserving order
  std::vector<CWGenerator> out;
  std::vector<uint8_t> buf;
  std::vector<std::string> seen;
  for (auto& g : gens) {
    if (g.mat.is_identity()) continue;
    buf.clear();
    g.mat.serialize(buf);
    std::string key(buf.begin(), buf.end());
    if (std::find(seen.begin(), seen.end(), key) != seen.end()) continue;
    seen.push_back(std::move(key));
    out.push_back(std::move(g));
  }
  return out;
}

// ---------------------------------------------------------------------------
// MatrixGroup

bool MatrixGroup::insert(const CycMatrix& m) {
  static thread_local std::vector<uint8_t> buf;
  buf.clear();
  m.serialize(buf);
  uint64_t h = m.hash();
  size_t mask = table_.size() - 1;
  size_t pos = h & mask;
  while (true) {
    int64_t slot = table_[pos];
    if (slot == 0) break;
    size_t idx = static_cast<size_t>(slot - 1);
    if (hashes_[idx] == h) {
      size_t len = offs_[idx + 1] - offs_[idx];
      if (len == buf.size() && std::equal(buf.begin(), buf.end(), arena_.begin() + offs_[idx]))
        return false;
    }
    pos = (pos + 1) & mask;
  }
  table_[pos] = static_cast<int64_t>(count_ + 1);
  arena_.insert(arena_.end(), buf.begin(), buf.end());
  offs_.push_back(arena_.size());
  hashes_.push_back(h);
  ++count_;
  if (count_ * 2 > table_.size()) rehash(table_.size() * 2);
  return true;
}

void MatrixGroup::rehash(size_t want) {
  size_t sz = 16;
  while (sz < want) sz <<= 1;
  table_.assign(sz, 0);
  size_t mask = sz - 1;
  for (size_t i = 0; i < count_; ++i) {
    size_t pos = hashes_[i] & mask;
    while (table_[pos] != 0) pos = (pos + 1) & mask;
    table_[pos] = static_cast<int64_t>(i + 1);
  }
}

CycMatrix MatrixGroup::element(size_t idx) const {
  return CycMatrix::deserialize(ring_, dim_, arena_.data() + offs_[idx],
                                offs_[idx + 1] - offs_[idx]);
}

int64_t MatrixGroup::find(const CycMatrix& m) const {
  if (count_ == 0) return -1;
  std::vector<uint8_t> buf;
  m.serialize(buf);
  uint64_t h = m.hash();
  size_t mask = table_.size() - 1;
  size_t pos = h & mask;
  while (true) {
    int64_t slot = table_[pos];
    if (slot == 0) return -1;
    size_t idx = static_cast<size_t>(slot - 1);
    if (hashes_[idx] == h) {
      size_t len = offs_[idx + 1] - offs_[idx];
      if (len == buf.size() && std::equal(buf.begin(), buf.end(), arena_.begin() + offs_[idx]))
        return static_cast<int64_t>(idx);
    }
    pos = (pos + 1) & mask;
  }
}

MatrixGroup MatrixGroup::close(std::vector<CycMatrix> gens, size_t cap) {
  if (gens.empty()) fail(Err::BadSpec, "closure needs at least one generator");
  MatrixGroup G;
  G.ring_ = gens[0].ring();
  G.dim_ = gens[0].dim();
  G.offs_.push_back(0);
  G.table_.assign(1024, 0);
  G.insert(CycMatrix::identity(G.ring_, G.dim_));
  for (const auto& g : gens) {
    if (g.ring() != G.ring_ || g.dim() != G.dim_) fail(Err::BadSpec, "generator shape mismatch");
    G.insert(g);
  }
  G.gens_ = std::move(gens);
  size_t head = 0;
  while (head < G.count_) {
    CycMatrix x = G.element(head++);
    for (const auto& g : G.gens_) {
      if (G.insert(x * g) && G.count_ > cap)
        fail(Err::CapExceeded, "group closure exceeded cap " + std::to_string(cap));
    }
  }
  return G;
}

MatrixGroup build_group(const FormRing& fr, int genus, size_t cap, bool reduced_gens) {
  if (genus < 1) fail(Err::BadSpec, "genus must be >= 1");
  std::vector<CWGenerator> gens;
  if (genus == 1) {
    gens = cw_generators(fr, reduced_gens);
  } else {
    FormRing lifted = matrix_lift(fr, genus);
    gens = cw_generators(lifted, reduced_gens);
  }
  std::vector<CycMatrix> mats;
  mats.reserve(gens.size());
  for (auto& g : gens) mats.push_back(std::move(g.mat));
  return MatrixGroup::close(std::move(mats), cap);
}

std::vector<Cyc> scalar_values(const MatrixGroup& G) {
  std::vector<Cyc> vals;
  for (size_t i = 0; i < G.order(); ++i) {
    auto s = G.element(i).scalar_value();
    if (s) vals.push_back(*s);
  }
  return vals;
}

int64_t scalar_center(const MatrixGroup& G) {
  return static_cast<int64_t>(scalar_values(G).size());
}

namespace {

// 1/p(t) over Z[zeta_L] to the given degree; p has integral coordinates and
// constant term 1.
std::vector<std::vector<int64_t>> invert_int_poly(const CycRing* ring,
                                                  const std::vector<std::vector<int64_t>>& p,
                                                  int degree) {
  int deg = ring->degree();
  int np = static_cast<int>(p.size());
  std::vector<std::vector<int64_t>> r(degree + 1, std::vector<int64_t>(deg, 0));
  r[0][0] = 1;
  std::vector<__int128> conv(2 * deg - 1);
  for (int k = 1; k <= degree; ++k) {
    std::fill(conv.begin(), conv.end(), static_cast<__int128>(0));
    bool any = false;
    for (int i = 1; i < np && i <= k; ++i) {
      const auto& a = p[i];
      const auto& b = r[k - i];
      for (int s = 0; s < deg; ++s) {
        if (a[s] == 0) continue;
        __int128 av = a[s];
        for (int t = 0; t < deg; ++t)
          if (b[t] != 0) { conv[s + t] += av * b[t]; any = true; }
      }
    }
    if (!any) continue;
    for (int e = 2 * deg - 2; e >= deg; --e) {
      if (conv[e] == 0) continue;
      const auto& red = ring->power(e);
      for (int t = 0; t < deg; ++t)
        if (red[t] != 0) conv[t] += conv[e] * red[t];
    }
    for (int t = 0; t < deg; ++t) r[k][t] = -detail::checked_narrow(conv[t]);
  }
  return r;
}

std::string charpoly_key(const std::vector<std::vector<int64_t>>& cp) {
  std::string s;
  s.reserve(cp.size() * cp[0].size() * 8);
  for (const auto& c : cp)
    for (int64_t v : c) s.append(reinterpret_cast<const char*>(&v), 8);
  return s;
}

} // namespace

RatSeries molien(const MatrixGroup& G, int degree, int threads) {
  const CycRing* ring = G.ring();
  int deg = ring->degree();
  size_t n = G.order();
  threads = std::max(1, threads);

  std::map<std::string, int64_t> buckets;
  {
    std::vector<std::map<std::string, int64_t>> partial(threads);
    auto work = [&](int tid) {
      size_t lo = n * tid / threads, hi = n * (tid + 1) / threads;
      auto& mine = partial[tid];
      for (size_t i = lo; i < hi; ++i) {
        auto cp = rev_charpoly(G.element(i));
        mine[charpoly_key(cp)] += 1;
      }
    };
    if (threads == 1) {
      work(0);
    } else {
      std::vector<std::thread> pool;
      for (int t = 0; t < threads; ++t) pool.emplace_back(work, t);
      for (auto& th : pool) th.join();
    }
    for (auto& m : partial)
      for (auto& [k, v] : m) buckets[k] += v;
  }

  std::vector<std::vector<BigInt>> acc(degree + 1, std::vector<BigInt>(deg, BigInt(0)));
  int dim = G.dim();
  for (const auto& [key, count] : buckets) {
    // decode charpoly back from the key
    std::vector<std::vector<int64_t>> cp(dim + 1, std::vector<int64_t>(deg));
    const char* p = key.data();
    for (auto& c : cp)
      for (auto& v : c) { std::memcpy(&v, p, 8); p += 8; }
    auto inv = invert_int_poly(ring, cp, degree);
    BigInt mult(static_cast<long>(count));
    for (int k = 0; k <= degree; ++k)
      for (int t = 0; t < deg; ++t)
        if (inv[k][t] != 0) acc[k][t] += mult * BigInt(static_cast<long>(inv[k][t]));
  }

  std::vector<BigRat> coeffs(degree + 1);
  BigInt order(static_cast<unsigned long>(n));
  for (int k = 0; k <= degree; ++k) {
    for (int t = 1; t < deg; ++t)
      if (acc[k][t] != 0)
        fail(Err::NonIntegerCoefficient, "Molien coefficient has nonzero non-rational part");
    BigRat c(acc[k][0], order);
    c.canonicalize();
    if (c.get_den() != 1 || c < 0)
      fail(Err::NonIntegerCoefficient, "Molien coefficient is not a nonnegative integer");
    coeffs[k] = c;
  }
  if (coeffs[0] != 1) fail(Err::NonIntegerCoefficient, "Molien constant term is not 1");
  return RatSeries(degree, std::move(coeffs));
}

MatrixGroup symmetrize(const MatrixGroup& G, const std::vector<std::vector<int>>& orbits,
                       size_t cap) {
  int n = G.dim();
  std::vector<int> orbit_of(n, -1);
  for (size_t o = 0; o < orbits.size(); ++o)
    for (int v : orbits[o]) {
      if (v < 0 || v >= n || orbit_of[v] >= 0) fail(Err::BadSpec, "orbits must partition indices");
      orbit_of[v] = static_cast<int>(o);
    }
  for (int v = 0; v < n; ++v)
    if (orbit_of[v] < 0) fail(Err::BadSpec, "orbits must cover all indices");

  int k = static_cast<int>(orbits.size());
  const CycRing* ring = G.ring();
  std::vector<CycMatrix> comp;
  for (const auto& g : G.generators()) {
    CycMatrix gg(ring, k);
    for (int o = 0; o < k; ++o) {
      int rep = orbits[o][0];
      for (int op = 0; op < k; ++op) {
        // sum over the column orbit, which must not depend on the row representative
        Cyc sum(ring);
        for (int w : orbits[op]) sum += g.get(rep, w);
        for (size_t ri = 1; ri < orbits[o].size(); ++ri) {
          Cyc sum2(ring);
          for (int w : orbits[op]) sum2 += g.get(orbits[o][ri], w);
          if (sum2 != sum) fail(Err::NotCompatible, "orbit sums depend on the representative");
        }
        gg.set(o, op, sum);
      }
    }
    gg.normalize();
    comp.push_back(std::move(gg));
  }
  return MatrixGroup::close(std::move(comp), cap);
}

std::vector<std::vector<int>> unit_orbits(const FormRing& fr) {
  const auto& mod = *fr.module();
  auto units = fr.ring()->units();
  std::vector<int> orbit_of(mod.size(), -1);
  std::vector<std::vector<int>> orbits;
  for (Elem v = 0; v < mod.size(); ++v) {
    if (orbit_of[v] >= 0) continue;
    std::vector<int> orb;
    for (Elem u : units) {
      Elem w = mod.act(u, v);
      if (orbit_of[w] < 0) {
        orbit_of[w] = static_cast<int>(orbits.size());
        orb.push_back(static_cast<int>(w));
      }
    }
    std::sort(orb.begin(), orb.end());
    orbits.push_back(std::move(orb));
  }
  return orbits;
}

void MatrixGroup::dump(std::ostream& os) const {
  auto put64 = [&os](uint64_t v) { os.write(reinterpret_cast<const char*>(&v), 8); };
  os.write("CWGD", 4);
  put64(1); // version
  put64(static_cast<uint64_t>(ring_->conductor()));
  put64(static_cast<uint64_t>(dim_));
  put64(count_);
  put64(gens_.size());
  std::vector<uint8_t> buf;
  for (const auto& g : gens_) {
    buf.clear();
    g.serialize(buf);
    put64(buf.size());
    os.write(reinterpret_cast<const char*>(buf.data()), static_cast<std::streamsize>(buf.size()));
  }
  put64(arena_.size());
  os.write(reinterpret_cast<const char*>(arena_.data()), static_cast<std::streamsize>(arena_.size()));
  for (size_t i = 0; i <= count_; ++i) put64(offs_[i]);
}

MatrixGroup MatrixGroup::load(std::istream& is) {
  char magic[4];
  is.read(magic, 4);
  if (!is || std::string(magic, 4) != "CWGD") fail(Err::BadSpec, "bad group dump magic");
  auto get64 = [&is]() {
    uint64_t v = 0;
    is.read(reinterpret_cast<char*>(&v), 8);
    return v;
  };
  if (get64() != 1) fail(Err::BadSpec, "unsupported group dump version");
  MatrixGroup G;
  G.ring_ = CycRing::get(static_cast<int64_t>(get64()));
  G.dim_ = static_cast<int>(get64());
  size_t count = get64();
  size_t ngens = get64();
  std::vector<uint8_t> buf;
  for (size_t i = 0; i < ngens; ++i) {
    buf.resize(get64());
    is.read(reinterpret_cast<char*>(buf.data()), static_cast<std::streamsize>(buf.size()));
    G.gens_.push_back(CycMatrix::deserialize(G.ring_, G.dim_, buf.data(), buf.size()));
  }
  G.arena_.resize(get64());
  is.read(reinterpret_cast<char*>(G.arena_.data()), static_cast<std::streamsize>(G.arena_.size()));
  G.offs_.resize(count + 1);
  for (size_t i = 0; i <= count; ++i) G.offs_[i] = get64();
  if (!is) fail(Err::BadSpec, "truncated group dump");
  G.count_ = count;
  G.hashes_.resize(count);
  for (size_t i = 0; i < count; ++i) G.hashes_[i] = G.element(i).hash();
  G.rehash(2 * count + 16);
  return G;
}

} // namespace cw
