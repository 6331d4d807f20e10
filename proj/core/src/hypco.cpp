#include "cw/hypco.hpp"

#include <algorithm>
#include <unordered_map>
#include <unordered_set>

namespace cw {

HypCo::HypCo(std::shared_ptr<const FormRing> fr) : fr_(std::move(fr)) {
  zero_phi_ = fr_->phi_index(QuadMap{fr_->module(), std::vector<QZ>(fr_->module()->size())});
  if (zero_phi_ < 0) fail(Err::BadSpec, "Phi does not contain 0");
  sym_idems_ = symmetric_idempotents(*fr_);
}

UElement HypCo::identity() const {
  const auto& R = *fr_->ring();
  UElement e;
  e.A = {R.one(), R.zero(), R.zero(), R.one()};
  e.phi1 = e.phi2 = zero_phi_;
  e.m = R.zero();
  return e;
}

QZ HypCo::eval_datum(const UElement& x, Elem v1, Elem v2) const {
  size_t n = fr_->module()->size();
  return fr_->phi()[x.phi1].table[v1] + fr_->M(x.m).table[static_cast<size_t>(v1) * n + v2] +
         fr_->phi()[x.phi2].table[v2];
}

bool HypCo::is_valid(const UElement& x) const {
  const auto& R = *fr_->ring();
  Elem a = x.A[0], b = x.A[1], c = x.A[2], d = x.A[3];
  // psi_2((c^J a, c^J b; d^J a - 1, d^J b)) = lambda_2((phi1, m; m^tau, phi2))
  Elem cJ = fr_->J(c), dJ = fr_->J(d);
  if (R.mul(cJ, a) != fr_->lambda_psi_inv(x.phi1)) return false;
  if (R.mul(cJ, b) != x.m) return false;
  if (R.sub(R.mul(dJ, a), R.one()) != fr_->tau_hat(x.m)) return false;
  if (R.mul(dJ, b) != fr_->lambda_psi_inv(x.phi2)) return false;
  // invertibility of A is maintained by construction: generators are built
  // from units and the closure only multiplies group elements
  return true;
}

UElement HypCo::mul(const UElement& x, const UElement& y) const {
  const auto& R = *fr_->ring();
  const auto& mod = *fr_->module();
  size_t n = mod.size();
  UElement z;
  // matrix part
  z.A[0] = R.add(R.mul(x.A[0], y.A[0]), R.mul(x.A[1], y.A[2]));
  z.A[1] = R.add(R.mul(x.A[0], y.A[1]), R.mul(x.A[1], y.A[3]));
  z.A[2] = R.add(R.mul(x.A[2], y.A[0]), R.mul(x.A[3], y.A[2]));
  z.A[3] = R.add(R.mul(x.A[2], y.A[1]), R.mul(x.A[3], y.A[3]));

  // datum: q1[A2] + q2, componentwise through the evaluation formula
  std::vector<QZ> p1(n), p2(n);
  for (Elem v = 0; v < n; ++v) {
    p1[v] = eval_datum(x, mod.add(mod.act(y.A[0], v), Elem(0)), mod.act(y.A[2], v));
    p2[v] = eval_datum(x, mod.act(y.A[1], v), mod.act(y.A[3], v));
  }
  // add q2's diagonal
  const auto& yp1 = fr_->phi()[y.phi1].table;
  const auto& yp2 = fr_->phi()[y.phi2].table;
  for (Elem v = 0; v < n; ++v) {
    p1[v] += yp1[v];
    p2[v] += yp2[v];
  }
  int i1 = fr_->phi_index(QuadMap{fr_->module(), p1});
  int i2 = fr_->phi_index(QuadMap{fr_->module(), p2});
  if (i1 < 0 || i2 < 0) fail(Err::ConditionViolated, "datum action left Phi");
  z.phi1 = i1;
  z.phi2 = i2;

  // mixed part of q1[A2]: m'(v,w) = q1[A2](v,w) - q1[A2](v,0) - q1[A2](0,w)
  std::vector<QZ> mt(n * n);
  for (Elem v = 0; v < n; ++v) {
    Elem av = mod.act(y.A[0], v), cv = mod.act(y.A[2], v);
    for (Elem w = 0; w < n; ++w) {
      Elem bw = mod.act(y.A[1], w), dw = mod.act(y.A[3], w);
      QZ q = eval_datum(x, mod.add(av, bw), mod.add(cv, dw));
      mt[static_cast<size_t>(v) * n + w] =
          q - p1[v] - p2[w] + yp1[v] + yp2[w]; // p's already include q2's diagonal
    }
  }
  // add q2's mixed part and identify in M
  const auto& ym = fr_->M(y.m).table;
  for (size_t i = 0; i < mt.size(); ++i) mt[i] += ym[i];
  z.m = fr_->psi_inv(BilForm{fr_->module(), mt});

  if (!is_valid(z)) fail(Err::ConditionViolated, "product violates the defining condition");
  return z;
}

UElement HypCo::d_generator(Elem u, int phi_idx) const {
  const auto& R = *fr_->ring();
  auto inv = R.inverse(fr_->J(u));
  if (!inv) fail(Err::NotAUnit, "d(u,phi) requires a unit");
  UElement g;
  g.A[0] = *inv;
  g.A[1] = R.mul(*inv, fr_->lambda_psi_inv(phi_idx));
  g.A[2] = R.zero();
  g.A[3] = u;
  g.phi1 = zero_phi_;
  g.m = R.zero();
  g.phi2 = phi_idx;
  if (!is_valid(g)) fail(Err::ConditionViolated, "d(u,phi) fails the defining condition");
  return g;
}

UElement HypCo::H_generator(const SymIdem& si) const {
  const auto& R = *fr_->ring();
  auto epsinv = R.inverse(fr_->eps());
  UElement g;
  g.A[0] = R.sub(R.one(), fr_->J(si.iota));
  g.A[1] = si.v;
  g.A[2] = R.neg(R.mul(*epsinv, fr_->J(si.u)));
  g.A[3] = R.sub(R.one(), si.iota);
  g.phi1 = zero_phi_;
  g.m = R.neg(R.mul(fr_->eps(), si.iota));
  g.phi2 = zero_phi_;
  if (!is_valid(g)) fail(Err::ConditionViolated, "H generator fails the defining condition");
  return g;
}

std::vector<UElement> HypCo::generators() const {
  std::vector<UElement> gens;
  for (Elem u : unit_group_generators(*fr_->ring())) gens.push_back(d_generator(u, zero_phi_));
  for (int qi : phi_group_generators(*fr_)) gens.push_back(d_generator(fr_->ring()->one(), qi));
  for (const auto& si : sym_idems_) {
    UElement h = H_generator(si);
    if (!(h == identity())) gens.push_back(h);
  }
  return gens;
}

UClosure HypCo::closure(size_t cap) const {
  auto gens = generators();
  UClosure out;
  std::unordered_map<uint64_t, std::vector<size_t>> index;
  auto find = [&](const UElement& e) -> int64_t {
    auto it = index.find(e.key());
    if (it == index.end()) return -1;
    for (size_t i : it->second)
      if (out.elements[i] == e) return static_cast<int64_t>(i);
    return -1;
  };
  auto insert = [&](const UElement& e) {
    if (find(e) >= 0) return false;
    index[e.key()].push_back(out.elements.size());
    out.elements.push_back(e);
    if (out.elements.size() > cap) fail(Err::CapExceeded, "U closure exceeded cap");
    return true;
  };
  insert(identity());
  for (const auto& g : gens) insert(g);
  size_t head = 0;
  while (head < out.elements.size()) {
    UElement x = out.elements[head++];
    for (const auto& g : gens) insert(mul(x, g));
  }
  out.order = out.elements.size();

  const auto& R = *fr_->ring();
  std::unordered_set<uint64_t> images;
  for (const auto& e : out.elements) {
    if (e.A[0] == R.one() && e.A[1] == R.zero() && e.A[2] == R.zero() && e.A[3] == R.one())
      ++out.ker_pi_order;
    uint64_t h = 0xcbf29ce484222325ULL;
    for (Elem a : e.A) { h ^= a; h *= 0x100000001b3ULL; }
    images.insert(h);
  }
  out.pi_image_order = images.size();
  size_t kl = fr_->ker_lambda_size();
  if (out.ker_pi_order != kl * kl)
    fail(Err::KernelMismatch, "ker(pi) != |ker lambda|^2");
  if (out.order != out.ker_pi_order * out.pi_image_order)
    fail(Err::OrderMismatch, "|U| != |ker pi| * |im pi|");
  return out;
}

CycMatrix HypCo::generator_image(const UElement& g) const {
  const auto& R = *fr_->ring();
  // H generators: match against the stored symmetric idempotents
  for (const auto& si : sym_idems_) {
    if (g == H_generator(si)) return gen_macwilliams(*fr_, si);
  }
  // d(u, phi): A = (u^{-J}, u^{-J} l(phi); 0, u).  Under the substitution
  // convention used here r -> rho(r) reverses products while u -> d(u,0)
  // preserves them, so the homomorphic image of d(u,phi) is rho(u^{-1}) rho(phi).
  if (g.A[2] == R.zero() && g.phi1 == zero_phi_ && g.m == R.zero()) {
    Elem u = g.A[3];
    if (R.is_unit(u)) {
      UElement d = d_generator(u, g.phi2);
      if (d == g) return gen_unit(*fr_, *R.inverse(u)) * gen_quad_idx(*fr_, g.phi2);
    }
  }
  fail(Err::BadSpec, "element is not a recognized generator");
}

ProjectiveReport projective_consistency(const FormRing& fr, const MatrixGroup& G, int genus,
                                        int words, uint64_t seed) {
  ProjectiveReport rep;
  const FormRing* base = &fr;
  std::shared_ptr<const FormRing> lifted;
  if (genus > 1) {
    lifted = std::make_shared<FormRing>(matrix_lift(fr, genus));
    base = lifted.get();
  }
  auto holder = std::make_shared<FormRing>(*base);
  HypCo U(holder);
  auto cl = U.closure();
  rep.c_order = G.order();
  rep.center_order = scalar_center(G);
  rep.u_order = cl.order;
  rep.order_ok = (rep.c_order == static_cast<uint64_t>(rep.center_order) * rep.u_order);

  // dict-based word test: equal U-products must give matrices equal up to a
  // scalar factor
  auto gens = U.generators();
  std::vector<CycMatrix> images;
  for (const auto& g : gens) images.push_back(U.generator_image(g));

  auto next = [&seed]() {
    seed += 0x9e3779b97f4a7c15ULL;
    uint64_t z = seed;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  };

  auto scalar_ratio_ok = [&](const CycMatrix& a, const CycMatrix& b) {
    // a =? c * b: find first nonzero entry of b, compute c, compare
    int n = a.dim();
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        Cyc bv = b.get(i, j);
        if (bv.is_zero()) {
          if (!a.get(i, j).is_zero()) return false;
          continue;
        }
        Cyc c = a.get(i, j) * bv.inverse();
        return a == CycMatrix::scalar(a.ring(), n, c) * b;
      }
    return false;
  };

  std::unordered_map<uint64_t, std::vector<std::pair<UElement, CycMatrix>>> dict;
  rep.words_ok = true;
  for (int w = 0; w < words && rep.words_ok; ++w) {
    int len = 2 + static_cast<int>(next() % 9);
    UElement u = U.identity();
    CycMatrix M = CycMatrix::identity(G.ring(), G.dim());
    for (int i = 0; i < len; ++i) {
      size_t gi = next() % gens.size();
      u = U.mul(u, gens[gi]);
      M = M * images[gi];
    }
    auto& bucket = dict[u.key()];
    bool matched = false;
    for (auto& [ue, me] : bucket) {
      if (ue == u) {
        ++rep.collisions;
        if (!scalar_ratio_ok(M, me)) rep.words_ok = false;
        matched = true;
        break;
      }
    }
    if (!matched) bucket.emplace_back(u, M);
  }
  if (rep.collisions == 0) rep.words_ok = false;
  return rep;
}

} // namespace cw
