#pragma once

// Hand-written form ring tables for the worked examples, assembled from first
// principles in terms of the defining formulas.  These serve as independent
// oracles for the programmatic preset constructions.

#include <memory>
#include <vector>

#include "cw/qform.hpp"

namespace cwtest {

using namespace cw;

inline int64_t ipow(int64_t b, int64_t e) {
  int64_t r = 1;
  while (e-- > 0) r *= b;
  return r;
}

// Z/2^f Z with beta(x,y) = xy/2^f and phi0(x) = x^2/2^(f+1); rho_b adds x/2^f.
inline FormRing z2f_rho(int f, bool with_all_ones) {
  int64_t n = ipow(2, f);
  auto R = FiniteRing::construct(RingSpec::Zn(n));
  auto V = FiniteModule::regular(R);
  std::vector<QZ> bt(n * n);
  for (int64_t x = 0; x < n; ++x)
    for (int64_t y = 0; y < n; ++y) bt[x * n + y] = QZ(x * y, n);
  std::vector<QZ> p0(n);
  for (int64_t x = 0; x < n; ++x) p0[x] = QZ(x * x, 2 * n);
  std::vector<QuadMap> gens{make_quadmap(V, p0)};
  if (with_all_ones) {
    std::vector<QZ> lin(n);
    for (int64_t x = 0; x < n; ++x) lin[x] = QZ(x, n);
    gens.push_back(make_quadmap(V, lin));
  }
  return FormRing::validate(R, V, make_bilform(V, bt), gens,
                            with_all_ones ? "rho_b" : "rho_a");
}

// F4 = {0,1,w,w^2} at indices 0..3; trace to F2 sends w, w^2 to 1.
inline int f4_tr(Elem x) { return x >= 2 ? 1 : 0; }

// R = V = F4, beta(x,y) = Tr(xy)/2, Phi generated by
// phi_1 = (0, 1/2, 3/4, 3/4) (the a = 1 member of the quarter-trace family).
inline FormRing f4_even_oracle() {
  auto R = FiniteRing::construct(RingSpec::GF(2, 2));
  auto V = FiniteModule::regular(R);
  size_t n = 4;
  std::vector<QZ> bt(n * n);
  for (Elem x = 0; x < n; ++x)
    for (Elem y = 0; y < n; ++y) bt[x * n + y] = QZ(f4_tr(R->mul(x, y)), 2);
  std::vector<QZ> p1 = {QZ(0, 1), QZ(1, 2), QZ(3, 4), QZ(3, 4)};
  return FormRing::validate(R, V, make_bilform(V, bt), {make_quadmap(V, p1)}, "F4-even");
}

// Binary doubly-even case: R = V = F2, beta = xy/2, phi(x) = x^2/4.
inline FormRing binary_type2_oracle() {
  auto R = FiniteRing::construct(RingSpec::Zn(2));
  auto V = FiniteModule::regular(R);
  std::vector<QZ> bt = {QZ(0, 1), QZ(0, 1), QZ(0, 1), QZ(1, 2)};
  std::vector<QZ> p = {QZ(0, 1), QZ(1, 4)};
  return FormRing::validate(R, V, make_bilform(V, bt), {make_quadmap(V, p)}, "binary-II");
}

// R = F4 + F4 u at index 4a+b; beta(a'+b'u, a+bu) = Tr(ab' - a'b)/2 and
// phi0(a+bu) = Norm(a)/2.
inline FormRing f4u_oracle() {
  auto R = FiniteRing::construct(RingSpec::QuaternionicU(2));
  auto F4 = FiniteRing::construct(RingSpec::GF(2, 2));
  auto V = FiniteModule::regular(R);
  size_t n = 16;
  auto apart = [](Elem x) { return static_cast<Elem>(x / 4); };
  auto bpart = [](Elem x) { return static_cast<Elem>(x % 4); };
  std::vector<QZ> bt(n * n);
  for (Elem x = 0; x < n; ++x)
    for (Elem y = 0; y < n; ++y) {
      int tr = f4_tr(F4->mul(apart(y), bpart(x))) + f4_tr(F4->mul(apart(x), bpart(y)));
      bt[x * n + y] = QZ(tr, 2);
    }
  std::vector<QZ> p0(n);
  for (Elem x = 0; x < n; ++x) p0[x] = QZ(apart(x) != 0 ? 1 : 0, 2);
  return FormRing::validate(R, V, make_bilform(V, bt), {make_quadmap(V, p0)}, "F4u");
}

// Z/6 with the euclidean form xy/6 and Phi generated by {{beta_1}} = x^2/6.
inline FormRing z6_euclidean_oracle() {
  auto R = FiniteRing::construct(RingSpec::Zn(6));
  auto V = FiniteModule::regular(R);
  std::vector<QZ> bt(36);
  for (int64_t x = 0; x < 6; ++x)
    for (int64_t y = 0; y < 6; ++y) bt[x * 6 + y] = QZ(x * y, 6);
  std::vector<QZ> p(6);
  for (int64_t x = 0; x < 6; ++x) p[x] = QZ(x * x, 6);
  return FormRing::validate(R, V, make_bilform(V, bt), {make_quadmap(V, p)}, "Z6");
}

} // namespace cwtest
