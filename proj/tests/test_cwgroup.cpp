#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <sstream>

#include "cw/cwgroup.hpp"
#include "helpers.hpp"

using namespace cw;
using namespace cwtest;

namespace {

CycMatrix mat_from_phases(const CycRing* ring, int n, const std::vector<std::vector<Cyc>>& rows) {
  CycMatrix m(ring, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) m.set(i, j, rows[i][j]);
  m.normalize();
  return m;
}

CycMatrix perm_matrix(const CycRing* ring, const std::vector<int>& images) {
  int n = static_cast<int>(images.size());
  CycMatrix m(ring, n);
  for (int i = 0; i < n; ++i) m.set(i, images[i], Cyc::one(ring));
  m.normalize();
  return m;
}

} // namespace

TEST_CASE("unit generator: identity and the displayed Z4 permutation") {
  auto fr = z2f_rho(2, false);
  CHECK(gen_unit(fr, 1).is_identity());
  const CycRing* ring = CycRing::get(fr.conductor());
  // multiplication by 3 fixes 0 and 2, swaps 1 and 3
  CHECK(gen_unit(fr, 3) == perm_matrix(ring, {0, 3, 2, 1}));
  CHECK_THROWS_WITH_AS(gen_unit(fr, 2), doctest::Contains("NotAUnit"), Error);
}

TEST_CASE("unit generator: the displayed F4 permutation matrix") {
  auto fr = f4_even_oracle();
  const CycRing* ring = CycRing::get(fr.conductor());
  // the displayed matrix in element order 0,1,w,w^2; it is rho of the other
  // primitive element (the two roots of x^2+x+1 are interchangeable)
  CycMatrix displayed = perm_matrix(ring, {0, 3, 1, 2});
  CHECK(gen_unit(fr, 3) == displayed);
  CHECK(gen_unit(fr, 2) == displayed.transpose());
}

TEST_CASE("quad generator: diagonal phases") {
  auto fr = z2f_rho(2, false);
  const CycRing* ring = CycRing::get(fr.conductor());
  int zero_idx = fr.phi_index(QuadMap{fr.module(), std::vector<QZ>(4)});
  CHECK(gen_quad_idx(fr, zero_idx).is_identity());

  // phi_0 = x^2/8 -> diag(1, zeta8, -1, zeta8)
  int p0 = fr.phi_gen_indices()[0];
  CycMatrix d(ring, 4);
  d.set(0, 0, Cyc::one(ring));
  d.set(1, 1, root_of_unity(8, 1));
  d.set(2, 2, -Cyc::one(ring));
  d.set(3, 3, root_of_unity(8, 1));
  d.normalize();
  CHECK(gen_quad_idx(fr, p0) == d);

  QuadMap foreign{fr.module(), {QZ(0, 1), QZ(1, 3), QZ(0, 1), QZ(2, 3)}};
  CHECK_THROWS_WITH_AS(gen_quad(fr, foreign), doctest::Contains("PhiNotInPhi"), Error);
}

TEST_CASE("quad generator: diag(1,-1,i,i) is in the F4 image") {
  auto fr = f4_even_oracle();
  const CycRing* ring = CycRing::get(fr.conductor());
  int p1 = fr.phi_gen_indices()[0];
  const auto& phi1 = fr.phi()[p1];
  QuadMap three = quad_add(phi1, quad_add(phi1, phi1));
  int idx = fr.phi_index(three);
  REQUIRE(idx >= 0);
  Cyc i = root_of_unity(8, 2).embed(ring);
  CycMatrix d(ring, 4);
  d.set(0, 0, Cyc::one(ring));
  d.set(1, 1, -Cyc::one(ring));
  d.set(2, 2, i);
  d.set(3, 3, i);
  d.normalize();
  CHECK(gen_quad_idx(fr, idx) == d);
}

TEST_CASE("MacWilliams generator: binary, Z4, and iota = 0") {
  auto frb = binary_type2_oracle();
  const CycRing* r8 = CycRing::get(frb.conductor());
  Cyc inv_s2 = (root_of_unity(8, 1) + root_of_unity(8, 7)) * Cyc::from_rat(r8, Rat(1, 2));
  CycMatrix h2 = mat_from_phases(r8, 2, {{inv_s2, inv_s2}, {inv_s2, -inv_s2}});
  CHECK(gen_macwilliams(frb, {1, 1, 1}) == h2);

  auto fra = z2f_rho(2, false);
  const CycRing* ring = CycRing::get(fra.conductor());
  Cyc half = Cyc::from_rat(ring, Rat(1, 2));
  Cyc i = root_of_unity(8, 2);
  Cyc mi = -i, one = Cyc::one(ring), mone = -one;
  CycMatrix h4 = mat_from_phases(
      ring, 4,
      {{half, half, half, half},
       {half, half * i, half * mone, half * mi},
       {half, half * mone, half, half * mone},
       {half, half * mi, half * mone, half * i}});
  CHECK(gen_macwilliams(fra, {1, 1, 1}) == h4);

  // unitarity
  CycMatrix h = gen_macwilliams(fra, {1, 1, 1});
  CHECK((h * h.conj_transpose()).is_identity());

  // iota = 0: empty partial transform is the identity
  CHECK(gen_macwilliams(fra, {0, 0, 0}).is_identity());
}

TEST_CASE("group orders for the Z/4 form rings") {
  auto Ga = build_group(z2f_rho(2, false));
  CHECK(Ga.order() == 1536);
  auto Gb = build_group(z2f_rho(2, true));
  CHECK(Gb.order() == 6144);
}

TEST_CASE("group order for binary doubly-even, genus 1") {
  auto G = build_group(binary_type2_oracle());
  CHECK(G.order() == 192);
  CHECK(scalar_center(G) == 8);
}

TEST_CASE("group order and center for F4") {
  auto G = build_group(f4_even_oracle());
  CHECK(G.order() == 3840);
  CHECK(scalar_center(G) == 4);
}

TEST_CASE("group order for F4+F4u") {
  auto G = build_group(f4u_oracle());
  CHECK(G.dim() == 16);
  CHECK(G.order() == 96);
  CHECK(scalar_center(G) == 1);
}

TEST_CASE("scalar centers over Z/4") {
  CHECK(scalar_center(build_group(z2f_rho(2, false))) == 8);
  CHECK(scalar_center(build_group(z2f_rho(2, true))) == 8);
}

TEST_CASE("scalar values form a cyclic group of roots of unity") {
  auto G = build_group(z2f_rho(2, false));
  auto vals = scalar_values(G);
  CHECK(vals.size() == 8);
  for (const auto& v : vals) {
    Cyc p = Cyc::one(v.ring);
    bool hits_one = false;
    for (size_t k = 0; k < vals.size(); ++k) {
      p = p * v;
      if (p == Cyc::one(v.ring)) { hits_one = true; break; }
    }
    CHECK(hits_one);
  }
}

TEST_CASE("closure is generator-order independent") {
  auto fr = z2f_rho(2, false);
  auto gens = cw_generators(fr);
  std::vector<CycMatrix> mats;
  for (auto& g : gens) mats.push_back(g.mat);
  auto A = MatrixGroup::close(mats);
  std::reverse(mats.begin(), mats.end());
  auto B = MatrixGroup::close(mats);
  CHECK(A.order() == B.order());
  for (size_t i = 0; i < A.order(); i += 97) CHECK(B.contains(A.element(i)));
}

TEST_CASE("adding redundant generators never grows the group") {
  for (const FormRing& fr : {z2f_rho(2, false), z2f_rho(2, true), f4u_oracle()}) {
    auto reduced = build_group(fr, 1, 10'000'000, true);
    auto full = build_group(fr, 1, 10'000'000, false);
    CHECK(reduced.order() == full.order());
  }
}

TEST_CASE("genus-1 lift produces identical generators") {
  auto fr = z2f_rho(2, true);
  FormRing l1 = matrix_lift(fr, 1);
  auto g0 = cw_generators(fr);
  auto g1 = cw_generators(l1);
  REQUIRE(g0.size() == g1.size());
  for (size_t i = 0; i < g0.size(); ++i) CHECK(g0[i].mat == g1[i].mat);
}

TEST_CASE("molien of the trivial group") {
  const CycRing* r1 = CycRing::get(8);
  auto G = MatrixGroup::close({CycMatrix::identity(r1, 1)});
  CHECK(G.order() == 1);
  RatSeries s = molien(G, 3);
  for (int k = 0; k <= 3; ++k) CHECK(s.at(k) == 1);
}

TEST_CASE("molien of rho_a matches its closed form to degree 32") {
  auto G = build_group(z2f_rho(2, false));
  RatSeries got = molien(G, 32);
  // (1+t^8)(1+t^16)^2 / ((1-t^8)^3 (1-t^24))
  std::vector<BigRat> num(41);
  num[0] = 1;
  num[8] = 1;
  num[16] = 2;
  num[24] = 2;
  num[32] = 1;
  num[40] = 1;
  RatSeries want = expand_closed_form(num, {8, 8, 8, 24}, 32);
  for (int k = 0; k <= 32; ++k) CHECK(got.at(k) == want.at(k));
  // center forces 8 | d for nonzero coefficients
  for (int k = 0; k <= 32; ++k)
    if (k % 8 != 0) CHECK(got.at(k) == 0);
}

TEST_CASE("molien accepts a thread count") {
  auto G = build_group(binary_type2_oracle());
  RatSeries a = molien(G, 40, 1);
  RatSeries b = molien(G, 40, 3);
  CHECK(a == b);
}

TEST_CASE("symmetrizing by singletons is the identity transformation") {
  auto G = build_group(binary_type2_oracle());
  auto S = symmetrize(G, {{0}, {1}});
  CHECK(S.order() == G.order());
  for (size_t i = 0; i < S.order(); ++i) CHECK(G.contains(S.element(i)));
}

TEST_CASE("unit orbits of F4+F4u are {0}, R*, uR*") {
  auto fr = f4u_oracle();
  auto orbits = unit_orbits(fr);
  REQUIRE(orbits.size() == 3);
  CHECK(orbits[0] == std::vector<int>{0});
  CHECK(orbits[1].size() == 3);  // u F4*
  CHECK(orbits[2].size() == 12); // units
}

TEST_CASE("symmetrizing F4+F4u by R* gives a degree-3 group of order 8") {
  auto fr = f4u_oracle();
  auto G = build_group(fr);
  auto orbits = unit_orbits(fr);
  auto S = symmetrize(G, orbits);
  CHECK(S.dim() == 3);
  CHECK(S.order() == 8);
}

TEST_CASE("incompatible orbit partition is rejected") {
  auto G = build_group(binary_type2_oracle());
  CHECK_THROWS_WITH_AS(symmetrize(G, {{0, 1}}), doctest::Contains("NotCompatible"), Error);
}

TEST_CASE("closure cap aborts oversized groups") {
  auto fr = z2f_rho(2, false);
  auto gens = cw_generators(fr);
  std::vector<CycMatrix> mats;
  for (auto& g : gens) mats.push_back(g.mat);
  CHECK_THROWS_WITH_AS(MatrixGroup::close(mats, 100), doctest::Contains("CapExceeded"), Error);
}

TEST_CASE("group dump round trip") {
  auto G = build_group(binary_type2_oracle());
  std::stringstream ss;
  G.dump(ss);
  auto H = MatrixGroup::load(ss);
  CHECK(H.order() == G.order());
  CHECK(H.dim() == G.dim());
  for (size_t i = 0; i < G.order(); i += 13) CHECK(H.element(i) == G.element(i));
  CHECK(H.contains(G.element(G.order() - 1)));
}
