#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>

#include "cw/finring.hpp"

using namespace cw;

TEST_CASE("QZ arithmetic is canonical mod 1") {
  CHECK(QZ(3, 4) + QZ(3, 4) == QZ(1, 2));
  CHECK(8 * QZ(1, 8) == QZ(0, 1));
  CHECK(QZ(1, 2) - QZ(3, 4) == QZ(3, 4));
  CHECK((QZ(0, 1) - QZ(1, 3)) == QZ(2, 3));
  CHECK(QZ(7, 14) == QZ(1, 2));
}

TEST_CASE("Z4: orders, characteristic, units, idempotents") {
  auto R = FiniteRing::construct(RingSpec::Zn(4));
  CHECK(R->size() == 4);
  Elem s = R->zero();
  for (int i = 0; i < 4; ++i) s = R->add(s, R->one());
  CHECK(s == R->zero());
  CHECK(R->units() == std::vector<Elem>{1, 3});
  CHECK(R->idempotents().elems == std::vector<Elem>{0, 1});
}

TEST_CASE("Z6 idempotents, brute forced") {
  auto R = FiniteRing::construct(RingSpec::Zn(6));
  CHECK(R->idempotents().elems == std::vector<Elem>{0, 1, 3, 4});
}

TEST_CASE("F4: element order is the base-p integer order") {
  auto F4 = FiniteRing::construct(RingSpec::GF(2, 2));
  CHECK(F4->size() == 4);
  CHECK(F4->one() == 1);
  CHECK(F4->units().size() == 3);
  Elem w = 2; // x
  CHECK(F4->mul(w, w) == 3);              // w^2 = w+1
  CHECK(F4->mul(w, F4->mul(w, w)) == 1);  // w^3 = 1
  CHECK(F4->pow(w, 3) == F4->one());
}

TEST_CASE("GF rejects reducible polynomials") {
  CHECK_THROWS_WITH_AS(FiniteRing::construct(RingSpec::GF(2, 2, {1, 0, 1})), // x^2+1 = (x+1)^2
                       doctest::Contains("NotIrreducible"), Error);
}

TEST_CASE("F8 field structure") {
  auto F8 = FiniteRing::construct(RingSpec::GF(2, 3)); // x^3+x+1
  CHECK(F8->size() == 8);
  CHECK(F8->units().size() == 7);
  for (Elem a = 1; a < 8; ++a) CHECK(F8->pow(a, 7) == F8->one());
}

TEST_CASE("Mat2(F2): 16 elements and |GL2(F2)| units against a direct scan") {
  auto R = FiniteRing::construct(RingSpec::MatRing(2, RingSpec::Zn(2)));
  CHECK(R->size() == 16);

  // independent oracle: brute-force invertibility of 2x2 matrices over F2
  int invertible = 0;
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b)
      for (int c = 0; c < 2; ++c)
        for (int d = 0; d < 2; ++d)
          if (((a * d - b * c) % 2 + 2) % 2 != 0) ++invertible;
  CHECK(invertible == 6);
  CHECK(R->units().size() == static_cast<size_t>(invertible));

  // diagonal idempotents present
  auto idem = R->idempotents();
  auto has = [&](std::vector<Elem> entries) {
    Elem e = R->mat_from_entries(entries);
    return std::find(idem.elems.begin(), idem.elems.end(), e) != idem.elems.end();
  };
  Elem z = 0, o = 1; // base ring Z2 elements
  CHECK(has({o, z, z, z}));
  CHECK(has({z, z, z, o}));
  CHECK(has({z, z, z, z}));
  CHECK(has({o, z, z, o}));
}

TEST_CASE("Mat2 entry round trip and product convention") {
  auto R = FiniteRing::construct(RingSpec::MatRing(2, RingSpec::Zn(4)));
  CHECK(R->size() == 256);
  // A = [[1,2],[3,0]], B = [[0,1],[1,0]] -> AB = [[2,1],[0,3]]
  Elem A = R->mat_from_entries(std::vector<Elem>{1, 2, 3, 0});
  Elem B = R->mat_from_entries(std::vector<Elem>{0, 1, 1, 0});
  Elem AB = R->mul(A, B);
  CHECK(R->mat_entry(AB, 0, 0) == 2);
  CHECK(R->mat_entry(AB, 0, 1) == 1);
  CHECK(R->mat_entry(AB, 1, 0) == 0);
  CHECK(R->mat_entry(AB, 1, 1) == 3);
}

TEST_CASE("F4+F4u: twisted multiplication") {
  auto R = FiniteRing::construct(RingSpec::QuaternionicU(2));
  CHECK(R->size() == 16);
  // layout: index = 4*a + b for a + b u with field indices a, b
  auto el = [&](Elem a, Elem b) { return static_cast<Elem>(4 * a + b); };
  Elem u = el(0, 1);
  Elem w = el(2, 0);  // omega
  Elem w2 = el(3, 0); // omega^2
  CHECK(R->mul(u, u) == R->zero());
  CHECK(R->mul(u, w) == R->mul(w2, u)); // u w = w^2 u
  CHECK(R->mul(u, w) == el(0, 3));
  CHECK(R->units().size() == 12);
  int nonunits = 0;
  for (Elem x = 0; x < 16; ++x)
    if (!R->is_unit(x)) ++nonunits;
  CHECK(nonunits == 4); // {0} plus u F4*
  // (a+bu)(a'+b'u) = aa' + (ab' + b a'^q) u, exhaustively
  auto F4 = FiniteRing::construct(RingSpec::GF(2, 2));
  for (Elem a = 0; a < 4; ++a)
    for (Elem b = 0; b < 4; ++b)
      for (Elem ap = 0; ap < 4; ++ap)
        for (Elem bp = 0; bp < 4; ++bp) {
          Elem lhs = R->mul(el(a, b), el(ap, bp));
          Elem rhs = el(F4->mul(a, ap),
                        F4->add(F4->mul(a, bp), F4->mul(b, F4->mul(ap, ap))));
          CHECK(lhs == rhs);
        }
}

TEST_CASE("direct product of Z2 and Z3 behaves like Z6") {
  auto R = FiniteRing::construct(RingSpec::DirectProduct({RingSpec::Zn(2), RingSpec::Zn(3)}));
  CHECK(R->size() == 6);
  CHECK(R->units().size() == 2);
  CHECK(R->idempotents().elems.size() == 4);
}

TEST_CASE("units form a group") {
  for (auto spec : {RingSpec::Zn(8), RingSpec::GF(2, 2), RingSpec::QuaternionicU(2),
                    RingSpec::MatRing(2, RingSpec::Zn(2))}) {
    auto R = FiniteRing::construct(spec);
    auto us = R->units();
    std::vector<bool> isu(R->size(), false);
    for (Elem u : us) isu[u] = true;
    for (Elem a : us)
      for (Elem b : us) CHECK(isu[R->mul(a, b)]);
    for (Elem a : us) CHECK(isu[*R->inverse(a)]);
  }
}

TEST_CASE("regular module distributes over addition") {
  for (auto spec : {RingSpec::Zn(4), RingSpec::QuaternionicU(2)}) {
    auto R = FiniteRing::construct(spec);
    auto V = FiniteModule::regular(R);
    CHECK(V->size() == R->size());
    for (Elem r = 0; r < R->size(); ++r)
      for (Elem v = 0; v < V->size(); ++v)
        for (Elem w = 0; w < V->size(); ++w)
          CHECK(V->act(r, V->add(v, w)) == V->add(V->act(r, v), V->act(r, w)));
  }
}

TEST_CASE("power module over Mat2") {
  auto R = FiniteRing::construct(RingSpec::Zn(4));
  auto V = FiniteModule::regular(R);
  auto M2 = FiniteRing::mat_ring(2, R);
  auto V2 = FiniteModule::power(V, 2, M2);
  CHECK(V2->size() == 16);
  // [[0,1],[1,0]] swaps components
  Elem swap = M2->mat_from_entries(std::vector<Elem>{0, 1, 1, 0});
  Elem v = V2->from_components(std::vector<Elem>{1, 3});
  Elem sv = V2->act(swap, v);
  CHECK(V2->component(sv, 0) == 3);
  CHECK(V2->component(sv, 1) == 1);
}
