#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "helpers.hpp"

using namespace cw;
using namespace cwtest;

namespace {

// all identities from the qmodule calculus, quantified over M u {beta} and Phi
void check_qmodule_identities(const FormRing& fr) {
  const auto& R = *fr.ring();
  std::vector<BilForm> bils;
  for (Elem r = 0; r < R.size(); ++r) bils.push_back(fr.M(r));
  bils.push_back(fr.beta());

  for (const auto& b : bils) {
    CHECK(brace(tau(b)) == brace(b));
    CHECK(bil_add(b, tau(b)) == lambda_of(brace(b)));
    // {{lambda({{beta}})}} = 2 {{beta}}
    QuadMap br = brace(b);
    QuadMap twice = quad_add(br, br);
    CHECK(brace(lambda_of(br)) == twice);
  }
  for (const auto& phi : fr.phi()) {
    BilForm l = lambda_of(phi);
    CHECK(tau(l) == l);
    // lambda({{lambda(phi)}}) = 2 lambda(phi)
    CHECK(lambda_of(brace(l)) == bil_add(l, l));
    for (Elem r = 0; r < R.size(); ++r)
      for (Elem s = 0; s < R.size(); ++s) {
        QuadMap lhs = qaction(phi, R.add(r, s));
        lhs = quad_add(lhs, QuadMap{phi.mod, [&] {
                         auto neg = quad_add(qaction(phi, r), qaction(phi, s));
                         for (auto& q : neg.table) q = QZ(0, 1) - q;
                         return neg.table;
                       }()});
        CHECK(lhs == brace(bilaction(l, r, s)));
      }
  }
}

} // namespace

TEST_CASE("tau is an involution; symmetric and skew examples") {
  auto fr = z2f_rho(2, false);
  CHECK(tau(fr.beta()) == fr.beta()); // xy/4 is symmetric
  auto f7 = f4u_oracle();
  // skew: tau(beta) = -beta, which in half-integer values equals beta
  BilForm nb = f7.beta();
  for (auto& q : nb.table) q = QZ(0, 1) - q;
  CHECK(tau(f7.beta()) == nb);
  CHECK(tau(tau(f7.beta())) == f7.beta());
}

TEST_CASE("brace of the euclidean form on Z4") {
  auto fr = z2f_rho(2, false);
  QuadMap br = brace(fr.beta());
  CHECK(br.table[0] == QZ(0, 1));
  CHECK(br.table[1] == QZ(1, 4));
  CHECK(br.table[2] == QZ(0, 1));
  CHECK(br.table[3] == QZ(1, 4));
  // zero form braces to the zero map
  BilForm zero{fr.module(), std::vector<QZ>(16)};
  CHECK(brace(zero).table == std::vector<QZ>(4));
}

TEST_CASE("lambda of zero and of braces") {
  auto fr = z2f_rho(2, false);
  QuadMap zero{fr.module(), std::vector<QZ>(4)};
  BilForm l0 = lambda_of(zero);
  for (const auto& q : l0.table) CHECK(q.is_zero());
  for (Elem r = 0; r < 4; ++r) {
    BilForm b = fr.M(r);
    CHECK(lambda_of(brace(b)) == bil_add(b, tau(b)));
  }
}

TEST_CASE("lambda rejects maps outside Quad_0") {
  auto R = FiniteRing::construct(RingSpec::Zn(4));
  auto V = FiniteModule::regular(R);
  // phi(0) != 0
  QuadMap bad{V, {QZ(1, 2), QZ(0, 1), QZ(0, 1), QZ(0, 1)}};
  CHECK_THROWS_AS(lambda_of(bad), Error);
  // cubic behaviour: x^3/8 on Z4 lifts fail the cube condition
  QuadMap cubic{V, {QZ(0, 1), QZ(1, 8), QZ(0, 1), QZ(3, 8)}};
  CHECK_THROWS_AS(lambda_of(cubic), Error);
}

TEST_CASE("qaction basics") {
  auto fr = z2f_rho(2, false);
  const auto& phi0 = fr.phi()[fr.phi_gen_indices()[0]];
  CHECK(qaction(phi0, 1) == phi0);
  for (const auto& q : qaction(phi0, 0).table) CHECK(q.is_zero());
}

TEST_CASE("admissibility: Z/2^f has trivial involution and eps = 1") {
  for (int f : {1, 2, 3}) {
    auto fr = z2f_rho(f, false);
    for (Elem r = 0; r < fr.ring()->size(); ++r) CHECK(fr.J(r) == r);
    CHECK(fr.eps() == fr.ring()->one());
  }
}

TEST_CASE("admissibility: F4 trace form has trivial involution and eps = 1") {
  auto fr = f4_even_oracle();
  for (Elem r = 0; r < 4; ++r) CHECK(fr.J(r) == r);
  CHECK(fr.eps() == fr.ring()->one());
}

TEST_CASE("admissibility: F4+F4u has (r+su)^J = r - s^q u and eps = -1") {
  auto fr = f4u_oracle();
  const auto& R = *fr.ring();
  auto F4 = FiniteRing::construct(RingSpec::GF(2, 2));
  for (Elem a = 0; a < 4; ++a)
    for (Elem b = 0; b < 4; ++b) {
      Elem x = static_cast<Elem>(4 * a + b);
      Elem expect = static_cast<Elem>(4 * a + F4->mul(b, b)); // -s^q = s^2 in char 2
      CHECK(fr.J(x) == expect);
    }
  CHECK(fr.eps() == R.neg(R.one()));
  CHECK(R.neg(R.one()) == R.one()); // char 2: -1 = 1
}

TEST_CASE("singular form is rejected") {
  auto R = FiniteRing::construct(RingSpec::Zn(2));
  auto V = FiniteModule::regular(R);
  std::vector<QZ> zero(4);
  CHECK_THROWS_WITH_AS(
      FormRing::validate(R, V, make_bilform(V, zero), {}, "bad"),
      doctest::Contains("Singular"), Error);
}

TEST_CASE("phi closure sizes and kernel structure for Z/4") {
  auto fra = z2f_rho(2, false);
  CHECK(fra.phi().size() == 8);       // <phi_0> with phi_0 of additive order 8
  CHECK(fra.ker_lambda_size() == 2);  // <4 phi_0> = Z/2

  auto frb = z2f_rho(2, true);
  CHECK(frb.phi().size() == 16);      // 2^(f-1) varphi = 2^f phi_0 relation
  CHECK(frb.ker_lambda_size() == 4);  // <varphi> = R
}

TEST_CASE("phi closure respects its cap") {
  auto fr = z2f_rho(2, true);
  std::vector<QuadMap> gens;
  for (int i : fr.phi_gen_indices()) gens.push_back(fr.phi()[i]);
  CHECK_THROWS_WITH_AS(phi_closure(gens, *fr.ring(), 4),
                       doctest::Contains("ClosureCapExceeded"), Error);
}

TEST_CASE("phi closure: trivial generator set") {
  auto R = FiniteRing::construct(RingSpec::Zn(4));
  auto V = FiniteModule::regular(R);
  QuadMap zero{V, std::vector<QZ>(4)};
  auto closed = phi_closure({zero}, *R);
  CHECK(closed.size() == 1);
}

TEST_CASE("psi^{-1}(lambda(phi_0)) = u in F4+F4u") {
  auto fr = f4u_oracle();
  int p0 = fr.phi_gen_indices()[0];
  Elem u = 1; // index 4*0 + 1
  CHECK(fr.lambda_psi_inv(p0) == u);
  CHECK(fr.phi().size() == 2); // {0, phi_0}
  CHECK(fr.ker_lambda_size() == 1);
}

TEST_CASE("qmodule calculus identities hold on every oracle form ring") {
  check_qmodule_identities(z2f_rho(1, false));
  check_qmodule_identities(z2f_rho(2, false));
  check_qmodule_identities(z2f_rho(2, true));
  check_qmodule_identities(f4_even_oracle());
  check_qmodule_identities(f4u_oracle());
  check_qmodule_identities(z6_euclidean_oracle());
}

TEST_CASE("symmetric idempotents of Z/6 give the mod-2 and mod-3 transforms") {
  auto fr = z6_euclidean_oracle();
  auto sis = symmetric_idempotents(fr);
  REQUIRE(sis.size() == 4);
  CHECK(sis[0].iota == 0);
  CHECK(sis[0].u == 0);
  CHECK(sis[0].v == 0);
  CHECK(sis[1].iota == 1);
  CHECK(sis[1].u == 1);
  CHECK(sis[1].v == 1);
  CHECK(sis[2].iota == 3);
  CHECK(fr.ring()->mul(sis[2].u, sis[2].v) == 3);
  CHECK(sis[3].iota == 4);
  CHECK(fr.ring()->mul(sis[3].u, sis[3].v) == 4);
}

TEST_CASE("matrix lift at m = 1 reproduces the form ring") {
  auto fr = z2f_rho(2, true);
  FormRing l1 = matrix_lift(fr, 1);
  CHECK(l1.ring()->size() == fr.ring()->size());
  CHECK(l1.beta().table == fr.beta().table);
  REQUIRE(l1.phi().size() == fr.phi().size());
  for (size_t i = 0; i < fr.phi().size(); ++i) CHECK(l1.phi()[i].table == fr.phi()[i].table);
  for (Elem r = 0; r < fr.ring()->size(); ++r) CHECK(l1.J(r) == fr.J(r));
  CHECK(l1.eps() == fr.eps());
}

TEST_CASE("matrix lift at m = 2 for the binary form ring") {
  auto fr = binary_type2_oracle();
  CHECK(fr.phi().size() == 4);
  FormRing l2 = matrix_lift(fr, 2);
  CHECK(l2.ring()->size() == 16);
  CHECK(l2.module()->size() == 4);
  CHECK(l2.phi().size() == 32); // |Phi|^2 |M|

  // evaluation formula: every member decomposes as phi_1(v1)+phi_2(v2)+m(v1,v2)
  const auto& vm = *l2.module();
  for (const auto& q : l2.phi()) {
    std::vector<QZ> p1(2), p2(2);
    for (Elem x = 0; x < 2; ++x) {
      p1[x] = q.table[vm.from_components(std::vector<Elem>{x, 0})];
      p2[x] = q.table[vm.from_components(std::vector<Elem>{0, x})];
    }
    CHECK(fr.phi_index(QuadMap{fr.module(), p1}) >= 0);
    CHECK(fr.phi_index(QuadMap{fr.module(), p2}) >= 0);
    std::vector<QZ> mij(4);
    for (Elem x = 0; x < 2; ++x)
      for (Elem y = 0; y < 2; ++y) {
        Elem v = vm.from_components(std::vector<Elem>{x, y});
        mij[x * 2 + y] = q.table[v] - p1[x] - p2[y];
      }
    CHECK(fr.in_M(BilForm{fr.module(), mij}));
  }

  // beta^(2) is the orthogonal sum
  for (Elem v = 0; v < 4; ++v)
    for (Elem w = 0; w < 4; ++w) {
      QZ expect = fr.beta()(vm.component(v, 0), vm.component(w, 0)) +
                  fr.beta()(vm.component(v, 1), vm.component(w, 1));
      CHECK(l2.beta()(v, w) == expect);
    }
}

TEST_CASE("lifted involution is componentwise J followed by transposition") {
  // small enough to build the lift outright: Mat2(Z4)
  auto fr = z2f_rho(2, false);
  FormRing l2 = matrix_lift(fr, 2);
  const auto& M2 = *l2.ring();
  for (Elem A = 0; A < M2.size(); ++A) {
    Elem AJ = l2.J(A);
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j)
        CHECK(M2.mat_entry(AJ, i, j) == fr.J(M2.mat_entry(A, j, i)));
  }
  // eps_m = eps I_m
  Elem epsI = M2.mat_from_entries(
      std::vector<Elem>{fr.eps(), fr.ring()->zero(), fr.ring()->zero(), fr.eps()});
  CHECK(l2.eps() == epsI);
}

TEST_CASE("componentwise J + transpose satisfies the lifted adjoint relation on F4+F4u") {
  // Mat2(F4+F4u) is beyond the lift's table caps, so check the defining
  // relation beta2(Av, w) = beta2(v, A~ w) directly, with A~ the
  // componentwise-J transpose.  Nonsingularity makes the solution unique.
  auto fr = f4u_oracle();
  const auto& R = *fr.ring();
  const auto& mod = *fr.module();
  const auto& beta = fr.beta();
  auto beta2 = [&](Elem v0, Elem v1, Elem w0, Elem w1) { return beta(v0, w0) + beta(v1, w1); };
  uint64_t seed = 0x1234;
  for (int trial = 0; trial < 12; ++trial) {
    Elem A[4];
    for (auto& x : A) {
      seed = seed * 6364136223846793005ULL + 1442695040888963407ULL;
      x = static_cast<Elem>((seed >> 20) % R.size());
    }
    Elem AJ[4] = {fr.J(A[0]), fr.J(A[2]), fr.J(A[1]), fr.J(A[3])};
    for (Elem v0 = 0; v0 < mod.size(); ++v0)
      for (Elem v1 = 0; v1 < mod.size(); ++v1)
        for (Elem w0 = 0; w0 < mod.size(); ++w0)
          for (Elem w1 = 0; w1 < mod.size(); ++w1) {
            QZ lhs = beta2(mod.add(mod.act(A[0], v0), mod.act(A[1], v1)),
                           mod.add(mod.act(A[2], v0), mod.act(A[3], v1)), w0, w1);
            QZ rhs = beta2(v0, v1, mod.add(mod.act(AJ[0], w0), mod.act(AJ[1], w1)),
                           mod.add(mod.act(AJ[2], w0), mod.act(AJ[3], w1)));
            if (lhs != rhs) {
              CHECK(lhs == rhs);
              return;
            }
          }
  }
  CHECK(true);
}

TEST_CASE("psi is a right module isomorphism") {
  for (const FormRing& fr : {z2f_rho(2, true), f4u_oracle()}) {
    const auto& R = *fr.ring();
    for (Elem r = 0; r < R.size(); ++r)
      for (Elem s = 0; s < R.size(); ++s) {
        // psi(rs) = psi(r)(1 (x) s)
        CHECK(bilaction(fr.M(r), R.one(), s) == fr.M(R.mul(r, s)));
      }
  }
}
