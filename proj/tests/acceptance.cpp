// Acceptance suite: every criterion prints one PASS/FAIL line; the process
// exits nonzero if any criterion fails.  Run with --extended for the long
// F8 computation.

#include <chrono>
#include <cstring>
#include <iostream>
#include <vector>

#include "cw/codes.hpp"
#include "cw/cwgroup.hpp"
#include "cw/hypco.hpp"
#include "cw/presets.hpp"

using namespace cw;

namespace {

int g_pass = 0, g_fail = 0;
std::chrono::steady_clock::time_point g_t0;

void report(int criterion, const std::string& what, bool ok) {
  auto now = std::chrono::steady_clock::now();
  double secs = std::chrono::duration<double>(now - g_t0).count();
  std::printf("%s criterion %d: %s  [t=%.1fs]\n", ok ? "PASS" : "FAIL", criterion, what.c_str(),
              secs);
  std::fflush(stdout);
  ++(ok ? g_pass : g_fail);
}

struct GroupSet {
  std::shared_ptr<const FormRing> fr;
  MatrixGroup G;
};

GroupSet make(const char* name, int genus = 1) {
  auto fr = presets::formring(name);
  return {fr, build_group(*fr, genus)};
}

bool series_matches(const RatSeries& got, const std::vector<BigRat>& num,
                    const std::vector<int64_t>& dens) {
  RatSeries want = expand_closed_form(num, dens, got.degree());
  for (int k = 0; k <= got.degree(); ++k)
    if (got.at(k) != want.at(k)) return false;
  return true;
}

std::vector<BigRat> sparse_numerator(const std::vector<std::pair<int, long>>& entries) {
  int deg = 0;
  for (const auto& [d, c] : entries) deg = std::max(deg, d);
  std::vector<BigRat> num(deg + 1);
  for (const auto& [d, c] : entries) num[d] = c;
  return num;
}

// ---- criterion 6 helpers ----

// all generator matrices with up to `maxrows` rows over the regular module
template <typename F>
void all_small_codes(const std::shared_ptr<const FormRing>& fr, int maxlen, int maxrows, F&& cb) {
  size_t q = fr->ring()->size();
  for (int N = 1; N <= maxlen; ++N) {
    // one row
    std::vector<Elem> row(N, 0);
    while (true) {
      cb(Code(fr, {row}));
      int t = N - 1;
      while (t >= 0) {
        if (++row[t] == q) row[t--] = 0;
        else break;
      }
      if (t < 0) break;
    }
    if (maxrows < 2) continue;
    std::vector<Elem> two(2 * N, 0);
    while (true) {
      std::vector<Elem> r1(two.begin(), two.begin() + N);
      std::vector<Elem> r2(two.begin() + N, two.end());
      cb(Code(fr, {r1, r2}));
      int t = 2 * N - 1;
      while (t >= 0) {
        if (++two[t] == q) two[t--] = 0;
        else break;
      }
      if (t < 0) break;
    }
  }
}

// ---- criterion 8 helpers ----

bool qmodule_identities_hold(const FormRing& fr) {
  const auto& R = *fr.ring();
  std::vector<BilForm> bils;
  for (Elem r = 0; r < R.size(); ++r) bils.push_back(fr.M(r));
  bils.push_back(fr.beta());
  for (const auto& b : bils) {
    if (!(brace(tau(b)) == brace(b))) return false;
    if (!(lambda_of(brace(b)) == bil_add(b, tau(b)))) return false;
    QuadMap br = brace(b);
    if (!(brace(lambda_of(br)) == quad_add(br, br))) return false;
  }
  for (const auto& phi : fr.phi()) {
    BilForm l = lambda_of(phi);
    if (!(tau(l) == l)) return false;
    if (!(lambda_of(brace(l)) == bil_add(l, l))) return false;
    for (Elem r = 0; r < R.size(); ++r)
      for (Elem s = 0; s < R.size(); ++s) {
        QuadMap lhs = qaction(phi, R.add(r, s));
        QuadMap sub = quad_add(qaction(phi, r), qaction(phi, s));
        for (auto& qv : sub.table) qv = QZ(0, 1) - qv;
        lhs = quad_add(lhs, sub);
        if (!(lhs == brace(bilaction(l, r, s)))) return false;
      }
  }
  // eps and J
  if (R.mul(fr.J(fr.eps()), fr.eps()) != R.one()) return false;
  for (Elem r = 0; r < R.size(); ++r)
    for (Elem s = 0; s < R.size(); ++s)
      if (fr.J(R.mul(r, s)) != R.mul(fr.J(s), fr.J(r))) return false;
  return true;
}

int64_t sp2_bruteforce(int64_t n) {
  // 2x2 matrices with A^tr J A = J over Z/n reduce to det A = 1
  int64_t count = 0;
  for (int64_t a = 0; a < n; ++a)
    for (int64_t b = 0; b < n; ++b)
      for (int64_t c = 0; c < n; ++c)
        for (int64_t d = 0; d < n; ++d)
          if (((a * d - b * c) % n + n) % n == 1) ++count;
  return count;
}

uint64_t splitmix(uint64_t& s) {
  s += 0x9e3779b97f4a7c15ULL;
  uint64_t z = s;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

} // namespace

int main(int argc, char** argv) {
  bool extended = false;
  int threads = 4;
  for (int i = 1; i < argc; ++i) {
    if (std::strcmp(argv[i], "--extended") == 0) extended = true;
    if (std::strcmp(argv[i], "--threads") == 0 && i + 1 < argc) threads = std::atoi(argv[i + 1]);
  }
  g_t0 = std::chrono::steady_clock::now();

  // shared groups
  GroupSet rho_a = make("Z4-rho-a");
  GroupSet rho_b = make("Z4-rho-b");
  GroupSet f4 = make("F4-even");
  GroupSet bin1 = make("binary-II");
  GroupSet f4u = make("F4u");

  // ---- criterion 1: group orders ----
  report(1, "|C(rho_a)| = 1536", rho_a.G.order() == 1536);
  report(1, "|C(rho_b)| = 6144", rho_b.G.order() == 6144);
  report(1, "|C(F4-even)| = 3840 (index 2 in a group of order 7680)", f4.G.order() == 3840);
  report(1, "binary genus-1 order 192", bin1.G.order() == 192);
  {
    auto bin2 = build_group(*bin1.fr, 2);
    report(1, "binary genus-2 order 92160 = 8*2^4*|Sp4(F2)|", bin2.order() == 92160);
  }
  report(1, "F4+F4u group order 96", f4u.G.order() == 96);

  // ---- criterion 2: scalar centers ----
  report(2, "binary-II center Z_8", scalar_center(bin1.G) == 8);
  report(2, "F4-even center Z_4", scalar_center(f4.G) == 4);
  report(2, "rho_a center Z_8", scalar_center(rho_a.G) == 8);
  report(2, "rho_b center Z_8", scalar_center(rho_b.G) == 8);

  // ---- criterion 3: Molien series ----
  report(3, "binary-II Molien = 1/((1-t^8)(1-t^24)) to degree 64",
         series_matches(molien(bin1.G, 64, threads), {BigRat(1)}, {8, 24}));
  report(3, "F4-even Molien = (1+t^40)/((1-t^4)(1-t^8)(1-t^12)(1-t^20)) to degree 64",
         series_matches(molien(f4.G, 64, threads), sparse_numerator({{0, 1}, {40, 1}}),
                        {4, 8, 12, 20}));
  report(3, "rho_a Molien = (1+t^8)(1+t^16)^2/((1-t^8)^3(1-t^24)) to degree 64",
         series_matches(molien(rho_a.G, 64, threads),
                        sparse_numerator({{0, 1}, {8, 1}, {16, 2}, {24, 2}, {32, 1}, {40, 1}}),
                        {8, 8, 8, 24}));
  report(3, "rho_b Molien = (1+t^16)(1+t^32)/((1-t^8)^2(1-t^16)(1-t^24)) to degree 64",
         series_matches(molien(rho_b.G, 64, threads),
                        sparse_numerator({{0, 1}, {16, 1}, {32, 1}, {48, 1}}), {8, 8, 16, 24}));
  {
    std::vector<long> printed = {1,     1,      4,      3,      53,     104,    458,    858,
                                 2474,  4839,   10667,  19018,  34193,  55481,  86078,  125990,
                                 173466, 230402, 287430, 346462, 393648, 431930, 450648, 450648,
                                 431930, 393648, 346462, 287430, 230402, 173466, 125990, 86078,
                                 55481,  34193,  19018,  10667,  4839,   2474,   858,    458,
                                 104,    53,     3,      4,      1,      1};
    std::vector<std::pair<int, long>> entries;
    for (int d = 0; d < static_cast<int>(printed.size()); ++d) entries.push_back({d, printed[d]});
    std::vector<int64_t> dens = {2, 2, 2, 2, 2, 3, 4, 4, 4, 4, 4, 4, 6, 6, 6, 6};
    report(3, "F4+F4u Molien matches the printed f(t)/g(t) to degree 45",
           series_matches(molien(f4u.G, 45, threads), sparse_numerator(entries), dens));
  }

  // ---- criterion 5: weight enumerator invariance ----
  {
    struct CodeCase {
      const char* code;
      const char* ring;
    };
    for (const CodeCase& cc :
         {CodeCase{"Q4", "F4-even"}, CodeCase{"d8", "Z4-rho-b"}, CodeCase{"d8-prime", "Z4-rho-a"},
          CodeCase{"c16", "Z4-rho-b"}, CodeCase{"d16", "Z4-rho-b"},
          CodeCase{"e8-hamming", "binary-II"}}) {
      Code c = presets::code(cc.code);
      SparsePoly p = cwe(c);
      const MatrixGroup& G = std::string(cc.ring) == "F4-even"    ? f4.G
                             : std::string(cc.ring) == "Z4-rho-b" ? rho_b.G
                             : std::string(cc.ring) == "Z4-rho-a" ? rho_a.G
                                                                  : bin1.G;
      bool sym = true;
      for (const auto& g : G.generators()) sym = sym && invariance_check(p, g);
      bool samp = true;
      InvarianceOptions opt;
      opt.mode = InvarianceMode::Sampled;
      opt.samples = 40;
      uint64_t seed = 0xacce97ed;
      for (int t = 0; t < 50 && samp; ++t)
        samp = invariance_check(p, G.element(splitmix(seed) % G.order()), opt);
      report(5, std::string("cwe(") + cc.code + ") invariant under " + cc.ring +
                    " generators (symbolic) and 50 elements (sampled)",
             sym && samp);
    }
  }

  // ---- criterion 6: even <=> isotropic equivalence ----
  {
    bool ok = true;
    long checked = 0;
    auto run = [&](const char* ring, int maxlen) {
      auto fr = presets::formring(ring);
      all_small_codes(fr, maxlen, 2, [&](const Code& c) {
        auto rep = dual_and_selfdual_check(c);
        if (!rep.self_orthogonal) return;
        ++checked;
        bool even = even_code_check(c);
        if (even != isotropy_check(c)) ok = false;
        if (rep.self_dual && even != check_type(c)) ok = false;
      });
    };
    run("binary-II", 6);
    run("F4-even", 4);
    report(6, "even <=> isotropic on " + std::to_string(checked) +
                  " self-orthogonal small codes (F2 len<=6, F4 len<=4)",
           ok && checked > 1000);
  }

  // ---- criterion 7: MacWilliams identity suite ----
  {
    bool ok = true;
    long checked = 0;
    for (int64_t n : {2, 3, 4}) {
      auto R = FiniteRing::construct(RingSpec::Zn(n));
      auto V = FiniteModule::regular(R);
      std::vector<QZ> bt(n * n);
      for (int64_t x = 0; x < n; ++x)
        for (int64_t y = 0; y < n; ++y) bt[x * n + y] = QZ(x * y, n);
      std::vector<QZ> p(n);
      for (int64_t x = 0; x < n; ++x) p[x] = QZ(x * x, n);
      auto fr = std::make_shared<FormRing>(FormRing::validate(
          R, V, make_bilform(V, std::move(bt)), {make_quadmap(V, std::move(p))},
          "Z" + std::to_string(n) + "-euclidean"));
      all_small_codes(fr, 3, 2, [&](const Code& c) {
        ++checked;
        if (!macwilliams_verify(c)) ok = false;
      });
    }
    report(7, "MacWilliams identity on all " + std::to_string(checked) +
                  " codes of length <= 3 with <= 2 rows over Z/2, Z/3, Z/4",
           ok && checked > 4000);
  }

  // ---- criterion 8: form ring identities ----
  {
    bool ok = true;
    for (const char* name :
         {"binary-II", "F4-even", "F8-even", "Z4-rho-a", "Z4-rho-b", "F4u"}) {
      if (!qmodule_identities_hold(*presets::formring(name))) {
        ok = false;
        std::printf("  identity failure in %s\n", name);
      }
    }
    report(8, "qmodule calculus identities + eps/J laws on all presets with |V| <= 16", ok);
  }

  // ---- criterion 9: hyperbolic consistency ----
  {
    struct HCase {
      const char* name;
      const GroupSet* gs;
    };
    bool all_ok = true;
    for (const HCase& hc : {HCase{"binary-II", &bin1}, HCase{"F4-even", &f4},
                            HCase{"Z4-rho-a", &rho_a}, HCase{"Z4-rho-b", &rho_b},
                            HCase{"F4u", &f4u}}) {
      auto rep = projective_consistency(*hc.gs->fr, hc.gs->G);
      bool ok = rep.order_ok && rep.words_ok && rep.collisions >= 10;
      if (!ok) all_ok = false;
      report(9, std::string("|C| = |Z| |U| and projective words for ") + hc.name +
                    " (|U| = " + std::to_string(rep.u_order) + ")",
             ok);
    }
    // ker pi = |ker lambda|^2 is asserted inside every closure; check the
    // symplectic image orders for the Z/4 presets against brute force
    HypCo Ua(rho_a.fr), Ub(rho_b.fr);
    auto ca = Ua.closure(), cb = Ub.closure();
    int64_t sp24 = sp2_bruteforce(4);
    report(9, "pi images of rho_a and rho_b equal |Sp_2(Z/4)| = 48 (brute force)",
           sp24 == 48 && ca.pi_image_order == 48 && cb.pi_image_order == 48 &&
               ca.ker_pi_order == 4 && cb.ker_pi_order == 16);
    (void)all_ok;
  }

  // ---- criterion 10: symmetrization ----
  {
    auto orbits = unit_orbits(*f4u.fr);
    auto S = symmetrize(f4u.G, orbits);
    report(10, "F4+F4u symmetrized by R* has degree 3 and order 8 (D8)",
           S.dim() == 3 && S.order() == 8);
    std::vector<std::vector<int>> singles;
    for (int v = 0; v < bin1.G.dim(); ++v) singles.push_back({v});
    auto I = symmetrize(bin1.G, singles);
    bool same = I.order() == bin1.G.order();
    for (size_t i = 0; i < I.order() && same; i += 7) same = bin1.G.contains(I.element(i));
    report(10, "singleton-orbit symmetrization is the identity transformation", same);
  }

  // ---- criterion 4 (extended): F8 ----
  if (extended) {
    auto f8 = presets::formring("F8-even");
    auto G8 = build_group(*f8);
    report(4, "|C(F8-even)| = 258048 = 8*2^6*|Sp_2(F_8)|", G8.order() == 258048);
    report(4, "F8-even center Z_8", scalar_center(G8) == 8);
    std::vector<std::pair<int, long>> entries = {
        {0, 1},    {16, 5},    {24, 77},   {32, 300},  {40, 908},  {48, 2139}, {56, 3808},
        {64, 5864}, {72, 8257}, {80, 10456}, {88, 12504}, {96, 14294}, {104, 15115},
        {112, 15115}, {120, 14294}, {128, 12504}, {136, 10456}, {144, 8257}, {152, 5864},
        {160, 3808}, {168, 2139}, {176, 908}, {184, 300}, {192, 77}, {200, 5}, {216, 1}};
    std::vector<int64_t> dens = {8, 8, 16, 16, 24, 24, 56, 72};
    report(4, "F8-even Molien matches the printed f(t)/g(t) to degree 216",
           series_matches(molien(G8, 216, threads), sparse_numerator(entries), dens));
    auto rep = projective_consistency(*f8, G8);
    report(4, "F8-even |C| = |Z| |U| (|U| = " + std::to_string(rep.u_order) + ")",
           rep.order_ok && rep.words_ok);
    Code qr23 = presets::code("QR23-Z4");
    report(4, "lifted QR(23) over Z/4 is of Type rho_b", check_type(qr23));
  }

  std::printf("SUMMARY: %d passed, %d failed\n", g_pass, g_fail);
  return g_fail == 0 ? 0 : 1;
}
