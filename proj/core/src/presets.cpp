#include "cw/presets.hpp"

#include <algorithm>
#include <map>
#include <mutex>

namespace cw {
namespace presets {

namespace {

// ---- Galois ring GR(4,f) = Z4[y]/(H), H the 0/1 lift of the field polynomial

struct GR4 {
  int f;
  std::vector<int64_t> H; // ascending, monic, coefficients in {0,1}
  using E = std::vector<int64_t>;

  E reduce(E a) const {
    while (static_cast<int>(a.size()) > f) {
      int da = static_cast<int>(a.size()) - 1;
      int64_t c = a[da] & 3;
      if (c != 0)
        for (int i = 0; i <= f; ++i) a[da - f + i] = (a[da - f + i] - c * H[i]) & 3;
      a.pop_back();
    }
    a.resize(f, 0);
    for (auto& x : a) x &= 3;
    return a;
  }
  E mul(const E& a, const E& b) const {
    E c(2 * f - 1, 0);
    for (int i = 0; i < f; ++i)
      for (int j = 0; j < f; ++j) c[i + j] = (c[i + j] + a[i] * b[j]) & 3;
    return reduce(std::move(c));
  }
  E pow(E a, uint64_t k) const {
    E r(f, 0);
    r[0] = 1;
    while (k) {
      if (k & 1) r = mul(r, a);
      a = mul(a, a);
      k >>= 1;
    }
    return r;
  }
  // Teichmuller representative of a field element given by its F_2
  // coefficients (ascending): tau(z) = lift(z)^(q^2)
  E teichmuller(const std::vector<int64_t>& bits) const {
    E z(bits.begin(), bits.end());
    z.resize(f, 0);
    uint64_t q = 1ull << f;
    return pow(z, q * q);
  }
  // trace of a Teichmuller element: sum of its 2^i-th powers, a Z4 scalar
  int64_t trace_teich(const E& t) const {
    E acc(f, 0);
    E cur = t;
    for (int i = 0; i < f; ++i) {
      for (int j = 0; j < f; ++j) acc[j] = (acc[j] + cur[j]) & 3;
      cur = mul(cur, cur);
    }
    for (int j = 1; j < f; ++j)
      if (acc[j] != 0) fail(Err::AxiomViolation, "Galois-ring trace is not scalar");
    return acc[0];
  }
};

// field element (index in the descending-power basis order) -> ascending bits
std::vector<int64_t> gf2_bits(const FiniteRing& F, Elem x) {
  auto r = F.residues(x); // r[i] multiplies x^(f-1-i)
  int f = F.num_gens();
  std::vector<int64_t> bits(f);
  for (int i = 0; i < f; ++i) bits[f - 1 - i] = r[i];
  return bits;
}

int64_t gf2_trace(const FiniteRing& F, Elem x) {
  // trace to F_2 via Frobenius powers
  Elem acc = F.zero();
  Elem cur = x;
  for (int i = 0; i < F.num_gens(); ++i) {
    acc = F.add(acc, cur);
    cur = F.mul(cur, cur);
  }
  if (acc != F.zero() && acc != F.one()) fail(Err::AxiomViolation, "trace not in F2");
  return acc == F.zero() ? 0 : 1;
}

std::shared_ptr<const FormRing> build_gf2f_even(int f) {
  auto R = f == 1 ? FiniteRing::construct(RingSpec::Zn(2))
                  : FiniteRing::construct(RingSpec::GF(2, f));
  auto V = FiniteModule::regular(R);
  size_t n = R->size();
  std::vector<QZ> bt(n * n);
  for (Elem x = 0; x < n; ++x)
    for (Elem y = 0; y < n; ++y)
      bt[static_cast<size_t>(x) * n + y] = QZ(gf2_trace(*R, R->mul(x, y)), 2);

  GR4 gr;
  gr.f = f;
  if (f == 1) {
    gr.H = {1, 1}; // placeholder, never used for f = 1 (y + 1)
  } else {
    gr.H = R->spec().poly;
  }
  std::vector<QZ> p1(n);
  for (Elem x = 0; x < n; ++x) {
    if (f == 1) {
      p1[x] = QZ(x == 1 ? 1 : 0, 4); // tau(1)^2 = 1, Tr = 1
    } else {
      auto t = gr.teichmuller(gf2_bits(*R, x));
      p1[x] = QZ(gr.trace_teich(gr.mul(t, t)), 4);
    }
  }
  std::string name = f == 1 ? "binary-II" : "F" + std::to_string(1 << f) + "-even";
  return std::make_shared<FormRing>(FormRing::validate(
      R, V, make_bilform(V, std::move(bt)), {make_quadmap(V, std::move(p1))}, name));
}

std::shared_ptr<const FormRing> build_z2f(int f, bool rho_b) {
  int64_t n = 1;
  for (int i = 0; i < f; ++i) n *= 2;
  auto R = FiniteRing::construct(RingSpec::Zn(n));
  auto V = FiniteModule::regular(R);
  std::vector<QZ> bt(n * n);
  for (int64_t x = 0; x < n; ++x)
    for (int64_t y = 0; y < n; ++y) bt[x * n + y] = QZ(x * y, n);
  std::vector<QuadMap> gens;
  std::vector<QZ> p0(n);
  for (int64_t x = 0; x < n; ++x) p0[x] = QZ(x * x, 2 * n);
  gens.push_back(make_quadmap(V, std::move(p0)));
  if (rho_b) {
    std::vector<QZ> lin(n);
    for (int64_t x = 0; x < n; ++x) lin[x] = QZ(x, n);
    gens.push_back(make_quadmap(V, std::move(lin)));
  }
  std::string name = (n == 4 ? std::string("Z4") : "Z" + std::to_string(n)) +
                     (rho_b ? "-rho-b" : "-rho-a");
  return std::make_shared<FormRing>(
      FormRing::validate(R, V, make_bilform(V, std::move(bt)), std::move(gens), name));
}

std::shared_ptr<const FormRing> build_f4u() {
  auto R = FiniteRing::construct(RingSpec::QuaternionicU(2));
  auto F = FiniteRing::construct(RingSpec::GF(2, 2));
  auto V = FiniteModule::regular(R);
  size_t n = R->size();
  size_t q2 = F->size();
  auto apart = [&](Elem x) { return static_cast<Elem>(x / q2); };
  auto bpart = [&](Elem x) { return static_cast<Elem>(x % q2); };
  std::vector<QZ> bt(n * n);
  for (Elem x = 0; x < n; ++x)
    for (Elem y = 0; y < n; ++y) {
      // beta(x, y) = Tr(y_a x_b - x_a y_b)/2
      int64_t tr = gf2_trace(*F, F->mul(apart(y), bpart(x))) +
                   gf2_trace(*F, F->mul(apart(x), bpart(y)));
      bt[static_cast<size_t>(x) * n + y] = QZ(tr, 2);
    }
  std::vector<QZ> p0(n);
  for (Elem x = 0; x < n; ++x) {
    // phi_0(a+bu) = Tr_{F_q/F_p}(a a^q)/p; for q = 2 this is Norm(a)/2
    Elem a = apart(x);
    Elem norm = F->mul(a, F->mul(a, a));
    p0[x] = QZ(norm == F->one() ? 1 : 0, 2);
  }
  return std::make_shared<FormRing>(FormRing::validate(
      R, V, make_bilform(V, std::move(bt)), {make_quadmap(V, std::move(p0))}, "F4u"));
}

// ---- quadratic-residue lifts over Z4 (Graeffe/Hensel) ----

// G(x^2) = (-1)^deg g(x) g(-x) mod 4, the Hensel lift of g to Z4
std::vector<int64_t> graeffe_lift(const std::vector<int64_t>& g) {
  int d = static_cast<int>(g.size()) - 1;
  std::vector<int64_t> gm(g); // g(-x)
  for (int i = 1; i <= d; i += 2) gm[i] = (4 - gm[i] % 4) % 4;
  std::vector<int64_t> prod(2 * d + 1, 0);
  for (int i = 0; i <= d; ++i)
    for (int j = 0; j <= d; ++j) prod[i + j] = (prod[i + j] + g[i] * gm[j]) % 4;
  for (int i = 1; i < 2 * d; i += 2)
    if (prod[i] % 4 != 0) fail(Err::AxiomViolation, "Graeffe product is not even");
  std::vector<int64_t> G(d + 1);
  for (int i = 0; i <= d; ++i)
    G[i] = (d % 2 == 1 ? (4 - prod[2 * i] % 4) % 4 : prod[2 * i] % 4);
  return G;
}

// rows x^i G mod (x^p - 1) over Z4, extended by the negative coordinate sum
std::vector<std::vector<Elem>> qr_lift_rows(int64_t p, const std::vector<int64_t>& g2) {
  auto G = graeffe_lift(g2);
  int d = static_cast<int>(G.size()) - 1;
  int k = static_cast<int>(p) - d;
  std::vector<std::vector<Elem>> rows;
  for (int i = 0; i < k; ++i) {
    std::vector<int64_t> coeffs(p, 0);
    for (int j = 0; j <= d; ++j) coeffs[(i + j) % p] = (coeffs[(i + j) % p] + G[j]) % 4;
    int64_t s = 0;
    for (auto c : coeffs) s += c;
    std::vector<Elem> row(coeffs.begin(), coeffs.end());
    row.push_back(static_cast<Elem>((4 - s % 4) % 4));
    rows.push_back(std::move(row));
  }
  return rows;
}

std::vector<std::vector<Elem>> scale_column(std::vector<std::vector<Elem>> rows, int col,
                                            int64_t factor, int64_t n) {
  for (auto& r : rows) r[col] = static_cast<Elem>(r[col] * factor % n);
  return rows;
}

// ---- registry ----

std::mutex g_mutex;
std::map<std::string, std::shared_ptr<const FormRing>> g_formrings;

struct CodeDef {
  const char* ring;
  std::vector<std::vector<Elem>> (*rows)();
};

std::vector<std::vector<Elem>> q4_rows() {
  return {{1, 1, 1, 1}, {0, 1, 2, 3}}; // (1,1,1,1), (0,1,w,w^2)
}

std::vector<std::vector<Elem>> d8_rows() {
  return {{1, 3, 1, 0, 0, 1, 0, 2},
          {1, 3, 0, 1, 0, 2, 1, 0},
          {1, 3, 0, 0, 1, 0, 2, 1},
          {2, 2, 0, 0, 0, 0, 0, 0},
          {2, 0, 2, 2, 2, 0, 0, 0}};
}

std::vector<std::vector<Elem>> c16_rows() {
  const char* rows[11] = {
      "1111111111111111", "1011111100001000", "1101001111000100", "1110101010100010",
      "0000111111100001", "0000020000022002", "0000002000022222", "0000000200002202",
      "0000000020000222", "0000000002020202", "0000000000220022"};
  std::vector<std::vector<Elem>> out;
  for (const char* r : rows) {
    std::vector<Elem> row;
    for (const char* p = r; *p; ++p) row.push_back(static_cast<Elem>(*p - '0'));
    out.push_back(std::move(row));
  }
  return out;
}

std::vector<std::vector<Elem>> d16_rows() {
  return {{1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1},
          {1, 1, 1, 0, 0, 0, 0, 0, 2, 3, 0, 0, 0, 0, 0, 0},
          {1, 1, 0, 1, 0, 0, 0, 0, 0, 2, 3, 0, 0, 0, 0, 0},
          {1, 1, 0, 0, 1, 0, 0, 0, 2, 2, 2, 3, 0, 0, 0, 0},
          {1, 1, 0, 0, 0, 1, 0, 0, 0, 2, 2, 2, 3, 0, 0, 0},
          {1, 1, 0, 0, 0, 0, 1, 0, 2, 2, 2, 2, 2, 3, 0, 0},
          {1, 1, 0, 0, 0, 0, 0, 1, 0, 2, 2, 2, 2, 2, 3, 0},
          {1, 0, 1, 1, 1, 1, 1, 1, 0, 2, 2, 2, 2, 2, 2, 1}};
}

std::vector<std::vector<Elem>> e8_hamming_rows() {
  // RM(1,3): the extended [8,4,4] Hamming code
  return {{1, 1, 1, 1, 1, 1, 1, 1},
          {0, 1, 0, 1, 0, 1, 0, 1},
          {0, 0, 1, 1, 0, 0, 1, 1},
          {0, 0, 0, 0, 1, 1, 1, 1}};
}

std::vector<std::vector<Elem>> octacode_rows() {
  return qr_lift_rows(7, {1, 1, 0, 1}); // x^3+x+1
}

std::vector<std::vector<Elem>> octacode_prime_rows() {
  return scale_column(octacode_rows(), 0, 3, 4);
}

std::vector<std::vector<Elem>> d8_prime_rows() {
  return scale_column(d8_rows(), 0, 3, 4);
}

std::vector<std::vector<Elem>> qr23_rows() {
  // x^11+x^9+x^7+x^6+x^5+x+1, a quadratic-residue factor of x^23-1 over F2
  return qr_lift_rows(23, {1, 1, 0, 0, 0, 1, 1, 1, 0, 1, 0, 1});
}

const std::map<std::string, CodeDef>& code_defs() {
  static const std::map<std::string, CodeDef> defs = {
      {"Q4", {"F4-even", q4_rows}},
      {"d8", {"Z4-rho-b", d8_rows}},
      {"d8-prime", {"Z4-rho-a", d8_prime_rows}},
      {"c16", {"Z4-rho-b", c16_rows}},
      {"d16", {"Z4-rho-b", d16_rows}},
      {"e8-hamming", {"binary-II", e8_hamming_rows}},
      {"octacode-QR7", {"Z4-rho-b", octacode_rows}},
      {"e8-prime", {"Z4-rho-a", octacode_prime_rows}},
      {"QR23-Z4", {"Z4-rho-b", qr23_rows}},
  };
  return defs;
}

} // namespace

std::shared_ptr<const FormRing> formring(const std::string& name) {
  std::lock_guard<std::mutex> lock(g_mutex);
  auto it = g_formrings.find(name);
  if (it != g_formrings.end()) return it->second;
  std::shared_ptr<const FormRing> fr;
  if (name == "binary-II") fr = build_gf2f_even(1);
  else if (name == "F4-even") fr = build_gf2f_even(2);
  else if (name == "F8-even") fr = build_gf2f_even(3);
  else if (name == "Z4-rho-a") fr = build_z2f(2, false);
  else if (name == "Z4-rho-b") fr = build_z2f(2, true);
  else if (name == "F4u") fr = build_f4u();
  else if (name.rfind("Z2f-rho-", 0) == 0 && name.size() > 10 && name[9] == '(' &&
           name.back() == ')') {
    int f = std::stoi(name.substr(10, name.size() - 11));
    if (f < 1 || f > 6) fail(Err::UnknownPreset, "f out of range in " + name);
    fr = build_z2f(f, name[8] == 'b');
  } else {
    fail(Err::UnknownPreset, name);
  }
  g_formrings.emplace(name, fr);
  return fr;
}

bool is_formring(const std::string& name) {
  if (name == "binary-II" || name == "F4-even" || name == "F8-even" || name == "Z4-rho-a" ||
      name == "Z4-rho-b" || name == "F4u")
    return true;
  return name.rfind("Z2f-rho-", 0) == 0;
}

bool is_code(const std::string& name) { return code_defs().count(name) > 0; }

Code code(const std::string& name) {
  auto it = code_defs().find(name);
  if (it == code_defs().end()) fail(Err::UnknownPreset, name);
  return Code(formring(it->second.ring), it->second.rows());
}

std::string code_formring(const std::string& name) {
  auto it = code_defs().find(name);
  if (it == code_defs().end()) fail(Err::UnknownPreset, name);
  return it->second.ring;
}

std::vector<PresetInfo> list() {
  std::vector<PresetInfo> out = {
      {"binary-II", "formring", "F2, beta=xy/2, Phi=<x^2/4>: doubly-even binary"},
      {"F4-even", "formring", "F4, beta=Tr(xy)/2, quarter-trace Phi: generalized doubly-even"},
      {"F8-even", "formring", "F8, beta=Tr(xy)/2, quarter-trace Phi: generalized doubly-even"},
      {"Z4-rho-a", "formring", "Z/4, beta=xy/4, Phi=<x^2/8>: doubly-even"},
      {"Z4-rho-b", "formring", "Z/4, beta=xy/4, Phi=<x^2/8, x/4>: doubly-even with all-ones"},
      {"Z2f-rho-a(f)", "formring", "Z/2^f family of Z4-rho-a"},
      {"Z2f-rho-b(f)", "formring", "Z/2^f family of Z4-rho-b"},
      {"F4u", "formring", "F4+F4u with u^2=0, ua=a^2u: quaternionic self-dual"},
  };
  for (const auto& [name, def] : code_defs())
    out.push_back({name, "code", std::string("code over ") + def.ring});
  return out;
}

BilForm beta_formula(const std::shared_ptr<const FiniteModule>& mod, const std::string& id) {
  const auto& R = *mod->ring();
  size_t n = mod->size();
  if (!mod->is_regular()) fail(Err::BadSpec, "beta formulas require the regular module");
  if (id == "xy-over-n") {
    if (R.spec().kind != RingSpec::Kind::Zn) fail(Err::BadSpec, "xy-over-n needs Zn");
    int64_t N = R.spec().n;
    std::vector<QZ> bt(n * n);
    for (int64_t x = 0; x < static_cast<int64_t>(n); ++x)
      for (int64_t y = 0; y < static_cast<int64_t>(n); ++y) bt[x * n + y] = QZ(x * y, N);
    return make_bilform(mod, std::move(bt), false);
  }
  if (id == "trace-half") {
    std::vector<QZ> bt(n * n);
    for (Elem x = 0; x < n; ++x)
      for (Elem y = 0; y < n; ++y)
        bt[static_cast<size_t>(x) * n + y] = QZ(gf2_trace(R, R.mul(x, y)), 2);
    return make_bilform(mod, std::move(bt), false);
  }
  if (id == "quaternionic") {
    if (R.spec().kind != RingSpec::Kind::QuaternionicU)
      fail(Err::BadSpec, "quaternionic beta needs a QuaternionicU ring");
    auto fr = build_f4u(); // only q=2 is preset
    if (R.size() != fr->ring()->size()) fail(Err::BadSpec, "only q=2 is built in");
    return fr->beta();
  }
  fail(Err::BadSpec, "unknown beta formula " + id);
}

QuadMap phi_formula(const std::shared_ptr<const FiniteModule>& mod, const std::string& id) {
  const auto& R = *mod->ring();
  size_t n = mod->size();
  if (!mod->is_regular()) fail(Err::BadSpec, "phi formulas require the regular module");
  if (id == "x2-over-2f+1") {
    if (R.spec().kind != RingSpec::Kind::Zn) fail(Err::BadSpec, "x2-over-2f+1 needs Zn");
    int64_t N = R.spec().n;
    std::vector<QZ> t(n);
    for (int64_t x = 0; x < static_cast<int64_t>(n); ++x) t[x] = QZ(x * x, 2 * N);
    return make_quadmap(mod, std::move(t), false);
  }
  if (id == "x-over-n") {
    if (R.spec().kind != RingSpec::Kind::Zn) fail(Err::BadSpec, "x-over-n needs Zn");
    int64_t N = R.spec().n;
    std::vector<QZ> t(n);
    for (int64_t x = 0; x < static_cast<int64_t>(n); ++x) t[x] = QZ(x, N);
    return make_quadmap(mod, std::move(t), false);
  }
  if (id == "teichmuller-trace-quarter") {
    if (R.spec().kind == RingSpec::Kind::Zn && R.spec().n == 2) {
      return QuadMap{mod, {QZ(0, 1), QZ(1, 4)}};
    }
    if (R.spec().kind != RingSpec::Kind::GF || R.spec().p != 2)
      fail(Err::BadSpec, "teichmuller-trace-quarter needs F_2^f");
    GR4 gr;
    gr.f = static_cast<int>(R.spec().f);
    gr.H = R.spec().poly;
    std::vector<QZ> t(n);
    for (Elem x = 0; x < n; ++x) {
      auto tx = gr.teichmuller(gf2_bits(R, x));
      t[x] = QZ(gr.trace_teich(gr.mul(tx, tx)), 4);
    }
    return make_quadmap(mod, std::move(t), false);
  }
  if (id == "quaternionic-norm") {
    auto fr = build_f4u();
    if (R.size() != fr->ring()->size()) fail(Err::BadSpec, "only q=2 is built in");
    return fr->phi()[fr->phi_gen_indices()[0]];
  }
  fail(Err::BadSpec, "unknown phi formula " + id);
}

std::string beta_formula_id(const std::string& name) {
  if (name == "binary-II" || name == "F4-even" || name == "F8-even") return "trace-half";
  if (name == "F4u") return "quaternionic";
  return "xy-over-n";
}

std::vector<std::string> phi_formula_ids(const std::string& name) {
  if (name == "binary-II" || name == "F4-even" || name == "F8-even")
    return {"teichmuller-trace-quarter"};
  if (name == "F4u") return {"quaternionic-norm"};
  if (name.find("rho-b") != std::string::npos) return {"x2-over-2f+1", "x-over-n"};
  return {"x2-over-2f+1"};
}

} // namespace presets
} // namespace cw
