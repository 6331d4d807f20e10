#include "cw/specio.hpp"

#include <algorithm>
#include <cctype>

namespace cw {

RingSpec parse_ring_spec(const json& j) {
  if (!j.is_object() || !j.contains("kind")) fail(Err::BadSpec, "ring spec must have a kind");
  std::string kind = j.at("kind").get<std::string>();
  if (kind == "Zn") return RingSpec::Zn(j.at("n").get<int64_t>());
  if (kind == "GF") {
    std::vector<int64_t> poly;
    if (j.contains("poly")) poly = j.at("poly").get<std::vector<int64_t>>();
    return RingSpec::GF(j.at("p").get<int64_t>(), j.at("f").get<int64_t>(), std::move(poly));
  }
  if (kind == "MatRing")
    return RingSpec::MatRing(j.at("m").get<int>(), parse_ring_spec(j.at("base")));
  if (kind == "QuaternionicU") return RingSpec::QuaternionicU(j.at("q").get<int64_t>());
  if (kind == "DirectProduct") {
    std::vector<RingSpec> factors;
    for (const auto& f : j.at("factors")) factors.push_back(parse_ring_spec(f));
    return RingSpec::DirectProduct(std::move(factors));
  }
  fail(Err::BadSpec, "unknown ring kind " + kind);
}

ojson ring_spec_json(const RingSpec& s) {
  ojson j;
  switch (s.kind) {
    case RingSpec::Kind::Zn:
      j["kind"] = "Zn";
      j["n"] = s.n;
      break;
    case RingSpec::Kind::GF:
      j["kind"] = "GF";
      j["p"] = s.p;
      j["f"] = s.f;
      j["poly"] = s.poly;
      break;
    case RingSpec::Kind::MatRing:
      j["kind"] = "MatRing";
      j["m"] = s.m;
      j["base"] = ring_spec_json(s.sub[0]);
      break;
    case RingSpec::Kind::QuaternionicU:
      j["kind"] = "QuaternionicU";
      j["q"] = s.q;
      break;
    case RingSpec::Kind::DirectProduct: {
      j["kind"] = "DirectProduct";
      ojson arr = ojson::array();
      for (const auto& f : s.sub) arr.push_back(ring_spec_json(f));
      j["factors"] = arr;
      break;
    }
  }
  return j;
}

namespace {

std::vector<QZ> parse_qz_list(const json& arr) {
  std::vector<QZ> out;
  for (const auto& v : arr) {
    if (v.is_number_integer()) {
      out.emplace_back(v.get<int64_t>(), 1);
    } else {
      Rat r = parse_rat(v.get<std::string>());
      out.emplace_back(r.num, r.den);
    }
  }
  return out;
}

BilForm parse_beta(const std::shared_ptr<const FiniteModule>& mod, const json& j) {
  if (j.is_string()) return presets::beta_formula(mod, j.get<std::string>());
  if (j.contains("formula")) return presets::beta_formula(mod, j.at("formula").get<std::string>());
  if (j.contains("table")) {
    std::vector<QZ> table;
    for (const auto& row : j.at("table")) {
      auto r = parse_qz_list(row);
      table.insert(table.end(), r.begin(), r.end());
    }
    return make_bilform(mod, std::move(table));
  }
  fail(Err::BadSpec, "beta must be a formula id or a table");
}

QuadMap parse_phi(const std::shared_ptr<const FiniteModule>& mod, const json& j) {
  if (j.is_string()) return presets::phi_formula(mod, j.get<std::string>());
  if (j.contains("formula")) return presets::phi_formula(mod, j.at("formula").get<std::string>());
  if (j.contains("table")) return make_quadmap(mod, parse_qz_list(j.at("table")));
  fail(Err::BadSpec, "phi must be a formula id or a table");
}

// literal term grammar: [coeff] ['w' ['^' exp]] ['u']
struct Term {
  int64_t coeff = 1;
  int64_t wexp = -1; // -1: no w factor
  bool u = false;
};

std::vector<std::pair<int, Term>> tokenize_literal(const std::string& s) {
  std::vector<std::pair<int, Term>> terms; // sign, term
  size_t i = 0;
  auto skip_ws = [&] { while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i; };
  skip_ws();
  int sign = 1;
  if (i < s.size() && (s[i] == '+' || s[i] == '-')) {
    sign = s[i] == '-' ? -1 : 1;
    ++i;
  }
  while (i < s.size()) {
    Term t;
    bool have_coeff = false;
    skip_ws();
    size_t start = i;
    while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i;
    if (i > start) {
      t.coeff = std::stoll(s.substr(start, i - start));
      have_coeff = true;
    }
    skip_ws();
    if (i < s.size() && s[i] == 'w') {
      ++i;
      t.wexp = 1;
      if (i < s.size() && s[i] == '^') {
        ++i;
        size_t es = i;
        while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i;
        if (i == es) fail(Err::BadSpec, "missing exponent in literal");
        t.wexp = std::stoll(s.substr(es, i - es));
      }
    }
    skip_ws();
    if (i < s.size() && s[i] == 'u') {
      ++i;
      t.u = true;
    }
    if (!have_coeff && t.wexp < 0 && !t.u) fail(Err::BadSpec, "empty term in literal '" + s + "'");
    terms.emplace_back(sign, t);
    skip_ws();
    if (i == s.size()) break;
    if (s[i] == '+') sign = 1;
    else if (s[i] == '-') sign = -1;
    else fail(Err::BadSpec, "unexpected character in literal '" + s + "'");
    ++i;
  }
  return terms;
}

Elem gf_w_power(const FiniteRing& F, int64_t e) {
  // w = the residue-class of x
  int f = F.num_gens();
  std::vector<int64_t> r(f, 0);
  if (f == 1) fail(Err::BadSpec, "'w' literal needs an extension field");
  r[f - 2] = 1; // coefficient of x^1
  Elem w = F.from_residues(r);
  return F.pow(w, static_cast<uint64_t>(e));
}

} // namespace

Elem parse_element_literal(const FiniteRing& R, const json& lit) {
  const auto& spec = R.spec();
  if (lit.is_number_integer()) {
    int64_t v = lit.get<int64_t>();
    if (spec.kind == RingSpec::Kind::Zn || spec.kind == RingSpec::Kind::GF) {
      if (spec.kind == RingSpec::Kind::Zn) return R.zmul(v, R.one());
      // prime-subfield value
      return R.zmul(v, R.one());
    }
    return R.zmul(v, R.one());
  }
  if (lit.is_array()) {
    if (spec.kind == RingSpec::Kind::MatRing) {
      auto base = R.mat_base();
      std::vector<Elem> entries;
      for (const auto& row : lit)
        for (const auto& e : row) entries.push_back(parse_element_literal(*base, e));
      if (static_cast<int>(entries.size()) != R.mat_dim() * R.mat_dim())
        fail(Err::BadSpec, "matrix literal has wrong shape");
      return R.mat_from_entries(entries);
    }
    fail(Err::BadSpec, "array literal for a non-matrix ring");
  }
  std::string s = lit.get<std::string>();
  auto terms = tokenize_literal(s);
  Elem acc = R.zero();
  for (const auto& [sign, t] : terms) {
    Elem val;
    if (spec.kind == RingSpec::Kind::Zn) {
      if (t.wexp >= 0 || t.u) fail(Err::BadSpec, "'w'/'u' literal over Zn");
      val = R.zmul(t.coeff, R.one());
    } else if (spec.kind == RingSpec::Kind::GF) {
      if (t.u) fail(Err::BadSpec, "'u' literal over a field");
      val = t.wexp >= 0 ? gf_w_power(R, t.wexp) : R.one();
      val = R.zmul(t.coeff, val);
    } else if (spec.kind == RingSpec::Kind::QuaternionicU) {
      // field part: w-power embedded in the a-slot; u moves it to the b-slot
      int64_t q = spec.q;
      int64_t p = 2;
      while (q % p != 0) ++p;
      int e2 = 0;
      for (int64_t t2 = q; t2 > 1; t2 /= p) ++e2;
      auto F = FiniteRing::construct(RingSpec::GF(p, 2 * e2));
      Elem fv = t.wexp >= 0 ? gf_w_power(*F, t.wexp) : F->one();
      auto fres = F->residues(F->zmul(t.coeff, fv));
      std::vector<int64_t> res(R.num_gens(), 0);
      int kf = F->num_gens();
      for (int i = 0; i < kf; ++i) res[(t.u ? kf : 0) + i] = fres[i];
      val = R.from_residues(res);
    } else {
      fail(Err::BadSpec, "string literal unsupported for this ring kind");
    }
    acc = sign > 0 ? R.add(acc, val) : R.sub(acc, val);
  }
  return acc;
}

std::string element_literal(const FiniteRing& R, Elem e) {
  const auto& spec = R.spec();
  if (spec.kind == RingSpec::Kind::Zn) return std::to_string(e);
  if (spec.kind == RingSpec::Kind::GF) {
    auto r = R.residues(e);
    int f = R.num_gens();
    std::string out;
    for (int i = 0; i < f; ++i) {
      int64_t c = r[i];
      if (c == 0) continue;
      int64_t pw = f - 1 - i;
      std::string term;
      if (pw == 0) term = std::to_string(c);
      else {
        if (c != 1) term = std::to_string(c);
        term += "w";
        if (pw > 1) term += "^" + std::to_string(pw);
      }
      if (!out.empty()) out += "+";
      out += term;
    }
    return out.empty() ? "0" : out;
  }
  if (spec.kind == RingSpec::Kind::QuaternionicU) {
    int64_t q = spec.q;
    int64_t p = 2;
    while (q % p != 0) ++p;
    int e2 = 0;
    for (int64_t t2 = q; t2 > 1; t2 /= p) ++e2;
    auto F = FiniteRing::construct(RingSpec::GF(p, 2 * e2));
    auto r = R.residues(e);
    int kf = F->num_gens();
    std::vector<int64_t> ares(r.begin(), r.begin() + kf);
    Elem a = F->from_residues(ares);
    std::string out;
    if (a != F->zero()) out = element_literal(*F, a);
    // u-part printed term by term: (c1 w^e1 + ...) u = c1 w^e1 u + ...
    for (int i = 0; i < kf; ++i) {
      int64_t c = r[kf + i];
      if (c == 0) continue;
      int64_t pw = kf - 1 - i;
      std::string term;
      if (c != 1) term = std::to_string(c);
      if (pw == 1) term += "w";
      else if (pw > 1) term += "w^" + std::to_string(pw);
      term += "u";
      if (!out.empty()) out += "+";
      out += term;
    }
    return out.empty() ? "0" : out;
  }
  fail(Err::BadSpec, "no literal syntax for this ring kind");
}

std::shared_ptr<const FormRing> parse_formring(const json& j) {
  if (j.is_string()) return presets::formring(j.get<std::string>());
  auto ring = FiniteRing::construct(parse_ring_spec(j.at("ring")));
  if (j.contains("module") && j.at("module") != "regular")
    fail(Err::BadSpec, "only the regular module is supported in spec files");
  auto mod = FiniteModule::regular(ring);
  BilForm beta = parse_beta(mod, j.at("beta"));
  std::vector<QuadMap> gens;
  for (const auto& p : j.at("phi_generators")) gens.push_back(parse_phi(mod, p));
  std::string name = j.contains("name") ? j.at("name").get<std::string>() : "custom";
  return std::make_shared<FormRing>(
      FormRing::validate(ring, mod, std::move(beta), std::move(gens), name));
}

ojson formring_json(const std::string& name) {
  auto fr = presets::formring(name);
  ojson j;
  j["name"] = name;
  j["ring"] = ring_spec_json(fr->ring()->spec());
  j["module"] = "regular";
  j["beta"] = ojson{{"formula", presets::beta_formula_id(name)}};
  ojson phis = ojson::array();
  for (const auto& id : presets::phi_formula_ids(name)) phis.push_back(ojson{{"formula", id}});
  j["phi_generators"] = phis;
  return j;
}

Code parse_code(const json& j) {
  auto fr = parse_formring(j.at("formring"));
  int N = j.at("length").get<int>();
  std::vector<std::vector<Elem>> rows;
  for (const auto& row : j.at("rows")) {
    std::vector<Elem> r;
    for (const auto& lit : row) r.push_back(parse_element_literal(*fr->ring(), lit));
    if (static_cast<int>(r.size()) != N) fail(Err::BadSpec, "row length mismatch");
    rows.push_back(std::move(r));
  }
  return Code(fr, std::move(rows));
}

ojson code_json(const std::string& name) {
  Code c = presets::code(name);
  ojson j;
  j["name"] = name;
  j["formring"] = presets::code_formring(name);
  j["length"] = c.length();
  ojson rows = ojson::array();
  for (const auto& row : c.rows()) {
    ojson r = ojson::array();
    for (Elem e : row) r.push_back(element_literal(*c.form_ring().ring(), e));
    rows.push_back(r);
  }
  j["rows"] = rows;
  return j;
}

ojson sparsepoly_json(const SparsePoly& p) {
  ojson j;
  j["nvars"] = p.nvars;
  j["degree"] = p.degree;
  ojson terms = ojson::array();
  for (const auto& [k, v] : p.terms) {
    if (v == 0) continue;
    ojson t;
    t["exps"] = k;
    t["coeff"] = v;
    terms.push_back(t);
  }
  j["terms"] = terms;
  return j;
}

ojson series_json(const RatSeries& s) {
  ojson j;
  j["degree"] = s.degree();
  ojson coeffs = ojson::array();
  for (const auto& c : s.coeffs()) coeffs.push_back(BigRat(c).get_str());
  j["coefficients"] = coeffs;
  if (s.closed_form()) {
    ojson cf;
    ojson num = ojson::array();
    for (const auto& c : s.closed_form()->numerator) num.push_back(BigRat(c).get_str());
    cf["numerator"] = num;
    cf["denominator_exponents"] = s.closed_form()->den_exponents;
    j["closed_form"] = cf;
  } else {
    j["closed_form"] = nullptr;
  }
  return j;
}

} // namespace cw
