// cwtool: exact computations with form rings, Clifford-Weil groups, and
// self-dual code weight enumerators.  All output is exact JSON.

#include <CLI11.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>

#include "cw/cwgroup.hpp"
#include "cw/hypco.hpp"
#include "cw/presets.hpp"
#include "cw/specio.hpp"

namespace fs = std::filesystem;
using namespace cw;

namespace {

struct Config {
  int threads = 1;
  uint64_t seed = 0x5eedc0de;
  int samples = 40;
  uint64_t cap_group = 10'000'000;
  uint64_t cap_enum = (1ull << 28);
  std::string cache_dir;
  std::string out;
};

json load_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(Err::BadSpec, "cannot open " + path);
  json j;
  in >> j;
  return j;
}

// preset name or a path to a spec file
std::shared_ptr<const FormRing> resolve_formring(const std::string& arg) {
  if (presets::is_formring(arg)) return presets::formring(arg);
  if (fs::exists(arg)) return parse_formring(load_json(arg));
  fail(Err::UnknownPreset, arg + " is neither a form-ring preset nor a file");
}

Code resolve_code(const std::string& arg, const std::string& formring_override) {
  Code c = [&] {
    if (presets::is_code(arg)) return presets::code(arg);
    if (fs::exists(arg)) return parse_code(load_json(arg));
    fail(Err::UnknownPreset, arg + " is neither a code preset nor a file");
  }();
  if (formring_override.empty()) return c;
  auto fr = resolve_formring(formring_override);
  return Code(fr, c.rows());
}

std::string sanitize(const std::string& s) {
  std::string out;
  for (char c : s)
    out += (std::isalnum(static_cast<unsigned char>(c)) || c == '-' || c == '_') ? c : '_';
  return out;
}

MatrixGroup build_cached(const Config& cfg, const std::string& fr_arg,
                         const std::shared_ptr<const FormRing>& fr, int genus) {
  std::string dir = cfg.cache_dir;
  if (dir.empty()) {
    const char* env = std::getenv("CWTOOL_CACHE_DIR");
    if (env) dir = env;
  }
  if (!dir.empty() && presets::is_formring(fr_arg)) {
    fs::path p = fs::path(dir) / (sanitize(fr_arg) + "-g" + std::to_string(genus) + ".cwgd");
    if (fs::exists(p)) {
      std::ifstream in(p, std::ios::binary);
      return MatrixGroup::load(in);
    }
    MatrixGroup G = build_group(*fr, genus, cfg.cap_group);
    fs::create_directories(dir);
    std::ofstream outp(p, std::ios::binary);
    G.dump(outp);
    return G;
  }
  return build_group(*fr, genus, cfg.cap_group);
}

void emit(const Config& cfg, const ojson& j) {
  std::string text = j.dump(2) + "\n";
  if (cfg.out.empty()) {
    std::cout << text;
  } else {
    std::ofstream o(cfg.out);
    o << text;
  }
}

std::vector<std::vector<int>> resolve_orbits(const std::string& arg, const FormRing& fr) {
  if (arg == "units") return unit_orbits(fr);
  if (arg == "singletons") {
    std::vector<std::vector<int>> o;
    for (size_t v = 0; v < fr.module()->size(); ++v) o.push_back({static_cast<int>(v)});
    return o;
  }
  auto j = load_json(arg);
  std::vector<std::vector<int>> o;
  for (const auto& orb : j) o.push_back(orb.get<std::vector<int>>());
  return o;
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact Clifford-Weil group and weight enumerator computations"};
  app.require_subcommand(1);

  Config cfg;
  app.add_option("--threads", cfg.threads, "worker threads for Molien summation");
  app.add_option("--seed", cfg.seed, "seed for sampled checks and random words");
  app.add_option("--samples", cfg.samples, "evaluation points in sampled invariance mode");
  app.add_option("--cap-group", cfg.cap_group, "group closure element cap");
  app.add_option("--cap-enum", cfg.cap_enum, "codeword enumeration cap");
  app.add_option("--cache-dir", cfg.cache_dir, "group dump cache (or CWTOOL_CACHE_DIR)");
  app.add_option("--out", cfg.out, "write JSON output to a file instead of stdout");

  auto* sc_formring = app.add_subcommand("formring", "form ring operations");
  auto* sc_validate = sc_formring->add_subcommand("validate", "validate a form ring");
  std::string fr_arg;
  sc_validate->add_option("formring", fr_arg, "preset name or spec file")->required();

  auto* sc_group = app.add_subcommand("group", "Clifford-Weil group operations");
  std::string g_fr;
  int g_genus = 1;
  int g_degree = 24;
  std::string g_rationalize, g_orbits = "units";
  auto* sc_build = sc_group->add_subcommand("build", "close the group and report its order");
  sc_build->add_option("formring", g_fr)->required();
  sc_build->add_option("--genus", g_genus);
  auto* sc_molien = sc_group->add_subcommand("molien", "Molien series of the group");
  sc_molien->add_option("formring", g_fr)->required();
  sc_molien->add_option("--genus", g_genus);
  sc_molien->add_option("--degree", g_degree)->required();
  sc_molien->add_option("--rationalize", g_rationalize,
                        "comma-separated denominator exponents d1,d2,...");
  auto* sc_center = sc_group->add_subcommand("center", "order of the scalar center");
  sc_center->add_option("formring", g_fr)->required();
  sc_center->add_option("--genus", g_genus);
  auto* sc_symm = sc_group->add_subcommand("symmetrize", "compress variables along orbits");
  sc_symm->add_option("formring", g_fr)->required();
  sc_symm->add_option("--genus", g_genus);
  sc_symm->add_option("--orbits", g_orbits, "'units', 'singletons', or a JSON file");

  auto* sc_code = app.add_subcommand("code", "code operations");
  std::string c_code, c_fr;
  int c_genus = 1;
  auto* sc_cwe = sc_code->add_subcommand("cwe", "complete weight enumerator");
  sc_cwe->add_option("--code", c_code)->required();
  sc_cwe->add_option("--formring", c_fr, "override the designated form ring");
  sc_cwe->add_option("--genus", c_genus);
  auto* sc_ct = sc_code->add_subcommand("check-type", "self-dual + isotropic check");
  sc_ct->add_option("--code", c_code)->required();
  sc_ct->add_option("--formring", c_fr);

  auto* sc_inv = app.add_subcommand("invariance", "invariance of weight enumerators");
  auto* sc_invc = sc_inv->add_subcommand("check", "check cwe invariance under the group");
  std::string i_code, i_fr, i_mode = "symbolic";
  int i_genus = 1, i_elements = 50;
  sc_invc->add_option("--code", i_code)->required();
  sc_invc->add_option("--formring", i_fr);
  sc_invc->add_option("--genus", i_genus);
  sc_invc->add_option("--mode", i_mode)->check(CLI::IsMember({"symbolic", "sampled"}));
  sc_invc->add_option("--elements", i_elements, "random group elements in sampled mode");

  auto* sc_hypco = app.add_subcommand("hypco", "hyperbolic co-unitary group");
  auto* sc_analyze = sc_hypco->add_subcommand("analyze", "orders and projection structure");
  std::string h_fr;
  bool h_with_group = false;
  sc_analyze->add_option("formring", h_fr)->required();
  sc_analyze->add_flag("--with-group", h_with_group, "also verify |C| = |Z| |U|");

  auto* sc_preset = app.add_subcommand("preset", "built-in objects");
  auto* sc_list = sc_preset->add_subcommand("list", "list presets");
  auto* sc_export = sc_preset->add_subcommand("export", "write spec files for a preset");
  std::string p_name, p_dir = ".";
  sc_export->add_option("name", p_name)->required();
  sc_export->add_option("--dir", p_dir);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2; // usage errors exit 2, --help exits 0
  }

  try {
    if (*sc_validate) {
      auto fr = resolve_formring(fr_arg);
      ojson j;
      j["name"] = fr->name();
      j["valid"] = true;
      j["ring"] = fr->ring()->name();
      j["ring_size"] = fr->ring()->size();
      j["module_size"] = fr->module()->size();
      j["phi_size"] = fr->phi().size();
      j["ker_lambda"] = fr->ker_lambda_size();
      j["eps"] = element_literal(*fr->ring(), fr->eps());
      bool trivial_J = true;
      for (Elem r = 0; r < fr->ring()->size(); ++r)
        if (fr->J(r) != r) trivial_J = false;
      j["J_trivial"] = trivial_J;
      j["conductor"] = fr->conductor();
      j["symmetric_idempotents"] = symmetric_idempotents(*fr).size();
      emit(cfg, j);
      return 0;
    }
    if (*sc_build || *sc_center) {
      auto fr = resolve_formring(g_fr);
      MatrixGroup G = build_cached(cfg, g_fr, fr, g_genus);
      ojson j;
      j["formring"] = fr->name();
      j["genus"] = g_genus;
      j["dimension"] = G.dim();
      j["conductor"] = G.ring()->conductor();
      j["order"] = G.order();
      j["scalar_center"] = scalar_center(G);
      emit(cfg, j);
      return 0;
    }
    if (*sc_molien) {
      auto fr = resolve_formring(g_fr);
      MatrixGroup G = build_cached(cfg, g_fr, fr, g_genus);
      RatSeries s = molien(G, g_degree, cfg.threads);
      if (!g_rationalize.empty()) {
        std::vector<int64_t> dens;
        std::string tok;
        for (char ch : g_rationalize + ",") {
          if (ch == ',') {
            if (!tok.empty()) dens.push_back(std::stoll(tok));
            tok.clear();
          } else {
            tok += ch;
          }
        }
        s = s.rationalize(dens);
      }
      ojson j;
      j["formring"] = fr->name();
      j["genus"] = g_genus;
      j["order"] = G.order();
      j["molien"] = series_json(s);
      emit(cfg, j);
      return 0;
    }
    if (*sc_symm) {
      auto fr = resolve_formring(g_fr);
      MatrixGroup G = build_cached(cfg, g_fr, fr, g_genus);
      auto orbits = resolve_orbits(g_orbits, *fr);
      MatrixGroup S = symmetrize(G, orbits, cfg.cap_group);
      ojson j;
      j["formring"] = fr->name();
      j["orbits"] = orbits;
      j["degree"] = S.dim();
      j["order"] = S.order();
      emit(cfg, j);
      return 0;
    }
    if (*sc_cwe) {
      Code c = resolve_code(c_code, c_fr);
      SparsePoly p = c_genus == 1 ? cwe(c, cfg.cap_enum) : cwe_m(c, c_genus, cfg.cap_enum);
      ojson j;
      j["code"] = c_code;
      j["genus"] = c_genus;
      j["cardinality"] = c.size();
      j["cwe"] = sparsepoly_json(p);
      emit(cfg, j);
      return 0;
    }
    if (*sc_ct) {
      Code c = resolve_code(c_code, c_fr);
      auto rep = dual_and_selfdual_check(c);
      bool iso = isotropy_check(c);
      ojson j;
      j["code"] = c_code;
      j["formring"] = c.form_ring().name();
      j["self_orthogonal"] = rep.self_orthogonal;
      j["self_dual"] = rep.self_dual;
      j["isotropic"] = iso;
      j["type"] = rep.self_dual && iso;
      emit(cfg, j);
      return (rep.self_dual && iso) ? 0 : 1;
    }
    if (*sc_invc) {
      Code c = resolve_code(i_code, i_fr);
      auto fr = c.form_ring_ptr();
      std::string fr_name =
          i_fr.empty() ? (presets::is_code(i_code) ? presets::code_formring(i_code) : "custom")
                       : i_fr;
      MatrixGroup G = build_cached(cfg, fr_name, fr, i_genus);
      SparsePoly p = i_genus == 1 ? cwe(c, cfg.cap_enum) : cwe_m(c, i_genus, cfg.cap_enum);
      bool ok = true;
      int checked = 0;
      if (i_mode == "symbolic") {
        for (const auto& g : G.generators()) {
          ok = ok && invariance_check(p, g);
          ++checked;
        }
      } else {
        InvarianceOptions opt;
        opt.mode = InvarianceMode::Sampled;
        opt.samples = cfg.samples;
        opt.seed = cfg.seed;
        uint64_t s = cfg.seed;
        for (int t = 0; t < i_elements && ok; ++t) {
          s += 0x9e3779b97f4a7c15ULL;
          uint64_t z = s;
          z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
          z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
          z ^= z >> 31;
          ok = ok && invariance_check(p, G.element(z % G.order()), opt);
          ++checked;
        }
      }
      ojson j;
      j["code"] = i_code;
      j["mode"] = i_mode;
      j["checked"] = checked;
      j["invariant"] = ok;
      emit(cfg, j);
      return ok ? 0 : 1;
    }
    if (*sc_analyze) {
      auto fr = resolve_formring(h_fr);
      HypCo U(fr);
      auto cl = U.closure();
      ojson j;
      j["formring"] = fr->name();
      j["order"] = cl.order;
      j["ker_pi"] = cl.ker_pi_order;
      j["pi_image"] = cl.pi_image_order;
      j["ker_lambda"] = fr->ker_lambda_size();
      if (h_with_group) {
        MatrixGroup G = build_cached(cfg, h_fr, fr, 1);
        auto rep = projective_consistency(*fr, G);
        j["group_order"] = rep.c_order;
        j["scalar_center"] = rep.center_order;
        j["order_consistent"] = rep.order_ok;
        j["words_consistent"] = rep.words_ok;
        j["word_collisions"] = rep.collisions;
        emit(cfg, j);
        return (rep.order_ok && rep.words_ok) ? 0 : 1;
      }
      emit(cfg, j);
      return 0;
    }
    if (*sc_list) {
      ojson arr = ojson::array();
      for (const auto& info : presets::list()) {
        ojson e;
        e["name"] = info.name;
        e["kind"] = info.kind;
        e["detail"] = info.detail;
        arr.push_back(e);
      }
      ojson j;
      j["presets"] = arr;
      emit(cfg, j);
      return 0;
    }
    if (*sc_export) {
      fs::create_directories(p_dir);
      ojson j;
      if (presets::is_formring(p_name)) {
        fs::path p = fs::path(p_dir) / (sanitize(p_name) + ".formring.json");
        std::ofstream o(p);
        o << formring_json(p_name).dump(2) << "\n";
        j["written"] = ojson::array({p.string()});
      } else if (presets::is_code(p_name)) {
        fs::path pc = fs::path(p_dir) / (sanitize(p_name) + ".code.json");
        std::ofstream o(pc);
        o << code_json(p_name).dump(2) << "\n";
        fs::path pf =
            fs::path(p_dir) / (sanitize(presets::code_formring(p_name)) + ".formring.json");
        std::ofstream of(pf);
        of << formring_json(presets::code_formring(p_name)).dump(2) << "\n";
        j["written"] = ojson::array({pc.string(), pf.string()});
      } else {
        fail(Err::UnknownPreset, p_name);
      }
      emit(cfg, j);
      return 0;
    }
    std::cerr << "no subcommand selected\n";
    return 2;
  } catch (const Error& e) {
    ojson j;
    j["error"] = err_name(e.code());
    j["message"] = e.what();
    emit(cfg, j);
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
