#pragma once

#include <memory>
#include <string>
#include <vector>

#include "cw/codes.hpp"
#include "cw/qform.hpp"

namespace cw {

struct PresetInfo {
  std::string name;
  std::string kind; // "formring" or "code"
  std::string detail;
};

namespace presets {

std::vector<PresetInfo> list();
bool is_formring(const std::string& name);
bool is_code(const std::string& name);

/// Built-in form rings: binary-II, F4-even, F8-even, Z4-rho-a, Z4-rho-b,
/// Z2f-rho-a(f), Z2f-rho-b(f), F4u.
std::shared_ptr<const FormRing> formring(const std::string& name);

/// Built-in codes: Q4, d8, d8-prime, c16, d16, e8-hamming, octacode-QR7,
/// e8-prime, QR23-Z4.  Each is attached to its designated form ring.
Code code(const std::string& name);
/// Name of the designated form ring of a code preset.
std::string code_formring(const std::string& name);

/// Formula vocabulary shared with the spec files.
BilForm beta_formula(const std::shared_ptr<const FiniteModule>& mod, const std::string& id);
QuadMap phi_formula(const std::shared_ptr<const FiniteModule>& mod, const std::string& id);
std::string beta_formula_id(const std::string& formring_name);
std::vector<std::string> phi_formula_ids(const std::string& formring_name);

} // namespace presets

} // namespace cw
