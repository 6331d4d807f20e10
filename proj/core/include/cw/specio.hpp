#pragma once

#include <json.hpp>

#include "cw/codes.hpp"
#include "cw/presets.hpp"
#include "cw/series.hpp"

namespace cw {

using json = nlohmann::json;
using ojson = nlohmann::ordered_json;

RingSpec parse_ring_spec(const json& j);
ojson ring_spec_json(const RingSpec& s);

/// Accepts a preset name (string) or a full form-ring object
/// {"ring":..., "module":"regular", "beta":..., "phi_generators":[...]}
/// where beta / phi entries are formula ids or explicit "p/q" tables.
std::shared_ptr<const FormRing> parse_formring(const json& j);
ojson formring_json(const std::string& preset_name);

/// {"formring": ..., "length": N, "rows": [[literals]]}
Code parse_code(const json& j);
ojson code_json(const std::string& preset_name);

Elem parse_element_literal(const FiniteRing& R, const json& lit);
std::string element_literal(const FiniteRing& R, Elem e);

ojson sparsepoly_json(const SparsePoly& p);
ojson series_json(const RatSeries& s);

} // namespace cw
