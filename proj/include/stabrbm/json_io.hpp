#pragma once

#include <string>

#include "json.hpp"
#include "stabrbm/analytic.hpp"
#include "stabrbm/lattice.hpp"
#include "stabrbm/optimize.hpp"
#include "stabrbm/pauli.hpp"
#include "stabrbm/rbm.hpp"

namespace stabrbm {

nlohmann::json group_to_json(const StabilizerGroup& g);
StabilizerGroup group_from_json(const nlohmann::json& j);

nlohmann::json geometry_to_json(const LatticeCode& code);

// RBM files carry format tag "stabrbm-rbm-v1"; complex numbers as [re, im].
nlohmann::json rbm_to_json(const RbmState& s);
RbmState rbm_from_json(const nlohmann::json& j);

nlohmann::json spec_to_json(const LatticeSpec& spec);
LatticeSpec spec_from_json(const nlohmann::json& j);

nlohmann::json report_to_json(const FitReport& r);
nlohmann::json recipe_to_json(const AnalyticRecipe& r);

std::string fnv1a_file(const std::string& path);

void write_json(const nlohmann::json& j, const std::string& path);
nlohmann::json read_json(const std::string& path);

}  // namespace stabrbm
