#pragma once

#include <string>

#include <json.hpp>

#include "kimgold/equiv.hpp"

namespace kimgold {

/// Parses an element encoding given as decimal or 0x-prefixed hex.
uint32_t parse_encoding(const std::string& s);

nlohmann::json ctx_to_json(const FieldCtx& F);
FieldCtx ctx_from_json(const nlohmann::json& j);

nlohmann::json coeffs_to_json(const KimCoeffs& k);
KimCoeffs coeffs_from_json(const FieldCtx& F, const nlohmann::json& j);

nlohmann::json linmap_to_json(const LinMap& l);
LinMap linmap_from_json(const FieldCtx& F, const nlohmann::json& j);

const char* to_string(GoldTarget t);

/// Witness file layout: {target, L1, L2, source, field_ctx}.
nlohmann::json witness_to_json(const FieldCtx& F, const EquivWitness& w);
struct WitnessFile {
  FieldCtx ctx;
  EquivWitness witness;
};
WitnessFile witness_from_json(const nlohmann::json& j);

nlohmann::json gamma_to_json(const FieldCtx& F, const KimCoeffs& k, const GammaReport& rep);
nlohmann::json classify_to_json(const FieldCtx& F, const ClassifyResult& r);

}  // namespace kimgold
