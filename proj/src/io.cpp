#include "kimgold/io.hpp"

#include <stdexcept>

namespace kimgold {

using nlohmann::json;

uint32_t parse_encoding(const std::string& s) {
  if (s.empty()) throw std::invalid_argument("empty element");
  size_t pos = 0;
  unsigned long v = 0;
  try {
    v = std::stoul(s, &pos, 0);  // base 0: decimal or 0x-prefixed hex
  } catch (const std::exception&) {
    throw std::invalid_argument("cannot parse element '" + s + "'");
  }
  if (pos != s.size()) throw std::invalid_argument("cannot parse element '" + s + "'");
  if (v > 0xFFFFFFFFul) throw std::invalid_argument("element out of range: " + s);
  return static_cast<uint32_t>(v);
}

json ctx_to_json(const FieldCtx& F) {
  return json{{"m", F.m()}, {"fq_poly", F.fq_poly()}, {"nu", F.nu()}};
}

FieldCtx ctx_from_json(const json& j) {
  return FieldCtx(j.at("m").get<int>(), j.at("fq_poly").get<uint32_t>(),
                  j.at("nu").get<uint32_t>());
}

json coeffs_to_json(const KimCoeffs& k) {
  return json{{"a1", k.a1.v}, {"a2", k.a2.v}, {"a3", k.a3.v}};
}

KimCoeffs coeffs_from_json(const FieldCtx& F, const json& j) {
  return KimCoeffs{F.element(j.at("a1").get<uint32_t>()),
                   F.element(j.at("a2").get<uint32_t>()),
                   F.element(j.at("a3").get<uint32_t>())};
}

json linmap_to_json(const LinMap& l) {
  json arr = json::array();
  for (const Elem c : l.coeffs) arr.push_back(c.v);
  return arr;
}

LinMap linmap_from_json(const FieldCtx& F, const json& j) {
  if (!j.is_array()) throw std::invalid_argument("linear map must be a JSON array");
  std::vector<Elem> coeffs;
  coeffs.reserve(j.size());
  for (const auto& c : j) coeffs.push_back(F.element(c.get<uint32_t>()));
  return lin_from_coeffs(F, std::move(coeffs));
}

const char* to_string(GoldTarget t) { return t == GoldTarget::G1 ? "G1" : "G2"; }

json witness_to_json(const FieldCtx& F, const EquivWitness& w) {
  return json{{"target", to_string(w.target)},
              {"L1", linmap_to_json(w.l1)},
              {"L2", linmap_to_json(w.l2)},
              {"source", coeffs_to_json(w.source)},
              {"field_ctx", ctx_to_json(F)}};
}

WitnessFile witness_from_json(const json& j) {
  FieldCtx ctx = ctx_from_json(j.at("field_ctx"));
  EquivWitness w;
  const std::string target = j.at("target").get<std::string>();
  if (target == "G1")
    w.target = GoldTarget::G1;
  else if (target == "G2")
    w.target = GoldTarget::G2;
  else
    throw std::invalid_argument("unknown target '" + target + "'");
  w.l1 = linmap_from_json(ctx, j.at("L1"));
  w.l2 = linmap_from_json(ctx, j.at("L2"));
  w.source = coeffs_from_json(ctx, j.at("source"));
  return WitnessFile{std::move(ctx), std::move(w)};
}

json gamma_to_json(const FieldCtx& F, const KimCoeffs& k, const GammaReport& rep) {
  return json{{"field_ctx", ctx_to_json(F)},
              {"coeffs", coeffs_to_json(k)},
              {"theta1", rep.thetas.t1.v},
              {"theta2", rep.thetas.t2.v},
              {"theta3", rep.thetas.t3.v},
              {"theta4", rep.thetas.t4.v},
              {"trace_ok", rep.trace_ok},
              {"gamma1", rep.gamma1},
              {"gamma2", rep.gamma2},
              {"apn", rep.apn}};
}

json classify_to_json(const FieldCtx& F, const ClassifyResult& r) {
  json route = json::array();
  for (const Rule rule : r.route) route.push_back(to_string(rule));
  json out{{"status", r.status == ClassifyResult::Status::APN ? "APN" : "NotAPN"},
           {"route", route},
           {"field_ctx", ctx_to_json(F)}};
  if (r.target) out["target"] = to_string(*r.target);
  if (r.witness) out["witness"] = witness_to_json(F, *r.witness);
  return out;
}

}  // namespace kimgold
