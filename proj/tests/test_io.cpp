#include <doctest.h>

#include "kimgold/io.hpp"

using namespace kimgold;
using nlohmann::json;

TEST_CASE("element parsing") {
  CHECK(parse_encoding("0") == 0);
  CHECK(parse_encoding("255") == 255);
  CHECK(parse_encoding("0x1D") == 29);
  CHECK_THROWS_AS(parse_encoding(""), std::invalid_argument);
  CHECK_THROWS_AS(parse_encoding("12x"), std::invalid_argument);
  CHECK_THROWS_AS(parse_encoding("hello"), std::invalid_argument);
}

TEST_CASE("context round-trip") {
  FieldCtx F(5);
  const FieldCtx G = ctx_from_json(ctx_to_json(F));
  CHECK(G.m() == F.m());
  CHECK(G.fq_poly() == F.fq_poly());
  CHECK(G.nu() == F.nu());
}

TEST_CASE("coefficients and maps round-trip") {
  FieldCtx F(4);
  const KimCoeffs k{Elem{1}, Elem{200}, Elem{77}};
  CHECK(coeffs_from_json(F, coeffs_to_json(k)) == k);
  CHECK_THROWS_AS(coeffs_from_json(F, json{{"a1", 999}, {"a2", 0}, {"a3", 0}}),
                  std::invalid_argument);

  const LinMap L = lin_conj_plus(F, Elem{5});
  CHECK(linmap_from_json(F, linmap_to_json(L)) == L);
  CHECK_THROWS_AS(linmap_from_json(F, json::array({1, 2, 3})), std::invalid_argument);
}

TEST_CASE("witness files round-trip and re-verify") {
  FieldCtx F(4);
  const ClassifyResult r = classify(F, KimCoeffs{kZero, kZero, Elem{4}});
  REQUIRE(r.status == ClassifyResult::Status::APN);
  const json j = witness_to_json(F, *r.witness);
  const WitnessFile wf = witness_from_json(j);
  CHECK(wf.ctx.m() == F.m());
  CHECK(wf.witness.source == r.witness->source);
  CHECK(verify_witness(wf.ctx, wf.witness));

  json broken = j;
  broken["target"] = "G3";
  CHECK_THROWS_AS(witness_from_json(broken), std::invalid_argument);
}

TEST_CASE("every witness at m = 4 survives a serialization round trip") {
  FieldCtx F(4);
  uint64_t total = 0;
  for (uint32_t a1 = 0; a1 < F.q(); ++a1)
    for (uint32_t a2 = 0; a2 < F.q2(); ++a2)
      for (uint32_t a3 = 0; a3 < F.q2(); ++a3) {
        const KimCoeffs k{Elem{a1}, Elem{a2}, Elem{a3}};
        if (!gamma_report(F, k).apn) continue;
        ++total;
        const ClassifyResult r = classify(F, k);
        const WitnessFile wf = witness_from_json(witness_to_json(F, *r.witness));
        if (!verify_witness(wf.ctx, wf.witness)) {
          REQUIRE(false);  // keep the failure count readable
        }
      }
  CHECK(total > 0);
}

TEST_CASE("classification report layout") {
  FieldCtx F(4);
  const KimCoeffs k{kZero, kZero, kZero};
  const json j = classify_to_json(F, classify(F, k));
  CHECK(j.at("status") == "APN");
  CHECK(j.at("target") == "G1");
  CHECK(j.at("route") == json::array({"P23"}));
  CHECK(j.contains("witness"));
  CHECK(j.at("field_ctx").at("m") == 4);

  const json n = classify_to_json(F, classify(F, KimCoeffs{kZero, kZero, kOne}));
  CHECK(n.at("status") == "NotAPN");
  CHECK_FALSE(n.contains("witness"));
}

TEST_CASE("rule tag strings") {
  CHECK(std::string(to_string(Rule::Normalize)) == "Normalize");
  CHECK(std::string(to_string(Rule::P26Subfield)) == "P26-subfield");
  CHECK(std::string(to_string(Rule::P26Family)) == "P26-family");
  CHECK(std::string(to_string(Rule::SmallFieldIS)) == "SmallField-i-S");
  CHECK(std::string(to_string(Rule::SmallFieldIT)) == "SmallField-i-T");
  CHECK(std::string(to_string(Rule::SmallFieldII)) == "SmallField-ii");
}

TEST_CASE("gamma report layout") {
  FieldCtx F(4);
  const KimCoeffs k{kZero, kZero, kZero};
  const json j = gamma_to_json(F, k, gamma_report(F, k));
  for (const char* key : {"theta1", "theta2", "theta3", "theta4", "trace_ok",
                          "gamma1", "gamma2", "apn"})
    CHECK(j.contains(key));
  CHECK(j.at("theta1") == 1);
  CHECK(j.at("apn") == true);
}
