#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "kimgold/witness.hpp"

namespace kimgold {

/// Rule tags recording which case of the decision procedure fired, in order.
enum class Rule {
  Normalize,
  P22,
  P23,
  P24,
  P25,
  P26Subfield,
  P26Family,
  P27,
  P28,
  SmallFieldIS,
  SmallFieldIT,
  SmallFieldII,
};

const char* to_string(Rule r);

struct ClassifyResult {
  enum class Status { NotAPN, APN };
  Status status = Status::NotAPN;
  std::optional<GoldTarget> target;
  std::optional<EquivWitness> witness;
  std::vector<Rule> route;
};

/// Degree-(q+2) shape c0 x^{3q} + c1 x^{2q+1} + c2 x^{q+2} + c3 x^3. The
/// family is closed under z -> z^q + t z on the left and under scaling,
/// which is what every reduction step in the pipeline uses.
struct KimQuartic {
  Elem c0, c1, c2, c3;
  friend bool operator==(const KimQuartic&, const KimQuartic&) = default;
};

Elem eval_quartic(const FieldCtx& F, const KimQuartic& f, Elem x);
/// Coefficients of x -> f(x)^q + t f(x).
KimQuartic conj_plus_applied(const FieldCtx& F, const KimQuartic& f, Elem t);
KimQuartic scaled(const FieldCtx& F, const KimQuartic& f, Elem s);

/// Smallest-encoding primitive cube root of unity in F_q; requires even m.
Elem primitive_cube_root(const FieldCtx& F);

/// Full decision procedure: normalize a1 into F_q, gate on the APN
/// predicate, then dispatch on a2 and the ratio a1/a2 until a verified
/// witness to one of the two Gold targets is produced. Every APN result
/// carries a witness that already passed verify_witness. check_fragments
/// additionally re-verifies each intermediate reduction pointwise.
ClassifyResult classify(const FieldCtx& F, const KimCoeffs& k,
                        bool check_fragments = false);

/// Elimination of the a2 term when a1/a2 is off the unit circle and differs
/// from a3^q: applies z -> z^q + (a1/a2) z, rescales monic, and re-normalizes
/// a1. Output satisfies a2 = 0, a1 in F_q, and kim(out.k) = left ∘ f ∘ right.
struct ReducedKim {
  KimCoeffs k;
  LinMap left;
  LinMap right;
};
ReducedKim reduce_a2_zero(const FieldCtx& F, const KimCoeffs& k);

/// Witness for the two-vanishing-coefficient cases (a2 = 0 and additionally
/// a1 = 0 or a3 = 0); the function must pass the APN predicate.
EquivWitness witness_g1_two_zero(const FieldCtx& F, const KimCoeffs& k);

/// Witness for APN functions with all three coefficients in F_q. Appends the
/// branch tags to *route when given.
EquivWitness smallfield_witness(const FieldCtx& F, const KimCoeffs& k,
                                std::vector<Rule>* route = nullptr);

/// Searches U x U (u^2 != z) for a pair reproducing the coefficients exactly;
/// requires a1/a2 in U. Absence is a legitimate outcome (the subfield
/// alternative must then hold, or the function is not APN).
std::optional<std::pair<Elem, Elem>> recover_uz(const FieldCtx& F, const KimCoeffs& k);

/// Witness to G2 built from a unit-circle pair (u, z) with u, z distinct,
/// u^2 != z, u^3 != z, and even m. The witness source is the coefficient
/// triple generated by the pair.
EquivWitness prop27_witness(const FieldCtx& F, Elem u, Elem z);

/// The a1/a2 = a3^q stratum: no APN function exists there, so the result is
/// always NotAPN; a predicate-positive input raises InvariantViolation.
ClassifyResult a3q_case(const FieldCtx& F, const KimCoeffs& k);

}  // namespace kimgold
