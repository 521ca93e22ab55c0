#pragma once

#include "kimgold/field.hpp"
#include "kimgold/linmap.hpp"

namespace kimgold {

/// Coefficients of f(x) = x^{3q} + a1 x^{2q+1} + a2 x^{q+2} + a3 x^3 on
/// F_{q^2}. Immutable value type; no normalization is implied.
struct KimCoeffs {
  Elem a1, a2, a3;
  friend bool operator==(const KimCoeffs&, const KimCoeffs&) = default;
};

/// The four coefficient combinations entering the APN conditions:
///   t1 = 1 + a1^2 + a2 a2^q + a3 a3^q
///   t2 = a1 + a2^q a3
///   t3 = a2^q + a1 a3^q
///   t4 = a1^2 + a2 a2^q
/// t1 and t4 lie in F_q whenever a1 does (checked, not assumed).
struct Thetas {
  Elem t1, t2, t3, t4;
  friend bool operator==(const Thetas&, const Thetas&) = default;
};

struct GammaReport {
  Thetas thetas;
  bool theta1_nonzero = false;
  bool trace_ok = false;
  bool gamma1 = false;
  bool gamma2 = false;
  bool apn = false;
};

/// Evaluates f at x using the conjugate form x̄^3 + a1 x̄^2 x + a2 x̄ x^2
/// + a3 x^3 (products only, no generic exponentiation).
Elem eval_kim(const FieldCtx& F, const KimCoeffs& k, Elem x);

Thetas thetas(const FieldCtx& F, const KimCoeffs& k);

/// Membership report for the two coefficient sets characterizing APN
/// Kim-type functions, plus the resulting APN verdict (union of the sets
/// for even m, the first set alone for odd m). Requires m >= 4 and
/// a1 in F_q.
GammaReport gamma_report(const FieldCtx& F, const KimCoeffs& k);

bool in_gamma1(const FieldCtx& F, const KimCoeffs& k);
bool in_gamma2(const FieldCtx& F, const KimCoeffs& k);
bool is_apn_by_theorem(const FieldCtx& F, const KimCoeffs& k);

/// Result of moving a1 into the subfield by the substitution x -> c x with
/// the output rescaled monic: kim(k) = left ∘ f ∘ right pointwise.
struct NormalizedKim {
  KimCoeffs k;
  LinMap left;
  LinMap right;
  bool changed = false;
};

/// Replaces f by an affine-equivalent Kim-type function whose a1 lies in
/// F_q. Picks c with c^{q-1} equal to the unit part of a1, substitutes
/// x -> c x and rescales by c^{-3q}; a2 = 0 is preserved. The returned maps
/// are verified pointwise before returning (exhaustively for 2m <= 16).
NormalizedKim normalize_a1(const FieldCtx& F, const KimCoeffs& k);

}  // namespace kimgold
