#pragma once

#include <cstdint>

#include "kimgold/kim.hpp"
#include "kimgold/linmap.hpp"

namespace kimgold {

enum class GoldTarget { G1, G2 };  // x^3 and x^(2^(m-1)+1)

uint64_t gold_exponent(const FieldCtx& F, GoldTarget t);
Elem gold_eval(const FieldCtx& F, GoldTarget t, Elem x);

/// A checkable claim target(x) = L1(f(L2(x))) for all x, with f the
/// Kim-type function given by source and L1, L2 bijective. Both maps are
/// linear; there is no affine part anywhere in the constructions this tool
/// emits, so the format carries none.
struct EquivWitness {
  GoldTarget target = GoldTarget::G1;
  LinMap l1, l2;
  KimCoeffs source;
};

/// True iff both maps are bijective (full rank) and the pointwise identity
/// holds: exhaustive over the field for 2m <= 16, a 10^6-point deterministic
/// sample above that (bijectivity is still proven by rank).
bool verify_witness(const FieldCtx& F, const EquivWitness& w);

}  // namespace kimgold
