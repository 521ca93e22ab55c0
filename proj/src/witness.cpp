#include "kimgold/witness.hpp"

namespace kimgold {

uint64_t gold_exponent(const FieldCtx& F, GoldTarget t) {
  return t == GoldTarget::G1 ? 3ull : (1ull << (F.m() - 1)) + 1;
}

Elem gold_eval(const FieldCtx& F, GoldTarget t, Elem x) {
  if (t == GoldTarget::G1) return F.mul(F.sq(x), x);
  Elem s = x;
  for (int i = 1; i < F.m(); ++i) s = F.sq(s);  // x^(2^(m-1))
  return F.mul(s, x);
}

bool verify_witness(const FieldCtx& F, const EquivWitness& w) {
  if (!is_bijective(F, w.l1) || !is_bijective(F, w.l2)) return false;
  auto matches = [&](Elem x) {
    return gold_eval(F, w.target, x) ==
           apply(F, w.l1, eval_kim(F, w.source, apply(F, w.l2, x)));
  };
  if (2 * F.m() <= 16) {
    for (uint32_t x = 0; x < F.q2(); ++x)
      if (!matches(Elem{x})) return false;
    return true;
  }
  uint64_t s = 0xdeadbeefcafef00dull;
  for (int i = 0; i < 1'000'000; ++i) {
    s ^= s << 13;
    s ^= s >> 7;
    s ^= s << 17;
    if (!matches(Elem{static_cast<uint32_t>(s % F.q2())})) return false;
  }
  return true;
}

}  // namespace kimgold
