#include "kimgold/kim.hpp"

#include <stdexcept>

namespace kimgold {

Elem eval_kim(const FieldCtx& F, const KimCoeffs& k, Elem x) {
  const Elem xb = F.conj(x);
  const Elem xb2 = F.sq(xb);
  const Elem x2 = F.sq(x);
  Elem acc = F.mul(xb2, xb);
  acc = F.add(acc, F.mul(k.a1, F.mul(xb2, x)));
  acc = F.add(acc, F.mul(k.a2, F.mul(xb, x2)));
  acc = F.add(acc, F.mul(k.a3, F.mul(x2, x)));
  return acc;
}

Thetas thetas(const FieldCtx& F, const KimCoeffs& k) {
  Thetas t;
  t.t1 = F.add(F.add(kOne, F.sq(k.a1)), F.add(F.norm(k.a2), F.norm(k.a3)));
  t.t2 = F.add(k.a1, F.mul(F.conj(k.a2), k.a3));
  t.t3 = F.add(F.conj(k.a2), F.mul(k.a1, F.conj(k.a3)));
  t.t4 = F.add(F.sq(k.a1), F.norm(k.a2));
  if (F.in_subfield(k.a1)) {
    if (!F.in_subfield(t.t1) || !F.in_subfield(t.t4))
      throw InvariantViolation("theta1/theta4 left the subfield with a1 in F_q");
  }
  return t;
}

GammaReport gamma_report(const FieldCtx& F, const KimCoeffs& k) {
  if (F.m() < 4)
    throw std::invalid_argument("the APN characterization requires m >= 4");
  if (!F.in_subfield(k.a1))
    throw std::invalid_argument("a1 must lie in F_q; normalize first");
  GammaReport rep;
  rep.thetas = thetas(F, k);
  const Thetas& t = rep.thetas;
  if (t.t1 == kZero) return rep;  // everything stays false
  rep.theta1_nonzero = true;

  const Elem arg = F.mul(F.norm(t.t2), F.inv(F.sq(t.t1)));
  if (!F.in_subfield(arg))
    throw InvariantViolation("trace argument left the subfield");
  rep.trace_ok = F.trace_m(arg) == 0;

  const Elem t2b = F.conj(t.t2);
  const Elem t3b = F.conj(t.t3);
  const Elem tail = F.add(F.mul(F.sq(t.t2), t.t3), F.mul(F.sq(t2b), t3b));
  const Elem p1 = F.add(F.add(F.mul(F.sq(t.t1), t.t4), F.mul(t.t1, F.norm(t.t2))), tail);
  const Elem p2 = F.add(F.add(F.mul(F.sq(t.t1), t.t3), F.mul(t.t1, F.sq(t2b))), tail);
  rep.gamma1 = rep.trace_ok && p1 == kZero;
  rep.gamma2 = rep.trace_ok && p2 == kZero;
  rep.apn = (F.m() % 2 == 0) ? (rep.gamma1 || rep.gamma2) : rep.gamma1;
  return rep;
}

bool in_gamma1(const FieldCtx& F, const KimCoeffs& k) { return gamma_report(F, k).gamma1; }

bool in_gamma2(const FieldCtx& F, const KimCoeffs& k) { return gamma_report(F, k).gamma2; }

bool is_apn_by_theorem(const FieldCtx& F, const KimCoeffs& k) {
  return gamma_report(F, k).apn;
}

NormalizedKim normalize_a1(const FieldCtx& F, const KimCoeffs& k) {
  if (F.in_subfield(k.a1))
    return NormalizedKim{k, lin_identity(F), lin_identity(F), false};

  const PolarForm p = F.polar_decompose(k.a1);  // a1 != 0 here
  const Elem c = F.lift_q_minus_1(p.unit);      // c^(q-1) = unit part of a1
  const Elem yi = F.inv(p.unit);
  // Substituting x -> c x and rescaling by c^{-3q} multiplies the three
  // coefficients by c^{1-q}, c^{2-2q}, c^{3-3q}, i.e. by powers of unit^{-1}.
  const KimCoeffs nk{F.mul(k.a1, yi), F.mul(k.a2, F.sq(yi)),
                     F.mul(k.a3, F.mul(yi, F.sq(yi)))};
  if (!F.in_subfield(nk.a1))
    throw InvariantViolation("normalization failed to land a1 in F_q");

  const Elem c3q = F.pow(c, 3ll * F.q());
  const LinMap left = lin_scale(F, F.inv(c3q));
  const LinMap right = lin_scale(F, c);

  // Pointwise check of kim(nk) = left ∘ f ∘ right before anything downstream
  // can consume a bad construction.
  const Elem c3qi = F.inv(c3q);
  const uint32_t total = F.q2();
  if (2 * F.m() <= 16) {
    for (uint32_t x = 0; x < total; ++x) {
      const Elem xe{x};
      if (eval_kim(F, nk, xe) != F.mul(c3qi, eval_kim(F, k, F.mul(c, xe))))
        throw InvariantViolation("normalization verification failed");
    }
  } else {
    uint64_t s = 0x9e3779b97f4a7c15ull;
    for (int i = 0; i < 1'000'000; ++i) {
      s ^= s << 13;
      s ^= s >> 7;
      s ^= s << 17;
      const Elem xe{static_cast<uint32_t>(s % total)};
      if (eval_kim(F, nk, xe) != F.mul(c3qi, eval_kim(F, k, F.mul(c, xe))))
        throw InvariantViolation("normalization verification failed");
    }
  }
  return NormalizedKim{nk, left, right, true};
}

}  // namespace kimgold
