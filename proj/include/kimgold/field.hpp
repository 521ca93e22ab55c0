#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "kimgold/errors.hpp"

namespace kimgold {

/// Element of F_{2^{2m}} in the tower basis: value = lo + hi*beta, where lo
/// and hi live in F_q = F_{2^m} and beta^2 + beta + nu = 0. The integer
/// encoding lo + hi*2^m doubles as the wire format and the table index;
/// elements of the subfield F_q are exactly the encodings below 2^m.
struct Elem {
  uint32_t v = 0;
  friend constexpr bool operator==(const Elem&, const Elem&) = default;
  friend constexpr auto operator<=>(const Elem&, const Elem&) = default;
};

inline constexpr Elem kZero{0};
inline constexpr Elem kOne{1};

/// Unique factorization z = radius * unit with radius in F_q* and
/// unit of norm 1.
struct PolarForm {
  Elem radius;
  Elem unit;
};

/// Arithmetic context for the tower F_2 ⊂ F_q ⊂ F_{q^2}, q = 2^m.
///
/// F_q is F_2[y]/(fq_poly) and F_{q^2} is F_q[beta]/(beta^2 + beta + nu)
/// with Tr_m(nu) = 1, which makes the quadratic irreducible over F_q. In
/// this basis conjugation z -> z^q is the cheap map (lo, hi) -> (lo+hi, hi)
/// since beta^q = beta + 1.
///
/// Construction validates the defining polynomial by exhaustive trial
/// division, checks Tr_m(nu) = 1, and builds log/antilog tables for both
/// fields (2m <= 20 keeps them small). The context is immutable afterwards
/// and all operations are pure, so sharing across threads is safe.
class FieldCtx {
 public:
  explicit FieldCtx(int m) : FieldCtx(m, std::nullopt, std::nullopt) {}
  FieldCtx(int m, std::optional<uint32_t> fq_poly, std::optional<uint32_t> nu);

  int m() const { return m_; }
  uint32_t q() const { return q_; }
  uint32_t q2() const { return q2_; }
  uint32_t fq_poly() const { return poly_; }
  uint32_t nu() const { return nu_; }

  /// Standard low-weight irreducible used when no polynomial is supplied.
  static uint32_t default_poly(int m);
  /// Exhaustive trial-division irreducibility test; degree taken from the
  /// top bit of the mask.
  static bool is_irreducible(uint32_t poly);

  /// Validated construction of an element from its integer encoding.
  Elem element(uint32_t encoding) const;

  Elem add(Elem a, Elem b) const { return Elem{a.v ^ b.v}; }
  Elem mul(Elem a, Elem b) const {
    if (a.v == 0 || b.v == 0) return kZero;
    return Elem{exp2_[log2_[a.v] + log2_[b.v]]};
  }
  Elem inv(Elem a) const;
  /// Square-and-multiply semantics; the exponent is reduced mod q^2 - 1 for
  /// nonzero bases. pow(0, 0) = 1, pow(0, e) = 0 for e > 0, negative
  /// exponents of zero are an error.
  Elem pow(Elem a, long long e) const;
  Elem sq(Elem a) const { return mul(a, a); }
  /// Unique square root (Frobenius inverse), defined for every element.
  Elem sqrt(Elem a) const;

  /// Conjugation z -> z^q; an involution fixing exactly F_q.
  Elem conj(Elem a) const { return Elem{a.v ^ (a.v >> m_)}; }
  /// norm(z) = z * z^q, always in F_q.
  Elem norm(Elem a) const;
  bool in_subfield(Elem a) const { return a.v < q_; }
  /// Membership in the norm-1 subgroup U of order q + 1.
  bool in_unit_circle(Elem a) const { return norm(a) == kOne; }

  /// Absolute trace F_q -> F_2. The argument must lie in the subfield.
  int trace_m(Elem a) const;

  /// z = radius * unit with radius in F_q*, unit in U; unique for z != 0.
  PolarForm polar_decompose(Elem z) const;

  /// Smallest w with w^2 + w = c, or nullopt when Tr_m(c) = 1. The full
  /// solution set is {w, w+1}.
  std::optional<Elem> solve_artin_schreier(Elem c) const;

  /// All z in U \ {1} with A z^2 + B z + C = 0, for subfield coefficients
  /// not all zero. Nonempty output forces A = C.
  std::vector<Elem> solve_quadratic_in_unit_circle(Elem a, Elem b, Elem c) const;

  /// Some c with c^(q-1) = y, for y in U. The map c -> c^(q-1) is onto U.
  Elem lift_q_minus_1(Elem y) const;

  /// The q + 1 elements of U in a fixed order (powers of g^(q-1) for the
  /// table generator g).
  std::vector<Elem> unit_circle() const;

  /// Table generator of F_{q^2}^*.
  Elem generator() const { return Elem{gen2_}; }
  Elem subfield_generator() const { return Elem{genq_}; }
  bool is_primitive(Elem a) const;
  /// Discrete log base generator(); a must be nonzero.
  uint32_t dlog(Elem a) const;

 private:
  void build_subfield_tables();
  void build_extension_tables();
  uint32_t mulq(uint32_t a, uint32_t b) const {
    if (a == 0 || b == 0) return 0;
    return expq_[logq_[a] + logq_[b]];
  }
  uint32_t subfield_trace(uint32_t x) const;
  uint32_t tower_mul(uint32_t a, uint32_t b) const;

  int m_ = 0;
  uint32_t q_ = 0;
  uint32_t q2_ = 0;
  uint32_t poly_ = 0;
  uint32_t nu_ = 0;
  uint32_t genq_ = 0;
  uint32_t gen2_ = 0;
  std::vector<uint32_t> expq_, logq_;  // F_q tables, exp doubled
  std::vector<uint32_t> exp2_, log2_;  // F_{q^2} tables, exp doubled
};

}  // namespace kimgold
