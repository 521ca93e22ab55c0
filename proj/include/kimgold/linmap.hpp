#pragma once

#include <optional>
#include <vector>

#include "kimgold/field.hpp"

namespace kimgold {

/// F_2-linear map on F_{q^2} stored as the linearized polynomial
/// L(x) = sum_i coeffs[i] * x^(2^i), with exactly 2m coefficients. This is
/// the primary representation; the induced 2m x 2m bit matrix is a derived
/// view used for rank and inversion.
struct LinMap {
  std::vector<Elem> coeffs;
  friend bool operator==(const LinMap&, const LinMap&) = default;
};

/// Square bit matrix in column form: cols[j] is the image of basis vector j
/// packed as an element encoding.
struct BitMatrix {
  int n = 0;
  std::vector<uint32_t> cols;
};

LinMap lin_identity(const FieldCtx& F);
LinMap lin_scale(const FieldCtx& F, Elem c);        // x -> c x, c != 0
LinMap lin_conj_plus(const FieldCtx& F, Elem t);    // x -> x^q + t x
LinMap lin_frobenius(const FieldCtx& F, int j);     // x -> x^(2^j)
LinMap lin_from_coeffs(const FieldCtx& F, std::vector<Elem> coeffs);

Elem apply(const FieldCtx& F, const LinMap& L, Elem x);
/// compose(L, M)(x) = L(M(x)).
LinMap compose(const FieldCtx& F, const LinMap& L, const LinMap& M);
BitMatrix to_bit_matrix(const FieldCtx& F, const LinMap& L);
bool is_bijective(const FieldCtx& F, const LinMap& L);
/// Inverse map as a full 2m-coefficient linearized polynomial; throws on a
/// singular input.
LinMap inverse(const FieldCtx& F, const LinMap& L);

int rank(const BitMatrix& a);
BitMatrix bitmatrix_multiply(const BitMatrix& a, const BitMatrix& b);
std::optional<BitMatrix> bitmatrix_inverse(const BitMatrix& a);
uint32_t bitmatrix_apply(const BitMatrix& a, uint32_t x);

/// Solves A x = b over F_{q^2} by Gaussian elimination; nullopt when A is
/// singular. A is row-major, n x n.
std::optional<std::vector<Elem>> solve_linear(const FieldCtx& F,
                                              std::vector<std::vector<Elem>> a,
                                              std::vector<Elem> b);

}  // namespace kimgold
