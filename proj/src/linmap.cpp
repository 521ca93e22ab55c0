#include "kimgold/linmap.hpp"

#include <stdexcept>

namespace kimgold {

LinMap lin_identity(const FieldCtx& F) {
  LinMap l{std::vector<Elem>(2 * F.m())};
  l.coeffs[0] = kOne;
  return l;
}

LinMap lin_scale(const FieldCtx& F, Elem c) {
  if (c == kZero) throw std::invalid_argument("scale by zero is not a bijection");
  LinMap l{std::vector<Elem>(2 * F.m())};
  l.coeffs[0] = c;
  return l;
}

LinMap lin_conj_plus(const FieldCtx& F, Elem t) {
  LinMap l{std::vector<Elem>(2 * F.m())};
  l.coeffs[0] = t;
  l.coeffs[F.m()] = kOne;
  return l;
}

LinMap lin_frobenius(const FieldCtx& F, int j) {
  const int n = 2 * F.m();
  LinMap l{std::vector<Elem>(n)};
  l.coeffs[((j % n) + n) % n] = kOne;
  return l;
}

LinMap lin_from_coeffs(const FieldCtx& F, std::vector<Elem> coeffs) {
  const size_t n = 2 * static_cast<size_t>(F.m());
  if (coeffs.size() != n) throw std::invalid_argument("expected 2m coefficients");
  for (const Elem c : coeffs)
    if (c.v >= F.q2()) throw std::invalid_argument("coefficient out of range");
  return LinMap{std::move(coeffs)};
}

Elem apply(const FieldCtx& F, const LinMap& L, Elem x) {
  Elem acc = kZero;
  Elem p = x;
  for (const Elem c : L.coeffs) {
    if (c != kZero) acc = F.add(acc, F.mul(c, p));
    p = F.sq(p);
  }
  return acc;
}

LinMap compose(const FieldCtx& F, const LinMap& L, const LinMap& M) {
  const int n = 2 * F.m();
  LinMap r{std::vector<Elem>(n)};
  std::vector<Elem> mpow = M.coeffs;  // holds M.coeffs[j]^(2^i) at step i
  for (int i = 0; i < n; ++i) {
    if (L.coeffs[i] != kZero)
      for (int j = 0; j < n; ++j)
        if (mpow[j] != kZero) {
          const int k = (i + j) % n;
          r.coeffs[k] = F.add(r.coeffs[k], F.mul(L.coeffs[i], mpow[j]));
        }
    for (int j = 0; j < n; ++j) mpow[j] = F.sq(mpow[j]);
  }
  return r;
}

BitMatrix to_bit_matrix(const FieldCtx& F, const LinMap& L) {
  const int n = 2 * F.m();
  BitMatrix a{n, std::vector<uint32_t>(n)};
  for (int j = 0; j < n; ++j) a.cols[j] = apply(F, L, Elem{1u << j}).v;
  return a;
}

int rank(const BitMatrix& a) {
  std::vector<uint32_t> v = a.cols;
  int r = 0;
  for (int bit = 0; bit < a.n && r < a.n; ++bit) {
    int piv = -1;
    for (int i = r; i < a.n; ++i)
      if ((v[i] >> bit) & 1) {
        piv = i;
        break;
      }
    if (piv < 0) continue;
    std::swap(v[r], v[piv]);
    for (int i = 0; i < a.n; ++i)
      if (i != r && ((v[i] >> bit) & 1)) v[i] ^= v[r];
    ++r;
  }
  return r;
}

bool is_bijective(const FieldCtx& F, const LinMap& L) {
  const BitMatrix a = to_bit_matrix(F, L);
  return rank(a) == a.n;
}

BitMatrix bitmatrix_multiply(const BitMatrix& a, const BitMatrix& b) {
  BitMatrix r{a.n, std::vector<uint32_t>(a.n)};
  for (int j = 0; j < a.n; ++j) r.cols[j] = bitmatrix_apply(a, b.cols[j]);
  return r;
}

uint32_t bitmatrix_apply(const BitMatrix& a, uint32_t x) {
  uint32_t y = 0;
  for (int j = 0; j < a.n; ++j)
    if ((x >> j) & 1) y ^= a.cols[j];
  return y;
}

std::optional<BitMatrix> bitmatrix_inverse(const BitMatrix& a) {
  const int n = a.n;
  // rows of [A | I] packed in uint64
  std::vector<uint64_t> w(n);
  for (int i = 0; i < n; ++i) {
    uint64_t row = 0;
    for (int j = 0; j < n; ++j) row |= static_cast<uint64_t>((a.cols[j] >> i) & 1) << j;
    w[i] = row | (1ull << (n + i));
  }
  for (int col = 0; col < n; ++col) {
    int piv = -1;
    for (int i = col; i < n; ++i)
      if ((w[i] >> col) & 1) {
        piv = i;
        break;
      }
    if (piv < 0) return std::nullopt;
    std::swap(w[col], w[piv]);
    for (int i = 0; i < n; ++i)
      if (i != col && ((w[i] >> col) & 1)) w[i] ^= w[col];
  }
  BitMatrix inv{n, std::vector<uint32_t>(n)};
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if ((w[i] >> (n + j)) & 1) inv.cols[j] |= 1u << i;
  return inv;
}

std::optional<std::vector<Elem>> solve_linear(const FieldCtx& F,
                                              std::vector<std::vector<Elem>> a,
                                              std::vector<Elem> b) {
  const size_t n = a.size();
  for (size_t col = 0; col < n; ++col) {
    size_t piv = col;
    while (piv < n && a[piv][col] == kZero) ++piv;
    if (piv == n) return std::nullopt;
    std::swap(a[col], a[piv]);
    std::swap(b[col], b[piv]);
    const Elem ip = F.inv(a[col][col]);
    for (size_t j = col; j < n; ++j) a[col][j] = F.mul(a[col][j], ip);
    b[col] = F.mul(b[col], ip);
    for (size_t i = 0; i < n; ++i) {
      if (i == col || a[i][col] == kZero) continue;
      const Elem f = a[i][col];
      for (size_t j = col; j < n; ++j) a[i][j] = F.add(a[i][j], F.mul(f, a[col][j]));
      b[i] = F.add(b[i], F.mul(f, b[col]));
    }
  }
  return b;
}

LinMap inverse(const FieldCtx& F, const LinMap& L) {
  const int n = 2 * F.m();
  const BitMatrix a = to_bit_matrix(F, L);
  const auto ainv = bitmatrix_inverse(a);
  if (!ainv) throw std::domain_error("map is singular");
  // Interpolate the linearized polynomial of the inverse from its images of
  // the encoding basis: solve the Moore system sum_i c_i e_j^(2^i) = t_j.
  std::vector<std::vector<Elem>> moore(n, std::vector<Elem>(n));
  std::vector<Elem> rhs(n);
  for (int j = 0; j < n; ++j) {
    Elem p{1u << j};
    for (int i = 0; i < n; ++i) {
      moore[j][i] = p;
      p = F.sq(p);
    }
    rhs[j] = Elem{ainv->cols[j]};
  }
  auto sol = solve_linear(F, std::move(moore), std::move(rhs));
  if (!sol) throw InvariantViolation("Moore system singular for a basis");
  return LinMap{std::move(*sol)};
}

}  // namespace kimgold
