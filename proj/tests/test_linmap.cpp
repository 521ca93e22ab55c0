#include <doctest.h>

#include <random>

#include "kimgold/linmap.hpp"

using namespace kimgold;

namespace {

LinMap random_map(const FieldCtx& F, std::mt19937_64& rng) {
  std::vector<Elem> c(2 * F.m());
  for (auto& e : c) e = Elem{static_cast<uint32_t>(rng() % F.q2())};
  return LinMap{std::move(c)};
}

}  // namespace

TEST_CASE("constructors") {
  FieldCtx F(4);
  CHECK(lin_conj_plus(F, kZero) == lin_frobenius(F, F.m()));
  CHECK(lin_scale(F, kOne) == lin_identity(F));
  CHECK_THROWS_AS(lin_scale(F, kZero), std::invalid_argument);
  CHECK_THROWS_AS(lin_from_coeffs(F, std::vector<Elem>(3)), std::invalid_argument);
  CHECK_THROWS_AS(lin_from_coeffs(F, std::vector<Elem>(8, Elem{999})),
                  std::invalid_argument);
  CHECK(lin_frobenius(F, 8) == lin_frobenius(F, 0));
}

TEST_CASE("x -> x^q + tx is bijective exactly off the unit circle") {
  for (int m : {4, 5}) {
    FieldCtx F(m);
    for (uint32_t v = 0; v < F.q2(); ++v) {
      const Elem t{v};
      CHECK(is_bijective(F, lin_conj_plus(F, t)) == !F.in_unit_circle(t));
    }
    // subfield special case: only t = 1 fails there
    for (uint32_t v = 0; v < F.q(); ++v)
      CHECK(is_bijective(F, lin_conj_plus(F, Elem{v})) == (v != 1));
  }
}

TEST_CASE("apply agrees with the linearized polynomial") {
  FieldCtx F(4);
  const Elem t{7};
  const LinMap L = lin_conj_plus(F, t);
  for (uint32_t v = 0; v < F.q2(); ++v) {
    const Elem x{v};
    CHECK(apply(F, L, x) == F.add(F.pow(x, F.q()), F.mul(t, x)));
  }
  // additivity comes for free from the representation; spot-check anyway
  std::mt19937_64 rng(3);
  const LinMap M = random_map(F, rng);
  for (int i = 0; i < 200; ++i) {
    const Elem x{static_cast<uint32_t>(rng() % F.q2())};
    const Elem y{static_cast<uint32_t>(rng() % F.q2())};
    CHECK(apply(F, M, F.add(x, y)) == F.add(apply(F, M, x), apply(F, M, y)));
  }
}

TEST_CASE("composition") {
  FieldCtx F(4);
  std::mt19937_64 rng(5);
  for (int i = 0; i < 20; ++i) {
    const LinMap L = random_map(F, rng);
    const LinMap M = random_map(F, rng);
    CHECK(compose(F, L, lin_identity(F)) == L);
    CHECK(compose(F, lin_identity(F), L) == L);
    const LinMap C = compose(F, L, M);
    for (uint32_t v = 0; v < F.q2(); ++v)
      CHECK(apply(F, C, Elem{v}) == apply(F, L, apply(F, M, Elem{v})));
    // matrix view is a homomorphism
    const BitMatrix prod = bitmatrix_multiply(to_bit_matrix(F, L), to_bit_matrix(F, M));
    const BitMatrix direct = to_bit_matrix(F, C);
    CHECK(prod.cols == direct.cols);
  }
}

TEST_CASE("inverse") {
  FieldCtx F(4);
  CHECK(inverse(F, lin_frobenius(F, 1)) == lin_frobenius(F, 2 * F.m() - 1));
  CHECK_THROWS_AS(inverse(F, lin_conj_plus(F, kOne)), std::domain_error);

  std::mt19937_64 rng(9);
  int done = 0;
  while (done < 100) {
    const LinMap L = random_map(F, rng);
    if (!is_bijective(F, L)) continue;
    ++done;
    const LinMap Li = inverse(F, L);
    for (uint32_t v = 0; v < F.q2(); ++v) {
      CHECK(apply(F, Li, apply(F, L, Elem{v})) == Elem{v});
      CHECK(apply(F, L, apply(F, Li, Elem{v})) == Elem{v});
    }
  }
}

TEST_CASE("rank and bit-matrix inverse") {
  FieldCtx F(4);
  const BitMatrix id = to_bit_matrix(F, lin_identity(F));
  CHECK(rank(id) == 8);
  CHECK(bitmatrix_inverse(id)->cols == id.cols);
  const BitMatrix sing = to_bit_matrix(F, lin_conj_plus(F, kOne));
  CHECK(rank(sing) < 8);
  CHECK_FALSE(bitmatrix_inverse(sing).has_value());
}

TEST_CASE("linear solver over the field") {
  FieldCtx F(4);
  std::mt19937_64 rng(13);
  for (int rep = 0; rep < 20; ++rep) {
    const size_t n = 4;
    std::vector<std::vector<Elem>> a(n, std::vector<Elem>(n));
    std::vector<Elem> x(n), b(n, kZero);
    for (auto& row : a)
      for (auto& e : row) e = Elem{static_cast<uint32_t>(rng() % F.q2())};
    for (auto& e : x) e = Elem{static_cast<uint32_t>(rng() % F.q2())};
    for (size_t i = 0; i < n; ++i)
      for (size_t j = 0; j < n; ++j) b[i] = F.add(b[i], F.mul(a[i][j], x[j]));
    const auto sol = solve_linear(F, a, b);
    if (!sol) continue;  // singular draw
    std::vector<Elem> bx(n, kZero);
    for (size_t i = 0; i < n; ++i)
      for (size_t j = 0; j < n; ++j) bx[i] = F.add(bx[i], F.mul(a[i][j], (*sol)[j]));
    CHECK(bx == b);
  }
}
