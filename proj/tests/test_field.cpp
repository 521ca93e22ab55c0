#include <doctest.h>

#include <random>
#include <set>

#include "kimgold/field.hpp"

using namespace kimgold;

TEST_CASE("construction defaults and validation") {
  FieldCtx F(4);
  CHECK(F.fq_poly() == 0x13);
  CHECK(F.q() == 16);
  CHECK(F.q2() == 256);
  CHECK(F.trace_m(Elem{F.nu()}) == 1);

  // y^4 + y^3 + 1 is an alternative irreducible
  FieldCtx G(4, 0x19u, std::nullopt);
  CHECK(G.fq_poly() == 0x19);

  // y^4 + y^2 + 1 = (y^2 + y + 1)^2
  CHECK_THROWS_AS(FieldCtx(4, 0x15u, std::nullopt), std::invalid_argument);
  CHECK_THROWS_AS(FieldCtx(1), std::invalid_argument);
  CHECK_THROWS_AS(FieldCtx(11), std::invalid_argument);
  // nu with trace zero is rejected
  CHECK_THROWS_AS(FieldCtx(4, std::nullopt, 0u), std::invalid_argument);
  CHECK_THROWS_AS(FieldCtx(4, std::nullopt, 99u), std::invalid_argument);

  CHECK(FieldCtx::is_irreducible(0x13));
  CHECK_FALSE(FieldCtx::is_irreducible(0x15));
}

TEST_CASE("field axioms at m = 4") {
  FieldCtx F(4);
  const Elem g = F.generator();
  CHECK(F.pow(g, F.q2() - 1) == kOne);
  for (uint32_t v = 0; v < F.q2(); ++v) {
    const Elem a{v};
    CHECK(F.add(a, a) == kZero);
    if (v != 0) {
      CHECK(F.mul(a, F.inv(a)) == kOne);
      CHECK(F.pow(a, -1) == F.inv(a));
    }
    CHECK(F.sq(F.sqrt(a)) == a);
  }
  CHECK(F.pow(kZero, 0) == kOne);
  CHECK(F.pow(kZero, 5) == kZero);
  CHECK_THROWS_AS(F.pow(kZero, -2), std::domain_error);
  CHECK_THROWS_AS(F.inv(kZero), std::domain_error);
  CHECK_THROWS_AS(F.element(256), std::invalid_argument);
}

TEST_CASE("conjugation is the order-2 field automorphism fixing F_q") {
  FieldCtx F(4);
  const Elem beta{1u << 4};
  CHECK(F.conj(beta) == F.add(beta, kOne));
  for (uint32_t v = 0; v < F.q2(); ++v) {
    const Elem z{v};
    CHECK(F.conj(F.conj(z)) == z);
    CHECK((F.conj(z) == z) == F.in_subfield(z));
  }
  for (uint32_t a = 0; a < F.q2(); ++a)
    for (uint32_t b = 0; b < F.q2(); ++b) {
      const Elem x{a}, y{b};
      CHECK(F.conj(F.add(x, y)) == F.add(F.conj(x), F.conj(y)));
      CHECK(F.conj(F.mul(x, y)) == F.mul(F.conj(x), F.conj(y)));
    }
}

TEST_CASE("conjugation homomorphism on random pairs at m = 6") {
  FieldCtx F(6);
  std::mt19937_64 rng(7);
  for (int i = 0; i < 2000; ++i) {
    const Elem x{static_cast<uint32_t>(rng() % F.q2())};
    const Elem y{static_cast<uint32_t>(rng() % F.q2())};
    CHECK(F.conj(F.conj(x)) == x);
    CHECK(F.conj(F.mul(x, y)) == F.mul(F.conj(x), F.conj(y)));
  }
}

TEST_CASE("trace properties") {
  for (int m : {4, 5}) {
    FieldCtx F(m);
    CHECK(F.trace_m(kZero) == 0);
    CHECK(F.trace_m(kOne) == m % 2);
    int zeros = 0;
    for (uint32_t w = 0; w < F.q(); ++w) {
      const Elem e{w};
      CHECK(F.trace_m(F.add(F.sq(e), e)) == 0);
      if (F.trace_m(e) == 0) ++zeros;
    }
    CHECK(zeros == static_cast<int>(F.q()) / 2);
  }
  FieldCtx F(4);
  CHECK_THROWS_AS(F.trace_m(Elem{1u << 4}), std::invalid_argument);
}

TEST_CASE("norm and the unit circle") {
  for (int m : {4, 5, 6}) {
    FieldCtx F(m);
    CHECK(F.norm(kOne) == kOne);
    CHECK(F.in_unit_circle(kOne));
    int count = 0;
    for (uint32_t v = 0; v < F.q2(); ++v) {
      const Elem z{v};
      CHECK(F.in_subfield(F.norm(z)));
      CHECK(F.norm(z) == F.mul(z, F.conj(z)));
      if (F.in_unit_circle(z)) ++count;
    }
    CHECK(count == static_cast<int>(F.q()) + 1);
    const auto circle = F.unit_circle();
    CHECK(circle.size() == F.q() + 1);
    for (const Elem z : circle) CHECK(F.in_unit_circle(z));
  }
  FieldCtx F(4);
  for (uint32_t x = 2; x < F.q(); ++x) CHECK_FALSE(F.in_unit_circle(Elem{x}));
}

TEST_CASE("polar decomposition is the bijection F_{q^2}* <-> F_q* x U") {
  FieldCtx F(4);
  for (uint32_t x = 1; x < F.q(); ++x) {
    const PolarForm p = F.polar_decompose(Elem{x});
    CHECK(p.radius == Elem{x});
    CHECK(p.unit == kOne);
  }
  for (const Elem y : F.unit_circle()) {
    const PolarForm p = F.polar_decompose(y);
    CHECK(p.radius == kOne);
    CHECK(p.unit == y);
  }
  std::set<std::pair<uint32_t, uint32_t>> images;
  for (uint32_t v = 1; v < F.q2(); ++v) {
    const PolarForm p = F.polar_decompose(Elem{v});
    CHECK(F.mul(p.radius, p.unit) == Elem{v});
    CHECK(F.in_subfield(p.radius));
    CHECK(p.radius != kZero);
    CHECK(F.in_unit_circle(p.unit));
    images.emplace(p.radius.v, p.unit.v);
  }
  CHECK(images.size() == F.q2() - 1);  // injective onto the product
  CHECK_THROWS_AS(F.polar_decompose(kZero), std::domain_error);
}

TEST_CASE("Artin-Schreier solver matches the trace criterion") {
  for (int m : {4, 5}) {
    FieldCtx F(m);
    const auto zero_root = F.solve_artin_schreier(kZero);
    REQUIRE(zero_root.has_value());
    CHECK((zero_root->v == 0 || zero_root->v == 1));
    for (uint32_t c = 0; c < F.q(); ++c) {
      const auto w = F.solve_artin_schreier(Elem{c});
      CHECK(w.has_value() == (F.trace_m(Elem{c}) == 0));
      if (w) CHECK(F.add(F.sq(*w), *w) == Elem{c});
    }
  }
  FieldCtx F(4);
  std::mt19937_64 rng(11);
  for (int i = 0; i < 50; ++i) {
    const Elem w{static_cast<uint32_t>(rng() % F.q())};
    const Elem c = F.add(F.sq(w), w);
    const auto sol = F.solve_artin_schreier(c);
    REQUIRE(sol.has_value());
    CHECK((sol->v == w.v || sol->v == (w.v ^ 1)));
  }
}

TEST_CASE("quadratics over the unit circle") {
  FieldCtx F4(4);
  CHECK(F4.solve_quadratic_in_unit_circle(kOne, kZero, kOne).empty());
  CHECK_THROWS_AS(F4.solve_quadratic_in_unit_circle(kZero, kZero, kZero),
                  std::invalid_argument);
  // z^2 + z + 1: roots are the primitive cube roots of unity, which lie in
  // U \ {1} exactly when 3 divides q + 1, i.e. for odd m.
  CHECK(F4.solve_quadratic_in_unit_circle(kOne, kOne, kOne).empty());
  FieldCtx F5(5);
  CHECK(F5.solve_quadratic_in_unit_circle(kOne, kOne, kOne).size() == 2);
}

TEST_CASE("lifting along c -> c^(q-1)") {
  FieldCtx F(4);
  CHECK(F.lift_q_minus_1(kOne) == kOne);
  for (const Elem y : F.unit_circle()) {
    const Elem c = F.lift_q_minus_1(y);
    CHECK(F.pow(c, F.q() - 1) == y);
  }
  const Elem g = F.generator();
  const Elem y = F.pow(g, F.q() - 1);
  CHECK(F.pow(F.lift_q_minus_1(y), F.q() - 1) == y);
  CHECK_THROWS_AS(F.lift_q_minus_1(F.generator()), std::invalid_argument);
}

TEST_CASE("subfield encoding convention") {
  FieldCtx F(5);
  for (uint32_t v = 0; v < F.q2(); ++v)
    CHECK(F.in_subfield(Elem{v}) == (v < F.q()));
}
