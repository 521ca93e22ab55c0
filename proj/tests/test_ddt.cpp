#include <doctest.h>

#include <cstdio>
#include <numeric>
#include <random>

#include "kimgold/ddt.hpp"
#include "kimgold/linmap.hpp"

using namespace kimgold;

TEST_CASE("rows of the identity map") {
  FieldCtx F(4);
  const FunctionTable t = table_of_exponent(F, 1);
  for (uint32_t x = 0; x < F.q2(); ++x) CHECK(t.values[x] == x);
  for (uint32_t a = 1; a < F.q2(); ++a) {
    const auto row = ddt_row(t, a);
    for (uint32_t b = 0; b < F.q2(); ++b)
      CHECK(row[b] == (b == a ? F.q2() : 0u));
  }
  CHECK(differential_uniformity(t) == static_cast<int>(F.q2()));
  CHECK_FALSE(is_apn_bruteforce(t));
  CHECK_THROWS_AS(ddt_row(t, 0), std::invalid_argument);
}

TEST_CASE("row sums and parity on an arbitrary function") {
  FieldCtx F(4);
  std::mt19937_64 rng(41);
  FunctionTable t{8, std::vector<uint32_t>(256)};
  for (auto& v : t.values) v = static_cast<uint32_t>(rng() % 256);
  for (uint32_t a = 1; a < 256; ++a) {
    const auto row = ddt_row(t, a);
    CHECK(std::accumulate(row.begin(), row.end(), 0u) == 256u);
    for (uint32_t c : row) CHECK(c % 2 == 0);
  }
}

TEST_CASE("cube map is APN on F_256") {
  FieldCtx F(4);
  const FunctionTable t = table_of_exponent(F, 3);
  for (uint32_t a = 1; a < 256; ++a) {
    const auto row = ddt_row(t, a);
    for (uint32_t c : row) CHECK(c <= 2);
  }
  CHECK(differential_uniformity(t) == 2);
  CHECK(is_apn_bruteforce(t));
}

TEST_CASE("second Gold target is APN at m = 4") {
  FieldCtx F(4);
  CHECK(differential_uniformity(table_of_exponent(F, 9)) == 2);
}

TEST_CASE("table builders agree") {
  FieldCtx F(4);
  const FunctionTable a = table_of_kim(F, KimCoeffs{kZero, kZero, kZero});
  const FunctionTable b = table_of_exponent(F, 3 * F.q());
  CHECK(a.values == b.values);
  const KimCoeffs k{Elem{3}, Elem{200}, Elem{41}};
  const FunctionTable c = table_of_kim(F, k);
  for (uint32_t x = 0; x < F.q2(); ++x)
    CHECK(c.values[x] == eval_kim(F, k, Elem{x}).v);
}

TEST_CASE("early-exit check equals the exhaustive definition") {
  FieldCtx F(3);
  std::mt19937_64 rng(43);
  for (int rep = 0; rep < 30; ++rep) {
    FunctionTable t{6, std::vector<uint32_t>(64)};
    for (auto& v : t.values) v = static_cast<uint32_t>(rng() % 64);
    CHECK(is_apn_bruteforce(t) == (differential_uniformity(t) == 2));
  }
  CHECK(is_apn_bruteforce(table_of_exponent(F, 3)));
}

TEST_CASE("differential uniformity is invariant under bijective linear framing") {
  FieldCtx F(4);
  std::mt19937_64 rng(47);
  const FunctionTable t = table_of_kim(F, KimCoeffs{Elem{2}, Elem{0}, Elem{9}});
  const int base = differential_uniformity(t);
  int done = 0;
  while (done < 5) {
    std::vector<Elem> c1(8), c2(8);
    for (auto& e : c1) e = Elem{static_cast<uint32_t>(rng() % 256)};
    for (auto& e : c2) e = Elem{static_cast<uint32_t>(rng() % 256)};
    const LinMap L{c1}, M{c2};
    if (!is_bijective(F, L) || !is_bijective(F, M)) continue;
    ++done;
    FunctionTable framed{t.n, std::vector<uint32_t>(t.values.size())};
    for (uint32_t x = 0; x < t.values.size(); ++x)
      framed.values[x] = apply(F, L, Elem{t.values[apply(F, M, Elem{x}).v]}).v;
    CHECK(differential_uniformity(framed) == base);
  }
}

TEST_CASE("table files round-trip") {
  FieldCtx F(3);
  const FunctionTable t = table_of_exponent(F, 5);
  const std::string csv = "/tmp/kimgold_test_table.csv";
  const std::string bin = "/tmp/kimgold_test_table.bin";
  write_table_csv(t, csv);
  write_table_bin(t, bin);
  CHECK(read_table_csv(csv).values == t.values);
  CHECK(read_table_bin(bin).values == t.values);
  std::remove(csv.c_str());
  std::remove(bin.c_str());
}

TEST_CASE("the classical sbox family member is APN for some primitive scalar") {
  FieldCtx F(3);  // F_{2^6}
  int hits = 0;
  for (uint32_t uv = 1; uv < F.q2(); ++uv) {
    const Elem u{uv};
    if (!F.is_primitive(u)) continue;
    FunctionTable t{6, std::vector<uint32_t>(64)};
    for (uint32_t x = 0; x < 64; ++x)
      t.values[x] = F.add(F.add(F.pow(Elem{x}, 3), F.pow(Elem{x}, 10)),
                          F.mul(u, F.pow(Elem{x}, 24)))
                        .v;
    if (is_apn_bruteforce(t)) ++hits;
  }
  CHECK(hits > 0);
}
