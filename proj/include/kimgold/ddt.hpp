#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "kimgold/field.hpp"
#include "kimgold/kim.hpp"

namespace kimgold {

/// Truth table of a function on F_{2^n}, indexed by element encoding. The
/// differential analysis below treats it as raw data with XOR addition and
/// deliberately shares no code with the coefficient-based predicate.
struct FunctionTable {
  int n = 0;
  std::vector<uint32_t> values;
};

FunctionTable table_of_kim(const FieldCtx& F, const KimCoeffs& k);
FunctionTable table_of_exponent(const FieldCtx& F, uint64_t e);

/// counts[b] = #{x : f(x ^ a) ^ f(x) = b}; a must be nonzero. Row sums are
/// 2^n and every entry is even.
std::vector<uint32_t> ddt_row(const FunctionTable& t, uint32_t a);

/// Max row entry over all a != 0.
int differential_uniformity(const FunctionTable& t);

/// Early-exit check for differential uniformity exactly 2.
bool is_apn_bruteforce(const FunctionTable& t);

void write_table_csv(const FunctionTable& t, const std::string& path);
void write_table_bin(const FunctionTable& t, const std::string& path);
FunctionTable read_table_csv(const std::string& path);
FunctionTable read_table_bin(const std::string& path);

}  // namespace kimgold
