#include "kimgold/ddt.hpp"

#include <bit>
#include <fstream>
#include <stdexcept>

namespace kimgold {

FunctionTable table_of_kim(const FieldCtx& F, const KimCoeffs& k) {
  FunctionTable t{2 * F.m(), std::vector<uint32_t>(F.q2())};
  for (uint32_t x = 0; x < F.q2(); ++x) t.values[x] = eval_kim(F, k, Elem{x}).v;
  return t;
}

FunctionTable table_of_exponent(const FieldCtx& F, uint64_t e) {
  FunctionTable t{2 * F.m(), std::vector<uint32_t>(F.q2())};
  for (uint32_t x = 0; x < F.q2(); ++x)
    t.values[x] = F.pow(Elem{x}, static_cast<long long>(e)).v;
  return t;
}

std::vector<uint32_t> ddt_row(const FunctionTable& t, uint32_t a) {
  if (a == 0) throw std::invalid_argument("ddt_row requires a != 0");
  const uint32_t size = 1u << t.n;
  if (a >= size) throw std::invalid_argument("difference out of range");
  std::vector<uint32_t> counts(size, 0);
  for (uint32_t x = 0; x < size; ++x) ++counts[t.values[x ^ a] ^ t.values[x]];
  return counts;
}

int differential_uniformity(const FunctionTable& t) {
  const uint32_t size = 1u << t.n;
  std::vector<uint32_t> counts(size);
  uint32_t best = 0;
  for (uint32_t a = 1; a < size; ++a) {
    std::fill(counts.begin(), counts.end(), 0);
    for (uint32_t x = 0; x < size; ++x) {
      const uint32_t b = t.values[x ^ a] ^ t.values[x];
      if (++counts[b] > best) best = counts[b];
    }
  }
  return static_cast<int>(best);
}

bool is_apn_bruteforce(const FunctionTable& t) {
  // {x, x^a} contribute as a pair, so a row is APN-compatible iff no output
  // difference is hit by two distinct pairs. Enumerating only the x with the
  // top bit of a clear walks each pair once, and stamping with the current a
  // avoids clearing the scratch array between rows.
  const uint32_t size = 1u << t.n;
  const uint32_t half = size >> 1;
  std::vector<uint32_t> stamp(size, 0);
  for (uint32_t a = 1; a < size; ++a) {
    const uint32_t lowmask = (1u << (std::bit_width(a) - 1)) - 1;
    for (uint32_t i = 0; i < half; ++i) {
      const uint32_t x = ((i & ~lowmask) << 1) | (i & lowmask);
      const uint32_t b = t.values[x ^ a] ^ t.values[x];
      if (stamp[b] == a) return false;
      stamp[b] = a;
    }
  }
  return true;
}

void write_table_csv(const FunctionTable& t, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open " + path);
  out << "x,f(x)\n";
  for (uint32_t x = 0; x < t.values.size(); ++x) out << x << ',' << t.values[x] << '\n';
}

void write_table_bin(const FunctionTable& t, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open " + path);
  for (uint32_t v : t.values) {
    unsigned char le[4] = {static_cast<unsigned char>(v & 0xff),
                           static_cast<unsigned char>((v >> 8) & 0xff),
                           static_cast<unsigned char>((v >> 16) & 0xff),
                           static_cast<unsigned char>((v >> 24) & 0xff)};
    out.write(reinterpret_cast<const char*>(le), 4);
  }
}

namespace {

int dimension_of(size_t entries, const std::string& path) {
  int n = 0;
  while ((size_t{1} << n) < entries) ++n;
  if ((size_t{1} << n) != entries || n == 0)
    throw std::runtime_error(path + ": table length is not a power of two");
  return n;
}

void validate(FunctionTable& t, const std::string& path) {
  t.n = dimension_of(t.values.size(), path);
  for (uint32_t v : t.values)
    if (v >= (1u << t.n)) throw std::runtime_error(path + ": entry out of range");
}

}  // namespace

FunctionTable read_table_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  FunctionTable t;
  std::string line;
  std::vector<std::pair<uint32_t, uint32_t>> rows;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    if (!isdigit(static_cast<unsigned char>(line[0]))) continue;  // header
    const auto comma = line.find(',');
    if (comma == std::string::npos) throw std::runtime_error(path + ": bad row");
    rows.emplace_back(std::stoul(line.substr(0, comma)),
                      std::stoul(line.substr(comma + 1)));
  }
  t.values.assign(rows.size(), 0);
  for (auto [x, fx] : rows) {
    if (x >= rows.size()) throw std::runtime_error(path + ": index out of range");
    t.values[x] = fx;
  }
  validate(t, path);
  return t;
}

FunctionTable read_table_bin(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path);
  FunctionTable t;
  unsigned char le[4];
  while (in.read(reinterpret_cast<char*>(le), 4))
    t.values.push_back(static_cast<uint32_t>(le[0]) | (static_cast<uint32_t>(le[1]) << 8) |
                       (static_cast<uint32_t>(le[2]) << 16) |
                       (static_cast<uint32_t>(le[3]) << 24));
  validate(t, path);
  return t;
}

}  // namespace kimgold
