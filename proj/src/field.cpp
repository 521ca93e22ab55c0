#include "kimgold/field.hpp"

#include <numeric>
#include <stdexcept>

namespace kimgold {

namespace {

int bit_length(uint32_t x) {
  int n = 0;
  while (x) {
    ++n;
    x >>= 1;
  }
  return n;
}

// Carryless multiply followed by reduction mod poly (degree taken from the
// context); operands below 2^m.
uint32_t clmul_reduce(uint32_t a, uint32_t b, uint32_t poly, int m) {
  uint64_t acc = 0;
  uint64_t aa = a;
  while (b) {
    if (b & 1) acc ^= aa;
    aa <<= 1;
    b >>= 1;
  }
  for (int bit = 2 * m - 2; bit >= m; --bit)
    if ((acc >> bit) & 1) acc ^= static_cast<uint64_t>(poly) << (bit - m);
  return static_cast<uint32_t>(acc);
}

uint32_t poly_mod(uint32_t a, uint32_t d) {
  const int dd = bit_length(d) - 1;
  for (int i = bit_length(a) - 1; i >= dd; --i)
    if ((a >> i) & 1) a ^= d << (i - dd);
  return a;
}

std::vector<uint32_t> prime_factors(uint32_t n) {
  std::vector<uint32_t> ps;
  for (uint32_t p = 2; p * p <= n; ++p) {
    if (n % p == 0) {
      ps.push_back(p);
      while (n % p == 0) n /= p;
    }
  }
  if (n > 1) ps.push_back(n);
  return ps;
}

}  // namespace

uint32_t FieldCtx::default_poly(int m) {
  switch (m) {
    case 2: return 0x7;     // y^2 + y + 1
    case 3: return 0xB;     // y^3 + y + 1
    case 4: return 0x13;    // y^4 + y + 1
    case 5: return 0x25;    // y^5 + y^2 + 1
    case 6: return 0x43;    // y^6 + y + 1
    case 7: return 0x83;    // y^7 + y + 1
    case 8: return 0x11D;   // y^8 + y^4 + y^3 + y^2 + 1
    case 9: return 0x211;   // y^9 + y^4 + 1
    case 10: return 0x409;  // y^10 + y^3 + 1
    default: throw std::invalid_argument("no default polynomial for this m");
  }
}

bool FieldCtx::is_irreducible(uint32_t poly) {
  const int m = bit_length(poly) - 1;
  if (m < 1) return false;
  for (int d = 1; d <= m / 2; ++d)
    for (uint32_t div = 1u << d; div < (2u << d); ++div)
      if (poly_mod(poly, div) == 0) return false;
  return true;
}

FieldCtx::FieldCtx(int m, std::optional<uint32_t> fq_poly, std::optional<uint32_t> nu)
    : m_(m) {
  if (m < 2 || m > 10) throw std::invalid_argument("m must be in [2, 10]");
  q_ = 1u << m;
  q2_ = 1u << (2 * m);
  poly_ = fq_poly.value_or(default_poly(m));
  if ((poly_ >> m) != 1u)
    throw std::invalid_argument("fq_poly must have degree exactly m");
  if (!is_irreducible(poly_))
    throw std::invalid_argument("fq_poly is reducible over F_2");

  build_subfield_tables();

  if (nu) {
    nu_ = *nu;
    if (nu_ >= q_) throw std::invalid_argument("nu must encode an F_q element");
    if (subfield_trace(nu_) != 1) throw std::invalid_argument("Tr_m(nu) must be 1");
  } else {
    // The trace map is onto F_2, so a trace-one element exists; picking the
    // smallest encoding keeps contexts reproducible.
    nu_ = 1;
    while (subfield_trace(nu_) != 1) ++nu_;
  }

  build_extension_tables();
}

void FieldCtx::build_subfield_tables() {
  const uint32_t n = q_ - 1;
  auto raw_pow = [&](uint32_t a, uint32_t e) {
    uint32_t r = 1;
    while (e) {
      if (e & 1) r = clmul_reduce(r, a, poly_, m_);
      a = clmul_reduce(a, a, poly_, m_);
      e >>= 1;
    }
    return r;
  };
  const auto primes = prime_factors(n);
  genq_ = 0;
  for (uint32_t cand = 2; cand < q_; ++cand) {
    bool ok = true;
    for (uint32_t p : primes)
      if (raw_pow(cand, n / p) == 1) {
        ok = false;
        break;
      }
    if (ok) {
      genq_ = cand;
      break;
    }
  }
  if (genq_ == 0) throw InvariantViolation("no generator found for F_q");

  expq_.assign(2 * n, 0);
  logq_.assign(q_, 0);
  std::vector<bool> seen(q_, false);
  uint32_t cur = 1;
  for (uint32_t i = 0; i < n; ++i) {
    if (seen[cur]) throw InvariantViolation("F_q generator order check failed");
    seen[cur] = true;
    expq_[i] = cur;
    expq_[i + n] = cur;
    logq_[cur] = i;
    cur = clmul_reduce(cur, genq_, poly_, m_);
  }
  if (cur != 1) throw InvariantViolation("F_q generator order check failed");
}

uint32_t FieldCtx::subfield_trace(uint32_t x) const {
  uint32_t t = x, s = x;
  for (int i = 1; i < m_; ++i) {
    s = clmul_reduce(s, s, poly_, m_);
    t ^= s;
  }
  if (t > 1) throw InvariantViolation("trace landed outside F_2");
  return t;
}

uint32_t FieldCtx::tower_mul(uint32_t a, uint32_t b) const {
  const uint32_t mask = q_ - 1;
  const uint32_t al = a & mask, ah = a >> m_;
  const uint32_t bl = b & mask, bh = b >> m_;
  // (al + ah*B)(bl + bh*B) with B^2 = B + nu
  const uint32_t ll = mulq(al, bl);
  const uint32_t hh = mulq(ah, bh);
  const uint32_t cross = mulq(al, bh) ^ mulq(ah, bl);
  const uint32_t lo = ll ^ mulq(hh, nu_);
  const uint32_t hi = cross ^ hh;
  return lo | (hi << m_);
}

void FieldCtx::build_extension_tables() {
  const uint32_t n = q2_ - 1;
  auto tpow = [&](uint32_t a, uint32_t e) {
    uint32_t r = 1;
    while (e) {
      if (e & 1) r = tower_mul(r, a);
      a = tower_mul(a, a);
      e >>= 1;
    }
    return r;
  };
  const auto primes = prime_factors(n);
  gen2_ = 0;
  for (uint32_t cand = 2; cand < q2_; ++cand) {
    bool ok = true;
    for (uint32_t p : primes)
      if (tpow(cand, n / p) == 1) {
        ok = false;
        break;
      }
    if (ok) {
      gen2_ = cand;
      break;
    }
  }
  if (gen2_ == 0) throw InvariantViolation("no generator found for F_{q^2}");

  exp2_.assign(2 * n, 0);
  log2_.assign(q2_, 0);
  std::vector<bool> seen(q2_, false);
  uint32_t cur = 1;
  for (uint32_t i = 0; i < n; ++i) {
    if (seen[cur]) throw InvariantViolation("F_{q^2} generator order check failed");
    seen[cur] = true;
    exp2_[i] = cur;
    exp2_[i + n] = cur;
    log2_[cur] = i;
    cur = tower_mul(cur, gen2_);
  }
  if (cur != 1) throw InvariantViolation("F_{q^2} generator order check failed");
}

Elem FieldCtx::element(uint32_t encoding) const {
  if (encoding >= q2_) throw std::invalid_argument("encoding out of range for field");
  return Elem{encoding};
}

Elem FieldCtx::inv(Elem a) const {
  if (a.v == 0) throw std::domain_error("inversion of zero");
  const uint32_t n = q2_ - 1;
  return Elem{exp2_[n - log2_[a.v]]};
}

Elem FieldCtx::pow(Elem a, long long e) const {
  const long long n = static_cast<long long>(q2_) - 1;
  if (a.v == 0) {
    if (e == 0) return kOne;
    if (e < 0) throw std::domain_error("negative power of zero");
    return kZero;
  }
  long long r = e % n;
  if (r < 0) r += n;
  const uint64_t idx = static_cast<uint64_t>(log2_[a.v]) * static_cast<uint64_t>(r) %
                       static_cast<uint64_t>(n);
  return Elem{exp2_[idx]};
}

Elem FieldCtx::sqrt(Elem a) const {
  if (a.v == 0) return kZero;
  return pow(a, 1ll << (2 * m_ - 1));
}

Elem FieldCtx::norm(Elem a) const {
  const uint32_t mask = q_ - 1;
  const uint32_t lo = a.v & mask, hi = a.v >> m_;
  // z * z^q = lo^2 + lo*hi + nu*hi^2, an F_q element
  return Elem{mulq(lo, lo) ^ mulq(lo, hi) ^ mulq(nu_, mulq(hi, hi))};
}

int FieldCtx::trace_m(Elem a) const {
  if (!in_subfield(a)) throw std::invalid_argument("trace_m argument not in F_q");
  uint32_t t = a.v, s = a.v;
  for (int i = 1; i < m_; ++i) {
    s = mulq(s, s);
    t ^= s;
  }
  if (t > 1) throw InvariantViolation("trace landed outside F_2");
  return static_cast<int>(t);
}

PolarForm FieldCtx::polar_decompose(Elem z) const {
  if (z.v == 0) throw std::domain_error("polar decomposition of zero");
  const Elem radius = sqrt(norm(z));  // stays in F_q
  return PolarForm{radius, mul(z, inv(radius))};
}

std::optional<Elem> FieldCtx::solve_artin_schreier(Elem c) const {
  if (!in_subfield(c)) throw std::invalid_argument("argument not in F_q");
  if (trace_m(c) != 0) return std::nullopt;
  for (uint32_t w = 0; w < q_; ++w)
    if ((mulq(w, w) ^ w) == c.v) return Elem{w};
  throw InvariantViolation("trace-zero element with no Artin-Schreier root");
}

std::vector<Elem> FieldCtx::solve_quadratic_in_unit_circle(Elem a, Elem b, Elem c) const {
  if (!in_subfield(a) || !in_subfield(b) || !in_subfield(c))
    throw std::invalid_argument("coefficients must lie in F_q");
  if (a.v == 0 && b.v == 0 && c.v == 0)
    throw std::invalid_argument("all-zero coefficients");
  std::vector<Elem> roots;
  for (const Elem z : unit_circle()) {
    if (z == kOne) continue;
    const Elem val = add(add(mul(a, sq(z)), mul(b, z)), c);
    if (val == kZero) roots.push_back(z);
  }
  return roots;
}

Elem FieldCtx::lift_q_minus_1(Elem y) const {
  if (!in_unit_circle(y)) throw std::invalid_argument("argument not on the unit circle");
  const uint32_t l = log2_[y.v];
  if (l % (q_ - 1) != 0)
    throw InvariantViolation("unit-circle log not divisible by q-1");
  return Elem{exp2_[l / (q_ - 1)]};
}

std::vector<Elem> FieldCtx::unit_circle() const {
  std::vector<Elem> out;
  out.reserve(q_ + 1);
  for (uint32_t k = 0; k <= q_; ++k)
    out.push_back(Elem{exp2_[static_cast<uint64_t>(q_ - 1) * k % (q2_ - 1)]});
  return out;
}

bool FieldCtx::is_primitive(Elem a) const {
  if (a.v == 0) return false;
  return std::gcd(log2_[a.v], q2_ - 1) == 1;
}

uint32_t FieldCtx::dlog(Elem a) const {
  if (a.v == 0) throw std::domain_error("discrete log of zero");
  return log2_[a.v];
}

}  // namespace kimgold
