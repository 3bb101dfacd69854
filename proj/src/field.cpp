#include "pcac/field.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>
#include <unordered_map>

namespace pcac {

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  if (n % 2 == 0) return n == 2;
  for (std::uint64_t d = 3; d * d <= n; d += 2) {
    if (n % d == 0) return false;
  }
  return true;
}

std::optional<PrimePower> as_prime_power(std::uint64_t n) {
  if (n < 2) return std::nullopt;
  std::uint64_t p = 0;
  for (std::uint64_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) {
      p = d;
      break;
    }
  }
  if (p == 0) return PrimePower{static_cast<std::uint32_t>(n), 1};
  std::uint32_t e = 0;
  while (n % p == 0) {
    n /= p;
    ++e;
  }
  if (n != 1) return std::nullopt;
  return PrimePower{static_cast<std::uint32_t>(p), e};
}

std::vector<std::uint64_t> prime_factors(std::uint64_t n) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) {
      out.push_back(d);
      while (n % d == 0) n /= d;
    }
  }
  if (n > 1) out.push_back(n);
  return out;
}

namespace {

using Poly = std::vector<std::uint32_t>;  // coefficient of x^i at index i

void trim(Poly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

std::uint32_t inverse_mod(std::uint32_t a, std::uint32_t p) {
  // p is prime: a^(p-2)
  std::uint64_t result = 1, base = a % p;
  for (std::uint32_t e = p - 2; e > 0; e >>= 1) {
    if (e & 1) result = result * base % p;
    base = base * base % p;
  }
  return static_cast<std::uint32_t>(result);
}

// Remainder of a modulo b over GF(p); b nonzero.
Poly poly_mod(Poly a, const Poly& b, std::uint32_t p) {
  trim(a);
  const std::size_t db = b.size() - 1;
  const std::uint64_t lead_inv = inverse_mod(b.back(), p);
  while (a.size() >= b.size()) {
    const std::uint64_t factor = a.back() * lead_inv % p;
    const std::size_t shift = a.size() - 1 - db;
    for (std::size_t i = 0; i <= db; ++i) {
      a[shift + i] = static_cast<std::uint32_t>((a[shift + i] + (p - factor) * b[i]) % p);
    }
    trim(a);
  }
  return a;
}

// Monic irreducibility by trial division with every monic polynomial of degree <= m/2.
bool is_irreducible(const Poly& f, std::uint32_t p) {
  const std::size_t m = f.size() - 1;
  if (m <= 1) return true;
  for (std::size_t d = 1; d <= m / 2; ++d) {
    std::uint64_t count = 1;
    for (std::size_t i = 0; i < d; ++i) count *= p;
    for (std::uint64_t code = 0; code < count; ++code) {
      Poly g(d + 1, 0);
      std::uint64_t c = code;
      for (std::size_t i = 0; i < d; ++i) {
        g[i] = static_cast<std::uint32_t>(c % p);
        c /= p;
      }
      g[d] = 1;
      if (poly_mod(f, g, p).empty()) return false;
    }
  }
  return true;
}

constexpr std::uint32_t kTableLimit = 1u << 20;

}  // namespace

FiniteField::FiniteField(std::uint32_t p, std::uint32_t m) : p_(p), m_(m) {
  if (!is_prime(p)) throw std::invalid_argument(std::to_string(p) + " is not prime");
  if (m == 0) throw std::invalid_argument("field degree must be positive");
  std::uint64_t q = 1;
  for (std::uint32_t i = 0; i < m; ++i) {
    place_.push_back(static_cast<std::uint32_t>(q));
    q *= p;
    if (q > (std::uint64_t{1} << 31)) {
      throw std::invalid_argument("field order " + std::to_string(p) + "^" + std::to_string(m) +
                                  " exceeds 2^31");
    }
  }
  q_ = static_cast<std::uint32_t>(q);

  // Lexicographically first monic irreducible polynomial of degree m.
  modulus_.clear();
  for (std::uint64_t low = 0; low < q_; ++low) {
    Poly f(m + 1, 0);
    std::uint64_t c = low;
    for (std::uint32_t i = 0; i < m; ++i) {
      f[i] = static_cast<std::uint32_t>(c % p);
      c /= p;
    }
    f[m] = 1;
    if (is_irreducible(f, p)) {
      modulus_ = std::move(f);
      break;
    }
  }
  if (modulus_.empty()) throw std::logic_error("no irreducible polynomial found");

  const std::uint64_t group = q_ - 1;
  const auto factors = prime_factors(group);
  auto slow_pow = [this](FieldElement a, std::uint64_t e) {
    FieldElement result = one();
    while (e > 0) {
      if (e & 1) result = mul_polynomial(result, a);
      a = mul_polynomial(a, a);
      e >>= 1;
    }
    return result;
  };
  bool found = false;
  for (std::uint32_t code = 1; code < q_ && !found; ++code) {
    const FieldElement cand{code};
    found = std::all_of(factors.begin(), factors.end(),
                        [&](std::uint64_t l) { return slow_pow(cand, group / l) != one(); });
    if (found) primitive_ = cand;
  }
  if (!found) throw std::logic_error("no primitive element found");

  if (q_ <= kTableLimit) {
    exp_table_.resize(group);
    log_table_.assign(q_, 0);
    FieldElement x = one();
    for (std::uint32_t i = 0; i < group; ++i) {
      exp_table_[i] = x.code;
      log_table_[x.code] = i;
      x = mul_polynomial(x, primitive_);
    }
    if (x != one()) throw std::logic_error("primitive element has the wrong order");
  }
}

FieldElement FiniteField::element(std::uint32_t code) const {
  if (code >= q_) throw std::out_of_range("field element code out of range");
  return {code};
}

FieldElement FiniteField::from_int(std::int64_t a) const {
  const std::int64_t p = p_;
  return {static_cast<std::uint32_t>(((a % p) + p) % p)};
}

std::vector<std::uint32_t> FiniteField::coefficients(FieldElement a) const {
  std::vector<std::uint32_t> c(m_);
  std::uint32_t v = a.code;
  for (std::uint32_t i = 0; i < m_; ++i) {
    c[i] = v % p_;
    v /= p_;
  }
  return c;
}

FieldElement FiniteField::from_coefficients(std::span<const std::uint32_t> coeffs) const {
  if (coeffs.size() > m_) throw std::invalid_argument("too many coefficients for the field degree");
  std::uint32_t code = 0;
  for (std::size_t i = 0; i < coeffs.size(); ++i) code += (coeffs[i] % p_) * place_[i];
  return {code};
}

FieldElement FiniteField::add(FieldElement a, FieldElement b) const {
  if (p_ == 2) return {a.code ^ b.code};
  std::uint32_t code = 0;
  std::uint32_t x = a.code, y = b.code;
  for (std::uint32_t i = 0; i < m_; ++i) {
    code += ((x % p_ + y % p_) % p_) * place_[i];
    x /= p_;
    y /= p_;
  }
  return {code};
}

FieldElement FiniteField::neg(FieldElement a) const {
  if (p_ == 2) return a;
  std::uint32_t code = 0;
  std::uint32_t x = a.code;
  for (std::uint32_t i = 0; i < m_; ++i) {
    code += ((p_ - x % p_) % p_) * place_[i];
    x /= p_;
  }
  return {code};
}

FieldElement FiniteField::sub(FieldElement a, FieldElement b) const { return add(a, neg(b)); }

FieldElement FiniteField::mul_polynomial(FieldElement a, FieldElement b) const {
  const auto ca = coefficients(a);
  const auto cb = coefficients(b);
  Poly prod(2 * m_ - 1, 0);
  for (std::uint32_t i = 0; i < m_; ++i) {
    if (ca[i] == 0) continue;
    for (std::uint32_t j = 0; j < m_; ++j) {
      prod[i + j] = static_cast<std::uint32_t>((prod[i + j] + std::uint64_t{ca[i]} * cb[j]) % p_);
    }
  }
  const Poly r = poly_mod(std::move(prod), modulus_, p_);
  return from_coefficients(r);
}

FieldElement FiniteField::mul(FieldElement a, FieldElement b) const {
  if (a.code == 0 || b.code == 0) return zero();
  if (!has_tables()) return mul_polynomial(a, b);
  const std::uint64_t e = (std::uint64_t{log_table_[a.code]} + log_table_[b.code]) % (q_ - 1);
  return {exp_table_[e]};
}

FieldElement FiniteField::pow(FieldElement a, std::uint64_t e) const {
  if (a.code == 0) return e == 0 ? one() : zero();
  if (has_tables()) {
    const std::uint64_t g = q_ - 1;
    return {exp_table_[(log_table_[a.code] * (e % g)) % g]};
  }
  FieldElement result = one();
  while (e > 0) {
    if (e & 1) result = mul(result, a);
    a = mul(a, a);
    e >>= 1;
  }
  return result;
}

FieldElement FiniteField::inv(FieldElement a) const {
  if (a.code == 0) throw std::domain_error("zero has no multiplicative inverse");
  return pow(a, q_ - 2);
}

FieldElement FiniteField::exp(std::uint64_t k) const {
  if (q_ == 2) return one();
  if (has_tables()) return {exp_table_[k % (q_ - 1)]};
  return pow(primitive_, k);
}

std::uint32_t FiniteField::discrete_log(FieldElement x) const {
  if (x.code == 0) throw std::domain_error("discrete log of zero is undefined");
  if (x.code >= q_) throw std::out_of_range("field element code out of range");
  if (has_tables()) return log_table_[x.code];
  return bsgs_log(x);
}

std::uint32_t FiniteField::bsgs_log(FieldElement x) const {
  const std::uint64_t group = q_ - 1;
  const auto step = static_cast<std::uint64_t>(std::ceil(std::sqrt(static_cast<double>(group))));
  std::unordered_map<std::uint32_t, std::uint64_t> baby;
  FieldElement cur = one();
  for (std::uint64_t j = 0; j < step; ++j) {
    baby.emplace(cur.code, j);
    cur = mul(cur, primitive_);
  }
  const FieldElement giant = inv(pow(primitive_, step));
  FieldElement y = x;
  for (std::uint64_t i = 0; i <= step; ++i) {
    if (auto it = baby.find(y.code); it != baby.end()) {
      return static_cast<std::uint32_t>((i * step + it->second) % group);
    }
    y = mul(y, giant);
  }
  throw std::logic_error("discrete log not found");
}

std::uint64_t FiniteField::multiplicative_order(FieldElement a) const {
  if (a.code == 0) throw std::domain_error("zero has no multiplicative order");
  std::uint64_t order = q_ - 1;
  for (std::uint64_t l : prime_factors(q_ - 1)) {
    while (order % l == 0 && pow(a, order / l) == one()) order /= l;
  }
  return order;
}

std::vector<FieldElement> FiniteField::subfield(std::uint32_t d) const {
  if (d == 0 || m_ % d != 0) throw std::invalid_argument("subfield degree must divide the field degree");
  std::uint64_t sub_order = 1;
  for (std::uint32_t i = 0; i < d; ++i) sub_order *= p_;
  const std::uint64_t stride = (std::uint64_t{q_} - 1) / (sub_order - 1);
  std::vector<FieldElement> out{zero()};
  for (std::uint64_t j = 0; j + 1 < sub_order; ++j) out.push_back(exp(j * stride));
  std::sort(out.begin(), out.end());
  return out;
}

FieldElement polynomial_eval(const FiniteField& field, std::span<const FieldElement> coeffs, FieldElement x) {
  FieldElement acc = field.zero();
  for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) acc = field.add(field.mul(acc, x), *it);
  return acc;
}

}  // namespace pcac
