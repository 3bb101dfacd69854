#pragma once

// Arithmetic in GF(p^m) for p^m <= 2^31.
//
// Elements are encoded as integers: the element c_0 + c_1 x + ... + c_{m-1} x^{m-1}
// (reduced modulo the field's irreducible polynomial) has code
// c_0 + c_1 p + ... + c_{m-1} p^{m-1}. That code is also the fixed enumeration
// of field elements used by the polynomial construction of UI sequence sets.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

namespace pcac {

struct FieldElement {
  std::uint32_t code = 0;
  friend bool operator==(FieldElement, FieldElement) = default;
  friend auto operator<=>(FieldElement, FieldElement) = default;
};

struct PrimePower {
  std::uint32_t prime;
  std::uint32_t exponent;
};

bool is_prime(std::uint64_t n);
/// {p, e} with n = p^e, or nullopt when n is not a prime power (n = 1 included).
std::optional<PrimePower> as_prime_power(std::uint64_t n);
/// Distinct prime divisors in increasing order.
std::vector<std::uint64_t> prime_factors(std::uint64_t n);

class FiniteField {
 public:
  /// Builds GF(p^m). Throws std::invalid_argument when p is not prime or
  /// p^m exceeds 2^31.
  FiniteField(std::uint32_t p, std::uint32_t m);

  std::uint32_t characteristic() const noexcept { return p_; }
  std::uint32_t degree() const noexcept { return m_; }
  std::uint32_t order() const noexcept { return q_; }

  /// Monic modulus, coefficient of x^i at index i (length m + 1).
  std::span<const std::uint32_t> modulus_polynomial() const noexcept { return modulus_; }

  FieldElement zero() const noexcept { return {0}; }
  FieldElement one() const noexcept { return {1}; }
  FieldElement primitive_element() const noexcept { return primitive_; }
  FieldElement element(std::uint32_t code) const;
  /// The prime-field element a mod p.
  FieldElement from_int(std::int64_t a) const;

  std::vector<std::uint32_t> coefficients(FieldElement a) const;
  FieldElement from_coefficients(std::span<const std::uint32_t> coeffs) const;

  FieldElement add(FieldElement a, FieldElement b) const;
  FieldElement sub(FieldElement a, FieldElement b) const;
  FieldElement neg(FieldElement a) const;
  FieldElement mul(FieldElement a, FieldElement b) const;
  FieldElement inv(FieldElement a) const;
  FieldElement pow(FieldElement a, std::uint64_t e) const;

  /// Schoolbook polynomial product reduced modulo the modulus polynomial.
  /// Independent of the log tables; used to build them and to test them.
  FieldElement mul_polynomial(FieldElement a, FieldElement b) const;

  /// alpha^k for the primitive element alpha.
  FieldElement exp(std::uint64_t k) const;
  /// The unique e in [0, q-2] with alpha^e = x. Throws on x = 0.
  std::uint32_t discrete_log(FieldElement x) const;

  /// Multiplicative order of a nonzero element.
  std::uint64_t multiplicative_order(FieldElement a) const;

  /// Elements of the subfield GF(p^d), d dividing m, in increasing code order.
  std::vector<FieldElement> subfield(std::uint32_t d) const;

 private:
  bool has_tables() const noexcept { return !exp_table_.empty(); }
  std::uint32_t bsgs_log(FieldElement x) const;

  std::uint32_t p_;
  std::uint32_t m_;
  std::uint32_t q_;
  std::vector<std::uint32_t> modulus_;
  std::vector<std::uint32_t> place_;  // p^i
  FieldElement primitive_{1};
  std::vector<std::uint32_t> exp_table_;  // alpha^i, i in [0, q-2]
  std::vector<std::uint32_t> log_table_;  // indexed by code; entry 0 unused
};

/// Horner evaluation of sum_i coeffs[i] * x^i.
FieldElement polynomial_eval(const FiniteField& field, std::span<const FieldElement> coeffs,
                             FieldElement x);

}  // namespace pcac
