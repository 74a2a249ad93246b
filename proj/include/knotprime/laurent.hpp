#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace knotprime {

/// Integer Laurent polynomial in one variable t. Zero coefficients are never
/// stored. Arithmetic throws std::overflow_error rather than wrapping.
class LaurentPoly1 {
 public:
  using Terms = std::map<int, std::int64_t>;

  LaurentPoly1() = default;
  explicit LaurentPoly1(std::int64_t constant);
  static LaurentPoly1 monomial(std::int64_t coeff, int exponent);
  /// Builds from (exponent, coefficient) pairs; repeated exponents add.
  static LaurentPoly1 from_pairs(const std::vector<std::pair<int, std::int64_t>>& pairs);

  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  int min_exponent() const;
  int max_exponent() const;
  std::int64_t coeff(int exponent) const;
  std::int64_t leading_coeff() const;
  std::vector<std::pair<int, std::int64_t>> pairs() const;

  std::int64_t eval_at_one() const;
  std::int64_t eval_at_minus_one() const;

  LaurentPoly1 shifted(int k) const;  ///< multiply by t^k
  LaurentPoly1 inverted() const;      ///< t -> t^{-1}
  /// Symmetric representative: exponents centred on zero (or starting at zero
  /// when the span is odd), sign chosen so f(1) > 0, or leading coefficient > 0
  /// when f(1) = 0.
  LaurentPoly1 normalized() const;
  bool is_palindromic() const;

  LaurentPoly1& operator+=(const LaurentPoly1& other);
  LaurentPoly1& operator-=(const LaurentPoly1& other);
  friend LaurentPoly1 operator+(LaurentPoly1 a, const LaurentPoly1& b) { return a += b; }
  friend LaurentPoly1 operator-(LaurentPoly1 a, const LaurentPoly1& b) { return a -= b; }
  friend LaurentPoly1 operator*(const LaurentPoly1& a, const LaurentPoly1& b);
  LaurentPoly1 operator-() const;
  friend bool operator==(const LaurentPoly1&, const LaurentPoly1&) = default;

  std::string to_string(char var = 't') const;

 private:
  void add_term(int exponent, std::int64_t coeff);
  Terms terms_;
};

/// Equality up to multiplication by a unit +-t^k.
bool equal_up_to_unit(const LaurentPoly1& a, const LaurentPoly1& b);

/// Exact quotient num / den in Z[t, t^{-1}], or nullopt when den does not
/// divide num. Throws std::invalid_argument when den is zero.
std::optional<LaurentPoly1> exact_quotient(const LaurentPoly1& num, const LaurentPoly1& den);

/// Two-variable integer Laurent polynomial sum c_{i,j} s^j t^i. Keys are
/// (i, j) = (exponent of t, exponent of s).
class LaurentPoly2 {
 public:
  using Key = std::pair<int, int>;
  using Terms = std::map<Key, std::int64_t>;

  LaurentPoly2() = default;
  explicit LaurentPoly2(std::int64_t constant);
  /// Builds from [i, j, c] triples meaning c * s^j t^i.
  static LaurentPoly2 from_triples(const std::vector<std::array<std::int64_t, 3>>& triples);

  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::int64_t coeff(int i, int j) const;
  std::vector<std::array<std::int64_t, 3>> triples() const;

  bool is_one() const;
  bool has_nonnegative_coeffs() const;
  /// c_{i,j} = c_{-i, j-2i} for every (i, j).
  bool is_symmetric() const;
  /// Symmetric and nonnegative, after t-centring.
  bool is_positive_symmetric() const;

  std::int64_t total() const;  ///< value at s = t = 1
  LaurentPoly1 specialize_s(std::int64_t s_value) const;

  LaurentPoly2 shifted(int dt, int ds) const;  ///< multiply by t^dt s^ds
  LaurentPoly2 mirrored() const;               ///< (i, j) -> (-i, -j)
  /// Canonical representative modulo monomials s^a t^b: t-exponents centred
  /// on zero, s shifted so the minimal delta-grading j - i is zero.
  LaurentPoly2 normalized() const;

  friend LaurentPoly2 operator*(const LaurentPoly2& a, const LaurentPoly2& b);
  friend bool operator==(const LaurentPoly2&, const LaurentPoly2&) = default;
  friend auto operator<=>(const LaurentPoly2& a, const LaurentPoly2& b) {
    return a.terms_ <=> b.terms_;
  }

  std::string to_string() const;

 private:
  void add_term(Key key, std::int64_t coeff);
  Terms terms_;
};

namespace checked {
std::int64_t add(std::int64_t a, std::int64_t b);
std::int64_t mul(std::int64_t a, std::int64_t b);
}  // namespace checked

}  // namespace knotprime
