#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <memory>
#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace knotprime {

/// Integer polynomial as coefficient list, lowest degree first.
using IntPoly = std::vector<std::int64_t>;

IntPoly cyclotomic_polynomial(unsigned d);

/// Smallest prime q >= min_q with q = 1 mod d.
std::uint64_t find_prime_with_root(std::uint64_t d, std::uint64_t min_q = 2);

std::uint64_t pow_mod(std::uint64_t base, std::uint64_t exp, std::uint64_t mod);
std::uint64_t multiplicative_order(std::uint64_t x, std::uint64_t q);

/// Smallest generator of F_q^*.
std::uint64_t smallest_generator(std::uint64_t q);

class PrimeField {
 public:
  using Elem = std::uint64_t;

  explicit PrimeField(std::uint64_t q);
  std::uint64_t modulus() const { return q_; }

  Elem zero() const { return 0; }
  Elem one() const { return 1 % q_; }
  Elem from_int(std::int64_t v) const;
  Elem add(Elem a, Elem b) const { return (a + b) % q_; }
  Elem sub(Elem a, Elem b) const { return (a + q_ - b) % q_; }
  Elem neg(Elem a) const { return a ? q_ - a : 0; }
  Elem mul(Elem a, Elem b) const { return static_cast<Elem>((static_cast<unsigned __int128>(a) * b) % q_); }
  Elem inv(Elem a) const;
  Elem pow(Elem a, std::uint64_t e) const { return pow_mod(a, e, q_); }
  bool is_zero(Elem a) const { return a == 0; }
  std::string describe() const { return "F_" + std::to_string(q_); }

 private:
  std::uint64_t q_;
};

/// Q(zeta_d) = Q[x] / Phi_d(x); elements are rational coefficient vectors of
/// length deg Phi_d.
class CyclotomicField {
 public:
  using Elem = std::vector<mpq_class>;

  explicit CyclotomicField(unsigned d);
  unsigned conductor() const { return d_; }
  std::size_t degree() const { return phi_.size() - 1; }

  Elem zero() const { return Elem(degree()); }
  Elem one() const;
  Elem from_int(std::int64_t v) const;
  /// x^k reduced, i.e. zeta_d^k for any integer k.
  Elem zeta_pow(std::int64_t k) const;
  Elem add(const Elem& a, const Elem& b) const;
  Elem sub(const Elem& a, const Elem& b) const;
  Elem neg(const Elem& a) const;
  Elem mul(const Elem& a, const Elem& b) const;
  Elem inv(const Elem& a) const;
  bool is_zero(const Elem& a) const;
  std::string describe() const { return "Q(zeta_" + std::to_string(d_) + ")"; }

 private:
  Elem reduce(std::vector<mpq_class> v) const;

  unsigned d_;
  std::vector<mpq_class> phi_;  // monic, lowest degree first
};

/// A value in one specific field, tagged by backend and modulus/conductor.
/// Arithmetic between different fields throws std::invalid_argument.
class FieldElem {
 public:
  static FieldElem finite(std::uint64_t q, std::uint64_t value);
  static FieldElem cyclotomic(std::shared_ptr<const CyclotomicField> field, CyclotomicField::Elem value);

  bool is_finite() const { return std::holds_alternative<Finite>(v_); }
  std::uint64_t modulus() const;      // finite only
  std::uint64_t finite_value() const;  // finite only
  unsigned conductor() const;          // cyclotomic only
  const CyclotomicField::Elem& cyclotomic_value() const;

  FieldElem operator+(const FieldElem& o) const;
  FieldElem operator-(const FieldElem& o) const;
  FieldElem operator*(const FieldElem& o) const;
  FieldElem inverse() const;
  FieldElem pow(std::int64_t e) const;
  bool is_zero() const;
  bool is_one() const;
  bool operator==(const FieldElem& o) const;
  std::string to_string() const;

 private:
  struct Finite {
    std::uint64_t q;
    std::uint64_t v;
  };
  struct Cyclo {
    std::shared_ptr<const CyclotomicField> field;
    CyclotomicField::Elem v;
  };
  explicit FieldElem(std::variant<Finite, Cyclo> v) : v_(std::move(v)) {}
  void check_same(const FieldElem& o) const;

  std::variant<Finite, Cyclo> v_;
};

/// g^((q-1)/d) for the smallest generator g of F_q^*; exact order d.
/// Throws std::invalid_argument if d does not divide q - 1.
FieldElem primitive_root_of_unity(std::uint64_t q, std::uint64_t d);

template <class F>
using FieldMatrix = std::vector<std::vector<typename F::Elem>>;

/// Rank of a dense matrix by Gaussian elimination.
template <class F>
std::size_t rank(FieldMatrix<F> m, const F& field) {
  const std::size_t rows = m.size();
  const std::size_t cols = rows ? m[0].size() : 0;
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t piv = r;
    while (piv < rows && field.is_zero(m[piv][c])) ++piv;
    if (piv == rows) continue;
    std::swap(m[r], m[piv]);
    auto inv = field.inv(m[r][c]);
    for (std::size_t j = c; j < cols; ++j) m[r][j] = field.mul(m[r][j], inv);
    for (std::size_t i = r + 1; i < rows; ++i) {
      if (field.is_zero(m[i][c])) continue;
      auto f = m[i][c];
      for (std::size_t j = c; j < cols; ++j) m[i][j] = field.sub(m[i][j], field.mul(f, m[r][j]));
    }
    ++r;
  }
  return r;
}

/// Basis of the right kernel {x : m x = 0}, from the reduced row echelon form.
template <class F>
std::vector<std::vector<typename F::Elem>> nullspace_basis(FieldMatrix<F> m, const F& field, std::size_t cols) {
  const std::size_t rows = m.size();
  std::vector<std::size_t> pivot_cols;
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t piv = r;
    while (piv < rows && field.is_zero(m[piv][c])) ++piv;
    if (piv == rows) continue;
    std::swap(m[r], m[piv]);
    auto inv = field.inv(m[r][c]);
    for (std::size_t j = 0; j < cols; ++j) m[r][j] = field.mul(m[r][j], inv);
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == r || field.is_zero(m[i][c])) continue;
      auto f = m[i][c];
      for (std::size_t j = 0; j < cols; ++j) m[i][j] = field.sub(m[i][j], field.mul(f, m[r][j]));
    }
    pivot_cols.push_back(c);
    ++r;
  }
  std::vector<bool> is_pivot(cols, false);
  for (auto c : pivot_cols) is_pivot[c] = true;
  std::vector<std::vector<typename F::Elem>> basis;
  for (std::size_t free = 0; free < cols; ++free) {
    if (is_pivot[free]) continue;
    std::vector<typename F::Elem> v(cols, field.zero());
    v[free] = field.one();
    for (std::size_t k = 0; k < pivot_cols.size(); ++k) v[pivot_cols[k]] = field.neg(m[k][free]);
    basis.push_back(std::move(v));
  }
  return basis;
}

/// (rank, nullity) with nullity counted on columns.
template <class F>
std::pair<std::size_t, std::size_t> rank_nullity(const FieldMatrix<F>& m, const F& field, std::size_t cols) {
  std::size_t r = rank(m, field);
  return {r, cols - r};
}

/// rank_nullity over FieldElem entries; all entries must share one field.
std::pair<std::size_t, std::size_t> rank_nullity(const std::vector<std::vector<FieldElem>>& m);

}  // namespace knotprime
