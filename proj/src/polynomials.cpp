#include "knotprime/polynomials.hpp"

#include <stdexcept>
#include <utility>

#include "knotprime/errors.hpp"

namespace knotprime {

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

LaurentPoly1 abelianize(const GroupRingElem& e) {
  LaurentPoly1 f;
  for (auto [key, c] : e) f += LaurentPoly1::monomial(c, key == 0 ? 0 : 1);
  return f;
}

PolyMatrix abelianize(const FoxJacobian& jac) {
  PolyMatrix m(jac.rows, std::vector<LaurentPoly1>(jac.cols));
  for (int r = 0; r < jac.rows; ++r)
    for (int c = 0; c < jac.cols; ++c) m[r][c] = abelianize(jac.at(r, c));
  return m;
}

PolyMatrix reduced_alexander_matrix(const FoxJacobian& jac, std::optional<int> deleted_column) {
  const int del = deleted_column.value_or(jac.cols - 1);
  if (del < 0 || del >= jac.cols) throw std::invalid_argument("deleted column out of range");
  PolyMatrix full = abelianize(jac);
  PolyMatrix m(jac.rows);
  for (int r = 0; r < jac.rows; ++r)
    for (int c = 0; c < jac.cols; ++c)
      if (c != del) m[r].push_back(full[r][c]);
  return m;
}

LaurentPoly1 determinant(PolyMatrix m) {
  const std::size_t n = m.size();
  if (n == 0) return LaurentPoly1(1);
  for (const auto& row : m)
    if (row.size() != n) throw std::invalid_argument("determinant of non-square matrix");
  int sign = 1;
  LaurentPoly1 prev(1);
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (m[k][k].is_zero()) {
      std::size_t swap_row = k + 1;
      while (swap_row < n && m[swap_row][k].is_zero()) ++swap_row;
      if (swap_row == n) return {};
      std::swap(m[k], m[swap_row]);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        LaurentPoly1 num = m[k][k] * m[i][j] - m[i][k] * m[k][j];
        auto q = exact_quotient(num, prev);
        if (!q) throw ConsistencyError("Bareiss step not exact");
        m[i][j] = std::move(*q);
      }
      m[i][k] = LaurentPoly1{};
    }
    prev = m[k][k];
  }
  LaurentPoly1 det = m[n - 1][n - 1];
  return sign > 0 ? det : -det;
}

LaurentPoly1 alexander_poly(const FoxJacobian& jac, std::optional<int> deleted_column) {
  if (jac.cols <= 1) return LaurentPoly1(1);
  LaurentPoly1 det = determinant(reduced_alexander_matrix(jac, deleted_column));
  if (det.is_zero()) throw ConsistencyError("Alexander determinant vanished; not a knot presentation");
  return det.normalized();
}

LaurentPoly1 specialize_s(const LaurentPoly2& omega, std::int64_t value) {
  LaurentPoly1 f = omega.specialize_s(value);
  return value == -1 ? f.normalized() : f;
}

std::vector<std::vector<mpz_class>> circulant_matrix(const LaurentPoly1& delta, unsigned p) {
  if (p == 0) throw std::invalid_argument("circulant of order 0");
  std::vector<mpz_class> a(p, 0);
  const int ip = static_cast<int>(p);
  for (auto [e, c] : delta.terms()) {
    int r = ((e % ip) + ip) % ip;
    a[r] += mpz_class(static_cast<long>(c));
  }
  std::vector<std::vector<mpz_class>> m(p, std::vector<mpz_class>(p));
  for (unsigned i = 0; i < p; ++i)
    for (unsigned j = 0; j < p; ++j) m[i][j] = a[(i + p - j) % p];
  return m;
}

mpz_class integer_determinant(std::vector<std::vector<mpz_class>> m) {
  const std::size_t n = m.size();
  if (n == 0) return 1;
  int sign = 1;
  mpz_class prev = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (m[k][k] == 0) {
      std::size_t r = k + 1;
      while (r < n && m[r][k] == 0) ++r;
      if (r == n) return 0;
      std::swap(m[k], m[r]);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        mpz_class v = m[k][k] * m[i][j] - m[i][k] * m[k][j];
        mpz_divexact(v.get_mpz_t(), v.get_mpz_t(), prev.get_mpz_t());
        m[i][j] = v;
      }
      m[i][k] = 0;
    }
    prev = m[k][k];
  }
  return sign > 0 ? mpz_class(m[n - 1][n - 1]) : mpz_class(-m[n - 1][n - 1]);
}

mpz_class order_formula(const LaurentPoly1& delta, unsigned p) {
  if (!is_prime(p)) throw std::invalid_argument("order_formula: p must be prime");
  mpz_class det = integer_determinant(circulant_matrix(delta, p));
  return abs(det);
}

bool divides_1var(const LaurentPoly1& f, const LaurentPoly1& g) {
  if (f.is_zero()) throw std::invalid_argument("divides_1var: divisor is zero");
  return exact_quotient(g, f).has_value();
}

}  // namespace knotprime
