#include "knotprime/laurent.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace knotprime {

namespace checked {
std::int64_t add(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_add_overflow(a, b, &r)) throw std::overflow_error("integer overflow in add");
  return r;
}
std::int64_t mul(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_mul_overflow(a, b, &r)) throw std::overflow_error("integer overflow in mul");
  return r;
}
}  // namespace checked

// ---------------------------------------------------------------- LaurentPoly1

LaurentPoly1::LaurentPoly1(std::int64_t constant) { add_term(0, constant); }

LaurentPoly1 LaurentPoly1::monomial(std::int64_t coeff, int exponent) {
  LaurentPoly1 f;
  f.add_term(exponent, coeff);
  return f;
}

LaurentPoly1 LaurentPoly1::from_pairs(const std::vector<std::pair<int, std::int64_t>>& pairs) {
  LaurentPoly1 f;
  for (auto [e, c] : pairs) f.add_term(e, c);
  return f;
}

void LaurentPoly1::add_term(int exponent, std::int64_t coeff) {
  if (coeff == 0) return;
  auto [it, inserted] = terms_.try_emplace(exponent, coeff);
  if (!inserted) {
    it->second = checked::add(it->second, coeff);
    if (it->second == 0) terms_.erase(it);
  }
}

int LaurentPoly1::min_exponent() const {
  if (terms_.empty()) throw std::logic_error("min_exponent of zero polynomial");
  return terms_.begin()->first;
}

int LaurentPoly1::max_exponent() const {
  if (terms_.empty()) throw std::logic_error("max_exponent of zero polynomial");
  return terms_.rbegin()->first;
}

std::int64_t LaurentPoly1::coeff(int exponent) const {
  auto it = terms_.find(exponent);
  return it == terms_.end() ? 0 : it->second;
}

std::int64_t LaurentPoly1::leading_coeff() const {
  return terms_.empty() ? 0 : terms_.rbegin()->second;
}

std::vector<std::pair<int, std::int64_t>> LaurentPoly1::pairs() const {
  return {terms_.begin(), terms_.end()};
}

std::int64_t LaurentPoly1::eval_at_one() const {
  std::int64_t s = 0;
  for (auto [e, c] : terms_) s = checked::add(s, c);
  return s;
}

std::int64_t LaurentPoly1::eval_at_minus_one() const {
  std::int64_t s = 0;
  for (auto [e, c] : terms_) s = checked::add(s, (e % 2 == 0) ? c : -c);
  return s;
}

LaurentPoly1 LaurentPoly1::shifted(int k) const {
  LaurentPoly1 f;
  for (auto [e, c] : terms_) f.terms_.emplace(e + k, c);
  return f;
}

LaurentPoly1 LaurentPoly1::inverted() const {
  LaurentPoly1 f;
  for (auto [e, c] : terms_) f.terms_.emplace(-e, c);
  return f;
}

LaurentPoly1 LaurentPoly1::normalized() const {
  if (is_zero()) return {};
  int lo = min_exponent();
  int hi = max_exponent();
  // floor division keeps odd spans starting at a deterministic exponent
  int shift = -(lo + hi) / 2;
  if ((lo + hi) % 2 != 0 && lo + hi < 0) shift += 1;
  LaurentPoly1 f = shifted(shift);
  std::int64_t at_one = f.eval_at_one();
  if (at_one < 0 || (at_one == 0 && f.leading_coeff() < 0)) f = -f;
  return f;
}

bool LaurentPoly1::is_palindromic() const { return *this == inverted(); }

LaurentPoly1& LaurentPoly1::operator+=(const LaurentPoly1& other) {
  for (auto [e, c] : other.terms_) add_term(e, c);
  return *this;
}

LaurentPoly1& LaurentPoly1::operator-=(const LaurentPoly1& other) {
  for (auto [e, c] : other.terms_) add_term(e, -c);
  return *this;
}

LaurentPoly1 operator*(const LaurentPoly1& a, const LaurentPoly1& b) {
  LaurentPoly1 r;
  for (auto [ea, ca] : a.terms_)
    for (auto [eb, cb] : b.terms_) r.add_term(ea + eb, checked::mul(ca, cb));
  return r;
}

LaurentPoly1 LaurentPoly1::operator-() const {
  LaurentPoly1 f;
  for (auto [e, c] : terms_) f.terms_.emplace(e, -c);
  return f;
}

std::string LaurentPoly1::to_string(char var) const {
  if (is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
    auto [e, c] = *it;
    if (!first) os << (c < 0 ? " - " : " + ");
    else if (c < 0) os << "-";
    std::int64_t mag = c < 0 ? -c : c;
    if (mag != 1 || e == 0) os << mag;
    if (e != 0) {
      os << var;
      if (e != 1) os << '^' << e;
    }
    first = false;
  }
  return os.str();
}

bool equal_up_to_unit(const LaurentPoly1& a, const LaurentPoly1& b) {
  if (a.is_zero() || b.is_zero()) return a.is_zero() && b.is_zero();
  LaurentPoly1 sa = a.shifted(-a.min_exponent());
  LaurentPoly1 sb = b.shifted(-b.min_exponent());
  return sa == sb || sa == -sb;
}

std::optional<LaurentPoly1> exact_quotient(const LaurentPoly1& num, const LaurentPoly1& den) {
  if (den.is_zero()) throw std::invalid_argument("division by zero polynomial");
  if (num.is_zero()) return LaurentPoly1{};
  const int den_lo = den.min_exponent();
  const int den_hi = den.max_exponent();
  const std::int64_t lead = den.leading_coeff();
  LaurentPoly1 rem = num;
  LaurentPoly1 quot;
  // Long division from the top; the quotient's lowest exponent is bounded by
  // num.min - den.min, so stop once the remainder cannot be reduced further.
  const int floor_exp = num.min_exponent() - den_lo;
  while (!rem.is_zero()) {
    int e = rem.max_exponent() - den_hi;
    if (e < floor_exp) return std::nullopt;
    std::int64_t c = rem.leading_coeff();
    if (c % lead != 0) return std::nullopt;
    LaurentPoly1 term = LaurentPoly1::monomial(c / lead, e);
    quot += term;
    rem -= term * den;
  }
  return quot;
}

// ---------------------------------------------------------------- LaurentPoly2

LaurentPoly2::LaurentPoly2(std::int64_t constant) { add_term({0, 0}, constant); }

LaurentPoly2 LaurentPoly2::from_triples(const std::vector<std::array<std::int64_t, 3>>& triples) {
  LaurentPoly2 f;
  for (const auto& t : triples) f.add_term({static_cast<int>(t[0]), static_cast<int>(t[1])}, t[2]);
  return f;
}

void LaurentPoly2::add_term(Key key, std::int64_t coeff) {
  if (coeff == 0) return;
  auto [it, inserted] = terms_.try_emplace(key, coeff);
  if (!inserted) {
    it->second = checked::add(it->second, coeff);
    if (it->second == 0) terms_.erase(it);
  }
}

std::int64_t LaurentPoly2::coeff(int i, int j) const {
  auto it = terms_.find({i, j});
  return it == terms_.end() ? 0 : it->second;
}

std::vector<std::array<std::int64_t, 3>> LaurentPoly2::triples() const {
  std::vector<std::array<std::int64_t, 3>> out;
  out.reserve(terms_.size());
  for (auto [k, c] : terms_) out.push_back({k.first, k.second, c});
  return out;
}

bool LaurentPoly2::is_one() const {
  return terms_.size() == 1 && terms_.begin()->first == Key{0, 0} && terms_.begin()->second == 1;
}

bool LaurentPoly2::has_nonnegative_coeffs() const {
  return std::all_of(terms_.begin(), terms_.end(), [](const auto& kv) { return kv.second > 0; });
}

bool LaurentPoly2::is_symmetric() const {
  for (auto [k, c] : terms_) {
    auto [i, j] = k;
    if (coeff(-i, j - 2 * i) != c) return false;
  }
  return true;
}

bool LaurentPoly2::is_positive_symmetric() const {
  if (is_zero() || !has_nonnegative_coeffs()) return false;
  return normalized().is_symmetric();
}

std::int64_t LaurentPoly2::total() const {
  std::int64_t s = 0;
  for (auto [k, c] : terms_) s = checked::add(s, c);
  return s;
}

LaurentPoly1 LaurentPoly2::specialize_s(std::int64_t s_value) const {
  LaurentPoly1 f;
  for (auto [k, c] : terms_) {
    auto [i, j] = k;
    std::int64_t v = c;
    if (s_value == -1) {
      if (j % 2 != 0) v = -v;
    } else if (s_value != 1) {
      if (j < 0) throw std::invalid_argument("specialize_s: negative s power at non-unit value");
      for (int r = 0; r < j; ++r) v = checked::mul(v, s_value);
    }
    f += LaurentPoly1::monomial(v, i);
  }
  return f;
}

LaurentPoly2 LaurentPoly2::shifted(int dt, int ds) const {
  LaurentPoly2 f;
  for (auto [k, c] : terms_) f.terms_.emplace(Key{k.first + dt, k.second + ds}, c);
  return f;
}

LaurentPoly2 LaurentPoly2::mirrored() const {
  LaurentPoly2 f;
  for (auto [k, c] : terms_) f.terms_.emplace(Key{-k.first, -k.second}, c);
  return f;
}

LaurentPoly2 LaurentPoly2::normalized() const {
  if (is_zero()) return {};
  int lo = terms_.begin()->first.first;
  int hi = terms_.rbegin()->first.first;
  int dt = -(lo + hi) / 2;
  if ((lo + hi) % 2 != 0 && lo + hi < 0) dt += 1;
  int min_delta = 0;
  bool first = true;
  for (auto [k, c] : terms_) {
    int delta = k.second - (k.first + dt);
    if (first || delta < min_delta) min_delta = delta;
    first = false;
  }
  return shifted(dt, -min_delta);
}

LaurentPoly2 operator*(const LaurentPoly2& a, const LaurentPoly2& b) {
  LaurentPoly2 r;
  for (auto [ka, ca] : a.terms_)
    for (auto [kb, cb] : b.terms_)
      r.add_term({ka.first + kb.first, ka.second + kb.second}, checked::mul(ca, cb));
  return r;
}

std::string LaurentPoly2::to_string() const {
  if (is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
    auto [k, c] = *it;
    auto [i, j] = k;
    if (!first) os << (c < 0 ? " - " : " + ");
    else if (c < 0) os << "-";
    std::int64_t mag = c < 0 ? -c : c;
    bool bare = (i == 0 && j == 0);
    if (mag != 1 || bare) os << mag;
    if (j != 0) os << "s" << (j != 1 ? "^" + std::to_string(j) : "");
    if (i != 0) os << "t" << (i != 1 ? "^" + std::to_string(i) : "");
    first = false;
  }
  return os.str();
}

}  // namespace knotprime
