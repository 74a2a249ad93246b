#include "knotprime/fields.hpp"

#include <sstream>
#include <stdexcept>

#include "knotprime/polynomials.hpp"

namespace knotprime {

IntPoly cyclotomic_polynomial(unsigned d) {
  if (d == 0) throw std::invalid_argument("cyclotomic polynomial of order 0");
  // x^d - 1 divided by Phi_e for each proper divisor e
  IntPoly num(d + 1, 0);
  num[0] = -1;
  num[d] = 1;
  for (unsigned e = 1; e < d; ++e) {
    if (d % e != 0) continue;
    IntPoly den = cyclotomic_polynomial(e);
    // monic long division from the top
    IntPoly q(num.size() - den.size() + 1, 0);
    for (std::size_t k = q.size(); k-- > 0;) {
      std::int64_t c = num[k + den.size() - 1];
      q[k] = c;
      for (std::size_t j = 0; j < den.size(); ++j) num[k + j] -= c * den[j];
    }
    num = std::move(q);
  }
  return num;
}

std::uint64_t pow_mod(std::uint64_t base, std::uint64_t exp, std::uint64_t mod) {
  unsigned __int128 r = 1 % mod, b = base % mod;
  while (exp) {
    if (exp & 1) r = r * b % mod;
    b = b * b % mod;
    exp >>= 1;
  }
  return static_cast<std::uint64_t>(r);
}

std::uint64_t find_prime_with_root(std::uint64_t d, std::uint64_t min_q) {
  if (d == 0) throw std::invalid_argument("d must be positive");
  std::uint64_t q = std::max<std::uint64_t>(min_q, 2);
  // first candidate >= q with q = 1 mod d (d = 1 admits every prime)
  if (d > 1) {
    std::uint64_t r = q % d;
    if (r != 1) q += (d + 1 - r) % d;
  }
  const std::uint64_t step = d;
  for (;; q += step)
    if (is_prime(q)) return q;
}

namespace {

std::vector<std::uint64_t> prime_divisors(std::uint64_t n) {
  std::vector<std::uint64_t> ps;
  for (std::uint64_t p = 2; p * p <= n; ++p)
    if (n % p == 0) {
      ps.push_back(p);
      while (n % p == 0) n /= p;
    }
  if (n > 1) ps.push_back(n);
  return ps;
}

}  // namespace

std::uint64_t multiplicative_order(std::uint64_t x, std::uint64_t q) {
  if (x % q == 0) throw std::invalid_argument("zero has no multiplicative order");
  std::uint64_t ord = q - 1;
  for (std::uint64_t p : prime_divisors(q - 1))
    while (ord % p == 0 && pow_mod(x, ord / p, q) == 1) ord /= p;
  return ord;
}

std::uint64_t smallest_generator(std::uint64_t q) {
  if (q == 2) return 1;
  auto ps = prime_divisors(q - 1);
  for (std::uint64_t g = 2; g < q; ++g) {
    bool ok = true;
    for (std::uint64_t p : ps)
      if (pow_mod(g, (q - 1) / p, q) == 1) {
        ok = false;
        break;
      }
    if (ok) return g;
  }
  throw std::invalid_argument("modulus is not prime");
}

// ------------------------------------------------------------ F_q

PrimeField::PrimeField(std::uint64_t q) : q_(q) {
  if (!is_prime(q)) throw std::invalid_argument("field modulus must be prime");
}

PrimeField::Elem PrimeField::from_int(std::int64_t v) const {
  std::int64_t r = v % static_cast<std::int64_t>(q_);
  return static_cast<Elem>(r < 0 ? r + static_cast<std::int64_t>(q_) : r);
}

PrimeField::Elem PrimeField::inv(Elem a) const {
  if (a % q_ == 0) throw std::domain_error("inverse of zero");
  return pow_mod(a, q_ - 2, q_);
}

// ------------------------------------------------------------ Q(zeta_d)

CyclotomicField::CyclotomicField(unsigned d) : d_(d) {
  for (auto c : cyclotomic_polynomial(d)) phi_.emplace_back(c);
}

CyclotomicField::Elem CyclotomicField::reduce(std::vector<mpq_class> v) const {
  const std::size_t n = degree();
  for (std::size_t k = v.size(); k-- > n;) {
    if (v[k] == 0) continue;
    mpq_class c = v[k];
    for (std::size_t j = 0; j <= n; ++j) v[k - n + j] -= c * phi_[j];
  }
  v.resize(n);
  return v;
}

CyclotomicField::Elem CyclotomicField::one() const {
  Elem e = zero();
  if (!e.empty()) e[0] = 1;
  return e;
}

CyclotomicField::Elem CyclotomicField::from_int(std::int64_t v) const {
  Elem e = zero();
  if (!e.empty()) e[0] = mpq_class(mpz_class(static_cast<long>(v)));
  return e;
}

CyclotomicField::Elem CyclotomicField::zeta_pow(std::int64_t k) const {
  std::int64_t r = ((k % static_cast<std::int64_t>(d_)) + d_) % d_;
  std::vector<mpq_class> v(r + 1);
  v[r] = 1;
  return reduce(std::move(v));
}

CyclotomicField::Elem CyclotomicField::add(const Elem& a, const Elem& b) const {
  Elem r(a);
  for (std::size_t i = 0; i < r.size(); ++i) r[i] += b[i];
  return r;
}

CyclotomicField::Elem CyclotomicField::sub(const Elem& a, const Elem& b) const {
  Elem r(a);
  for (std::size_t i = 0; i < r.size(); ++i) r[i] -= b[i];
  return r;
}

CyclotomicField::Elem CyclotomicField::neg(const Elem& a) const {
  Elem r(a);
  for (auto& c : r) c = -c;
  return r;
}

CyclotomicField::Elem CyclotomicField::mul(const Elem& a, const Elem& b) const {
  if (a.empty()) return a;
  std::vector<mpq_class> r(2 * a.size() - 1);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; j < b.size(); ++j)
      if (b[j] != 0) r[i + j] += a[i] * b[j];
  }
  return reduce(std::move(r));
}

bool CyclotomicField::is_zero(const Elem& a) const {
  for (const auto& c : a)
    if (c != 0) return false;
  return true;
}

CyclotomicField::Elem CyclotomicField::inv(const Elem& a) const {
  if (is_zero(a)) throw std::domain_error("inverse of zero");
  using Poly = std::vector<mpq_class>;
  auto trim = [](Poly& p) {
    while (!p.empty() && p.back() == 0) p.pop_back();
  };
  // extended Euclid: track s with s * a = r (mod phi)
  Poly r0 = phi_, r1 = a;
  Poly s0, s1{mpq_class(1)};
  trim(r1);
  while (!(r1.size() == 1)) {
    // r0 = q r1 + rem
    Poly rem = r0, q(r0.size() >= r1.size() ? r0.size() - r1.size() + 1 : 1);
    while (rem.size() >= r1.size() && !rem.empty()) {
      std::size_t shift = rem.size() - r1.size();
      mpq_class c = rem.back() / r1.back();
      q[shift] = c;
      for (std::size_t j = 0; j < r1.size(); ++j) rem[shift + j] -= c * r1[j];
      trim(rem);
    }
    // s2 = s0 - q s1
    Poly s2(std::max(s0.size(), q.size() + s1.size()), mpq_class(0));
    for (std::size_t i = 0; i < s0.size(); ++i) s2[i] += s0[i];
    for (std::size_t i = 0; i < q.size(); ++i)
      for (std::size_t j = 0; j < s1.size(); ++j) s2[i + j] -= q[i] * s1[j];
    trim(s2);
    r0 = std::move(r1);
    r1 = std::move(rem);
    s0 = std::move(s1);
    s1 = std::move(s2);
    if (r1.empty()) throw std::domain_error("element not invertible modulo the cyclotomic polynomial");
  }
  mpq_class c = r1[0];
  for (auto& v : s1) v /= c;
  return reduce(std::move(s1));
}

// ------------------------------------------------------------ tagged elements

FieldElem FieldElem::finite(std::uint64_t q, std::uint64_t value) { return FieldElem(Finite{q, value % q}); }

FieldElem FieldElem::cyclotomic(std::shared_ptr<const CyclotomicField> field, CyclotomicField::Elem value) {
  return FieldElem(Cyclo{std::move(field), std::move(value)});
}

std::uint64_t FieldElem::modulus() const { return std::get<Finite>(v_).q; }
std::uint64_t FieldElem::finite_value() const { return std::get<Finite>(v_).v; }
unsigned FieldElem::conductor() const { return std::get<Cyclo>(v_).field->conductor(); }
const CyclotomicField::Elem& FieldElem::cyclotomic_value() const { return std::get<Cyclo>(v_).v; }

void FieldElem::check_same(const FieldElem& o) const {
  if (v_.index() != o.v_.index()) throw std::invalid_argument("mixed field backends");
  if (is_finite()) {
    if (modulus() != o.modulus()) throw std::invalid_argument("mixed finite field moduli");
  } else if (conductor() != o.conductor()) {
    throw std::invalid_argument("mixed cyclotomic conductors");
  }
}

FieldElem FieldElem::operator+(const FieldElem& o) const {
  check_same(o);
  if (is_finite()) return finite(modulus(), PrimeField(modulus()).add(finite_value(), o.finite_value()));
  const auto& f = std::get<Cyclo>(v_).field;
  return cyclotomic(f, f->add(cyclotomic_value(), o.cyclotomic_value()));
}

FieldElem FieldElem::operator-(const FieldElem& o) const {
  check_same(o);
  if (is_finite()) return finite(modulus(), PrimeField(modulus()).sub(finite_value(), o.finite_value()));
  const auto& f = std::get<Cyclo>(v_).field;
  return cyclotomic(f, f->sub(cyclotomic_value(), o.cyclotomic_value()));
}

FieldElem FieldElem::operator*(const FieldElem& o) const {
  check_same(o);
  if (is_finite()) return finite(modulus(), PrimeField(modulus()).mul(finite_value(), o.finite_value()));
  const auto& f = std::get<Cyclo>(v_).field;
  return cyclotomic(f, f->mul(cyclotomic_value(), o.cyclotomic_value()));
}

FieldElem FieldElem::inverse() const {
  if (is_finite()) return finite(modulus(), PrimeField(modulus()).inv(finite_value()));
  const auto& f = std::get<Cyclo>(v_).field;
  return cyclotomic(f, f->inv(cyclotomic_value()));
}

FieldElem FieldElem::pow(std::int64_t e) const {
  FieldElem base = e < 0 ? inverse() : *this;
  std::uint64_t n = e < 0 ? static_cast<std::uint64_t>(-e) : static_cast<std::uint64_t>(e);
  FieldElem r = is_finite() ? finite(modulus(), 1)
                            : cyclotomic(std::get<Cyclo>(v_).field, std::get<Cyclo>(v_).field->one());
  while (n) {
    if (n & 1) r = r * base;
    base = base * base;
    n >>= 1;
  }
  return r;
}

bool FieldElem::is_zero() const {
  if (is_finite()) return finite_value() == 0;
  return std::get<Cyclo>(v_).field->is_zero(cyclotomic_value());
}

bool FieldElem::is_one() const {
  if (is_finite()) return finite_value() == 1 % modulus();
  return cyclotomic_value() == std::get<Cyclo>(v_).field->one();
}

bool FieldElem::operator==(const FieldElem& o) const {
  check_same(o);
  return is_finite() ? finite_value() == o.finite_value() : cyclotomic_value() == o.cyclotomic_value();
}

std::string FieldElem::to_string() const {
  if (is_finite()) return std::to_string(finite_value()) + " mod " + std::to_string(modulus());
  std::ostringstream os;
  const auto& v = cyclotomic_value();
  bool first = true;
  for (std::size_t k = 0; k < v.size(); ++k) {
    if (v[k] == 0) continue;
    if (!first) os << " + ";
    os << v[k].get_str();
    if (k) os << "*z^" << k;
    first = false;
  }
  if (first) os << "0";
  return os.str();
}

FieldElem primitive_root_of_unity(std::uint64_t q, std::uint64_t d) {
  if (!is_prime(q)) throw std::invalid_argument("q must be prime");
  if (d == 0 || (q - 1) % d != 0) throw std::invalid_argument("d does not divide q - 1");
  return FieldElem::finite(q, pow_mod(smallest_generator(q), (q - 1) / d, q));
}

std::pair<std::size_t, std::size_t> rank_nullity(const std::vector<std::vector<FieldElem>>& m) {
  if (m.empty() || m[0].empty()) return {0, m.empty() ? 0 : m[0].size()};
  const FieldElem& ref = m[0][0];
  const std::size_t cols = m[0].size();
  for (const auto& row : m) {
    if (row.size() != cols) throw std::invalid_argument("ragged matrix");
    for (const auto& e : row) (void)(e == ref);  // throws on mixed backends
  }
  if (ref.is_finite()) {
    PrimeField f(ref.modulus());
    FieldMatrix<PrimeField> a(m.size(), std::vector<PrimeField::Elem>(cols));
    for (std::size_t i = 0; i < m.size(); ++i)
      for (std::size_t j = 0; j < cols; ++j) a[i][j] = m[i][j].finite_value();
    return rank_nullity(a, f, cols);
  }
  CyclotomicField f(ref.conductor());
  FieldMatrix<CyclotomicField> a(m.size(), std::vector<CyclotomicField::Elem>(cols));
  for (std::size_t i = 0; i < m.size(); ++i)
    for (std::size_t j = 0; j < cols; ++j) a[i][j] = m[i][j].cyclotomic_value();
  return rank_nullity(a, f, cols);
}

}  // namespace knotprime
