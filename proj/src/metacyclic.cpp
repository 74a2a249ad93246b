#include "knotprime/metacyclic.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "knotprime/abelian.hpp"
#include "knotprime/polynomials.hpp"

namespace knotprime {

namespace {

constexpr std::size_t kMaxEnumerated = 2'000'000;

std::vector<std::uint64_t> prime_factors(std::uint64_t n) {
  std::vector<std::uint64_t> ps;
  for (std::uint64_t p = 2; p * p <= n; ++p)
    if (n % p == 0) {
      ps.push_back(p);
      while (n % p == 0) n /= p;
    }
  if (n > 1) ps.push_back(n);
  return ps;
}

// d must be prime, or the product of two distinct primes; returns the factors.
std::vector<std::uint64_t> supported_factors(std::uint64_t d) {
  if (is_prime(d)) return {d};
  auto ps = prime_factors(d);
  if (ps.size() == 2 && ps[0] * ps[1] == d) return ps;
  throw std::invalid_argument("modulus must be prime or a product of two distinct primes: " + std::to_string(d));
}

FieldMatrix<PrimeField> congruence_matrix(const WirtingerPresentation& pres, const PrimeField& f, std::uint64_t a) {
  const std::size_t n = pres.generators;
  FieldMatrix<PrimeField> m(pres.relators.size(), std::vector<std::uint64_t>(n, 0));
  const auto fa = f.from_int(static_cast<std::int64_t>(a % f.modulus()));
  for (std::size_t r = 0; r < pres.relators.size(); ++r) {
    const auto& rel = pres.relators[r];
    auto& row = m[r];
    row[rel.a - 1] = f.add(row[rel.a - 1], f.sub(f.one(), fa));
    row[rel.b - 1] = f.add(row[rel.b - 1], fa);
    row[rel.c - 1] = f.sub(row[rel.c - 1], f.one());
  }
  return m;
}

// Removes the first column (alpha_1 = 0).
FieldMatrix<PrimeField> drop_first_column(FieldMatrix<PrimeField> m) {
  for (auto& row : m) row.erase(row.begin());
  return m;
}

std::uint64_t inverse_mod(std::uint64_t x, std::uint64_t m) {
  std::int64_t r0 = static_cast<std::int64_t>(m), r1 = static_cast<std::int64_t>(x % m);
  std::int64_t s0 = 0, s1 = 1;
  while (r1 != 0) {
    std::int64_t q = r0 / r1;
    r0 -= q * r1;
    std::swap(r0, r1);
    s0 -= q * s1;
    std::swap(s0, s1);
  }
  if (r0 != 1) throw std::invalid_argument("not invertible");
  std::int64_t mm = static_cast<std::int64_t>(m);
  return static_cast<std::uint64_t>(((s0 % mm) + mm) % mm);
}

std::uint64_t crt_value(std::uint64_t d1, std::uint64_t x1, std::uint64_t d2, std::uint64_t x2) {
  if (d2 == 1) return x1 % d1;
  std::uint64_t diff = ((x2 % d2) + d2 - (x1 % d2)) % d2;
  return x1 % d1 + d1 * ((diff * inverse_mod(d1 % d2, d2)) % d2);
}

// Projective points of span(basis) over F_d: first nonzero coefficient is 1.
std::vector<std::vector<std::uint64_t>> projective_points(const std::vector<std::vector<std::uint64_t>>& basis,
                                                          std::uint64_t d, std::size_t length) {
  std::vector<std::vector<std::uint64_t>> out;
  const std::size_t k = basis.size();
  double count = 0;
  for (std::size_t lead = 0; lead < k; ++lead) count += std::pow(double(d), double(k - lead - 1));
  if (count > kMaxEnumerated) throw std::length_error("too many representation classes to enumerate");
  for (std::size_t lead = 0; lead < k; ++lead) {
    std::vector<std::uint64_t> coeff(k, 0);
    coeff[lead] = 1;
    for (;;) {
      std::vector<std::uint64_t> v(length, 0);
      for (std::size_t b = lead; b < k; ++b)
        if (coeff[b])
          for (std::size_t i = 0; i < length; ++i) v[i] = (v[i] + coeff[b] * basis[b][i]) % d;
      out.push_back(std::move(v));
      std::size_t pos = lead + 1;
      while (pos < k && ++coeff[pos] == d) coeff[pos++] = 0;
      if (pos >= k) break;
    }
  }
  return out;
}

}  // namespace

MetacyclicParams MetacyclicParams::make(std::uint64_t d, unsigned p, std::uint64_t a) {
  if (d == 0) throw std::invalid_argument("metacyclic modulus must be positive");
  if (!is_prime(p)) throw std::invalid_argument("metacyclic exponent p must be prime");
  if (pow_mod(a % d, p, d) != 1 % d) throw std::invalid_argument("a^p is not 1 mod d");
  return {d, p, a % d};
}

std::vector<std::uint64_t> valid_a_values(std::uint64_t d, unsigned p, bool require_nonabelian) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t a = 0; a < d; ++a) {
    if (pow_mod(a, p, d) != 1 % d) continue;
    if (require_nonabelian && a == 1 % d) continue;
    out.push_back(a);
  }
  return out;
}

CrtParams crt_a(std::uint64_t d1, std::uint64_t a1, std::uint64_t d2, std::uint64_t a2) {
  if (std::gcd(d1, d2) != 1) throw std::invalid_argument("CRT moduli are not coprime");
  if (d2 == 1) return {d1, a1 % d1};
  if (d1 == 1) return {d2, a2 % d2};
  // general coprime moduli: brute force is fine at these sizes
  const std::uint64_t d = d1 * d2;
  for (std::uint64_t x = a1 % d1; x < d; x += d1)
    if (x % d2 == a2 % d2) return {d, x};
  throw std::logic_error("unreachable CRT state");
}

RepSolutionSpace rep_solution_space(const WirtingerPresentation& pres, const MetacyclicParams& params) {
  if (!is_prime(params.d)) throw std::invalid_argument("rep_solution_space needs a prime modulus");
  PrimeField f(params.d);
  const std::size_t n = pres.generators;
  auto reduced = drop_first_column(congruence_matrix(pres, f, params.a));
  auto kernel = nullspace_basis(reduced, f, n - 1);
  RepSolutionSpace space;
  space.params = params;
  space.generators = n;
  for (auto& v : kernel) {
    std::vector<std::uint64_t> alpha(n, 0);
    std::copy(v.begin(), v.end(), alpha.begin() + 1);
    space.basis.push_back(std::move(alpha));
  }
  return space;
}

bool satisfies_relators(const WirtingerPresentation& pres, const MetacyclicRep& rep) {
  const std::uint64_t d = rep.params.d, a = rep.params.a;
  if (rep.alpha.size() != static_cast<std::size_t>(pres.generators) || rep.alpha[0] % d != 0) return false;
  for (const auto& rel : pres.relators) {
    unsigned __int128 lhs = (1 + d - a % d) % d * static_cast<unsigned __int128>(rep.alpha[rel.a - 1]) +
                            static_cast<unsigned __int128>(a) * rep.alpha[rel.b - 1] + (d - rep.alpha[rel.c - 1] % d);
    if (lhs % d != 0) return false;
  }
  return true;
}

namespace {

std::vector<std::vector<std::uint64_t>> all_points(const RepSolutionSpace& s) {
  const std::uint64_t d = s.params.d;
  double total = std::pow(double(d), double(s.dimension()));
  if (total > kMaxEnumerated) throw std::length_error("too many representations to enumerate");
  std::vector<std::vector<std::uint64_t>> out;
  std::vector<std::uint64_t> coeff(s.dimension(), 0);
  for (;;) {
    std::vector<std::uint64_t> v(s.generators, 0);
    for (std::size_t b = 0; b < coeff.size(); ++b)
      for (std::size_t i = 0; i < v.size(); ++i) v[i] = (v[i] + coeff[b] * s.basis[b][i]) % d;
    out.push_back(std::move(v));
    std::size_t pos = 0;
    while (pos < coeff.size() && ++coeff[pos] == d) coeff[pos++] = 0;
    if (pos == coeff.size()) break;
  }
  return out;
}

std::vector<std::vector<std::uint64_t>> combine(const std::vector<std::vector<std::uint64_t>>& xs, std::uint64_t d1,
                                                const std::vector<std::vector<std::uint64_t>>& ys, std::uint64_t d2) {
  std::vector<std::vector<std::uint64_t>> out;
  if (static_cast<double>(xs.size()) * static_cast<double>(ys.size()) > kMaxEnumerated)
    throw std::length_error("too many representations to enumerate");
  for (const auto& x : xs)
    for (const auto& y : ys) {
      std::vector<std::uint64_t> v(x.size());
      for (std::size_t i = 0; i < v.size(); ++i) v[i] = crt_value(d1, x[i], d2, y[i]);
      out.push_back(std::move(v));
    }
  return out;
}

}  // namespace

std::vector<MetacyclicRep> enumerate_reps(const WirtingerPresentation& pres, const MetacyclicParams& params) {
  auto fs = supported_factors(params.d);
  std::vector<std::vector<std::uint64_t>> alphas;
  if (fs.size() == 1) {
    alphas = all_points(rep_solution_space(pres, params));
  } else {
    auto s1 = rep_solution_space(pres, {fs[0], params.p, params.a % fs[0]});
    auto s2 = rep_solution_space(pres, {fs[1], params.p, params.a % fs[1]});
    alphas = combine(all_points(s1), fs[0], all_points(s2), fs[1]);
  }
  std::vector<MetacyclicRep> out;
  for (auto& a : alphas) out.push_back({params, std::move(a)});
  return out;
}

std::vector<MetacyclicRep> reduce_to_classes(const WirtingerPresentation& pres, const MetacyclicParams& params) {
  auto fs = supported_factors(params.d);
  std::vector<MetacyclicRep> out;
  const std::size_t n = pres.generators;
  if (fs.size() == 1) {
    auto s = rep_solution_space(pres, params);
    for (auto& a : projective_points(s.basis, params.d, n)) out.push_back({params, std::move(a)});
    return out;
  }
  auto s1 = rep_solution_space(pres, {fs[0], params.p, params.a % fs[0]});
  auto s2 = rep_solution_space(pres, {fs[1], params.p, params.a % fs[1]});
  auto p1 = projective_points(s1.basis, fs[0], n);
  auto p2 = projective_points(s2.basis, fs[1], n);
  p1.insert(p1.begin(), std::vector<std::uint64_t>(n, 0));
  p2.insert(p2.begin(), std::vector<std::uint64_t>(n, 0));
  for (auto& a : combine(p1, fs[0], p2, fs[1])) {
    bool zero = std::all_of(a.begin(), a.end(), [](std::uint64_t v) { return v == 0; });
    if (!zero) out.push_back({params, std::move(a)});
  }
  return out;
}

bool is_surjective(const MetacyclicRep& rep) {
  if (rep.params.d == 1) return false;
  for (std::uint64_t prime : prime_factors(rep.params.d)) {
    bool nonzero = std::any_of(rep.alpha.begin(), rep.alpha.end(), [&](std::uint64_t v) { return v % prime != 0; });
    if (!nonzero) return false;
  }
  return true;
}

std::vector<MetacyclicRep> surjective_classes(const WirtingerPresentation& pres, const MetacyclicParams& params) {
  std::vector<MetacyclicRep> out;
  for (auto& r : reduce_to_classes(pres, params))
    if (is_surjective(r)) out.push_back(std::move(r));
  return out;
}

MetacyclicRep project_rep(const MetacyclicRep& rep, std::uint64_t divisor) {
  if (divisor == 0 || rep.params.d % divisor != 0) throw std::invalid_argument("projection modulus must divide d");
  MetacyclicRep out;
  out.params = {divisor, rep.params.p, rep.params.a % divisor};
  for (auto v : rep.alpha) out.alpha.push_back(v % divisor);
  return out;
}

RepCountReport rep_dimension_check(const FoxJacobian& jac, const WirtingerPresentation& pres, unsigned p,
                                   std::uint64_t d, std::uint64_t a) {
  if (!is_prime(d)) throw std::invalid_argument("rep_dimension_check needs a prime d");
  PrimeField f(d);
  RepCountReport report;
  auto cong = drop_first_column(congruence_matrix(pres, f, a));
  report.rep_exponent = rank_nullity(cong, f, pres.generators - 1).second;

  CoverModule mod = cover_module(jac, p);
  const std::size_t N = mod.deck.size();
  const std::size_t M = N ? mod.relations[0].size() : 0;
  FieldMatrix<PrimeField> stacked;
  auto reduce = [&](const mpz_class& v) {
    mpz_class r = v % mpz_class(static_cast<unsigned long>(d));
    if (r < 0) r += static_cast<unsigned long>(d);
    return static_cast<std::uint64_t>(r.get_ui());
  };
  for (std::size_t j = 0; j < M; ++j) {
    std::vector<std::uint64_t> row(N);
    for (std::size_t i = 0; i < N; ++i) row[i] = reduce(mod.relations[i][j]);
    stacked.push_back(std::move(row));
  }
  const auto fa = f.from_int(static_cast<std::int64_t>(a % d));
  for (std::size_t j = 0; j < N; ++j) {
    std::vector<std::uint64_t> row(N);
    for (std::size_t i = 0; i < N; ++i) row[i] = reduce(mod.deck[i][j]);
    row[j] = f.sub(row[j], fa);
    stacked.push_back(std::move(row));
  }
  report.hom_exponent = rank_nullity(stacked, f, N).second;
  return report;
}

std::pair<ElemMatrix, ElemMatrix> psi_matrices(const MetacyclicParams& params, const FieldElem& zeta) {
  if (!zeta.pow(static_cast<std::int64_t>(params.d)).is_one())
    throw std::invalid_argument("zeta^d != 1");
  for (std::uint64_t ell : prime_factors(params.d))
    if (zeta.pow(static_cast<std::int64_t>(params.d / ell)).is_one())
      throw std::invalid_argument("zeta does not have exact order d");
  const unsigned p = params.p;
  FieldElem zero = zeta - zeta;
  FieldElem one = zeta.pow(0);
  ElemMatrix T(p, std::vector<FieldElem>(p, zero));
  ElemMatrix R(p, std::vector<FieldElem>(p, zero));
  std::uint64_t e = 1 % params.d;
  for (unsigned i = 0; i < p; ++i) {
    T[i][(i + 1) % p] = one;
    R[i][i] = zeta.pow(static_cast<std::int64_t>(e));
    e = (e * params.a) % params.d;
  }
  return {T, R};
}

std::vector<std::uint64_t> generator_exponents(const MetacyclicParams& params, std::uint64_t k) {
  const unsigned p = params.p;
  std::vector<std::uint64_t> ex(p);
  std::uint64_t apow = 1 % params.d;  // a^j
  std::vector<std::uint64_t> powers(p);
  for (unsigned j = 0; j < p; ++j) {
    powers[j] = apow;
    apow = (apow * params.a) % params.d;
  }
  for (unsigned i = 0; i < p; ++i) ex[i] = (k % params.d) * powers[(i + 1) % p] % params.d;
  return ex;
}

std::vector<ElemMatrix> rep_generator_matrices(const MetacyclicRep& rep, const FieldElem& zeta) {
  auto [T, R] = psi_matrices(rep.params, zeta);
  const unsigned p = rep.params.p;
  FieldElem zero = zeta - zeta;
  std::vector<ElemMatrix> out;
  for (auto k : rep.alpha) {
    auto ex = generator_exponents(rep.params, k);
    ElemMatrix m(p, std::vector<FieldElem>(p, zero));
    for (unsigned i = 0; i < p; ++i) m[i][(i + 1) % p] = zeta.pow(static_cast<std::int64_t>(ex[i]));
    out.push_back(std::move(m));
  }
  return out;
}

}  // namespace knotprime
