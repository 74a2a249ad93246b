#include "knotprime/abelian.hpp"

#include <algorithm>
#include <map>
#include <sstream>
#include <stdexcept>

#include "knotprime/errors.hpp"
#include "knotprime/polynomials.hpp"

namespace knotprime {

// ------------------------------------------------------------ Smith form

namespace {

bool find_pivot(const IntMatrix& m, std::size_t t, std::size_t& pr, std::size_t& pc) {
  bool found = false;
  mpz_class best;
  for (std::size_t i = t; i < m.size(); ++i)
    for (std::size_t j = t; j < m[i].size(); ++j) {
      if (m[i][j] == 0) continue;
      mpz_class v = abs(m[i][j]);
      if (!found || v < best) {
        best = v;
        pr = i;
        pc = j;
        found = true;
        if (best == 1) return true;
      }
    }
  return found;
}

}  // namespace

SmithForm smith_normal_form(IntMatrix m) {
  const std::size_t rows = m.size();
  const std::size_t cols = rows ? m[0].size() : 0;
  const std::size_t diag = std::min(rows, cols);
  mpz_class q;
  for (std::size_t t = 0; t < diag; ++t) {
    for (;;) {
      std::size_t pr = 0, pc = 0;
      if (!find_pivot(m, t, pr, pc)) goto done;
      std::swap(m[t], m[pr]);
      if (pc != t)
        for (auto& row : m) std::swap(row[t], row[pc]);
      const mpz_class piv = m[t][t];
      bool clean = true;
      for (std::size_t i = t + 1; i < rows; ++i) {
        if (m[i][t] == 0) continue;
        mpz_fdiv_q(q.get_mpz_t(), m[i][t].get_mpz_t(), piv.get_mpz_t());
        for (std::size_t j = t; j < cols; ++j) m[i][j] -= q * m[t][j];
        if (m[i][t] != 0) clean = false;
      }
      for (std::size_t j = t + 1; j < cols; ++j) {
        if (m[t][j] == 0) continue;
        mpz_fdiv_q(q.get_mpz_t(), m[t][j].get_mpz_t(), piv.get_mpz_t());
        for (std::size_t i = t; i < rows; ++i) m[i][j] -= q * m[i][t];
        if (m[t][j] != 0) clean = false;
      }
      if (!clean) continue;
      // pivot must divide the remaining block
      bool divides = true;
      for (std::size_t i = t + 1; i < rows && divides; ++i)
        for (std::size_t j = t + 1; j < cols; ++j)
          if (!mpz_divisible_p(m[i][j].get_mpz_t(), piv.get_mpz_t())) {
            for (std::size_t k = t; k < cols; ++k) m[t][k] += m[i][k];
            divides = false;
            break;
          }
      if (divides) break;
    }
  }
done:
  SmithForm out;
  for (std::size_t t = 0; t < diag; ++t) {
    mpz_class v = abs(m[t][t]);
    if (v != 0) ++out.rank;
    out.divisors.push_back(v);
  }
  return out;
}

// ------------------------------------------------------------ factoring

namespace {

mpz_class pollard_brent(const mpz_class& n) {
  if (mpz_even_p(n.get_mpz_t())) return 2;
  for (unsigned long c = 1;; ++c) {
    mpz_class y = 2, x, g = 1, q = 1, ys;
    unsigned long r = 1;
    const unsigned long m = 64;
    auto f = [&](const mpz_class& v) { return mpz_class((v * v + c) % n); };
    do {
      x = y;
      for (unsigned long i = 0; i < r; ++i) y = f(y);
      unsigned long k = 0;
      do {
        ys = y;
        for (unsigned long i = 0; i < std::min(m, r - k); ++i) {
          y = f(y);
          q = (q * abs(x - y)) % n;
        }
        mpz_gcd(g.get_mpz_t(), q.get_mpz_t(), n.get_mpz_t());
        k += m;
      } while (k < r && g == 1);
      r *= 2;
    } while (g == 1);
    if (g == n) {
      do {
        ys = f(ys);
        mpz_class diff = abs(x - ys);
        mpz_gcd(g.get_mpz_t(), diff.get_mpz_t(), n.get_mpz_t());
      } while (g == 1);
    }
    if (g != n) return g;
  }
}

void factor_into(mpz_class n, std::map<mpz_class, unsigned>& out) {
  if (n == 1) return;
  if (mpz_probab_prime_p(n.get_mpz_t(), 30)) {
    ++out[n];
    return;
  }
  mpz_class d = pollard_brent(n);
  factor_into(d, out);
  factor_into(n / d, out);
}

}  // namespace

std::vector<std::pair<mpz_class, unsigned>> factor_integer(const mpz_class& n_in) {
  if (n_in < 1) throw std::invalid_argument("factor_integer expects a positive integer");
  std::map<mpz_class, unsigned> acc;
  mpz_class n = n_in;
  for (unsigned long p = 2; p < 10000 && n > 1; ++p) {
    if (p * p > n) break;
    while (mpz_divisible_ui_p(n.get_mpz_t(), p)) {
      ++acc[mpz_class(p)];
      n /= p;
    }
  }
  factor_into(n, acc);
  return {acc.begin(), acc.end()};
}

// ------------------------------------------------------------ groups

namespace {

// Returns the prime when n is a prime power, else 0.
mpz_class prime_base(const mpz_class& n) {
  if (n < 2) return 0;
  auto f = factor_integer(n);
  return f.size() == 1 ? f[0].first : mpz_class(0);
}

}  // namespace

FiniteAbelianGroup::FiniteAbelianGroup(std::vector<mpz_class> prime_powers) : parts_(std::move(prime_powers)) {
  for (const auto& q : parts_)
    if (prime_base(q) == 0) throw std::invalid_argument("not a prime power: " + q.get_str());
  std::sort(parts_.begin(), parts_.end());
}

FiniteAbelianGroup FiniteAbelianGroup::from_invariant_factors(const std::vector<mpz_class>& factors) {
  FiniteAbelianGroup g;
  for (const auto& f : factors) {
    if (f == 0) throw std::invalid_argument("invariant factor 0 (infinite summand)");
    for (const auto& [prime, e] : factor_integer(abs(f))) {
      mpz_class q;
      mpz_pow_ui(q.get_mpz_t(), prime.get_mpz_t(), e);
      g.parts_.push_back(q);
    }
  }
  std::sort(g.parts_.begin(), g.parts_.end());
  return g;
}

mpz_class FiniteAbelianGroup::order() const {
  mpz_class n = 1;
  for (const auto& q : parts_) n *= q;
  return n;
}

std::size_t FiniteAbelianGroup::rank_mod(const mpz_class& r) const {
  return std::count_if(parts_.begin(), parts_.end(),
                       [&](const mpz_class& q) { return mpz_divisible_p(q.get_mpz_t(), r.get_mpz_t()) != 0; });
}

std::string FiniteAbelianGroup::to_string() const {
  if (parts_.empty()) return "0";
  std::ostringstream os;
  for (std::size_t i = 0; i < parts_.size(); ++i) os << (i ? " + Z" : "Z") << parts_[i].get_str();
  return os.str();
}

FiniteAbelianGroup operator+(const FiniteAbelianGroup& a, const FiniteAbelianGroup& b) {
  std::vector<mpz_class> all = a.parts_;
  all.insert(all.end(), b.parts_.begin(), b.parts_.end());
  FiniteAbelianGroup g;
  g.parts_ = std::move(all);
  std::sort(g.parts_.begin(), g.parts_.end());
  return g;
}

// ------------------------------------------------------------ covers

CoverModule cover_module(const FoxJacobian& jac, unsigned p) {
  if (!is_prime(p)) throw std::invalid_argument("cover degree must be prime");
  PolyMatrix m = reduced_alexander_matrix(jac);
  const std::size_t rel = m.size();
  const std::size_t gens = rel ? m[0].size() : 0;
  const std::size_t N = p * gens;
  CoverModule out;
  out.p = p;
  out.relations.assign(N, std::vector<mpz_class>(p * rel, 0));
  out.deck.assign(N, std::vector<mpz_class>(N, 0));
  auto mod_p = [p](int e) { return static_cast<std::size_t>(((e % int(p)) + int(p)) % int(p)); };
  for (std::size_t g = 0; g < gens; ++g)
    for (unsigned k = 0; k < p; ++k) out.deck[g * p + (k + 1) % p][g * p + k] = 1;
  for (std::size_t r = 0; r < rel; ++r)
    for (unsigned k = 0; k < p; ++k)
      for (std::size_t g = 0; g < gens; ++g)
        for (auto [e, c] : m[r][g].terms()) out.relations[g * p + mod_p(e + int(k))][r * p + k] += c;
  return out;
}

FiniteAbelianGroup branched_cover_homology(const FoxJacobian& jac, unsigned p) {
  if (jac.cols <= 1) {
    return {};
  }
  CoverModule mod = cover_module(jac, p);
  SmithForm snf = smith_normal_form(mod.relations);
  if (snf.rank != mod.relations.size())
    throw ConsistencyError("branched cover homology has a free part at p = " + std::to_string(p));
  FiniteAbelianGroup g = FiniteAbelianGroup::from_invariant_factors(snf.divisors);
  mpz_class expected = order_formula(alexander_poly(jac), p);
  if (g.order() != expected)
    throw ConsistencyError("cover homology order " + g.order().get_str() + " disagrees with circulant determinant " +
                           expected.get_str() + " at p = " + std::to_string(p));
  return g;
}

bool plans_doubled(const FiniteAbelianGroup& g) {
  const auto& v = g.prime_powers();
  for (std::size_t i = 0; i < v.size();) {
    std::size_t j = i;
    while (j < v.size() && v[j] == v[i]) ++j;
    if ((j - i) % 2 != 0) return false;
    i = j;
  }
  return true;
}

std::vector<std::pair<FiniteAbelianGroup, FiniteAbelianGroup>> admissible_splits(
    const FiniteAbelianGroup& g, const mpz_class& m, const mpz_class& n, bool require_doubled) {
  if (m * n != g.order()) throw std::invalid_argument("split orders do not multiply to the group order");
  // distinct prime powers with multiplicities; choose how many copies go to A
  std::vector<std::pair<mpz_class, unsigned>> kinds;
  for (const auto& q : g.prime_powers()) {
    if (!kinds.empty() && kinds.back().first == q) ++kinds.back().second;
    else kinds.push_back({q, 1});
  }
  std::vector<std::pair<FiniteAbelianGroup, FiniteAbelianGroup>> out;
  std::vector<unsigned> take(kinds.size(), 0);
  const unsigned step = require_doubled ? 2 : 1;
  auto rec = [&](auto&& self, std::size_t idx, const mpz_class& remaining) -> void {
    if (idx == kinds.size()) {
      if (remaining != 1) return;
      std::vector<mpz_class> a, b;
      for (std::size_t i = 0; i < kinds.size(); ++i) {
        for (unsigned c = 0; c < take[i]; ++c) a.push_back(kinds[i].first);
        for (unsigned c = take[i]; c < kinds[i].second; ++c) b.push_back(kinds[i].first);
      }
      out.emplace_back(FiniteAbelianGroup(a), FiniteAbelianGroup(b));
      return;
    }
    const auto& [q, mult] = kinds[idx];
    if (require_doubled && mult % 2 != 0) return;
    mpz_class rem = remaining;
    for (unsigned c = 0; c <= mult; c += step) {
      take[idx] = c;
      self(self, idx + 1, rem);
      if (c + step > mult) break;
      for (unsigned s = 0; s < step; ++s) {
        if (!mpz_divisible_p(rem.get_mpz_t(), q.get_mpz_t())) return;
        rem /= q;
      }
    }
    take[idx] = 0;
  };
  rec(rec, 0, m);
  return out;
}

bool splits_with_orders(const FiniteAbelianGroup& g, const mpz_class& m, const mpz_class& n, bool require_doubled) {
  return !admissible_splits(g, m, n, require_doubled).empty();
}

}  // namespace knotprime
