#pragma once

#include <gmpxx.h>

#include <cstddef>
#include <optional>
#include <vector>

#include "knotprime/knot_diagram.hpp"
#include "knotprime/laurent.hpp"

namespace knotprime {

/// Square matrix of integer Laurent polynomials in t.
using PolyMatrix = std::vector<std::vector<LaurentPoly1>>;

/// Sends every generator of the group ring to t.
LaurentPoly1 abelianize(const GroupRingElem& e);
PolyMatrix abelianize(const FoxJacobian& jac);

/// Abelianized Jacobian with one column deleted (default: the last one),
/// giving the square presentation matrix of the Alexander module.
PolyMatrix reduced_alexander_matrix(const FoxJacobian& jac, std::optional<int> deleted_column = std::nullopt);

/// Determinant over Z[t^{+-1}] via fraction-free Bareiss elimination.
LaurentPoly1 determinant(PolyMatrix m);

/// Normalized Alexander polynomial (symmetric, Delta(1) = 1). Throws
/// ConsistencyError on a zero determinant.
LaurentPoly1 alexander_poly(const FoxJacobian& jac, std::optional<int> deleted_column = std::nullopt);

/// Omega(s -> value, t), normalized when value is -1.
LaurentPoly1 specialize_s(const LaurentPoly2& omega, std::int64_t value);

/// p x p circulant with (i, j) entry a_{(i - j) mod p}, where sum a_i t^i is
/// the image of delta in Z[t]/(t^p - 1).
std::vector<std::vector<mpz_class>> circulant_matrix(const LaurentPoly1& delta, unsigned p);

/// |det| of the circulant, i.e. |prod_k delta(zeta_p^k)| = |H_1| of the
/// p-fold branched cover. Throws std::invalid_argument when p is not prime.
mpz_class order_formula(const LaurentPoly1& delta, unsigned p);

/// True iff g = f h for some integer Laurent polynomial h.
bool divides_1var(const LaurentPoly1& f, const LaurentPoly1& g);

/// Integer determinant by Bareiss elimination.
mpz_class integer_determinant(std::vector<std::vector<mpz_class>> m);

bool is_prime(std::uint64_t n);

// ------------------------------------------------ positive-symmetric factoring

/// A multiset of positive-symmetric, canonically normalized factors.
struct SymFactorization {
  std::vector<LaurentPoly2> factors;  // sorted
  friend bool operator==(const SymFactorization&, const SymFactorization&) = default;
};

/// All ways of writing Omega as a product of nontrivial positive-symmetric
/// factors. `irreducible` is one factorization into positive-symmetric
/// irreducibles; `groupings` lists every two-factor split Omega = O1 * O2
/// (unordered), found by exhaustive divisor search, so it stays complete
/// even if irreducible factorization is not unique.
struct FactorizationSet {
  SymFactorization irreducible;
  std::vector<SymFactorization> groupings;
  bool empty() const { return groupings.empty(); }
};

/// Throws InputError when omega is not positive-symmetric.
FactorizationSet positive_symmetric_factorizations(const LaurentPoly2& omega);

/// Every nontrivial positive-symmetric divisor f of omega (normalized),
/// excluding omega itself; sorted.
std::vector<LaurentPoly2> positive_symmetric_divisors(const LaurentPoly2& omega);

/// Exact quotient in Z[s^{+-1}, t^{+-1}] or nullopt.
std::optional<LaurentPoly2> exact_quotient(const LaurentPoly2& num, const LaurentPoly2& den);

}  // namespace knotprime
