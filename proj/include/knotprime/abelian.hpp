#pragma once

#include <gmpxx.h>

#include <string>
#include <utility>
#include <vector>

#include "knotprime/knot_diagram.hpp"

namespace knotprime {

using IntMatrix = std::vector<std::vector<mpz_class>>;

struct SmithForm {
  std::vector<mpz_class> divisors;  // d1 | d2 | ..., min(rows, cols) entries, nonnegative
  std::size_t rank = 0;
};

/// Smith normal form by unimodular row/column operations, always pivoting on
/// the entry of smallest absolute value.
SmithForm smith_normal_form(IntMatrix m);

/// Prime factorization (trial division, then Pollard rho). n >= 1.
std::vector<std::pair<mpz_class, unsigned>> factor_integer(const mpz_class& n);

/// A finite abelian group as its multiset of prime-power cyclic summands.
class FiniteAbelianGroup {
 public:
  FiniteAbelianGroup() = default;
  /// Throws std::invalid_argument unless every entry is a prime power > 1.
  explicit FiniteAbelianGroup(std::vector<mpz_class> prime_powers);
  /// Splits invariant factors into prime powers; factors equal to 1 are ignored.
  static FiniteAbelianGroup from_invariant_factors(const std::vector<mpz_class>& factors);

  const std::vector<mpz_class>& prime_powers() const { return parts_; }  // ascending
  mpz_class order() const;
  bool is_trivial() const { return parts_.empty(); }
  /// Number of cyclic summands whose order is divisible by the prime r.
  std::size_t rank_mod(const mpz_class& r) const;
  std::string to_string() const;  // "Z27 + Z5", or "0"

  friend bool operator==(const FiniteAbelianGroup&, const FiniteAbelianGroup&) = default;
  friend FiniteAbelianGroup operator+(const FiniteAbelianGroup& a, const FiniteAbelianGroup& b);

 private:
  std::vector<mpz_class> parts_;
};

/// Presentation of H_1 of the p-fold branched cover as a Z[t]/(t^p - 1)
/// module: the group is Z^N / (column span of relations), and the deck
/// transformation acts on Z^N by `deck` (block diagonal cyclic shifts).
struct CoverModule {
  IntMatrix relations;
  IntMatrix deck;
  unsigned p = 0;
};

CoverModule cover_module(const FoxJacobian& jac, unsigned p);

/// H_1 of the p-fold branched cyclic cover. Checks the order against the
/// circulant formula and throws ConsistencyError on any mismatch or free part.
FiniteAbelianGroup branched_cover_homology(const FoxJacobian& jac, unsigned p);

/// True iff each prime power occurs an even number of times.
bool plans_doubled(const FiniteAbelianGroup& g);

/// All distinct ways to write g = A + B with |A| = m (sub-multisets of the
/// prime-power decomposition). With require_doubled both A and B must be
/// doubled. Throws std::invalid_argument when m * n != |g|.
std::vector<std::pair<FiniteAbelianGroup, FiniteAbelianGroup>> admissible_splits(
    const FiniteAbelianGroup& g, const mpz_class& m, const mpz_class& n, bool require_doubled);

bool splits_with_orders(const FiniteAbelianGroup& g, const mpz_class& m, const mpz_class& n,
                        bool require_doubled);

}  // namespace knotprime
