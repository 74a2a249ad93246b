#pragma once

#include <cstdint>
#include <vector>

#include "knotprime/fields.hpp"
#include "knotprime/knot_diagram.hpp"

namespace knotprime {

/// M(d, p, a) = <r, t | r^d = t^p = 1, t r t^{-1} = r^a>.
struct MetacyclicParams {
  std::uint64_t d = 1;
  unsigned p = 2;
  std::uint64_t a = 1;

  /// Throws std::invalid_argument unless p is prime, d >= 1 and a^p = 1 mod d.
  static MetacyclicParams make(std::uint64_t d, unsigned p, std::uint64_t a);
  bool abelian() const { return a % d == 1 % d; }
  friend bool operator==(const MetacyclicParams&, const MetacyclicParams&) = default;
};

/// Meridian x_i maps to t r^{alpha_i}; alpha_1 = 0.
struct MetacyclicRep {
  MetacyclicParams params;
  std::vector<std::uint64_t> alpha;
  friend bool operator==(const MetacyclicRep&, const MetacyclicRep&) = default;
};

std::vector<std::uint64_t> valid_a_values(std::uint64_t d, unsigned p, bool require_nonabelian);

struct CrtParams {
  std::uint64_t d;
  std::uint64_t a;
};
/// Combines residues modulo coprime d1, d2. Throws on non-coprime moduli.
CrtParams crt_a(std::uint64_t d1, std::uint64_t a1, std::uint64_t d2, std::uint64_t a2);

/// Solutions alpha of the relator congruences for prime d, as a basis of the
/// kernel over F_d. Basis vectors have length n with alpha_1 = 0.
struct RepSolutionSpace {
  MetacyclicParams params;
  std::size_t generators = 0;
  std::vector<std::vector<std::uint64_t>> basis;
  std::size_t dimension() const { return basis.size(); }
};

/// Throws std::invalid_argument unless d is prime.
RepSolutionSpace rep_solution_space(const WirtingerPresentation& pres, const MetacyclicParams& params);

/// Every solution; d must be prime or a product of two distinct primes.
std::vector<MetacyclicRep> enumerate_reps(const WirtingerPresentation& pres, const MetacyclicParams& params);

/// True iff alpha_1 = 0 and all relator congruences hold.
bool satisfies_relators(const WirtingerPresentation& pres, const MetacyclicRep& rep);

/// One representative per orbit of unit scaling: projective points of the
/// solution space for prime d (first nonzero coordinate 1), the product of the
/// two projective spaces when d = d1 d2. The zero rep is not a class.
std::vector<MetacyclicRep> reduce_to_classes(const WirtingerPresentation& pres, const MetacyclicParams& params);

/// Classes whose image is all of M(d, p, a): alpha nonzero modulo each prime
/// factor of d.
std::vector<MetacyclicRep> surjective_classes(const WirtingerPresentation& pres, const MetacyclicParams& params);

bool is_surjective(const MetacyclicRep& rep);

/// Reduces alpha and a modulo a divisor of d.
MetacyclicRep project_rep(const MetacyclicRep& rep, std::uint64_t divisor);

/// Counts both sides of the correspondence between metacyclic reps with
/// chi(m) = t and homomorphisms psi: H_1(cover) -> Z_d with psi T = a psi.
/// Counts are d^exponent.
struct RepCountReport {
  std::size_t rep_exponent = 0;
  std::size_t hom_exponent = 0;
  bool consistent() const { return rep_exponent == hom_exponent; }
};
RepCountReport rep_dimension_check(const FoxJacobian& jac, const WirtingerPresentation& pres, unsigned p,
                                   std::uint64_t d, std::uint64_t a);

using ElemMatrix = std::vector<std::vector<FieldElem>>;

/// Psi(t): T[i][i+1] = 1 cyclically; Psi(r) = diag(zeta, zeta^a, ..., zeta^{a^{p-1}}).
/// Throws std::invalid_argument unless zeta has multiplicative order d.
std::pair<ElemMatrix, ElemMatrix> psi_matrices(const MetacyclicParams& params, const FieldElem& zeta);

/// M_i = Psi(t) Psi(r)^{alpha_i}, one matrix per generator.
std::vector<ElemMatrix> rep_generator_matrices(const MetacyclicRep& rep, const FieldElem& zeta);

/// Monomial form of M_i = T R^k: entry (i, i+1 mod p) = zeta^{k a^{i+1}}.
/// Fast path for the twisted complex; returns the exponents of zeta.
std::vector<std::uint64_t> generator_exponents(const MetacyclicParams& params, std::uint64_t k);

}  // namespace knotprime
