#pragma once

#include <cstdint>
#include <string>

#include "knotprime/fields.hpp"
#include "knotprime/knot_diagram.hpp"
#include "knotprime/metacyclic.hpp"

namespace knotprime {

/// Which coefficient field to use for twisted homology.
struct FieldSpec {
  enum class Kind { Finite, Cyclotomic };
  Kind kind = Kind::Finite;
  std::uint64_t q = 0;  // finite only; must be 1 mod d

  static FieldSpec finite(std::uint64_t q) { return {Kind::Finite, q}; }
  static FieldSpec cyclotomic() { return {Kind::Cyclotomic, 0}; }
  /// "F_q" or "Q(zeta_d)".
  std::string describe(std::uint64_t d) const;
  friend bool operator==(const FieldSpec&, const FieldSpec&) = default;
};

template <class F>
struct TwistedComplex {
  FieldMatrix<F> d1;  // p x pn
  FieldMatrix<F> d2;  // pn x p(n-1)
};

/// Column-vector convention: block (j, i) of d2 is rho(dr_i/dx_j)^T and block
/// j of d1 is (M_j - I)^T, so that d1 d2 = 0. Throws ConsistencyError if the
/// product is nonzero.
template <class F>
TwistedComplex<F> twisted_complex(const FoxJacobian& jac, const MetacyclicRep& rep, const F& field,
                                  const typename F::Elem& zeta);

struct BettiTriple {
  std::size_t b0 = 0;
  std::size_t b1 = 0;
  std::size_t b2 = 0;
  std::string field;
  friend bool operator==(const BettiTriple& a, const BettiTriple& b) {
    return a.b0 == b.b0 && a.b1 == b.b1 && a.b2 == b.b2;
  }
};

template <class F>
BettiTriple betti(const FoxJacobian& jac, const MetacyclicRep& rep, const F& field, const typename F::Elem& zeta);

BettiTriple betti(const FoxJacobian& jac, const MetacyclicRep& rep, const FieldSpec& spec);

/// Boundary maps with FieldElem entries (zeta fixes the field).
std::vector<std::vector<FieldElem>> boundary1(const FoxJacobian& jac, const MetacyclicRep& rep, const FieldElem& zeta);
std::vector<std::vector<FieldElem>> boundary2(const FoxJacobian& jac, const MetacyclicRep& rep, const FieldElem& zeta);

}  // namespace knotprime
