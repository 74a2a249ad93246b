#include "knotprime/twisted.hpp"

#include <functional>
#include <memory>
#include <stdexcept>

#include "knotprime/errors.hpp"

namespace knotprime {

std::string FieldSpec::describe(std::uint64_t d) const {
  return kind == Kind::Finite ? "F_" + std::to_string(q) : "Q(zeta_" + std::to_string(d) + ")";
}

namespace {

template <class F>
std::vector<typename F::Elem> zeta_powers(const F& field, const typename F::Elem& zeta, std::uint64_t d) {
  std::vector<typename F::Elem> pw;
  pw.reserve(d);
  auto cur = field.one();
  for (std::uint64_t e = 0; e < d; ++e) {
    pw.push_back(cur);
    cur = field.mul(cur, zeta);
  }
  if (field.is_zero(field.sub(cur, field.one()))) return pw;
  throw std::invalid_argument("zeta^d != 1");
}

}  // namespace

template <class F>
TwistedComplex<F> twisted_complex(const FoxJacobian& jac, const MetacyclicRep& rep, const F& field,
                                  const typename F::Elem& zeta) {
  const std::size_t p = rep.params.p;
  const std::size_t n = jac.cols;
  const std::size_t rels = jac.rows;
  if (rep.alpha.size() != n) throw std::invalid_argument("representation does not match the presentation");
  const auto pw = zeta_powers(field, zeta, rep.params.d);
  // M_j as monomial matrices: entry (i, i+1 mod p) = zeta^{ex[j][i]}
  std::vector<std::vector<std::uint64_t>> ex;
  for (auto k : rep.alpha) ex.push_back(generator_exponents(rep.params, k));

  TwistedComplex<F> cx;
  cx.d2.assign(p * n, std::vector<typename F::Elem>(p * rels, field.zero()));
  cx.d1.assign(p, std::vector<typename F::Elem>(p * n, field.zero()));
  for (std::size_t i = 0; i < rels; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (auto [key, c] : jac.at(static_cast<int>(i), static_cast<int>(j))) {
        const auto coeff = field.from_int(c);
        // rho(entry)[v][u] lands at (j p + u, i p + v)
        if (key == 0) {
          for (std::size_t u = 0; u < p; ++u) {
            auto& e = cx.d2[j * p + u][i * p + u];
            e = field.add(e, coeff);
          }
        } else {
          const auto& k = ex[key - 1];
          for (std::size_t v = 0; v < p; ++v) {
            std::size_t u = (v + 1) % p;
            auto& e = cx.d2[j * p + u][i * p + v];
            e = field.add(e, field.mul(coeff, pw[k[v]]));
          }
        }
      }
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t v = 0; v < p; ++v) {
      std::size_t u = (v + 1) % p;
      auto& e = cx.d1[u][j * p + v];
      e = field.add(e, pw[ex[j][v]]);
      auto& diag = cx.d1[v][j * p + v];
      diag = field.sub(diag, field.one());
    }
  }
  // chain condition
  for (std::size_t r = 0; r < p; ++r)
    for (std::size_t c = 0; c < p * rels; ++c) {
      auto acc = field.zero();
      for (std::size_t k = 0; k < p * n; ++k)
        if (!field.is_zero(cx.d1[r][k]) && !field.is_zero(cx.d2[k][c]))
          acc = field.add(acc, field.mul(cx.d1[r][k], cx.d2[k][c]));
      if (!field.is_zero(acc)) throw ConsistencyError("twisted boundary maps do not compose to zero");
    }
  return cx;
}

template <class F>
BettiTriple betti(const FoxJacobian& jac, const MetacyclicRep& rep, const F& field, const typename F::Elem& zeta) {
  auto cx = twisted_complex(jac, rep, field, zeta);
  const std::size_t p = rep.params.p;
  const std::size_t n = jac.cols;
  const std::size_t r1 = rank(cx.d1, field);
  const std::size_t r2 = rank(cx.d2, field);
  BettiTriple b;
  b.b2 = p * static_cast<std::size_t>(jac.rows) - r2;
  b.b1 = (p * n - r1) - r2;
  b.b0 = p - r1;
  b.field = field.describe();
  return b;
}

template TwistedComplex<PrimeField> twisted_complex(const FoxJacobian&, const MetacyclicRep&, const PrimeField&,
                                                    const PrimeField::Elem&);
template TwistedComplex<CyclotomicField> twisted_complex(const FoxJacobian&, const MetacyclicRep&,
                                                         const CyclotomicField&, const CyclotomicField::Elem&);
template BettiTriple betti(const FoxJacobian&, const MetacyclicRep&, const PrimeField&, const PrimeField::Elem&);
template BettiTriple betti(const FoxJacobian&, const MetacyclicRep&, const CyclotomicField&,
                           const CyclotomicField::Elem&);

BettiTriple betti(const FoxJacobian& jac, const MetacyclicRep& rep, const FieldSpec& spec) {
  const std::uint64_t d = rep.params.d;
  if (spec.kind == FieldSpec::Kind::Finite) {
    PrimeField f(spec.q);
    auto zeta = primitive_root_of_unity(spec.q, d).finite_value();
    return betti(jac, rep, f, zeta);
  }
  CyclotomicField f(static_cast<unsigned>(d));
  return betti(jac, rep, f, f.zeta_pow(1));
}

namespace {

template <class F>
std::vector<std::vector<FieldElem>> wrap(const FieldMatrix<F>& m, const std::function<FieldElem(const typename F::Elem&)>& w) {
  std::vector<std::vector<FieldElem>> out;
  for (const auto& row : m) {
    std::vector<FieldElem> r;
    for (const auto& e : row) r.push_back(w(e));
    out.push_back(std::move(r));
  }
  return out;
}

std::vector<std::vector<FieldElem>> boundary(const FoxJacobian& jac, const MetacyclicRep& rep, const FieldElem& zeta,
                                             bool second) {
  if (zeta.is_finite()) {
    const std::uint64_t q = zeta.modulus();
    PrimeField f(q);
    auto cx = twisted_complex(jac, rep, f, zeta.finite_value());
    return wrap<PrimeField>(second ? cx.d2 : cx.d1, [q](const std::uint64_t& v) { return FieldElem::finite(q, v); });
  }
  auto f = std::make_shared<CyclotomicField>(zeta.conductor());
  auto cx = twisted_complex(jac, rep, *f, zeta.cyclotomic_value());
  return wrap<CyclotomicField>(second ? cx.d2 : cx.d1,
                               [f](const CyclotomicField::Elem& v) { return FieldElem::cyclotomic(f, v); });
}

}  // namespace

std::vector<std::vector<FieldElem>> boundary1(const FoxJacobian& jac, const MetacyclicRep& rep, const FieldElem& zeta) {
  return boundary(jac, rep, zeta, false);
}

std::vector<std::vector<FieldElem>> boundary2(const FoxJacobian& jac, const MetacyclicRep& rep, const FieldElem& zeta) {
  return boundary(jac, rep, zeta, true);
}

}  // namespace knotprime
