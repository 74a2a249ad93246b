#include <cmath>
#include <complex>
#include <numbers>
#include <set>

#include "doctest.h"
#include "knotprime/errors.hpp"
#include "knotprime/knot_diagram.hpp"
#include "knotprime/polynomials.hpp"
#include "support.hpp"

using namespace knotprime;

namespace {

const char* kSample[] = {"3_1", "4_1", "5_2", "6_1", "7_4", "8_17", "8_19", "9_12", "9_35", "9_42", "9_46"};

// prod_k delta(zeta_p^k) in floating point.
long long eigenvalue_product(const LaurentPoly1& delta, unsigned p) {
  std::complex<long double> prod = 1;
  for (unsigned k = 0; k < p; ++k) {
    std::complex<long double> v = 0;
    for (const auto& [e, c] : delta.terms()) {
      long double angle = 2 * std::numbers::pi_v<long double> * k * e / p;
      v += static_cast<long double>(c) * std::polar<long double>(1, angle);
    }
    prod *= v;
  }
  return std::llround(std::abs(prod));
}

// Leibniz expansion, for small matrices.
mpz_class cofactor_det(const std::vector<std::vector<mpz_class>>& m) {
  const std::size_t n = m.size();
  if (n == 0) return 1;
  mpz_class total = 0;
  for (std::size_t c = 0; c < n; ++c) {
    std::vector<std::vector<mpz_class>> minor;
    for (std::size_t r = 1; r < n; ++r) {
      std::vector<mpz_class> row;
      for (std::size_t k = 0; k < n; ++k)
        if (k != c) row.push_back(m[r][k]);
      minor.push_back(row);
    }
    mpz_class term = m[0][c] * cofactor_det(minor);
    total += (c % 2 ? -term : term);
  }
  return total;
}

bool is_thin(const LaurentPoly2& w) {
  std::set<int> deltas;
  for (const auto& [k, c] : w.terms()) deltas.insert(k.second - k.first);
  return deltas.size() == 1;
}

int genus(const LaurentPoly2& w) {
  int g = 0;
  for (const auto& [k, c] : w.terms()) g = std::max(g, std::abs(k.first));
  return g;
}

// Every thin positive-symmetric divisor of genus 1..g by exhaustive search over
// coefficient vectors bounded by the top coefficient and total of omega.
void thin_divisors(const LaurentPoly2& omega, int g, std::vector<std::int64_t>& coeffs,
                   std::vector<LaurentPoly2>& out) {
  const std::int64_t total = omega.total();
  std::int64_t used = 0;
  for (std::size_t k = 0; k < coeffs.size(); ++k) used += 2 * coeffs[k];
  if (static_cast<int>(coeffs.size()) == g) {
    for (std::int64_t c0 = 0; used + c0 <= total; ++c0) {
      if (used + c0 == 0 || total % (used + c0) != 0) continue;
      std::vector<std::array<std::int64_t, 3>> tr{{0, 0, c0}};
      for (int k = 0; k < g; ++k) {
        tr.push_back({g - k, g - k, coeffs[k]});
        tr.push_back({k - g, k - g, coeffs[k]});
      }
      auto f = LaurentPoly2::from_triples(tr);
      auto q = exact_quotient(omega, f);
      if (q && q->is_positive_symmetric() && !q->is_one()) out.push_back(f.normalized());
    }
    return;
  }
  const std::int64_t top = omega.normalized().coeff(genus(omega), genus(omega));
  const std::int64_t lo = coeffs.empty() ? 1 : 0;
  const std::int64_t hi = coeffs.empty() ? top : total;
  for (std::int64_t c = lo; c <= hi && used + 2 * c <= total; ++c) {
    coeffs.push_back(c);
    thin_divisors(omega, g, coeffs, out);
    coeffs.pop_back();
  }
}

std::set<std::set<LaurentPoly2>> grouping_set(const FactorizationSet& fs) {
  std::set<std::set<LaurentPoly2>> out;
  for (const auto& g : fs.groupings) out.insert({g.factors.begin(), g.factors.end()});
  return out;
}

}  // namespace

TEST_CASE("Alexander polynomial of small knots") {
  auto jac = fox_jacobian(wirtinger(parse_pd("[[1,4,2,5],[3,6,4,1],[5,2,6,3]]")));
  CHECK(alexander_poly(jac) == LaurentPoly1::from_pairs({{-1, 1}, {0, -1}, {1, 1}}));
  auto fig8 = testsupport::knot("4_1");
  CHECK(alexander_poly(fox_jacobian(wirtinger(fig8.pd))) == LaurentPoly1::from_pairs({{-1, -1}, {0, 3}, {1, -1}}));
  CHECK(alexander_poly(fox_jacobian(wirtinger(PDCode::unknot()))) == LaurentPoly1(1));
}

TEST_CASE("Alexander polynomial does not depend on dropped relator or deleted column") {
  for (const char* name : kSample) {
    auto pd = testsupport::knot(name).pd;
    auto base = alexander_poly(fox_jacobian(wirtinger(pd)));
    for (std::size_t drop = 0; drop < pd.size(); ++drop) {
      auto jac = fox_jacobian(wirtinger(pd, drop));
      for (int col = 0; col < jac.cols; col += 2) CHECK(alexander_poly(jac, col) == base);
    }
  }
}

TEST_CASE("Bareiss determinant against cofactor expansion") {
  std::vector<std::vector<mpz_class>> m{{2, -1, 0, 3}, {1, 4, -2, 0}, {0, 5, 1, 1}, {-3, 0, 2, 2}};
  CHECK(integer_determinant(m) == cofactor_det(m));
  std::vector<std::vector<mpz_class>> singular{{1, 2, 3}, {2, 4, 6}, {0, 1, 1}};
  CHECK(integer_determinant(singular) == 0);
  std::vector<std::vector<mpz_class>> needs_pivot{{0, 1}, {1, 0}};
  CHECK(integer_determinant(needs_pivot) == -1);
}

TEST_CASE("circulant of the degree-6 example at p = 3") {
  auto delta = LaurentPoly1::from_pairs({{0, 1}, {1, -3}, {2, 4}, {3, -5}, {4, 4}, {5, -3}, {6, 1}});
  // oracle first: product of delta over cube roots of unity
  CHECK(eigenvalue_product(delta, 3) == 16);
  auto m = circulant_matrix(delta, 3);
  std::vector<std::vector<mpz_class>> expected{{-3, 1, 1}, {1, -3, 1}, {1, 1, -3}};
  CHECK(m == expected);
  CHECK(order_formula(delta, 3) == 16);
  CHECK(order_formula(delta.normalized(), 3) == 16);
  CHECK_THROWS_AS(order_formula(delta, 4), std::invalid_argument);
}

TEST_CASE("order formula matches the eigenvalue product") {
  for (const char* name : kSample) {
    auto delta = alexander_poly(fox_jacobian(wirtinger(testsupport::knot(name).pd)));
    for (unsigned p : {2u, 3u, 5u, 7u}) CHECK(order_formula(delta, p) == static_cast<long>(eigenvalue_product(delta, p)));
  }
}

TEST_CASE("Omega at s = -1 is the Alexander polynomial") {
  auto w = LaurentPoly2::from_triples({{-1, 0, 1}, {0, 1, 1}, {1, 2, 1}});
  CHECK(specialize_s(w, -1) == LaurentPoly1::from_pairs({{-1, 1}, {0, -1}, {1, 1}}));
  CHECK(specialize_s(w, 1).eval_at_one() == 3);
}

TEST_CASE("9_12 factors into two positive-symmetric pieces") {
  auto omega = *testsupport::knot("9_12").omega;
  auto fs = positive_symmetric_factorizations(omega);
  REQUIRE(fs.groupings.size() == 1);
  const auto& g = fs.groupings[0];
  CHECK(g.factors[0].to_string() + " | " + g.factors[1].to_string() ==
        "st + 3 + s^-1t^-1 | 2st + 3 + 2s^-1t^-1");
  CHECK((g.factors[0] * g.factors[1]).normalized() == omega.normalized());
  CHECK(fs.irreducible.factors.size() == 2);
}

TEST_CASE("11_6 has three factor groupings") {
  auto omega = *testsupport::knot("11_6").omega;
  auto fs = positive_symmetric_factorizations(omega);
  CHECK(fs.irreducible.factors.size() == 3);
  CHECK(fs.groupings.size() == 3);
  for (const auto& g : fs.groupings) CHECK((g.factors[0] * g.factors[1]).normalized() == omega.normalized());
  LaurentPoly2 prod(1);
  for (const auto& f : fs.irreducible.factors) prod = prod * f;
  CHECK(prod.normalized() == omega.normalized());
}

TEST_CASE("divisor search agrees with brute force on thin polynomials") {
  std::vector<KnotRecord> recs = load_corpus(testsupport::data_file("corpus_le9.jsonl")).records;
  for (const auto& r : load_corpus(testsupport::data_file("named_examples.jsonl")).records) recs.push_back(r);
  std::size_t checked = 0;
  for (const auto& rec : recs) {
    auto omega = rec.omega->normalized();
    if (!is_thin(omega) || genus(omega) > 4) continue;
    std::vector<LaurentPoly2> divisors;
    std::vector<std::int64_t> coeffs;
    for (int g = 1; 2 * g <= genus(omega); ++g) thin_divisors(omega, g, coeffs, divisors);
    std::set<std::set<LaurentPoly2>> oracle;
    for (const auto& f : divisors) oracle.insert({f, exact_quotient(omega, f)->normalized()});
    CHECK_MESSAGE(grouping_set(positive_symmetric_factorizations(omega)) == oracle, rec.name);
    ++checked;
  }
  CHECK(checked > 50);
}

TEST_CASE("divisor search recovers constructed products") {
  std::vector<LaurentPoly2> pieces;
  for (const char* name : kSample) pieces.push_back(testsupport::knot(name).omega->normalized());
  for (std::size_t i = 0; i < pieces.size(); ++i)
    for (std::size_t j = i; j < pieces.size(); ++j) {
      auto fs = positive_symmetric_factorizations((pieces[i] * pieces[j]).normalized());
      CHECK(grouping_set(fs).count({pieces[i], pieces[j]}) == 1);
    }
}

TEST_CASE("factorization edge cases") {
  CHECK(positive_symmetric_factorizations(LaurentPoly2(1)).empty());
  CHECK(positive_symmetric_factorizations(testsupport::knot("4_1").omega->normalized()).empty());
  auto bad = LaurentPoly2::from_triples({{-1, -1, 1}, {0, 0, -3}, {1, 1, 1}});
  CHECK_THROWS_AS(positive_symmetric_factorizations(bad), InputError);
}
