// Exhaustive search for positive-symmetric divisors of a two-variable
// Heegaard Floer polynomial.
//
// After normalization a positive-symmetric polynomial is written in
// coordinates (i, delta) with delta = j - i: the t-exponent i ranges over
// [-g, g], delta over [0, w], and the symmetry c_{i,j} = c_{-i,j-2i} becomes
// palindromy in i for each delta. A divisor F of t-genus g1 <= g2 = g - g1 is
// built row by row from the top (i = g1 downwards); each new row of F fixes the
// matching row of the cofactor H by exact division in Z[s], and the
// nonnegativity of H bounds the candidates for every coefficient of F.

#include <algorithm>
#include <functional>
#include <set>

#include "knotprime/errors.hpp"
#include "knotprime/polynomials.hpp"

namespace knotprime {

namespace {

using Row = std::vector<std::int64_t>;  // polynomial in the delta variable

Row row_mul(const Row& a, const Row& b, std::size_t len) {
  Row r(len, 0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; j < b.size() && i + j < len; ++j)
      r[i + j] = checked::add(r[i + j], checked::mul(a[i], b[j]));
  }
  return r;
}

void row_sub_in_place(Row& a, const Row& b) {
  for (std::size_t i = 0; i < a.size() && i < b.size(); ++i) a[i] -= b[i];
}

bool row_is_zero(const Row& r) {
  return std::all_of(r.begin(), r.end(), [](std::int64_t v) { return v == 0; });
}

// Exact division num / den in Z[x] with a nonnegative quotient of length len.
std::optional<Row> row_divide(const Row& num, const Row& den, std::size_t len) {
  std::size_t lo = 0;
  while (lo < den.size() && den[lo] == 0) ++lo;
  if (lo == den.size()) return std::nullopt;
  Row rem = num;
  Row q(len, 0);
  // divide from the low end; den[lo] is the lowest nonzero coefficient
  for (std::size_t k = 0; k < len; ++k) {
    std::size_t idx = k + lo;
    std::int64_t v = idx < rem.size() ? rem[idx] : 0;
    if (v == 0) continue;
    if (v % den[lo] != 0) return std::nullopt;
    std::int64_t c = v / den[lo];
    if (c < 0) return std::nullopt;
    q[k] = c;
    for (std::size_t j = lo; j < den.size(); ++j) {
      if (k + j >= rem.size()) {
        if (den[j] != 0) return std::nullopt;
        continue;
      }
      rem[k + j] -= checked::mul(c, den[j]);
    }
  }
  if (!row_is_zero(rem)) return std::nullopt;
  return q;
}

struct Grid {
  int genus = 0;  // i in [-genus, genus]
  int width = 0;  // delta in [0, width]
  std::vector<Row> rows;  // rows[i + genus]

  const Row& at(int i) const { return rows[i + genus]; }
};

Grid to_grid(const LaurentPoly2& normalized) {
  Grid g;
  int max_i = 0, max_delta = 0;
  for (auto [k, c] : normalized.terms()) {
    max_i = std::max(max_i, std::abs(k.first));
    max_delta = std::max(max_delta, k.second - k.first);
  }
  g.genus = max_i;
  g.width = max_delta;
  g.rows.assign(2 * g.genus + 1, Row(g.width + 1, 0));
  for (auto [k, c] : normalized.terms()) g.rows[k.first + g.genus][k.second - k.first] = c;
  return g;
}

LaurentPoly2 from_half(const std::vector<Row>& top, int genus) {
  // top[k] is row genus - k for k = 0..genus; mirror to negative i
  std::vector<std::array<std::int64_t, 3>> triples;
  for (int k = 0; k <= genus; ++k) {
    int i = genus - k;
    for (std::size_t d = 0; d < top[k].size(); ++d) {
      std::int64_t c = top[k][d];
      if (c == 0) continue;
      triples.push_back({i, i + static_cast<std::int64_t>(d), c});
      if (i != 0) triples.push_back({-i, -i + static_cast<std::int64_t>(d), c});
    }
  }
  return LaurentPoly2::from_triples(triples);
}

// Calls visit(r) for every nonnegative row r with r[d] <= bound[d].
void for_each_bounded_row(const Row& bound, const std::function<void(const Row&)>& visit) {
  Row r(bound.size(), 0);
  std::function<void(std::size_t)> rec = [&](std::size_t d) {
    if (d == bound.size()) {
      visit(r);
      return;
    }
    for (std::int64_t v = 0; v <= bound[d]; ++v) {
      r[d] = v;
      rec(d + 1);
    }
    r[d] = 0;
  };
  rec(0);
}

class DivisorSearch {
 public:
  explicit DivisorSearch(const LaurentPoly2& omega) : omega_(omega), grid_(to_grid(omega)) {}

  std::vector<LaurentPoly2> run() {
    for (int g1 = 1; 2 * g1 <= grid_.genus; ++g1) search_genus(g1);
    return {found_.begin(), found_.end()};
  }

 private:
  void search_genus(int g1) {
    g1_ = g1;
    g2_ = grid_.genus - g1;
    f_top_.assign(g1 + 1, Row());
    h_top_.assign(g2_ + 1, Row());
    const std::size_t len = grid_.width + 1;
    // Top row: F_{g1} * H_{g2} = Omega_g with both factors nonnegative. If the
    // lowest terms sit at f_lo and h_lo then F[d] * H[h_lo] <= Omega_g[d + h_lo].
    const Row& top = grid_.at(grid_.genus);
    std::size_t lo = 0;
    while (lo < len && top[lo] == 0) ++lo;
    if (lo == len) return;
    for (std::size_t f_lo = 0; f_lo <= lo; ++f_lo) {
      const std::size_t h_lo = lo - f_lo;
      Row bound(len, 0);
      for (std::size_t d = f_lo; d + h_lo < len; ++d) bound[d] = top[d + h_lo];
      for_each_bounded_row(bound, [&](const Row& f) {
        if (f[f_lo] == 0) return;
        auto h = row_divide(top, f, len);
        if (!h) return;
        f_top_[0] = f;
        h_top_[0] = *h;
        descend(1);
      });
    }
  }

  void descend(int k) {
    const std::size_t len = grid_.width + 1;
    if (k > g1_) {
      finish();
      return;
    }
    // R = Omega_{g-k} - sum_{l=1}^{k-1} F_{g1-l} H_{g2-k+l}
    Row rem = grid_.at(grid_.genus - k);
    for (int l = 1; l <= k - 1; ++l) row_sub_in_place(rem, row_mul(f_top_[l], h_top_[k - l], len));
    if (std::any_of(rem.begin(), rem.end(), [](std::int64_t v) { return v < 0; })) return;
    // F_{g1-k} * H_{g2} <= R coefficientwise
    const Row& h_lead = h_top_[0];
    Row bound(len, 0);
    for (std::size_t d = 0; d < len; ++d) {
      std::int64_t b = -1;
      for (std::size_t e = 0; e < len; ++e) {
        if (h_lead[e] == 0) continue;
        std::int64_t cap = (d + e < len) ? rem[d + e] / h_lead[e] : 0;
        b = (b < 0) ? cap : std::min(b, cap);
      }
      bound[d] = std::max<std::int64_t>(b, 0);
    }
    for_each_bounded_row(bound, [&](const Row& f) {
      Row r = rem;
      row_sub_in_place(r, row_mul(f, h_lead, len));
      if (std::any_of(r.begin(), r.end(), [](std::int64_t v) { return v < 0; })) return;
      auto h = row_divide(r, f_top_[0], len);
      if (!h) return;
      f_top_[k] = f;
      h_top_[k] = *h;
      descend(k + 1);
    });
  }

  void finish() {
    LaurentPoly2 f = from_half(f_top_, g1_);
    if (f.is_zero() || f.is_one()) return;
    if (f.normalized() != f) return;  // only count each divisor at its canonical shift
    auto h = exact_quotient(omega_, f);
    if (!h || h->is_one() || !h->is_positive_symmetric()) return;
    found_.insert(f);
    found_.insert(h->normalized());
  }

  const LaurentPoly2& omega_;
  Grid grid_;
  int g1_ = 0, g2_ = 0;
  std::vector<Row> f_top_, h_top_;
  std::set<LaurentPoly2> found_;
};

SymFactorization irreducible_factors(const LaurentPoly2& p) {
  auto divisors = positive_symmetric_divisors(p);
  if (divisors.empty()) return {{p}};
  const LaurentPoly2& f = divisors.front();
  auto rest = exact_quotient(p, f);
  if (!rest) throw ConsistencyError("divisor search returned a non-divisor");
  SymFactorization a = irreducible_factors(f);
  SymFactorization b = irreducible_factors(rest->normalized());
  a.factors.insert(a.factors.end(), b.factors.begin(), b.factors.end());
  std::sort(a.factors.begin(), a.factors.end());
  return a;
}

}  // namespace

std::optional<LaurentPoly2> exact_quotient(const LaurentPoly2& num, const LaurentPoly2& den) {
  if (den.is_zero()) throw std::invalid_argument("division by zero polynomial");
  if (num.is_zero()) return LaurentPoly2{};
  auto lead_of = [](const LaurentPoly2& p) { return *p.terms().rbegin(); };
  auto min_i = [](const LaurentPoly2& p) { return p.terms().begin()->first.first; };
  auto min_j = [](const LaurentPoly2& p) {
    int m = p.terms().begin()->first.second;
    for (auto [k, c] : p.terms()) m = std::min(m, k.second);
    return m;
  };
  const auto [den_key, den_lead] = lead_of(den);
  const int floor_i = min_i(num) - min_i(den);
  const int floor_j = min_j(num) - min_j(den);
  LaurentPoly2 rem = num;
  std::vector<std::array<std::int64_t, 3>> q;
  while (!rem.is_zero()) {
    auto [key, c] = lead_of(rem);
    int qi = key.first - den_key.first;
    int qj = key.second - den_key.second;
    if (qi < floor_i || qj < floor_j) return std::nullopt;
    if (c % den_lead != 0) return std::nullopt;
    std::int64_t qc = c / den_lead;
    q.push_back({qi, qj, qc});
    LaurentPoly2 term = LaurentPoly2::from_triples({{qi, qj, -qc}});
    rem = [&] {
      LaurentPoly2 prod = term * den;
      // rem + prod
      std::vector<std::array<std::int64_t, 3>> all = rem.triples();
      auto extra = prod.triples();
      all.insert(all.end(), extra.begin(), extra.end());
      return LaurentPoly2::from_triples(all);
    }();
  }
  return LaurentPoly2::from_triples(q);
}

std::vector<LaurentPoly2> positive_symmetric_divisors(const LaurentPoly2& omega) {
  if (!omega.is_positive_symmetric())
    throw InputError("Omega must have nonnegative coefficients and satisfy c_{i,j} = c_{-i,j-2i}");
  LaurentPoly2 norm = omega.normalized();
  return DivisorSearch(norm).run();
}

FactorizationSet positive_symmetric_factorizations(const LaurentPoly2& omega) {
  FactorizationSet out;
  LaurentPoly2 norm = omega.normalized();
  auto divisors = positive_symmetric_divisors(omega);
  if (divisors.empty()) {
    out.irreducible = {{norm}};
    return out;
  }
  std::set<std::pair<LaurentPoly2, LaurentPoly2>> pairs;
  for (const auto& f : divisors) {
    auto h = exact_quotient(norm, f);
    if (!h) throw ConsistencyError("divisor search returned a non-divisor");
    LaurentPoly2 hn = h->normalized();
    pairs.insert(f < hn ? std::pair{f, hn} : std::pair{hn, f});
  }
  for (const auto& [a, b] : pairs) out.groupings.push_back({{a, b}});
  out.irreducible = irreducible_factors(norm);
  return out;
}

}  // namespace knotprime
