#include "knotprime/jones.hpp"

#include <fstream>
#include <map>
#include <numeric>
#include <stdexcept>

#include "json.hpp"

#include "knotprime/errors.hpp"
#include "knotprime/polynomials.hpp"

namespace knotprime {

namespace {

struct DisjointSets {
  std::vector<int> parent;
  explicit DisjointSets(int n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  int find(int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  bool unite(int a, int b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    parent[a] = b;
    return true;
  }
};

}  // namespace

LaurentPoly1 jones(const PDCode& pd, std::size_t max_crossings) {
  if (pd.is_unknot()) return LaurentPoly1(1);
  const std::size_t n = pd.size();
  if (n > max_crossings) throw std::invalid_argument("too many crossings for the state sum");
  const int edges = static_cast<int>(2 * n);
  // (A-exponent, loops) -> number of states
  std::map<std::pair<int, int>, std::int64_t> tally;
  for (std::uint64_t state = 0; state < (std::uint64_t{1} << n); ++state) {
    DisjointSets ds(edges + 1);
    int loops = edges;
    int a_minus_b = 0;
    for (std::size_t c = 0; c < n; ++c) {
      const auto& x = pd.crossings()[c];
      if ((state >> c) & 1) {  // B smoothing
        loops -= ds.unite(x[0], x[3]);
        loops -= ds.unite(x[1], x[2]);
        --a_minus_b;
      } else {
        loops -= ds.unite(x[0], x[1]);
        loops -= ds.unite(x[2], x[3]);
        ++a_minus_b;
      }
    }
    ++tally[{a_minus_b, loops}];
  }
  // bracket as a polynomial in A
  const LaurentPoly1 delta = LaurentPoly1::monomial(-1, 2) + LaurentPoly1::monomial(-1, -2);
  LaurentPoly1 bracket;
  for (auto [key, count] : tally) {
    auto [e, loops] = key;
    LaurentPoly1 term = LaurentPoly1::monomial(count, e);
    for (int k = 1; k < loops; ++k) term = term * delta;
    bracket += term;
  }
  const int w = pd.writhe();
  LaurentPoly1 v = bracket * LaurentPoly1::monomial(w % 2 == 0 ? 1 : -1, -3 * w);
  // A = t^{-1/4}
  LaurentPoly1 out;
  for (auto [e, c] : v.terms()) {
    if (e % 4 != 0) throw ConsistencyError("Jones polynomial has fractional exponents; not a knot");
    out += LaurentPoly1::monomial(c, -e / 4);
  }
  return out;
}

std::vector<DeterminedKnot> load_determined_knots(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open determined-knot table: " + path);
  std::vector<DeterminedKnot> out;
  std::string line;
  while (std::getline(in, line)) {
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    auto j = nlohmann::json::parse(line);
    DeterminedKnot k;
    k.name = j.at("name").get<std::string>();
    k.omega = LaurentPoly2::from_triples(j.at("omega").get<std::vector<std::array<std::int64_t, 3>>>()).normalized();
    LaurentPoly1 computed = jones(parse_pd(j.at("pd").get<std::string>()));
    if (j.contains("jones")) {
      auto given = LaurentPoly1::from_pairs(j.at("jones").get<std::vector<std::pair<int, std::int64_t>>>());
      if (given != computed) throw ConsistencyError("bundled Jones polynomial of " + k.name + " disagrees with the state sum");
    }
    k.jones = computed;
    out.push_back(std::move(k));
  }
  return out;
}

JonesVerdict jones_divisibility_test(const LaurentPoly2& omega_factor, const LaurentPoly1& jones_k,
                                     const std::vector<DeterminedKnot>& table) {
  const LaurentPoly2 f = omega_factor.normalized();
  const LaurentPoly2 fm = omega_factor.mirrored().normalized();
  for (const auto& k : table) {
    if (k.omega != f && k.omega != fm) continue;
    JonesVerdict v;
    v.matched = k.name;
    v.eliminated = !divides_1var(k.jones, jones_k) && !divides_1var(k.jones.inverted(), jones_k);
    return v;
  }
  return {};
}

}  // namespace knotprime
