// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any fails.
#include <chrono>
#include <cmath>
#include <complex>
#include <functional>
#include <iostream>
#include <map>
#include <mutex>
#include <numbers>
#include <set>
#include <sstream>

#include "knotprime/abelian.hpp"
#include "knotprime/certificate.hpp"
#include "knotprime/fields.hpp"
#include "knotprime/metacyclic.hpp"
#include "knotprime/pipeline.hpp"
#include "knotprime/polynomials.hpp"
#include "knotprime/twisted.hpp"
#include "support.hpp"

using namespace knotprime;
using testsupport::connected;
using testsupport::knot;

namespace {

struct Check {
  std::ostringstream detail;
  bool ok = true;
  void require(bool cond, const std::string& what) {
    if (!cond) {
      ok = false;
      detail << "[failed: " << what << "] ";
    }
  }
};

using Clock = std::chrono::steady_clock;

double ms_since(Clock::time_point t0) { return std::chrono::duration<double, std::milli>(Clock::now() - t0).count(); }

AnalysisConfig base_config() {
  AnalysisConfig c;
  c.determined = load_default_table();
  return c;
}

FiniteAbelianGroup group(std::vector<long> parts) { return FiniteAbelianGroup(std::vector<mpz_class>(parts.begin(), parts.end())); }

LaurentPoly2 poly(std::vector<std::array<std::int64_t, 3>> tr) { return LaurentPoly2::from_triples(tr).normalized(); }

std::vector<KnotRecord> all_bundled() {
  auto recs = load_corpus(testsupport::data_file("corpus_le9.jsonl")).records;
  for (const auto& r : load_corpus(testsupport::data_file("named_examples.jsonl")).records) recs.push_back(r);
  return recs;
}

void criterion1(Check& c) {
  auto t0 = Clock::now();
  auto rec = knot("9_12");
  auto fs = positive_symmetric_factorizations(*rec.omega);
  // 2s^2t^2 + 3st + 2 and s^2t^2 + 3st + 1
  std::set<LaurentPoly2> expected{poly({{2, 2, 2}, {1, 1, 3}, {0, 0, 2}}), poly({{2, 2, 1}, {1, 1, 3}, {0, 0, 1}})};
  c.require(fs.groupings.size() == 1, "one grouping");
  if (fs.groupings.size() == 1)
    c.require(std::set<LaurentPoly2>(fs.groupings[0].factors.begin(), fs.groupings[0].factors.end()) == expected,
              "factors");
  auto pres = wirtinger(rec.pd);
  auto classes = surjective_classes(pres, MetacyclicParams::make(35, 2, 34));
  c.require(classes.size() == 1, "unique surjective D70 class");
  auto cert = analyze(rec, base_config());
  const double ms = ms_since(t0);
  c.require(cert.verdict == Verdict::PrimeProven, "PRIME_PROVEN");
  c.require(cert.first_success == "metacyclic", "metacyclic stage");
  const auto& e = cert.groupings.at(0).eliminations.at(0);
  c.require(e.classes.size() == 1 && e.classes[0].b2 == 1 && e.classes[0].b2_first == 1 && e.classes[0].b2_second == 1,
            "b2 triple (1,1,1)");
  c.require(ms < 1000, "under 1 s");
  c.detail << "triple (" << e.classes.at(0).b2 << "," << e.classes.at(0).b2_first << "," << e.classes.at(0).b2_second
           << ") over " << e.field << ", " << ms << " ms";
}

void criterion2(Check& c) {
  auto t0 = Clock::now();
  KnotData k(knot("11_6"));
  c.require(k.cover(2) == group({27, 5}), "H1(X2) = Z27 + Z5");
  c.require(k.cover(3) == group({8, 7, 8, 7}), "H1(X3) = (Z8 + Z7)^2");
  auto scenarios = build_scenarios(k, positive_symmetric_factorizations(*k.record().omega), {2, 3, 5, 7});
  c.require(scenarios.size() == 3, "three groupings");
  for (const auto& s : scenarios) c.require(s.eliminated(), "grouping eliminated by covers");
  auto cert = analyze(k.record(), base_config());
  const double ms = ms_since(t0);
  c.require(cert.verdict == Verdict::PrimeProven, "PRIME_PROVEN");
  c.require(ms < 1000, "under 1 s");
  c.detail << "X2: " << k.cover(2).to_string() << ", X3: " << k.cover(3).to_string() << ", " << ms << " ms";
}

void criterion3(Check& c) {
  auto t0 = Clock::now();
  KnotData k(knot("10_123"));
  c.require(k.cover(2) == group({11, 11}), "H1(X2) = Z11 + Z11");
  auto classes = reduce_to_classes(k.presentation(), MetacyclicParams::make(11, 2, 10));
  c.require(classes.size() == 12, "12 projective classes");
  auto o = test_metacyclic_equal(k, 2, 11, {group({11}), group({11})}, base_config());
  std::multiset<std::size_t> values;
  for (const auto& cls : o.classes) values.insert(cls.b2);
  c.require(values == std::multiset<std::size_t>{1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 2, 2}, "b2 multiset {1x10, 2x2}");
  c.require(o.eliminated, "equal-prime test eliminates");
  auto cert = analyze(k.record(), base_config());
  const double ms = ms_since(t0);
  c.require(cert.verdict == Verdict::PrimeProven, "PRIME_PROVEN");
  c.require(ms < 2000, "under 2 s");
  c.detail << "b2 ones=" << values.count(1) << " twos=" << values.count(2) << " over " << o.field << ", " << ms << " ms";
}

void criterion4(Check& c) {
  auto t0 = Clock::now();
  const auto q = find_prime_with_root(91);
  c.require(q == 547, "q = 547");
  auto zeta = primitive_root_of_unity(q, 91);
  c.require(multiplicative_order(zeta.finite_value(), q) == 91, "zeta has order 91");
  KnotData k(knot("15n139630"));
  auto scenarios = build_scenarios(k, positive_symmetric_factorizations(*k.record().omega), {3});
  AnalysisConfig config = base_config();
  std::optional<MetacyclicOutcome> outcome;
  for (const auto& s : scenarios)
    for (const auto& ps : s.per_p) {
      const bool forward = ps.m % 7 == 0 && ps.n % 13 == 0 && ps.m % 13 != 0 && ps.n % 7 != 0;
      const bool backward = ps.m % 13 == 0 && ps.n % 7 == 0 && ps.m % 7 != 0 && ps.n % 13 != 0;
      if (forward) outcome = test_metacyclic_distinct(k, 3, 7, 13, ps.m, ps.n, config);
      if (backward) outcome = test_metacyclic_distinct(k, 3, 13, 7, ps.m, ps.n, config);
    }
  const double ms = ms_since(t0);
  c.require(outcome.has_value(), "a scenario with 7 | m and 13 | n at p = 3");
  if (!outcome) return;
  bool saw16 = false, triples = !outcome->classes.empty();
  for (const auto& cls : outcome->classes) {
    saw16 = saw16 || (cls.d == 91 && cls.a == 16);
    triples = triples && cls.b2 == 1 && cls.b2_first == 1 && cls.b2_second == 1;
  }
  c.require(saw16, "class with a = 16");
  c.require(triples, "b2 = 1 for chi, chi1, chi2");
  c.require(outcome->field == "F_547", "primary field F_547");
  c.require(outcome->eliminated, "eliminated");
  c.require(outcome->confirmation.rfind("F_", 0) == 0 && outcome->confirmation != "F_547", "second prime confirms");
  c.require(ms < 1000, "under 1 s");
  c.detail << outcome->classes.size() << " class(es), field " << outcome->field << ", confirmed over "
           << outcome->confirmation << ", zeta = " << zeta.finite_value() << ", " << ms << " ms";
}

void criterion5(Check& c) {
  auto delta = LaurentPoly1::from_pairs({{0, 1}, {1, -3}, {2, 4}, {3, -5}, {4, 4}, {5, -3}, {6, 1}});
  std::complex<long double> prod = 1;
  for (int k = 0; k < 3; ++k) {
    std::complex<long double> v = 0;
    for (const auto& [e, coef] : delta.terms())
      v += static_cast<long double>(coef) * std::polar<long double>(1, 2 * std::numbers::pi_v<long double> * k * e / 3);
    prod *= v;
  }
  c.require(std::llround(std::abs(prod)) == 16, "eigenvalue product is 16");
  std::vector<std::vector<mpz_class>> expected{{-3, 1, 1}, {1, -3, 1}, {1, 1, -3}};
  c.require(circulant_matrix(delta, 3) == expected, "circulant matrix");
  auto det = order_formula(delta, 3);
  c.require(det == 16, "|det| = 16");
  c.detail << "|det| = " << det.get_str();
}

void criterion6(Check& c) {
  auto t0 = Clock::now();
  std::size_t checks = 0;
  for (const auto& rec : all_bundled()) {
    KnotData k(rec);
    c.require(equal_up_to_unit(specialize_s(*rec.omega, -1), k.alexander()), rec.name + " Omega(-1,t) vs Alexander");
    for (unsigned p : {2u, 3u, 5u, 7u}) {
      const auto& h = k.cover(p);
      c.require(h.order() == order_formula(k.alexander(), p), rec.name + " order formula");
      if (p != 2) c.require(plans_doubled(h), rec.name + " doubling at p=" + std::to_string(p));
      ++checks;
    }
  }
  const double ms = ms_since(t0);
  c.require(ms < 60000, "under 60 s");
  c.detail << checks << " (knot, p) pairs, " << ms << " ms";
}

struct Observed {
  std::string knot;
  MetacyclicRep rep;
  BettiTriple betti;
};

std::vector<KnotRecord> controls() {
  return {connected(knot("3_1"), knot("4_1")), connected(knot("3_1"), knot("3_1")),
          connected(testsupport::mirror_of(knot("3_1")), knot("4_1")), connected(knot("3_1"), knot("6_1"))};
}

void criterion7(Check& c) {
  std::mutex mu;
  std::vector<Observed> seen;
  AnalysisConfig config = base_config();
  config.observer = [&](const std::string& name, const MetacyclicRep& rep, const BettiTriple& b) {
    std::lock_guard lock(mu);
    seen.push_back({name, rep, b});
  };
  Corpus corpus;
  corpus.records = all_bundled();
  for (const auto& r : controls()) corpus.records.push_back(r);
  std::map<std::string, FoxJacobian> jac;
  for (const auto& r : corpus.records) jac[r.name] = fox_jacobian(wirtinger(r.pd));
  batch(corpus, config, 4);
  // again with the Jones stage off and both fields, so more knots reach the metacyclic stage
  config.determined.reset();
  config.field = FieldMode::Both;
  batch(corpus, config, 4);

  std::set<std::tuple<std::string, std::uint64_t, unsigned, std::uint64_t, std::vector<std::uint64_t>, std::string>>
      distinct;
  std::size_t nonabelian = 0, abelian = 0;
  for (const auto& o : seen) {
    const bool cyclic = o.rep.params.abelian() || std::all_of(o.rep.alpha.begin(), o.rep.alpha.end(), [](auto x) { return x == 0; });
    if (cyclic) {
      ++abelian;
      c.require(o.betti == BettiTriple{1, 1, 0, ""}, o.knot + " abelian rep (1,1,0)");
    } else {
      ++nonabelian;
      c.require(o.betti.b0 == 0 && o.betti.b1 == o.betti.b2 && o.betti.b2 >= 1, o.knot + " nonabelian rep");
    }
    distinct.insert({o.knot, o.rep.params.d, o.rep.params.p, o.rep.params.a, o.rep.alpha, o.betti.field});
  }
  // explicit d1 d2 = 0 on every distinct (rep, field) pair seen
  for (const auto& [name, d, p, a, alpha, field] : distinct) {
    if (field.rfind("F_", 0) != 0) continue;
    MetacyclicRep rep{MetacyclicParams::make(d, p, a), alpha};
    auto zeta = primitive_root_of_unity(std::stoull(field.substr(2)), d);
    auto b1 = boundary1(jac.at(name), rep, zeta);
    auto b2 = boundary2(jac.at(name), rep, zeta);
    bool zero = true;
    for (std::size_t i = 0; i < b1.size() && zero; ++i)
      for (std::size_t j = 0; j < b2[0].size() && zero; ++j) {
        auto acc = zeta - zeta;
        for (std::size_t k = 0; k < b2.size(); ++k) acc = acc + b1[i][k] * b2[k][j];
        zero = acc.is_zero();
      }
    c.require(zero, name + " d1 d2 = 0");
  }
  // cyclic-image reps of every knot in the run, over Q
  for (const auto& r : corpus.records)
    for (unsigned p : {2u, 3u, 5u, 7u}) {
      MetacyclicRep rep{MetacyclicParams::make(1, p, 1), std::vector<std::uint64_t>(jac.at(r.name).cols, 0)};
      auto b = betti(jac.at(r.name), rep, FieldSpec::cyclotomic());
      c.require(b == BettiTriple{1, 1, 0, ""}, r.name + " abelian rep (1,1,0)");
      ++abelian;
    }
  c.require(nonabelian > 0, "some nonabelian reps encountered");
  c.detail << nonabelian << " nonabelian evaluations (" << distinct.size() << " distinct), " << abelian
           << " abelian evaluations";
}

void criterion8(Check& c) {
  AnalysisConfig config = base_config();
  std::size_t tested = 0;
  // the four named controls, then further pairs for the additivity check
  for (const auto& [a, b] : {std::pair{"3_1", "4_1"}, std::pair{"3_1", "3_1"}, std::pair{"m3_1", "4_1"},
                             std::pair{"3_1", "6_1"}, std::pair{"4_1", "5_2"}, std::pair{"3_1", "5_1"},
                             std::pair{"5_2", "6_2"}, std::pair{"4_1", "7_2"}, std::pair{"m5_2", "6_1"},
                             std::pair{"3_1", "7_1"}}) {
    KnotRecord ka = a[0] == 'm' ? testsupport::mirror_of(knot(a + 1)) : knot(a);
    KnotRecord kb = knot(b);
    KnotRecord sum = connected(ka, kb);
    auto cert = analyze(sum, config);
    c.require(cert.verdict != Verdict::PrimeProven, sum.name + " not PRIME_PROVEN");
    KnotData k(sum), k1(ka), k2(kb);
    for (unsigned p : {2u, 3u, 5u, 7u}) {
      const mpz_class m = k1.cover(p).order(), n = k2.cover(p).order();
      for (const auto& [d1z, e1] : factor_integer(m))
        for (const auto& [d2z, e2] : factor_integer(n)) {
          const auto d1 = d1z.get_ui(), d2 = d2z.get_ui();
          if (d1 == d2 || n % d1 == 0 || m % d2 == 0) continue;
          auto o = test_metacyclic_distinct(k, p, d1, d2, m, n, config);
          c.require(!o.eliminated, sum.name + " survives distinct test");
          for (const auto& cls : o.classes) {
            const long eps = static_cast<long>(cls.b2) - static_cast<long>(cls.b2_first + cls.b2_second);
            c.require(eps == 0 || eps == 1, sum.name + " additivity");
            ++tested;
          }
        }
      if (p == 2)
        for (const auto& [r, e] : factor_integer(m)) {
          if (n % r != 0 || r == 2) continue;
          auto o = test_metacyclic_equal(k, 2, r.get_ui(), {k1.cover(2), k2.cover(2)}, config);
          c.require(!o.eliminated, sum.name + " survives equal-prime test");
        }
    }
  }
  c.require(tested > 0, "some surjective reps tested");
  c.detail << tested << " surjective classes satisfy additivity; all controls INCONCLUSIVE";
}

std::vector<Certificate> corpus_certificates;

void criterion9(Check& c) {
  auto report = batch(load_corpus(testsupport::data_file("corpus_le9.jsonl")), base_config(), 1);
  std::size_t proven = 0;
  for (const auto& cert : report.certificates) proven += cert.verdict == Verdict::PrimeProven;
  c.require(report.quarantined.empty(), "no quarantined records");
  c.require(proven == 84 && report.certificates.size() == 84, "84/84 PRIME_PROVEN");
  c.require(report.median_ms < 100, "median under 100 ms");
  c.detail << proven << "/" << report.certificates.size() << " PRIME_PROVEN, median " << report.median_ms << " ms;";
  for (const auto& [k, v] : report.first_success_counts) c.detail << " " << k << "=" << v;
  corpus_certificates = report.certificates;
}

void criterion10(Check& c) {
  auto certs = corpus_certificates;
  for (const auto& r : load_corpus(testsupport::data_file("named_examples.jsonl")).records)
    certs.push_back(analyze(r, base_config()));
  std::map<std::string, KnotRecord> records;
  for (const auto& r : all_bundled()) records[r.name] = r;
  std::size_t classes = 0;
  for (const auto& cert : certs) {
    auto round = certificate_from_json(to_json(cert));
    auto mismatches = replay(round);
    c.require(mismatches.empty(), cert.knot + " replay");
    AnalysisConfig config = base_config();
    config.p_set = round.p_set;
    config.d_max = round.d_max;
    config.field = field_mode_from_string(round.field_mode);
    c.require(to_json(analyze(records.at(cert.knot), config), false) == to_json(round, false), cert.knot + " rerun");
    for (const auto& g : round.groupings)
      for (const auto& e : g.eliminations) classes += e.classes.size();
  }
  c.detail << certs.size() << " certificates replayed, " << classes << " recorded classes reproduced";
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<void(Check&)>>> criteria{
      {"9_12 end to end", criterion1},
      {"11_6 cover homology and covers test", criterion2},
      {"10_123 equal-prime test", criterion3},
      {"15n139630 over F_547", criterion4},
      {"circulant determinant", criterion5},
      {"oracle identities on the bundled knots", criterion6},
      {"twisted homology invariants", criterion7},
      {"composite controls", criterion8},
      {"corpus effectiveness and speed", criterion9},
      {"determinism and replay", criterion10},
  };
  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Check c;
    try {
      criteria[i].second(c);
    } catch (const std::exception& e) {
      c.ok = false;
      c.detail << "[exception: " << e.what() << "]";
    }
    failures += !c.ok;
    std::cout << "criterion " << (i + 1) << ": " << (c.ok ? "PASS" : "FAIL") << "  " << criteria[i].first << "  -- "
              << c.detail.str() << std::endl;
  }
  return failures ? 1 : 0;
}
