#include <cstdio>
#include <fstream>

#include "doctest.h"
#include "knotprime/certificate.hpp"
#include "knotprime/errors.hpp"
#include "knotprime/pipeline.hpp"
#include "support.hpp"

using namespace knotprime;
using testsupport::connected;
using testsupport::knot;

namespace {

AnalysisConfig default_config() {
  AnalysisConfig c;
  c.determined = load_default_table();
  return c;
}

std::string write_temp(const std::string& name, const std::string& text) {
  std::ofstream(name) << text;
  return name;
}

}  // namespace

TEST_CASE("corpus ingestion") {
  auto corpus = load_corpus(testsupport::data_file("corpus_le9.jsonl"));
  CHECK(corpus.records.size() == 84);
  CHECK(corpus.quarantined.empty());
  for (const auto& r : corpus.records) CHECK_NOTHROW(check_record(r));

  auto path = write_temp("mixed_corpus.jsonl",
                         R"({"name": "3_1", "pd": "[[6,3,1,4],[4,1,5,2],[2,5,3,6]]", "omega": [[-1,0,1],[0,1,1],[1,2,1]]})"
                         "\n"
                         R"({"name": "broken", "pd": "[[1,2,3]]"})"
                         "\n"
                         R"({"name": "liar", "pd": "[[6,3,1,4],[4,1,5,2],[2,5,3,6]]", "omega": [[-1,-1,1],[0,0,3],[1,1,1]]})"
                         "\n\n");
  auto mixed = load_corpus(path);
  CHECK(mixed.records.size() == 1);
  REQUIRE(mixed.quarantined.size() == 2);
  CHECK(mixed.quarantined[0].line == 2);
  CHECK(mixed.quarantined[1].name == "liar");
  std::remove(path.c_str());

  auto empty = write_temp("empty_corpus.jsonl", "");
  auto report = batch(load_corpus(empty), default_config(), 2);
  CHECK(report.certificates.empty());
  CHECK(report.quarantined.empty());
  std::remove(empty.c_str());
  CHECK_THROWS_AS(load_corpus("no/such/file.jsonl"), InputError);
  CHECK_THROWS_AS(parse_record(R"({"name": "3_1"})"), InputError);
  CHECK_THROWS_AS(parse_omega("[[1,2]]"), InputError);
  CHECK(parse_omega(omega_to_json(*knot("9_12").omega)) == *knot("9_12").omega);
}

TEST_CASE("Omega irreducibility stage") {
  CHECK(test_omega_irreducible(LaurentPoly2(1)) == OmegaVerdict::TrivialUnknot);
  CHECK(test_omega_irreducible(*knot("4_1").omega) == OmegaVerdict::PrimeProven);
  CHECK(test_omega_irreducible(*knot("9_12").omega) == OmegaVerdict::Continue);
}

TEST_CASE("scenarios") {
  KnotData nine(knot("9_12"));
  auto sc = build_scenarios(nine, positive_symmetric_factorizations(*nine.record().omega), {2, 3, 5, 7});
  REQUIRE(sc.size() == 1);
  CHECK_FALSE(sc[0].eliminated());
  const auto& p2 = sc[0].per_p[0];
  CHECK(p2.p == 2);
  CHECK(p2.m * p2.n == 35);
  REQUIRE(p2.splits.size() == 1);

  KnotData eleven(knot("11_6"));
  auto sc11 = build_scenarios(eleven, positive_symmetric_factorizations(*eleven.record().omega), {2, 3, 5, 7});
  REQUIRE(sc11.size() == 3);
  for (const auto& s : sc11) CHECK(s.eliminated());
}

TEST_CASE("distinct-prime test preconditions and a composite control") {
  KnotData nine(knot("9_12"));
  auto config = default_config();
  CHECK_THROWS_AS(test_metacyclic_distinct(nine, 2, 5, 7, 35, 1, config), std::invalid_argument);
  CHECK_THROWS_AS(test_metacyclic_distinct(nine, 2, 5, 5, 5, 7, config), std::invalid_argument);
  auto o = test_metacyclic_distinct(nine, 2, 5, 7, 5, 7, config);
  CHECK(o.eliminated);
  CHECK(o.field == "F_71");
  CHECK(o.confirmation == "F_211");

  KnotData sum(connected(knot("3_1"), knot("4_1")));
  auto c = test_metacyclic_distinct(sum, 2, 3, 5, 3, 5, config);
  CHECK(c.applicable);
  CHECK_FALSE(c.eliminated);
  for (const auto& cls : c.classes) CHECK(cls.b2 >= cls.b2_first + cls.b2_second);
  auto na = test_metacyclic_distinct(sum, 3, 2, 5, 2, 5, config);
  CHECK_FALSE(na.applicable);
}

TEST_CASE("equal-prime pattern") {
  CHECK(equal_prime_pattern_eliminates({1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 2, 2}));
  CHECK_FALSE(equal_prime_pattern_eliminates({1, 1, 2, 2, 2, 2, 2, 2, 2, 2, 2, 2}));
  CHECK_FALSE(equal_prime_pattern_eliminates({1, 1, 3, 2, 2, 2}));
  CHECK(equal_prime_pattern_eliminates({1, 1, 4}));
  CHECK(equal_prime_pattern_eliminates({0, 0, 0}));
}

TEST_CASE("verdicts") {
  auto config = default_config();
  auto trefoil = analyze(knot("3_1"), config);
  CHECK(trefoil.verdict == Verdict::PrimeProven);
  CHECK(trefoil.first_success == "omega_irreducible");
  CHECK(analyze(knot("9_12"), config).first_success == "metacyclic");
  CHECK(analyze(knot("11_6"), config).verdict == Verdict::PrimeProven);

  KnotRecord bare = knot("5_2");
  bare.omega.reset();
  auto inv = analyze(bare, config);
  CHECK(inv.verdict == Verdict::Inconclusive);
  CHECK(inv.note == "no Omega supplied; invariants only");
  CHECK(inv.cover_homology.size() == 4);

  KnotRecord liar = knot("3_1");
  liar.omega = knot("4_1").omega;
  CHECK_THROWS_AS(analyze(liar, config), InputError);

  AnalysisConfig tight = config;
  tight.max_groupings = 2;
  auto capped = analyze(knot("11_6"), tight);
  CHECK(capped.verdict == Verdict::Inconclusive);
  CHECK_FALSE(capped.note.empty());

  for (auto [a, b] : {std::pair{"3_1", "4_1"}, std::pair{"3_1", "3_1"}, std::pair{"3_1", "6_1"}})
    CHECK(analyze(connected(knot(a), knot(b)), config).verdict == Verdict::Inconclusive);
  CHECK(analyze(connected(testsupport::mirror_of(knot("3_1")), knot("4_1")), config).verdict == Verdict::Inconclusive);
}

TEST_CASE("field modes agree on 9_12") {
  for (auto mode : {FieldMode::Finite, FieldMode::Cyclotomic, FieldMode::Both}) {
    auto config = default_config();
    config.field = mode;
    auto cert = analyze(knot("9_12"), config);
    CHECK(cert.verdict == Verdict::PrimeProven);
    const auto& e = cert.groupings.at(0).eliminations.at(0);
    REQUIRE(e.classes.size() == 1);
    CHECK(e.classes[0].b2 == 1);
    CHECK(e.classes[0].b2_first == 1);
    CHECK(e.classes[0].b2_second == 1);
    if (mode == FieldMode::Cyclotomic) CHECK(e.confirmation == "exact");
    if (mode == FieldMode::Both) CHECK(e.confirmation == "Q(zeta_35)");
  }
  CHECK(field_mode_from_string("both") == FieldMode::Both);
  CHECK_THROWS(field_mode_from_string("complex"));
}

TEST_CASE("monotonicity in p-set and d bound") {
  auto config = default_config();
  for (const char* name : {"9_12", "11_6", "10_123"}) {
    config.p_set = {2};
    config.d_max = 20;
    auto small = analyze(knot(name), config);
    config.p_set = {2, 3, 5, 7};
    config.d_max = 200;
    auto large = analyze(knot(name), config);
    if (small.verdict == Verdict::PrimeProven) CHECK(large.verdict == Verdict::PrimeProven);
  }
}

TEST_CASE("certificates: round trip, determinism, replay") {
  auto config = default_config();
  for (const char* name : {"9_12", "11_6", "10_123", "8_19"}) {
    auto a = analyze(knot(name), config);
    auto b = analyze(knot(name), config);
    CHECK(to_json(a, false) == to_json(b, false));
    auto j = to_json(a);
    CHECK(j.at("format") == 1);
    auto back = certificate_from_json(j);
    CHECK(to_json(back) == j);
    CHECK(replay(back).empty());
  }
  auto cert = analyze(knot("9_12"), config);
  cert.groupings[0].eliminations[0].classes[0].b2 = 2;
  CHECK(replay(cert).size() == 1);
  CHECK(verdict_from_string(to_string(Verdict::TrivialUnknot)) == Verdict::TrivialUnknot);
}

TEST_CASE("batch is independent of the worker count") {
  auto corpus = load_corpus(testsupport::data_file("corpus_le9.jsonl"));
  corpus.records.resize(20);
  auto config = default_config();
  auto one = batch(corpus, config, 1);
  auto four = batch(corpus, config, 4);
  REQUIRE(one.certificates.size() == four.certificates.size());
  for (std::size_t i = 0; i < one.certificates.size(); ++i)
    CHECK(to_json(one.certificates[i], false) == to_json(four.certificates[i], false));
  CHECK(one.first_success_counts == four.first_success_counts);
}
