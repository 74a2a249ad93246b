#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "json.hpp"

namespace knotprime {

enum class Verdict { PrimeProven, TrivialUnknot, Inconclusive };

std::string to_string(Verdict v);
Verdict verdict_from_string(const std::string& s);

/// Betti data for one representation class, with its projections.
struct ClassRecord {
  std::uint64_t d = 0;
  std::uint64_t a = 0;
  std::vector<std::uint64_t> alpha;
  std::size_t b2 = 0;
  std::size_t b2_first = 0;   // projection to d1 (distinct test only)
  std::size_t b2_second = 0;  // projection to d2 (distinct test only)
};

/// Why one factor grouping (or one homology split of it) cannot come from a
/// connected sum.
struct Elimination {
  std::string test;  // jones | covers | metacyclic_distinct | metacyclic_equal
  unsigned p = 0;
  std::uint64_t d1 = 0;  // r for the equal-prime test
  std::uint64_t d2 = 0;
  std::string split;  // "A | B" homology split, if the test is split specific
  std::string detail;
  std::vector<ClassRecord> classes;
  std::string field;
  std::string confirmation;
};

struct GroupingRecord {
  std::vector<std::string> factors;  // two blocks, as polynomials
  std::vector<std::vector<std::array<std::int64_t, 3>>> factor_triples;
  bool eliminated = false;
  std::string stage;  // first test family that eliminated it
  std::vector<Elimination> eliminations;
  std::string survivors;  // description of surviving scenarios when not eliminated
};

struct Certificate {
  int format = 1;
  std::string knot;
  std::string pd;
  std::vector<std::array<std::int64_t, 3>> omega;
  Verdict verdict = Verdict::Inconclusive;
  std::string first_success;
  std::string note;
  std::vector<std::string> irreducible_factors;
  std::vector<GroupingRecord> groupings;
  // invariants
  std::vector<std::pair<int, std::int64_t>> alexander;
  std::vector<std::pair<int, std::int64_t>> jones;
  std::vector<std::pair<unsigned, std::vector<std::string>>> cover_homology;
  // configuration
  std::vector<unsigned> p_set;
  std::uint64_t d_max = 0;
  std::string field_mode;
  double total_ms = 0;
};

nlohmann::json to_json(const Certificate& c, bool include_timings = true);
Certificate certificate_from_json(const nlohmann::json& j);

}  // namespace knotprime
