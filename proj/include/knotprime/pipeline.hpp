#pragma once

#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "knotprime/abelian.hpp"
#include "knotprime/certificate.hpp"
#include "knotprime/corpus.hpp"
#include "knotprime/jones.hpp"
#include "knotprime/polynomials.hpp"
#include "knotprime/twisted.hpp"

namespace knotprime {

enum class FieldMode { Finite, Cyclotomic, Both };

std::string to_string(FieldMode m);
FieldMode field_mode_from_string(const std::string& s);

struct AnalysisConfig {
  std::vector<unsigned> p_set{2, 3, 5, 7};
  std::uint64_t d_max = 200;
  FieldMode field = FieldMode::Finite;
  std::size_t max_groupings = 64;
  std::shared_ptr<const std::vector<DeterminedKnot>> determined;  // Jones table; empty disables the test
  /// Called with every Betti triple the metacyclic tests compute.
  std::function<void(const std::string& knot, const MetacyclicRep&, const BettiTriple&)> observer;
};

/// Path of the bundled determined-knot table.
std::string default_determined_table();
std::shared_ptr<const std::vector<DeterminedKnot>> load_default_table();

/// Diagram-derived data shared by all tests; cover homology and Jones are
/// computed on first use.
class KnotData {
 public:
  explicit KnotData(const KnotRecord& record);

  const KnotRecord& record() const { return record_; }
  const WirtingerPresentation& presentation() const { return pres_; }
  const FoxJacobian& jacobian() const { return jac_; }
  const LaurentPoly1& alexander() const { return alexander_; }
  const FiniteAbelianGroup& cover(unsigned p);
  const LaurentPoly1& jones();
  const std::map<unsigned, FiniteAbelianGroup>& computed_covers() const { return covers_; }

 private:
  KnotRecord record_;
  WirtingerPresentation pres_;
  FoxJacobian jac_;
  LaurentPoly1 alexander_;
  std::map<unsigned, FiniteAbelianGroup> covers_;
  std::optional<LaurentPoly1> jones_;
};

enum class OmegaVerdict { PrimeProven, TrivialUnknot, Continue };
OmegaVerdict test_omega_irreducible(const LaurentPoly2& omega);

using Split = std::pair<FiniteAbelianGroup, FiniteAbelianGroup>;

/// Hypothesized homology splits of one factor grouping at one p.
struct PSplits {
  unsigned p = 0;
  mpz_class m;  // order predicted by the first block
  mpz_class n;  // order predicted by the second block
  std::vector<Split> splits;
};

/// A factor grouping Omega = O1 * O2 with its admissible homology splits, or
/// the covers-test elimination when some p admits none.
struct Scenario {
  LaurentPoly2 first;
  LaurentPoly2 second;
  std::vector<PSplits> per_p;
  std::optional<Elimination> covers_elimination;
  bool eliminated() const { return covers_elimination.has_value(); }
};

std::vector<Scenario> build_scenarios(KnotData& knot, const FactorizationSet& factorizations,
                                      const std::vector<unsigned>& p_set);

/// Outcome of a metacyclic test on one scenario.
struct MetacyclicOutcome {
  bool applicable = false;
  bool eliminated = false;
  std::string reason;
  std::vector<ClassRecord> classes;
  std::string field;
  std::string confirmation;
};

/// Distinct-prime test. Requires d1 | m, d1 !| n, d2 | n, d2 !| m for the
/// hypothesized orders m, n at p (throws std::invalid_argument otherwise).
MetacyclicOutcome test_metacyclic_distinct(const KnotData& knot, unsigned p, std::uint64_t d1, std::uint64_t d2,
                                           const mpz_class& m, const mpz_class& n, const AnalysisConfig& config);

/// Equal-prime test at p = 2 for a split whose two sides both have r-rank 1.
MetacyclicOutcome test_metacyclic_equal(const KnotData& knot, unsigned p, std::uint64_t r, const Split& split,
                                        const AnalysisConfig& config);

/// The combinatorial core of the equal-prime test: true when no pair of class
/// values (a, b) leaves every other value in {a + b, a + b + 1}.
bool equal_prime_pattern_eliminates(const std::vector<std::size_t>& values);

/// Full analysis. Throws InputError when Omega and the diagram disagree.
Certificate analyze(const KnotRecord& record, const AnalysisConfig& config);

struct BatchReport {
  std::vector<Certificate> certificates;
  std::vector<QuarantinedRecord> quarantined;
  std::map<std::string, std::size_t> first_success_counts;
  double median_ms = 0;
  nlohmann::json to_json() const;
};

BatchReport batch(const Corpus& corpus, const AnalysisConfig& config, unsigned jobs);

/// Re-runs every metacyclic elimination in a certificate with its recorded
/// parameters; returns a list of mismatches (empty when all values reproduce).
std::vector<std::string> replay(const Certificate& certificate);

}  // namespace knotprime
