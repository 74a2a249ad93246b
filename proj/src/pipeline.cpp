#include "knotprime/pipeline.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <functional>
#include <mutex>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "knotprime/errors.hpp"

#ifndef KNOTPRIME_DATA_DIR
#define KNOTPRIME_DATA_DIR "data"
#endif

namespace knotprime {

std::string to_string(FieldMode m) {
  switch (m) {
    case FieldMode::Finite: return "finite";
    case FieldMode::Cyclotomic: return "cyclotomic";
    case FieldMode::Both: return "both";
  }
  return "finite";
}

FieldMode field_mode_from_string(const std::string& s) {
  if (s == "finite") return FieldMode::Finite;
  if (s == "cyclotomic") return FieldMode::Cyclotomic;
  if (s == "both") return FieldMode::Both;
  throw InputError("field must be finite, cyclotomic or both");
}

std::string default_determined_table() { return std::string(KNOTPRIME_DATA_DIR) + "/determined_knots.jsonl"; }

std::shared_ptr<const std::vector<DeterminedKnot>> load_default_table() {
  return std::make_shared<const std::vector<DeterminedKnot>>(load_determined_knots(default_determined_table()));
}

// ------------------------------------------------------------ knot data

KnotData::KnotData(const KnotRecord& record)
    : record_(record), pres_(wirtinger(record.pd)), jac_(fox_jacobian(pres_)) {
  alexander_ = record.pd.is_unknot() ? LaurentPoly1(1) : alexander_poly(jac_);
}

const FiniteAbelianGroup& KnotData::cover(unsigned p) {
  auto it = covers_.find(p);
  if (it == covers_.end()) it = covers_.emplace(p, branched_cover_homology(jac_, p)).first;
  return it->second;
}

const LaurentPoly1& KnotData::jones() {
  if (!jones_) {
    jones_ = knotprime::jones(record_.pd);
    if (record_.jones && *record_.jones != *jones_)
      throw InputError(record_.name + ": supplied Jones polynomial disagrees with the diagram");
  }
  return *jones_;
}

// ------------------------------------------------------------ stage 1

OmegaVerdict test_omega_irreducible(const LaurentPoly2& omega) {
  if (omega.normalized().is_one()) return OmegaVerdict::TrivialUnknot;
  return positive_symmetric_factorizations(omega).empty() ? OmegaVerdict::PrimeProven : OmegaVerdict::Continue;
}

// ------------------------------------------------------------ covers

namespace {

std::string split_string(const Split& s) { return s.first.to_string() + " | " + s.second.to_string(); }

Scenario scenario_for(KnotData& knot, const LaurentPoly2& first, const LaurentPoly2& second,
                      const std::vector<unsigned>& p_set) {
  Scenario sc{first, second, {}, std::nullopt};
  const LaurentPoly1 delta1 = specialize_s(first, -1);
  const LaurentPoly1 delta2 = specialize_s(second, -1);
  for (unsigned p : p_set) {
    const FiniteAbelianGroup& h = knot.cover(p);
    PSplits ps{p, order_formula(delta1, p), order_formula(delta2, p), {}};
    Elimination e;
    e.test = "covers";
    e.p = p;
    if (ps.m * ps.n != h.order()) {
      e.detail = "orders " + ps.m.get_str() + " * " + ps.n.get_str() + " != |H_1| = " + h.order().get_str();
      sc.covers_elimination = e;
      return sc;
    }
    ps.splits = admissible_splits(h, ps.m, ps.n, p != 2);
    if (ps.splits.empty()) {
      e.detail = h.to_string() + " has no summand decomposition with orders (" + ps.m.get_str() + ", " +
                 ps.n.get_str() + ")" + (p != 2 ? " with both parts of the form G + G" : "");
      sc.covers_elimination = e;
      return sc;
    }
    sc.per_p.push_back(std::move(ps));
  }
  return sc;
}

}  // namespace

std::vector<Scenario> build_scenarios(KnotData& knot, const FactorizationSet& factorizations,
                                      const std::vector<unsigned>& p_set) {
  std::vector<Scenario> out;
  for (const auto& g : factorizations.groupings) out.push_back(scenario_for(knot, g.factors[0], g.factors[1], p_set));
  return out;
}

// ------------------------------------------------------------ metacyclic

namespace {

std::size_t observed_b2(const KnotData& knot, const MetacyclicRep& rep, const FieldSpec& f,
                        const AnalysisConfig& config) {
  BettiTriple b = betti(knot.jacobian(), rep, f);
  if (config.observer) config.observer(knot.record().name, rep, b);
  return b.b2;
}

FieldSpec primary_field(std::uint64_t d, FieldMode mode) {
  if (mode == FieldMode::Cyclotomic) return FieldSpec::cyclotomic();
  return FieldSpec::finite(find_prime_with_root(d, 2));
}

std::optional<FieldSpec> confirmation_field(std::uint64_t d, const FieldSpec& primary, FieldMode mode) {
  if (mode == FieldMode::Cyclotomic) return std::nullopt;
  if (mode == FieldMode::Both) return FieldSpec::cyclotomic();
  return FieldSpec::finite(find_prime_with_root(d, primary.q + 1));
}

using ValueFn = std::function<std::vector<std::size_t>(const FieldSpec&)>;

// Computes the values over the primary field; when `decide` says eliminate,
// recomputes over the confirmation field and, on disagreement, over Q(zeta_d).
// Returns the values that support the decision.
std::vector<std::size_t> confirmed_values(const ValueFn& values, std::uint64_t d, FieldMode mode,
                                          const std::function<bool(const std::vector<std::size_t>&)>& decide,
                                          MetacyclicOutcome& out) {
  FieldSpec primary = primary_field(d, mode);
  auto v = values(primary);
  out.field = primary.describe(d);
  if (!decide(v)) return v;
  auto second = confirmation_field(d, primary, mode);
  if (!second) {
    out.confirmation = "exact";
    out.eliminated = true;
    return v;
  }
  auto w = values(*second);
  if (w == v) {
    out.confirmation = second->describe(d);
    out.eliminated = true;
    return v;
  }
  // the two fields disagree: settle over the cyclotomic field
  FieldSpec exact = FieldSpec::cyclotomic();
  auto x = (second->kind == FieldSpec::Kind::Cyclotomic) ? w : values(exact);
  out.field = exact.describe(d);
  out.confirmation = "exact (finite fields disagreed)";
  out.eliminated = decide(x);
  return x;
}

std::vector<std::uint64_t> prime_divisors_upto(const mpz_class& n, std::uint64_t bound) {
  std::vector<std::uint64_t> out;
  for (const auto& [prime, e] : factor_integer(n))
    if (prime <= bound) out.push_back(prime.get_ui());
  return out;
}

bool divides(std::uint64_t d, const mpz_class& n) { return mpz_divisible_ui_p(n.get_mpz_t(), d) != 0; }

}  // namespace

MetacyclicOutcome test_metacyclic_distinct(const KnotData& knot, unsigned p, std::uint64_t d1, std::uint64_t d2,
                                           const mpz_class& m, const mpz_class& n, const AnalysisConfig& config) {
  if (d1 == d2 || !is_prime(d1) || !is_prime(d2)) throw std::invalid_argument("d1, d2 must be distinct primes");
  if (!divides(d1, m) || divides(d1, n) || !divides(d2, n) || divides(d2, m))
    throw std::invalid_argument("divisibility precondition fails for (d1, d2)");
  MetacyclicOutcome out;
  const auto a1s = valid_a_values(d1, p, true);
  const auto a2s = valid_a_values(d2, p, true);
  if (a1s.empty() || a2s.empty()) {
    out.reason = "no nonabelian metacyclic group for this p";
    return out;
  }
  out.applicable = true;
  const std::uint64_t d = d1 * d2;
  std::vector<MetacyclicRep> reps;
  try {
    for (auto a1 : a1s)
      for (auto a2 : a2s) {
        auto [dd, a] = crt_a(d1, a1, d2, a2);
        for (auto& r : surjective_classes(knot.presentation(), MetacyclicParams::make(dd, p, a))) reps.push_back(r);
      }
  } catch (const std::length_error& e) {
    out.applicable = false;
    out.reason = e.what();
    return out;
  }
  if (reps.empty()) {
    // a connected sum would have a surjective representation
    out.eliminated = true;
    out.reason = "no surjective representation onto M(" + std::to_string(d) + ", " + std::to_string(p) + ", a)";
    out.confirmation = "exact";
    return out;
  }
  ValueFn values = [&](const FieldSpec& f) {
    std::vector<std::size_t> v;
    for (const auto& r : reps) {
      v.push_back(observed_b2(knot, r, f, config));
      v.push_back(observed_b2(knot, project_rep(r, d1), f, config));
      v.push_back(observed_b2(knot, project_rep(r, d2), f, config));
    }
    return v;
  };
  auto all_violate = [](const std::vector<std::size_t>& v) {
    for (std::size_t i = 0; i < v.size(); i += 3)
      if (v[i] >= v[i + 1] + v[i + 2]) return false;
    return true;
  };
  auto v = confirmed_values(values, d, config.field, all_violate, out);
  for (std::size_t i = 0; i < reps.size(); ++i)
    out.classes.push_back({d, reps[i].params.a, reps[i].alpha, v[3 * i], v[3 * i + 1], v[3 * i + 2]});
  out.reason = out.eliminated ? "every surjective class has b2 < b2(chi_1) + b2(chi_2)"
                              : "some surjective class is additive";
  return out;
}

bool equal_prime_pattern_eliminates(const std::vector<std::size_t>& values) {
  for (std::size_t i = 0; i < values.size(); ++i)
    for (std::size_t j = i + 1; j < values.size(); ++j) {
      const std::size_t a = values[i], b = values[j];
      if (a < 1 || b < 1) continue;
      bool fits = true;
      for (std::size_t k = 0; k < values.size() && fits; ++k)
        if (k != i && k != j && values[k] != a + b && values[k] != a + b + 1) fits = false;
      if (fits) return false;
    }
  return true;
}

MetacyclicOutcome test_metacyclic_equal(const KnotData& knot, unsigned p, std::uint64_t r, const Split& split,
                                        const AnalysisConfig& config) {
  MetacyclicOutcome out;
  if (p != 2 || !is_prime(r) || r == 2) {
    out.reason = "equal-prime test implemented for p = 2 and odd r";
    return out;
  }
  mpz_class rr(static_cast<unsigned long>(r));
  if (split.first.rank_mod(rr) != 1 || split.second.rank_mod(rr) != 1) {
    out.reason = "each side must carry exactly one Z_r summand";
    return out;
  }
  const auto params = MetacyclicParams::make(r, 2, r - 1);
  if (rep_solution_space(knot.presentation(), params).dimension() != 2) {
    out.reason = "representation space is not 2-dimensional";
    return out;
  }
  out.applicable = true;
  auto reps = reduce_to_classes(knot.presentation(), params);
  ValueFn values = [&](const FieldSpec& f) {
    std::vector<std::size_t> v;
    for (const auto& rep : reps) v.push_back(observed_b2(knot, rep, f, config));
    return v;
  };
  auto v = confirmed_values(values, r, config.field, equal_prime_pattern_eliminates, out);
  for (std::size_t i = 0; i < reps.size(); ++i) out.classes.push_back({r, reps[i].params.a, reps[i].alpha, v[i], 0, 0});
  out.reason = out.eliminated ? "no pair of classes extends to an additive pattern" : "an additive pattern exists";
  return out;
}

// ------------------------------------------------------------ analyze

namespace {

int stage_rank(const std::string& stage) {
  if (stage == "omega_irreducible") return 0;
  if (stage == "jones") return 1;
  if (stage == "covers") return 2;
  return 3;
}

Elimination from_outcome(const std::string& test, unsigned p, std::uint64_t d1, std::uint64_t d2,
                         const MetacyclicOutcome& o) {
  Elimination e;
  e.test = test;
  e.p = p;
  e.d1 = d1;
  e.d2 = d2;
  e.detail = o.reason;
  e.classes = o.classes;
  e.field = o.field;
  e.confirmation = o.confirmation;
  return e;
}

// Tries the metacyclic tests on a scenario; fills the record on success.
void metacyclic_stage(KnotData& knot, const Scenario& sc, const AnalysisConfig& config, GroupingRecord& gr) {
  std::ostringstream survivors;
  for (const auto& ps : sc.per_p) {
    // distinct primes: independent of the chosen split
    const auto c1 = prime_divisors_upto(ps.m, config.d_max);
    const auto c2 = prime_divisors_upto(ps.n, config.d_max);
    for (auto d1 : c1) {
      if (divides(d1, ps.n)) continue;
      for (auto d2 : c2) {
        if (divides(d2, ps.m)) continue;
        auto o = test_metacyclic_distinct(knot, ps.p, d1, d2, ps.m, ps.n, config);
        if (o.eliminated) {
          gr.eliminated = true;
          gr.stage = "metacyclic";
          gr.eliminations.push_back(from_outcome("metacyclic_distinct", ps.p, d1, d2, o));
          return;
        }
      }
    }
    // equal primes, split by split
    if (ps.p == 2) {
      std::vector<Elimination> per_split;
      for (const auto& split : ps.splits) {
        std::optional<Elimination> hit;
        for (auto r : prime_divisors_upto(ps.m, config.d_max)) {
          if (!divides(r, ps.n)) continue;
          auto o = test_metacyclic_equal(knot, ps.p, r, split, config);
          if (o.eliminated) {
            hit = from_outcome("metacyclic_equal", ps.p, r, 0, o);
            hit->split = split_string(split);
            break;
          }
        }
        if (!hit) break;
        per_split.push_back(std::move(*hit));
      }
      if (per_split.size() == ps.splits.size()) {
        gr.eliminated = true;
        gr.stage = "metacyclic";
        gr.eliminations = std::move(per_split);
        return;
      }
    }
    survivors << "p=" << ps.p << ": ";
    for (std::size_t i = 0; i < ps.splits.size(); ++i) survivors << (i ? "; " : "") << split_string(ps.splits[i]);
    survivors << ". ";
  }
  gr.survivors = survivors.str();
}

}  // namespace

Certificate analyze(const KnotRecord& record, const AnalysisConfig& config) {
  const auto t0 = std::chrono::steady_clock::now();
  Certificate cert;
  cert.knot = record.name;
  cert.pd = record.pd.to_string();
  cert.p_set = config.p_set;
  cert.d_max = config.d_max;
  cert.field_mode = to_string(config.field);
  for (unsigned p : config.p_set)
    if (!is_prime(p)) throw InputError("p-set entries must be prime");

  KnotData knot(record);
  cert.alexander = knot.alexander().pairs();
  auto finish = [&]() {
    for (unsigned p : config.p_set) {
      std::vector<std::string> parts;
      for (const auto& q : knot.cover(p).prime_powers()) parts.push_back(q.get_str());
      cert.cover_homology.emplace_back(p, parts);
    }
    if (record.pd.size() <= 16) cert.jones = knot.jones().pairs();
    cert.total_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
    return cert;
  };

  if (!record.omega) {
    cert.note = "no Omega supplied; invariants only";
    return finish();
  }
  check_record(record);
  const LaurentPoly2 omega = record.omega->normalized();
  cert.omega = omega.triples();
  if (omega.is_one()) {
    cert.verdict = Verdict::TrivialUnknot;
    cert.first_success = "omega_trivial";
    return finish();
  }
  const FactorizationSet fs = positive_symmetric_factorizations(omega);
  for (const auto& f : fs.irreducible.factors) cert.irreducible_factors.push_back(f.to_string());
  if (fs.empty()) {
    cert.verdict = Verdict::PrimeProven;
    cert.first_success = "omega_irreducible";
    return finish();
  }
  if (fs.groupings.size() > config.max_groupings) {
    cert.verdict = Verdict::Inconclusive;
    cert.note = std::to_string(fs.groupings.size()) + " factor groupings exceed the cap of " +
                std::to_string(config.max_groupings);
    return finish();
  }

  bool all_eliminated = true;
  int last_stage = 0;
  for (const auto& g : fs.groupings) {
    GroupingRecord gr;
    for (const auto& f : g.factors) {
      gr.factors.push_back(f.to_string());
      gr.factor_triples.push_back(f.triples());
    }
    if (config.determined && !config.determined->empty()) {
      for (const auto& block : g.factors) {
        auto v = jones_divisibility_test(block, knot.jones(), *config.determined);
        if (v.eliminated) {
          Elimination e;
          e.test = "jones";
          e.detail = "block equals Omega(" + v.matched + ") but neither Jones(" + v.matched +
                     ") nor its mirror divides Jones(K)";
          gr.eliminated = true;
          gr.stage = "jones";
          gr.eliminations.push_back(e);
          break;
        }
      }
    }
    if (!gr.eliminated) {
      Scenario sc = scenario_for(knot, g.factors[0], g.factors[1], config.p_set);
      if (sc.eliminated()) {
        gr.eliminated = true;
        gr.stage = "covers";
        gr.eliminations.push_back(*sc.covers_elimination);
      } else {
        metacyclic_stage(knot, sc, config, gr);
      }
    }
    if (gr.eliminated) last_stage = std::max(last_stage, stage_rank(gr.stage));
    else all_eliminated = false;
    cert.groupings.push_back(std::move(gr));
  }
  if (all_eliminated) {
    cert.verdict = Verdict::PrimeProven;
    static const char* names[] = {"omega_irreducible", "jones", "covers", "metacyclic"};
    cert.first_success = names[last_stage];
  } else {
    cert.verdict = Verdict::Inconclusive;
  }
  return finish();
}

// ------------------------------------------------------------ batch

nlohmann::json BatchReport::to_json() const {
  nlohmann::json j;
  j["format"] = 1;
  nlohmann::json certs = nlohmann::json::array();
  for (const auto& c : certificates) certs.push_back(knotprime::to_json(c));
  j["certificates"] = certs;
  nlohmann::json q = nlohmann::json::array();
  for (const auto& r : quarantined) q.push_back({{"line", r.line}, {"name", r.name}, {"error", r.error}});
  j["quarantined"] = q;
  j["summary"] = first_success_counts;
  j["median_ms"] = median_ms;
  return j;
}

BatchReport batch(const Corpus& corpus, const AnalysisConfig& config, unsigned jobs) {
  BatchReport report;
  report.quarantined = corpus.quarantined;
  const std::size_t n = corpus.records.size();
  std::vector<std::optional<Certificate>> results(n);
  std::vector<std::string> errors(n);
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i; (i = next.fetch_add(1)) < n;) {
      try {
        results[i] = analyze(corpus.records[i], config);
      } catch (const std::exception& e) {
        errors[i] = e.what();
      }
    }
  };
  jobs = std::max(1u, jobs);
  std::vector<std::thread> pool;
  for (unsigned t = 1; t < jobs; ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();

  std::vector<double> times;
  for (std::size_t i = 0; i < n; ++i) {
    if (!results[i]) {
      report.quarantined.push_back({0, corpus.records[i].name, errors[i]});
      continue;
    }
    const Certificate& c = *results[i];
    std::string key = c.verdict == Verdict::PrimeProven     ? c.first_success
                      : c.verdict == Verdict::TrivialUnknot ? "trivial"
                                                            : "inconclusive";
    ++report.first_success_counts[key];
    times.push_back(c.total_ms);
    report.certificates.push_back(c);
  }
  if (!times.empty()) {
    std::sort(times.begin(), times.end());
    report.median_ms = times.size() % 2 ? times[times.size() / 2]
                                        : (times[times.size() / 2 - 1] + times[times.size() / 2]) / 2;
  }
  return report;
}

// ------------------------------------------------------------ replay

namespace {

FieldSpec parse_field(const std::string& s) {
  if (s.rfind("F_", 0) == 0) return FieldSpec::finite(std::stoull(s.substr(2)));
  if (s.rfind("Q(zeta_", 0) == 0) return FieldSpec::cyclotomic();
  throw InputError("unknown field descriptor " + s);
}

}  // namespace

std::vector<std::string> replay(const Certificate& c) {
  std::vector<std::string> mismatches;
  KnotRecord record;
  record.name = c.knot;
  record.pd = parse_pd(c.pd);
  KnotData knot(record);
  for (const auto& g : c.groupings)
    for (const auto& e : g.eliminations) {
      if (e.test.rfind("metacyclic", 0) != 0 || e.classes.empty()) continue;
      const FieldSpec field = parse_field(e.field);
      for (const auto& cls : e.classes) {
        MetacyclicRep rep{MetacyclicParams::make(cls.d, e.p, cls.a), cls.alpha};
        std::string tag = c.knot + " " + e.test + " p=" + std::to_string(e.p) + " d=" + std::to_string(cls.d);
        if (!satisfies_relators(knot.presentation(), rep)) {
          mismatches.push_back(tag + ": alpha does not satisfy the relators");
          continue;
        }
        if (betti(knot.jacobian(), rep, field).b2 != cls.b2) mismatches.push_back(tag + ": b2 differs");
        if (e.test == "metacyclic_distinct") {
          if (betti(knot.jacobian(), project_rep(rep, e.d1), field).b2 != cls.b2_first)
            mismatches.push_back(tag + ": b2 of first projection differs");
          if (betti(knot.jacobian(), project_rep(rep, e.d2), field).b2 != cls.b2_second)
            mismatches.push_back(tag + ": b2 of second projection differs");
        }
      }
    }
  for (const auto& [p, parts] : c.cover_homology) {
    std::vector<std::string> now;
    for (const auto& q : knot.cover(p).prime_powers()) now.push_back(q.get_str());
    if (now != parts) mismatches.push_back(c.knot + ": cover homology at p=" + std::to_string(p) + " differs");
  }
  return mismatches;
}

}  // namespace knotprime
