#include "knotprime/certificate.hpp"

#include "knotprime/errors.hpp"

namespace knotprime {

using nlohmann::json;

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::PrimeProven: return "PRIME_PROVEN";
    case Verdict::TrivialUnknot: return "TRIVIAL_UNKNOT";
    case Verdict::Inconclusive: return "INCONCLUSIVE";
  }
  return "INCONCLUSIVE";
}

Verdict verdict_from_string(const std::string& s) {
  if (s == "PRIME_PROVEN") return Verdict::PrimeProven;
  if (s == "TRIVIAL_UNKNOT") return Verdict::TrivialUnknot;
  if (s == "INCONCLUSIVE") return Verdict::Inconclusive;
  throw InputError("unknown verdict " + s);
}

namespace {

json class_json(const ClassRecord& c, const std::string& test) {
  json j = {{"d", c.d}, {"a", c.a}, {"alpha", c.alpha}, {"b2", c.b2}};
  if (test == "metacyclic_distinct") {
    j["b2_first"] = c.b2_first;
    j["b2_second"] = c.b2_second;
  }
  return j;
}

}  // namespace

json to_json(const Certificate& c, bool include_timings) {
  json j;
  j["format"] = c.format;
  j["knot"] = c.knot;
  j["pd"] = c.pd;
  j["omega"] = c.omega;
  j["verdict"] = to_string(c.verdict);
  j["first_success"] = c.first_success;
  if (!c.note.empty()) j["note"] = c.note;
  j["factorization"] = {{"irreducible", c.irreducible_factors}};
  json groups = json::array();
  for (const auto& g : c.groupings) {
    json gj = {{"factors", g.factors}, {"factor_triples", g.factor_triples}, {"eliminated", g.eliminated},
               {"stage", g.stage}};
    json elims = json::array();
    for (const auto& e : g.eliminations) {
      json ej = {{"test", e.test}};
      if (e.p) ej["p"] = e.p;
      if (e.d1) ej["d1"] = e.d1;
      if (e.d2) ej["d2"] = e.d2;
      if (!e.split.empty()) ej["split"] = e.split;
      if (!e.detail.empty()) ej["detail"] = e.detail;
      if (!e.classes.empty() || e.test.rfind("metacyclic", 0) == 0) {
        json cls = json::array();
        for (const auto& cr : e.classes) cls.push_back(class_json(cr, e.test));
        ej["classes"] = cls;
        ej["field"] = e.field;
        ej["confirmation"] = e.confirmation;
      }
      elims.push_back(ej);
    }
    gj["eliminations"] = elims;
    if (!g.survivors.empty()) gj["surviving_scenarios"] = g.survivors;
    groups.push_back(gj);
  }
  j["factorization"]["groupings"] = groups;
  json cov = json::object();
  for (const auto& [p, parts] : c.cover_homology) cov[std::to_string(p)] = parts;
  j["invariants"] = {{"alexander", c.alexander}, {"jones", c.jones}, {"cover_homology", cov}};
  j["config"] = {{"p_set", c.p_set}, {"d_max", c.d_max}, {"field", c.field_mode}};
  if (include_timings) j["timings"] = {{"total_ms", c.total_ms}};
  return j;
}

Certificate certificate_from_json(const json& j) {
  try {
    Certificate c;
    c.format = j.at("format").get<int>();
    if (c.format != 1) throw InputError("unsupported certificate format");
    c.knot = j.at("knot").get<std::string>();
    c.pd = j.at("pd").get<std::string>();
    c.omega = j.at("omega").get<std::vector<std::array<std::int64_t, 3>>>();
    c.verdict = verdict_from_string(j.at("verdict").get<std::string>());
    c.first_success = j.value("first_success", std::string());
    c.note = j.value("note", std::string());
    const auto& f = j.at("factorization");
    c.irreducible_factors = f.at("irreducible").get<std::vector<std::string>>();
    for (const auto& gj : f.at("groupings")) {
      GroupingRecord g;
      g.factors = gj.at("factors").get<std::vector<std::string>>();
      g.factor_triples = gj.at("factor_triples").get<std::vector<std::vector<std::array<std::int64_t, 3>>>>();
      g.eliminated = gj.at("eliminated").get<bool>();
      g.stage = gj.value("stage", std::string());
      g.survivors = gj.value("surviving_scenarios", std::string());
      for (const auto& ej : gj.at("eliminations")) {
        Elimination e;
        e.test = ej.at("test").get<std::string>();
        e.p = ej.value("p", 0u);
        e.d1 = ej.value("d1", std::uint64_t{0});
        e.d2 = ej.value("d2", std::uint64_t{0});
        e.split = ej.value("split", std::string());
        e.detail = ej.value("detail", std::string());
        e.field = ej.value("field", std::string());
        e.confirmation = ej.value("confirmation", std::string());
        if (ej.contains("classes"))
          for (const auto& cj : ej.at("classes")) {
            ClassRecord cr;
            cr.d = cj.at("d").get<std::uint64_t>();
            cr.a = cj.at("a").get<std::uint64_t>();
            cr.alpha = cj.at("alpha").get<std::vector<std::uint64_t>>();
            cr.b2 = cj.at("b2").get<std::size_t>();
            cr.b2_first = cj.value("b2_first", std::size_t{0});
            cr.b2_second = cj.value("b2_second", std::size_t{0});
            e.classes.push_back(std::move(cr));
          }
        g.eliminations.push_back(std::move(e));
      }
      c.groupings.push_back(std::move(g));
    }
    const auto& inv = j.at("invariants");
    c.alexander = inv.at("alexander").get<std::vector<std::pair<int, std::int64_t>>>();
    c.jones = inv.at("jones").get<std::vector<std::pair<int, std::int64_t>>>();
    for (const auto& [k, v] : inv.at("cover_homology").items())
      c.cover_homology.emplace_back(static_cast<unsigned>(std::stoul(k)), v.get<std::vector<std::string>>());
    const auto& cfg = j.at("config");
    c.p_set = cfg.at("p_set").get<std::vector<unsigned>>();
    c.d_max = cfg.at("d_max").get<std::uint64_t>();
    c.field_mode = cfg.at("field").get<std::string>();
    if (j.contains("timings")) c.total_ms = j.at("timings").value("total_ms", 0.0);
    return c;
  } catch (const json::exception& e) {
    throw InputError(std::string("malformed certificate: ") + e.what());
  }
}

}  // namespace knotprime
