#include "knotprime/corpus.hpp"

#include <fstream>

#include "json.hpp"
#include "knotprime/errors.hpp"
#include "knotprime/polynomials.hpp"

namespace knotprime {

using nlohmann::json;

namespace {

LaurentPoly2 omega_from_json(const json& j) {
  if (!j.is_array()) throw InputError("omega must be a list of [i, j, c] triples");
  std::vector<std::array<std::int64_t, 3>> triples;
  for (const auto& t : j) {
    if (!t.is_array() || t.size() != 3) throw InputError("omega entries must be [i, j, c] triples");
    triples.push_back({t[0].get<std::int64_t>(), t[1].get<std::int64_t>(), t[2].get<std::int64_t>()});
  }
  return LaurentPoly2::from_triples(triples);
}

}  // namespace

KnotRecord parse_record(const std::string& line) {
  json j;
  try {
    j = json::parse(line);
  } catch (const json::exception& e) {
    throw InputError(std::string("malformed JSON: ") + e.what());
  }
  if (!j.is_object()) throw InputError("record must be an object");
  try {
    KnotRecord r;
    r.name = j.value("name", std::string());
    if (!j.contains("pd")) throw InputError("record has no pd");
    r.pd = parse_pd(j.at("pd").get<std::string>());
    if (j.contains("omega") && !j.at("omega").is_null()) r.omega = omega_from_json(j.at("omega"));
    if (j.contains("jones") && !j.at("jones").is_null())
      r.jones = LaurentPoly1::from_pairs(j.at("jones").get<std::vector<std::pair<int, std::int64_t>>>());
    return r;
  } catch (const json::exception& e) {
    throw InputError(std::string("bad field type: ") + e.what());
  }
}

void check_record(const KnotRecord& record) {
  if (!record.omega) return;
  if (record.omega->is_zero()) throw InputError(record.name + ": omega is zero");
  LaurentPoly1 from_omega = specialize_s(*record.omega, -1);
  LaurentPoly1 from_pd = record.pd.is_unknot() ? LaurentPoly1(1) : alexander_poly(fox_jacobian(wirtinger(record.pd)));
  if (from_omega != from_pd)
    throw InputError(record.name + ": omega(-1, t) = " + from_omega.to_string() +
                     " but the diagram's Alexander polynomial is " + from_pd.to_string());
}

Corpus load_corpus(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open corpus: " + path);
  Corpus c;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    try {
      KnotRecord r = parse_record(line);
      check_record(r);
      c.records.push_back(std::move(r));
    } catch (const std::exception& e) {
      std::string name;
      try {
        name = json::parse(line).value("name", std::string());
      } catch (...) {
      }
      c.quarantined.push_back({lineno, name, e.what()});
    }
  }
  return c;
}

KnotRecord find_record(const std::string& path, const std::string& name) {
  Corpus c = load_corpus(path);
  for (auto& r : c.records)
    if (r.name == name) return r;
  throw InputError("no record named " + name + " in " + path);
}

LaurentPoly2 parse_omega(const std::string& json_text) {
  try {
    return omega_from_json(json::parse(json_text));
  } catch (const json::exception& e) {
    throw InputError(std::string("malformed omega: ") + e.what());
  }
}

std::string omega_to_json(const LaurentPoly2& omega) { return json(omega.triples()).dump(); }

}  // namespace knotprime
