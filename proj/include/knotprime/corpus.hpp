#pragma once

#include <optional>
#include <string>
#include <vector>

#include "knotprime/knot_diagram.hpp"
#include "knotprime/laurent.hpp"

namespace knotprime {

struct KnotRecord {
  std::string name;
  PDCode pd = PDCode::unknot();
  std::optional<LaurentPoly2> omega;
  std::optional<LaurentPoly1> jones;
};

/// Parses one corpus line {name, pd, omega?, jones?}. Throws InputError.
KnotRecord parse_record(const std::string& line);

/// Throws InputError unless Omega(-1, t) agrees with the Fox-calculus
/// Alexander polynomial (records without Omega pass).
void check_record(const KnotRecord& record);

struct QuarantinedRecord {
  std::size_t line = 0;
  std::string name;
  std::string error;
};

struct Corpus {
  std::vector<KnotRecord> records;
  std::vector<QuarantinedRecord> quarantined;
};

/// Loads a line-delimited corpus; malformed or inconsistent records are
/// quarantined rather than fatal. Throws InputError if the file is unreadable.
Corpus load_corpus(const std::string& path);

/// Finds a record by name in a corpus file; throws InputError if absent.
KnotRecord find_record(const std::string& path, const std::string& name);

/// Omega triples / Jones pairs in the external list formats.
LaurentPoly2 parse_omega(const std::string& json_text);
std::string omega_to_json(const LaurentPoly2& omega);

}  // namespace knotprime
