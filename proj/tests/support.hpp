#pragma once

#include <string>

#include "knotprime/corpus.hpp"
#include "knotprime/errors.hpp"
#include "knotprime/knot_diagram.hpp"

namespace testsupport {

inline std::string data_file(const std::string& name) { return std::string(KNOTPRIME_DATA_DIR) + "/" + name; }

inline knotprime::KnotRecord knot(const std::string& name) {
  for (const char* file : {"corpus_le9.jsonl", "named_examples.jsonl"}) {
    try {
      return knotprime::find_record(data_file(file), name);
    } catch (const knotprime::InputError&) {
    }
  }
  throw knotprime::InputError("no bundled knot " + name);
}

inline knotprime::KnotRecord mirror_of(const knotprime::KnotRecord& k) {
  knotprime::KnotRecord out{"m" + k.name, knotprime::mirror(k.pd), std::nullopt, std::nullopt};
  if (k.omega) out.omega = k.omega->mirrored().normalized();
  return out;
}

// Connected sum with the product polynomial, as a composite control.
inline knotprime::KnotRecord connected(const knotprime::KnotRecord& a, const knotprime::KnotRecord& b) {
  knotprime::KnotRecord out{a.name + "#" + b.name, knotprime::connected_sum(a.pd, b.pd), std::nullopt, std::nullopt};
  out.omega = (*a.omega * *b.omega).normalized();
  return out;
}

}  // namespace testsupport
