#pragma once

#include <string>
#include <vector>

#include "knotprime/knot_diagram.hpp"
#include "knotprime/laurent.hpp"

namespace knotprime {

/// Jones polynomial from the Kauffman bracket state sum. Throws
/// std::invalid_argument above max_crossings.
LaurentPoly1 jones(const PDCode& pd, std::size_t max_crossings = 24);

/// A knot determined by its knot Floer polynomial.
struct DeterminedKnot {
  std::string name;
  LaurentPoly2 omega;  // normalized
  LaurentPoly1 jones;
};

/// Loads name/pd/omega(/jones) records; Jones is computed when absent and
/// checked against the state sum when present.
std::vector<DeterminedKnot> load_determined_knots(const std::string& path);

struct JonesVerdict {
  bool eliminated = false;
  std::string matched;  // table knot whose Omega equals the factor, if any
};

/// If omega_factor is the polynomial of a table knot L (either chirality), the
/// split survives only when Jones(L)(t) or Jones(L)(1/t) divides jones_k.
JonesVerdict jones_divisibility_test(const LaurentPoly2& omega_factor, const LaurentPoly1& jones_k,
                                     const std::vector<DeterminedKnot>& table);

}  // namespace knotprime
