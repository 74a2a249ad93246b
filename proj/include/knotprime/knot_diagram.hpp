#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace knotprime {

/// Planar-diagram code of a knot. Each crossing lists four arc labels
/// counterclockwise, starting with the incoming under-strand; labels run over
/// 1..2n and each occurs exactly twice. The unknot has no crossings and is a
/// reserved value rather than a parsed code.
class PDCode {
 public:
  using Crossing = std::array<int, 4>;

  /// Validates label multiplicities and orientability; throws InputError.
  explicit PDCode(std::vector<Crossing> crossings);
  static PDCode unknot() { return PDCode(); }

  bool is_unknot() const { return crossings_.empty(); }
  std::size_t size() const { return crossings_.size(); }
  const std::vector<Crossing>& crossings() const { return crossings_; }

  /// +1 or -1; positive when the over-strand runs from slot 3 to slot 1.
  int sign(std::size_t crossing) const { return signs_[crossing]; }
  int writhe() const;

  /// Where an edge label leaves a crossing (crossing index, slot).
  std::pair<std::size_t, int> edge_tail(int label) const { return tail_.at(label); }
  /// Where an edge label enters a crossing (crossing index, slot).
  std::pair<std::size_t, int> edge_head(int label) const { return head_.at(label); }

  std::string to_string() const;
  friend bool operator==(const PDCode& a, const PDCode& b) { return a.crossings_ == b.crossings_; }

 private:
  PDCode() = default;
  void orient();

  std::vector<Crossing> crossings_;
  std::vector<int> signs_;
  std::map<int, std::pair<std::size_t, int>> tail_;
  std::map<int, std::pair<std::size_t, int>> head_;
};

/// Parses "[[a,b,c,d],...]" (whitespace-insensitive) or the reserved word
/// "unknot". Throws InputError.
PDCode parse_pd(std::string_view text);

/// One relator x_a x_b x_a^{-1} x_c^{-1}; generator indices are 1-based.
struct WirtingerRelator {
  int a;
  int b;
  int c;
  friend bool operator==(const WirtingerRelator&, const WirtingerRelator&) = default;
};

struct WirtingerPresentation {
  int generators = 1;
  std::vector<WirtingerRelator> relators;
  std::size_t dropped_relator_index = 0;
};

/// Wirtinger presentation with one generator per over-arc. The relation of
/// crossing `dropped` (default: the last crossing) is omitted.
WirtingerPresentation wirtinger(const PDCode& pd, std::optional<std::size_t> dropped = std::nullopt);

/// Formal integer combination of group elements; key 0 is the identity and
/// key k >= 1 is the generator x_k.
using GroupRingElem = std::map<int, std::int64_t>;

/// Fox derivatives of the relators: rows index relators, columns generators.
struct FoxJacobian {
  int rows = 0;
  int cols = 0;
  std::vector<std::vector<GroupRingElem>> entries;
  const GroupRingElem& at(int row, int col) const { return entries[row][col]; }
};

FoxJacobian fox_jacobian(const WirtingerPresentation& pres);

/// Connected sum spliced along the highest-numbered edge label of each
/// diagram. Either side may be the unknot.
PDCode connected_sum(const PDCode& first, const PDCode& second);

/// Mirror image: every crossing changed.
PDCode mirror(const PDCode& pd);

}  // namespace knotprime
