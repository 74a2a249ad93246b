#include "knotprime/knot_diagram.hpp"

#include <algorithm>
#include <cctype>
#include <numeric>
#include <sstream>

#include "knotprime/errors.hpp"

namespace knotprime {

namespace {

class UnionFind {
 public:
  explicit UnionFind(std::size_t n) : parent_(n) { std::iota(parent_.begin(), parent_.end(), 0); }
  std::size_t find(std::size_t x) {
    while (parent_[x] != x) x = parent_[x] = parent_[parent_[x]];
    return x;
  }
  void unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a != b) parent_[std::max(a, b)] = std::min(a, b);
  }

 private:
  std::vector<std::size_t> parent_;
};

}  // namespace

PDCode::PDCode(std::vector<Crossing> crossings) : crossings_(std::move(crossings)) {
  if (crossings_.empty())
    throw InputError("empty PD code; use the reserved name \"unknot\" for the trivial knot");
  const int n_labels = static_cast<int>(2 * crossings_.size());
  std::vector<int> seen(n_labels + 1, 0);
  for (const auto& x : crossings_)
    for (int label : x) {
      if (label < 1 || label > n_labels)
        throw InputError("PD label " + std::to_string(label) + " outside 1.." + std::to_string(n_labels));
      ++seen[label];
    }
  for (int label = 1; label <= n_labels; ++label)
    if (seen[label] != 2)
      throw InputError("PD label " + std::to_string(label) + " occurs " + std::to_string(seen[label]) +
                       " times (expected 2)");
  orient();
}

void PDCode::orient() {
  const std::size_t n = crossings_.size();
  std::map<int, std::vector<std::pair<std::size_t, int>>> occurrences;
  for (std::size_t i = 0; i < n; ++i)
    for (int s = 0; s < 4; ++s) occurrences[crossings_[i][s]].push_back({i, s});

  signs_.assign(n, 0);
  std::vector<int> under_visits(n, 0), over_visits(n, 0);
  std::size_t cr = 0;
  int slot_in = 0;
  std::size_t steps = 0;
  do {
    if (steps > 2 * n) throw InputError("PD code traversal does not close up");
    const int slot_out = (slot_in + 2) % 4;
    if (slot_in % 2 == 0) {
      if (slot_in != 0) throw InputError("PD code is not consistently orientable (under-strand reversed)");
      ++under_visits[cr];
    } else {
      ++over_visits[cr];
      // over-strand from slot 3 to slot 1 is a positive crossing
      signs_[cr] = (slot_in == 3) ? +1 : -1;
    }
    const int label = crossings_[cr][slot_out];
    tail_[label] = {cr, slot_out};
    const auto& occ = occurrences[label];
    auto next = (occ[0] == std::pair<std::size_t, int>{cr, slot_out}) ? occ[1] : occ[0];
    head_[label] = next;
    cr = next.first;
    slot_in = next.second;
    ++steps;
  } while (!(cr == 0 && slot_in == 0));

  if (steps != 2 * n) throw InputError("PD code describes more than one component");
  for (std::size_t i = 0; i < n; ++i)
    if (under_visits[i] != 1 || over_visits[i] != 1)
      throw InputError("PD code is not consistently orientable at crossing " + std::to_string(i + 1));
}

int PDCode::writhe() const { return std::accumulate(signs_.begin(), signs_.end(), 0); }

std::string PDCode::to_string() const {
  if (is_unknot()) return "unknot";
  std::ostringstream os;
  os << '[';
  for (std::size_t i = 0; i < crossings_.size(); ++i) {
    if (i) os << ',';
    const auto& x = crossings_[i];
    os << '[' << x[0] << ',' << x[1] << ',' << x[2] << ',' << x[3] << ']';
  }
  os << ']';
  return os.str();
}

PDCode parse_pd(std::string_view text) {
  std::string compact;
  for (char ch : text)
    if (!std::isspace(static_cast<unsigned char>(ch))) compact.push_back(ch);
  if (compact == "unknot") return PDCode::unknot();

  std::size_t pos = 0;
  auto fail = [&](const std::string& why) -> void {
    throw InputError("malformed PD code at offset " + std::to_string(pos) + ": " + why);
  };
  auto expect = [&](char ch) {
    if (pos >= compact.size() || compact[pos] != ch) fail(std::string("expected '") + ch + "'");
    ++pos;
  };
  auto parse_int = [&]() {
    std::size_t start = pos;
    if (pos < compact.size() && compact[pos] == '-') ++pos;
    while (pos < compact.size() && std::isdigit(static_cast<unsigned char>(compact[pos]))) ++pos;
    if (pos == start || (pos == start + 1 && compact[start] == '-')) fail("expected integer");
    long long v = std::stoll(compact.substr(start, pos - start));
    if (v < -1'000'000 || v > 1'000'000) fail("label out of range");
    return static_cast<int>(v);
  };

  std::vector<PDCode::Crossing> crossings;
  expect('[');
  if (pos < compact.size() && compact[pos] == ']') {
    ++pos;
  } else {
    for (;;) {
      expect('[');
      PDCode::Crossing x{};
      for (int k = 0; k < 4; ++k) {
        if (k) expect(',');
        x[k] = parse_int();
      }
      expect(']');
      crossings.push_back(x);
      if (pos < compact.size() && compact[pos] == ',') {
        ++pos;
        continue;
      }
      expect(']');
      break;
    }
  }
  if (pos != compact.size()) fail("trailing characters");
  return PDCode(std::move(crossings));
}

WirtingerPresentation wirtinger(const PDCode& pd, std::optional<std::size_t> dropped) {
  WirtingerPresentation pres;
  if (pd.is_unknot()) return pres;
  const std::size_t n = pd.size();
  const auto& xs = pd.crossings();
  const std::size_t drop = dropped.value_or(n - 1);
  if (drop >= n) throw InputError("dropped relator index out of range");

  // Over-arcs: edges joined through the over-strand of each crossing.
  const std::size_t n_labels = 2 * n;
  UnionFind arcs(n_labels + 1);
  for (const auto& x : xs) arcs.unite(x[1], x[3]);
  // Number arcs by their smallest edge label.
  std::map<std::size_t, int> arc_index;
  for (std::size_t label = 1; label <= n_labels; ++label) {
    std::size_t root = arcs.find(label);
    if (!arc_index.count(root)) arc_index.emplace(root, static_cast<int>(arc_index.size()) + 1);
  }
  if (arc_index.size() != n) throw InputError("diagram does not have one over-arc per crossing");
  auto arc_of = [&](int label) { return arc_index.at(arcs.find(label)); };

  pres.generators = static_cast<int>(n);
  pres.dropped_relator_index = drop;
  for (std::size_t i = 0; i < n; ++i) {
    if (i == drop) continue;
    const auto& x = xs[i];
    int over = arc_of(x[1]);
    int in = arc_of(x[0]);
    int out = arc_of(x[2]);
    if (pd.sign(i) > 0)
      pres.relators.push_back({over, in, out});
    else
      pres.relators.push_back({over, out, in});
  }
  return pres;
}

FoxJacobian fox_jacobian(const WirtingerPresentation& pres) {
  FoxJacobian jac;
  jac.rows = static_cast<int>(pres.relators.size());
  jac.cols = pres.generators;
  jac.entries.assign(jac.rows, std::vector<GroupRingElem>(jac.cols));
  auto add = [](GroupRingElem& e, int key, std::int64_t c) {
    auto& v = e[key];
    v += c;
    if (v == 0) e.erase(key);
  };
  for (int r = 0; r < jac.rows; ++r) {
    const auto& w = pres.relators[r];
    auto& row = jac.entries[r];
    // d/dx_a: 1 - x_c ; d/dx_b: x_a ; d/dx_c: -1
    add(row[w.a - 1], 0, 1);
    add(row[w.a - 1], w.c, -1);
    add(row[w.b - 1], w.a, 1);
    add(row[w.c - 1], 0, -1);
  }
  return jac;
}

PDCode connected_sum(const PDCode& first, const PDCode& second) {
  if (first.is_unknot()) return second;
  if (second.is_unknot()) return first;
  const int n1 = static_cast<int>(2 * first.size());
  const int n2 = static_cast<int>(2 * second.size());
  const int e1 = n1;
  const int e2 = n1 + n2;

  std::vector<PDCode::Crossing> xs = first.crossings();
  for (auto x : second.crossings()) {
    for (int& label : x) label += n1;
    xs.push_back(x);
  }
  // Cut edge e1 of the first diagram and edge n2 of the second, then cross-wire:
  // the tail of e1 now feeds the head of the second edge and vice versa.
  auto [head1_cr, head1_slot] = first.edge_head(e1);
  auto [head2_cr, head2_slot] = second.edge_head(n2);
  xs[head1_cr][head1_slot] = e2;
  xs[first.size() + head2_cr][head2_slot] = e1;
  return PDCode(std::move(xs));
}

PDCode mirror(const PDCode& pd) {
  if (pd.is_unknot()) return pd;
  std::vector<PDCode::Crossing> xs;
  for (std::size_t i = 0; i < pd.size(); ++i) {
    const auto& [a, b, c, d] = pd.crossings()[i];
    // the old over-strand becomes the under-strand; start at its incoming end
    xs.push_back(pd.sign(i) > 0 ? PDCode::Crossing{d, a, b, c} : PDCode::Crossing{b, c, d, a});
  }
  return PDCode(std::move(xs));
}

}  // namespace knotprime
