#pragma once

// Random structures and independent reference implementations for tests.
// The oracles work on plain vertex lists and letter strings and share no code
// with the library beyond the Rational type.

#include <algorithm>
#include <cstdint>
#include <map>
#include <numeric>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "ecw/ecw.hpp"

namespace ecw::testing {

using Rng = std::mt19937_64;

struct ModelSpec {
  int parties = 0;
  std::vector<std::string> ids;
  std::map<std::string, int> boundary;  // id -> color, color == parties is the purifier
  std::vector<HyperedgeSpec> edges;

  HypergraphModel build() const { return HypergraphModel(parties, ids, boundary, edges); }
};

inline int uniform(Rng& rng, int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); }

// At least one boundary vertex per color; the remaining vertices are internal.
inline ModelSpec random_model_spec(Rng& rng, int parties, int max_vertices = 10, int max_edges = 8,
                                   int max_arity = 4) {
  ModelSpec spec;
  spec.parties = parties;
  const int colors = parties + 1;
  const int total = uniform(rng, colors, std::max(colors, max_vertices));
  const int extra_boundary = uniform(rng, 0, std::min(2, total - colors));
  for (int v = 0; v < total; ++v) {
    spec.ids.push_back("v" + std::to_string(v));
    if (v < colors) {
      spec.boundary[spec.ids.back()] = v;
    } else if (v < colors + extra_boundary) {
      spec.boundary[spec.ids.back()] = uniform(rng, 0, parties);
    }
  }
  const int edges = uniform(rng, 0, max_edges);
  std::vector<int> order(static_cast<std::size_t>(total));
  std::iota(order.begin(), order.end(), 0);
  for (int e = 0; e < edges; ++e) {
    const int arity = uniform(rng, 2, std::min(max_arity, total));
    std::shuffle(order.begin(), order.end(), rng);
    HyperedgeSpec h;
    for (int i = 0; i < arity; ++i) h.vertices.push_back(spec.ids[static_cast<std::size_t>(order[static_cast<std::size_t>(i)])]);
    h.weight = Rational(uniform(rng, 1, 4), uniform(rng, 1, 2));
    spec.edges.push_back(std::move(h));
  }
  return spec;
}

// Brute-force cut function over explicit vertex lists.
class CutOracle {
 public:
  explicit CutOracle(const ModelSpec& spec) : parties_(spec.parties) {
    std::map<std::string, int> pos;
    for (std::size_t i = 0; i < spec.ids.size(); ++i) pos[spec.ids[i]] = static_cast<int>(i);
    colors_.assign(spec.ids.size(), -1);
    for (const auto& [id, c] : spec.boundary) colors_[static_cast<std::size_t>(pos[id])] = c;
    for (const auto& e : spec.edges) {
      std::vector<int> vs;
      for (const auto& id : e.vertices) vs.push_back(pos[id]);
      edges_.push_back(vs);
      weights_.push_back(e.weight);
    }
  }

  std::size_t vertices() const { return colors_.size(); }

  Rational cut(const std::vector<bool>& side) const {
    Rational total(0);
    for (std::size_t e = 0; e < edges_.size(); ++e) {
      bool in = false, out = false;
      for (int v : edges_[e]) (side[static_cast<std::size_t>(v)] ? in : out) = true;
      if (in && out) total += weights_[e];
    }
    return total;
  }

  // Every cut whose boundary part is exactly the vertices colored by a letter
  // in `labels` (letters A.., never the purifier), with its weight.
  std::vector<std::pair<std::vector<bool>, Rational>> all_cuts(const std::string& labels) const {
    std::vector<int> internal;
    std::vector<bool> base(colors_.size(), false);
    for (std::size_t v = 0; v < colors_.size(); ++v) {
      if (colors_[v] < 0) {
        internal.push_back(static_cast<int>(v));
      } else if (colors_[v] < parties_ && labels.find(static_cast<char>('A' + colors_[v])) != std::string::npos) {
        base[v] = true;
      }
    }
    std::vector<std::pair<std::vector<bool>, Rational>> out;
    for (std::uint64_t m = 0; m < (std::uint64_t{1} << internal.size()); ++m) {
      auto side = base;
      for (std::size_t i = 0; i < internal.size(); ++i) side[static_cast<std::size_t>(internal[i])] = (m >> i) & 1U;
      out.emplace_back(side, cut(side));
    }
    return out;
  }

  Rational min_cut(const std::string& labels) const {
    Rational best(-1);
    for (const auto& [side, w] : all_cuts(labels)) {
      if (best < Rational(0) || w < best) best = w;
    }
    return best;
  }

  // Minimizers as sorted vertex-position lists.
  std::set<std::vector<int>> min_cuts(const std::string& labels) const {
    const Rational best = min_cut(labels);
    std::set<std::vector<int>> out;
    for (const auto& [side, w] : all_cuts(labels)) {
      if (w != best) continue;
      std::vector<int> members;
      for (std::size_t v = 0; v < side.size(); ++v) {
        if (side[v]) members.push_back(static_cast<int>(v));
      }
      out.insert(members);
    }
    return out;
  }

 private:
  int parties_;
  std::vector<int> colors_;
  std::vector<std::vector<int>> edges_;
  std::vector<Rational> weights_;
};

inline std::string letters(PartyMask m) {
  std::string s;
  for (int i = 0; i < 32; ++i) {
    if ((m >> i) & 1U) s += static_cast<char>('A' + i);
  }
  return s;
}

inline std::vector<int> members_of(const Cut& c) {
  std::vector<int> out;
  for (int v = 0; v < 64; ++v) {
    if ((c.members >> v) & 1U) out.push_back(v);
  }
  return out;
}

// Evaluates sum_c coeff * S_label directly from letter strings.
inline Rational evaluate_terms(const std::map<std::string, int>& terms, const EntropyVector& s) {
  Rational total(0);
  for (const auto& [label, c] : terms) {
    PartyMask m = 0;
    for (char ch : label) m |= PartyMask{1} << (ch - 'A');
    total += Rational(c) * s[m];
  }
  return total;
}

// Rank over GF(2) of a 0/1 matrix given as rows of bools.
inline int gf2_rank_oracle(std::vector<std::vector<bool>> rows) {
  int rank = 0;
  const std::size_t cols = rows.empty() ? 0 : rows.front().size();
  for (std::size_t c = 0; c < cols && rank < static_cast<int>(rows.size()); ++c) {
    std::size_t pivot = static_cast<std::size_t>(rank);
    while (pivot < rows.size() && !rows[pivot][c]) ++pivot;
    if (pivot == rows.size()) continue;
    std::swap(rows[pivot], rows[static_cast<std::size_t>(rank)]);
    for (std::size_t r = 0; r < rows.size(); ++r) {
      if (r != static_cast<std::size_t>(rank) && rows[r][c]) {
        for (std::size_t k = 0; k < cols; ++k) rows[r][k] = rows[r][k] != rows[static_cast<std::size_t>(rank)][k];
      }
    }
    ++rank;
  }
  return rank;
}

inline GraphState random_graph(Rng& rng, int n, double density = 0.5) {
  std::bernoulli_distribution coin(density);
  std::vector<std::pair<int, int>> edges;
  for (int a = 0; a < n; ++a) {
    for (int b = a + 1; b < n; ++b) {
      if (coin(rng)) edges.emplace_back(a, b);
    }
  }
  return GraphState(n, edges);
}

// Entropy of a graph state from the adjacency block between `qubits` and the
// rest, computed with the oracle rank.
inline int graph_entropy_oracle(const GraphState& g, const std::vector<int>& qubits) {
  std::vector<int> rest;
  for (int v = 0; v < g.qubits(); ++v) {
    if (std::find(qubits.begin(), qubits.end(), v) == qubits.end()) rest.push_back(v);
  }
  std::vector<std::vector<bool>> rows;
  for (int a : qubits) {
    std::vector<bool> row;
    for (int b : rest) row.push_back(g.has_edge(a, b));
    rows.push_back(row);
  }
  return gf2_rank_oracle(rows);
}

inline const char* kHyper5Text =
    "1*AB + 1*DE + 1*ACD + 2*ACE + 1*BCD + 1*ABDE - 1*AC - 1*AE - 1*BD - 2*ABCD - 1*ACDE >= 0";
inline const char* kViolatorText = "n=5; 1 1 1 1 1; 1 2 2 2 2 2 2 2 2 1; 2 2 2 2 2 2 2 2 2 2; 2 2 1 2 2; 1";

inline const std::map<std::string, int>& hyper5_terms() {
  static const std::map<std::string, int> terms{{"AB", 1},  {"DE", 1},  {"ACD", 1},  {"ACE", 2},
                                                {"BCD", 1}, {"ABDE", 1}, {"AC", -1},  {"AE", -1},
                                                {"BD", -1}, {"ABCD", -2}, {"ACDE", -1}};
  return terms;
}

// The 19 graph-state vectors, copied from the published table.
inline const std::vector<std::string>& six_qubit_rows() {
  static const std::vector<std::string> rows{
      "n=5; 1 1 0 0 0; 0 1 1 1 1 1 1 0 0 0; 0 0 0 1 1 1 1 1 1 0; 0 0 0 1 1; 0",
      "n=5; 1 1 1 0 0; 1 1 1 1 1 1 1 1 1 0; 0 1 1 1 1 1 1 1 1 1; 0 0 1 1 1; 0",
      "n=5; 1 1 1 1 0; 1 1 1 1 1 1 1 1 1 1; 1 1 1 1 1 1 1 1 1 1; 0 1 1 1 1; 0",
      "n=5; 1 1 1 1 0; 1 2 2 1 2 2 1 1 1 1; 1 1 1 1 2 2 1 2 2 1; 0 1 1 1 1; 0",
      "n=5; 1 1 1 1 1; 1 1 1 1 1 1 1 1 1 1; 1 1 1 1 1 1 1 1 1 1; 1 1 1 1 1; 0",
      "n=5; 1 1 1 1 1; 1 2 2 1 2 2 1 1 2 2; 2 2 1 1 2 2 1 2 2 1; 1 1 1 1 1; 0",
      "n=5; 1 1 1 1 1; 1 2 2 2 2 2 2 2 2 1; 1 2 2 2 2 2 2 2 2 1; 1 1 1 1 1; 0",
      "n=5; 1 1 1 1 1; 2 2 2 2 2 2 2 2 2 2; 2 2 2 2 2 2 2 2 2 2; 1 1 1 1 1; 0",
      "n=5; 1 1 1 1 1; 1 1 1 1 1 1 1 1 1 1; 1 1 1 1 1 1 1 1 1 1; 1 1 1 1 1; 1",
      "n=5; 1 1 1 1 1; 1 1 2 2 1 2 2 2 2 1; 1 2 2 2 2 1 2 2 1 1; 2 2 1 1 1; 1",
      "n=5; 1 1 1 1 1; 1 2 2 2 2 2 2 1 1 1; 2 2 2 2 2 2 2 2 2 1; 2 2 2 1 1; 1",
      "n=5; 1 1 1 1 1; 1 2 2 2 2 2 2 2 2 1; 2 2 2 2 2 2 2 2 2 1; 2 2 2 1 1; 1",
      "n=5; 1 1 1 1 1; 1 2 2 2 2 2 2 2 2 1; 1 2 2 3 3 2 3 3 2 1; 2 2 1 2 2; 1",
      "n=5; 1 1 1 1 1; 1 2 2 2 2 2 2 2 2 2; 1 2 2 2 3 3 2 3 3 2; 1 2 2 2 2; 1",
      "n=5; 1 1 1 1 1; 2 2 2 2 2 1 2 2 1 2; 2 2 2 2 2 2 2 2 2 2; 2 2 2 2 1; 1",
      "n=5; 1 1 1 1 1; 1 2 2 2 2 2 2 2 2 1; 2 2 2 3 3 2 3 3 2 2; 2 2 1 2 2; 1",
      "n=5; 1 1 1 1 1; 2 2 2 2 2 2 2 2 2 2; 2 2 2 2 3 3 2 3 3 2; 1 2 2 2 2; 1",
      "n=5; 1 1 1 1 1; 2 2 2 2 2 2 2 2 2 2; 2 3 3 3 2 3 2 3 3 2; 2 2 2 2 2; 1",
      "n=5; 1 1 1 1 1; 2 2 2 2 2 2 2 2 2 2; 3 3 3 3 3 3 3 3 3 3; 2 2 2 2 2; 1"};
  return rows;
}

// Lowest labeled 6-qubit graph code realizing each row (qubit i is party i,
// qubit 5 the purifier), and the code for the violating vector; computed
// once with a standalone script.
inline const std::vector<std::uint64_t>& six_qubit_lowest_codes() {
  static const std::vector<std::uint64_t> codes{1,    3,    7,     102, 15,   523,  1549, 684, 31,  4119,
                                                1555, 1565, 4470, 12730, 250, 3789, 956,  1880, 7071};
  return codes;
}
inline constexpr std::uint64_t kViolatorLowestCode = 3597;

// Hyper5 evaluated on each row, term by term with a standalone script.
inline const std::vector<int>& hyper5_on_rows() {
  static const std::vector<int> values{0, 2, 3, 3, 1, 2, 2, 4, 1, 1, 1, 1, 3, 5, 3, 3, 6, 3, 6};
  return values;
}

}  // namespace ecw::testing
