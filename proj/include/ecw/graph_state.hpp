#pragma once

#include <cstdint>
#include <optional>
#include <string_view>
#include <utility>
#include <vector>

#include "ecw/entropy_vector.hpp"

namespace ecw {

/// Dense matrix over GF(2), one machine word per row (at most 64 columns).
class BitMatrix {
 public:
  BitMatrix(std::size_t rows, std::size_t cols);
  static BitMatrix from_rows(const std::vector<std::vector<int>>& rows);

  std::size_t rows() const { return rows_.size(); }
  std::size_t cols() const { return cols_; }
  bool get(std::size_t r, std::size_t c) const { return (rows_[r] >> c) & 1U; }
  void set(std::size_t r, std::size_t c, bool value);
  void set_row(std::size_t r, std::uint64_t word);
  const std::vector<std::uint64_t>& row_words() const { return rows_; }

 private:
  std::vector<std::uint64_t> rows_;
  std::size_t cols_;
};

std::size_t gf2_rank(const BitMatrix& m);

using QubitMask = std::uint64_t;

inline constexpr int kMaxQubits = 64;
inline constexpr int kMaxDenseQubits = 12;

/// Simple graph on n qubits defining |G> = prod_{(x,y) in E} CZ_{x,y} |+>^n.
class GraphState {
 public:
  explicit GraphState(int n_qubits);  // empty graph
  GraphState(int n_qubits, const std::vector<std::pair<int, int>>& edges);

  int qubits() const { return n_; }
  QubitMask neighbors(int v) const { return adj_.at(static_cast<std::size_t>(v)); }
  bool has_edge(int a, int b) const { return (adj_.at(static_cast<std::size_t>(a)) >> b) & 1U; }
  std::vector<std::pair<int, int>> edges() const;

  void toggle_edge(int a, int b);

  friend bool operator==(const GraphState&, const GraphState&) = default;

 private:
  void check_vertex(int v) const;

  int n_;
  std::vector<QubitMask> adj_;
};

// Graph number `code` on n labeled qubits: bit b of `code` toggles the b-th
// pair in lexicographic order (0,1), (0,2), ..., (n-2,n-1).
GraphState graph_from_code(int n_qubits, std::uint64_t code);

/// Qubit -> label: 0..n_parties-1 for parties, n_parties for the purifier.
class PartyAssignment {
 public:
  PartyAssignment(int n_parties, std::vector<int> labels);
  // Qubit i -> party i for i < n-1; the last qubit purifies.
  static PartyAssignment one_per_qubit(int n_qubits);

  int parties() const { return n_parties_; }
  const std::vector<int>& labels() const { return labels_; }
  QubitMask qubits_of(PartyMask parties) const;

 private:
  int n_parties_;
  std::vector<int> labels_;
};

// Entropy in bits of the reduced state on `qubits`: GF(2) rank of the
// adjacency block rows(qubits) x cols(complement).
int graph_state_entropy(const GraphState& g, QubitMask qubits);

EntropyVector graph_state_entropy_vector(const GraphState& g, const PartyAssignment& parts);

// Builds the 2^n amplitude vector by applying CZ gates to |+>^n, forms the
// reduced density matrix and returns its von Neumann entropy in bits.
double dense_oracle_entropy(const GraphState& g, QubitMask qubits);

GraphState local_complement(const GraphState& g, int v);

struct CensusHit {
  std::uint64_t code;
  GraphState graph;
};

// For every target vector, the lowest-coded labeled graph on n qubits (with
// PartyAssignment::one_per_qubit) whose entropy vector equals it. Scans all
// 2^(n(n-1)/2) graphs.
std::vector<std::optional<CensusHit>> graph_census(const std::vector<EntropyVector>& targets, int n_qubits);

GraphState parse_graph_json(std::string_view json_text, PartyAssignment* parts = nullptr);
std::string graph_to_json(const GraphState& g, const PartyAssignment& parts, int indent = 2);

}  // namespace ecw
