#include "ecw/graph_state.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

#include "ecw/parallel.hpp"
#include "json.hpp"

namespace ecw {

BitMatrix::BitMatrix(std::size_t rows, std::size_t cols) : rows_(rows, 0), cols_(cols) {
  if (cols > 64) throw std::invalid_argument("BitMatrix supports at most 64 columns");
}

BitMatrix BitMatrix::from_rows(const std::vector<std::vector<int>>& rows) {
  const std::size_t cols = rows.empty() ? 0 : rows.front().size();
  BitMatrix m(rows.size(), cols);
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (rows[r].size() != cols) throw std::invalid_argument("ragged bit matrix");
    for (std::size_t c = 0; c < cols; ++c) {
      if (rows[r][c] != 0 && rows[r][c] != 1) throw std::invalid_argument("bit matrix entries must be 0 or 1");
      m.set(r, c, rows[r][c] == 1);
    }
  }
  return m;
}

void BitMatrix::set(std::size_t r, std::size_t c, bool value) {
  if (c >= cols_) throw std::out_of_range("column out of range");
  const auto b = std::uint64_t{1} << c;
  rows_.at(r) = value ? (rows_.at(r) | b) : (rows_.at(r) & ~b);
}

void BitMatrix::set_row(std::size_t r, std::uint64_t word) {
  if (cols_ < 64 && (word >> cols_) != 0) throw std::out_of_range("row word exceeds column count");
  rows_.at(r) = word;
}

std::size_t gf2_rank(const BitMatrix& m) {
  auto rows = m.row_words();
  std::size_t rank = 0;
  for (std::size_t r = 0; r < rows.size(); ++r) {
    const std::uint64_t pivot_row = rows[r];
    if (pivot_row == 0) continue;
    ++rank;
    const std::uint64_t pivot = pivot_row & (~pivot_row + 1);
    for (std::size_t s = r + 1; s < rows.size(); ++s) {
      if (rows[s] & pivot) rows[s] ^= pivot_row;
    }
  }
  return rank;
}

GraphState::GraphState(int n_qubits) : n_(n_qubits) {
  if (n_ < 1 || n_ > kMaxQubits) throw std::invalid_argument("qubit count outside [1, 64]");
  adj_.assign(static_cast<std::size_t>(n_), 0);
}

GraphState::GraphState(int n_qubits, const std::vector<std::pair<int, int>>& edges) : GraphState(n_qubits) {
  for (auto [a, b] : edges) {
    check_vertex(a);
    check_vertex(b);
    if (a == b) throw std::invalid_argument("self-loop at qubit " + std::to_string(a));
    if (has_edge(a, b)) throw std::invalid_argument("duplicate edge");
    toggle_edge(a, b);
  }
}

void GraphState::check_vertex(int v) const {
  if (v < 0 || v >= n_) throw std::out_of_range("qubit " + std::to_string(v) + " out of range");
}

void GraphState::toggle_edge(int a, int b) {
  check_vertex(a);
  check_vertex(b);
  if (a == b) throw std::invalid_argument("self-loop at qubit " + std::to_string(a));
  adj_[a] ^= QubitMask{1} << b;
  adj_[b] ^= QubitMask{1} << a;
}

std::vector<std::pair<int, int>> GraphState::edges() const {
  std::vector<std::pair<int, int>> out;
  for (int a = 0; a < n_; ++a) {
    for (int b = a + 1; b < n_; ++b) {
      if (has_edge(a, b)) out.emplace_back(a, b);
    }
  }
  return out;
}

GraphState graph_from_code(int n_qubits, std::uint64_t code) {
  GraphState g(n_qubits);
  int b = 0;
  for (int x = 0; x < n_qubits; ++x) {
    for (int y = x + 1; y < n_qubits; ++y, ++b) {
      if (b < 64 && ((code >> b) & 1U)) g.toggle_edge(x, y);
    }
  }
  return g;
}

PartyAssignment::PartyAssignment(int n_parties, std::vector<int> labels)
    : n_parties_(n_parties), labels_(std::move(labels)) {
  require_party_count(n_parties_);
  for (int l : labels_) {
    if (l < 0 || l > n_parties_) throw std::invalid_argument("qubit label out of range");
  }
}

PartyAssignment PartyAssignment::one_per_qubit(int n_qubits) {
  std::vector<int> labels(static_cast<std::size_t>(n_qubits));
  for (int i = 0; i < n_qubits; ++i) labels[i] = i;
  return PartyAssignment(n_qubits - 1, std::move(labels));
}

QubitMask PartyAssignment::qubits_of(PartyMask parties) const {
  QubitMask out = 0;
  for (std::size_t q = 0; q < labels_.size(); ++q) {
    const int l = labels_[q];
    if (l < n_parties_ && (parties & (PartyMask{1} << l))) out |= QubitMask{1} << q;
  }
  return out;
}

int graph_state_entropy(const GraphState& g, QubitMask qubits) {
  const int n = g.qubits();
  const QubitMask all = n == 64 ? ~QubitMask{0} : (QubitMask{1} << n) - 1;
  if (qubits == 0 || qubits == all || (qubits & ~all) != 0) {
    throw std::invalid_argument("entropy needs a proper nonempty qubit subset");
  }
  const QubitMask rest = all & ~qubits;
  BitMatrix block(static_cast<std::size_t>(std::popcount(qubits)), 64);
  std::size_t r = 0;
  for (int q = 0; q < n; ++q) {
    if (qubits & (QubitMask{1} << q)) block.set_row(r++, g.neighbors(q) & rest);
  }
  return static_cast<int>(gf2_rank(block));
}

EntropyVector graph_state_entropy_vector(const GraphState& g, const PartyAssignment& parts) {
  if (parts.labels().size() != static_cast<std::size_t>(g.qubits())) {
    throw std::invalid_argument("party assignment must cover every qubit");
  }
  const int n = parts.parties();
  const QubitMask all = g.qubits() == 64 ? ~QubitMask{0} : (QubitMask{1} << g.qubits()) - 1;
  std::vector<Rational> entries;
  for (PartyMask s : SubsetIndex::get(n).order()) {
    const QubitMask q = parts.qubits_of(s);
    entries.emplace_back((q == 0 || q == all) ? 0 : graph_state_entropy(g, q));
  }
  return EntropyVector(n, std::move(entries));
}

double dense_oracle_entropy(const GraphState& g, QubitMask qubits) {
  const int n = g.qubits();
  if (n > kMaxDenseQubits) {
    throw std::invalid_argument("dense oracle supports at most " + std::to_string(kMaxDenseQubits) + " qubits");
  }
  const QubitMask all = (QubitMask{1} << n) - 1;
  if (qubits == 0 || qubits == all || (qubits & ~all) != 0) {
    throw std::invalid_argument("entropy needs a proper nonempty qubit subset");
  }
  const std::size_t dim = std::size_t{1} << n;
  std::vector<double> psi(dim, 1.0 / std::sqrt(static_cast<double>(dim)));
  for (auto [x, y] : g.edges()) {
    const std::size_t both = (std::size_t{1} << x) | (std::size_t{1} << y);
    for (std::size_t basis = 0; basis < dim; ++basis) {
      if ((basis & both) == both) psi[basis] = -psi[basis];
    }
  }

  // rho_I and rho_{I^c} share their nonzero spectrum; diagonalize the smaller.
  QubitMask keep = qubits;
  if (std::popcount(keep) > n - std::popcount(keep)) keep = all & ~keep;
  std::vector<int> kept;
  std::vector<int> traced;
  for (int q = 0; q < n; ++q) ((keep >> q) & 1U ? kept : traced).push_back(q);

  auto spread = [](std::size_t bits, const std::vector<int>& positions) {
    std::size_t out = 0;
    for (std::size_t i = 0; i < positions.size(); ++i) {
      if ((bits >> i) & 1U) out |= std::size_t{1} << positions[i];
    }
    return out;
  };
  const std::size_t rows = std::size_t{1} << kept.size();
  const std::size_t cols = std::size_t{1} << traced.size();
  Eigen::MatrixXd amplitudes(rows, cols);
  for (std::size_t a = 0; a < rows; ++a) {
    const std::size_t ha = spread(a, kept);
    for (std::size_t b = 0; b < cols; ++b) amplitudes(a, b) = psi[ha | spread(b, traced)];
  }
  const Eigen::MatrixXd rho = amplitudes * amplitudes.transpose();
  const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(rho, Eigen::EigenvaluesOnly);
  double entropy = 0.0;
  for (Eigen::Index i = 0; i < solver.eigenvalues().size(); ++i) {
    const double lambda = solver.eigenvalues()[i];
    if (lambda > 1e-14) entropy -= lambda * std::log2(lambda);
  }
  return entropy;
}

GraphState local_complement(const GraphState& g, int v) {
  if (v < 0 || v >= g.qubits()) throw std::out_of_range("qubit " + std::to_string(v) + " out of range");
  GraphState out = g;
  const QubitMask nb = g.neighbors(v);
  for (int a = 0; a < g.qubits(); ++a) {
    if (!((nb >> a) & 1U)) continue;
    for (int b = a + 1; b < g.qubits(); ++b) {
      if ((nb >> b) & 1U) out.toggle_edge(a, b);
    }
  }
  return out;
}

std::vector<std::optional<CensusHit>> graph_census(const std::vector<EntropyVector>& targets, int n_qubits) {
  if (n_qubits < 2 || n_qubits > 8) throw std::invalid_argument("census supports 2..8 qubits");
  const auto parts = PartyAssignment::one_per_qubit(n_qubits);
  for (const auto& t : targets) {
    if (t.parties() != parts.parties()) {
      throw std::invalid_argument("census target has " + std::to_string(t.parties()) + " parties, expected " +
                                  std::to_string(parts.parties()));
    }
  }
  const int pairs = n_qubits * (n_qubits - 1) / 2;
  const std::uint64_t total = std::uint64_t{1} << pairs;

  // Lowest matching code per target, per chunk; merged in chunk order.
  const unsigned chunks = worker_count();
  std::vector<std::vector<std::optional<std::uint64_t>>> found(chunks,
                                                               std::vector<std::optional<std::uint64_t>>(targets.size()));
  parallel_for(chunks, [&](std::size_t c_begin, std::size_t c_end) {
    for (std::size_t c = c_begin; c < c_end; ++c) {
      const std::uint64_t begin = total * c / chunks;
      const std::uint64_t end = total * (c + 1) / chunks;
      for (std::uint64_t code = begin; code < end; ++code) {
        const auto s = graph_state_entropy_vector(graph_from_code(n_qubits, code), parts);
        for (std::size_t t = 0; t < targets.size(); ++t) {
          if (!found[c][t] && s == targets[t]) found[c][t] = code;
        }
      }
    }
  });

  std::vector<std::optional<CensusHit>> out(targets.size());
  for (std::size_t t = 0; t < targets.size(); ++t) {
    for (unsigned c = 0; c < chunks && !out[t]; ++c) {
      if (found[c][t]) out[t] = CensusHit{*found[c][t], graph_from_code(n_qubits, *found[c][t])};
    }
  }
  return out;
}

GraphState parse_graph_json(std::string_view json_text, PartyAssignment* parts) {
  using nlohmann::json;
  try {
    const json doc = json::parse(json_text);
    const int n = doc.at("n").get<int>();
    std::vector<std::pair<int, int>> edges;
    for (const auto& e : doc.at("edges")) {
      if (!e.is_array() || e.size() != 2) throw std::invalid_argument("edges must be [i, j] pairs");
      edges.emplace_back(e[0].get<int>(), e[1].get<int>());
    }
    GraphState g(n, edges);
    if (parts != nullptr) {
      if (!doc.contains("parties")) {
        *parts = PartyAssignment::one_per_qubit(n);
      } else {
        std::vector<int> labels(static_cast<std::size_t>(n), -1);
        int max_party = -1;
        for (const auto& [key, letter] : doc.at("parties").items()) {
          const int q = std::stoi(key);
          if (q < 0 || q >= n) throw std::invalid_argument("party map names qubit " + key + " outside the graph");
          const auto l = letter.get<std::string>();
          if (l.size() != 1 || l[0] < 'A' || l[0] > 'Z') throw std::invalid_argument("bad party letter '" + l + "'");
          labels[q] = l[0] == kPurifierLetter ? -2 : l[0] - 'A';
          max_party = std::max(max_party, labels[q]);
        }
        const int n_parties = max_party + 1;
        for (std::size_t q = 0; q < labels.size(); ++q) {
          if (labels[q] == -1) throw std::invalid_argument("qubit " + std::to_string(q) + " has no party");
          if (labels[q] == -2) labels[q] = n_parties;
        }
        *parts = PartyAssignment(n_parties, std::move(labels));
      }
    }
    return g;
  } catch (const json::exception& e) {
    throw std::invalid_argument(std::string("graph JSON: ") + e.what());
  }
}

std::string graph_to_json(const GraphState& g, const PartyAssignment& parts, int indent) {
  nlohmann::ordered_json doc;
  doc["n"] = g.qubits();
  doc["edges"] = nlohmann::ordered_json::array();
  for (auto [a, b] : g.edges()) doc["edges"].push_back({a, b});
  nlohmann::ordered_json map = nlohmann::ordered_json::object();
  for (std::size_t q = 0; q < parts.labels().size(); ++q) {
    const int l = parts.labels()[q];
    map[std::to_string(q)] = l == parts.parties() ? std::string(1, kPurifierLetter) : std::string(1, static_cast<char>('A' + l));
  }
  doc["parties"] = map;
  return doc.dump(indent);
}

}  // namespace ecw
