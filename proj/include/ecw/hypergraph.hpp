#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "ecw/entropy_vector.hpp"
#include "ecw/rational.hpp"
#include "ecw/subsets.hpp"

namespace ecw {

using VertexMask = std::uint64_t;

inline constexpr int kMaxVertices = 64;
// Min-cuts enumerate all 2^k assignments of the k internal vertices.
inline constexpr int kMaxInternalVertices = 24;

struct HyperedgeSpec {
  std::vector<std::string> vertices;
  Rational weight;
};

/// A set of vertices. For party subset I a cut must contain exactly the
/// boundary vertices colored by I.
struct Cut {
  VertexMask members = 0;
  friend bool operator==(const Cut&, const Cut&) = default;
};

/// Weighted hypergraph with a surjective boundary coloring onto the n parties
/// plus the purifier (color n). Immutable after construction.
class HypergraphModel {
 public:
  // `boundary` maps vertex id -> color in [0, n]; color n is the purifier.
  HypergraphModel(int n_parties, std::vector<std::string> vertices,
                  const std::map<std::string, int>& boundary, const std::vector<HyperedgeSpec>& hyperedges);

  int parties() const { return n_; }
  std::size_t vertex_count() const { return ids_.size(); }
  const std::vector<std::string>& vertex_ids() const { return ids_; }
  const std::vector<VertexMask>& edges() const { return edges_; }
  const std::vector<Rational>& weights() const { return weights_; }

  // -1 for internal vertices.
  int color(std::size_t vertex) const { return colors_[vertex]; }
  VertexMask internal_vertices() const { return internal_; }
  // Boundary vertices whose color lies in `parties`.
  VertexMask boundary_of(PartyMask parties) const;

  std::size_t vertex_index(std::string_view id) const;  // throws on unknown id
  Cut make_cut(const std::vector<std::string>& ids) const;
  std::vector<std::string> cut_ids(const Cut& cut) const;

  // Edge weights scaled by a common denominator; cut sums stay integral.
  const std::vector<std::int64_t>& scaled_weights() const { return scaled_; }
  std::int64_t weight_scale() const { return scale_; }

  friend bool operator==(const HypergraphModel& a, const HypergraphModel& b) {
    return a.n_ == b.n_ && a.ids_ == b.ids_ && a.colors_ == b.colors_ && a.edges_ == b.edges_ &&
           a.weights_ == b.weights_;
  }

 private:
  int n_;
  std::vector<std::string> ids_;
  std::vector<int> colors_;
  std::vector<VertexMask> edges_;
  std::vector<Rational> weights_;
  std::vector<std::int64_t> scaled_;
  std::int64_t scale_ = 1;
  VertexMask internal_ = 0;
  std::vector<VertexMask> by_color_;
};

Rational cut_weight(const HypergraphModel& h, const Cut& w);

struct MinCut {
  Rational weight;
  Cut witness;
};

// Exact minimum over all cuts for `parties`; the witness is the
// lexicographically smallest minimizer (sorted vertex positions compared
// lexicographically).
MinCut min_cut(const HypergraphModel& h, PartyMask parties);

// Every minimizing cut, sorted in the same lexicographic order.
std::vector<Cut> enumerate_min_cuts(const HypergraphModel& h, PartyMask parties);

EntropyVector entropy_vector(const HypergraphModel& h);

// Same model with labels relabeled by g: a vertex colored c gets color g(c).
HypergraphModel relabeled(const HypergraphModel& h, const LabelPermutation& g);

bool lex_less(VertexMask a, VertexMask b);

HypergraphModel parse_hypergraph_json(std::string_view json_text);
std::string hypergraph_to_json(const HypergraphModel& h, int indent = 2);

}  // namespace ecw
