#include "ecw/hypergraph.hpp"

#include <algorithm>
#include <bit>
#include <limits>
#include <set>
#include <stdexcept>

#include "json.hpp"

namespace ecw {
namespace {

constexpr VertexMask bit(std::size_t i) { return VertexMask{1} << i; }

std::string color_letter(int color, int n) {
  return color == n ? std::string(1, kPurifierLetter) : std::string(1, static_cast<char>('A' + color));
}

int parse_color_letter(const std::string& letter, int n) {
  if (letter.size() == 1 && letter[0] == kPurifierLetter) return n;
  if (letter.size() == 1 && letter[0] >= 'A' && letter[0] - 'A' < n) return letter[0] - 'A';
  throw std::invalid_argument("boundary color '" + letter + "' is not a party letter or 'O'");
}

std::int64_t scaled_cut(const HypergraphModel& h, VertexMask w) {
  std::int64_t total = 0;
  const auto& edges = h.edges();
  const auto& weights = h.scaled_weights();
  for (std::size_t e = 0; e < edges.size(); ++e) {
    if ((edges[e] & w) != 0 && (edges[e] & ~w) != 0) total += weights[e];
  }
  return total;
}

struct Scan {
  std::int64_t best = std::numeric_limits<std::int64_t>::max();
  std::vector<VertexMask> minimizers;
};

Scan scan_cuts(const HypergraphModel& h, PartyMask parties, bool keep_all) {
  if (parties == 0) throw std::invalid_argument("min-cut needs a nonempty party set");
  if (parties > full_mask(h.parties())) throw std::invalid_argument("party set outside the model's parties");
  const VertexMask internal = h.internal_vertices();
  if (std::popcount(internal) > kMaxInternalVertices) {
    throw std::length_error("model has " + std::to_string(std::popcount(internal)) +
                            " internal vertices; exhaustive min-cut supports at most " +
                            std::to_string(kMaxInternalVertices));
  }
  const VertexMask base = h.boundary_of(parties);
  Scan scan;
  VertexMask sub = 0;
  do {
    const VertexMask w = base | sub;
    const auto value = scaled_cut(h, w);
    if (value < scan.best) {
      scan.best = value;
      scan.minimizers.assign(1, w);
    } else if (value == scan.best) {
      if (keep_all) {
        scan.minimizers.push_back(w);
      } else if (lex_less(w, scan.minimizers.front())) {
        scan.minimizers.front() = w;
      }
    }
    sub = (sub - internal) & internal;
  } while (sub != 0);
  return scan;
}

}  // namespace

bool lex_less(VertexMask a, VertexMask b) {
  while (a != 0 && b != 0) {
    const int la = std::countr_zero(a);
    const int lb = std::countr_zero(b);
    if (la != lb) return la < lb;
    a &= a - 1;
    b &= b - 1;
  }
  return a == 0 && b != 0;
}

HypergraphModel::HypergraphModel(int n_parties, std::vector<std::string> vertices,
                                 const std::map<std::string, int>& boundary,
                                 const std::vector<HyperedgeSpec>& hyperedges)
    : n_(n_parties), ids_(std::move(vertices)) {
  require_party_count(n_);
  if (ids_.size() > static_cast<std::size_t>(kMaxVertices)) {
    throw std::invalid_argument("at most " + std::to_string(kMaxVertices) + " vertices supported");
  }
  std::set<std::string> seen;
  for (const auto& id : ids_) {
    if (!seen.insert(id).second) throw std::invalid_argument("duplicate vertex id '" + id + "'");
  }
  colors_.assign(ids_.size(), -1);
  by_color_.assign(static_cast<std::size_t>(n_) + 1, 0);
  for (const auto& [id, color] : boundary) {
    const auto v = vertex_index(id);
    if (color < 0 || color > n_) throw std::invalid_argument("color out of range for vertex '" + id + "'");
    colors_[v] = color;
    by_color_[color] |= bit(v);
  }
  for (int c = 0; c <= n_; ++c) {
    if (by_color_[c] == 0) {
      throw std::invalid_argument("no boundary vertex carries color " + color_letter(c, n_));
    }
  }
  for (std::size_t v = 0; v < ids_.size(); ++v) {
    if (colors_[v] < 0) internal_ |= bit(v);
  }
  for (const auto& spec : hyperedges) {
    VertexMask mask = 0;
    for (const auto& id : spec.vertices) {
      const auto b = bit(vertex_index(id));
      if (mask & b) throw std::invalid_argument("hyperedge repeats vertex '" + id + "'");
      mask |= b;
    }
    if (std::popcount(mask) < 2) throw std::invalid_argument("hyperedge needs at least 2 vertices");
    if (spec.weight <= 0) {
      throw std::invalid_argument("hyperedge weight must be positive, got " + format_rational(spec.weight));
    }
    edges_.push_back(mask);
    weights_.push_back(spec.weight);
  }
  scale_ = lcm_of_denominators(weights_.data(), weights_.data() + weights_.size());
  for (const auto& w : weights_) scaled_.push_back(w.numerator() * (scale_ / w.denominator()));
}

VertexMask HypergraphModel::boundary_of(PartyMask parties) const {
  VertexMask out = 0;
  for (int c = 0; c < n_; ++c) {
    if (parties & (PartyMask{1} << c)) out |= by_color_[c];
  }
  return out;
}

std::size_t HypergraphModel::vertex_index(std::string_view id) const {
  const auto it = std::find(ids_.begin(), ids_.end(), id);
  if (it == ids_.end()) throw std::invalid_argument("unknown vertex id '" + std::string(id) + "'");
  return static_cast<std::size_t>(it - ids_.begin());
}

Cut HypergraphModel::make_cut(const std::vector<std::string>& ids) const {
  Cut cut;
  for (const auto& id : ids) cut.members |= bit(vertex_index(id));
  return cut;
}

std::vector<std::string> HypergraphModel::cut_ids(const Cut& cut) const {
  std::vector<std::string> out;
  for (std::size_t v = 0; v < ids_.size(); ++v) {
    if (cut.members & bit(v)) out.push_back(ids_[v]);
  }
  return out;
}

Rational cut_weight(const HypergraphModel& h, const Cut& w) {
  const VertexMask all = h.vertex_count() == 64 ? ~VertexMask{0} : bit(h.vertex_count()) - 1;
  if ((w.members & ~all) != 0) throw std::invalid_argument("cut contains vertices outside the model");
  return Rational(scaled_cut(h, w.members), h.weight_scale());
}

MinCut min_cut(const HypergraphModel& h, PartyMask parties) {
  const Scan scan = scan_cuts(h, parties, false);
  return {Rational(scan.best, h.weight_scale()), Cut{scan.minimizers.front()}};
}

std::vector<Cut> enumerate_min_cuts(const HypergraphModel& h, PartyMask parties) {
  Scan scan = scan_cuts(h, parties, true);
  std::sort(scan.minimizers.begin(), scan.minimizers.end(), lex_less);
  std::vector<Cut> out;
  out.reserve(scan.minimizers.size());
  for (auto m : scan.minimizers) out.push_back(Cut{m});
  return out;
}

EntropyVector entropy_vector(const HypergraphModel& h) {
  const auto& index = SubsetIndex::get(h.parties());
  std::vector<Rational> entries;
  entries.reserve(index.size());
  for (PartyMask s : index.order()) entries.push_back(min_cut(h, s).weight);
  return EntropyVector(h.parties(), std::move(entries));
}

HypergraphModel relabeled(const HypergraphModel& h, const LabelPermutation& g) {
  if (g.parties() != h.parties()) throw std::invalid_argument("permutation acts on a different party count");
  std::map<std::string, int> boundary;
  for (std::size_t v = 0; v < h.vertex_count(); ++v) {
    if (h.color(v) >= 0) boundary[h.vertex_ids()[v]] = g.image()[h.color(v)];
  }
  std::vector<HyperedgeSpec> edges;
  for (std::size_t e = 0; e < h.edges().size(); ++e) {
    edges.push_back({h.cut_ids(Cut{h.edges()[e]}), h.weights()[e]});
  }
  return HypergraphModel(h.parties(), h.vertex_ids(), boundary, edges);
}

HypergraphModel parse_hypergraph_json(std::string_view json_text) {
  using nlohmann::json;
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw std::invalid_argument(std::string("hypergraph JSON: ") + e.what());
  }
  auto id_of = [](const json& v) -> std::string {
    if (v.is_string()) return v.get<std::string>();
    if (v.is_number_integer()) return std::to_string(v.get<long long>());
    throw std::invalid_argument("vertex ids must be strings or integers");
  };
  try {
    const int n = doc.at("parties").get<int>();
    require_party_count(n);
    std::vector<std::string> vertices;
    for (const auto& v : doc.at("vertices")) vertices.push_back(id_of(v));
    std::map<std::string, int> boundary;
    for (const auto& [id, letter] : doc.at("boundary").items()) {
      boundary[id] = parse_color_letter(letter.get<std::string>(), n);
    }
    std::vector<HyperedgeSpec> edges;
    const json empty = json::array();
    for (const auto& e : doc.value("hyperedges", empty)) {
      HyperedgeSpec spec;
      for (const auto& v : e.at("vertices")) spec.vertices.push_back(id_of(v));
      const auto& w = e.at("weight");
      spec.weight = w.is_string() ? parse_rational(w.get<std::string>()) : Rational(w.get<std::int64_t>());
      edges.push_back(std::move(spec));
    }
    return HypergraphModel(n, std::move(vertices), boundary, edges);
  } catch (const json::exception& e) {
    throw std::invalid_argument(std::string("hypergraph JSON: ") + e.what());
  }
}

std::string hypergraph_to_json(const HypergraphModel& h, int indent) {
  nlohmann::ordered_json doc;
  doc["parties"] = h.parties();
  doc["vertices"] = h.vertex_ids();
  nlohmann::ordered_json boundary = nlohmann::ordered_json::object();
  for (std::size_t v = 0; v < h.vertex_count(); ++v) {
    if (h.color(v) >= 0) boundary[h.vertex_ids()[v]] = color_letter(h.color(v), h.parties());
  }
  doc["boundary"] = boundary;
  doc["hyperedges"] = nlohmann::ordered_json::array();
  for (std::size_t e = 0; e < h.edges().size(); ++e) {
    doc["hyperedges"].push_back({{"vertices", h.cut_ids(Cut{h.edges()[e]})},
                                 {"weight", format_rational(h.weights()[e])}});
  }
  return doc.dump(indent);
}

}  // namespace ecw
