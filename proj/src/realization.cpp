#include "ecw/realization.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <iomanip>
#include <limits>
#include <map>
#include <sstream>

#include "json.hpp"
#include "text_util.hpp"

namespace ecw {

std::string SearchBudget::describe() const {
  std::string weights;
  for (const auto& w : weight_set) weights += (weights.empty() ? "" : ",") + format_rational(w);
  return "internal<=" + std::to_string(max_internal_vertices) + " arity<=" + std::to_string(max_arity) +
         " edges<=" + std::to_string(max_hyperedges) + " weights={" + weights + "}";
}

SearchBudget parse_budget(std::string_view text) {
  const auto parts = detail::split(text, ',');
  if (parts.size() != 4) throw std::invalid_argument("budget must be 'k,arity,edges,wmax'");
  std::vector<int> v;
  for (auto p : parts) {
    try {
      v.push_back(std::stoi(std::string(detail::trim(p))));
    } catch (const std::exception&) {
      throw std::invalid_argument("budget field '" + std::string(p) + "' is not an integer");
    }
  }
  if (v[0] < 0 || v[1] < 2 || v[2] < 0 || v[3] < 1) {
    throw std::invalid_argument("budget needs k >= 0, arity >= 2, edges >= 0, wmax >= 1");
  }
  SearchBudget b;
  b.max_internal_vertices = v[0];
  b.max_arity = v[1];
  b.max_hyperedges = v[2];
  b.weight_set.clear();
  for (int w = 1; w <= v[3]; ++w) b.weight_set.emplace_back(w);
  return b;
}

namespace {

std::string short_number(double x) {
  std::ostringstream out;
  out << std::setprecision(4) << x;
  return out.str();
}

}  // namespace

BudgetExceeded::BudgetExceeded(double estimate, double limit)
    : std::runtime_error("search space of about " + short_number(estimate) +
                         " candidate models exceeds the limit of " + short_number(limit) +
                         "; lower the budget or raise --max-space"),
      estimate_(estimate) {}

RealizationCheck verify_realization(const HypergraphModel& h, const EntropyVector& target) {
  if (h.parties() != target.parties()) {
    throw std::invalid_argument("model has " + std::to_string(h.parties()) + " parties, target has " +
                                std::to_string(target.parties()));
  }
  const auto actual = entropy_vector(h);
  RealizationCheck check;
  for (PartyMask s : SubsetIndex::get(h.parties()).order()) {
    if (actual[s] != target[s]) check.mismatches.push_back({s, target[s], actual[s]});
  }
  return check;
}

namespace {

std::vector<VertexMask> candidate_supports(int vertices, int max_arity) {
  std::vector<VertexMask> out;
  const VertexMask limit = VertexMask{1} << vertices;
  for (VertexMask m = 3; m < limit; ++m) {
    const int size = std::popcount(m);
    if (size >= 2 && size <= max_arity) out.push_back(m);
  }
  return out;
}

double binomial(double n, int k) {
  double r = 1;
  for (int i = 0; i < k; ++i) r = r * (n - i) / (i + 1);
  return r;
}

class RealizationSearch {
 public:
  RealizationSearch(const EntropyVector& target, const SearchBudget& budget, const RealizationOptions& options)
      : target_(target),
        budget_(budget),
        options_(options),
        n_(target.parties()),
        k_(budget.max_internal_vertices),
        subsets_(SubsetIndex::get(target.parties()).order()),
        supports_(candidate_supports(n_ + 1 + k_, budget.max_arity)) {
    scale_ = lcm_of_denominators(budget.weight_set.data(), budget.weight_set.data() + budget.weight_set.size());
    for (const auto& w : budget.weight_set) weights_.push_back(w.numerator() * (scale_ / w.denominator()));
    for (const auto& t : target.entries()) {
      const Rational scaled = t * scale_;
      if (scaled.denominator() != 1) integral_target_ = false;
      scaled_target_.push_back(scaled.numerator());
    }
    cells_ = (std::size_t{1} << k_) * subsets_.size();
    cut_.assign(cells_, 0);
    for (std::size_t s = 0; s < (std::size_t{1} << k_); ++s) {
      for (PartyMask sub : subsets_) cut_masks_.push_back(VertexMask{sub} | (VertexMask{s} << (n_ + 1)));
    }
  }

  RealizationResult run() {
    result_.space_size = estimate_search_space(n_, budget_);
    emit_start();
    if (integral_target_) {
      ++result_.nodes;
      if (status() == Status::match) {
        build_model();
      } else {
        descend(0, 0);
      }
    }
    finish(result_.model.has_value());
    return result_;
  }

 private:
  enum class Status { over, under, match };

  Status status() const {
    bool equal = true;
    const std::size_t d = subsets_.size();
    for (std::size_t i = 0; i < d; ++i) {
      std::int64_t best = std::numeric_limits<std::int64_t>::max();
      for (std::size_t s = 0; s < (std::size_t{1} << k_); ++s) best = std::min(best, cut_[s * d + i]);
      if (best > scaled_target_[i]) return Status::over;
      if (best != scaled_target_[i]) equal = false;
    }
    return equal ? Status::match : Status::under;
  }

  void apply(VertexMask edge, std::int64_t w) {
    for (std::size_t c = 0; c < cells_; ++c) {
      const VertexMask in = cut_masks_[c];
      if ((edge & in) != 0 && (edge & ~in) != 0) cut_[c] += w;
    }
  }

  // Edges are added in increasing support order; internal vertices must be
  // introduced in label order, which keeps one labeling per model class.
  bool descend(std::size_t start, VertexMask used_internal) {
    if (static_cast<int>(chosen_.size()) >= budget_.max_hyperedges) return false;
    for (std::size_t i = start; i < supports_.size(); ++i) {
      const VertexMask edge = supports_[i];
      const VertexMask internal = edge >> (n_ + 1);
      const VertexMask used = used_internal | internal;
      if ((used & (used + 1)) != 0) continue;
      for (std::size_t wi = 0; wi < weights_.size(); ++wi) {
        apply(edge, weights_[wi]);
        chosen_.push_back({edge, wi});
        ++result_.nodes;
        if (options_.log && (result_.nodes & 0xFFFFF) == 0) emit_progress();
        const Status st = status();
        bool done = false;
        if (st == Status::match) {
          build_model();
          done = true;
        } else if (st == Status::over) {
          ++result_.pruned;
        } else {
          done = descend(i + 1, used);
        }
        chosen_.pop_back();
        apply(edge, -weights_[wi]);
        if (done) return true;
      }
    }
    return false;
  }

  void build_model() {
    std::vector<std::string> ids;
    std::map<std::string, int> boundary;
    for (int c = 0; c < n_; ++c) {
      ids.emplace_back(1, static_cast<char>('A' + c));
      boundary[ids.back()] = c;
    }
    ids.emplace_back(1, kPurifierLetter);
    boundary[ids.back()] = n_;
    VertexMask used = 0;
    for (const auto& [edge, wi] : chosen_) used |= edge >> (n_ + 1);
    for (int j = 0; j < std::popcount(used); ++j) ids.push_back("v" + std::to_string(j + 1));
    std::vector<HyperedgeSpec> edges;
    for (const auto& [edge, wi] : chosen_) {
      HyperedgeSpec spec{{}, budget_.weight_set[wi]};
      for (int v = 0; v < n_ + 1 + k_; ++v) {
        if ((edge >> v) & 1U) spec.vertices.push_back(ids[static_cast<std::size_t>(v)]);
      }
      edges.push_back(std::move(spec));
    }
    result_.model.emplace(n_, std::move(ids), boundary, edges);
  }

  void emit_start() const {
    if (!options_.log) return;
    nlohmann::ordered_json e;
    e["event"] = "start";
    e["budget"] = budget_.describe();
    e["space"] = result_.space_size;
    e["supports"] = supports_.size();
    options_.log(e.dump());
  }

  void emit_progress() const {
    nlohmann::ordered_json e;
    e["event"] = "progress";
    e["nodes"] = result_.nodes;
    e["pruned"] = result_.pruned;
    options_.log(e.dump());
  }

  void finish(bool found) const {
    if (!options_.log) return;
    nlohmann::ordered_json e;
    e["event"] = found ? "found" : "exhausted";
    e["nodes"] = result_.nodes;
    e["pruned"] = result_.pruned;
    options_.log(e.dump());
  }

  const EntropyVector& target_;
  const SearchBudget& budget_;
  const RealizationOptions& options_;
  int n_;
  int k_;
  const std::vector<PartyMask>& subsets_;
  std::vector<VertexMask> supports_;
  std::int64_t scale_ = 1;
  std::vector<std::int64_t> weights_;
  std::vector<std::int64_t> scaled_target_;
  bool integral_target_ = true;
  std::size_t cells_ = 0;
  std::vector<std::int64_t> cut_;
  std::vector<VertexMask> cut_masks_;
  std::vector<std::pair<VertexMask, std::size_t>> chosen_;
  RealizationResult result_;
};

}  // namespace

double estimate_search_space(int n_parties, const SearchBudget& budget) {
  const int vertices = n_parties + 1 + budget.max_internal_vertices;
  double supports = 0;
  for (int size = 2; size <= std::min(budget.max_arity, vertices); ++size) supports += binomial(vertices, size);
  double total = 0;
  for (int j = 0; j <= budget.max_hyperedges; ++j) {
    total += binomial(supports, j) * std::pow(static_cast<double>(budget.weight_set.size()), j);
  }
  return total;
}

RealizationResult search_realization(const EntropyVector& target, const SearchBudget& budget,
                                     const RealizationOptions& options) {
  if (budget.max_internal_vertices < 0 || budget.max_arity < 2 || budget.max_hyperedges < 0 ||
      budget.weight_set.empty()) {
    throw std::invalid_argument("invalid search budget " + budget.describe());
  }
  for (const auto& w : budget.weight_set) {
    if (w <= 0) throw std::invalid_argument("budget weights must be positive");
  }
  if (target.parties() + 1 + budget.max_internal_vertices > 20) {
    throw std::invalid_argument("realization search supports at most 20 vertices");
  }
  const double space = estimate_search_space(target.parties(), budget);
  if (space > options.max_space) throw BudgetExceeded(space, options.max_space);
  return RealizationSearch(target, budget, options).run();
}

}  // namespace ecw
