#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "ecw/entropy_vector.hpp"
#include "ecw/hypergraph.hpp"

namespace ecw {

struct SearchBudget {
  int max_internal_vertices = 1;
  int max_arity = 6;
  int max_hyperedges = 3;
  std::vector<Rational> weight_set{Rational(1)};

  std::string describe() const;
};

// "k,arity,edges,wmax"; weights become {1, ..., wmax}.
SearchBudget parse_budget(std::string_view text);

class BudgetExceeded : public std::runtime_error {
 public:
  BudgetExceeded(double estimate, double limit);
  double estimate() const { return estimate_; }

 private:
  double estimate_;
};

struct Mismatch {
  PartyMask subset;
  Rational expected;
  Rational actual;
};

struct RealizationCheck {
  std::vector<Mismatch> mismatches;
  bool ok() const { return mismatches.empty(); }
};

RealizationCheck verify_realization(const HypergraphModel& h, const EntropyVector& target);

// Number of candidate models (hyperedge sets with weights) before pruning.
double estimate_search_space(int n_parties, const SearchBudget& budget);

struct RealizationResult {
  std::optional<HypergraphModel> model;
  double space_size = 0;
  std::uint64_t nodes = 0;
  std::uint64_t pruned = 0;
};

struct RealizationOptions {
  double max_space = 5e7;
  // Receives one JSON object per line (start, progress, finish events).
  std::function<void(const std::string&)> log;
};

// Exhaustive search over sets of distinct hyperedge supports on one external
// vertex per color plus up to k internal vertices. Throws BudgetExceeded when
// the unpruned space exceeds options.max_space. Not finding a model says
// nothing beyond this budget.
RealizationResult search_realization(const EntropyVector& target, const SearchBudget& budget,
                                     const RealizationOptions& options = {});

}  // namespace ecw
