#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "ecw/rational.hpp"
#include "ecw/subsets.hpp"

namespace ecw {

/// Entropies S_I of all nonempty party subsets I, stored in SubsetIndex order.
class EntropyVector {
 public:
  explicit EntropyVector(int n_parties);  // all zeros
  EntropyVector(int n_parties, std::vector<Rational> entries);

  int parties() const { return n_; }
  std::size_t size() const { return entries_.size(); }
  const std::vector<Rational>& entries() const { return entries_; }

  const Rational& operator[](PartyMask subset) const;
  void set(PartyMask subset, Rational value);

  // Restriction to the first `k` parties (the rest are traced out).
  EntropyVector project(int k) const;

  // s'[g(I)] = s[I]; the image of the vector under a relabeling of parties
  // and purifier.
  EntropyVector permuted(const LabelPermutation& g) const;

  friend bool operator==(const EntropyVector&, const EntropyVector&) = default;

 private:
  int n_;
  std::vector<Rational> entries_;
};

// Text form: "n=5; 1 1 1 1 1; 1 2 ...; ...; 1" with one group per subset
// cardinality. A leading "[name]" tag is allowed and returned via `name`.
EntropyVector parse_entropy_vector(std::string_view text, std::string* name = nullptr);
std::string format_entropy_vector(const EntropyVector& s);

struct NamedVector {
  std::string name;
  EntropyVector vector;
};

// One vector per line; blank lines and '#' comments skipped. Unnamed lines
// get their 1-based line position among vectors as name.
std::vector<NamedVector> parse_entropy_vector_file(std::string_view text);

}  // namespace ecw
