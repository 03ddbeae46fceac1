#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace ecw {

// Bit i set <=> party i (A = 0, B = 1, ...) is in the subset.
using PartyMask = std::uint32_t;

// Parties are lettered A..N; 'O' always names the purifier.
inline constexpr int kMaxParties = 14;
inline constexpr char kPurifierLetter = 'O';

inline constexpr PartyMask full_mask(int n) { return (PartyMask{1} << n) - 1; }

void require_party_count(int n);

/// Canonical ordering of the 2^n - 1 nonempty party subsets: by cardinality,
/// then lexicographically on the letter string (A, B, ..., AB, AC, ...).
class SubsetIndex {
 public:
  static const SubsetIndex& get(int n);

  int parties() const { return n_; }
  std::size_t size() const { return order_.size(); }
  PartyMask subset(std::size_t index) const { return order_[index]; }
  std::size_t index(PartyMask subset) const;
  const std::vector<PartyMask>& order() const { return order_; }

 private:
  explicit SubsetIndex(int n);

  int n_ = 0;
  std::vector<PartyMask> order_;
  std::vector<std::uint32_t> index_;
};

std::string subset_label(PartyMask subset);

// Parses a letter string such as "ACD". The purifier letter is accepted and
// reported through `has_purifier`; its bit is never set in the result.
PartyMask parse_subset_label(std::string_view label, int n, bool* has_purifier = nullptr);

/// A permutation of the n + 1 labels (parties 0..n-1, purifier n).
/// image[label] is where `label` is sent.
class LabelPermutation {
 public:
  static LabelPermutation identity(int n);
  explicit LabelPermutation(std::vector<int> image);

  int parties() const { return static_cast<int>(image_.size()) - 1; }
  const std::vector<int>& image() const { return image_; }
  LabelPermutation inverse() const;

  // Image of a party subset. A label set that picks up the purifier is
  // re-read as its complement among the n + 1 labels (S_I = S_{I^c} for
  // pure states); the result may be empty.
  PartyMask apply(PartyMask subset) const;

 private:
  std::vector<int> image_;
};

// All (n+1)! label permutations in lexicographic order of the image vector.
std::vector<LabelPermutation> all_label_permutations(int n);

}  // namespace ecw
