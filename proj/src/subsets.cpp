#include "ecw/subsets.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <memory>
#include <mutex>
#include <numeric>
#include <stdexcept>

namespace ecw {

void require_party_count(int n) {
  if (n < 1 || n > kMaxParties) {
    throw std::invalid_argument("party count " + std::to_string(n) + " outside [1, " +
                                std::to_string(kMaxParties) + "]");
  }
}

SubsetIndex::SubsetIndex(int n) : n_(n), index_(std::size_t{1} << n, 0) {
  order_.reserve(index_.size() - 1);
  for (PartyMask s = 1; s <= full_mask(n); ++s) order_.push_back(s);
  std::sort(order_.begin(), order_.end(), [](PartyMask a, PartyMask b) {
    const int ca = std::popcount(a);
    const int cb = std::popcount(b);
    if (ca != cb) return ca < cb;
    return subset_label(a) < subset_label(b);
  });
  for (std::size_t i = 0; i < order_.size(); ++i) index_[order_[i]] = static_cast<std::uint32_t>(i);
}

const SubsetIndex& SubsetIndex::get(int n) {
  require_party_count(n);
  static std::array<std::unique_ptr<SubsetIndex>, kMaxParties + 1> cache;
  static std::array<std::once_flag, kMaxParties + 1> once;
  std::call_once(once[n], [n] { cache[n].reset(new SubsetIndex(n)); });
  return *cache[n];
}

std::size_t SubsetIndex::index(PartyMask subset) const {
  if (subset == 0 || subset > full_mask(n_)) {
    throw std::out_of_range("subset " + subset_label(subset) + " is not a nonempty subset of " +
                            std::to_string(n_) + " parties");
  }
  return index_[subset];
}

std::string subset_label(PartyMask subset) {
  std::string label;
  for (int i = 0; subset != 0; ++i, subset >>= 1) {
    if (subset & 1U) label.push_back(static_cast<char>('A' + i));
  }
  return label;
}

PartyMask parse_subset_label(std::string_view label, int n, bool* has_purifier) {
  PartyMask mask = 0;
  bool purifier = false;
  if (label.empty()) throw std::invalid_argument("empty subset label");
  for (char c : label) {
    if (c == kPurifierLetter) {
      if (purifier) throw std::invalid_argument("repeated purifier in '" + std::string(label) + "'");
      purifier = true;
      continue;
    }
    const int party = c - 'A';
    if (party < 0 || party >= n) {
      throw std::invalid_argument("letter '" + std::string(1, c) + "' is not one of the " +
                                  std::to_string(n) + " parties");
    }
    const PartyMask bit = PartyMask{1} << party;
    if (mask & bit) throw std::invalid_argument("repeated party in '" + std::string(label) + "'");
    mask |= bit;
  }
  if (has_purifier != nullptr) {
    *has_purifier = purifier;
  } else if (purifier) {
    throw std::invalid_argument("purifier not allowed in '" + std::string(label) + "'");
  }
  return mask;
}

LabelPermutation LabelPermutation::identity(int n) {
  std::vector<int> image(static_cast<std::size_t>(n) + 1);
  std::iota(image.begin(), image.end(), 0);
  return LabelPermutation(std::move(image));
}

LabelPermutation::LabelPermutation(std::vector<int> image) : image_(std::move(image)) {
  std::vector<int> sorted = image_;
  std::sort(sorted.begin(), sorted.end());
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    if (sorted[i] != static_cast<int>(i)) throw std::invalid_argument("not a permutation");
  }
  if (image_.size() < 2) throw std::invalid_argument("need at least one party plus the purifier");
}

LabelPermutation LabelPermutation::inverse() const {
  std::vector<int> inv(image_.size());
  for (std::size_t i = 0; i < image_.size(); ++i) inv[image_[i]] = static_cast<int>(i);
  return LabelPermutation(std::move(inv));
}

PartyMask LabelPermutation::apply(PartyMask subset) const {
  const int n = parties();
  std::uint32_t labels = 0;
  for (int i = 0; i < n; ++i) {
    if (subset & (PartyMask{1} << i)) labels |= std::uint32_t{1} << image_[i];
  }
  const std::uint32_t purifier_bit = std::uint32_t{1} << n;
  if (labels & purifier_bit) labels = ~labels & ((purifier_bit << 1) - 1);
  return labels;
}

std::vector<LabelPermutation> all_label_permutations(int n) {
  std::vector<int> image(static_cast<std::size_t>(n) + 1);
  std::iota(image.begin(), image.end(), 0);
  std::vector<LabelPermutation> perms;
  do {
    perms.emplace_back(image);
  } while (std::next_permutation(image.begin(), image.end()));
  return perms;
}

}  // namespace ecw
