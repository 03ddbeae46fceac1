#include "ecw/entropy_vector.hpp"

#include <bit>
#include <sstream>
#include <stdexcept>

#include "text_util.hpp"

namespace ecw {

EntropyVector::EntropyVector(int n_parties)
    : n_(n_parties), entries_(SubsetIndex::get(n_parties).size(), Rational(0)) {}

EntropyVector::EntropyVector(int n_parties, std::vector<Rational> entries)
    : n_(n_parties), entries_(std::move(entries)) {
  const auto expected = SubsetIndex::get(n_parties).size();
  if (entries_.size() != expected) {
    throw std::invalid_argument("entropy vector for " + std::to_string(n_) + " parties needs " +
                                std::to_string(expected) + " entries, got " +
                                std::to_string(entries_.size()));
  }
  for (const auto& e : entries_) {
    if (e < 0) throw std::invalid_argument("negative entropy " + format_rational(e));
  }
}

const Rational& EntropyVector::operator[](PartyMask subset) const {
  return entries_[SubsetIndex::get(n_).index(subset)];
}

void EntropyVector::set(PartyMask subset, Rational value) {
  if (value < 0) throw std::invalid_argument("negative entropy " + format_rational(value));
  entries_[SubsetIndex::get(n_).index(subset)] = value;
}

EntropyVector EntropyVector::project(int k) const {
  if (k < 1 || k > n_) throw std::invalid_argument("cannot project onto " + std::to_string(k) + " parties");
  EntropyVector out(k);
  for (PartyMask s : SubsetIndex::get(k).order()) out.set(s, (*this)[s]);
  return out;
}

EntropyVector EntropyVector::permuted(const LabelPermutation& g) const {
  if (g.parties() != n_) throw std::invalid_argument("permutation acts on a different party count");
  EntropyVector out(n_);
  for (PartyMask s : SubsetIndex::get(n_).order()) {
    const PartyMask image = g.apply(s);
    // Only the full label set maps to the empty set, and S of a pure
    // global state is 0 either way.
    if (image != 0) out.set(image, (*this)[s]);
  }
  return out;
}

EntropyVector parse_entropy_vector(std::string_view text, std::string* name) {
  std::string_view rest = detail::trim(text);
  std::string tag = detail::take_tag(rest);
  if (name != nullptr) *name = tag;

  auto groups = detail::split(rest, ';');
  if (groups.empty()) throw std::invalid_argument("empty entropy vector");
  std::string_view head = detail::trim(groups.front());
  if (head.substr(0, 2) != "n=") throw std::invalid_argument("entropy vector must start with 'n=<parties>;'");
  int n = 0;
  try {
    n = std::stoi(std::string(head.substr(2)));
  } catch (const std::exception&) {
    throw std::invalid_argument("bad party count '" + std::string(head) + "'");
  }
  require_party_count(n);
  if (static_cast<int>(groups.size()) != n + 1) {
    throw std::invalid_argument("expected " + std::to_string(n) + " cardinality groups, got " +
                                std::to_string(groups.size() - 1));
  }
  std::vector<Rational> entries;
  for (int k = 1; k <= n; ++k) {
    std::istringstream in{std::string(groups[k])};
    std::string token;
    std::size_t count = 0;
    while (in >> token) {
      entries.push_back(parse_rational(token));
      ++count;
    }
    std::size_t expected = 1;
    for (int i = 0; i < k; ++i) expected = expected * (n - i) / (i + 1);
    if (count != expected) {
      throw std::invalid_argument("group " + std::to_string(k) + " has " + std::to_string(count) +
                                  " entries, expected " + std::to_string(expected));
    }
  }
  return EntropyVector(n, std::move(entries));
}

std::string format_entropy_vector(const EntropyVector& s) {
  std::string out = "n=" + std::to_string(s.parties());
  const auto& index = SubsetIndex::get(s.parties());
  int card = 0;
  for (std::size_t i = 0; i < index.size(); ++i) {
    const int c = std::popcount(index.subset(i));
    out += (c != card) ? "; " : " ";
    card = c;
    out += format_rational(s.entries()[i]);
  }
  return out;
}

std::vector<NamedVector> parse_entropy_vector_file(std::string_view text) {
  std::vector<NamedVector> out;
  int line_no = 0;
  for (std::string_view line : detail::lines(text)) {
    ++line_no;
    line = detail::strip_comment(line);
    if (line.empty()) continue;
    std::string name;
    try {
      auto v = parse_entropy_vector(line, &name);
      if (name.empty()) name = std::to_string(out.size() + 1);
      out.push_back({std::move(name), std::move(v)});
    } catch (const std::invalid_argument& e) {
      throw std::invalid_argument("line " + std::to_string(line_no) + ": " + e.what());
    }
  }
  return out;
}

}  // namespace ecw
