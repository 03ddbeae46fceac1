#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "ecw/hypergraph.hpp"
#include "ecw/inequality.hpp"

namespace ecw {

using Bits = std::uint32_t;

/// Fixed-length bitstring; character a of the text form is bit a.
struct Bitstring {
  Bits bits = 0;
  int length = 0;

  std::string to_string() const;
  static Bitstring parse(std::string_view text);
  friend bool operator==(const Bitstring&, const Bitstring&) = default;
};

enum class ContractionMode { graph, hypergraph };
std::string mode_name(ContractionMode mode);
ContractionMode parse_mode(std::string_view name);

// How integer coefficients > 1 become coordinates.
enum class CoefficientEncoding { weighted, repeated };

struct OccurrencePair {
  Bits lhs = 0;
  Bits rhs = 0;
};

/// Inequality sum_a w_a S_{L_a} >= sum_b v_b S_{R_b} laid out as bit
/// coordinates. occurrences[p] says in which terms label p appears; the last
/// entry (the purifier) is all zeros on both sides.
struct ContractionInstance {
  Inequality source;
  CoefficientEncoding encoding = CoefficientEncoding::repeated;
  std::vector<PartyMask> lhs_terms;
  std::vector<std::int64_t> lhs_weights;
  std::vector<PartyMask> rhs_terms;
  std::vector<std::int64_t> rhs_weights;
  std::vector<OccurrencePair> occurrences;

  int lhs_size() const { return static_cast<int>(lhs_terms.size()); }
  int rhs_size() const { return static_cast<int>(rhs_terms.size()); }
};

inline constexpr int kMaxContractionBits = 24;

// Coefficients are cleared to integers by their common denominator.
ContractionInstance build_instance(const Inequality& q,
                                   CoefficientEncoding encoding = CoefficientEncoding::repeated);

// sum_i weight_i * [the strings do not all agree at coordinate i].
Rational multiway_distance(std::span<const Rational> weights, std::span<const Bitstring> strings);

/// Total map f: {0,1}^l -> {0,1}^r, image[u] = f(u).
struct ContractionCertificate {
  ContractionMode mode = ContractionMode::hypergraph;
  CoefficientEncoding encoding = CoefficientEncoding::repeated;
  std::vector<std::int64_t> lhs_weights;
  std::vector<std::int64_t> rhs_weights;
  std::vector<Bits> image;
  int parties = 0;
  std::string inequality;  // format_inequality of the source
};

struct ContractionCheck {
  enum class Kind { ok, boundary, pair, subcube };
  Kind kind = Kind::ok;
  int label = -1;            // boundary: offending label (n = purifier)
  Bits first = 0;            // boundary: input; pair: u; subcube: fixed values
  Bits second = 0;           // boundary: expected output; pair: v; subcube: free mask
  std::int64_t lhs_distance = 0;
  std::int64_t rhs_distance = 0;
  std::uint64_t examined = 0;  // pairs or subcubes (points included) that passed

  bool ok() const { return kind == Kind::ok; }
  std::string describe(int l, int r) const;
};

// Throws std::invalid_argument if the certificate does not fit the instance
// (weights, map size, output range); contraction failures are reported in
// the result.
ContractionCheck check_contraction(const ContractionCertificate& cert, const ContractionInstance& inst);

// The all-subsets form of the hypergraph condition: every nonempty set of
// inputs, 2^(2^l) of them. Exponential; only for small l.
ContractionCheck check_contraction_all_subsets(const ContractionCertificate& cert,
                                               const ContractionInstance& inst);

struct SearchOptions {
  int max_lhs_bits = 16;
  std::uint64_t max_nodes = 0;  // 0 = unlimited
};

struct ContractionSearchResult {
  std::optional<ContractionCertificate> certificate;
  bool exhausted = false;  // false only when max_nodes stopped the search
  std::uint64_t nodes = 0;
};

// Backtracking over inputs in Hamming-weight order with incremental checks.
// Not finding a map does not disprove the inequality.
ContractionSearchResult search_contraction(const ContractionInstance& inst, ContractionMode mode,
                                           const SearchOptions& options = {});

std::string certificate_to_json(const ContractionCertificate& cert, int indent = 2);
ContractionCertificate parse_certificate_json(std::string_view json_text);
// Rebuilds the instance the certificate claims to prove.
ContractionInstance instance_for(const ContractionCertificate& cert);

struct SoundnessViolation {
  std::size_t model_index;
  Rational value;
};

// Evaluates q on every model's entropy vector; any negative value means the
// claimed proof is unsound.
std::optional<SoundnessViolation> soundness_spot_check(const Inequality& q,
                                                       const std::vector<HypergraphModel>& models);

}  // namespace ecw
