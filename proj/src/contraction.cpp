#include "ecw/contraction.hpp"

#include <algorithm>
#include <bit>
#include <numeric>
#include <stdexcept>

#include "json.hpp"

namespace ecw {
namespace {

constexpr Bits low_bits(int count) { return count >= 32 ? ~Bits{0} : (Bits{1} << count) - 1; }

std::int64_t weight_of(Bits mask, const std::vector<std::int64_t>& weights) {
  std::int64_t total = 0;
  while (mask != 0) {
    total += weights[static_cast<std::size_t>(std::countr_zero(mask))];
    mask &= mask - 1;
  }
  return total;
}

void require_fit(const ContractionCertificate& cert, const ContractionInstance& inst) {
  if (cert.lhs_weights != inst.lhs_weights || cert.rhs_weights != inst.rhs_weights) {
    throw std::invalid_argument("certificate weights do not match the inequality's coordinates");
  }
  const int l = inst.lhs_size();
  if (cert.image.size() != (std::size_t{1} << l)) {
    throw std::invalid_argument("certificate map is not total on {0,1}^" + std::to_string(l));
  }
  const Bits out_mask = low_bits(inst.rhs_size());
  for (Bits v : cert.image) {
    if ((v & ~out_mask) != 0) throw std::invalid_argument("certificate output longer than " + std::to_string(inst.rhs_size()) + " bits");
  }
}

ContractionCheck check_boundary(const ContractionCertificate& cert, const ContractionInstance& inst) {
  ContractionCheck result;
  for (std::size_t p = 0; p < inst.occurrences.size(); ++p) {
    const auto& occ = inst.occurrences[p];
    if (cert.image[occ.lhs] != occ.rhs) {
      result.kind = ContractionCheck::Kind::boundary;
      result.label = static_cast<int>(p);
      result.first = occ.lhs;
      result.second = occ.rhs;
      return result;
    }
  }
  return result;
}

ContractionCheck check_pairs(const ContractionCertificate& cert, const ContractionInstance& inst) {
  const std::size_t points = cert.image.size();
  ContractionCheck result;
  for (Bits u = 0; u < points; ++u) {
    for (Bits v = u + 1; v < points; ++v) {
      const auto dl = weight_of(u ^ v, inst.lhs_weights);
      const auto dr = weight_of(cert.image[u] ^ cert.image[v], inst.rhs_weights);
      if (dr > dl) return {ContractionCheck::Kind::pair, -1, u, v, dl, dr, result.examined};
      ++result.examined;
    }
  }
  return result;
}

// Depth-first over free-coordinate masks F (bits added in increasing order);
// level d keeps OR/AND of f over every subcube (F, fixed) with |F| = d.
class SubcubeChecker {
 public:
  SubcubeChecker(const ContractionCertificate& cert, const ContractionInstance& inst)
      : inst_(inst), l_(inst.lhs_size()), all_(low_bits(inst.lhs_size())) {
    const std::size_t points = std::size_t{1} << l_;
    or_.assign(static_cast<std::size_t>(l_) + 1, std::vector<Bits>(points));
    and_.assign(static_cast<std::size_t>(l_) + 1, std::vector<Bits>(points));
    or_[0] = cert.image;
    and_[0] = cert.image;
  }

  ContractionCheck run() {
    examined_ = std::uint64_t{1} << l_;
    visit(0, 0, 0);
    result_.examined = examined_;
    return result_;
  }

 private:
  bool visit(Bits free, int next_bit, int depth) {
    for (int b = next_bit; b < l_; ++b) {
      const Bits grown = free | (Bits{1} << b);
      const Bits fixed_range = all_ & ~grown;
      const auto dl = weight_of(grown, inst_.lhs_weights);
      auto& o = or_[depth + 1];
      auto& a = and_[depth + 1];
      const auto& po = or_[depth];
      const auto& pa = and_[depth];
      const Bits flip = Bits{1} << b;
      Bits fixed = fixed_range;
      while (true) {
        o[fixed] = po[fixed] | po[fixed | flip];
        a[fixed] = pa[fixed] & pa[fixed | flip];
        const auto dr = weight_of(o[fixed] & ~a[fixed], inst_.rhs_weights);
        if (dr > dl) {
          result_ = {ContractionCheck::Kind::subcube, -1, fixed, grown, dl, dr};
          return false;
        }
        ++examined_;
        if (fixed == 0) break;
        fixed = (fixed - 1) & fixed_range;
      }
      if (!visit(grown, b + 1, depth + 1)) return false;
    }
    return true;
  }

  const ContractionInstance& inst_;
  int l_;
  Bits all_;
  std::vector<std::vector<Bits>> or_;
  std::vector<std::vector<Bits>> and_;
  ContractionCheck result_;
  std::uint64_t examined_ = 0;
};

}  // namespace

std::string Bitstring::to_string() const {
  std::string s(static_cast<std::size_t>(length), '0');
  for (int i = 0; i < length; ++i) {
    if ((bits >> i) & 1U) s[static_cast<std::size_t>(i)] = '1';
  }
  return s;
}

Bitstring Bitstring::parse(std::string_view text) {
  if (text.size() > 32) throw std::invalid_argument("bitstring longer than 32");
  Bitstring b{0, static_cast<int>(text.size())};
  for (std::size_t i = 0; i < text.size(); ++i) {
    if (text[i] == '1') {
      b.bits |= Bits{1} << i;
    } else if (text[i] != '0') {
      throw std::invalid_argument("bitstring '" + std::string(text) + "' has a non-binary character");
    }
  }
  return b;
}

std::string mode_name(ContractionMode mode) {
  return mode == ContractionMode::graph ? "graph" : "hypergraph";
}

ContractionMode parse_mode(std::string_view name) {
  if (name == "graph") return ContractionMode::graph;
  if (name == "hypergraph") return ContractionMode::hypergraph;
  throw std::invalid_argument("mode must be 'graph' or 'hypergraph', got '" + std::string(name) + "'");
}

ContractionInstance build_instance(const Inequality& q, CoefficientEncoding encoding) {
  const auto& coeffs = q.coefficients();
  const std::int64_t scale = lcm_of_denominators(coeffs.data(), coeffs.data() + coeffs.size());
  const auto& index = SubsetIndex::get(q.parties());

  ContractionInstance inst{q, encoding, {}, {}, {}, {}, {}};
  for (std::size_t i = 0; i < index.size(); ++i) {
    const Rational scaled = coeffs[i] * scale;
    const std::int64_t c = scaled.numerator();
    if (c == 0) continue;
    auto& terms = c > 0 ? inst.lhs_terms : inst.rhs_terms;
    auto& weights = c > 0 ? inst.lhs_weights : inst.rhs_weights;
    const std::int64_t magnitude = c > 0 ? c : -c;
    if (encoding == CoefficientEncoding::weighted) {
      terms.push_back(index.subset(i));
      weights.push_back(magnitude);
    } else {
      for (std::int64_t k = 0; k < magnitude; ++k) {
        terms.push_back(index.subset(i));
        weights.push_back(1);
      }
    }
  }
  if (inst.lhs_terms.empty() || inst.rhs_terms.empty()) {
    throw std::invalid_argument("contraction needs terms on both sides of the inequality");
  }
  if (inst.lhs_size() > kMaxContractionBits || inst.rhs_size() > kMaxContractionBits) {
    throw std::invalid_argument("too many terms for a contraction instance (max " +
                                std::to_string(kMaxContractionBits) + " per side)");
  }
  for (int p = 0; p <= q.parties(); ++p) {
    OccurrencePair occ;
    if (p < q.parties()) {
      const PartyMask bit = PartyMask{1} << p;
      for (int a = 0; a < inst.lhs_size(); ++a) {
        if (inst.lhs_terms[a] & bit) occ.lhs |= Bits{1} << a;
      }
      for (int b = 0; b < inst.rhs_size(); ++b) {
        if (inst.rhs_terms[b] & bit) occ.rhs |= Bits{1} << b;
      }
    }
    inst.occurrences.push_back(occ);
  }
  return inst;
}

Rational multiway_distance(std::span<const Rational> weights, std::span<const Bitstring> strings) {
  if (strings.empty()) throw std::invalid_argument("multiway distance needs at least one string");
  Bits any = 0;
  Bits every = ~Bits{0};
  for (const auto& s : strings) {
    if (static_cast<std::size_t>(s.length) != weights.size()) {
      throw std::invalid_argument("string length " + std::to_string(s.length) + " does not match " +
                                  std::to_string(weights.size()) + " weights");
    }
    any |= s.bits;
    every &= s.bits;
  }
  Rational total(0);
  for (std::size_t i = 0; i < weights.size(); ++i) {
    if (((any & ~every) >> i) & 1U) total += weights[i];
  }
  return total;
}

std::string ContractionCheck::describe(int l, int r) const {
  switch (kind) {
    case Kind::ok:
      return "ok";
    case Kind::boundary:
      return "boundary condition fails for label " + std::to_string(label) + ": f(" +
             Bitstring{first, l}.to_string() + ") must be " + Bitstring{second, r}.to_string();
    case Kind::pair:
      return "pair " + Bitstring{first, l}.to_string() + ", " + Bitstring{second, l}.to_string() +
             " expands: " + std::to_string(rhs_distance) + " > " + std::to_string(lhs_distance);
    case Kind::subcube: {
      std::string cube(static_cast<std::size_t>(l), '0');
      for (int i = 0; i < l; ++i) {
        if ((second >> i) & 1U) {
          cube[static_cast<std::size_t>(i)] = '*';
        } else if ((first >> i) & 1U) {
          cube[static_cast<std::size_t>(i)] = '1';
        }
      }
      return "subcube " + cube + " expands: " + std::to_string(rhs_distance) + " > " +
             std::to_string(lhs_distance);
    }
  }
  return "?";
}

ContractionCheck check_contraction(const ContractionCertificate& cert, const ContractionInstance& inst) {
  require_fit(cert, inst);
  if (auto boundary = check_boundary(cert, inst); !boundary.ok()) return boundary;
  if (cert.mode == ContractionMode::graph) return check_pairs(cert, inst);
  if (inst.lhs_size() > 20) throw std::invalid_argument("subcube verification supports at most 20 lhs bits");
  return SubcubeChecker(cert, inst).run();
}

ContractionCheck check_contraction_all_subsets(const ContractionCertificate& cert, const ContractionInstance& inst) {
  require_fit(cert, inst);
  if (auto boundary = check_boundary(cert, inst); !boundary.ok()) return boundary;
  const int l = inst.lhs_size();
  if (l > 4) throw std::invalid_argument("all-subsets check limited to l <= 4");
  const std::size_t points = std::size_t{1} << l;
  const std::uint64_t sets = std::uint64_t{1} << points;
  for (std::uint64_t set = 1; set < sets; ++set) {
    Bits in_or = 0, in_and = ~Bits{0}, out_or = 0, out_and = ~Bits{0};
    for (Bits u = 0; u < points; ++u) {
      if (!((set >> u) & 1U)) continue;
      in_or |= u;
      in_and &= u;
      out_or |= cert.image[u];
      out_and &= cert.image[u];
    }
    const auto dl = weight_of(in_or & ~in_and, inst.lhs_weights);
    const auto dr = weight_of(out_or & ~out_and, inst.rhs_weights);
    if (dr > dl) return {ContractionCheck::Kind::subcube, -1, static_cast<Bits>(set), 0, dl, dr, set - 1};
  }
  ContractionCheck result;
  result.examined = sets - 1;
  return result;
}

namespace {

class ContractionSearch {
 public:
  ContractionSearch(const ContractionInstance& inst, ContractionMode mode, const SearchOptions& options)
      : inst_(inst),
        mode_(mode),
        options_(options),
        l_(inst.lhs_size()),
        r_(inst.rhs_size()),
        points_(std::size_t{1} << inst.lhs_size()),
        outputs_(std::size_t{1} << inst.rhs_size()),
        words_((outputs_ + 63) / 64),
        assigned_(points_, false),
        image_(points_, 0),
        domain_(points_ * words_, ~std::uint64_t{0}) {
    if (outputs_ % 64 != 0) {
      const std::uint64_t tail = (std::uint64_t{1} << (outputs_ % 64)) - 1;
      for (std::size_t v = 0; v < points_; ++v) domain_[v * words_ + words_ - 1] = tail;
    }
  }

  ContractionSearchResult run() {
    ContractionSearchResult result;
    for (const auto& occ : inst_.occurrences) {
      if (assigned_[occ.lhs]) {
        if (image_[occ.lhs] != occ.rhs) return exhausted(result);
        continue;
      }
      if (!domain_has(occ.lhs, occ.rhs) || !feasible(occ.lhs, occ.rhs) || !assign(occ.lhs, occ.rhs)) {
        return exhausted(result);
      }
    }
    // The boundary assignments are never undone.
    trail_.clear();

    struct Frame {
      Bits input;
      std::vector<Bits> candidates;
      std::size_t next = 0;
      std::size_t trail_mark = 0;
    };
    std::vector<Frame> stack;
    auto open_frame = [&]() -> bool {
      const auto v = select_input();
      if (!v) return false;
      stack.push_back({*v, ordered_candidates(*v), 0, trail_.size()});
      return true;
    };
    if (!open_frame()) return found(result);
    while (!stack.empty()) {
      Frame& top = stack.back();
      if (assigned_[top.input]) unassign(top.input, top.trail_mark);
      if (top.next == top.candidates.size()) {
        stack.pop_back();
        continue;
      }
      if (options_.max_nodes != 0 && result.nodes >= options_.max_nodes) return result;
      ++result.nodes;
      const Bits c = top.candidates[top.next++];
      if (!assign(top.input, c)) continue;
      if (!open_frame()) return found(result);
    }
    return exhausted(result);
  }

 private:
  ContractionSearchResult& exhausted(ContractionSearchResult& result) {
    result.exhausted = true;
    return result;
  }

  ContractionSearchResult& found(ContractionSearchResult& result) {
    result.certificate = ContractionCertificate{mode_, inst_.encoding, inst_.lhs_weights, inst_.rhs_weights,
                                                image_, inst_.source.parties(),
                                                format_inequality(inst_.source.with_name({}))};
    result.exhausted = false;
    return result;
  }

  bool domain_has(Bits v, Bits c) const { return (domain_[v * words_ + c / 64] >> (c % 64)) & 1U; }

  std::size_t domain_size(Bits v) const {
    std::size_t total = 0;
    for (std::size_t w = 0; w < words_; ++w) total += static_cast<std::size_t>(std::popcount(domain_[v * words_ + w]));
    return total;
  }

  // Unassigned input with the fewest remaining outputs; ties go to lower
  // Hamming weight, then lower value.
  std::optional<Bits> select_input() const {
    std::optional<Bits> best;
    std::size_t best_size = 0;
    for (Bits v = 0; v < points_; ++v) {
      if (assigned_[v]) continue;
      const auto size = domain_size(v);
      if (!best || size < best_size ||
          (size == best_size && std::popcount(v) < std::popcount(*best))) {
        best = v;
        best_size = size;
      }
    }
    return best;
  }

  // Outputs still in the domain that satisfy every constraint with the
  // assigned inputs, nearest to the images of assigned neighbours first.
  std::vector<Bits> ordered_candidates(Bits u) const {
    std::vector<std::pair<std::int64_t, Bits>> scored;
    for (Bits c = 0; c < outputs_; ++c) {
      if (!domain_has(u, c) || !feasible(u, c)) continue;
      std::int64_t cost = 0;
      for (int b = 0; b < l_; ++b) {
        const Bits v = u ^ (Bits{1} << b);
        if (assigned_[v]) cost += weight_of(c ^ image_[v], inst_.rhs_weights);
      }
      scored.emplace_back(cost, c);
    }
    std::sort(scored.begin(), scored.end());
    std::vector<Bits> out;
    out.reserve(scored.size());
    for (const auto& entry : scored) out.push_back(entry.second);
    return out;
  }

  // Sets f(u) = c and prunes the domains of unassigned inputs against the
  // smallest subcube containing u and them. False on a wiped-out domain.
  bool assign(Bits u, Bits c) {
    assigned_[u] = true;
    image_[u] = c;
    for (Bits v = 0; v < points_; ++v) {
      if (assigned_[v]) continue;
      const Bits free = u ^ v;
      Bits any = c;
      Bits every = c;
      if (mode_ == ContractionMode::hypergraph) {
        const Bits base = u & ~free;
        for (Bits t = free;; t = (t - 1) & free) {
          const Bits p = base | t;
          if (assigned_[p]) {
            any |= image_[p];
            every &= image_[p];
          }
          if (t == 0) break;
        }
      }
      const auto budget = weight_of(free, inst_.lhs_weights);
      bool nonempty = false;
      for (std::size_t w = 0; w < words_; ++w) {
        std::uint64_t& word = domain_[v * words_ + w];
        std::uint64_t keep = word;
        for (std::uint64_t bits = word; bits != 0; bits &= bits - 1) {
          const Bits d = static_cast<Bits>(w * 64 + static_cast<std::size_t>(std::countr_zero(bits)));
          if (weight_of((any | d) & ~(every & d), inst_.rhs_weights) > budget) {
            keep &= ~(std::uint64_t{1} << (d % 64));
          }
        }
        if (keep != word) {
          trail_.push_back({v * words_ + w, word});
          word = keep;
        }
        nonempty = nonempty || keep != 0;
      }
      if (!nonempty) return false;
    }
    return true;
  }

  void unassign(Bits u, std::size_t trail_mark) {
    while (trail_.size() > trail_mark) {
      domain_[trail_.back().first] = trail_.back().second;
      trail_.pop_back();
    }
    assigned_[u] = false;
  }

  bool feasible(Bits u, Bits c) const {
    if (mode_ == ContractionMode::graph) {
      for (Bits v = 0; v < points_; ++v) {
        if (!assigned_[v] || v == u) continue;
        if (weight_of(c ^ image_[v], inst_.rhs_weights) > weight_of(u ^ v, inst_.lhs_weights)) return false;
      }
      return true;
    }
    // Every subcube through u: free coordinates F, points u ^ T for T in F.
    const Bits all = low_bits(l_);
    for (Bits free = 1; free <= all; ++free) {
      Bits any = c;
      Bits every = c;
      bool others = false;
      for (Bits t = free;; t = (t - 1) & free) {
        const Bits v = u ^ t;
        if (t != 0 && assigned_[v]) {
          any |= image_[v];
          every &= image_[v];
          others = true;
        }
        if (t == 0) break;
      }
      if (others && weight_of(any & ~every, inst_.rhs_weights) > weight_of(free, inst_.lhs_weights)) return false;
      if (free == all) break;
    }
    return true;
  }

  const ContractionInstance& inst_;
  ContractionMode mode_;
  SearchOptions options_;
  int l_;
  int r_;
  std::size_t points_;
  std::size_t outputs_;
  std::size_t words_;
  std::vector<bool> assigned_;
  std::vector<Bits> image_;
  std::vector<std::uint64_t> domain_;
  std::vector<std::pair<std::size_t, std::uint64_t>> trail_;
};

}  // namespace

ContractionSearchResult search_contraction(const ContractionInstance& inst, ContractionMode mode,
                                           const SearchOptions& options) {
  if (inst.lhs_size() > options.max_lhs_bits) {
    throw std::length_error("contraction search over " + std::to_string(inst.lhs_size()) +
                            " lhs bits exceeds the cap of " + std::to_string(options.max_lhs_bits));
  }
  if (inst.rhs_size() > 16) throw std::length_error("contraction search supports at most 16 rhs bits");
  return ContractionSearch(inst, mode, options).run();
}

std::string certificate_to_json(const ContractionCertificate& cert, int indent) {
  const int l = static_cast<int>(cert.lhs_weights.size());
  const int r = static_cast<int>(cert.rhs_weights.size());
  nlohmann::ordered_json doc;
  doc["mode"] = mode_name(cert.mode);
  doc["encoding"] = cert.encoding == CoefficientEncoding::weighted ? "weighted" : "repeated";
  doc["lhs_weights"] = cert.lhs_weights;
  doc["rhs_weights"] = cert.rhs_weights;
  nlohmann::ordered_json map = nlohmann::ordered_json::object();
  for (std::size_t u = 0; u < cert.image.size(); ++u) {
    map[Bitstring{static_cast<Bits>(u), l}.to_string()] = Bitstring{cert.image[u], r}.to_string();
  }
  doc["map"] = map;
  doc["parties"] = cert.parties;
  doc["inequality"] = cert.inequality;
  return doc.dump(indent);
}

ContractionCertificate parse_certificate_json(std::string_view json_text) {
  using nlohmann::json;
  try {
    const json doc = json::parse(json_text);
    ContractionCertificate cert;
    cert.mode = parse_mode(doc.at("mode").get<std::string>());
    const auto encoding = doc.value("encoding", std::string("repeated"));
    if (encoding == "weighted") {
      cert.encoding = CoefficientEncoding::weighted;
    } else if (encoding == "repeated") {
      cert.encoding = CoefficientEncoding::repeated;
    } else {
      throw std::invalid_argument("unknown encoding '" + encoding + "'");
    }
    cert.lhs_weights = doc.at("lhs_weights").get<std::vector<std::int64_t>>();
    cert.rhs_weights = doc.at("rhs_weights").get<std::vector<std::int64_t>>();
    const int l = static_cast<int>(cert.lhs_weights.size());
    const int r = static_cast<int>(cert.rhs_weights.size());
    if (l > kMaxContractionBits || r > kMaxContractionBits) throw std::invalid_argument("certificate too large");
    cert.image.assign(std::size_t{1} << l, 0);
    std::vector<bool> seen(cert.image.size(), false);
    for (const auto& [key, value] : doc.at("map").items()) {
      const auto in = Bitstring::parse(key);
      const auto out = Bitstring::parse(value.get<std::string>());
      if (in.length != l || out.length != r) {
        throw std::invalid_argument("map entry " + key + " has the wrong bit lengths");
      }
      if (seen[in.bits]) throw std::invalid_argument("map entry " + key + " repeated");
      seen[in.bits] = true;
      cert.image[in.bits] = out.bits;
    }
    if (std::find(seen.begin(), seen.end(), false) != seen.end()) {
      throw std::invalid_argument("certificate map is not total");
    }
    cert.inequality = doc.at("inequality").get<std::string>();
    cert.parties = doc.value("parties", 0);
    return cert;
  } catch (const json::exception& e) {
    throw std::invalid_argument(std::string("certificate JSON: ") + e.what());
  }
}

ContractionInstance instance_for(const ContractionCertificate& cert) {
  std::optional<int> n;
  if (cert.parties > 0) n = cert.parties;
  return build_instance(parse_inequality(cert.inequality, n), cert.encoding);
}

std::optional<SoundnessViolation> soundness_spot_check(const Inequality& q,
                                                       const std::vector<HypergraphModel>& models) {
  for (std::size_t i = 0; i < models.size(); ++i) {
    const Rational value = evaluate(q, entropy_vector(models[i]));
    if (value < 0) return SoundnessViolation{i, value};
  }
  return std::nullopt;
}

}  // namespace ecw
