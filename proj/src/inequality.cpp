#include "ecw/inequality.hpp"

#include <algorithm>
#include <cctype>
#include <set>
#include <stdexcept>

#include "text_util.hpp"

namespace ecw {

EntropyExpr& EntropyExpr::add(LabelMask labels, const Rational& coefficient) {
  if (labels >= (purifier() << 1)) throw std::invalid_argument("label set outside the n + 1 labels");
  auto& c = terms_[labels];
  c += coefficient;
  if (c == Rational(0)) terms_.erase(labels);
  return *this;
}

EntropyExpr& EntropyExpr::operator+=(const EntropyExpr& other) {
  if (other.n_ != n_) throw std::invalid_argument("party count mismatch");
  for (const auto& [labels, c] : other.terms_) add(labels, c);
  return *this;
}

EntropyExpr& EntropyExpr::operator-=(const EntropyExpr& other) {
  if (other.n_ != n_) throw std::invalid_argument("party count mismatch");
  for (const auto& [labels, c] : other.terms_) add(labels, -c);
  return *this;
}

EntropyExpr& EntropyExpr::operator*=(const Rational& factor) {
  if (factor == Rational(0)) {
    terms_.clear();
    return *this;
  }
  for (auto& [labels, c] : terms_) c *= factor;
  return *this;
}

std::vector<Rational> EntropyExpr::reduce() const {
  const auto& index = SubsetIndex::get(n_);
  std::vector<Rational> out(index.size(), Rational(0));
  const LabelMask all = (purifier() << 1) - 1;
  for (const auto& [labels, c] : terms_) {
    const LabelMask parties = (labels & purifier()) ? (all & ~labels) : labels;
    if (parties != 0) out[index.index(parties)] += c;
  }
  return out;
}

EntropyExpr EntropyExpr::entropy(int n, LabelMask labels) {
  EntropyExpr e(n);
  e.add(labels, Rational(1));
  return e;
}

EntropyExpr operator+(EntropyExpr a, const EntropyExpr& b) { return a += b; }
EntropyExpr operator-(EntropyExpr a, const EntropyExpr& b) { return a -= b; }

EntropyExpr mutual_information(int n, EntropyExpr::LabelMask a, EntropyExpr::LabelMask b) {
  return EntropyExpr::entropy(n, a) + EntropyExpr::entropy(n, b) - EntropyExpr::entropy(n, a | b);
}

EntropyExpr conditional_mutual_information(int n, EntropyExpr::LabelMask a, EntropyExpr::LabelMask b,
                                           EntropyExpr::LabelMask c) {
  return EntropyExpr::entropy(n, a | c) + EntropyExpr::entropy(n, b | c) - EntropyExpr::entropy(n, a | b | c) -
         EntropyExpr::entropy(n, c);
}

Inequality::Inequality(int n_parties, std::vector<Rational> coefficients, std::string name)
    : n_(n_parties), coeffs_(std::move(coefficients)), name_(std::move(name)) {
  if (coeffs_.size() != SubsetIndex::get(n_).size()) {
    throw std::invalid_argument("inequality for " + std::to_string(n_) + " parties needs " +
                                std::to_string(SubsetIndex::get(n_).size()) + " coefficients");
  }
  if (std::all_of(coeffs_.begin(), coeffs_.end(), [](const Rational& c) { return c == Rational(0); })) {
    throw std::invalid_argument("inequality has no nonzero coefficient");
  }
}

Inequality::Inequality(const EntropyExpr& expr, std::string name)
    : Inequality(expr.parties(), expr.reduce(), std::move(name)) {}

const Rational& Inequality::coefficient(PartyMask subset) const {
  return coeffs_[SubsetIndex::get(n_).index(subset)];
}

Inequality Inequality::with_name(std::string name) const {
  Inequality copy = *this;
  copy.name_ = std::move(name);
  return copy;
}

Inequality Inequality::permuted(const LabelPermutation& g) const {
  if (g.parties() != n_) throw std::invalid_argument("permutation acts on a different party count");
  const auto& index = SubsetIndex::get(n_);
  std::vector<Rational> out(index.size(), Rational(0));
  for (std::size_t i = 0; i < index.size(); ++i) {
    if (coeffs_[i] == Rational(0)) continue;
    const PartyMask image = g.apply(index.subset(i));
    if (image != 0) out[index.index(image)] += coeffs_[i];
  }
  return Inequality(n_, std::move(out), name_);
}

namespace {

struct Term {
  Rational coefficient;
  std::string label;
};

struct ParsedSides {
  std::vector<Term> lhs;
  std::vector<Term> rhs;
  bool less_equal = false;
};

class InequalityLexer {
 public:
  explicit InequalityLexer(std::string_view text) : text_(text) {}

  ParsedSides parse() {
    ParsedSides sides;
    sides.lhs = parse_side();
    skip_space();
    if (text_.substr(pos_, 2) == ">=") {
      sides.less_equal = false;
    } else if (text_.substr(pos_, 2) == "<=") {
      sides.less_equal = true;
    } else {
      fail("expected '>=' or '<='");
    }
    pos_ += 2;
    sides.rhs = parse_side();
    skip_space();
    if (pos_ != text_.size()) fail("unexpected trailing input");
    return sides;
  }

 private:
  std::vector<Term> parse_side() {
    std::vector<Term> terms;
    bool first = true;
    while (true) {
      skip_space();
      Rational sign(1);
      if (peek() == '+' || peek() == '-') {
        sign = peek() == '-' ? Rational(-1) : Rational(1);
        ++pos_;
        skip_space();
      } else if (!first) {
        break;
      }
      first = false;
      Rational coefficient(1);
      bool have_number = false;
      if (std::isdigit(static_cast<unsigned char>(peek()))) {
        const auto start = pos_;
        while (std::isdigit(static_cast<unsigned char>(peek())) || peek() == '/') ++pos_;
        try {
          coefficient = parse_rational(text_.substr(start, pos_ - start));
        } catch (const std::invalid_argument& e) {
          fail(e.what());
        }
        have_number = true;
        skip_space();
        if (peek() == '*') {
          ++pos_;
          skip_space();
        }
      }
      std::string label;
      if (text_.substr(pos_, 2) == "S_") pos_ += 2;
      while (std::isupper(static_cast<unsigned char>(peek()))) label.push_back(text_[pos_++]);
      if (label.empty()) {
        if (have_number && coefficient == Rational(0)) continue;
        fail("expected an entropy term");
      }
      terms.push_back({sign * coefficient, label});
    }
    return terms;
  }

  char peek() const { return pos_ < text_.size() ? text_[pos_] : '\0'; }
  void skip_space() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }
  [[noreturn]] void fail(const std::string& message) const {
    throw std::invalid_argument("column " + std::to_string(pos_ + 1) + ": " + message);
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

int highest_party(const std::vector<Term>& terms) {
  int n = 0;
  for (const auto& t : terms) {
    for (char c : t.label) {
      if (c != kPurifierLetter) n = std::max(n, c - 'A' + 1);
    }
  }
  return n;
}

}  // namespace

Inequality parse_inequality(std::string_view text, std::optional<int> n) {
  std::string_view rest = detail::trim(text);
  std::string name = detail::take_tag(rest);
  ParsedSides sides = InequalityLexer(rest).parse();
  const int parties = n.value_or(std::max(highest_party(sides.lhs), highest_party(sides.rhs)));
  require_party_count(parties);
  EntropyExpr expr(parties);
  auto accumulate = [&](const std::vector<Term>& terms, const Rational& sign) {
    for (const auto& t : terms) {
      bool purifier = false;
      const PartyMask mask = parse_subset_label(t.label, parties, &purifier);
      expr.add(mask | (purifier ? expr.purifier() : 0), sign * t.coefficient);
    }
  };
  const Rational lhs_sign = sides.less_equal ? Rational(-1) : Rational(1);
  accumulate(sides.lhs, lhs_sign);
  accumulate(sides.rhs, -lhs_sign);
  return Inequality(expr, std::move(name));
}

std::string format_inequality(const Inequality& q) {
  const auto& index = SubsetIndex::get(q.parties());
  std::string out;
  auto emit = [&](bool negative_pass) {
    for (std::size_t i = 0; i < index.size(); ++i) {
      const Rational& c = q.coefficients()[i];
      if (c == Rational(0) || (c < 0) != negative_pass) continue;
      if (out.empty()) {
        if (c < 0) out += "-";
      } else {
        out += c < 0 ? " - " : " + ";
      }
      out += format_rational(c < 0 ? -c : c) + "*" + subset_label(index.subset(i));
    }
  };
  emit(false);
  emit(true);
  out += " >= 0";
  if (!q.name().empty()) out = "[" + q.name() + "] " + out;
  return out;
}

std::vector<Inequality> parse_inequality_file(std::string_view text) {
  std::vector<Inequality> out;
  std::optional<int> n;
  int line_no = 0;
  for (std::string_view line : detail::lines(text)) {
    ++line_no;
    line = detail::strip_comment(line);
    if (line.empty()) continue;
    try {
      if (line.substr(0, 2) == "n=") {
        n = std::stoi(std::string(line.substr(2)));
        require_party_count(*n);
        continue;
      }
      out.push_back(parse_inequality(line, n));
    } catch (const std::exception& e) {
      throw std::invalid_argument("line " + std::to_string(line_no) + ": " + e.what());
    }
  }
  return out;
}

Rational evaluate(const Inequality& q, const EntropyVector& s) {
  if (q.parties() != s.parties()) {
    throw std::invalid_argument("inequality has " + std::to_string(q.parties()) + " parties, vector has " +
                                std::to_string(s.parties()));
  }
  Rational total(0);
  for (std::size_t i = 0; i < s.size(); ++i) total += q.coefficients()[i] * s.entries()[i];
  return total;
}

std::optional<Family> family_from_name(std::string_view name) {
  std::string upper;
  for (char c : name) upper.push_back(static_cast<char>(std::toupper(static_cast<unsigned char>(c))));
  if (upper == "SA") return Family::SA;
  if (upper == "SSA") return Family::SSA;
  if (upper == "WM" || upper == "WEAKMONOTONICITY") return Family::WeakMonotonicity;
  if (upper == "INGLETON") return Family::Ingleton;
  if (upper == "MMI") return Family::MMI;
  return std::nullopt;
}

std::string family_name(Family f) {
  switch (f) {
    case Family::SA: return "SA";
    case Family::SSA: return "SSA";
    case Family::WeakMonotonicity: return "WM";
    case Family::Ingleton: return "Ingleton";
    case Family::MMI: return "MMI";
  }
  return "?";
}

int placeholder_count(Family f) {
  switch (f) {
    case Family::SA: return 2;
    case Family::SSA:
    case Family::WeakMonotonicity:
    case Family::MMI: return 3;
    case Family::Ingleton: return 4;
  }
  return 0;
}

namespace {

EntropyExpr family_expression(Family f, int n, const std::vector<EntropyExpr::LabelMask>& p) {
  auto S = [n](EntropyExpr::LabelMask m) { return EntropyExpr::entropy(n, m); };
  switch (f) {
    case Family::SA:
      return S(p[0]) + S(p[1]) - S(p[0] | p[1]);
    case Family::SSA:
      return S(p[0] | p[1]) + S(p[1] | p[2]) - S(p[0] | p[1] | p[2]) - S(p[1]);
    case Family::WeakMonotonicity:
      return S(p[0] | p[1]) + S(p[1] | p[2]) - S(p[0]) - S(p[2]);
    case Family::Ingleton:
      return conditional_mutual_information(n, p[0], p[1], p[2]) +
             conditional_mutual_information(n, p[0], p[1], p[3]) + mutual_information(n, p[2], p[3]) -
             mutual_information(n, p[0], p[1]);
    case Family::MMI:
      return S(p[0] | p[1]) + S(p[0] | p[2]) + S(p[1] | p[2]) - S(p[0]) - S(p[1]) - S(p[2]) -
             S(p[0] | p[1] | p[2]);
  }
  throw std::logic_error("unknown family");
}

std::string label_set_name(EntropyExpr::LabelMask m, int n) {
  std::string s = subset_label(m & full_mask(n));
  if (m & (EntropyExpr::LabelMask{1} << n)) s.push_back(kPurifierLetter);
  return s;
}

}  // namespace

std::vector<Inequality> instantiate_family(Family f, int n) {
  require_party_count(n);
  const int k = placeholder_count(f);
  if (n + 1 < k) {
    throw std::invalid_argument(family_name(f) + " needs at least " + std::to_string(k - 1) + " parties, got " +
                                std::to_string(n));
  }
  const int labels = n + 1;
  std::vector<int> slot(static_cast<std::size_t>(labels), 0);  // 0 = unused, 1..k placeholder
  std::set<std::vector<Rational>> seen;
  std::vector<Inequality> out;
  while (true) {
    std::vector<EntropyExpr::LabelMask> p(static_cast<std::size_t>(k), 0);
    for (int l = 0; l < labels; ++l) {
      if (slot[l] > 0) p[slot[l] - 1] |= EntropyExpr::LabelMask{1} << l;
    }
    if (std::all_of(p.begin(), p.end(), [](auto m) { return m != 0; })) {
      auto coeffs = family_expression(f, n, p).reduce();
      const bool nonzero = std::any_of(coeffs.begin(), coeffs.end(), [](const Rational& c) { return c != Rational(0); });
      if (nonzero && seen.insert(coeffs).second) {
        std::string name = family_name(f) + "(";
        for (int i = 0; i < k; ++i) name += (i ? "," : "") + label_set_name(p[i], n);
        out.emplace_back(n, std::move(coeffs), name + ")");
      }
    }
    int pos = 0;
    while (pos < labels && slot[pos] == k) slot[pos++] = 0;
    if (pos == labels) break;
    ++slot[pos];
  }
  return out;
}

std::vector<Inequality> symmetry_orbit(const Inequality& q) {
  if (q.parties() > 7) throw std::invalid_argument("symmetry orbits supported for at most 7 parties");
  std::set<std::vector<Rational>> seen;
  std::vector<Inequality> orbit;
  for (const auto& g : all_label_permutations(q.parties())) {
    Inequality image = q.permuted(g);
    if (seen.insert(image.coefficients()).second) orbit.push_back(std::move(image));
  }
  return orbit;
}

Inequality canonical_form(const Inequality& q) {
  const auto orbit = symmetry_orbit(q);
  const auto best = std::min_element(orbit.begin(), orbit.end(), [](const Inequality& a, const Inequality& b) {
    return a.coefficients() < b.coefficients();
  });
  return *best;
}

std::vector<Rational> balance_check(const Inequality& q) {
  const auto& index = SubsetIndex::get(q.parties());
  std::vector<Rational> sums(static_cast<std::size_t>(q.parties()), Rational(0));
  for (std::size_t i = 0; i < index.size(); ++i) {
    for (int p = 0; p < q.parties(); ++p) {
      if (index.subset(i) & (PartyMask{1} << p)) sums[p] += q.coefficients()[i];
    }
  }
  return sums;
}

std::vector<int> unbalanced_parties(const Inequality& q) {
  std::vector<int> out;
  const auto sums = balance_check(q);
  for (std::size_t p = 0; p < sums.size(); ++p) {
    if (sums[p] != Rational(0)) out.push_back(static_cast<int>(p));
  }
  return out;
}

CheckReport check_vector(const EntropyVector& s, const std::vector<Inequality>& qs) {
  CheckReport report;
  report.values.reserve(qs.size());
  for (std::size_t i = 0; i < qs.size(); ++i) {
    const Rational v = evaluate(qs[i], s);
    report.values.push_back(v);
    (v < 0 ? report.violated : v == Rational(0) ? report.saturated : report.strict).push_back(i);
  }
  return report;
}

}  // namespace ecw
