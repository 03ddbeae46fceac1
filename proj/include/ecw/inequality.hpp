#pragma once

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "ecw/entropy_vector.hpp"
#include "ecw/rational.hpp"
#include "ecw/subsets.hpp"

namespace ecw {

/// Linear combination of entropies over label sets of the n parties plus
/// the purifier (bit n). Terms on sets containing the purifier are folded
/// onto their complements by reduce().
class EntropyExpr {
 public:
  using LabelMask = std::uint32_t;

  explicit EntropyExpr(int n_parties) : n_(n_parties) {}

  int parties() const { return n_; }
  LabelMask purifier() const { return LabelMask{1} << n_; }

  EntropyExpr& add(LabelMask labels, const Rational& coefficient);
  EntropyExpr& operator+=(const EntropyExpr& other);
  EntropyExpr& operator-=(const EntropyExpr& other);
  EntropyExpr& operator*=(const Rational& factor);

  // Dense coefficients over party subsets in SubsetIndex order.
  std::vector<Rational> reduce() const;

  static EntropyExpr entropy(int n, LabelMask labels);

 private:
  int n_;
  std::map<LabelMask, Rational> terms_;
};

EntropyExpr operator+(EntropyExpr a, const EntropyExpr& b);
EntropyExpr operator-(EntropyExpr a, const EntropyExpr& b);

// I(A:B) = S_A + S_B - S_AB
EntropyExpr mutual_information(int n, EntropyExpr::LabelMask a, EntropyExpr::LabelMask b);
// I(A:B|C) = S_AC + S_BC - S_ABC - S_C
EntropyExpr conditional_mutual_information(int n, EntropyExpr::LabelMask a, EntropyExpr::LabelMask b,
                                           EntropyExpr::LabelMask c);

/// sum_I coefficient_I * S_I >= 0.
class Inequality {
 public:
  Inequality(int n_parties, std::vector<Rational> coefficients, std::string name = {});
  Inequality(const EntropyExpr& expr, std::string name = {});

  int parties() const { return n_; }
  const std::vector<Rational>& coefficients() const { return coeffs_; }
  const Rational& coefficient(PartyMask subset) const;
  const std::string& name() const { return name_; }
  Inequality with_name(std::string name) const;

  // g(Q): coefficients move with the subsets they multiply.
  Inequality permuted(const LabelPermutation& g) const;

  // Equality ignores the name.
  friend bool operator==(const Inequality& a, const Inequality& b) {
    return a.n_ == b.n_ && a.coeffs_ == b.coeffs_;
  }

 private:
  int n_;
  std::vector<Rational> coeffs_;
  std::string name_;
};

// Grammar: [tag] side (">=" | "<=") side, where a side is a signed sum of
// terms "c*XYZ", "c XYZ", "XYZ" or "0", c integer or p/q, and an optional
// "S_" prefix on subsets. 'O' names the purifier. Without `n`, the party
// count is the highest letter used.
Inequality parse_inequality(std::string_view text, std::optional<int> n = std::nullopt);

// Positive terms in subset order, then negative terms: "1*AB + 2*ACE - 1*AC >= 0".
std::string format_inequality(const Inequality& q);

// One inequality per line; "n=K" lines fix the party count for the lines
// after them; '#' starts a comment.
std::vector<Inequality> parse_inequality_file(std::string_view text);

Rational evaluate(const Inequality& q, const EntropyVector& s);

enum class Family { SA, SSA, WeakMonotonicity, Ingleton, MMI };

std::optional<Family> family_from_name(std::string_view name);
std::string family_name(Family f);
int placeholder_count(Family f);

// Every instance obtained by substituting disjoint nonempty unions of the
// n + 1 labels for the family's placeholders, with identical coefficient
// vectors merged. Order follows the substitution enumeration.
std::vector<Inequality> instantiate_family(Family f, int n);

// Distinct images under all (n+1)! relabelings of parties and purifier; the
// input itself comes first.
std::vector<Inequality> symmetry_orbit(const Inequality& q);

// Lexicographically least coefficient vector in the orbit.
Inequality canonical_form(const Inequality& q);

// Per party, the sum of the coefficients of the terms containing it.
std::vector<Rational> balance_check(const Inequality& q);
std::vector<int> unbalanced_parties(const Inequality& q);

struct CheckReport {
  std::vector<Rational> values;
  std::vector<std::size_t> violated;
  std::vector<std::size_t> saturated;
  std::vector<std::size_t> strict;
};

CheckReport check_vector(const EntropyVector& s, const std::vector<Inequality>& qs);

}  // namespace ecw
