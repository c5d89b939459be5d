#pragma once

// The Poincare series of multiplier ideals, sum over jumping numbers of
// dim(J(p^{iota^<}) / J(p^iota)) t^iota, computed two ways: directly from
// colengths, and from the closed form
//
//   P(t) = 1/(1-t) S(t) + (1/(1-t) + t/(1-t)^2) O(t),
//
// with S(t) the sum of t^iota over iota < 1 in H_1..H_{g*} and O(t) the sum
// over Omega.

#include <mulseries/arithmetic.hpp>
#include <mulseries/complete_ideals.hpp>
#include <mulseries/errors.hpp>
#include <mulseries/jumping_analysis.hpp>
#include <mulseries/valuation_model.hpp>

#include <json.hpp>

#include <cstddef>
#include <limits>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

namespace mulseries {

/// Finite sum of c t^x with rational exponents x > 0, stored as integer
/// numerators over a single denominator.
class FractionalPolynomial {
 public:
  explicit FractionalPolynomial(Integer denominator = 1) : denominator_(std::move(denominator)) {
    if (denominator_ < 1) throw std::invalid_argument("denominator must be positive");
  }

  const Integer& denominator() const { return denominator_; }

  /// Numerator -> coefficient over denominator().
  const std::map<Integer, Integer>& numerators() const { return terms_; }

  bool empty() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }

  void add(const Rational& exponent, const Integer& coeff) {
    if (exponent <= 0) throw std::invalid_argument("exponents must be positive");
    if (coeff == 0) return;
    Integer den = mulseries::denominator(exponent);
    if (denominator_ % den != 0) rescale(lcm(denominator_, den));
    Integer num = mulseries::numerator(exponent) * (denominator_ / den);
    auto [it, inserted] = terms_.emplace(num, coeff);
    if (!inserted) {
      it->second += coeff;
      if (it->second == 0) terms_.erase(it);
    }
  }

  Integer coefficient(const Rational& exponent) const {
    Rational scaled = exponent * denominator_;
    if (!is_integral(scaled)) return 0;
    auto it = terms_.find(numerator(scaled));
    return it == terms_.end() ? Integer(0) : it->second;
  }

  /// Re-expresses the terms over a multiple of the current denominator.
  void rescale(const Integer& new_denominator) {
    if (new_denominator % denominator_ != 0)
      throw std::invalid_argument("new denominator must be a multiple of " + denominator_.str());
    Integer factor = new_denominator / denominator_;
    std::map<Integer, Integer> scaled;
    for (auto& [num, c] : terms_) scaled.emplace(num * factor, c);
    terms_ = std::move(scaled);
    denominator_ = new_denominator;
  }

  /// (exponent, coefficient) pairs in ascending exponent order.
  std::vector<std::pair<Rational, Integer>> terms() const {
    std::vector<std::pair<Rational, Integer>> out;
    out.reserve(terms_.size());
    for (auto& [num, c] : terms_) out.emplace_back(Rational(num, denominator_), c);
    return out;
  }

  /// Equality of the represented sums, independent of denominators.
  friend bool operator==(const FractionalPolynomial& a, const FractionalPolynomial& b) { return a.terms() == b.terms(); }

 private:
  Integer denominator_;
  std::map<Integer, Integer> terms_;
};

struct ClosedFormSeries {
  FractionalPolynomial simple_part;
  FractionalPolynomial omega_part;
  Integer common_denominator;
};

/// N = lcm of e_{i-1} bbar_i (i <= g*) and e_{g*} bbar_{g*+1}.
inline Integer series_denominator(const ResolutionModel& model) {
  Integer N = 1;
  for (std::size_t i = 1; i <= model.g_star() + 1; ++i) {
    auto hp = detail::hi_params(model, i);
    N = lcm(N, hp.e_prev * hp.bbar);
  }
  return N;
}

inline ClosedFormSeries closed_form(const ResolutionModel& model) {
  const Integer N = series_denominator(model);
  ClosedFormSeries cf{FractionalPolynomial(N), FractionalPolynomial(N), N};
  for (std::size_t i = 1; i <= model.g_star(); ++i)
    for (const auto& el : enumerate_Hi(model, i, Rational(1)))
      if (el.value < 1) cf.simple_part.add(el.value, 1);

  // Omega is the image of {1 <= s <= e_{g*}} x {1 <= q <= bbar_{g*+1}}.
  const std::size_t last = model.g_star() + 1;
  for (const auto& el : enumerate_Hi(model, last, Rational(2)))
    if (!in_H(model, last, el.value - 1)) cf.omega_part.add(el.value, 1);
  return cf;
}

/// Expansion of the closed form up to `bound` (inclusive), using
/// 1/(1-t) = sum t^k and 1/(1-t) + t/(1-t)^2 = sum (k+1) t^k.
inline FractionalPolynomial expand_truncated(const ClosedFormSeries& cf, const Rational& bound) {
  FractionalPolynomial out(cf.common_denominator);
  for (const auto& [x, c] : cf.simple_part.terms())
    for (Integer k = 0; x + k <= bound; ++k) out.add(x + k, c);
  for (const auto& [x, c] : cf.omega_part.terms())
    for (Integer k = 0; x + k <= bound; ++k) out.add(x + k, c * (k + 1));
  return out;
}

/// Candidate exponents at or below `bound`: the values k / a_j where some
/// floor(c a_j) changes.
inline std::set<Rational> candidate_exponents(const ResolutionModel& model, const Rational& bound) {
  std::set<Rational> out;
  for (std::size_t j = 1; j <= model.n(); ++j) {
    Integer top = floor(bound * model.a(j));
    for (Integer k = 1; k <= top; ++k) out.insert(Rational(k, model.a(j)));
  }
  return out;
}

/// The series truncated at `bound` from multiplier ideals and colengths
/// alone: every candidate exponent c is tested for J(p^{c-eps}) != J(p^c)
/// and weighted by the colength difference. floor(c D) is constant strictly
/// between consecutive candidates, so J(p^{c-eps}) is the ideal at the
/// previous candidate (the unit ideal before the first).
inline FractionalPolynomial oracle_series(const ResolutionModel& model, const Rational& bound) {
  FractionalPolynomial out(series_denominator(model));
  CompleteIdealRep before = unit_ideal(model);
  for (const auto& c : candidate_exponents(model, bound)) {
    auto at = multiplier_ideal(model, c);
    if (!(at == before)) out.add(c, quotient_dimension(model, at, before));
    before = std::move(at);
  }
  return out;
}

struct SeriesComparison {
  bool equal = true;
  std::optional<Rational> first_difference;
  Integer left = 0;
  Integer right = 0;
};

/// Exact comparison of two truncations over exponents <= bound.
inline SeriesComparison compare_series(const FractionalPolynomial& a, const FractionalPolynomial& b,
                                       const Rational& bound) {
  std::set<Rational> exps;
  for (auto& [x, c] : a.terms())
    if (x <= bound) exps.insert(x);
  for (auto& [x, c] : b.terms())
    if (x <= bound) exps.insert(x);
  for (const auto& x : exps) {
    Integer ca = a.coefficient(x), cb = b.coefficient(x);
    if (ca != cb) return SeriesComparison{false, x, ca, cb};
  }
  return {};
}

// ---------------------------------------------------------------------------
// Rendering

enum class Format { plain, latex, json, csv };

inline Format parse_format(const std::string& tag) {
  if (tag == "plain") return Format::plain;
  if (tag == "latex") return Format::latex;
  if (tag == "json") return Format::json;
  if (tag == "csv") return Format::csv;
  throw UnknownFormat("'" + tag + "' (expected plain, latex, json or csv)");
}

/// Integer as a JSON number when it fits in 64 bits, else as a string.
inline nlohmann::json to_json(const Integer& x) {
  if (x >= std::numeric_limits<long long>::min() && x <= std::numeric_limits<long long>::max())
    return x.convert_to<long long>();
  return x.str();
}

namespace detail {

inline std::string monomial(const Rational& x, const Integer& c, Format f) {
  std::string coeff = c == 1 ? "" : c.str();
  if (f == Format::latex) return coeff + "t^{" + to_string(x) + "}";
  if (is_integral(x)) return coeff + (c == 1 ? "" : "*") + "t^" + to_string(x);
  return coeff + (c == 1 ? "" : "*") + "t^(" + to_string(x) + ")";
}

inline std::string sum_text(const FractionalPolynomial& p, Format f) {
  if (p.empty()) return "0";
  std::string out;
  for (const auto& [x, c] : p.terms()) {
    if (!out.empty()) out += c < 0 ? (f == Format::latex ? "" : " ") : (f == Format::latex ? "+" : " + ");
    out += monomial(x, c, f);
  }
  return out;
}

inline nlohmann::json numerator_pairs(const FractionalPolynomial& p, const Integer& N) {
  FractionalPolynomial q = p;
  q.rescale(N);
  nlohmann::json arr = nlohmann::json::array();
  for (auto& [num, c] : q.numerators()) arr.push_back({to_json(num), to_json(c)});
  return arr;
}

}  // namespace detail

inline std::string render(const FractionalPolynomial& p, Format f) {
  switch (f) {
    case Format::plain:
    case Format::latex:
      return detail::sum_text(p, f);
    case Format::csv: {
      std::string out;
      for (const auto& [x, c] : p.terms()) out += to_string(x) + "," + c.str() + "\n";
      return out;
    }
    case Format::json:
      return nlohmann::json{{"denominator", to_json(p.denominator())},
                            {"terms", detail::numerator_pairs(p, p.denominator())}}
          .dump();
  }
  throw UnknownFormat("unhandled format");
}

inline nlohmann::json closed_form_json(const ClosedFormSeries& cf) {
  return {{"simple", detail::numerator_pairs(cf.simple_part, cf.common_denominator)},
          {"omega", detail::numerator_pairs(cf.omega_part, cf.common_denominator)}};
}

inline std::string render(const ClosedFormSeries& cf, Format f) {
  switch (f) {
    case Format::latex: {
      auto wrap = [](const FractionalPolynomial& p) {
        std::string body = detail::sum_text(p, Format::latex);
        return p.size() == 1 ? body : "\\left(" + body + "\\right)";
      };
      std::string out;
      if (!cf.simple_part.empty()) out += "\\frac{1}{1-t}" + wrap(cf.simple_part);
      if (!cf.omega_part.empty()) {
        if (!out.empty()) out += "+";
        out += "\\left(\\frac{1}{1-t}+\\frac{t}{(1-t)^2}\\right)" + wrap(cf.omega_part);
      }
      return out.empty() ? "0" : out;
    }
    case Format::plain: {
      std::ostringstream os;
      os << "P(t) = 1/(1-t) * S(t) + (1/(1-t) + t/(1-t)^2) * O(t)\n"
         << "S(t) = " << detail::sum_text(cf.simple_part, Format::plain) << "\n"
         << "O(t) = " << detail::sum_text(cf.omega_part, Format::plain) << "\n"
         << "exponents in (1/" << cf.common_denominator.str() << ")Z";
      return os.str();
    }
    case Format::csv: {
      std::string out;
      for (const auto& [x, c] : cf.simple_part.terms()) out += "simple," + to_string(x) + "," + c.str() + "\n";
      for (const auto& [x, c] : cf.omega_part.terms()) out += "omega," + to_string(x) + "," + c.str() + "\n";
      return out;
    }
    case Format::json:
      return nlohmann::json{{"denominator", to_json(cf.common_denominator)}, {"closed_form", closed_form_json(cf)}}
          .dump();
  }
  throw UnknownFormat("unhandled format");
}

}  // namespace mulseries
