#pragma once

// Complete ideals of finite colength as antinef divisors on the exceptional
// lattice: unloading, multiplier ideals, colengths.

#include <mulseries/arithmetic.hpp>
#include <mulseries/errors.hpp>
#include <mulseries/valuation_model.hpp>

#include <cstddef>
#include <set>
#include <span>
#include <string>
#include <vector>

namespace mulseries {

/// Integer combination sum_j coeffs[j-1] E_j of the strict transforms.
class ExceptionalDivisor {
 public:
  ExceptionalDivisor() = default;
  explicit ExceptionalDivisor(std::size_t n) : coeffs_(n, 0) {}
  explicit ExceptionalDivisor(IntVector coeffs) : coeffs_(std::move(coeffs)) {}
  ExceptionalDivisor(std::initializer_list<long> coeffs) {
    for (long c : coeffs) coeffs_.emplace_back(c);
  }

  std::size_t size() const { return coeffs_.size(); }
  const IntVector& coeffs() const { return coeffs_; }

  /// 1-based access.
  const Integer& at(std::size_t j) const { return coeffs_.at(j - 1); }
  Integer& at(std::size_t j) { return coeffs_.at(j - 1); }

  bool is_zero() const {
    for (const auto& c : coeffs_)
      if (c != 0) return false;
    return true;
  }

  /// Componentwise order.
  bool leq(const ExceptionalDivisor& other) const {
    for (std::size_t k = 0; k < coeffs_.size(); ++k)
      if (coeffs_[k] > other.coeffs_[k]) return false;
    return true;
  }

  ExceptionalDivisor clamped() const {
    ExceptionalDivisor out = *this;
    for (auto& c : out.coeffs_)
      if (c < 0) c = 0;
    return out;
  }

  friend bool operator==(const ExceptionalDivisor&, const ExceptionalDivisor&) = default;

  std::string str() const { return to_string(coeffs_); }

 private:
  IntVector coeffs_;
};

/// The complete ideal pi_* O_X(-E) with E antinef.
struct CompleteIdealRep {
  ExceptionalDivisor divisor;
  IntVector multiplicities;  // P . coeffs

  bool is_unit() const { return divisor.is_zero(); }

  /// Ideal equality is equality of antinef representatives.
  friend bool operator==(const CompleteIdealRep& a, const CompleteIdealRep& b) { return a.divisor == b.divisor; }
};

inline Integer intersect(const ResolutionModel& model, const ExceptionalDivisor& E, std::size_t j) {
  return intersect(model, E.coeffs(), j);
}

inline bool is_antinef(const ResolutionModel& model, const ExceptionalDivisor& E) {
  for (std::size_t j = 1; j <= model.n(); ++j)
    if (intersect(model, E, j) > 0) return false;
  return true;
}

/// Base-point multiplicities m = P . coeffs.
inline IntVector point_multiplicities(const ResolutionModel& model, const ExceptionalDivisor& E) {
  const auto& P = model.proximity_matrix;
  IntVector m(model.n(), 0);
  for (std::size_t i = 0; i < model.n(); ++i)
    for (std::size_t k = 0; k <= i; ++k)
      if (P[i][k]) m[i] += P[i][k] * E.coeffs()[k];
  return m;
}

/// Unloading pivot: the lowest index with positive intersection.
struct LowestIndexPivot {
  std::size_t operator()(std::span<const std::size_t> positive) const { return positive.front(); }
};

/// Least antinef divisor >= max(E, 0). Each step adds one E_j with
/// E . E_j > 0, the index chosen by `pivot` among all such j (1-based,
/// ascending).
template <class Pivot = LowestIndexPivot>
CompleteIdealRep antinef_closure(const ResolutionModel& model, const ExceptionalDivisor& E, Pivot&& pivot = {}) {
  const std::size_t n = model.n();
  if (E.size() != n) throw std::invalid_argument("divisor length " + std::to_string(E.size()) + " != n = " + std::to_string(n));
  ExceptionalDivisor D = E.clamped();

  IntVector dots(n + 1);
  Integer max_coeff = 0;
  for (std::size_t j = 1; j <= n; ++j) {
    dots[j] = intersect(model, D, j);
    if (D.at(j) > max_coeff) max_coeff = D.at(j);
  }
  const Integer guard = Integer(n) * (max_coeff + n) * (max_coeff + n);

  std::vector<std::size_t> positive;
  for (Integer steps = 0;; ++steps) {
    positive.clear();
    for (std::size_t j = 1; j <= n; ++j)
      if (dots[j] > 0) positive.push_back(j);
    if (positive.empty()) break;
    if (steps > guard) throw InconsistentModel("unloading did not terminate on " + E.str());
    std::size_t j = pivot(std::span<const std::size_t>(positive));
    D.at(j) += 1;
    dots[j] += model.G(j, j);
    for (std::size_t k : model.dual_graph[j]) dots[k] += 1;
  }
  return CompleteIdealRep{D, point_multiplicities(model, D)};
}

/// Componentwise floor(c a_j) - kappa_j - [j in extra].
inline ExceptionalDivisor shifted_floor_divisor(const ResolutionModel& model, const Rational& c,
                                                const std::set<std::size_t>& extra = {}) {
  ExceptionalDivisor E(model.n());
  for (std::size_t j = 1; j <= model.n(); ++j) {
    E.at(j) = floor(c * model.a(j)) - model.kappa(j);
    if (extra.count(j)) E.at(j) -= 1;
  }
  return E;
}

/// J(p^c) = pi_* O_X(K - floor(c D)).
inline CompleteIdealRep multiplier_ideal(const ResolutionModel& model, const Rational& c) {
  if (c <= 0) throw std::invalid_argument("multiplier ideal exponent must be positive");
  return antinef_closure(model, shifted_floor_divisor(model, c));
}

/// floor((c - eps) D) for infinitesimal eps.
inline ExceptionalDivisor floor_predecessor_divisor(const ResolutionModel& model, const Rational& c) {
  ExceptionalDivisor E(model.n());
  for (std::size_t j = 1; j <= model.n(); ++j) {
    Rational x = c * model.a(j);
    E.at(j) = is_integral(x) ? numerator(x) - 1 : floor(x);
  }
  return E;
}

/// J(p^{c - eps}) for infinitesimal eps.
inline CompleteIdealRep multiplier_ideal_before(const ResolutionModel& model, const Rational& c) {
  ExceptionalDivisor E = floor_predecessor_divisor(model, c);
  for (std::size_t j = 1; j <= model.n(); ++j) E.at(j) -= model.kappa(j);
  return antinef_closure(model, E);
}

/// dim R / I by the Hoskin-Deligne formula sum m_j (m_j + 1) / 2.
inline Integer colength(const ResolutionModel& model, const CompleteIdealRep& ideal) {
  IntVector m = point_multiplicities(model, ideal.divisor);
  Integer total = 0;
  for (std::size_t j = 0; j < m.size(); ++j) {
    if (m[j] < 0) throw NegativeMultiplicity("multiplicity " + m[j].str() + " at p_" + std::to_string(j + 1));
    total += m[j] * (m[j] + 1) / 2;
  }
  return total;
}

/// dim outer / inner for inner ⊆ outer.
inline Integer quotient_dimension(const ResolutionModel& model, const CompleteIdealRep& inner,
                                  const CompleteIdealRep& outer) {
  if (!outer.divisor.leq(inner.divisor))
    throw NotNested(inner.divisor.str() + " is not contained in " + outer.divisor.str());
  return colength(model, inner) - colength(model, outer);
}

/// pi_* O_X(-floor(c D) + K + sum_{j in extra} E_j).
inline CompleteIdealRep shifted_pushforward(const ResolutionModel& model, const Rational& c,
                                            const std::set<std::size_t>& extra) {
  for (std::size_t j : extra)
    if (j < 1 || j > model.n()) throw std::out_of_range("divisor index " + std::to_string(j));
  return antinef_closure(model, shifted_floor_divisor(model, c, extra));
}

inline CompleteIdealRep unit_ideal(const ResolutionModel& model) {
  return CompleteIdealRep{ExceptionalDivisor(model.n()), IntVector(model.n(), 0)};
}

}  // namespace mulseries
