#pragma once

// Combinatorial model of a simple complete ideal: maximal contact values,
// proximity of the blowup centers, and everything derived from them on the
// exceptional lattice (intersection matrix, relative canonical divisor,
// valuation divisor, dual graph, star and dead vertices).
//
// Divisor indices are 1-based everywhere in the public interface, matching
// the blowup order E_1, ..., E_n. Coefficient vectors are stored 0-based.

#include <mulseries/arithmetic.hpp>
#include <mulseries/errors.hpp>

#include <algorithm>
#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace mulseries {

using IntVector = std::vector<Integer>;
using IntMatrix = std::vector<std::vector<Integer>>;

inline std::string to_string(const IntVector& v) {
  std::string out = "(";
  for (std::size_t k = 0; k < v.size(); ++k) {
    if (k) out += ",";
    out += v[k].str();
  }
  return out + ")";
}

// ---------------------------------------------------------------------------
// Maximal contact values

class MaximalContactSequence {
 public:
  MaximalContactSequence() = default;

  /// Validates and stores (bbar_0, ..., bbar_{g+1}).
  /// Throws InvalidContactSequence when an invariant fails.
  explicit MaximalContactSequence(IntVector values) : values_(std::move(values)) { validate(); }

  const IntVector& values() const { return values_; }
  std::size_t size() const { return values_.size(); }

  /// Number of characteristic values g (the sequence has g + 2 entries).
  std::size_t genus() const { return values_.size() - 2; }

  const Integer& operator[](std::size_t i) const { return values_.at(i); }
  const Integer& bbar(std::size_t i) const { return values_.at(i); }

  /// e_i = gcd(bbar_0, ..., bbar_i) for 0 <= i <= g; 1 beyond g.
  const Integer& e(std::size_t i) const {
    static const Integer one = 1;
    return i < gcds_.size() ? gcds_[i] : one;
  }

  /// n_i = e_{i-1} / e_i for i >= 1.
  Integer n(std::size_t i) const { return e(i - 1) / e(i); }

  /// True when bbar_{g+1} = n_g bbar_g, i.e. the last divisor is satellite.
  bool satellite_terminal() const {
    std::size_t g = genus();
    return g >= 1 && values_[g + 1] == n(g) * values_[g];
  }

  friend bool operator==(const MaximalContactSequence& a, const MaximalContactSequence& b) {
    return a.values_ == b.values_;
  }

  std::string str() const { return to_string(values_); }

 private:
  void validate() {
    auto fail = [&](const std::string& why) { throw InvalidContactSequence(to_string(values_) + ": " + why); };
    if (values_.size() < 2) fail("length must be at least 2");
    for (const auto& v : values_)
      if (v < 1) fail("values must be positive");
    std::size_t g = genus();
    gcds_.assign(1, values_[0]);
    for (std::size_t i = 1; i <= g; ++i) gcds_.push_back(gcd(gcds_.back(), values_[i]));
    for (std::size_t i = 1; i <= g; ++i)
      if (!(gcds_[i] < gcds_[i - 1])) fail("e_" + std::to_string(i) + " does not strictly decrease");
    if (gcds_[g] != 1) fail("e_g must equal 1");
    if (g >= 1 && !(values_[1] > values_[0])) fail("bbar_1 must exceed bbar_0");
    for (std::size_t i = 1; i + 1 <= g; ++i)
      if (!(values_[i + 1] > n(i) * values_[i]))
        fail("bbar_" + std::to_string(i + 1) + " must exceed n_" + std::to_string(i) + " bbar_" + std::to_string(i) +
             " = " + (n(i) * values_[i]).str());
    if (g >= 1 && values_[g + 1] < n(g) * values_[g])
      fail("bbar_" + std::to_string(g + 1) + " must be at least n_" + std::to_string(g) + " bbar_" +
           std::to_string(g) + " = " + (n(g) * values_[g]).str());
  }

  IntVector values_;
  IntVector gcds_;
};

// ---------------------------------------------------------------------------
// Proximity

/// A simple chain of point blowups p_1, ..., p_n. Every p_j (j >= 2) lies on
/// E_{j-1}; `satellite[j] = i` records that p_j also lies on E_i (i < j - 1).
struct ProximityStructure {
  std::size_t n = 0;
  std::map<std::size_t, std::size_t> satellite;

  friend bool operator==(const ProximityStructure&, const ProximityStructure&) = default;

  bool is_satellite(std::size_t j) const { return satellite.count(j) != 0; }

  /// True iff p_j is proximate to p_i (j > i).
  bool proximate(std::size_t j, std::size_t i) const {
    if (j == i + 1) return true;
    auto it = satellite.find(j);
    return it != satellite.end() && it->second == i;
  }

  /// Throws InconsistentProximity unless this describes a chain of blowups
  /// on a smooth surface.
  void validate() const {
    if (n == 0) throw InconsistentProximity("a chain needs at least one blowup");
    for (auto [j, i] : satellite) {
      if (j < 3 || j > n) throw InconsistentProximity("satellite key " + std::to_string(j) + " out of range 3.." + std::to_string(n));
      if (i < 1 || i + 1 >= j)
        throw InconsistentProximity("p_" + std::to_string(j) + " cannot be satellite to E_" + std::to_string(i));
      // p_j = E_{j-1} ∩ E_i needs E_i to pass through p_{j-1}.
      if (!proximate(j - 1, i))
        throw InconsistentProximity("p_" + std::to_string(j) + " is not on the strict transform of E_" + std::to_string(i));
    }
  }

  /// Lower-triangular proximity matrix: 1 on the diagonal, -1 at (j, i) when
  /// p_j is proximate to p_i.
  std::vector<std::vector<int>> matrix() const {
    std::vector<std::vector<int>> P(n, std::vector<int>(n, 0));
    for (std::size_t j = 1; j <= n; ++j) {
      P[j - 1][j - 1] = 1;
      if (j >= 2) P[j - 1][j - 2] = -1;
      if (auto it = satellite.find(j); it != satellite.end()) P[j - 1][it->second - 1] = -1;
    }
    return P;
  }

  /// Keeps the first m centers.
  ProximityStructure truncated(std::size_t m) const {
    ProximityStructure out{m, {}};
    for (auto [j, i] : satellite)
      if (j <= m) out.satellite[j] = i;
    return out;
  }
};

// ---------------------------------------------------------------------------
// Resolution data

struct ResolutionModel {
  ProximityStructure proximity;
  std::vector<std::vector<int>> proximity_matrix;  // P
  IntMatrix intersection;                          // G = (E_i . E_j) = -P^T P
  IntVector canonical;                             // kappa, K = sum kappa_j E_j
  IntVector valuation;                             // a, D = sum a_j E_j
  std::vector<std::vector<std::size_t>> dual_graph;  // 1-based adjacency
  std::vector<std::size_t> stars;                  // st_1 < ... < st_{g*}
  std::vector<std::size_t> dead;
  std::vector<std::vector<std::size_t>> subtrees;  // Gamma_1 .. Gamma_{g*+1}
  MaximalContactSequence contact;
  std::vector<std::size_t> F;                      // F_1 .. F_{g*+1}

  std::size_t n() const { return proximity.n; }
  std::size_t g() const { return contact.genus(); }
  std::size_t g_star() const { return stars.size(); }
  bool terminal_satellite() const { return proximity.is_satellite(n()); }

  const Integer& a(std::size_t j) const { return valuation.at(j - 1); }
  const Integer& kappa(std::size_t j) const { return canonical.at(j - 1); }
  const Integer& G(std::size_t i, std::size_t j) const { return intersection.at(i - 1).at(j - 1); }

  /// Divisor index of F_i, 1 <= i <= g*+1.
  std::size_t F_index(std::size_t i) const { return F.at(i - 1); }

  /// Number of divisors proximate to E_j.
  std::size_t proximate_count(std::size_t j) const {
    std::size_t c = 0;
    for (std::size_t k = j + 1; k <= n(); ++k)
      if (proximity.proximate(k, j)) ++c;
    return c;
  }
};

namespace detail {

// Solves P x = rhs with P unit lower triangular.
inline IntVector forward_solve(const std::vector<std::vector<int>>& P, const IntVector& rhs) {
  std::size_t n = P.size();
  IntVector x(n);
  for (std::size_t j = 0; j < n; ++j) {
    Integer s = rhs[j];
    for (std::size_t k = 0; k < j; ++k)
      if (P[j][k]) s -= P[j][k] * x[k];
    x[j] = s;
  }
  return x;
}

// Solves P^T y = rhs with P unit lower triangular.
inline IntVector transpose_back_solve(const std::vector<std::vector<int>>& P, const IntVector& rhs) {
  std::size_t n = P.size();
  IntVector y(n);
  for (std::size_t j = n; j-- > 0;) {
    Integer s = rhs[j];
    for (std::size_t k = j + 1; k < n; ++k)
      if (P[k][j]) s -= P[k][j] * y[k];
    y[j] = s;
  }
  return y;
}

}  // namespace detail

/// Builds the full resolution model of a proximity chain.
inline ResolutionModel build_resolution(const ProximityStructure& prox) {
  prox.validate();
  const std::size_t n = prox.n;
  ResolutionModel m;
  m.proximity = prox;
  m.proximity_matrix = prox.matrix();
  const auto& P = m.proximity_matrix;

  m.intersection.assign(n, IntVector(n, 0));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      int s = 0;
      for (std::size_t k = 0; k < n; ++k) s += P[k][i] * P[k][j];
      m.intersection[i][j] = -s;
    }

  m.canonical = detail::forward_solve(P, IntVector(n, 1));
  IntVector unit(n, 0);
  unit[n - 1] = 1;
  IntVector mult = detail::transpose_back_solve(P, unit);
  m.valuation = detail::forward_solve(P, mult);
  for (std::size_t j = 0; j < n; ++j)
    if (m.valuation[j] < 1 || mult[j] < 0)
      throw InconsistentProximity("valuation divisor " + to_string(m.valuation) + " is not positive");

  m.dual_graph.assign(n + 1, {});
  std::size_t edges = 0;
  for (std::size_t i = 1; i <= n; ++i)
    for (std::size_t j = 1; j <= n; ++j)
      if (i != j && m.G(i, j) > 0) {
        if (m.G(i, j) != 1) throw InconsistentProximity("divisors meet with multiplicity > 1");
        m.dual_graph[i].push_back(j);
        if (i < j) ++edges;
      }
  if (edges + 1 != n) throw InconsistentProximity("dual graph is not a tree");

  for (std::size_t j = 1; j <= n; ++j) {
    std::size_t deg = m.dual_graph[j].size();
    if (deg > 3) throw InconsistentProximity("E_" + std::to_string(j) + " meets more than three divisors");
    if (deg == 3) m.stars.push_back(j);
    if (deg <= 1) m.dead.push_back(j);
  }

  // Gamma_i: vertices up to st_i not already taken; the last one is the rest.
  std::size_t lower = 1;
  for (std::size_t st : m.stars) {
    std::vector<std::size_t> part;
    for (std::size_t j = lower; j <= st; ++j) part.push_back(j);
    m.subtrees.push_back(std::move(part));
    lower = st + 1;
  }
  {
    std::vector<std::size_t> last;
    for (std::size_t j = lower; j <= n; ++j) last.push_back(j);
    m.subtrees.push_back(std::move(last));
  }

  m.F = m.stars;
  m.F.push_back(n);

  const std::size_t g_star = m.stars.size();
  const std::size_t g = m.terminal_satellite() ? g_star + 1 : g_star;
  if (m.dead.size() < g + 1)
    throw InconsistentProximity("only " + std::to_string(m.dead.size()) + " dead vertices, need " + std::to_string(g + 1));
  IntVector bbar;
  for (std::size_t k = 0; k <= g; ++k) bbar.push_back(m.a(m.dead[k]));
  bbar.push_back(m.a(n));
  try {
    m.contact = MaximalContactSequence(bbar);
  } catch (const InvalidContactSequence& ex) {
    throw InconsistentProximity(std::string("derived contact values are invalid: ") + ex.what());
  }
  if (m.contact.satellite_terminal() != m.terminal_satellite())
    throw InconsistentProximity("terminal divisor type disagrees with contact values " + m.contact.str());
  return m;
}

/// Maximal contact values of the valuation defined by the chain.
inline MaximalContactSequence contact_from_proximity(const ProximityStructure& prox) {
  return build_resolution(prox).contact;
}

namespace detail {

/// Multiplicities of the valuation's general curve at p_1..p_n, obtained by
/// running the Euclidean algorithm on each characteristic pair.
inline IntVector multiplicity_sequence(const MaximalContactSequence& seq) {
  const std::size_t g = seq.genus();
  // Puiseux characteristic: beta_{i+1} = bbar_{i+1} - n_i bbar_i + beta_i.
  IntVector beta{seq[0], seq[1]};
  for (std::size_t i = 1; i <= g; ++i) beta.push_back(seq[i + 1] - seq.n(i) * seq[i] + beta[i]);

  IntVector mult;
  auto euclid = [&](Integer num, Integer den) {
    while (den != 0) {
      Integer q = num / den, r = num % den;
      for (Integer k = 0; k < q; ++k) mult.push_back(den);
      num = den;
      den = r;
    }
  };
  euclid(beta[1], g >= 1 ? beta[0] : Integer(1));
  for (std::size_t i = 2; i <= g + 1; ++i) euclid(beta[i] - beta[i - 1], seq.e(i - 1));
  return mult;
}

/// Reads the proximity chain off a multiplicity sequence via the proximity
/// equalities m_i = sum of m_j over the points proximate to p_i.
inline std::optional<ProximityStructure> proximity_from_multiplicities(const IntVector& mult) {
  const std::size_t n = mult.size();
  if (n == 0 || mult.back() != 1) return std::nullopt;
  ProximityStructure prox{n, {}};
  for (std::size_t i = 1; i < n; ++i) {
    Integer sum = 0;
    std::size_t k = i + 1;
    while (sum < mult[i - 1] && k <= n) {
      sum += mult[k - 1];
      if (k >= i + 2) {
        if (prox.satellite.count(k)) return std::nullopt;
        prox.satellite[k] = i;
      }
      ++k;
    }
    if (sum != mult[i - 1]) return std::nullopt;
  }
  return prox;
}

}  // namespace detail

/// The unique blowup chain whose valuation has the given maximal contact
/// values. The result is verified by recomputing the contact values.
inline ProximityStructure proximity_from_contact(const MaximalContactSequence& seq) {
  if (seq.size() < 2) throw InvalidContactSequence("empty sequence");
  auto prox = detail::proximity_from_multiplicities(detail::multiplicity_sequence(seq));
  if (!prox) throw InvalidContactSequence(seq.str() + ": multiplicities violate the proximity equalities");
  MaximalContactSequence back;
  try {
    back = contact_from_proximity(*prox);
  } catch (const InconsistentProximity& ex) {
    throw InvalidContactSequence(seq.str() + ": no chain realizes the sequence (" + ex.what() + ")");
  }
  if (!(back == seq)) throw InvalidContactSequence(seq.str() + ": chain reproduces " + back.str());
  return *prox;
}

inline ResolutionModel model_from_contact(const MaximalContactSequence& seq) {
  return build_resolution(proximity_from_contact(seq));
}

/// Model of the divisorial valuation of E_j, i.e. of the chain p_1..p_j.
inline ResolutionModel intermediate_valuation(const ResolutionModel& model, std::size_t j) {
  if (j < 1 || j > model.n())
    throw std::out_of_range("divisor index " + std::to_string(j) + " outside 1.." + std::to_string(model.n()));
  if (j == model.n()) return model;
  return build_resolution(model.proximity.truncated(j));
}

/// Intersection number (sum_k coeffs_k E_k) . E_j.
inline Integer intersect(const ResolutionModel& model, const IntVector& coeffs, std::size_t j) {
  Integer s = coeffs[j - 1] * model.G(j, j);
  for (std::size_t k : model.dual_graph[j]) s += coeffs[k - 1];
  return s;
}

}  // namespace mulseries
