#pragma once

// Jumping numbers of a simple complete ideal from its maximal contact values,
// the divisors contributing them, and the dimensions of consecutive
// multiplier-ideal quotients.
//
// For 1 <= i <= g*:
//   H_i = { p/e_{i-1} + q/bbar_i + r/e_i : p/e_{i-1} + q/bbar_i <= 1/e_i, p,q >= 1, r >= 0 }
// and
//   H_{g*+1} = { p/e_{g*} + q/bbar_{g*+1} : p,q >= 1 }.
// The jumping numbers are the union of the H_i.

#include <mulseries/arithmetic.hpp>
#include <mulseries/complete_ideals.hpp>
#include <mulseries/errors.hpp>
#include <mulseries/valuation_model.hpp>

#include <algorithm>
#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace mulseries {

/// (p, q, r) with value p/e_{i-1} + q/bbar_i + r/e_i; r is absent for
/// i = g*+1 where the value is p/e_{g*} + q/bbar_{g*+1}.
struct Witness {
  Integer p;
  Integer q;
  std::optional<Integer> r;

  friend bool operator==(const Witness&, const Witness&) = default;
};

struct HiElement {
  Rational value;
  std::vector<Witness> witnesses;
};

/// Canonical form of a member of H_i relative to its periodic base.
/// For i <= g*: (p, q, s) with p bbar_i + q e_{i-1} <= n_i bbar_i,
/// 0 <= s < e_i, and value = iota(i, p, q, s) + r.
/// For i = g*+1: (s, q) with 1 <= s <= e_{g*}, 1 <= q <= bbar_{g*+1},
/// and value = iota(g*+1, s, q) + r.
struct Decomposition {
  std::optional<Integer> p;
  Integer q;
  Integer s;
  Integer r;
  Rational base;

  friend bool operator==(const Decomposition&, const Decomposition&) = default;
};

namespace detail {

struct HiParams {
  Integer e_prev;  // e_{i-1}, or e_{g*} for the last set
  Integer bbar;    // bbar_i, or bbar_{g*+1}
  Integer e_cur;   // e_i (unused for the last set)
  bool last;
};

inline HiParams hi_params(const ResolutionModel& model, std::size_t i) {
  const std::size_t gs = model.g_star();
  if (i < 1 || i > gs + 1)
    throw std::out_of_range("H index " + std::to_string(i) + " outside 1.." + std::to_string(gs + 1));
  const auto& c = model.contact;
  if (i <= gs) return {c.e(i - 1), c.bbar(i), c.e(i), false};
  return {c.e(gs), c.bbar(gs + 1), Integer(1), true};
}

}  // namespace detail

/// iota(i, p, q, r) for i <= g*, iota(g*+1, p, q) otherwise (r ignored).
inline Rational iota(const ResolutionModel& model, std::size_t i, const Integer& p, const Integer& q,
                     const Integer& r = 0) {
  auto hp = detail::hi_params(model, i);
  Rational v = Rational(p, hp.e_prev) + Rational(q, hp.bbar);
  if (!hp.last) v += Rational(r, hp.e_cur);
  return v;
}

/// Elements of H_i not exceeding `bound`, ascending.
inline std::vector<HiElement> enumerate_Hi(const ResolutionModel& model, std::size_t i, const Rational& bound) {
  auto hp = detail::hi_params(model, i);
  std::map<Rational, std::vector<Witness>> found;
  if (!hp.last) {
    const Rational cap(1, hp.e_cur);
    for (Integer p = 1; Rational(p, hp.e_prev) < cap; ++p)
      for (Integer q = 1;; ++q) {
        Rational base = Rational(p, hp.e_prev) + Rational(q, hp.bbar);
        if (base > cap) break;
        for (Integer r = 0;; ++r) {
          Rational v = base + Rational(r, hp.e_cur);
          if (v > bound) break;
          found[v].push_back(Witness{p, q, r});
        }
      }
  } else {
    for (Integer p = 1; Rational(p, hp.e_prev) + Rational(1, hp.bbar) <= bound; ++p)
      for (Integer q = 1;; ++q) {
        Rational v = Rational(p, hp.e_prev) + Rational(q, hp.bbar);
        if (v > bound) break;
        found[v].push_back(Witness{p, q, std::nullopt});
      }
  }
  std::vector<HiElement> out;
  out.reserve(found.size());
  for (auto& [v, w] : found) out.push_back(HiElement{v, std::move(w)});
  return out;
}

/// Decomposition of `value` as a member of H_i, or nullopt if not a member.
inline std::optional<Decomposition> try_decompose(const ResolutionModel& model, std::size_t i, const Rational& value) {
  auto hp = detail::hi_params(model, i);
  if (value <= 0) return std::nullopt;
  if (hp.last) {
    // value * e * bbar = s bbar + q e + r e bbar with e, bbar coprime.
    const Integer& e = hp.e_prev;
    const Integer& b = hp.bbar;
    Rational scaled = value * e * b;
    if (!is_integral(scaled)) return std::nullopt;
    Integer X = numerator(scaled);
    Integer q = mod(X * mod_inverse(e, b), b);
    if (q == 0) q = b;
    Integer s = mod(X * mod_inverse(b, e), e);
    if (s == 0) s = e;
    Integer rest = X - s * b - q * e;
    if (rest < 0) return std::nullopt;
    Integer r = rest / (e * b);
    return Decomposition{std::nullopt, q, s, r, Rational(s, e) + Rational(q, b)};
  }
  // Write e_{i-1} = n e_i and bbar_i = B e_i with gcd(n, B) = 1. Then
  // value * n B e_i = (p B + q n) + s' n B, where 0 < p B + q n < n B.
  const Integer n = hp.e_prev / hp.e_cur;
  const Integer B = hp.bbar / hp.e_cur;
  Rational scaled = value * n * B * hp.e_cur;
  if (!is_integral(scaled)) return std::nullopt;
  Integer Y = numerator(scaled);
  Integer x = mod(Y, n * B);
  if (x == 0) return std::nullopt;
  Integer p = mod(x * mod_inverse(B, n), n);
  if (p == 0) p = n;
  Integer qn = x - p * B;
  if (qn <= 0 || qn % n != 0) return std::nullopt;
  Integer q = qn / n;
  Integer s_total = (Y - x) / (n * B);
  Integer s = mod(s_total, hp.e_cur);
  Integer r = s_total / hp.e_cur;
  return Decomposition{p, q, s, r, iota(model, i, p, q, s)};
}

inline Decomposition decompose_membership(const ResolutionModel& model, std::size_t i, const Rational& value) {
  auto d = try_decompose(model, i, value);
  if (!d) throw NotMember(to_string(value) + " is not in H_" + std::to_string(i));
  return *d;
}

inline bool in_H(const ResolutionModel& model, std::size_t i, const Rational& value) {
  return try_decompose(model, i, value).has_value();
}

/// Indices i with value in H_i, ascending.
inline std::vector<std::size_t> memberships(const ResolutionModel& model, const Rational& value) {
  std::vector<std::size_t> out;
  for (std::size_t i = 1; i <= model.g_star() + 1; ++i)
    if (in_H(model, i, value)) out.push_back(i);
  return out;
}

/// The smallest jumping number.
inline Rational lct(const ResolutionModel& model) {
  Rational best;
  for (std::size_t i = 1; i <= model.g_star() + 1; ++i) {
    auto hp = detail::hi_params(model, i);
    Rational m = Rational(1, hp.e_prev) + Rational(1, hp.bbar);
    if (i == 1 || m < best) best = m;
  }
  return best;
}

/// Omega: members of H_{g*+1} at most 2 whose predecessor by 1 is not a member.
inline bool in_omega(const ResolutionModel& model, const Rational& value) {
  const std::size_t last = model.g_star() + 1;
  return value <= 2 && in_H(model, last, value) && !in_H(model, last, value - 1);
}

inline bool is_candidate(const ResolutionModel& model, std::size_t j, const Rational& value) {
  return is_integral(value * model.a(j));
}

/// E_j contributes `value` by the intersection criterion:
/// candidate and -floor(value D) . E_j >= 2.
inline bool contributes(const ResolutionModel& model, std::size_t j, const Rational& value) {
  if (!is_candidate(model, j, value)) return false;
  IntVector fl(model.n());
  for (std::size_t k = 1; k <= model.n(); ++k) fl[k - 1] = floor(value * model.a(k));
  return -intersect(model, fl, j) >= 2;
}

/// E_j contributes `value` by the ideal criterion: candidate and
/// J(p^value) strictly inside pi_* O_X(-floor(value D) + K + E_j).
inline bool contributes_by_ideal(const ResolutionModel& model, std::size_t j, const Rational& value) {
  if (!is_candidate(model, j, value)) return false;
  return !(shifted_pushforward(model, value, {j}) == multiplier_ideal(model, value));
}

inline std::set<std::size_t> membership_divisors(const ResolutionModel& model, const std::vector<std::size_t>& mem) {
  std::set<std::size_t> out;
  for (std::size_t i : mem) out.insert(model.F_index(i));
  return out;
}

/// All divisors contributing a jumping number. Throws TheoremViolation if the
/// set differs from {F_i : value in H_i}.
inline std::set<std::size_t> contributing_divisors(const ResolutionModel& model, const Rational& value) {
  std::set<std::size_t> found;
  for (std::size_t j = 1; j <= model.n(); ++j)
    if (contributes(model, j, value)) found.insert(j);
  auto expected = membership_divisors(model, memberships(model, value));
  if (found != expected)
    throw TheoremViolation("contributing divisors at " + to_string(value) + " differ from the H_i memberships");
  return found;
}

/// J(p^{value^<}) as pi_* O_X(-floor(value D) + K + sum of F_i over the
/// memberships of value). Checked against J(p^{value - eps}).
inline CompleteIdealRep predecessor_ideal(const ResolutionModel& model, const Rational& value) {
  auto mem = memberships(model, value);
  if (mem.empty()) throw NotMember(to_string(value) + " is not a jumping number");
  auto ideal = shifted_pushforward(model, value, membership_divisors(model, mem));
  if (!(ideal == multiplier_ideal_before(model, value)))
    throw TheoremViolation("predecessor ideal at " + to_string(value) + " is " + ideal.divisor.str() +
                           " but the previous multiplier ideal is " + multiplier_ideal_before(model, value).divisor.str());
  return ideal;
}

/// d^i = dim pi_* O_X(K - floor(value D) + F_i) / J(p^value).
inline Integer dim_d_i(const ResolutionModel& model, std::size_t i, const Rational& value) {
  if (!in_H(model, i, value)) throw NotMember(to_string(value) + " is not in H_" + std::to_string(i));
  auto J = multiplier_ideal(model, value);
  auto bigger = shifted_pushforward(model, value, {model.F_index(i)});
  return quotient_dimension(model, J, bigger);
}

/// dim J(p^{value^<}) / J(p^value); checked against sum_i d^i.
inline Integer total_dimension(const ResolutionModel& model, const Rational& value) {
  auto total = quotient_dimension(model, multiplier_ideal(model, value), predecessor_ideal(model, value));
  Integer sum = 0;
  for (std::size_t i : memberships(model, value)) sum += dim_d_i(model, i, value);
  if (sum != total)
    throw TheoremViolation("quotient dimension " + total.str() + " at " + to_string(value) + " but the d^i add to " + sum.str());
  return total;
}

struct Membership {
  std::size_t index;  // i with value in H_i
  std::vector<Witness> witnesses;
  Decomposition decomposition;
};

struct JumpingNumberRecord {
  Rational value;
  std::vector<Membership> memberships;
  std::set<std::size_t> contributing;
  Integer dimension;
  bool in_omega = false;

  std::vector<std::size_t> membership_indices() const {
    std::vector<std::size_t> out;
    for (const auto& m : memberships) out.push_back(m.index);
    return out;
  }
};

/// Jumping numbers up to `bound` (inclusive). Contribution uses the
/// intersection criterion; `verify` also checks the ideal criterion, the
/// predecessor ideal and dimension additivity.
inline std::vector<JumpingNumberRecord> jumping_numbers(const ResolutionModel& model, const Rational& bound,
                                                        bool verify = false) {
  std::map<Rational, JumpingNumberRecord> by_value;
  for (std::size_t i = 1; i <= model.g_star() + 1; ++i)
    for (auto& el : enumerate_Hi(model, i, bound)) {
      auto& rec = by_value[el.value];
      rec.value = el.value;
      rec.memberships.push_back(Membership{i, std::move(el.witnesses), decompose_membership(model, i, el.value)});
    }
  std::vector<JumpingNumberRecord> out;
  out.reserve(by_value.size());
  for (auto& [value, rec] : by_value) {
    rec.contributing = contributing_divisors(model, value);
    rec.dimension = quotient_dimension(model, multiplier_ideal(model, value), multiplier_ideal_before(model, value));
    rec.in_omega = in_omega(model, value);
    if (verify) {
      for (std::size_t j = 1; j <= model.n(); ++j)
        if (contributes_by_ideal(model, j, value) != (rec.contributing.count(j) != 0))
          throw TheoremViolation("ideal and intersection contribution criteria disagree for E_" + std::to_string(j) +
                                 " at " + to_string(value));
      if (total_dimension(model, value) != rec.dimension)
        throw TheoremViolation("predecessor quotient dimension differs from the oracle at " + to_string(value));
    }
    out.push_back(std::move(rec));
  }
  return out;
}

}  // namespace mulseries
