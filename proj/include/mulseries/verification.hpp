#pragma once

// Property checks over a single model or a generated corpus of models.
// Each check returns data; a failing check never throws.

#include <mulseries/arithmetic.hpp>
#include <mulseries/complete_ideals.hpp>
#include <mulseries/errors.hpp>
#include <mulseries/jumping_analysis.hpp>
#include <mulseries/poincare_series.hpp>
#include <mulseries/valuation_model.hpp>

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <cstdlib>
#include <exception>
#include <functional>
#include <map>
#include <regex>
#include <set>
#include <string>
#include <thread>
#include <utility>
#include <vector>

namespace mulseries {

struct CheckResult {
  std::string name;
  bool passed = true;
  std::string detail;
};

struct ModelReport {
  std::string key;  // contact values, e.g. "(2,3,6)"
  std::vector<CheckResult> checks;

  bool passed() const {
    return std::all_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.passed; });
  }
};

struct VerifyOptions {
  Rational bound = 4;         // jumping numbers checked up to here
  Rational series_bound = 5;  // closed form vs oracle truncation
};

// ---------------------------------------------------------------------------
// Individual checks. Each returns an empty string on success, else the first
// failure found.

namespace checks {

inline std::string contact_round_trip(const ResolutionModel& m) {
  auto prox = proximity_from_contact(m.contact);
  if (prox.n != m.proximity.n || prox.satellite != m.proximity.satellite)
    return "contact values " + m.contact.str() + " rebuild a different chain";
  auto back = contact_from_proximity(m.proximity);
  if (!(back == m.contact)) return "chain gives " + back.str() + ", model stores " + m.contact.str();
  return {};
}

inline std::string intersection_identities(const ResolutionModel& m) {
  for (std::size_t j = 1; j <= m.n(); ++j) {
    Integer d = intersect(m, m.valuation, j);
    Integer want = j == m.n() ? Integer(-1) : Integer(0);
    if (d != want)
      return "D.E_" + std::to_string(j) + " = " + d.str() + ", expected " + want.str() + " (D = " + to_string(m.valuation) + ")";
    Integer k = intersect(m, m.canonical, j);
    if (k != -m.G(j, j) - 2)
      return "K.E_" + std::to_string(j) + " = " + k.str() + ", expected " + (-m.G(j, j) - 2).str() + " (K = " +
             to_string(m.canonical) + ")";
  }
  return {};
}

inline std::string terminal_dichotomy(const ResolutionModel& m) {
  const bool by_values = m.contact.satellite_terminal();
  const bool by_chain = m.terminal_satellite();
  const bool by_stars = m.g() >= 1 && m.g_star() + 1 == m.g();
  if (by_values != by_chain || by_chain != by_stars)
    return std::string("bbar_{g+1} = n_g bbar_g: ") + (by_values ? "yes" : "no") + ", E_n satellite: " +
           (by_chain ? "yes" : "no") + ", g* = g-1: " + (by_stars ? "yes" : "no");
  if (!by_chain && m.g_star() != m.g()) return "free terminal divisor but g* != g";
  return {};
}

/// The neighbour of `star` on the side of E_1, other than star - 1 when the
/// star is reached from below through it.
inline std::size_t root_side_neighbour(const ResolutionModel& m, std::size_t star) {
  std::vector<char> seen(m.n() + 1, 0);
  seen[star] = 1;
  std::vector<std::size_t> stack{1};
  seen[1] = 1;
  while (!stack.empty()) {
    std::size_t v = stack.back();
    stack.pop_back();
    for (std::size_t w : m.dual_graph[v])
      if (!seen[w]) {
        seen[w] = 1;
        stack.push_back(w);
      }
  }
  for (std::size_t w : m.dual_graph[star])
    if (w < star && seen[w]) return w;
  return 0;
}

/// For each star st_i: with nu the valuation of E_{st_i + 1} and phi that of
/// the root-side neighbour of st_i,
///   n_i^phi bbar_i^nu - n_i^nu bbar_i^phi = 1,
/// and bbar_k^phi / bbar_k^nu is the same for every k < i.
inline std::string star_neighbor_identity(const ResolutionModel& m) {
  for (std::size_t i = 1; i <= m.g_star(); ++i) {
    const std::size_t st = m.stars[i - 1];
    const std::string where = "star " + std::to_string(i) + " (E_" + std::to_string(st) + ")";
    if (st + 1 > m.n()) return where + " is terminal";
    std::size_t low = root_side_neighbour(m, st);
    if (low == 0) return where + " has no lower neighbour on the side of E_1";
    ResolutionModel nu = intermediate_valuation(m, st + 1);
    ResolutionModel phi = intermediate_valuation(m, low);
    const auto& cn = nu.contact;
    const auto& cp = phi.contact;
    if (cn.size() < i + 1 || cp.size() < i + 1)
      return where + ": truncated contact values " + cn.str() + " / " + cp.str() + " are too short";
    Integer lhs = cp.n(i) * cn.bbar(i) - cn.n(i) * cp.bbar(i);
    if (lhs != 1)
      return where + ": n_i^phi bbar_i - n_i bbar_i^phi = " + lhs.str() + " with nu " + cn.str() + ", phi = E_" +
             std::to_string(low) + " " + cp.str();
    for (std::size_t k = 0; k < i; ++k)
      if (cp.bbar(k) * cn.bbar(0) != cp.bbar(0) * cn.bbar(k))
        return where + ": bbar_" + std::to_string(k) + " of " + cp.str() + " is not proportional to " + cn.str();
  }
  return {};
}

}  // namespace checks

// ---------------------------------------------------------------------------
// Jump-level data shared by several checks.

namespace detail {

struct JumpData {
  std::vector<Rational> union_H;              // H_1 u ... u H_{g*+1}, <= bound
  FractionalPolynomial oracle;                // dims from the candidate sweep, <= series bound
  std::map<Rational, CompleteIdealRep> ideals;  // J(p^iota) at each oracle jump
};

inline JumpData jump_data(const ResolutionModel& m, const VerifyOptions& opt) {
  JumpData out;
  std::set<Rational> vals;
  for (std::size_t i = 1; i <= m.g_star() + 1; ++i)
    for (const auto& el : enumerate_Hi(m, i, opt.bound)) vals.insert(el.value);
  out.union_H.assign(vals.begin(), vals.end());

  const Rational top = std::max(opt.bound, opt.series_bound);
  out.oracle = FractionalPolynomial(series_denominator(m));
  CompleteIdealRep before = unit_ideal(m);
  for (const auto& c : candidate_exponents(m, top)) {
    auto at = multiplier_ideal(m, c);
    if (!(at == before)) {
      out.oracle.add(c, quotient_dimension(m, at, before));
      if (c <= opt.bound) out.ideals.emplace(c, at);
    }
    before = std::move(at);
  }
  return out;
}

}  // namespace detail

namespace checks {

inline std::string jump_set_matches_H_union(const detail::JumpData& jd, const Rational& bound) {
  std::vector<Rational> oracle;
  for (const auto& [x, c] : jd.oracle.terms())
    if (x <= bound) oracle.push_back(x);
  if (oracle == jd.union_H) return {};
  for (std::size_t k = 0; k < std::max(oracle.size(), jd.union_H.size()); ++k) {
    if (k >= oracle.size()) return to_string(jd.union_H[k]) + " is in H but the multiplier ideal does not jump";
    if (k >= jd.union_H.size() || oracle[k] != jd.union_H[k])
      return "multiplier ideal jumps at " + to_string(oracle[k]) + ", H gives " +
             (k < jd.union_H.size() ? to_string(jd.union_H[k]) : std::string("nothing"));
  }
  return "jump sets differ";
}

inline std::string no_jump_at_one_or_below_lct(const ResolutionModel& m, const detail::JumpData& jd) {
  if (!memberships(m, Rational(1)).empty()) return "1 is in H";
  const Rational l = lct(m);
  for (const auto& [x, c] : jd.oracle.terms()) {
    if (x < l) return "multiplier ideal jumps at " + to_string(x) + " below lct " + to_string(l);
    if (x == 1) return "multiplier ideal jumps at 1";
  }
  if (!jd.union_H.empty() && jd.union_H.front() != l)
    return "smallest element of H is " + to_string(jd.union_H.front()) + ", lct is " + to_string(l);
  return {};
}

inline std::string contribution_criteria(const ResolutionModel& m, const detail::JumpData& jd) {
  for (const auto& x : jd.union_H) {
    auto expected = membership_divisors(m, memberships(m, x));
    for (std::size_t j = 1; j <= m.n(); ++j) {
      const bool by_dot = contributes(m, j, x);
      const bool by_ideal = contributes_by_ideal(m, j, x);
      if (by_dot != by_ideal)
        return "E_" + std::to_string(j) + " at " + to_string(x) + ": intersection criterion " + (by_dot ? "yes" : "no") +
               ", ideal criterion " + (by_ideal ? "yes" : "no");
      if (by_dot != (expected.count(j) != 0))
        return "E_" + std::to_string(j) + (by_dot ? " contributes " : " does not contribute ") + to_string(x) +
               " against the H_i memberships";
    }
  }
  return {};
}

inline std::string predecessor_ideal(const ResolutionModel& m, const detail::JumpData& jd) {
  CompleteIdealRep previous = unit_ideal(m);
  for (const auto& x : jd.union_H) {
    auto mem = memberships(m, x);
    auto pred = shifted_pushforward(m, x, membership_divisors(m, mem));
    if (!(pred == previous))
      return "at " + to_string(x) + " the shifted pushforward is " + pred.divisor.str() +
             " but the multiplier ideal at the previous jump is " + previous.divisor.str();
    auto it = jd.ideals.find(x);
    previous = it != jd.ideals.end() ? it->second : multiplier_ideal(m, x);
  }
  return {};
}

inline std::string dimension_laws(const ResolutionModel& m, const detail::JumpData& jd) {
  const std::size_t last = m.g_star() + 1;
  std::map<std::pair<std::size_t, Rational>, Integer> cache;
  auto d = [&](std::size_t i, const Rational& x) -> const Integer& {
    auto key = std::make_pair(i, x);
    auto it = cache.find(key);
    if (it == cache.end()) it = cache.emplace(key, dim_d_i(m, i, x)).first;
    return it->second;
  };
  for (const auto& x : jd.union_H) {
    Integer sum = 0;
    for (std::size_t i : memberships(m, x)) {
      const Integer& di = d(i, x);
      sum += di;
      if (x < 1 && di != 1) return "d^" + std::to_string(i) + " at " + to_string(x) + " is " + di.str() + ", expected 1";
      auto dec = decompose_membership(m, i, x);
      if (i < last && d(i, dec.base) != di)
        return "d^" + std::to_string(i) + " at " + to_string(x) + " is " + di.str() + " but " + d(i, dec.base).str() +
               " at the shift base " + to_string(dec.base);
      if (i == last && d(i, dec.base) + dec.r != di)
        return "d^" + std::to_string(i) + " at " + to_string(x) + " is " + di.str() + ", expected " +
               d(i, dec.base).str() + " + " + dec.r.str();
      if (i == last && in_omega(m, x) && di != 1)
        return "d^" + std::to_string(i) + " at " + to_string(x) + " in Omega is " + di.str();
    }
    Integer total = jd.oracle.coefficient(x);
    if (sum != total) return "d^i at " + to_string(x) + " add to " + sum.str() + ", quotient dimension is " + total.str();
  }
  return {};
}

inline std::string closed_form_matches_oracle(const ResolutionModel& m, const detail::JumpData& jd,
                                              const Rational& bound) {
  auto cf = closed_form(m);
  const auto& last_e = m.contact.e(m.g_star());
  const auto& last_b = m.contact.bbar(m.g_star() + 1);
  if (Integer(cf.omega_part.size()) != last_e * last_b)
    return "|Omega| = " + std::to_string(cf.omega_part.size()) + ", expected " + (last_e * last_b).str();
  const Rational l = lct(m);
  for (const auto& [x, c] : cf.omega_part.terms())
    if (x < l || x > 2) return "Omega element " + to_string(x) + " outside [lct, 2]";
  for (const auto* part : {&cf.simple_part, &cf.omega_part})
    for (const auto& [x, c] : part->terms())
      if (!is_integral(x * cf.common_denominator))
        return "exponent " + to_string(x) + " is not a multiple of 1/" + cf.common_denominator.str();
  auto cmp = compare_series(expand_truncated(cf, bound), jd.oracle, bound);
  if (!cmp.equal)
    return "closed form and oracle differ at t^(" + to_string(*cmp.first_difference) + "): " + cmp.left.str() + " vs " +
           cmp.right.str();
  return {};
}

}  // namespace checks

namespace detail {

inline CheckResult run_check(const std::string& name, const std::function<std::string()>& body) {
  CheckResult r{name, true, {}};
  try {
    r.detail = body();
    r.passed = r.detail.empty();
  } catch (const std::exception& ex) {
    r.passed = false;
    r.detail = ex.what();
  }
  return r;
}

}  // namespace detail

/// Runs every check on one model, in a fixed order.
inline ModelReport verify_model(const ResolutionModel& m, const VerifyOptions& opt = {}) {
  ModelReport rep{m.contact.str(), {}};
  auto add = [&](const std::string& name, const std::function<std::string()>& body) {
    rep.checks.push_back(detail::run_check(name, body));
  };
  add("contact_round_trip", [&] { return checks::contact_round_trip(m); });
  add("intersection_identities", [&] { return checks::intersection_identities(m); });
  add("terminal_dichotomy", [&] { return checks::terminal_dichotomy(m); });
  add("star_neighbor_identity", [&] { return checks::star_neighbor_identity(m); });

  detail::JumpData jd;
  CheckResult data = detail::run_check("jump_data", [&] {
    jd = detail::jump_data(m, opt);
    return std::string();
  });
  auto add_jump = [&](const std::string& name, const std::function<std::string()>& body) {
    if (!data.passed)
      rep.checks.push_back(CheckResult{name, false, "multiplier ideals unavailable: " + data.detail});
    else
      add(name, body);
  };
  add_jump("no_jump_at_one_or_below_lct", [&] { return checks::no_jump_at_one_or_below_lct(m, jd); });
  add_jump("jump_set_matches_H_union", [&] { return checks::jump_set_matches_H_union(jd, opt.bound); });
  add_jump("contribution_criteria", [&] { return checks::contribution_criteria(m, jd); });
  add_jump("predecessor_ideal", [&] { return checks::predecessor_ideal(m, jd); });
  add_jump("dimension_laws", [&] { return checks::dimension_laws(m, jd); });
  add_jump("closed_form_matches_oracle", [&] { return checks::closed_form_matches_oracle(m, jd, opt.series_bound); });
  return rep;
}

// ---------------------------------------------------------------------------
// Corpus

struct CorpusSpec {
  Integer b0_max = 4;
  Integer last_max = 40;
};

/// Parses "b0<=4,bg<=40" (either order, whitespace ignored).
inline CorpusSpec parse_corpus_spec(const std::string& text) {
  std::string s;
  for (char ch : text)
    if (ch != ' ' && ch != '\t') s += ch;
  static const std::regex item(R"((b0|bg)<=(\d{1,6}))");
  CorpusSpec spec;
  std::set<std::string> seen;
  std::size_t start = 0;
  while (start <= s.size()) {
    std::size_t comma = s.find(',', start);
    std::string part = s.substr(start, comma == std::string::npos ? std::string::npos : comma - start);
    std::smatch match;
    if (!std::regex_match(part, match, item)) throw InvalidInput("corpus term '" + part + "' (expected b0<=N or bg<=N)");
    if (!seen.insert(match[1]).second) throw InvalidInput("corpus bound " + match[1].str() + " given twice");
    (match[1] == "b0" ? spec.b0_max : spec.last_max) = Integer(match[2].str());
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  if (spec.b0_max < 1 || spec.last_max < 1) throw InvalidInput("corpus bounds must be positive");
  return spec;
}

/// All valid contact sequences with bbar_0 <= b0_max and bbar_{g+1} <= last_max,
/// in lexicographic order. Values strictly increase, so every entry is
/// bounded by last_max as well.
inline std::vector<MaximalContactSequence> generate_corpus(const CorpusSpec& spec) {
  std::vector<IntVector> found;
  std::function<void(IntVector&, const Integer&)> extend = [&](IntVector& prefix, const Integer& e) {
    if (e == 1) {
      for (Integer v = 1; v <= spec.last_max; ++v) {
        prefix.push_back(v);
        try {
          MaximalContactSequence seq(prefix);
          found.push_back(prefix);
        } catch (const InvalidContactSequence&) {
        }
        prefix.pop_back();
      }
      return;
    }
    for (Integer v = prefix.back() + 1; v <= spec.last_max; ++v) {
      Integer next = gcd(e, v);
      if (next == e) continue;
      prefix.push_back(v);
      extend(prefix, next);
      prefix.pop_back();
    }
  };
  for (Integer b0 = 1; b0 <= spec.b0_max; ++b0) {
    IntVector prefix{b0};
    extend(prefix, b0);
  }
  std::sort(found.begin(), found.end());
  std::vector<MaximalContactSequence> out;
  out.reserve(found.size());
  for (auto& v : found) out.emplace_back(std::move(v));
  return out;
}

/// Worker count: MULSERIES_THREADS if set and positive, else the hardware
/// concurrency, never more than `jobs`.
inline std::size_t worker_count(std::size_t jobs) {
  std::size_t w = std::max(1u, std::thread::hardware_concurrency());
  if (const char* env = std::getenv("MULSERIES_THREADS")) {
    char* end = nullptr;
    long v = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && v > 0) w = static_cast<std::size_t>(v);
  }
  return std::max<std::size_t>(1, std::min(w, jobs));
}

/// Applies `fn` to every index in [0, jobs) on up to `workers` threads.
/// Results land in index order.
template <class Result, class Fn>
std::vector<Result> parallel_map(std::size_t jobs, std::size_t workers, Fn&& fn) {
  std::vector<Result> out(jobs);
  std::atomic<std::size_t> next{0};
  auto work = [&] {
    for (std::size_t k; (k = next.fetch_add(1)) < jobs;) out[k] = fn(k);
  };
  if (workers <= 1) {
    work();
    return out;
  }
  std::vector<std::thread> pool;
  for (std::size_t t = 0; t < workers; ++t) pool.emplace_back(work);
  for (auto& t : pool) t.join();
  return out;
}

/// Verifies every corpus model. Reports are sorted by contact values.
inline std::vector<ModelReport> verify_corpus(const std::vector<MaximalContactSequence>& corpus,
                                              const VerifyOptions& opt = {}, std::size_t workers = 0) {
  if (workers == 0) workers = worker_count(corpus.size());
  return parallel_map<ModelReport>(corpus.size(), workers, [&](std::size_t k) {
    try {
      return verify_model(model_from_contact(corpus[k]), opt);
    } catch (const std::exception& ex) {
      return ModelReport{corpus[k].str(), {CheckResult{"build_model", false, ex.what()}}};
    }
  });
}

}  // namespace mulseries
