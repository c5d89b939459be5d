#pragma once

// JSON input and output.
//
// Input documents carry exactly one of
//   {"maximal_contact": [2, 3, 6]}
//   {"proximity": {"n": 3, "satellite": {"3": 1}}}
// and may add explicit "valuation_divisor" / "canonical_divisor" vectors,
// which replace the derived ones (used to feed hand-edited models to verify).

#include <mulseries/arithmetic.hpp>
#include <mulseries/complete_ideals.hpp>
#include <mulseries/errors.hpp>
#include <mulseries/jumping_analysis.hpp>
#include <mulseries/poincare_series.hpp>
#include <mulseries/valuation_model.hpp>

#include <json.hpp>

#include <cstddef>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace mulseries {

struct ModelInput {
  std::optional<MaximalContactSequence> contact;
  std::optional<ProximityStructure> proximity;
  std::optional<IntVector> valuation_divisor;
  std::optional<IntVector> canonical_divisor;
};

namespace detail {

inline Integer json_integer(const nlohmann::json& v, const std::string& where) {
  if (v.is_number_integer()) return v.is_number_unsigned() ? Integer(v.get<unsigned long long>()) : Integer(v.get<long long>());
  if (v.is_string()) {
    const auto& s = v.get_ref<const std::string&>();
    std::string_view digits = s;
    if (!digits.empty() && digits.front() == '-') digits.remove_prefix(1);
    if (detail::all_digits(digits)) return Integer(s);
  }
  throw InvalidInput(where + ": expected an integer, got " + v.dump());
}

inline std::size_t json_index(const nlohmann::json& v, const std::string& where) {
  Integer x = json_integer(v, where);
  if (x < 0 || x > 1000000) throw InvalidInput(where + ": index out of range");
  return to_size(x);
}

inline std::size_t parse_index_key(const std::string& key) {
  if (!all_digits(key) || key.size() > 7) throw InvalidInput("satellite key '" + key + "' is not a divisor index");
  return std::stoul(key);
}

inline IntVector json_vector(const nlohmann::json& v, const std::string& where) {
  if (!v.is_array()) throw InvalidInput(where + ": expected an array");
  IntVector out;
  for (std::size_t k = 0; k < v.size(); ++k) out.push_back(json_integer(v[k], where + "[" + std::to_string(k) + "]"));
  return out;
}

}  // namespace detail

inline ModelInput parse_model_input(const nlohmann::json& doc) {
  if (!doc.is_object()) throw InvalidInput("input must be a JSON object");
  for (auto it = doc.begin(); it != doc.end(); ++it) {
    const auto& k = it.key();
    if (k != "maximal_contact" && k != "proximity" && k != "valuation_divisor" && k != "canonical_divisor")
      throw InvalidInput("unknown key '" + k + "'");
  }
  const bool has_contact = doc.contains("maximal_contact");
  const bool has_prox = doc.contains("proximity");
  if (has_contact == has_prox) throw InvalidInput("exactly one of 'maximal_contact' and 'proximity' must be present");

  ModelInput in;
  if (has_contact) in.contact = MaximalContactSequence(detail::json_vector(doc["maximal_contact"], "maximal_contact"));
  if (has_prox) {
    const auto& p = doc["proximity"];
    if (!p.is_object() || !p.contains("n")) throw InvalidInput("'proximity' needs an object with key 'n'");
    ProximityStructure prox;
    prox.n = detail::json_index(p["n"], "proximity.n");
    if (p.contains("satellite")) {
      const auto& sat = p["satellite"];
      if (!sat.is_object()) throw InvalidInput("'proximity.satellite' must be an object");
      for (auto it = sat.begin(); it != sat.end(); ++it)
        prox.satellite[detail::parse_index_key(it.key())] = detail::json_index(it.value(), "proximity.satellite");
    }
    prox.validate();
    in.proximity = prox;
  }
  if (doc.contains("valuation_divisor"))
    in.valuation_divisor = detail::json_vector(doc["valuation_divisor"], "valuation_divisor");
  if (doc.contains("canonical_divisor"))
    in.canonical_divisor = detail::json_vector(doc["canonical_divisor"], "canonical_divisor");
  return in;
}

inline ModelInput parse_model_input(const std::string& text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& ex) {
    throw InvalidInput(std::string("malformed JSON: ") + ex.what());
  }
  return parse_model_input(doc);
}

inline ModelInput read_model_input(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw InvalidInput("cannot open " + path);
  std::ostringstream ss;
  ss << f.rdbuf();
  return parse_model_input(ss.str());
}

/// The model as given, explicit divisor vectors included.
inline ResolutionModel realize(const ModelInput& in) {
  ResolutionModel m = in.contact ? model_from_contact(*in.contact) : build_resolution(*in.proximity);
  auto apply = [&](const std::optional<IntVector>& v, IntVector& target, const char* name) {
    if (!v) return;
    if (v->size() != m.n())
      throw InvalidInput(std::string(name) + " has " + std::to_string(v->size()) + " entries, model has n = " + std::to_string(m.n()));
    target = *v;
  };
  apply(in.valuation_divisor, m.valuation, "valuation_divisor");
  apply(in.canonical_divisor, m.canonical, "canonical_divisor");
  return m;
}

/// Rejects explicit divisor vectors that disagree with the derived ones.
inline void require_consistent(const ModelInput& in, const ResolutionModel& model) {
  ResolutionModel derived = in.contact ? model_from_contact(*in.contact) : build_resolution(*in.proximity);
  if (model.valuation != derived.valuation)
    throw InconsistentModel("valuation divisor " + to_string(model.valuation) + " violates D.E_j = 0 (j < n), D.E_n = -1; expected " +
                            to_string(derived.valuation));
  if (model.canonical != derived.canonical)
    throw InconsistentModel("canonical divisor " + to_string(model.canonical) + " violates K.E_j = -E_j^2 - 2; expected " +
                            to_string(derived.canonical));
}

// ---------------------------------------------------------------------------
// Output

inline nlohmann::json to_json(const IntVector& v) {
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& x : v) arr.push_back(to_json(x));
  return arr;
}

inline nlohmann::json to_json(const ExceptionalDivisor& d) { return to_json(d.coeffs()); }

inline nlohmann::json to_json(const ResolutionModel& model, const CompleteIdealRep& ideal) {
  return {{"divisor", to_json(ideal.divisor)},
          {"multiplicities", to_json(ideal.multiplicities)},
          {"colength", to_json(colength(model, ideal))}};
}

inline nlohmann::json to_json(const ProximityStructure& prox) {
  nlohmann::json sat = nlohmann::json::object();
  for (auto [j, i] : prox.satellite) sat[std::to_string(j)] = i;
  return {{"n", prox.n}, {"satellite", sat}};
}

inline nlohmann::json to_json(const ResolutionModel& m) {
  nlohmann::json e = nlohmann::json::array(), nn = nlohmann::json::array();
  for (std::size_t i = 0; i <= m.g(); ++i) e.push_back(to_json(m.contact.e(i)));
  for (std::size_t i = 1; i <= m.g(); ++i) nn.push_back(to_json(m.contact.n(i)));
  nlohmann::json edges = nlohmann::json::array();
  for (std::size_t i = 1; i <= m.n(); ++i)
    for (std::size_t j : m.dual_graph[i])
      if (i < j) edges.push_back({i, j});
  nlohmann::json G = nlohmann::json::array();
  for (const auto& row : m.intersection) G.push_back(to_json(row));
  return {{"maximal_contact", to_json(m.contact.values())},
          {"e", e},
          {"n_i", nn},
          {"g", m.g()},
          {"g_star", m.g_star()},
          {"n", m.n()},
          {"proximity", to_json(m.proximity)},
          {"intersection_matrix", G},
          {"valuation_divisor", to_json(m.valuation)},
          {"canonical_divisor", to_json(m.canonical)},
          {"dual_graph_edges", edges},
          {"star_vertices", m.stars},
          {"dead_vertices", m.dead},
          {"subtrees", m.subtrees},
          {"F", m.F},
          {"terminal", m.terminal_satellite() ? "satellite" : "free"},
          {"lct", to_string(lct(m))}};
}

inline nlohmann::json to_json(const Witness& w) {
  nlohmann::json out = {{"p", to_json(w.p)}, {"q", to_json(w.q)}};
  if (w.r) out["r"] = to_json(*w.r);
  return out;
}

inline nlohmann::json to_json(const JumpingNumberRecord& rec) {
  nlohmann::json mem = nlohmann::json::array(), wit = nlohmann::json::object();
  for (const auto& m : rec.memberships) {
    mem.push_back(m.index);
    nlohmann::json ws = nlohmann::json::array();
    for (const auto& w : m.witnesses) ws.push_back(to_json(w));
    wit[std::to_string(m.index)] = ws;
  }
  return {{"value", to_string(rec.value)},
          {"memberships", mem},
          {"witnesses", wit},
          {"contributing", rec.contributing},
          {"dimension", to_json(rec.dimension)},
          {"in_omega", rec.in_omega}};
}

}  // namespace mulseries
