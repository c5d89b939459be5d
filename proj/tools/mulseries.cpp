// mulseries: jumping numbers and Poincare series of multiplier ideals of a
// simple complete ideal in a smooth surface germ.
//
//   mulseries <info|jumps|ideal|series|verify> [--input FILE] [--bound Q]
//             [--at Q] [--format plain|latex|json|csv] [--check]
//             [--corpus "b0<=4,bg<=40"]
//
// Exit status: 0 success, 1 a check failed, 2 invalid input.

#include <mulseries/mulseries.hpp>

#include <CLI11.hpp>

#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

using namespace mulseries;

namespace {

constexpr int kOk = 0;
constexpr int kCheckFailed = 1;
constexpr int kInvalid = 2;

struct RunConfig {
  std::string command;
  std::string input;
  Rational bound = 3;
  std::optional<Rational> at;
  std::optional<Format> format;
  bool check = false;
  std::optional<CorpusSpec> corpus;
};

std::string join(const std::vector<std::string>& parts, const std::string& sep) {
  std::string out;
  for (std::size_t k = 0; k < parts.size(); ++k) out += (k ? sep : "") + parts[k];
  return out;
}

template <class Range, class Fn>
std::vector<std::string> mapped(const Range& r, Fn fn) {
  std::vector<std::string> out;
  for (const auto& x : r) out.push_back(fn(x));
  return out;
}

std::string divisor_name(std::size_t j) { return "E_" + std::to_string(j); }

std::string exponent_text(const Rational& x) { return is_integral(x) ? to_string(x) : "(" + to_string(x) + ")"; }

// ---------------------------------------------------------------------------

void print_info(const ResolutionModel& m, Format f) {
  if (f == Format::json) {
    std::cout << to_json(m).dump(2) << "\n";
    return;
  }
  std::vector<std::string> e, ni, sat, edges, F;
  for (std::size_t i = 0; i <= m.g(); ++i) e.push_back(m.contact.e(i).str());
  for (std::size_t i = 1; i <= m.g(); ++i) ni.push_back(m.contact.n(i).str());
  for (auto [j, i] : m.proximity.satellite) sat.push_back("p_" + std::to_string(j) + " on E_" + std::to_string(i));
  for (std::size_t i = 1; i <= m.n(); ++i)
    for (std::size_t j : m.dual_graph[i])
      if (i < j) edges.push_back(divisor_name(i) + "-" + divisor_name(j));
  for (std::size_t i = 1; i <= m.g_star() + 1; ++i) F.push_back("F_" + std::to_string(i) + " = " + divisor_name(m.F_index(i)));

  if (f == Format::csv) {
    std::cout << "key,value\n"
              << "maximal_contact," << join(mapped(m.contact.values(), [](const Integer& x) { return x.str(); }), ";") << "\n"
              << "g," << m.g() << "\n"
              << "g_star," << m.g_star() << "\n"
              << "n," << m.n() << "\n"
              << "valuation_divisor," << join(mapped(m.valuation, [](const Integer& x) { return x.str(); }), ";") << "\n"
              << "canonical_divisor," << join(mapped(m.canonical, [](const Integer& x) { return x.str(); }), ";") << "\n"
              << "F," << join(mapped(m.F, [](std::size_t j) { return std::to_string(j); }), ";") << "\n"
              << "lct," << to_string(lct(m)) << "\n";
    return;
  }
  if (f == Format::latex) {
    std::cout << "\\bar\\beta = " << m.contact.str() << ",\\quad g = " << m.g() << ",\\quad g^* = " << m.g_star()
              << ",\\quad D = " << to_string(m.valuation) << ",\\quad K = " << to_string(m.canonical)
              << ",\\quad \\mathrm{lct} = " << to_string(lct(m)) << "\n";
    return;
  }
  auto list = [](const std::vector<std::string>& v) { return v.empty() ? std::string("none") : join(v, " "); };
  std::cout << "maximal contact values: " << m.contact.str() << "\n"
            << "e: (" << join(e, ",") << ")\n"
            << "n_i: (" << join(ni, ",") << ")\n"
            << "g = " << m.g() << ", g* = " << m.g_star() << ", n = " << m.n() << "\n"
            << "satellite points: " << (sat.empty() ? std::string("none") : join(sat, ", ")) << "\n"
            << "terminal divisor: " << (m.terminal_satellite() ? "satellite" : "free") << "\n"
            << "D = " << to_string(m.valuation) << "\n"
            << "K = " << to_string(m.canonical) << "\n"
            << "dual graph: " << list(edges) << "\n"
            << "stars: " << list(mapped(m.stars, divisor_name)) << "\n"
            << "dead vertices: " << list(mapped(m.dead, divisor_name)) << "\n"
            << join(F, ", ") << "\n"
            << "lct = " << to_string(lct(m)) << "\n";
}

void print_jumps(const ResolutionModel& m, const std::vector<JumpingNumberRecord>& jumps, Format f) {
  auto members = [](const JumpingNumberRecord& r) {
    return mapped(r.membership_indices(), [](std::size_t i) { return std::to_string(i); });
  };
  auto contributing = [](const JumpingNumberRecord& r) { return mapped(r.contributing, divisor_name); };
  switch (f) {
    case Format::json: {
      nlohmann::json arr = nlohmann::json::array();
      for (const auto& r : jumps) arr.push_back(to_json(r));
      std::cout << nlohmann::json{{"maximal_contact", to_json(m.contact.values())}, {"jumping_numbers", arr}}.dump(2)
                << "\n";
      return;
    }
    case Format::csv:
      std::cout << "value,dimension,memberships,contributing,omega\n";
      for (const auto& r : jumps)
        std::cout << to_string(r.value) << "," << r.dimension.str() << "," << join(members(r), ";") << ","
                  << join(contributing(r), ";") << "," << (r.in_omega ? 1 : 0) << "\n";
      return;
    case Format::latex:
      std::cout << "\\begin{tabular}{rrll}\n\\iota & d & i : \\iota\\in H_i & \\text{contributing} \\\\\n\\hline\n";
      for (const auto& r : jumps) {
        Rational v = r.value;
        std::string val = is_integral(v) ? to_string(v)
                                         : "\\frac{" + numerator(v).str() + "}{" + denominator(v).str() + "}";
        std::cout << val << " & " << r.dimension.str() << " & " << join(members(r), ",") << " & "
                  << join(contributing(r), ",") << " \\\\\n";
      }
      std::cout << "\\end{tabular}\n";
      return;
    case Format::plain: {
      std::vector<std::vector<std::string>> rows{{"value", "dim", "H_i", "contributing", "omega"}};
      for (const auto& r : jumps)
        rows.push_back({to_string(r.value), r.dimension.str(), join(members(r), ","), join(contributing(r), ","),
                        r.in_omega ? "yes" : ""});
      std::vector<std::size_t> width(rows[0].size(), 0);
      for (const auto& row : rows)
        for (std::size_t c = 0; c < row.size(); ++c) width[c] = std::max(width[c], row[c].size());
      for (const auto& row : rows) {
        std::string line;
        for (std::size_t c = 0; c < row.size(); ++c) line += row[c] + std::string(width[c] - row[c].size() + 2, ' ');
        while (!line.empty() && line.back() == ' ') line.pop_back();
        std::cout << line << "\n";
      }
      return;
    }
  }
}

void print_ideal(const ResolutionModel& m, const Rational& at, const CompleteIdealRep& ideal, Format f) {
  switch (f) {
    case Format::json: {
      auto j = to_json(m, ideal);
      j["at"] = to_string(at);
      std::cout << j.dump(2) << "\n";
      return;
    }
    case Format::csv:
      std::cout << "j,coefficient,multiplicity\n";
      for (std::size_t j = 1; j <= m.n(); ++j)
        std::cout << j << "," << ideal.divisor.at(j).str() << "," << ideal.multiplicities[j - 1].str() << "\n";
      return;
    case Format::latex: {
      std::vector<std::string> terms;
      for (std::size_t j = 1; j <= m.n(); ++j) {
        const auto& c = ideal.divisor.at(j);
        if (c != 0) terms.push_back((c == 1 ? std::string() : c.str()) + "E_{" + std::to_string(j) + "}");
      }
      std::cout << "\\mathcal{J}(\\wp^{" << to_string(at) << "}) = \\pi_*\\mathcal{O}_X(-("
                << (terms.empty() ? "0" : join(terms, "+")) << ")),\\quad \\ell = " << colength(m, ideal).str() << "\n";
      return;
    }
    case Format::plain:
      std::cout << "J(p^" << exponent_text(at) << ")\n"
                << "divisor: " << ideal.divisor.str() << "\n"
                << "multiplicities: " << to_string(ideal.multiplicities) << "\n"
                << "colength: " << colength(m, ideal).str() << "\n";
      return;
  }
}

int run_series(const ResolutionModel& m, const RunConfig& cfg, Format f) {
  auto cf = closed_form(m);
  auto truncation = expand_truncated(cf, cfg.bound);
  std::optional<SeriesComparison> cmp;
  if (cfg.check) cmp = compare_series(truncation, oracle_series(m, cfg.bound), cfg.bound);

  std::string verdict;
  if (cmp) {
    verdict = "closed form ≡ oracle up to t^" + exponent_text(cfg.bound) + ": ";
    verdict += cmp->equal ? "OK"
                          : "MISMATCH at t^" + exponent_text(*cmp->first_difference) + " (closed form " +
                                cmp->left.str() + ", oracle " + cmp->right.str() + ")";
  }

  switch (f) {
    case Format::json: {
      nlohmann::json doc{{"denominator", to_json(cf.common_denominator)},
                         {"closed_form", closed_form_json(cf)},
                         {"truncation", detail::numerator_pairs(truncation, cf.common_denominator)},
                         {"bound", to_string(cfg.bound)}};
      if (cmp) {
        nlohmann::json c{{"equal", cmp->equal}};
        if (!cmp->equal)
          c.update({{"first_difference", to_string(*cmp->first_difference)},
                    {"closed_form", to_json(cmp->left)},
                    {"oracle", to_json(cmp->right)}});
        doc["check"] = c;
      }
      std::cout << doc.dump(2) << "\n";
      break;
    }
    case Format::csv:
      std::cout << render(cf, Format::csv);
      for (const auto& [x, c] : truncation.terms()) std::cout << "truncation," << to_string(x) << "," << c.str() << "\n";
      if (cmp) std::cout << "check," << (cmp->equal ? "OK" : "MISMATCH") << ",\n";
      break;
    case Format::latex:
      std::cout << "P(t) = " << render(cf, Format::latex) << "\n"
                << "P(t) = " << render(truncation, Format::latex) << " + \\cdots\n";
      if (cmp) std::cout << "% " << verdict << "\n";
      break;
    case Format::plain:
      std::cout << render(cf, Format::plain) << "\n"
                << "up to t^" << exponent_text(cfg.bound) << ": " << render(truncation, Format::plain) << "\n";
      if (cmp) std::cout << verdict << "\n";
      break;
  }
  return cmp && !cmp->equal ? kCheckFailed : kOk;
}

int run_verify(const std::vector<ModelReport>& reports, Format f) {
  bool all = true;
  for (const auto& r : reports) all = all && r.passed();
  if (f == Format::json) {
    nlohmann::json models = nlohmann::json::array();
    for (const auto& r : reports) {
      nlohmann::json checks = nlohmann::json::array();
      for (const auto& c : r.checks) {
        nlohmann::json entry{{"name", c.name}, {"passed", c.passed}};
        if (!c.passed) entry["detail"] = c.detail;
        checks.push_back(entry);
      }
      models.push_back({{"model", r.key}, {"passed", r.passed()}, {"checks", checks}});
    }
    std::cout << nlohmann::json{{"passed", all}, {"model_count", reports.size()}, {"models", models}}.dump(2) << "\n";
  } else {
    std::size_t failed = 0;
    for (const auto& r : reports) {
      if (!r.passed()) ++failed;
      for (const auto& c : r.checks) {
        if (f == Format::csv)
          std::cout << r.key << "," << c.name << "," << (c.passed ? "PASS" : "FAIL") << "\n";
        else if (!c.passed || reports.size() == 1)
          std::cout << (c.passed ? "PASS " : "FAIL ") << r.key << " " << c.name << (c.passed ? "" : ": " + c.detail)
                    << "\n";
      }
    }
    if (f != Format::csv)
      std::cout << reports.size() - failed << "/" << reports.size() << " models passed every check\n";
  }
  return all ? kOk : kCheckFailed;
}

int run(const RunConfig& cfg) {
  const Format default_format = cfg.command == "verify" ? Format::json : Format::plain;
  const Format f = cfg.format.value_or(default_format);

  if (cfg.command == "verify" && cfg.corpus) {
    VerifyOptions opt{cfg.bound, cfg.bound};
    return run_verify(verify_corpus(generate_corpus(*cfg.corpus), opt), f);
  }
  if (cfg.input.empty()) throw InvalidInput("--input is required" + std::string(cfg.command == "verify" ? " (or --corpus)" : ""));

  ModelInput in = read_model_input(cfg.input);
  ResolutionModel m = realize(in);

  if (cfg.command == "verify") {
    VerifyOptions opt{cfg.bound, cfg.bound};
    return run_verify({verify_model(m, opt)}, f);
  }
  require_consistent(in, m);

  if (cfg.command == "info") {
    print_info(m, f);
  } else if (cfg.command == "jumps") {
    print_jumps(m, jumping_numbers(m, cfg.bound), f);
  } else if (cfg.command == "ideal") {
    if (!cfg.at) throw InvalidInput("ideal needs --at");
    if (*cfg.at <= 0) throw InvalidInput("--at must be positive");
    print_ideal(m, *cfg.at, multiplier_ideal(m, *cfg.at), f);
  } else if (cfg.command == "series") {
    return run_series(m, cfg, f);
  }
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Jumping numbers and Poincare series of multiplier ideals of simple complete ideals"};

  RunConfig cfg;
  std::string command, bound_text, at_text, format_text, corpus_text;
  app.add_option("command", command, "info, jumps, ideal, series or verify")
      ->required()
      ->check(CLI::IsMember({"info", "jumps", "ideal", "series", "verify"}));
  app.add_option("--input,-i", cfg.input, "JSON file with maximal_contact or proximity");
  app.add_option("--bound,-b", bound_text, "largest exponent considered, e.g. 3 or 7/2 (default 3)");
  app.add_option("--at", at_text, "exponent for the ideal command");
  app.add_option("--format,-f", format_text, "plain, latex, json or csv");
  app.add_flag("--check", cfg.check, "series: compare the closed form with the colength oracle");
  app.add_option("--corpus", corpus_text, "verify a generated corpus, e.g. \"b0<=4,bg<=40\"");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kInvalid;
  }

  try {
    cfg.command = command;
    if (!bound_text.empty()) cfg.bound = parse_rational(bound_text);
    if (cfg.bound <= 0) throw InvalidInput("--bound must be positive");
    if (!at_text.empty()) cfg.at = parse_rational(at_text);
    if (!format_text.empty()) cfg.format = parse_format(format_text);
    if (!corpus_text.empty()) {
      if (command != "verify") throw InvalidInput("--corpus only applies to verify");
      cfg.corpus = parse_corpus_spec(corpus_text);
    }
    return run(cfg);
  } catch (const std::invalid_argument& ex) {
    std::cerr << "mulseries: " << ex.what() << "\n";
    return kInvalid;
  } catch (const TheoremViolation& ex) {
    std::cerr << "mulseries: " << ex.what() << "\n";
    return kCheckFailed;
  } catch (const std::exception& ex) {
    std::cerr << "mulseries: " << ex.what() << "\n";
    return kInvalid;
  }
}
