#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

#include "qsr/definability.hpp"
#include "qsr/error.hpp"
#include "qsr/parser.hpp"
#include "qsr/poly_check.hpp"
#include "qsr/solver.hpp"

using namespace qsr;

namespace {

std::string slurp(const std::string& path) {
  if (path == "-") {
    std::stringstream ss;
    ss << std::cin.rdbuf();
    return ss.str();
  }
  std::ifstream in(path);
  if (!in) throw Error("cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  for (std::string item; std::getline(ss, item, ',');) {
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

int run_solve(const std::string& file, SolveOptions opt, const std::string& via, bool json) {
  const auto inst = parse_instance(slurp(file));
  if (!via.empty()) opt.method = "translate:" + via;
  const auto r = solve(inst, opt);
  if (json) {
    std::cout << to_json(r) << "\n";
  } else {
    std::cout << (r.satisfiable ? "satisfiable" : "unsatisfiable") << "  [" << r.strategy
              << ", " << r.stats.nodes << " nodes, " << r.stats.firings << " firings]\n";
    if (r.witness) {
      for (const auto& [name, e] : *r.witness) std::cout << "  " << name << " = " << to_string(e) << "\n";
    }
  }
  return r.satisfiable ? 0 : 1;
}

int run_translate(const std::string& file, const std::string& via, bool forw_free) {
  auto inst = parse_instance(slurp(file));
  const auto& I = catalog().interpretation(via);
  if (auto* q = std::get_if<QualInstance>(&inst)) {
    if (forw_free) {
      std::cout << write_instance(eliminate_forw(*q));
      return 0;
    }
    std::cout << "# " << q->calculus.name() << " instance translated through " << I.name << "\n"
              << write_instance(translate_instance(*q, I));
  } else {
    std::cout << "# point instance translated through " << I.name << "\n"
              << write_instance(translate_instance(std::get<PointInstance>(inst), I));
  }
  return 0;
}

int run_classify(const std::string& relation, const std::string& file) {
  std::string text = file.empty() ? relation : slurp(file);
  for (auto& ch : text) {
    if (ch == ';') ch = '\n';
  }
  const auto cs = parse_clauses(text);
  if (cs.variables.empty()) throw Error("no clauses given");
  const auto R = models_of(cs);
  const std::vector<LanguageEntry> lang{{"relation", R, cs}};
  const auto report = tractability_report(lang);
  std::cout << report << "\n";
  return nlohmann::json::parse(report)["verdict"] == "tractable" ? 0 : 1;
}

int run_homotopy(const std::string& family, std::size_t samples, std::uint64_t seed, bool json) {
  const auto w = catalog().homotopy(family);
  const auto tuples = homotopy_samples(w, samples, seed);
  auto r = check_homotopy_identity(w, tuples);
  r.seed = seed;
  if (json) {
    nlohmann::ordered_json j;
    j["family"] = family;
    j["composed"] = w.composed.name;
    j["theta"] = w.theta.to_string();
    j["checked"] = r.checked;
    j["skipped"] = r.skipped;
    j["counterexamples"] = r.counterexamples;
    j["unique_everywhere"] = r.unique_everywhere;
    if (r.first_counterexample) j["first_counterexample"] = *r.first_counterexample;
    j["notices"] = r.notices;
    j["seed"] = seed;
    std::cout << j.dump(2) << "\n";
  } else {
    std::cout << w.composed.name << ": " << r.checked << " samples checked, " << r.skipped
              << " skipped, " << r.counterexamples << " counterexamples"
              << (r.unique_everywhere ? ", image unique everywhere" : "") << "\n";
    for (const auto& n : r.notices) std::cout << "  note: " << n << "\n";
    if (r.first_counterexample) std::cout << "  first counterexample: " << *r.first_counterexample << "\n";
  }
  return r.passed() ? 0 : 1;
}

int run_compose(const std::string& outer, const std::string& inner) {
  std::vector<Interpretation> is;
  for (const auto& n : split_list(inner)) is.push_back(catalog().interpretation(n));
  const auto c = compose(catalog().interpretation(outer), is);
  std::cout << c.name << "\n"
            << "  " << c.target.name() << " in " << c.source.name() << ", dimension "
            << c.dimension << "\n"
            << "  domain: " << c.domain.to_string() << "\n";
  for (const auto& [sym, f] : c.relations) std::cout << "  " << sym << ": " << f.to_string() << "\n";
  for (const auto& n : c.notes) std::cout << "  note: " << n << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Qualitative constraint reasoning: solving, translation and Horn classification"};
  app.require_subcommand(1);

  std::string file, via, method = "auto", relation, outer, inner, family;
  bool json = false, serial = false, forw_free = false;
  std::uint64_t seed = 0;
  std::size_t max_slots = kBruteForceSlotCap, samples = 1000;

  auto* solve_cmd = app.add_subcommand("solve", "Decide an instance file");
  solve_cmd->add_option("file", file, "instance file ('-' for stdin)")->required();
  solve_cmd->add_option("--method", method, "auto | bruteforce | backtracking | ordhorn | translate:<name>");
  solve_cmd->add_option("--via", via, "solve after translating through a catalog interpretation");
  solve_cmd->add_option("--seed", seed, "recorded in the report");
  solve_cmd->add_option("--max-slots", max_slots, "brute force slot cap");
  solve_cmd->add_flag("--serial", serial, "disable the parallel brute force");
  solve_cmd->add_flag("--json", json, "JSON report");

  auto* translate_cmd = app.add_subcommand("translate", "Translate an instance through an interpretation");
  translate_cmd->add_option("file", file)->required();
  translate_cmd->add_option("--via", via, "catalog interpretation, e.g. ia.J");
  translate_cmd->add_flag("--eliminate-forw", forw_free, "DIA: replace forw constraints by a same-direction chain");

  auto* classify_cmd = app.add_subcommand("classify", "Horn classes and pp/dual-pp preservation of a relation");
  auto* rel_opt = classify_cmd->add_option("--relation", relation, "clauses separated by ';'");
  auto* file_opt = classify_cmd->add_option("--file", file, "clause file, one clause per line");
  rel_opt->excludes(file_opt);
  classify_cmd->add_flag("--json", json, "accepted for symmetry; output is always JSON");

  auto* homotopy_cmd = app.add_subcommand("check-homotopy", "Sample the homotopy of a catalog family");
  homotopy_cmd->add_option("family", family, "ia | ra | cdc | dia");
  homotopy_cmd->add_option("--via", family, "same as the positional family");
  homotopy_cmd->add_option("--samples", samples);
  homotopy_cmd->add_option("--seed", seed);
  homotopy_cmd->add_flag("--json", json);

  auto* compose_cmd = app.add_subcommand("compose", "Print a composed interpretation");
  compose_cmd->add_option("--outer", outer, "e.g. ia.J")->required();
  compose_cmd->add_option("--inner", inner, "comma separated, e.g. ia.I1,ia.I2")->required();

  app.add_subcommand("catalog", "List catalog interpretations and definitions");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (*solve_cmd) {
      SolveOptions opt;
      opt.method = method;
      opt.seed = seed;
      opt.max_slots = max_slots;
      opt.parallel = !serial;
      return run_solve(file, opt, via, json);
    }
    if (*translate_cmd) {
      if (via.empty() && !forw_free) throw Error("translate needs --via or --eliminate-forw");
      return run_translate(file, via.empty() ? "dia.J" : via, forw_free);
    }
    if (*classify_cmd) {
      if (relation.empty() && file.empty()) throw Error("classify needs --relation or --file");
      return run_classify(relation, file);
    }
    if (*homotopy_cmd) {
      if (family.empty()) throw Error("check-homotopy needs a family");
      return run_homotopy(family, samples, seed, json);
    }
    if (*compose_cmd) return run_compose(outer, inner);
    for (const auto& n : catalog().interpretation_names()) std::cout << n << "\n";
    for (const auto& d : catalog().definitions()) {
      std::cout << d.name << ": " << d.formula.to_string() << "\n";
    }
    return 0;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
