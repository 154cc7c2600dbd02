#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "eqfree/equaliser.hpp"
#include "eqfree/harness.hpp"
#include "eqfree/json_report.hpp"
#include "eqfree/stable_domain.hpp"
#include "eqfree/stallings.hpp"
#include "eqfree/text.hpp"

namespace {

// 0 success, 1 usage/parse error, 2 hypothesis-not-verified,
// 3 campaign failure, 4 unsupported input.
enum ExitCode : int {
  kOk = 0,
  kUsage = 1,
  kHypothesis = 2,
  kCampaignFail = 3,
  kUnsupported = 4
};

std::vector<std::string> split_csv(const std::string& text) {
  std::vector<std::string> out;
  std::string current;
  for (char c : text) {
    if (c == ',') {
      out.push_back(current);
      current.clear();
    } else {
      current.push_back(c);
    }
  }
  if (!current.empty()) out.push_back(current);
  return out;
}

// Single-letter alphabet from the letters of the words, in order of first
// appearance; multi-character alphabets must be passed explicitly.
eqfree::AlphabetPtr infer_alphabet(const std::vector<std::string>& words) {
  std::vector<std::string> names;
  for (const std::string& w : words)
    for (char c : w) {
      char lower = (c >= 'A' && c <= 'Z') ? static_cast<char>(c - 'A' + 'a') : c;
      if (!(lower >= 'a' && lower <= 'z')) {
        if (c == '1' || c == ' ') continue;
        throw eqfree::ParseError("cannot infer alphabet from character '" +
                                     std::string(1, c) + "'",
                                 1, 1);
      }
      std::string name(1, lower);
      if (std::find(names.begin(), names.end(), name) == names.end())
        names.push_back(name);
    }
  return eqfree::make_alphabet(names);
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw eqfree::Error("cannot write '" + path + "'");
  out << content;
}

void emit(const eqfree::Json& json, const std::string& json_path) {
  if (json_path.empty())
    std::cout << eqfree::dump(json);
  else
    write_file(json_path, eqfree::dump(json));
}

int run_fold(const std::string& gens_text, const std::string& alphabet_text,
             const std::string& dot_path) {
  std::vector<std::string> parts = split_csv(gens_text);
  eqfree::AlphabetPtr alphabet = alphabet_text.empty()
                                     ? infer_alphabet(parts)
                                     : eqfree::parse_alphabet(alphabet_text);
  std::vector<eqfree::Word> gens;
  for (const std::string& p : parts)
    gens.push_back(eqfree::parse_word(p, alphabet));
  eqfree::SubgroupGraph graph = eqfree::SubgroupGraph::fold(alphabet, gens);

  std::cout << "rank: " << graph.rank() << "\n";
  std::cout << "basis:";
  const auto basis = graph.basis().words;
  for (std::size_t i = 0; i < basis.size(); ++i)
    std::cout << (i ? ", " : " ") << eqfree::print_word(basis[i]);
  std::cout << "\n";
  if (!dot_path.empty()) write_file(dot_path, graph.to_dot());
  return kOk;
}

int run_sd(const std::string& g_path, const std::string& h_path,
           std::size_t max_iter, const std::string& json_path) {
  eqfree::Homomorphism g = eqfree::parse_hom_file(g_path);
  eqfree::Homomorphism h = eqfree::parse_hom_file(h_path);
  // generous but finite: runaway chains degrade to cap-reached, not OOM
  eqfree::SDTrace trace = eqfree::sd_iterate(g, h, max_iter, 4000000);
  emit(eqfree::to_json(trace), json_path);
  if (!json_path.empty())
    std::cout << "status: " << eqfree::to_json(trace)["status"].get<std::string>()
              << "\n";
  return trace.status == eqfree::SDStatus::unsupported ? kUnsupported : kOk;
}

int run_eq(const std::vector<std::string>& hom_paths,
           const std::vector<std::string>& retraction_paths, int radius,
           const std::string& json_path) {
  std::vector<eqfree::Homomorphism> maps;
  for (const std::string& path : hom_paths)
    maps.push_back(eqfree::parse_hom_file(path));

  eqfree::EqualiserReport report;
  if (maps.size() == 2) {
    eqfree::PairOptions options;
    options.radius = radius;
    if (!retraction_paths.empty())
      options.retractions = {eqfree::parse_hom_file(retraction_paths[0]),
                             eqfree::parse_hom_file(retraction_paths[1])};
    report = eqfree::solve_pair(maps[0], maps[1], options);
  } else {
    if (!retraction_paths.empty())
      throw eqfree::ParseError("--retraction needs exactly two homomorphisms",
                               1, 1);
    eqfree::SetOptions options;
    options.radius = radius;
    report = eqfree::solve_set(eqfree::MapSet(maps), options);
  }
  emit(eqfree::to_json(report), json_path);
  if (!json_path.empty())
    std::cout << "verdict: " << eqfree::verdict_name(report.verdict) << "\n";
  return kOk;
}

int run_fuzz(const std::string& property, const eqfree::TrialConfig& cfg,
             const std::string& json_path) {
  const auto& names = eqfree::campaign_names();
  if (std::find(names.begin(), names.end(), property) == names.end()) {
    std::cerr << "unknown property '" << property << "'; available:";
    for (const std::string& n : names) std::cerr << ' ' << n;
    std::cerr << "\n";
    return kUsage;
  }
  eqfree::CampaignReport report = eqfree::run_campaign(property, cfg);
  emit(eqfree::to_json(report), json_path);
  if (!json_path.empty())
    std::cout << "status: " << (report.passed() ? "pass" : "fail") << "\n";
  return report.passed() ? kOk : kCampaignFail;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"equalisers of free-group homomorphisms via Stallings graphs"};
  app.require_subcommand(1);

  auto* fold = app.add_subcommand("fold", "fold generators into a core graph");
  std::string gens_text, alphabet_text, dot_path;
  fold->add_option("--gens", gens_text, "comma-separated generator words")
      ->required();
  fold->add_option("--alphabet", alphabet_text,
                   "space-separated generator names (inferred when omitted)");
  fold->add_option("--dot", dot_path, "write the graph as DOT to this path");

  auto* sd = app.add_subcommand("sd", "iterate the stable-domain chain");
  std::string sd_g, sd_h, sd_json;
  std::size_t max_iter = 20;
  sd->add_option("gfile", sd_g, "homomorphism file for g")->required();
  sd->add_option("hfile", sd_h, "homomorphism file for h")->required();
  sd->add_option("--max-iter", max_iter, "cap on the number of iterates");
  sd->add_option("--json", sd_json, "write the trace as JSON to this path");

  auto* eq = app.add_subcommand("eq", "solve an equaliser");
  std::vector<std::string> eq_paths, retraction_paths;
  std::string eq_json;
  int radius = 8;
  eq->add_option("homs", eq_paths, "two or more homomorphism files")
      ->required()
      ->expected(2, -1);
  eq->add_option("--retraction", retraction_paths,
                 "retraction files for im(g) and im(h) (give twice)")
      ->expected(0, 2);
  eq->add_option("--radius", radius, "enumeration radius");
  eq->add_option("--json", eq_json, "write the report as JSON to this path");

  auto* fuzz = app.add_subcommand("fuzz", "run a property campaign");
  std::string property, fuzz_json;
  eqfree::TrialConfig cfg;
  fuzz->add_option("--property", property, "campaign name")->required();
  fuzz->add_option("--seed", cfg.seed, "campaign seed");
  fuzz->add_option("--trials", cfg.trials, "number of trials");
  fuzz->add_option("--radius", cfg.radius, "enumeration radius");
  fuzz->add_option("--max-word-len", cfg.max_word_len, "image length bound");
  fuzz->add_option("--max-iter", cfg.max_iter, "stable-domain iteration cap");
  fuzz->add_option("--max-rank", cfg.max_rank, "codomain rank bound");

  fuzz->add_option("--json", fuzz_json, "write the report as JSON to this path");

  try {
    app.parse(argc, argv);
    if (fold->parsed()) return run_fold(gens_text, alphabet_text, dot_path);
    if (sd->parsed()) return run_sd(sd_g, sd_h, max_iter, sd_json);
    if (eq->parsed()) {
      if (retraction_paths.size() == 1)
        throw eqfree::ParseError("--retraction must be given twice or not at all",
                                 1, 1);
      return run_eq(eq_paths, retraction_paths, radius, eq_json);
    }
    if (fuzz->parsed()) return run_fuzz(property, cfg, fuzz_json);
    return kUsage;
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  } catch (const eqfree::HypothesisNotVerified& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kHypothesis;
  } catch (const eqfree::Unsupported& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUnsupported;
  } catch (const eqfree::WrongSolver& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUnsupported;
  } catch (const eqfree::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const eqfree::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  }
}
