// pimvar: command-line front end for the pi/CH toolkit.

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "pimvar/config.hpp"
#include "pimvar/corpus.hpp"
#include "pimvar/errors.hpp"
#include "pimvar/refute.hpp"
#include "pimvar/report.hpp"
#include "pimvar/translate.hpp"

using namespace pimvar;

namespace {

struct Globals {
  std::string config_path;
  std::string format;
  unsigned jobs = 0;
  bool include_slow = false;

  Config resolve() const {
    Config c = config_path.empty() ? Config{} : load_config(config_path);
    if (!format.empty()) c.format = parse_format(format);
    if (jobs) c.jobs = jobs;
    return c;
  }
};

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot read " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

// "tau0" or "induced:<translation>".
struct Encoding {
  bool induced = false;
  gstb::Translation t;
};

Encoding parse_encoding(const std::string& s) {
  if (s == "tau0") return {};
  if (s.rfind("induced:", 0) == 0) return {true, gstb::parse(s.substr(8))};
  throw std::invalid_argument("unknown encoding '" + s + "' (expected tau0 or induced:<translation>)");
}

ch::ChState encode(const Encoding& e, const pi::ProcPtr& p, const translate::Options& opt) {
  std::vector<std::string> warnings;
  auto s = e.induced ? translate::induced0(e.t, p, opt, &warnings) : translate::tau0(p, opt, &warnings);
  for (const auto& w : warnings) std::cerr << "warning: " << w << "\n";
  return s;
}

corpus::CorpusSpec spec_or(const std::string& path, const Config& c) {
  return path.empty() ? c.corpus : corpus::spec_from_json(read_file(path));
}

void print_soups(const std::vector<pi::Soup>& ss, Format f) {
  std::vector<pi::ProcPtr> ps;
  for (const auto& s : ss) ps.push_back(pi::to_process(s));
  std::cout << report::process_list(ps, f);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"pi-calculus / Concurrent Haskell translation checker"};
  app.require_subcommand(1);
  // global options may follow the verb
  app.fallthrough();
  Globals g;
  app.add_option("--config", g.config_path, "JSON configuration file");
  app.add_option("--format", g.format, "Output format: text, json or csv");
  app.add_option("--jobs", g.jobs, "Worker threads for sweeps");
  app.add_flag("--include-slow", g.include_slow, "Allow sweeps that take minutes");

  int exit_code = 0;

  // pi
  auto* pi_cmd = app.add_subcommand("pi", "Reduce a pi process");
  pi_cmd->require_subcommand(1);
  std::string process;
  for (auto [name, help] : {std::pair{"eval", "One-step successors"}, std::pair{"converge", "May/should convergence"},
                            std::pair{"trace", "A reduction sequence, to success when possible"}}) {
    auto* sub = pi_cmd->add_subcommand(name, help);
    sub->add_option("process", process, "Process text")->required();
    sub->callback([&, verb = std::string(name)] {
      auto c = g.resolve();
      auto s = pi::normalize(pi::parse(process));
      if (verb == "eval")
        print_soups(pi::step(s), c.format);
      else if (verb == "converge")
        std::cout << report::verdict(pi::verdict(s), c.format);
      else
        print_soups(pi::trace(s), c.format);
    });
  }

  // translate
  auto* tr_cmd = app.add_subcommand("translate", "Translate a pi process");
  std::string with = "tau0", emit = "state";
  bool tr_trace = false, literal_empty = false;
  tr_cmd->add_option("process", process, "Process text")->required();
  tr_cmd->add_option("--with", with, "tau0 or induced:<translation>");
  tr_cmd->add_option("--emit", emit, "state, chexpr, haskell or abstract")
      ->check(CLI::IsMember({"state", "chexpr", "haskell", "abstract"}));
  tr_cmd->add_flag("--trace", tr_trace, "With --emit abstract: print one execution");
  tr_cmd->add_flag("--literal-empty-mvar", literal_empty, "Expand empty MVar creation to newMVar bot; takeMVar");
  tr_cmd->callback([&] {
    auto p = pi::parse(process);
    auto e = parse_encoding(with);
    translate::Options opt{literal_empty};
    if (emit == "haskell") {
      if (e.induced) throw std::invalid_argument("--emit haskell supports only tau0");
      std::cout << translate::haskell(p);
    } else if (emit == "chexpr") {
      std::cout << ch::print(e.induced ? translate::induced(e.t, p, opt) : translate::tau(p, opt)) << "\n";
    } else if (emit == "abstract") {
      if (!e.induced) throw std::invalid_argument("--emit abstract needs --with induced:<translation>");
      auto prog = translate::to_abstract(e.t, p);
      std::cout << (tr_trace ? abs::trace_json(prog, abs::trace(prog)) : abs::to_json(prog)) << "\n";
    } else {
      std::cout << ch::print(encode(e, p, opt));
    }
  });

  // ch
  auto* ch_cmd = app.add_subcommand("ch", "Convergence of a translated process in CH");
  std::string scheduler;
  std::uint64_t depth = 0;
  ch_cmd->add_option("process", process, "Process text")->required();
  ch_cmd->add_option("--with", with, "tau0 or induced:<translation>");
  ch_cmd->add_option("--scheduler", scheduler, "macro or micro");
  ch_cmd->add_option("--depth", depth, "Depth bound");
  ch_cmd->add_flag("--literal-empty-mvar", literal_empty, "Expand empty MVar creation to newMVar bot; takeMVar");
  ch_cmd->callback([&] {
    auto c = g.resolve();
    if (!scheduler.empty()) c.scheduler = parse_scheduler(scheduler);
    if (depth) c.depth_bound = depth;
    auto s = encode(parse_encoding(with), pi::parse(process), translate::Options{literal_empty});
    std::cout << report::ch_verdict(ch::verdict(s, c.verdict_options()), c.format);
  });

  // survey
  auto* sv_cmd = app.add_subcommand("survey", "Refute every translation of a regime");
  std::string regime, expect, spec_path;
  bool classify_flag = false;
  sv_cmd->add_option("--regime", regime, "interprocess:n, free:n or multi:u")->required();
  sv_cmd->add_option("--expect", expect, "Expectations JSON; exit 1 on mismatch");
  sv_cmd->add_option("--spec", spec_path, "Corpus spec JSON");
  sv_cmd->add_flag("--classify", classify_flag, "Count static classification labels");
  sv_cmd->callback([&] {
    auto c = g.resolve();
    auto r = gstb::parse_regime(regime);
    if (refute::is_slow(r) && !g.include_slow)
      throw std::invalid_argument("regime " + regime + " is a slow sweep; pass --include-slow");
    refute::SurveyOptions opt{c.policy, classify_flag || !expect.empty(), c.jobs};
    auto stats = refute::survey(r, spec_or(spec_path, c), opt);
    std::cout << report::stats(stats, c.format);
    if (!expect.empty()) {
      std::vector<std::string> problems;
      if (!refute::check_expectations(stats, read_file(expect), problems)) {
        for (const auto& p : problems) std::cerr << "expectation: " << p << "\n";
        exit_code = 1;
      }
    }
  });

  // refute
  auto* rf_cmd = app.add_subcommand("refute", "Search the corpus for counterexamples to one translation");
  std::string translation;
  bool exhaustive = false, audit = false;
  rf_cmd->add_option("translation", translation, "e.g. ([takeC1,putS],[putC1,takeS])")->required();
  rf_cmd->add_option("--spec", spec_path, "Corpus spec JSON");
  rf_cmd->add_flag("--exhaustive", exhaustive, "Report every counterexample");
  rf_cmd->add_flag("--audit", audit, "Recompute each counterexample independently");
  rf_cmd->callback([&] {
    auto c = g.resolve();
    auto t = gstb::parse(translation);
    if (!gstb::is_valid(gstb::canonical(t))) throw std::invalid_argument("not a valid translation: " + translation);
    refute::PreparedCorpus corpus(corpus::survey_corpus(spec_or(spec_path, c)));
    auto cs = refute::test_translation(t, corpus, exhaustive);
    std::cout << report::counterexamples(cs, c.format);
    if (audit)
      for (const auto& ce : cs)
        if (!refute::audit(ce)) {
          std::cerr << "audit failed for " << pi::print(ce.process) << "\n";
          exit_code = 1;
        }
  });

  // corpus
  auto* co_cmd = app.add_subcommand("corpus", "Generated processes");
  co_cmd->require_subcommand(1);
  bool fixtures_only = false;
  auto* co_list = co_cmd->add_subcommand("list", "Print processes, one per line");
  co_list->add_option("--spec", spec_path, "Corpus spec JSON");
  co_list->add_flag("--fixtures", fixtures_only, "Print the named fixtures instead");
  co_list->callback([&] {
    auto c = g.resolve();
    if (fixtures_only) {
      for (const auto& f : corpus::fixtures()) std::cout << f.name << "\t" << pi::print(f.process) << "\n";
      return;
    }
    if (c.format == Format::Text) {
      corpus::generate(spec_or(spec_path, c), [](const pi::ProcPtr& p) { std::cout << pi::print(p) << "\n"; });
    } else {
      std::cout << report::process_list(corpus::generate(spec_or(spec_path, c)), c.format);
    }
  });
  auto* co_count = co_cmd->add_subcommand("count", "Number of generated processes");
  co_count->add_option("--spec", spec_path, "Corpus spec JSON");
  co_count->callback([&] { std::cout << corpus::count(spec_or(spec_path, g.resolve())) << "\n"; });

  // report
  auto* rp_cmd = app.add_subcommand("report", "Reproduction reports");
  rp_cmd->require_subcommand(1);
  auto* rp_table = rp_cmd->add_subcommand("table1", "Single-check translations with their counterexamples");
  rp_table->callback([&] {
    auto c = g.resolve();
    if (g.format.empty()) c.format = Format::Csv;
    std::cout << report::table(refute::table1(), c.format);
  });
  auto* rp_stats = rp_cmd->add_subcommand("stats", "Sweep statistics");
  rp_stats->add_option("--regime", regime, "Regime")->required();
  rp_stats->add_option("--spec", spec_path, "Corpus spec JSON");
  rp_stats->callback([&] {
    auto c = g.resolve();
    if (g.format.empty()) c.format = Format::Json;
    auto r = gstb::parse_regime(regime);
    if (refute::is_slow(r) && !g.include_slow)
      throw std::invalid_argument("regime " + regime + " is a slow sweep; pass --include-slow");
    std::cout << report::stats(refute::survey(r, spec_or(spec_path, c), {c.policy, true, c.jobs}), c.format);
  });
  auto* rp_min = rp_cmd->add_subcommand("minimal", "A small set of processes refuting every refutable translation");
  rp_min->add_option("--regime", regime, "Regime")->required();
  rp_min->add_option("--spec", spec_path, "Corpus spec JSON");
  rp_min->callback([&] {
    auto c = g.resolve();
    auto r = gstb::parse_regime(regime);
    if (refute::is_slow(r) && !g.include_slow)
      throw std::invalid_argument("regime " + regime + " is a slow sweep; pass --include-slow");
    refute::PreparedCorpus corpus(corpus::survey_corpus(spec_or(spec_path, c)));
    std::cout << report::process_list(refute::minimal_refuting_set(r, corpus, c.jobs), c.format);
  });
  auto* rp_diff = rp_cmd->add_subcommand("differential", "pi verdicts against CH verdicts of an encoding");
  rp_diff->add_option("--with", with, "tau0 or induced:<translation>");
  rp_diff->add_option("--spec", spec_path, "Corpus spec JSON");
  rp_diff->callback([&] {
    auto c = g.resolve();
    auto e = parse_encoding(with);
    std::vector<pi::ProcPtr> ps;
    for (const auto& f : corpus::fixtures()) ps.push_back(f.process);
    corpus::generate(spec_or(spec_path, c), [&](const pi::ProcPtr& p) { ps.push_back(p); });
    auto rep = refute::differential(ps, [&](const pi::ProcPtr& p) { return encode(e, p, {}); }, c.verdict_options());
    std::cout << report::differential(rep, c.format);
    if (rep.mismatches || rep.inconclusive) exit_code = 1;
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 2;
  } catch (const ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return exit_code;
}
