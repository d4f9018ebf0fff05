#pragma once

// Differential testing of translations: compare pi convergence of each
// corpus process with convergence of its translation, and aggregate over a
// whole space of send/receive translations.

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "pimvar/ch.hpp"
#include "pimvar/classify.hpp"
#include "pimvar/corpus.hpp"
#include "pimvar/gstb.hpp"
#include "pimvar/pi.hpp"

namespace pimvar::refute {

struct Counterexample {
  gstb::Translation translation;
  pi::ProcPtr process;
  Verdict before;
  Verdict after;
};

/// Corpus processes with their flat forms and pi verdicts computed once.
class PreparedCorpus {
 public:
  explicit PreparedCorpus(std::vector<pi::ProcPtr> processes);

  std::size_t size() const { return processes_.size(); }
  const pi::ProcPtr& process(std::size_t i) const { return processes_[i]; }
  const pi::Soup& soup(std::size_t i) const { return soups_[i]; }
  const Verdict& before(std::size_t i) const { return before_[i]; }

 private:
  std::vector<pi::ProcPtr> processes_;
  std::vector<pi::Soup> soups_;
  std::vector<Verdict> before_;
};

/// Verdict of the abstract program of t on a flat process.
Verdict after(const gstb::Translation& t, const pi::Soup& s);

/// Counterexamples in corpus order; only the first unless `exhaustive`.
/// An empty result means t survives.
std::vector<Counterexample> test_translation(const gstb::Translation& t, const PreparedCorpus& corpus,
                                             bool exhaustive = false);
std::vector<Counterexample> test_translation(const gstb::Translation& t,
                                             const std::vector<pi::ProcPtr>& corpus,
                                             bool exhaustive = false);

struct SurveyOptions {
  classify::DeadlockPolicy policy = classify::DeadlockPolicy::Violation;
  bool classify = true;
  unsigned jobs = 1;
};

struct SweepStats {
  gstb::Regime regime;
  std::uint64_t total = 0;
  std::uint64_t refuted = 0;
  std::vector<gstb::Translation> survivors;
  std::map<classify::Label, std::uint64_t> class_counts;
  corpus::CorpusSpec corpus_spec;
  std::size_t corpus_size = 0;
  double wall_seconds = 0;
};

/// Regimes whose sweep takes minutes: free:3 and up, interprocess:4 and up,
/// multi:5 and up.
bool is_slow(const gstb::Regime& r);

SweepStats survey(const gstb::Regime& r, const corpus::CorpusSpec& spec, const SurveyOptions& opt = {});
/// As above over an explicit corpus; `spec` is only recorded.
SweepStats survey(const gstb::Regime& r, const PreparedCorpus& corpus, const corpus::CorpusSpec& spec,
                  const SurveyOptions& opt = {});
/// With `timing` false the wall time is left out so outputs are byte-stable.
std::string to_json(const SweepStats& s, bool timing = true);
std::string to_text(const SweepStats& s);

/// Greedy set cover over the refuting processes of every refuted translation,
/// followed by dropping members that became redundant. Order: pick order.
std::vector<pi::ProcPtr> minimal_refuting_set(const gstb::Regime& r, const PreparedCorpus& corpus,
                                              unsigned jobs = 1);

/// Number of translations of the regime refuted by some process of `set`.
std::uint64_t refuted_count(const gstb::Regime& r, const std::vector<pi::ProcPtr>& set);

enum class Status : std::uint8_t { Match, Mismatch, Inconclusive };
std::string to_string(Status s);

struct DifferentialRow {
  pi::ProcPtr process;
  Verdict before;
  ch::ChVerdict after;
  Status status = Status::Inconclusive;
};

struct DifferentialReport {
  std::vector<DifferentialRow> rows;
  std::size_t matches = 0, mismatches = 0, inconclusive = 0;
};

/// Compares verdict_pi(P) with the CH verdict of `encode(P)`.
DifferentialReport differential(const std::vector<pi::ProcPtr>& corpus,
                                const std::function<ch::ChState(const pi::ProcPtr&)>& encode,
                                const ch::VerdictOptions& opt = {});
DifferentialReport differential_tau0(const std::vector<pi::ProcPtr>& corpus, const ch::VerdictOptions& opt = {});
std::string to_text(const DifferentialReport& r);

/// Recomputes both verdicts of a counterexample from scratch.
bool audit(const Counterexample& c);

struct TableRow {
  gstb::Translation translation;
  pi::ProcPtr process;
  Verdict before;
  Verdict after;
};

/// The single-check table: every interprocess(1) translation with its
/// published counterexample, in the published row order, verdicts computed.
std::vector<TableRow> table1();
std::string table_csv(const std::vector<TableRow>& rows);

/// Checks a sweep against an expectations file:
/// {"<regime>": {"total":n, "refuted":n, "survivorCount":n,
///  "survivors":["(...)",...], "survivorsInclude":[...],
///  "classCounts":{"Candidate":n,...}}, ...}. Survivors compare as sets up
/// to index renaming. Missing fields are not checked. Mismatches are
/// appended to `problems`; returns true when there are none.
bool check_expectations(const SweepStats& s, const std::string& expectations_json,
                        std::vector<std::string>& problems);

}  // namespace pimvar::refute
